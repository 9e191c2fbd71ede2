//! Shared workloads for the benchmarks under `benches/`.

use chordcount::{gen_cabc, gen_equivalent, ArrowDiagram, MoveKind};

/// C(20, 30, 30): 200 chords.
pub fn family_curve() -> ArrowDiagram {
    gen_cabc(20, 30, 30).diagram
}

/// A scrambled curve with at least `n` chords, reached from C(2, 1, 1) by
/// random moves.
pub fn walked_curve(n: usize) -> ArrowDiagram {
    let seed = gen_cabc(2, 1, 1);
    let mut cur = seed.clone();
    let mut rng = 0;
    while cur.diagram.n() < n {
        cur = gen_equivalent(&cur, rng, 50, &MoveKind::INVARIANT).0;
        rng += 1;
    }
    cur.diagram
}
