//! Exhaustive facts about all based plane curves with few crossings.

use chordcount::{
    arrows_to_chords, count_embeddings, is_plane_curve, parse_pattern, Arrow, ArrowDiagram,
    Calibration, EvalMode, Sign, Slot,
};

fn matchings(free: &mut Vec<Slot>, acc: &mut Vec<(Slot, Slot)>, out: &mut Vec<Vec<(Slot, Slot)>>) {
    if free.is_empty() {
        out.push(acc.clone());
        return;
    }
    let a = free.remove(0);
    for i in 0..free.len() {
        let b = free.remove(i);
        acc.push((a, b));
        matchings(free, acc, out);
        acc.pop();
        free.insert(i, b);
    }
    free.insert(0, a);
}

/// Every positive arrow diagram on `n` arrows that is the diagram of a plane curve.
fn plane_curves(n: usize) -> Vec<ArrowDiagram> {
    let mut all = Vec::new();
    matchings(
        &mut (1..=2 * n as Slot).collect(),
        &mut Vec::new(),
        &mut all,
    );
    let mut out = Vec::new();
    for m in &all {
        for mask in 0..1u32 << n {
            let arrows = m
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| {
                    if mask >> i & 1 == 0 {
                        Arrow::new(a, b, Sign::Plus)
                    } else {
                        Arrow::new(b, a, Sign::Plus)
                    }
                })
                .collect();
            let d = ArrowDiagram::new(n, arrows).unwrap();
            if is_plane_curve(&d) {
                out.push(d);
            }
        }
    }
    out
}

#[test]
fn number_of_small_plane_curves() {
    let counts: Vec<usize> = (0..=5).map(|n| plane_curves(n).len()).collect();
    assert_eq!(counts, [1, 2, 8, 42, 260, 1796]);
}

#[test]
fn some_three_chord_patterns_vanish_on_plane_curves() {
    let convention = Calibration::frozen().convention;
    let patterns: Vec<_> = ["[1-3,2-5,4-6]", "[1-3,2-6,4-5]", "[1-5,2-3,4-6]"]
        .iter()
        .map(|s| parse_pattern(s).unwrap())
        .collect();
    for n in 3..=5 {
        for d in plane_curves(n) {
            let c = arrows_to_chords(&d, &convention);
            for p in &patterns {
                assert_eq!(
                    count_embeddings(p, &c, EvalMode::Weighted).unwrap(),
                    0,
                    "{p} on {d}"
                );
            }
        }
    }
    // They do not vanish on Gauss diagrams in general.
    let c = arrows_to_chords(
        &ArrowDiagram::new(
            3,
            vec![
                Arrow::new(1, 3, Sign::Plus),
                Arrow::new(2, 5, Sign::Plus),
                Arrow::new(4, 6, Sign::Plus),
            ],
        )
        .unwrap(),
        &convention,
    );
    assert_eq!(
        count_embeddings(&patterns[0], &c, EvalMode::Weighted).unwrap(),
        1
    );
}
