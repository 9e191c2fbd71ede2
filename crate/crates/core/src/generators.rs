//! Curve families: the C(a, b, c) curves, closed 2-braid (torus) diagrams,
//! and random move-equivalent diagrams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::{Arrow, ArrowDiagram, CurveDiagram, Provenance, Sign, Slot};
use crate::moves::{random_walk, MoveKind, MoveLog, R3Variants};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("torus diagram needs an odd n >= 3, got {0}")]
    BadTorus(u32),
}

/// A piece of a long curve: its Gauss word (local arrow ids) and the crossing
/// sign of each arrow.
struct Block {
    word: &'static [usize],
    signs: &'static [Sign],
}

/// One positive kink.
const PART_A: Block = Block {
    word: &[0, 0],
    signs: &[Sign::Plus],
};

/// A loop wound twice, with two opposite kinks inside.
const PART_B: Block = Block {
    word: &[0, 1, 2, 2, 3, 3, 1, 0],
    signs: &[Sign::Plus, Sign::Plus, Sign::Minus, Sign::Minus],
};

/// Two opposite kinks.
const PART_C: Block = Block {
    word: &[0, 0, 1, 1],
    signs: &[Sign::Plus, Sign::Minus],
};

/// Builds the positive arrow diagram of a Gauss word with crossing signs:
/// every arrow has sign `+` and points forward when its crossing sign is `+`.
pub fn diagram_from_word(word: &[usize], signs: &[Sign]) -> ArrowDiagram {
    let mut first = vec![None; signs.len()];
    let mut arrows = Vec::with_capacity(signs.len());
    for (i, &c) in word.iter().enumerate() {
        let s = i as Slot + 1;
        match first[c] {
            None => first[c] = Some(s),
            Some(f) => arrows.push(match signs[c] {
                Sign::Plus => Arrow::new(f, s, Sign::Plus),
                Sign::Minus => Arrow::new(s, f, Sign::Plus),
            }),
        }
    }
    ArrowDiagram::new(signs.len(), arrows).expect("each arrow id appears twice")
}

/// The based curve Ċ(a, b, c): `a` copies of part (a), then `b` of part (b),
/// then `c` of part (c), joined end to end. It has `a + 4b + 2c` crossings,
/// rotation number `a` and J⁺ = `a - 2b + 2c`.
pub fn gen_cabc(a: u32, b: u32, c: u32) -> CurveDiagram {
    let mut word = Vec::new();
    let mut signs = Vec::new();
    let parts = [(&PART_A, a), (&PART_B, b), (&PART_C, c)];
    for (block, times) in parts {
        for _ in 0..times {
            let off = signs.len();
            word.extend(block.word.iter().map(|x| x + off));
            signs.extend_from_slice(block.signs);
        }
    }
    let (a64, b64, c64) = (a as i64, b as i64, c as i64);
    CurveDiagram {
        diagram: diagram_from_word(&word, &signs),
        rot: Some(a64),
        jplus: Some(a64 - 2 * b64 + 2 * c64),
        provenance: Provenance::Cabc { a, b, c },
    }
}

/// Standard diagram of the closed 2-braid with `n` crossings: arrow `j`
/// joins slots `j` and `j + n`, all signs `+`, pointing forward for odd `j`
/// and backward for even `j`.
pub fn gen_torus(n: u32) -> Result<CurveDiagram, GenError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(GenError::BadTorus(n));
    }
    let arrows = (1..=n)
        .map(|j| {
            if j % 2 == 1 {
                Arrow::new(j, j + n, Sign::Plus)
            } else {
                Arrow::new(j + n, j, Sign::Plus)
            }
        })
        .collect();
    Ok(CurveDiagram {
        diagram: ArrowDiagram::new(n as usize, arrows).expect("valid matching"),
        rot: None,
        jplus: None,
        provenance: Provenance::Torus { n },
    })
}

/// Applies `num_moves` random moves of the given kinds to `seed`.
///
/// `rot` is kept. `jplus` is kept unless a direct self-tangency move was
/// applied, since those change it.
pub fn gen_equivalent(
    seed: &CurveDiagram,
    rng_seed: u64,
    num_moves: usize,
    kinds: &[MoveKind],
) -> (CurveDiagram, MoveLog) {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let (diagram, log) = random_walk(&seed.diagram, num_moves, kinds, R3Variants::ALL, &mut rng);
    let direct = log
        .moves
        .iter()
        .any(|m| matches!(m.kind(), MoveKind::Dr2Insert | MoveKind::Dr2Delete));
    let out = CurveDiagram {
        diagram,
        rot: seed.rot,
        jplus: if direct { None } else { seed.jplus },
        provenance: Provenance::MovesFrom {
            seed: Box::new(seed.provenance.clone()),
            rng_seed,
            moves: num_moves,
        },
    };
    (out, log)
}

/// Ċ(r, 1 + k, 1 + k) for r in 0..=2 and k in 0..=3, then T(2,3) and T(2,5).
pub fn default_seeds() -> Vec<CurveDiagram> {
    let mut out = Vec::new();
    for r in 0..=2 {
        for k in 0..=3 {
            out.push(gen_cabc(r, 1 + k, 1 + k));
        }
    }
    out.push(gen_torus(3).expect("odd"));
    out.push(gen_torus(5).expect("odd"));
    out
}
