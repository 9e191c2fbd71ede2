//! Brute-force reference counts, used to cross-check the bitset engine.
//!
//! Tries every injective assignment of pattern items to diagram items and
//! checks the induced endpoint map directly. Exponential; keep `n` small.

use itertools::Itertools;

use crate::convention::EvalMode;
use crate::diagram::{ArrowDiagram, Sign, SignedChordDiagram, Slot};
use crate::pattern::{Pattern, PatternKind};

use super::{check_kind, CountError};

/// `(from, to, sign)` of a diagram item; chords use `from < to`.
type Item = (Slot, Slot, Sign);

fn brute(p: &Pattern, items: &[Item], mode: EvalMode) -> i64 {
    let k = p.k();
    let pat = p.items();
    let mut total = 0;
    for perm in (0..items.len()).permutations(k) {
        // Pattern slot s (1-based) lands on image[s - 1].
        let mut image = vec![0 as Slot; 2 * k];
        let mut ok = true;
        let mut weight = 1;
        for (item, &j) in pat.iter().zip(&perm) {
            let (from, to, sign) = items[j];
            image[item.from as usize - 1] = from;
            image[item.to as usize - 1] = to;
            match item.constraint {
                Some(c) if c != sign => ok = false,
                Some(_) => {}
                None if mode == EvalMode::Weighted => weight *= sign.value(),
                None => {}
            }
        }
        if ok && image.windows(2).all(|w| w[0] < w[1]) {
            total += weight;
        }
    }
    total
}

pub fn count_embeddings_oracle(
    p: &Pattern,
    d: &SignedChordDiagram,
    mode: EvalMode,
) -> Result<i64, CountError> {
    check_kind(p, PatternKind::Chord)?;
    let items: Vec<Item> = d.chords().iter().map(|c| (c.a, c.b, c.sign)).collect();
    Ok(brute(p, &items, mode))
}

pub fn count_arrow_pattern_oracle(p: &Pattern, a: &ArrowDiagram) -> Result<i64, CountError> {
    check_kind(p, PatternKind::Arrow)?;
    let items: Vec<Item> = a
        .arrows()
        .iter()
        .map(|x| (x.tail, x.head, x.sign))
        .collect();
    Ok(brute(p, &items, EvalMode::Weighted))
}
