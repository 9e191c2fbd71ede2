//! Embedding counts of patterns into diagrams, and formula evaluation.
//!
//! An embedding sends pattern chords injectively to diagram chords so that the
//! matched endpoints appear in the same based order as in the pattern. Since
//! both sides are sorted by first endpoint, an embedding is an increasing tuple
//! of diagram chords whose pairwise relations (sequential, crossed, nested)
//! match the pattern's. The engine precomputes those relations as bitsets and
//! intersects them level by level.

pub mod oracle;

use thiserror::Error;

use crate::convention::{CircleOrientation, Convention, EvalMode};
use crate::diagram::{arrows_to_chords, ArrowDiagram, Sign, SignedChordDiagram, Slot};
use crate::pattern::{Formula, Pattern, PatternKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("expected a {expected} pattern, got a {found} pattern")]
    KindMismatch {
        expected: PatternKind,
        found: PatternKind,
    },
}

fn check_kind(p: &Pattern, expected: PatternKind) -> Result<(), CountError> {
    if p.kind() != expected {
        return Err(CountError::KindMismatch {
            expected,
            found: p.kind(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rel {
    Sequential = 0,
    Crossed = 1,
    Nested = 2,
}

/// Relation of two chords given by their endpoints, `x` starting first.
fn relation(x: (Slot, Slot), y: (Slot, Slot)) -> Rel {
    debug_assert!(x.0 < y.0);
    if x.1 < y.0 {
        Rel::Sequential
    } else if x.1 < y.1 {
        Rel::Crossed
    } else {
        Rel::Nested
    }
}

#[derive(Debug, Clone, Copy)]
struct Marked {
    first: Slot,
    second: Slot,
    sign: Sign,
    forward: bool,
}

/// Packed relation tables of one diagram.
struct Table {
    n: usize,
    words: usize,
    /// `rel[(i * 3 + r) * words..]`: chords `j > i` with relation `r` to `i`.
    rel: Vec<u64>,
    all: Vec<u64>,
    plus: Vec<u64>,
    minus: Vec<u64>,
    forward: Vec<u64>,
    backward: Vec<u64>,
}

fn set_bit(v: &mut [u64], j: usize) {
    v[j / 64] |= 1 << (j % 64);
}

fn popcount_and(a: &[u64], b: &[u64]) -> i64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as i64)
        .sum()
}

impl Table {
    fn build(chords: &[Marked]) -> Table {
        let n = chords.len();
        let words = n.div_ceil(64).max(1);
        let mut rel = vec![0u64; n * 3 * words];
        let mut all = vec![0u64; words];
        let mut plus = vec![0u64; words];
        let mut minus = vec![0u64; words];
        let mut forward = vec![0u64; words];
        let mut backward = vec![0u64; words];
        for (i, c) in chords.iter().enumerate() {
            set_bit(&mut all, i);
            match c.sign {
                Sign::Plus => set_bit(&mut plus, i),
                Sign::Minus => set_bit(&mut minus, i),
            }
            if c.forward {
                set_bit(&mut forward, i);
            } else {
                set_bit(&mut backward, i);
            }
            for (j, d) in chords.iter().enumerate().skip(i + 1) {
                let r = relation((c.first, c.second), (d.first, d.second)) as usize;
                let base = (i * 3 + r) * words;
                set_bit(&mut rel[base..base + words], j);
            }
        }
        Table {
            n,
            words,
            rel,
            all,
            plus,
            minus,
            forward,
            backward,
        }
    }

    fn from_chords(d: &SignedChordDiagram) -> Table {
        let marked: Vec<Marked> = d
            .chords()
            .iter()
            .map(|c| Marked {
                first: c.a,
                second: c.b,
                sign: c.sign,
                forward: true,
            })
            .collect();
        Table::build(&marked)
    }

    fn from_arrows(a: &ArrowDiagram) -> Table {
        let marked: Vec<Marked> = a
            .arrows()
            .iter()
            .map(|ar| Marked {
                first: ar.first(),
                second: ar.second(),
                sign: ar.sign,
                forward: ar.is_forward(),
            })
            .collect();
        Table::build(&marked)
    }

    fn rel(&self, i: usize, r: Rel) -> &[u64] {
        let base = (i * 3 + r as usize) * self.words;
        &self.rel[base..base + self.words]
    }

    fn sign_of(&self, j: usize) -> i64 {
        if self.plus[j / 64] >> (j % 64) & 1 == 1 {
            1
        } else {
            -1
        }
    }
}

/// A pattern prepared for the bitset engine.
#[derive(Debug, Clone)]
struct Compiled {
    k: usize,
    /// `rels[t][s]` for `s < t`.
    rels: Vec<Vec<Rel>>,
    sign: Vec<Option<Sign>>,
    /// `Some(true)` forward, `Some(false)` backward, `None` for chord patterns.
    direction: Vec<Option<bool>>,
}

impl Compiled {
    fn new(p: &Pattern) -> Compiled {
        let items = p.items();
        let rels = (0..items.len())
            .map(|t| {
                (0..t)
                    .map(|s| {
                        relation(
                            (items[s].first(), items[s].second()),
                            (items[t].first(), items[t].second()),
                        )
                    })
                    .collect()
            })
            .collect();
        let arrows = p.kind() == PatternKind::Arrow;
        Compiled {
            k: items.len(),
            rels,
            sign: items.iter().map(|i| i.constraint).collect(),
            direction: items
                .iter()
                .map(|i| arrows.then_some(i.from < i.to))
                .collect(),
        }
    }

    fn count(&self, table: &Table, mode: EvalMode) -> i64 {
        if self.k > table.n {
            return 0;
        }
        let mut rows = vec![0u64; self.k * table.words];
        let mut chosen = vec![0usize; self.k];
        self.level(table, mode, 0, &mut chosen, &mut rows)
    }

    fn weighted(&self, t: usize, mode: EvalMode) -> bool {
        mode == EvalMode::Weighted && self.sign[t].is_none()
    }

    /// `rows` holds the scratch rows for levels `t..k`.
    fn level(
        &self,
        table: &Table,
        mode: EvalMode,
        t: usize,
        chosen: &mut [usize],
        rows: &mut [u64],
    ) -> i64 {
        let (cand, rest) = rows.split_at_mut(table.words);
        cand.copy_from_slice(&table.all);
        let mask = |cand: &mut [u64], m: &[u64]| {
            cand.iter_mut().zip(m).for_each(|(c, x)| *c &= x);
        };
        match self.sign[t] {
            Some(Sign::Plus) => mask(cand, &table.plus),
            Some(Sign::Minus) => mask(cand, &table.minus),
            None => {}
        }
        match self.direction[t] {
            Some(true) => mask(cand, &table.forward),
            Some(false) => mask(cand, &table.backward),
            None => {}
        }
        for (s, &c) in chosen[..t].iter().enumerate() {
            mask(cand, table.rel(c, self.rels[t][s]));
        }

        if t + 1 == self.k {
            return if self.weighted(t, mode) {
                popcount_and(cand, &table.plus) - popcount_and(cand, &table.minus)
            } else {
                cand.iter().map(|x| x.count_ones() as i64).sum()
            };
        }

        let mut total = 0;
        for (w, &word) in cand.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let j = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                chosen[t] = j;
                let sub = self.level(table, mode, t + 1, chosen, rest);
                let weight = if self.weighted(t, mode) {
                    table.sign_of(j)
                } else {
                    1
                };
                total += weight * sub;
            }
        }
        total
    }
}

/// Counts embeddings of a chord pattern into a signed chord diagram.
pub fn count_embeddings(
    p: &Pattern,
    d: &SignedChordDiagram,
    mode: EvalMode,
) -> Result<i64, CountError> {
    check_kind(p, PatternKind::Chord)?;
    Ok(Compiled::new(p).count(&Table::from_chords(d), mode))
}

/// Counts based sub-arrow diagrams of type `p`: tails and heads must land in
/// the pattern's order, constrained arrows must match sign, and unconstrained
/// arrows contribute their sign.
pub fn count_arrow_pattern(p: &Pattern, a: &ArrowDiagram) -> Result<i64, CountError> {
    check_kind(p, PatternKind::Arrow)?;
    Ok(Compiled::new(p).count(&Table::from_arrows(a), EvalMode::Weighted))
}

/// Like [`count_arrow_pattern`] but ignoring the base point: every sub-arrow
/// diagram isomorphic to `p` as an unbased diagram is counted once.
pub fn count_arrow_pattern_unbased(p: &Pattern, a: &ArrowDiagram) -> Result<i64, CountError> {
    check_kind(p, PatternKind::Arrow)?;
    let table = Table::from_arrows(a);
    Ok(p.rotations()
        .iter()
        .map(|r| Compiled::new(r).count(&table, EvalMode::Weighted))
        .sum())
}

/// `sum(coefficient * count)` over the terms of a chord formula.
pub fn evaluate(f: &Formula, d: &SignedChordDiagram, mode: EvalMode) -> Result<i64, CountError> {
    if f.kind() != PatternKind::Chord {
        return Err(CountError::KindMismatch {
            expected: PatternKind::Chord,
            found: f.kind(),
        });
    }
    let table = Table::from_chords(d);
    Ok(f.terms()
        .iter()
        .map(|t| t.coefficient * Compiled::new(&t.pattern).count(&table, mode))
        .sum())
}

/// Evaluates an arrow formula on an arrow diagram.
pub fn evaluate_arrows(f: &Formula, a: &ArrowDiagram) -> Result<i64, CountError> {
    if f.kind() != PatternKind::Arrow {
        return Err(CountError::KindMismatch {
            expected: PatternKind::Arrow,
            found: f.kind(),
        });
    }
    let table = Table::from_arrows(a);
    Ok(f.terms()
        .iter()
        .map(|t| t.coefficient * Compiled::new(&t.pattern).count(&table, EvalMode::Weighted))
        .sum())
}

/// A fixed list of chord formulas read under one [`Convention`], compiled once
/// and evaluated on many diagrams.
#[derive(Debug, Clone)]
pub struct Evaluator {
    convention: Convention,
    names: Vec<String>,
    terms: Vec<Vec<(i64, Compiled)>>,
}

impl Evaluator {
    pub fn new(formulas: &[Formula], convention: Convention) -> Result<Self, CountError> {
        let mut names = Vec::with_capacity(formulas.len());
        let mut terms = Vec::with_capacity(formulas.len());
        for f in formulas {
            if f.kind() != PatternKind::Chord {
                return Err(CountError::KindMismatch {
                    expected: PatternKind::Chord,
                    found: f.kind(),
                });
            }
            let f = match convention.orientation {
                CircleOrientation::Ccw => f.clone(),
                CircleOrientation::Cw => f.mirrored(),
            };
            names.push(f.name().to_string());
            terms.push(
                f.terms()
                    .iter()
                    .map(|t| (t.coefficient, Compiled::new(&t.pattern)))
                    .collect(),
            );
        }
        Ok(Evaluator {
            convention,
            names,
            terms,
        })
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn on_chords(&self, d: &SignedChordDiagram) -> Vec<i64> {
        let table = Table::from_chords(d);
        let mode = self.convention.eval_mode;
        self.terms
            .iter()
            .map(|f| f.iter().map(|(c, p)| c * p.count(&table, mode)).sum())
            .collect()
    }

    /// Switches arrows to chords under the convention's arrow rule first.
    pub fn on_arrows(&self, a: &ArrowDiagram) -> Vec<i64> {
        self.on_chords(&arrows_to_chords(a, &self.convention))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{parse_formula, parse_pattern};
    use crate::text::parse_diagram;
    use crate::Diagram;

    fn chords(text: &str) -> SignedChordDiagram {
        match parse_diagram(text).unwrap() {
            Diagram::Chords(d) => d,
            _ => unreachable!(),
        }
    }

    fn arrows(text: &str) -> ArrowDiagram {
        match parse_diagram(text).unwrap() {
            Diagram::Arrows(a) => a,
            _ => unreachable!(),
        }
    }

    const INTERLEAVED: &str = "chords; n=3; 1-4:+ 2-5:+ 3-6:+";

    #[test]
    fn crossed_pairs_in_interleaved_diagram() {
        let d = chords(INTERLEAVED);
        let p = parse_pattern("[1-3,2-4]").unwrap();
        for mode in [EvalMode::Constrained, EvalMode::Weighted] {
            assert_eq!(count_embeddings(&p, &d, mode).unwrap(), 3);
        }
        let q = parse_pattern("[1-2,3-4]").unwrap();
        assert_eq!(count_embeddings(&q, &d, EvalMode::Weighted).unwrap(), 0);
    }

    #[test]
    fn too_few_chords_gives_zero() {
        let d = chords("chords; n=2; 1-3:+ 2-4:-");
        let p = parse_pattern("[1-4,2-5,3-6]").unwrap();
        assert_eq!(count_embeddings(&p, &d, EvalMode::Weighted).unwrap(), 0);
        let e = SignedChordDiagram::empty();
        assert_eq!(count_embeddings(&p, &e, EvalMode::Constrained).unwrap(), 0);
    }

    #[test]
    fn i2_1_on_interleaved() {
        let f = parse_formula("I2_1 := +[1-2,3-4] -[1-3,2-4]").unwrap();
        assert_eq!(
            evaluate(&f, &chords(INTERLEAVED), EvalMode::Weighted).unwrap(),
            -3
        );
        assert_eq!(
            evaluate(&f, &chords("chords; n=1; 1-2:+"), EvalMode::Weighted).unwrap(),
            0
        );
    }

    #[test]
    fn sign_constraints_and_weights() {
        let d = chords("chords; n=2; 1-3:-  2-4:+");
        let exact = parse_pattern("[1-3:-,2-4:+]").unwrap();
        let wrong = parse_pattern("[1-3:+,2-4:-]").unwrap();
        let free = parse_pattern("[1-3,2-4]").unwrap();
        assert_eq!(count_embeddings(&exact, &d, EvalMode::Weighted).unwrap(), 1);
        assert_eq!(count_embeddings(&wrong, &d, EvalMode::Weighted).unwrap(), 0);
        assert_eq!(count_embeddings(&free, &d, EvalMode::Weighted).unwrap(), -1);
        assert_eq!(
            count_embeddings(&free, &d, EvalMode::Constrained).unwrap(),
            1
        );
    }

    #[test]
    fn kind_mismatch() {
        let p = parse_pattern("[1>2]").unwrap();
        assert!(matches!(
            count_embeddings(&p, &chords("chords; n=1; 1-2:+"), EvalMode::Weighted),
            Err(CountError::KindMismatch { .. })
        ));
        let q = parse_pattern("[1-2]").unwrap();
        assert!(count_arrow_pattern(&q, &ArrowDiagram::empty()).is_err());
    }

    #[test]
    fn arrow_direction_matters() {
        let a = arrows("arrows; n=2; 1>3:+ 4>2:+");
        let fb = parse_pattern("[1>3,4>2]").unwrap();
        let ff = parse_pattern("[1>3,2>4]").unwrap();
        assert_eq!(count_arrow_pattern(&fb, &a).unwrap(), 1);
        assert_eq!(count_arrow_pattern(&ff, &a).unwrap(), 0);
    }

    #[test]
    fn unbased_triangle_on_trefoil() {
        let a = arrows("arrows; n=3; 1>4:+ 5>2:+ 3>6:+");
        let tri = parse_pattern("[1>4,5>2,3>6]").unwrap();
        assert_eq!(count_arrow_pattern_unbased(&tri, &a).unwrap(), 1);
        let other = parse_pattern("[1>4,2>5,3>6]").unwrap();
        assert_eq!(count_arrow_pattern_unbased(&other, &a).unwrap(), 0);
    }

    #[test]
    fn wide_diagram_uses_several_words() {
        // 70 parallel chords: every pair is sequential.
        let n = 70;
        let items: Vec<String> = (0..n)
            .map(|i| format!("{}-{}:+", 2 * i + 1, 2 * i + 2))
            .collect();
        let d = chords(&format!("chords; n={}; {}", n, items.join(" ")));
        let p = parse_pattern("[1-2,3-4]").unwrap();
        assert_eq!(
            count_embeddings(&p, &d, EvalMode::Weighted).unwrap(),
            70 * 69 / 2
        );
        let q = parse_pattern("[1-2,3-4,5-6]").unwrap();
        assert_eq!(
            count_embeddings(&q, &d, EvalMode::Weighted).unwrap(),
            70 * 69 * 68 / 6
        );
    }
}
