//! Based signed chord diagrams and based arrow (Gauss) diagrams.
//!
//! Slots are numbered `1..=2n` along the oriented circle, starting right after
//! the base point; the base point sits between slot `2n` and slot `1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Neg};

use thiserror::Error;

use crate::convention::{ArrowRule, Convention};

pub type Slot = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_symbol(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// An undirected chord; `a < b` always holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    pub a: Slot,
    pub b: Slot,
    pub sign: Sign,
}

impl Chord {
    /// Endpoints may be given in either order.
    pub fn new(x: Slot, y: Slot, sign: Sign) -> Self {
        Chord {
            a: x.min(y),
            b: x.max(y),
            sign,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub tail: Slot,
    pub head: Slot,
    pub sign: Sign,
}

impl Arrow {
    pub fn new(tail: Slot, head: Slot, sign: Sign) -> Self {
        Arrow { tail, head, sign }
    }

    /// Tail comes before head in base-point order.
    pub fn is_forward(&self) -> bool {
        self.tail < self.head
    }

    pub fn first(&self) -> Slot {
        self.tail.min(self.head)
    }

    pub fn second(&self) -> Slot {
        self.tail.max(self.head)
    }

    /// Orientation sign of the underlying double point: the arrow sign,
    /// negated for backward arrows.
    pub fn crossing_sign(&self) -> Sign {
        if self.is_forward() {
            self.sign
        } else {
            -self.sign
        }
    }
}

/// A broken invariant of a raw diagram. Indices refer to item positions in the
/// input list (0-based); slots are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    OutOfRange { item: usize, slot: Slot, max: Slot },
    Degenerate { item: usize, slot: Slot },
    Reused { slot: Slot, items: Vec<usize> },
    Unused { slot: Slot },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutOfRange { item, slot, max } => {
                write!(
                    f,
                    "item {} uses slot {} outside 1..={}",
                    item + 1,
                    slot,
                    max
                )
            }
            Violation::Degenerate { item, slot } => {
                write!(f, "item {} has equal endpoints ({})", item + 1, slot)
            }
            Violation::Reused { slot, items } => {
                let items: Vec<String> = items.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "slot {} reused by items {}", slot, items.join(","))
            }
            Violation::Unused { slot } => write!(f, "slot {} unused", slot),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("invalid diagram: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Checks that `pairs` is a perfect matching of `1..=2n`.
///
/// Every violated condition is reported, so an empty result means the input
/// is a valid diagram.
pub fn validate(n: usize, pairs: &[(Slot, Slot)]) -> Vec<Violation> {
    let max = (2 * n) as Slot;
    let mut out = Vec::new();
    let mut users: BTreeMap<Slot, Vec<usize>> = BTreeMap::new();
    for (i, &(x, y)) in pairs.iter().enumerate() {
        if x == y {
            out.push(Violation::Degenerate { item: i, slot: x });
        }
        for s in [x, y] {
            if s == 0 || s > max {
                out.push(Violation::OutOfRange {
                    item: i,
                    slot: s,
                    max,
                });
            } else {
                users.entry(s).or_default().push(i);
            }
        }
    }
    for (&slot, items) in &users {
        if items.len() > 1 {
            out.push(Violation::Reused {
                slot,
                items: items.clone(),
            });
        }
    }
    for slot in 1..=max {
        if !users.contains_key(&slot) {
            out.push(Violation::Unused { slot });
        }
    }
    out
}

pub fn validate_chords(n: usize, chords: &[Chord]) -> Vec<Violation> {
    let pairs: Vec<_> = chords.iter().map(|c| (c.a, c.b)).collect();
    validate(n, &pairs)
}

pub fn validate_arrows(n: usize, arrows: &[Arrow]) -> Vec<Violation> {
    let pairs: Vec<_> = arrows.iter().map(|a| (a.tail, a.head)).collect();
    validate(n, &pairs)
}

/// Chords are kept sorted by first endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SignedChordDiagram {
    chords: Vec<Chord>,
}

impl SignedChordDiagram {
    pub fn new(n: usize, mut chords: Vec<Chord>) -> Result<Self, DiagramError> {
        let v = validate_chords(n, &chords);
        if !v.is_empty() {
            return Err(DiagramError::Invalid(v));
        }
        chords.sort();
        Ok(SignedChordDiagram { chords })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn n(&self) -> usize {
        self.chords.len()
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn signs_all_plus(&self) -> bool {
        self.chords.iter().all(|c| c.sign == Sign::Plus)
    }

    /// Moves the base point forward by one slot: slot 1 becomes slot `2n`.
    pub fn rotate_base_point(&self) -> Self {
        let m = (2 * self.n()) as Slot;
        let shift = |s: Slot| if s == 1 { m } else { s - 1 };
        let chords = self
            .chords
            .iter()
            .map(|c| Chord::new(shift(c.a), shift(c.b), c.sign))
            .collect();
        SignedChordDiagram::new(self.n(), chords).expect("rotation keeps the matching")
    }
}

/// Arrows are kept sorted by first endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ArrowDiagram {
    arrows: Vec<Arrow>,
}

impl ArrowDiagram {
    pub fn new(n: usize, mut arrows: Vec<Arrow>) -> Result<Self, DiagramError> {
        let v = validate_arrows(n, &arrows);
        if !v.is_empty() {
            return Err(DiagramError::Invalid(v));
        }
        arrows.sort_by_key(|a| a.first());
        Ok(ArrowDiagram { arrows })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn n(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Builds the positive arrow diagram of a curve from its geometric chord
    /// signs: every arrow has sign `+`, and points forward iff its chord is `+`.
    pub fn from_crossing_signs(d: &SignedChordDiagram) -> Self {
        let arrows = d
            .chords()
            .iter()
            .map(|c| match c.sign {
                Sign::Plus => Arrow::new(c.a, c.b, Sign::Plus),
                Sign::Minus => Arrow::new(c.b, c.a, Sign::Plus),
            })
            .collect();
        ArrowDiagram::new(d.n(), arrows).expect("same matching")
    }

    pub fn is_positive(&self) -> bool {
        self.arrows.iter().all(|a| a.sign == Sign::Plus)
    }
}

/// Switches each arrow to a signed chord on the same endpoints.
///
/// `forward_plus` keeps the sign of forward arrows and negates backward ones;
/// `forward_minus` is the opposite.
pub fn arrows_to_chords(a: &ArrowDiagram, convention: &Convention) -> SignedChordDiagram {
    let chords = a
        .arrows()
        .iter()
        .map(|ar| {
            let s = match convention.arrow_rule {
                ArrowRule::ForwardPlus => ar.crossing_sign(),
                ArrowRule::ForwardMinus => -ar.crossing_sign(),
            };
            Chord::new(ar.tail, ar.head, s)
        })
        .collect();
    SignedChordDiagram::new(a.n(), chords).expect("same matching")
}

/// A parsed diagram of either kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagram {
    Chords(SignedChordDiagram),
    Arrows(ArrowDiagram),
}

impl Diagram {
    pub fn n(&self) -> usize {
        match self {
            Diagram::Chords(d) => d.n(),
            Diagram::Arrows(a) => a.n(),
        }
    }
}

/// Where a curve diagram came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Cabc {
        a: u32,
        b: u32,
        c: u32,
    },
    Torus {
        n: u32,
    },
    MovesFrom {
        seed: Box<Provenance>,
        rng_seed: u64,
        moves: usize,
    },
    Input,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Cabc { a, b, c } => write!(f, "cabc({},{},{})", a, b, c),
            Provenance::Torus { n } => write!(f, "torus({})", n),
            Provenance::MovesFrom {
                seed,
                rng_seed,
                moves,
            } => write!(f, "moves-from({};rng={};moves={})", seed, rng_seed, moves),
            Provenance::Input => write!(f, "input"),
        }
    }
}

/// An arrow diagram together with the plane-curve data it was built from.
///
/// `rot` and `jplus` are carried as given; nothing in the crate recomputes them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveDiagram {
    pub diagram: ArrowDiagram,
    pub rot: Option<i64>,
    pub jplus: Option<i64>,
    pub provenance: Provenance,
}

impl CurveDiagram {
    pub fn from_input(diagram: ArrowDiagram) -> Self {
        CurveDiagram {
            diagram,
            rot: None,
            jplus: None,
            provenance: Provenance::Input,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_diagram_is_valid() {
        assert!(validate(1, &[(1, 2)]).is_empty());
        assert!(validate(0, &[]).is_empty());
    }

    #[test]
    fn broken_matching_reports_reuse_and_gap() {
        let v = validate(2, &[(1, 3), (1, 4)]);
        assert!(v.contains(&Violation::Reused {
            slot: 1,
            items: vec![0, 1]
        }));
        assert!(v.contains(&Violation::Unused { slot: 2 }));
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn out_of_range_and_degenerate() {
        let v = validate(1, &[(1, 3)]);
        assert!(v.contains(&Violation::OutOfRange {
            item: 0,
            slot: 3,
            max: 2
        }));
        let v = validate(1, &[(2, 2)]);
        assert!(v.contains(&Violation::Degenerate { item: 0, slot: 2 }));
    }

    #[test]
    fn forward_plus_rule() {
        let conv = Convention::default();
        let a = ArrowDiagram::new(1, vec![Arrow::new(1, 2, Sign::Plus)]).unwrap();
        assert_eq!(
            arrows_to_chords(&a, &conv).chords(),
            &[Chord::new(1, 2, Sign::Plus)]
        );
        let a = ArrowDiagram::new(1, vec![Arrow::new(2, 1, Sign::Plus)]).unwrap();
        assert_eq!(
            arrows_to_chords(&a, &conv).chords(),
            &[Chord::new(1, 2, Sign::Minus)]
        );
    }

    #[test]
    fn forward_minus_negates() {
        let conv = Convention {
            arrow_rule: ArrowRule::ForwardMinus,
            ..Convention::default()
        };
        let a = ArrowDiagram::new(1, vec![Arrow::new(1, 2, Sign::Plus)]).unwrap();
        assert_eq!(arrows_to_chords(&a, &conv).chords()[0].sign, Sign::Minus);
    }

    #[test]
    fn positive_arrows_round_trip_crossing_signs() {
        let d = SignedChordDiagram::new(
            2,
            vec![Chord::new(1, 3, Sign::Minus), Chord::new(2, 4, Sign::Plus)],
        )
        .unwrap();
        let a = ArrowDiagram::from_crossing_signs(&d);
        assert!(a.is_positive());
        assert_eq!(arrows_to_chords(&a, &Convention::default()), d);
    }

    #[test]
    fn base_point_rotation() {
        let d = SignedChordDiagram::new(
            2,
            vec![Chord::new(1, 2, Sign::Plus), Chord::new(3, 4, Sign::Minus)],
        )
        .unwrap();
        let r = d.rotate_base_point();
        assert_eq!(
            r.chords(),
            &[Chord::new(1, 4, Sign::Plus), Chord::new(2, 3, Sign::Minus)]
        );
    }
}
