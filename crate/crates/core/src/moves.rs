//! Self-tangency and triple-point moves on based arrow diagrams.
//!
//! A diagram is handled as its Gauss word: the sequence of arrow endpoints
//! met when walking from the base point. The base point sits at infinity, so
//! there are `2n + 1` gaps (`0..=2n`) where new endpoints can go and no move
//! ever wraps around it.
//!
//! Only moves a plane curve can perform are offered: self-tangencies between
//! arcs on a common face, and triple point moves across triangular faces.
//!
//! Signs below are geometric crossing signs ([`Arrow::crossing_sign`]).
//! Inserted arrows always carry arrow sign `+` and point forward exactly when
//! their crossing sign is `+`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::diagram::{Arrow, ArrowDiagram, Sign, Slot};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    /// Inverse self-tangency: two new arrows in nested position.
    Ir2Insert,
    Ir2Delete,
    /// Triple point move.
    R3,
    /// Direct self-tangency: two new arrows in crossed position.
    Dr2Insert,
    Dr2Delete,
}

impl MoveKind {
    pub const ALL: [MoveKind; 5] = [
        MoveKind::Ir2Insert,
        MoveKind::Ir2Delete,
        MoveKind::R3,
        MoveKind::Dr2Insert,
        MoveKind::Dr2Delete,
    ];

    /// The moves that should leave the invariants unchanged.
    pub const INVARIANT: [MoveKind; 3] = [MoveKind::Ir2Insert, MoveKind::Ir2Delete, MoveKind::R3];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::Ir2Insert => "iR2_insert",
            MoveKind::Ir2Delete => "iR2_delete",
            MoveKind::R3 => "R3",
            MoveKind::Dr2Insert => "dR2_insert",
            MoveKind::Dr2Delete => "dR2_delete",
        }
    }

    fn is_insert(self) -> bool {
        matches!(self, MoveKind::Ir2Insert | MoveKind::Dr2Insert)
    }

    fn is_delete(self) -> bool {
        matches!(self, MoveKind::Ir2Delete | MoveKind::Dr2Delete)
    }

    fn nested(self) -> bool {
        matches!(self, MoveKind::Ir2Insert | MoveKind::Ir2Delete)
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct SiteParseError(String);

impl FromStr for MoveKind {
    type Err = SiteParseError;
    fn from_str(s: &str) -> Result<Self, SiteParseError> {
        MoveKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| SiteParseError(format!("unknown move kind `{s}`")))
    }
}

/// Which of the eight R3 endpoint-order patterns are enabled.
///
/// For a site with groups `G0 < G1 < G2`, let `c01`, `c02`, `c12` be the
/// arrows shared by the respective pairs of groups. The pattern index is
/// `4*o0 + 2*o1 + o2` with `o0` = `c01` comes first in `G0`, `o1` = `c01`
/// comes first in `G1`, `o2` = `c02` comes first in `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct R3Variants(pub u8);

impl R3Variants {
    pub const ALL: R3Variants = R3Variants(0xff);

    pub fn only(index: u8) -> R3Variants {
        assert!(index < 8);
        R3Variants(1 << index)
    }

    pub fn contains(self, index: u8) -> bool {
        self.0 >> index & 1 == 1
    }
}

impl Default for R3Variants {
    fn default() -> Self {
        R3Variants::ALL
    }
}

/// A place where a move applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveSite {
    /// Adds arrows `p`, `q`. Endpoints `p q` go into gap `first_gap`; the
    /// second endpoints go into gap `second_gap` (`q p` for the nested
    /// inverse move, `p q` for the crossed direct move). `p` gets crossing
    /// sign `side`, `q` the opposite.
    Insert {
        kind: MoveKind,
        first_gap: usize,
        second_gap: usize,
        side: Sign,
    },
    /// Removes the two arrows whose endpoints fill slots `first, first + 1`
    /// and `second, second + 1`.
    Delete {
        kind: MoveKind,
        first: Slot,
        second: Slot,
    },
    /// Swaps the endpoint pairs starting at the three given slots.
    R3 { groups: [Slot; 3] },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match *self {
            MoveSite::Insert { kind, .. } | MoveSite::Delete { kind, .. } => kind,
            MoveSite::R3 { .. } => MoveKind::R3,
        }
    }
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MoveSite::Insert {
                kind,
                first_gap,
                second_gap,
                side,
            } => write!(f, "{kind} {first_gap} {second_gap} {side}"),
            MoveSite::Delete {
                kind,
                first,
                second,
            } => write!(f, "{kind} {first} {second}"),
            MoveSite::R3 { groups: [a, b, c] } => write!(f, "R3 {a} {b} {c}"),
        }
    }
}

impl FromStr for MoveSite {
    type Err = SiteParseError;
    fn from_str(s: &str) -> Result<Self, SiteParseError> {
        let mut it = s.split_whitespace();
        let kind: MoveKind = it
            .next()
            .ok_or_else(|| SiteParseError("empty move".into()))?
            .parse()?;
        let fields: Vec<&str> = it.collect();
        let num = |i: usize| -> Result<usize, SiteParseError> {
            fields[i]
                .parse()
                .map_err(|_| SiteParseError(format!("bad number `{}`", fields[i])))
        };
        let want = match kind {
            MoveKind::R3 | MoveKind::Ir2Insert | MoveKind::Dr2Insert => 3,
            _ => 2,
        };
        if fields.len() != want {
            return Err(SiteParseError(format!(
                "{kind} takes {want} fields, got {}",
                fields.len()
            )));
        }
        let slot = |i: usize| -> Result<Slot, SiteParseError> {
            Slot::try_from(num(i)?).map_err(|_| SiteParseError("slot too large".into()))
        };
        Ok(match kind {
            MoveKind::R3 => MoveSite::R3 {
                groups: [slot(0)?, slot(1)?, slot(2)?],
            },
            MoveKind::Ir2Insert | MoveKind::Dr2Insert => {
                let side = match fields[2] {
                    "+" => Sign::Plus,
                    "-" => Sign::Minus,
                    other => return Err(SiteParseError(format!("bad side `{other}`"))),
                };
                MoveSite::Insert {
                    kind,
                    first_gap: num(0)?,
                    second_gap: num(1)?,
                    side,
                }
            }
            _ => MoveSite::Delete {
                kind,
                first: slot(0)?,
                second: slot(1)?,
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move `{site}` does not apply: {reason}")]
    Stale {
        site: MoveSite,
        reason: &'static str,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct End {
    arrow: usize,
    tail: bool,
}

/// Gauss word of an arrow diagram.
#[derive(Debug, Clone)]
struct Word {
    ends: Vec<End>,
    /// Arrow sign and crossing sign per arrow.
    signs: Vec<(Sign, Sign)>,
    /// Positions of the two endpoints of each arrow, first one first.
    pos: Vec<[usize; 2]>,
}

impl Word {
    fn new(d: &ArrowDiagram) -> Word {
        let mut ends = vec![
            End {
                arrow: 0,
                tail: false
            };
            2 * d.n()
        ];
        let mut signs = Vec::with_capacity(d.n());
        let mut pos = Vec::with_capacity(d.n());
        for (i, a) in d.arrows().iter().enumerate() {
            ends[a.tail as usize - 1] = End {
                arrow: i,
                tail: true,
            };
            ends[a.head as usize - 1] = End {
                arrow: i,
                tail: false,
            };
            signs.push((a.sign, a.crossing_sign()));
            pos.push([a.first() as usize - 1, a.second() as usize - 1]);
        }
        Word { ends, signs, pos }
    }

    fn len(&self) -> usize {
        self.ends.len()
    }

    fn at(&self, i: usize) -> usize {
        self.ends[i].arrow
    }

    fn other(&self, i: usize) -> usize {
        let [x, y] = self.pos[self.at(i)];
        if x == i {
            y
        } else {
            x
        }
    }

    fn crossing(&self, arrow: usize) -> Sign {
        self.signs[arrow].1
    }

    /// Pair `(i, i + 1)` holds endpoints of two different arrows.
    fn is_group(&self, i: usize) -> bool {
        i < self.len().saturating_sub(1) && self.at(i) != self.at(i + 1)
    }

    fn build(ends: &[End], signs: &[(Sign, Sign)]) -> ArrowDiagram {
        let mut slots = vec![(0 as Slot, 0 as Slot); signs.len()];
        for (i, e) in ends.iter().enumerate() {
            let s = i as Slot + 1;
            if e.tail {
                slots[e.arrow].0 = s;
            } else {
                slots[e.arrow].1 = s;
            }
        }
        let arrows = slots
            .iter()
            .zip(signs)
            .map(|(&(t, h), &(sign, _))| Arrow::new(t, h, sign))
            .collect();
        ArrowDiagram::new(signs.len(), arrows).expect("moves keep a perfect matching")
    }
}

/// Delete site with 0-based pair starts `i < j`, if any.
fn delete_at(w: &Word, i: usize, nested: bool) -> Option<usize> {
    if !w.is_group(i) {
        return None;
    }
    let (a, b) = (w.at(i), w.at(i + 1));
    if w.crossing(a) == w.crossing(b) {
        return None;
    }
    let ea = w.other(i);
    let j = if nested { ea.checked_sub(1)? } else { ea };
    if j < i + 2 || j + 1 >= w.len() {
        return None;
    }
    let (c, d) = (w.at(j), w.at(j + 1));
    let ok = if nested {
        c == b && d == a
    } else {
        c == a && d == b
    };
    ok.then_some(j)
}

fn delete_sites(w: &Word, kind: MoveKind) -> Vec<MoveSite> {
    (0..w.len().saturating_sub(1))
        .filter_map(|i| {
            delete_at(w, i, kind.nested()).map(|j| MoveSite::Delete {
                kind,
                first: i as Slot + 1,
                second: j as Slot + 1,
            })
        })
        .collect()
}

/// Whether a signed R3 configuration can be drawn with three straight lines.
/// `s01`, `s02`, `s12` are the crossing signs of the three arrows.
pub fn r3_admissible(orders: (bool, bool, bool), s01: Sign, s02: Sign, s12: Sign) -> bool {
    let (o0, o1, o2) = orders;
    ((s01 * s02 == Sign::Plus) == (o1 == o2)) && ((s01 * s12 == Sign::Plus) == (o0 == o2))
}

/// Checks groups `g` (0-based starts) and returns the variant index.
fn r3_at(w: &Word, g: [usize; 3]) -> Option<u8> {
    if !(g.iter().all(|&i| w.is_group(i)) && g[0] + 2 <= g[1] && g[1] + 2 <= g[2]) {
        return None;
    }
    let set = |i: usize| [w.at(i), w.at(i + 1)];
    let shared = |x: [usize; 2], y: [usize; 2]| -> Option<usize> {
        let mut it = x.iter().filter(|a| y.contains(a));
        let s = *it.next()?;
        it.next().is_none().then_some(s)
    };
    let (s0, s1, s2) = (set(g[0]), set(g[1]), set(g[2]));
    let c01 = shared(s0, s1)?;
    let c02 = shared(s0, s2)?;
    let c12 = shared(s1, s2)?;
    if c01 == c02 || c01 == c12 || c02 == c12 {
        return None;
    }
    let o0 = w.at(g[0]) == c01;
    let o1 = w.at(g[1]) == c01;
    let o2 = w.at(g[2]) == c02;
    r3_admissible(
        (o0, o1, o2),
        w.crossing(c01),
        w.crossing(c02),
        w.crossing(c12),
    )
    .then_some((o0 as u8) << 2 | (o1 as u8) << 1 | o2 as u8)
}

fn r3_sites(w: &Word, variants: R3Variants) -> Vec<MoveSite> {
    let mut out = Vec::new();
    let n2 = w.len();
    for g0 in 0..n2.saturating_sub(1) {
        if !w.is_group(g0) {
            continue;
        }
        for (x01, x02) in [(g0, g0 + 1), (g0 + 1, g0)] {
            let (e1, e2) = (w.other(x01), w.other(x02));
            for g1 in [e1.wrapping_sub(1), e1] {
                for g2 in [e2.wrapping_sub(1), e2] {
                    if g1 >= n2 || g2 >= n2 {
                        continue;
                    }
                    if let Some(v) = r3_at(w, [g0, g1, g2]) {
                        if variants.contains(v) {
                            out.push(MoveSite::R3 {
                                groups: [g0 as Slot + 1, g1 as Slot + 1, g2 as Slot + 1],
                            });
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Boundary cycles of the faces of the ribbon graph of the curve, as darts.
///
/// Dart `2p + 1` leaves passage `p` forward along the curve, dart `2p`
/// leaves it backward. Around a crossing the darts are ordered
/// counterclockwise; a face is traced by always taking the next dart after
/// the one we arrived on, which keeps the face on the right.
fn face_cycles(w: &Word) -> Vec<Vec<usize>> {
    let m = w.len();
    let rot = |d: usize| -> usize {
        let p = d / 2;
        let q = w.other(p);
        let (p1, p2) = (p.min(q), p.max(q));
        let order = if w.crossing(w.at(p)) == Sign::Plus {
            [2 * p1 + 1, 2 * p2 + 1, 2 * p1, 2 * p2]
        } else {
            [2 * p1 + 1, 2 * p2, 2 * p1, 2 * p2 + 1]
        };
        let at = order
            .iter()
            .position(|&x| x == d)
            .expect("dart at its crossing");
        order[(at + 1) % 4]
    };
    let alpha = |d: usize| -> usize {
        let p = d / 2;
        if d % 2 == 1 {
            2 * ((p + 1) % m)
        } else {
            2 * ((p + m - 1) % m) + 1
        }
    };
    let mut seen = vec![false; 2 * m];
    let mut out = Vec::new();
    for start in 0..2 * m {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut e = start;
        while !seen[e] {
            seen[e] = true;
            cycle.push(e);
            e = rot(alpha(e));
        }
        out.push(cycle);
    }
    out
}

/// Whether the diagram is the Gauss diagram of a plane curve, read through
/// crossing signs: its ribbon graph must have `n + 2` faces.
pub fn is_plane_curve(d: &ArrowDiagram) -> bool {
    d.n() == 0 || face_cycles(&Word::new(d)).len() == d.n() + 2
}

/// Self-tangency insertions that a curve can actually perform: both arcs
/// must border a common face. The move is inverse when the face lies on the
/// same side of both arcs. The sign of `p` follows from which side of the
/// earlier arc the face is on.
fn insert_sites(w: &Word, kind: MoveKind) -> Vec<MoveSite> {
    let m = w.len();
    let mut out = BTreeSet::new();
    if m == 0 {
        if kind.nested() {
            for side in [Sign::Plus, Sign::Minus] {
                out.insert(MoveSite::Insert {
                    kind,
                    first_gap: 0,
                    second_gap: 0,
                    side,
                });
            }
        }
        return out.into_iter().collect();
    }
    for face in face_cycles(w) {
        // (gap, face is on the left of the curve there)
        let mut occ = Vec::with_capacity(face.len() + 1);
        for d in face {
            let p = d / 2;
            let (gap, left) = if d % 2 == 1 {
                (p + 1, false)
            } else {
                (p, true)
            };
            if gap == 0 || gap == m {
                // The arc through the base point is split in two.
                occ.push((0, left));
                occ.push((m, left));
            } else {
                occ.push((gap, left));
            }
        }
        for &(g1, left1) in &occ {
            for &(g2, left2) in &occ {
                let nested = left1 == left2;
                if g1 > g2 || nested != kind.nested() {
                    continue;
                }
                out.insert(MoveSite::Insert {
                    kind,
                    first_gap: g1,
                    second_gap: g2,
                    side: if left1 == nested {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    },
                });
            }
        }
    }
    out.into_iter().collect()
}

/// Every site of `kind` in `d`, sorted, without duplicates.
pub fn find_sites(d: &ArrowDiagram, kind: MoveKind) -> Vec<MoveSite> {
    find_sites_with(d, kind, R3Variants::ALL)
}

/// Like [`find_sites`], keeping only the enabled R3 variants.
pub fn find_sites_with(d: &ArrowDiagram, kind: MoveKind, variants: R3Variants) -> Vec<MoveSite> {
    let w = Word::new(d);
    if kind.is_insert() {
        return insert_sites(&w, kind);
    }
    if kind.is_delete() {
        delete_sites(&w, kind)
    } else {
        r3_sites(&w, variants)
    }
}

/// R3 pattern index of a site, if it is an R3 site of `d`.
pub fn r3_variant(d: &ArrowDiagram, site: &MoveSite) -> Option<u8> {
    match *site {
        MoveSite::R3 { groups } => {
            let g = groups.map(|s| (s as usize).wrapping_sub(1));
            r3_at(&Word::new(d), g)
        }
        _ => None,
    }
}

/// Draws a site of `kind` uniformly at random; `None` if there is none.
pub fn sample_site<R: Rng + ?Sized>(
    d: &ArrowDiagram,
    kind: MoveKind,
    variants: R3Variants,
    rng: &mut R,
) -> Option<MoveSite> {
    let sites = find_sites_with(d, kind, variants);
    if sites.is_empty() {
        None
    } else {
        Some(sites[rng.gen_range(0..sites.len())])
    }
}

/// Inserts the arrow pair without checking that the arcs share a face.
fn insert_unchecked(
    w: &Word,
    kind: MoveKind,
    first_gap: usize,
    second_gap: usize,
    side: Sign,
) -> ArrowDiagram {
    let mut signs = w.signs.clone();
    let (p, q) = (signs.len(), signs.len() + 1);
    signs.push((Sign::Plus, side));
    signs.push((Sign::Plus, -side));
    // The first endpoint of a forward arrow is its tail.
    let first = |a: usize| End {
        arrow: a,
        tail: signs[a].1 == Sign::Plus,
    };
    let second = |a: usize| End {
        arrow: a,
        tail: signs[a].1 == Sign::Minus,
    };
    let a_pair = [first(p), first(q)];
    let b_pair = if kind.nested() {
        [second(q), second(p)]
    } else {
        [second(p), second(q)]
    };
    let mut ends = Vec::with_capacity(w.len() + 4);
    ends.extend_from_slice(&w.ends[..first_gap]);
    ends.extend_from_slice(&a_pair);
    ends.extend_from_slice(&w.ends[first_gap..second_gap]);
    ends.extend_from_slice(&b_pair);
    ends.extend_from_slice(&w.ends[second_gap..]);
    Word::build(&ends, &signs)
}

/// Applies a move. Slots are relabeled in the order-preserving way.
pub fn apply_move(d: &ArrowDiagram, site: &MoveSite) -> Result<ArrowDiagram, MoveError> {
    let stale = |reason| MoveError::Stale {
        site: *site,
        reason,
    };
    let w = Word::new(d);
    match *site {
        MoveSite::Insert {
            kind,
            first_gap,
            second_gap,
            side,
        } => {
            if !kind.is_insert() {
                return Err(stale("not an insert kind"));
            }
            if !insert_sites(&w, kind).contains(site) {
                return Err(stale("arcs do not share a face on that side"));
            }
            Ok(insert_unchecked(&w, kind, first_gap, second_gap, side))
        }
        MoveSite::Delete {
            kind,
            first,
            second,
        } => {
            if !kind.is_delete() {
                return Err(stale("not a delete kind"));
            }
            let i = (first as usize).wrapping_sub(1);
            if i >= w.len()
                || delete_at(&w, i, kind.nested()) != Some((second as usize).wrapping_sub(1))
            {
                return Err(stale("no removable pair at these slots"));
            }
            let gone = [w.at(i), w.at(i + 1)];
            let remap: Vec<Option<usize>> = {
                let mut next = 0;
                (0..w.signs.len())
                    .map(|a| {
                        if gone.contains(&a) {
                            None
                        } else {
                            next += 1;
                            Some(next - 1)
                        }
                    })
                    .collect()
            };
            let ends: Vec<End> = w
                .ends
                .iter()
                .filter_map(|e| {
                    remap[e.arrow].map(|arrow| End {
                        arrow,
                        tail: e.tail,
                    })
                })
                .collect();
            let signs: Vec<(Sign, Sign)> = w
                .signs
                .iter()
                .enumerate()
                .filter(|(a, _)| !gone.contains(a))
                .map(|(_, s)| *s)
                .collect();
            Ok(Word::build(&ends, &signs))
        }
        MoveSite::R3 { groups } => {
            let g = groups.map(|s| (s as usize).wrapping_sub(1));
            if r3_at(&w, g).is_none() {
                return Err(stale("no triple point at these slots"));
            }
            let mut ends = w.ends.clone();
            for i in g {
                ends.swap(i, i + 1);
            }
            Ok(Word::build(&ends, &w.signs))
        }
    }
}

/// The site that undoes `site`, given the diagram it was applied to.
///
/// Exact on diagrams whose arrows all have sign `+` (the diagrams of curves).
pub fn inverse_site(before: &ArrowDiagram, site: &MoveSite) -> MoveSite {
    match *site {
        MoveSite::Insert {
            kind,
            first_gap,
            second_gap,
            ..
        } => MoveSite::Delete {
            kind: if kind.nested() {
                MoveKind::Ir2Delete
            } else {
                MoveKind::Dr2Delete
            },
            first: first_gap as Slot + 1,
            second: second_gap as Slot + 3,
        },
        MoveSite::Delete {
            kind,
            first,
            second,
        } => {
            let w = Word::new(before);
            MoveSite::Insert {
                kind: if kind.nested() {
                    MoveKind::Ir2Insert
                } else {
                    MoveKind::Dr2Insert
                },
                first_gap: first as usize - 1,
                second_gap: second as usize - 3,
                side: w.crossing(w.at(first as usize - 1)),
            }
        }
        MoveSite::R3 { .. } => *site,
    }
}

/// A replayable sequence of moves.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MoveLog {
    pub moves: Vec<MoveSite>,
    /// Set when a walk ended because no enabled move applied.
    pub stopped_early: bool,
}

const STOPPED: &str = "# stopped: no applicable move";

impl fmt::Display for MoveLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.moves {
            writeln!(f, "{m}")?;
        }
        if self.stopped_early {
            writeln!(f, "{STOPPED}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {source}")]
pub struct LogParseError {
    pub line: usize,
    pub source: SiteParseError,
}

impl FromStr for MoveLog {
    type Err = LogParseError;
    fn from_str(text: &str) -> Result<Self, LogParseError> {
        let mut log = MoveLog::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line == STOPPED {
                log.stopped_early = true;
                continue;
            }
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let site = line.parse().map_err(|source| LogParseError {
                line: i + 1,
                source,
            })?;
            log.moves.push(site);
        }
        Ok(log)
    }
}

impl MoveLog {
    pub fn replay(&self, d: &ArrowDiagram) -> Result<ArrowDiagram, MoveError> {
        self.moves
            .iter()
            .try_fold(d.clone(), |d, m| apply_move(&d, m))
    }
}

/// Applies up to `steps` random moves. Each step picks a kind uniformly among
/// the enabled kinds that have a site, then a site of that kind uniformly.
pub fn random_walk<R: Rng + ?Sized>(
    d: &ArrowDiagram,
    steps: usize,
    kinds: &[MoveKind],
    variants: R3Variants,
    rng: &mut R,
) -> (ArrowDiagram, MoveLog) {
    let mut cur = d.clone();
    let mut log = MoveLog::default();
    for _ in 0..steps {
        let mut options: Vec<MoveSite> = Vec::with_capacity(kinds.len());
        for &k in kinds {
            if let Some(s) = sample_site(&cur, k, variants, rng) {
                options.push(s);
            }
        }
        if options.is_empty() {
            log.stopped_early = true;
            break;
        }
        let site = options[rng.gen_range(0..options.len())];
        cur = apply_move(&cur, &site).expect("sampled site applies");
        log.moves.push(site);
    }
    (cur, log)
}
