//! Choosing the reading conventions by experiment.
//!
//! A configuration is a [`Convention`] plus a triangle pattern. It survives
//! if every formula is unchanged along random inverse self-tangency and
//! triple point walks, and the triangle pattern counts 1, 5, 14 on the
//! torus diagrams with 3, 5, 7 crossings.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::convention::{CircleOrientation, Convention, UnknownName};
use crate::count::{count_arrow_pattern_unbased, CountError, Evaluator};
use crate::diagram::{ArrowDiagram, CurveDiagram};
use crate::fuzz::{walks, FuzzConfig};
use crate::generators::gen_torus;
use crate::pattern::{parse_pattern, Formula, Pattern};
use crate::registry::triangle_candidates;

/// Text of the frozen calibration shipped with the crate.
pub const FROZEN_SOURCE: &str = include_str!("../data/calibration.txt");

/// Moves per calibration walk.
pub const CALIBRATION_DEPTH: usize = 20;

/// Torus diagrams and the triangle counts they must give.
pub const TRIANGLE_TARGETS: [(u32, i64); 3] = [(3, 1), (5, 5), (7, 14)];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Calibration {
    pub convention: Convention,
    /// Read counterclockwise; mirrored before counting under `cw`.
    pub triangle: Pattern,
}

impl Calibration {
    /// The calibration stored in `data/calibration.txt`.
    pub fn frozen() -> Calibration {
        FROZEN_SOURCE
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .expect("calibration line")
            .parse()
            .expect("frozen calibration parses")
    }

    /// The triangle pattern as it is matched against diagrams.
    pub fn oriented_triangle(&self) -> Pattern {
        orient(&self.triangle, self.convention.orientation)
    }

    /// Number of sub-diagrams of triangle type, ignoring the base point.
    pub fn triangle_count(&self, a: &ArrowDiagram) -> i64 {
        count_arrow_pattern_unbased(&self.oriented_triangle(), a).expect("arrow pattern")
    }
}

fn orient(p: &Pattern, o: CircleOrientation) -> Pattern {
    match o {
        CircleOrientation::Ccw => p.clone(),
        CircleOrientation::Cw => p.mirrored(),
    }
}

impl fmt::Display for Calibration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; triangle={}", self.convention, self.triangle)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalibrationParseError {
    #[error("missing key `{0}`")]
    Missing(&'static str),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("expected `key=value`, got `{0}`")]
    Malformed(String),
    #[error(transparent)]
    Name(#[from] UnknownName),
    #[error("bad triangle pattern: {0}")]
    Pattern(String),
}

impl FromStr for Calibration {
    type Err = CalibrationParseError;
    fn from_str(s: &str) -> Result<Self, CalibrationParseError> {
        let (mut o, mut r, mut m, mut t) = (None, None, None, None);
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| CalibrationParseError::Malformed(part.to_string()))?;
            let v = v.trim();
            match k.trim() {
                "orientation" => o = Some(v.parse()?),
                "arrow_rule" => r = Some(v.parse()?),
                "eval_mode" => m = Some(v.parse()?),
                "triangle" => {
                    t = Some(
                        parse_pattern(v)
                            .map_err(|e| CalibrationParseError::Pattern(e.to_string()))?,
                    )
                }
                other => return Err(CalibrationParseError::UnknownKey(other.to_string())),
            }
        }
        Ok(Calibration {
            convention: Convention {
                orientation: o.ok_or(CalibrationParseError::Missing("orientation"))?,
                arrow_rule: r.ok_or(CalibrationParseError::Missing("arrow_rule"))?,
                eval_mode: m.ok_or(CalibrationParseError::Missing("eval_mode"))?,
            },
            triangle: t.ok_or(CalibrationParseError::Missing("triangle"))?,
        })
    }
}

/// How one convention fared on the random walks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConventionOutcome {
    pub convention: Convention,
    /// Walks along which at least one formula changed.
    pub failed_walks: usize,
    /// `formula seed trial` of the first failure, if any.
    pub first_failure: Option<String>,
    /// Triangle candidates (read counterclockwise) that hit every target.
    pub triangles: Vec<Pattern>,
}

impl ConventionOutcome {
    pub fn invariant(&self) -> bool {
        self.failed_walks == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CalibrationReport {
    pub trials: usize,
    pub seeds: usize,
    pub outcomes: Vec<ConventionOutcome>,
    /// Unbased counts of each candidate on the target torus diagrams.
    pub triangle_counts: Vec<(Pattern, Vec<i64>)>,
    /// Surviving configurations in search order; the first is preferred.
    pub survivors: Vec<Calibration>,
    /// No walk was run, so invariance was never tested.
    pub insufficient_evidence: bool,
}

impl fmt::Display for CalibrationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "trials={} seeds={} depth={}",
            self.trials, self.seeds, CALIBRATION_DEPTH
        )?;
        if self.insufficient_evidence {
            writeln!(f, "WARNING insufficient evidence: no walks were run")?;
        }
        for o in &self.outcomes {
            write!(f, "{}: failed_walks={}", o.convention, o.failed_walks)?;
            if let Some(first) = &o.first_failure {
                write!(f, " first={first}")?;
            }
            writeln!(f)?;
        }
        let targets: Vec<String> = TRIANGLE_TARGETS
            .iter()
            .map(|(n, _)| format!("T(2,{n})"))
            .collect();
        writeln!(f, "triangle counts on {}:", targets.join(" "))?;
        for (p, counts) in &self.triangle_counts {
            let c: Vec<String> = counts.iter().map(i64::to_string).collect();
            writeln!(f, "  {} {}", p, c.join(" "))?;
        }
        if self.survivors.is_empty() {
            writeln!(f, "no surviving configuration")
        } else {
            writeln!(f, "survivors={}", self.survivors.len())?;
            for s in &self.survivors {
                writeln!(f, "  {s}")?;
            }
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalibrationError {
    #[error("calibration needs at least one seed")]
    NoSeeds,
    #[error("no surviving configuration")]
    NoSurvivor(Box<CalibrationReport>),
    #[error(transparent)]
    Count(#[from] CountError),
}

/// Searches all conventions and triangle candidates.
pub fn calibrate(
    formulas: &[Formula],
    seeds: &[CurveDiagram],
    trials: usize,
    rng_seed: u64,
) -> Result<CalibrationReport, CalibrationError> {
    if seeds.is_empty() {
        return Err(CalibrationError::NoSeeds);
    }
    let cfg = FuzzConfig {
        trials,
        depth: CALIBRATION_DEPTH,
        rng_seed,
        ..FuzzConfig::default()
    };
    // Moves do not depend on the convention, so one set of walks serves all.
    let walked = walks(seeds, &cfg);
    let evaluators = Convention::all()
        .into_iter()
        .map(|c| Evaluator::new(formulas, c))
        .collect::<Result<Vec<_>, _>>()?;

    let tori: Vec<ArrowDiagram> = TRIANGLE_TARGETS
        .iter()
        .map(|&(n, _)| gen_torus(n).expect("odd").diagram)
        .collect();
    let candidates = triangle_candidates();
    let triangle_counts: Vec<(Pattern, Vec<i64>)> = candidates
        .iter()
        .map(|p| {
            let counts = tori
                .iter()
                .map(|t| count_arrow_pattern_unbased(p, t).expect("arrow pattern"))
                .collect();
            (p.clone(), counts)
        })
        .collect();
    let hits = |p: &Pattern| -> bool {
        tori.iter()
            .zip(TRIANGLE_TARGETS)
            .all(|(t, (_, want))| count_arrow_pattern_unbased(p, t).expect("arrow pattern") == want)
    };

    let outcomes: Vec<ConventionOutcome> = evaluators
        .par_iter()
        .map(|ev| {
            let start: Vec<Vec<i64>> = seeds.iter().map(|s| ev.on_arrows(&s.diagram)).collect();
            let mut failed_walks = 0;
            let mut first_failure = None;
            for w in &walked {
                let after = ev.on_arrows(&w.diagram);
                let before = &start[w.seed_index];
                if let Some(i) = (0..after.len()).find(|&i| after[i] != before[i]) {
                    failed_walks += 1;
                    first_failure.get_or_insert_with(|| {
                        format!(
                            "{} {} trial={}",
                            ev.names()[i],
                            seeds[w.seed_index].provenance,
                            w.trial
                        )
                    });
                }
            }
            let o = ev.convention().orientation;
            let triangles = candidates
                .iter()
                .filter(|p| hits(&orient(p, o)))
                .cloned()
                .collect();
            ConventionOutcome {
                convention: ev.convention(),
                failed_walks,
                first_failure,
                triangles,
            }
        })
        .collect();

    let survivors = outcomes
        .iter()
        .filter(|o| o.invariant())
        .flat_map(|o| {
            o.triangles.iter().map(|t| Calibration {
                convention: o.convention,
                triangle: t.clone(),
            })
        })
        .collect::<Vec<_>>();
    let report = CalibrationReport {
        trials,
        seeds: seeds.len(),
        outcomes,
        triangle_counts,
        survivors,
        insufficient_evidence: walked.is_empty(),
    };
    if report.survivors.is_empty() {
        return Err(CalibrationError::NoSurvivor(Box::new(report)));
    }
    Ok(report)
}
