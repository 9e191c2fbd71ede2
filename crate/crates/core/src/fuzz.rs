//! Randomized invariance checks.
//!
//! Each `(seed, trial)` pair gets its own ChaCha stream, so results do not
//! depend on thread scheduling and any trial can be replayed from its log.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::convention::Convention;
use crate::count::{CountError, Evaluator};
use crate::diagram::{ArrowDiagram, CurveDiagram};
use crate::moves::{random_walk, MoveKind, MoveLog, R3Variants};
use crate::pattern::Formula;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzConfig {
    pub trials: usize,
    /// Moves per trial.
    pub depth: usize,
    pub rng_seed: u64,
    pub kinds: Vec<MoveKind>,
    pub r3_variants: R3Variants,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            trials: 100,
            depth: 20,
            rng_seed: 0,
            kinds: MoveKind::INVARIANT.to_vec(),
            r3_variants: R3Variants::ALL,
        }
    }
}

/// RNG for one trial on one seed.
pub fn trial_rng(rng_seed: u64, seed_index: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    rng.set_stream(((seed_index as u64) << 32) | trial as u64);
    rng
}

/// The end point of one random walk.
#[derive(Debug, Clone)]
pub(crate) struct Walk {
    pub seed_index: usize,
    pub trial: usize,
    pub diagram: ArrowDiagram,
    pub log: MoveLog,
}

/// All walks for `seeds x trials`, in seed-major order.
pub(crate) fn walks(seeds: &[CurveDiagram], cfg: &FuzzConfig) -> Vec<Walk> {
    let jobs: Vec<(usize, usize)> = (0..seeds.len())
        .flat_map(|s| (0..cfg.trials).map(move |t| (s, t)))
        .collect();
    jobs.par_iter()
        .map(|&(seed_index, trial)| {
            let mut rng = trial_rng(cfg.rng_seed, seed_index, trial);
            let (diagram, log) = random_walk(
                &seeds[seed_index].diagram,
                cfg.depth,
                &cfg.kinds,
                cfg.r3_variants,
                &mut rng,
            );
            Walk {
                seed_index,
                trial,
                diagram,
                log,
            }
        })
        .collect()
}

/// A formula whose value changed along a move sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzViolation {
    pub seed_index: usize,
    /// Provenance of the seed, e.g. `cabc(2,1,1)`.
    pub seed: String,
    pub trial: usize,
    pub formula: String,
    pub before: i64,
    pub after: i64,
    pub log: MoveLog,
}

impl fmt::Display for FuzzViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "VIOLATION formula={} seed={} trial={} before={} after={}",
            self.formula, self.seed, self.trial, self.before, self.after
        )?;
        for line in self.log.to_string().lines() {
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzReport {
    pub seeds: usize,
    pub trials: usize,
    pub depth: usize,
    pub violations: Vec<FuzzViolation>,
}

impl FuzzReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            write!(f, "{v}")?;
        }
        if self.is_ok() {
            writeln!(
                f,
                "OK trials={} seeds={} depth={}",
                self.trials, self.seeds, self.depth
            )
        } else {
            writeln!(
                f,
                "FAILED violations={} trials={} seeds={} depth={}",
                self.violations.len(),
                self.trials,
                self.seeds,
                self.depth
            )
        }
    }
}

/// Runs `cfg.trials` random walks of `cfg.depth` moves from every seed and
/// compares every formula at the start and end of each walk.
pub fn fuzz_invariance(
    formulas: &[Formula],
    seeds: &[CurveDiagram],
    convention: Convention,
    cfg: &FuzzConfig,
) -> Result<FuzzReport, CountError> {
    let ev = Evaluator::new(formulas, convention)?;
    let start: Vec<Vec<i64>> = seeds.iter().map(|s| ev.on_arrows(&s.diagram)).collect();
    let per_walk: Vec<Vec<FuzzViolation>> = walks(seeds, cfg)
        .into_par_iter()
        .map(|w| {
            let after = ev.on_arrows(&w.diagram);
            let before = &start[w.seed_index];
            ev.names()
                .iter()
                .zip(before.iter().zip(&after))
                .filter(|(_, (b, a))| b != a)
                .map(|(name, (&b, &a))| FuzzViolation {
                    seed_index: w.seed_index,
                    seed: seeds[w.seed_index].provenance.to_string(),
                    trial: w.trial,
                    formula: name.clone(),
                    before: b,
                    after: a,
                    log: w.log.clone(),
                })
                .collect()
        })
        .collect();
    Ok(FuzzReport {
        seeds: seeds.len(),
        trials: cfg.trials,
        depth: cfg.depth,
        violations: per_walk.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cabc, gen_torus};
    use crate::registry::builtin_formulas;

    fn seeds() -> Vec<CurveDiagram> {
        vec![gen_cabc(2, 1, 1), gen_torus(3).unwrap()]
    }

    #[test]
    fn builtins_survive_invariant_moves() {
        let cfg = FuzzConfig {
            trials: 30,
            ..FuzzConfig::default()
        };
        let r = fuzz_invariance(builtin_formulas(), &seeds(), Convention::default(), &cfg).unwrap();
        assert!(r.is_ok(), "{r}");
        assert_eq!(r.to_string(), "OK trials=30 seeds=2 depth=20\n");
    }

    #[test]
    fn zero_depth_is_vacuous() {
        let cfg = FuzzConfig {
            depth: 0,
            kinds: MoveKind::ALL.to_vec(),
            ..FuzzConfig::default()
        };
        let r = fuzz_invariance(builtin_formulas(), &seeds(), Convention::default(), &cfg).unwrap();
        assert!(r.is_ok());
    }

    #[test]
    fn direct_moves_are_caught_and_replayable() {
        let cfg = FuzzConfig {
            trials: 20,
            kinds: vec![MoveKind::Dr2Insert],
            ..FuzzConfig::default()
        };
        let s = seeds();
        let r = fuzz_invariance(builtin_formulas(), &s, Convention::default(), &cfg).unwrap();
        assert!(r.violations.iter().any(|v| v.formula == "I2_1"));
        let ev = Evaluator::new(builtin_formulas(), Convention::default()).unwrap();
        for v in &r.violations {
            let end = v.log.replay(&s[v.seed_index].diagram).unwrap();
            let i = ev.names().iter().position(|n| *n == v.formula).unwrap();
            assert_eq!(ev.on_arrows(&end)[i], v.after);
        }
        assert!(r.to_string().contains("FAILED"));
    }

    #[test]
    fn deterministic() {
        let cfg = FuzzConfig {
            trials: 10,
            kinds: MoveKind::ALL.to_vec(),
            rng_seed: 77,
            ..FuzzConfig::default()
        };
        let a = fuzz_invariance(builtin_formulas(), &seeds(), Convention::default(), &cfg).unwrap();
        let b = fuzz_invariance(builtin_formulas(), &seeds(), Convention::default(), &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn every_r3_variant_alone() {
        for v in 0..8 {
            let cfg = FuzzConfig {
                trials: 10,
                r3_variants: R3Variants::only(v),
                ..FuzzConfig::default()
            };
            let r =
                fuzz_invariance(builtin_formulas(), &seeds(), Convention::default(), &cfg).unwrap();
            assert!(r.is_ok(), "variant {v}: {r}");
        }
    }
}
