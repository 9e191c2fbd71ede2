//! Gauss-diagram style invariants of plane curves.
//!
//! Curves are encoded as based signed chord diagrams or arrow diagrams.
//! Invariants are integer combinations of pattern counts; this crate parses
//! them, evaluates them fast, generates curve families, applies Reidemeister
//! style moves, and fuzzes formulas for invariance.

pub mod calibrate;
pub mod convention;
pub mod count;
pub mod diagram;
pub mod fuzz;
pub mod generators;
pub mod moves;
pub mod pattern;
pub mod registry;
pub mod text;

pub use calibrate::{calibrate, Calibration, CalibrationError, CalibrationReport};
pub use convention::{ArrowRule, CircleOrientation, Convention, EvalMode, UnknownName};
pub use count::{
    count_arrow_pattern, count_arrow_pattern_unbased, count_embeddings, evaluate, evaluate_arrows,
    CountError, Evaluator,
};
pub use diagram::{
    arrows_to_chords, Arrow, ArrowDiagram, Chord, CurveDiagram, Diagram, DiagramError, Provenance,
    Sign, SignedChordDiagram, Slot, Violation,
};
pub use fuzz::{fuzz_invariance, FuzzConfig, FuzzReport, FuzzViolation};
pub use generators::{default_seeds, gen_cabc, gen_equivalent, gen_torus, GenError};
pub use moves::{
    apply_move, find_sites, find_sites_with, is_plane_curve, MoveError, MoveKind, MoveLog,
    MoveSite, R3Variants,
};
pub use pattern::{parse_formula, parse_pattern, Formula, Pattern, PatternItem, PatternKind, Term};
pub use registry::{builtin_formula, builtin_formulas, triangle_candidates, RegistryError};
pub use text::{parse_diagram, parse_records, ParseError, ParseErrorKind};
