//! The built-in formula list and the triangle pattern candidates.
//!
//! The formulas live in `data/formulas.txt` so the formula text can be
//! reviewed and diffed on its own.

use std::collections::HashSet;
use std::sync::OnceLock;

use thiserror::Error;

use crate::diagram::Slot;
use crate::pattern::{parse_formula_line, Formula, Pattern, PatternItem, PatternKind};
use crate::text::ParseError;

/// Source text of the built-in registry.
pub const BUILTIN_SOURCE: &str = include_str!("../data/formulas.txt");

/// Names of the built-in formulas, in registry order.
pub const BUILTIN_NAMES: [&str; 6] = ["I2_1", "I3_1", "I3_2", "I3_3", "I3_4", "I3_5"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("unknown formula `{0}`")]
    UnknownName(String),
    #[error("duplicate formula `{name}` on line {line}")]
    Duplicate { name: String, line: usize },
    #[error("registry is empty")]
    Empty,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Parses a registry file: one formula per line, `#` comments, blank lines.
pub fn parse_registry(text: &str) -> Result<Vec<Formula>, RegistryError> {
    let mut out: Vec<Formula> = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let f = parse_formula_line(line, i + 1)?;
        if !seen.insert(f.name().to_string()) {
            return Err(RegistryError::Duplicate {
                name: f.name().to_string(),
                line: i + 1,
            });
        }
        out.push(f);
    }
    if out.is_empty() {
        return Err(RegistryError::Empty);
    }
    Ok(out)
}

/// The six built-in formulas in registry order.
pub fn builtin_formulas() -> &'static [Formula] {
    static CELL: OnceLock<Vec<Formula>> = OnceLock::new();
    CELL.get_or_init(|| parse_registry(BUILTIN_SOURCE).expect("built-in registry parses"))
}

/// Maps `I23_k` to `I3_k`; other names pass through.
pub fn canonical_name(name: &str) -> &str {
    match name {
        "I23_1" => "I3_1",
        "I23_2" => "I3_2",
        "I23_3" => "I3_3",
        "I23_4" => "I3_4",
        "I23_5" => "I3_5",
        other => other,
    }
}

/// Looks up a built-in formula by name or alias. The returned formula keeps
/// its registry name.
pub fn builtin_formula(name: &str) -> Result<Formula, RegistryError> {
    let canonical = canonical_name(name);
    builtin_formulas()
        .iter()
        .find(|f| f.name() == canonical)
        .cloned()
        .ok_or_else(|| RegistryError::UnknownName(name.to_string()))
}

/// Looks a name up in `formulas`, honouring the `I23_k` aliases.
pub fn find_formula<'a>(formulas: &'a [Formula], name: &str) -> Option<&'a Formula> {
    let canonical = canonical_name(name);
    formulas
        .iter()
        .find(|f| f.name() == name || f.name() == canonical)
}

/// The eight direction choices on the three mutually crossing chords
/// `[1-4,2-5,3-6]`, in binary order of (forward, forward, forward) first.
pub fn triangle_candidates() -> Vec<Pattern> {
    let chords: [(Slot, Slot); 3] = [(1, 4), (2, 5), (3, 6)];
    (0..8u32)
        .map(|mask| {
            let items = chords
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| {
                    let backward = mask >> (2 - i) & 1 == 1;
                    let (from, to) = if backward { (b, a) } else { (a, b) };
                    PatternItem {
                        from,
                        to,
                        constraint: None,
                    }
                })
                .collect();
            Pattern::new(PatternKind::Arrow, items).expect("valid triangle")
        })
        .collect()
}
