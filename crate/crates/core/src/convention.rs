//! Reading conventions for formulas.
//!
//! A [`Convention`] fixes how pattern slots map onto the circle, how arrows
//! become signed chords, and how unconstrained pattern chords are weighted.
//! There are exactly eight conventions; calibration picks one.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CircleOrientation {
    /// Pattern slots are read counterclockwise from the base point.
    Ccw,
    /// Pattern slots are read clockwise; patterns are mirrored before counting.
    Cw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrowRule {
    ForwardPlus,
    ForwardMinus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EvalMode {
    /// Unconstrained pattern chords match either sign with weight 1.
    Constrained,
    /// Each embedding is weighted by the product of the signs of the diagram
    /// chords matched by unconstrained pattern chords.
    Weighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Convention {
    pub orientation: CircleOrientation,
    pub arrow_rule: ArrowRule,
    pub eval_mode: EvalMode,
}

impl Default for Convention {
    fn default() -> Self {
        Convention {
            orientation: CircleOrientation::Ccw,
            arrow_rule: ArrowRule::ForwardPlus,
            eval_mode: EvalMode::Weighted,
        }
    }
}

impl Convention {
    /// All eight conventions in the fixed search order.
    pub fn all() -> Vec<Convention> {
        let mut out = Vec::with_capacity(8);
        for orientation in [CircleOrientation::Ccw, CircleOrientation::Cw] {
            for arrow_rule in [ArrowRule::ForwardPlus, ArrowRule::ForwardMinus] {
                for eval_mode in [EvalMode::Weighted, EvalMode::Constrained] {
                    out.push(Convention {
                        orientation,
                        arrow_rule,
                        eval_mode,
                    });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown {what} `{value}`")]
pub struct UnknownName {
    pub what: &'static str,
    pub value: String,
}

macro_rules! named_enum {
    ($ty:ident, $what:literal, $($var:ident => $name:literal),+) => {
        impl $ty {
            pub fn name(self) -> &'static str {
                match self { $($ty::$var => $name),+ }
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
        impl FromStr for $ty {
            type Err = UnknownName;
            fn from_str(s: &str) -> Result<Self, UnknownName> {
                match s {
                    $($name => Ok($ty::$var),)+
                    _ => Err(UnknownName { what: $what, value: s.to_string() }),
                }
            }
        }
    };
}

named_enum!(CircleOrientation, "orientation", Ccw => "ccw", Cw => "cw");
named_enum!(ArrowRule, "arrow rule", ForwardPlus => "forward_plus", ForwardMinus => "forward_minus");
named_enum!(EvalMode, "eval mode", Constrained => "constrained", Weighted => "weighted");

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "orientation={}; arrow_rule={}; eval_mode={}",
            self.orientation, self.arrow_rule, self.eval_mode
        )
    }
}
