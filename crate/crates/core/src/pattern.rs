//! Patterns and formulas.
//!
//! A pattern is a small based diagram template, written `[1-3:-,2-4:+]` for
//! chords or `[1>4,5>2,3>6]` for arrows. A chord or arrow without `:±` is
//! unconstrained. A formula is a named signed sum of patterns:
//!
//! ```text
//! I2_1 := +[1-2,3-4] -[1-3,2-4]
//! ```

use std::fmt;

use crate::diagram::{validate, Sign, Slot};
use crate::text::{Cursor, ParseError, ParseErrorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternKind {
    Chord,
    Arrow,
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PatternKind::Chord => "chord",
            PatternKind::Arrow => "arrow",
        })
    }
}

/// One chord (`from < to`) or arrow (`from` = tail, `to` = head) of a pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternItem {
    pub from: Slot,
    pub to: Slot,
    pub constraint: Option<Sign>,
}

impl PatternItem {
    pub fn first(&self) -> Slot {
        self.from.min(self.to)
    }

    pub fn second(&self) -> Slot {
        self.from.max(self.to)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    kind: PatternKind,
    items: Vec<PatternItem>,
}

impl Pattern {
    /// Items are normalized (chord endpoints ordered) and sorted by first slot.
    pub fn new(kind: PatternKind, mut items: Vec<PatternItem>) -> Result<Self, String> {
        if items.is_empty() {
            return Err("pattern needs at least one item".into());
        }
        let pairs: Vec<_> = items.iter().map(|i| (i.from, i.to)).collect();
        let v = validate(items.len(), &pairs);
        if !v.is_empty() {
            return Err(v
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join("; "));
        }
        if kind == PatternKind::Chord {
            for it in &mut items {
                let (a, b) = (it.first(), it.second());
                it.from = a;
                it.to = b;
            }
        }
        items.sort_by_key(|i| i.first());
        Ok(Pattern { kind, items })
    }

    pub fn kind(&self) -> PatternKind {
        self.kind
    }

    pub fn items(&self) -> &[PatternItem] {
        &self.items
    }

    /// Number of chords (or arrows).
    pub fn k(&self) -> usize {
        self.items.len()
    }

    fn relabel(&self, f: impl Fn(Slot) -> Slot) -> Pattern {
        let items = self
            .items
            .iter()
            .map(|it| PatternItem {
                from: f(it.from),
                to: f(it.to),
                constraint: it.constraint,
            })
            .collect();
        Pattern::new(self.kind, items).expect("relabeling is a bijection")
    }

    /// Reads the slots in the opposite direction around the circle.
    pub fn mirrored(&self) -> Pattern {
        let m = (2 * self.k()) as Slot;
        self.relabel(|s| m + 1 - s)
    }

    /// Moves the base point back by `r` slots: slot `s` becomes `s + r` mod `2k`.
    pub fn rotated(&self, r: usize) -> Pattern {
        let m = (2 * self.k()) as Slot;
        let r = (r % (2 * self.k())) as Slot;
        self.relabel(|s| (s - 1 + r) % m + 1)
    }

    /// The distinct based patterns that agree with this one once the base
    /// point is forgotten.
    pub fn rotations(&self) -> Vec<Pattern> {
        let mut out: Vec<Pattern> = Vec::new();
        for r in 0..2 * self.k() {
            let p = self.rotated(r);
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = match self.kind {
            PatternKind::Chord => '-',
            PatternKind::Arrow => '>',
        };
        f.write_str("[")?;
        for (i, it) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}{}{}", it.from, sep, it.to)?;
            if let Some(s) = it.constraint {
                write!(f, ":{}", s)?;
            }
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coefficient: i64,
    pub pattern: Pattern,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Formula {
    name: String,
    terms: Vec<Term>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Formula {
    pub fn new(name: impl Into<String>, terms: Vec<Term>) -> Result<Self, String> {
        let name = name.into();
        if !valid_name(&name) {
            return Err(format!("invalid formula name `{}`", name));
        }
        if terms.is_empty() {
            return Err("formula needs at least one term".into());
        }
        if terms.iter().any(|t| t.coefficient == 0) {
            return Err("coefficients must be nonzero".into());
        }
        let kind = terms[0].pattern.kind();
        if terms.iter().any(|t| t.pattern.kind() != kind) {
            return Err("terms mix chord and arrow patterns".into());
        }
        Ok(Formula { name, terms })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn kind(&self) -> PatternKind {
        self.terms[0].pattern.kind()
    }

    pub fn renamed(&self, name: impl Into<String>) -> Result<Formula, String> {
        Formula::new(name, self.terms.clone())
    }

    pub fn mirrored(&self) -> Formula {
        Formula {
            name: self.name.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coefficient: t.coefficient,
                    pattern: t.pattern.mirrored(),
                })
                .collect(),
        }
    }

    /// Returns a copy with the coefficient of term `index` negated.
    pub fn with_flipped_term(&self, index: usize) -> Formula {
        let mut f = self.clone();
        f.terms[index].coefficient = -f.terms[index].coefficient;
        f
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} :=", self.name)?;
        for t in &self.terms {
            let sign = if t.coefficient < 0 { '-' } else { '+' };
            let mag = t.coefficient.unsigned_abs();
            if mag == 1 {
                write!(f, " {}{}", sign, t.pattern)?;
            } else {
                write!(f, " {}{}{}", sign, mag, t.pattern)?;
            }
        }
        Ok(())
    }
}

fn pattern_at(cur: &mut Cursor<'_>) -> Result<Pattern, ParseError> {
    let open_col = cur.column();
    cur.expect('[', "`[`")?;
    let mut kind = None;
    let mut items = Vec::new();
    loop {
        cur.skip_ws();
        let col = cur.column();
        let x = cur.slot()?;
        let k = if cur.eat('-') {
            PatternKind::Chord
        } else if cur.eat('>') {
            PatternKind::Arrow
        } else {
            return Err(cur.error(ParseErrorKind::Expected("`-` or `>`")));
        };
        match kind {
            None => kind = Some(k),
            Some(prev) if prev != k => {
                return Err(cur.error_at(
                    col,
                    ParseErrorKind::Invalid("pattern mixes chords and arrows".into()),
                ))
            }
            _ => {}
        }
        let y = cur.slot()?;
        if x == y {
            return Err(cur.error_at(col, ParseErrorKind::EqualEndpoints));
        }
        let constraint = if cur.eat(':') {
            Some(cur.sign()?)
        } else {
            None
        };
        items.push(PatternItem {
            from: x,
            to: y,
            constraint,
        });
        cur.skip_ws();
        if cur.eat(',') {
            continue;
        }
        cur.expect(']', "`,` or `]`")?;
        break;
    }
    Pattern::new(kind.expect("at least one item"), items)
        .map_err(|m| cur.error_at(open_col, ParseErrorKind::Invalid(m)))
}

/// Parses a single bracketed pattern.
pub fn parse_pattern(text: &str) -> Result<Pattern, ParseError> {
    let mut cur = Cursor::new(text, 1);
    cur.skip_ws();
    let p = pattern_at(&mut cur)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.error(ParseErrorKind::Trailing));
    }
    Ok(p)
}

pub(crate) fn parse_formula_line(text: &str, line: usize) -> Result<Formula, ParseError> {
    let mut cur = Cursor::new(text, line);
    cur.skip_ws();
    let name = cur
        .ident()
        .ok_or_else(|| cur.error(ParseErrorKind::Expected("formula name")))?
        .to_string();
    cur.skip_ws();
    if !cur.eat_str(":=") {
        return Err(cur.error(ParseErrorKind::Expected("`:=`")));
    }
    let mut terms = Vec::new();
    loop {
        cur.skip_ws();
        if cur.at_end() {
            break;
        }
        let col = cur.column();
        let sign = if cur.eat('+') {
            1
        } else if cur.eat('-') {
            -1
        } else if terms.is_empty() {
            1
        } else {
            return Err(cur.error(ParseErrorKind::Expected("`+` or `-`")));
        };
        cur.skip_ws();
        let mag = if matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
            let v = cur.uint()?;
            i64::try_from(v).map_err(|_| cur.error_at(col, ParseErrorKind::IntOverflow))?
        } else {
            1
        };
        if mag == 0 {
            return Err(cur.error_at(col, ParseErrorKind::Invalid("zero coefficient".into())));
        }
        cur.skip_ws();
        let pattern = pattern_at(&mut cur)?;
        if let Some(first) = terms.first() {
            let first: &Term = first;
            if first.pattern.kind() != pattern.kind() {
                return Err(cur.error_at(
                    col,
                    ParseErrorKind::Invalid("formula mixes chord and arrow patterns".into()),
                ));
            }
        }
        terms.push(Term {
            coefficient: sign * mag,
            pattern,
        });
    }
    if terms.is_empty() {
        return Err(cur.error(ParseErrorKind::Expected("at least one term")));
    }
    Formula::new(name, terms).map_err(|m| cur.error_at(1, ParseErrorKind::Invalid(m)))
}

/// Parses `NAME := term term ...`; the first term's sign may be omitted.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_formula_line(text.trim_end_matches('\n'), 1)
}
