//! Text form of diagrams.
//!
//! ```text
//! chords; n=3; 1-4:+ 2-5:+ 3-6:-
//! arrows; n=1; 1>2:+
//! ```
//!
//! Canonical output uses single spaces and items sorted by first slot. Input
//! accepts any run of whitespace between tokens. Record files hold one diagram
//! per line; lines starting with `#` are comments.

use std::fmt;

use thiserror::Error;

use crate::diagram::{
    validate, Arrow, ArrowDiagram, Chord, Diagram, Sign, SignedChordDiagram, Slot, Violation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unexpected trailing input")]
    Trailing,
    #[error("integer out of range")]
    IntOverflow,
    #[error("endpoints are equal")]
    EqualEndpoints,
    #[error("{}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Matching(Vec<Violation>),
    #[error("{0}")]
    Invalid(String),
}

/// Byte cursor over a single line of input. Columns are 1-based.
#[derive(Debug, Clone)]
pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str, line: usize) -> Self {
        Cursor { src, pos: 0, line }
    }

    pub(crate) fn column(&self) -> usize {
        self.pos + 1
    }

    pub(crate) fn error_at(&self, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column,
            kind,
        }
    }

    pub(crate) fn error(&self, kind: ParseErrorKind) -> ParseError {
        self.error_at(self.column(), kind)
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub(crate) fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        self.pos > start
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(ParseErrorKind::Expected(what)))
        }
    }

    pub(crate) fn eat_str(&mut self, s: &str) -> bool {
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn uint(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(ParseErrorKind::Expected("integer")));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error_at(start + 1, ParseErrorKind::IntOverflow))
    }

    pub(crate) fn slot(&mut self) -> Result<Slot, ParseError> {
        let col = self.column();
        let v = self.uint()?;
        Slot::try_from(v).map_err(|_| self.error_at(col, ParseErrorKind::IntOverflow))
    }

    pub(crate) fn sign(&mut self) -> Result<Sign, ParseError> {
        match self.peek().and_then(Sign::from_symbol) {
            Some(s) => {
                self.pos += 1;
                Ok(s)
            }
            None => Err(self.error(ParseErrorKind::Expected("sign `+` or `-`"))),
        }
    }

    pub(crate) fn ident(&mut self) -> Option<&'a str> {
        let start = self.pos;
        let mut chars = self.src[self.pos..].char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let mut end = self.src.len();
        for (i, c) in chars {
            if !(c.is_ascii_alphanumeric() || c == '_') {
                end = self.pos + i;
                break;
            }
        }
        self.pos = end;
        Some(&self.src[start..end])
    }
}

fn parse_line(src: &str, line: usize) -> Result<Diagram, ParseError> {
    let mut cur = Cursor::new(src, line);
    cur.skip_ws();
    let kind_col = cur.column();
    let arrows = match cur.ident() {
        Some("chords") => false,
        Some("arrows") => true,
        _ => return Err(cur.error_at(kind_col, ParseErrorKind::Expected("`chords` or `arrows`"))),
    };
    cur.skip_ws();
    cur.expect(';', "`;`")?;
    cur.skip_ws();
    if !cur.eat_str("n=") {
        return Err(cur.error(ParseErrorKind::Expected("`n=`")));
    }
    let n_col = cur.column();
    let n = usize::try_from(cur.uint()?)
        .map_err(|_| cur.error_at(n_col, ParseErrorKind::IntOverflow))?;
    cur.skip_ws();
    cur.expect(';', "`;`")?;

    let sep = if arrows { '>' } else { '-' };
    let mut items: Vec<(Slot, Slot, Sign)> = Vec::new();
    let mut columns = Vec::new();
    loop {
        let had_ws = cur.skip_ws();
        if cur.at_end() {
            break;
        }
        if !had_ws {
            return Err(cur.error(ParseErrorKind::Expected("whitespace before item")));
        }
        let col = cur.column();
        let x = cur.slot()?;
        cur.expect(sep, if arrows { "`>`" } else { "`-`" })?;
        let y = cur.slot()?;
        cur.expect(':', "`:`")?;
        let s = cur.sign()?;
        if x == y {
            return Err(cur.error_at(col, ParseErrorKind::EqualEndpoints));
        }
        items.push((x, y, s));
        columns.push(col);
    }

    let pairs: Vec<_> = items.iter().map(|&(x, y, _)| (x, y)).collect();
    let violations = validate(n, &pairs);
    if !violations.is_empty() {
        let col = violations
            .iter()
            .find_map(|v| match v {
                Violation::OutOfRange { item, .. } | Violation::Degenerate { item, .. } => {
                    Some(columns[*item])
                }
                Violation::Reused { items, .. } => Some(columns[items[1]]),
                Violation::Unused { .. } => None,
            })
            .unwrap_or(1);
        return Err(cur.error_at(col, ParseErrorKind::Matching(violations)));
    }

    Ok(if arrows {
        let arrows = items
            .into_iter()
            .map(|(t, h, s)| Arrow::new(t, h, s))
            .collect();
        Diagram::Arrows(ArrowDiagram::new(n, arrows).expect("validated"))
    } else {
        let chords = items
            .into_iter()
            .map(|(a, b, s)| Chord::new(a, b, s))
            .collect();
        Diagram::Chords(SignedChordDiagram::new(n, chords).expect("validated"))
    })
}

/// Parses one diagram from a single line of text.
pub fn parse_diagram(text: &str) -> Result<Diagram, ParseError> {
    let text = text.strip_suffix('\n').unwrap_or(text);
    if text.contains('\n') {
        let col = text.find('\n').unwrap() + 1;
        return Err(ParseError {
            line: 1,
            column: col,
            kind: ParseErrorKind::Trailing,
        });
    }
    parse_line(text, 1)
}

/// Parses a record file: one diagram per non-empty, non-comment line.
pub fn parse_records(text: &str) -> Result<Vec<Diagram>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        out.push(parse_line(line, i + 1)?);
    }
    Ok(out)
}

impl fmt::Display for SignedChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chords; n={};", self.n())?;
        for c in self.chords() {
            write!(f, " {}-{}:{}", c.a, c.b, c.sign)?;
        }
        Ok(())
    }
}

impl fmt::Display for ArrowDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "arrows; n={};", self.n())?;
        for a in self.arrows() {
            write!(f, " {}>{}:{}", a.tail, a.head, a.sign)?;
        }
        Ok(())
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagram::Chords(d) => d.fmt(f),
            Diagram::Arrows(a) => a.fmt(f),
        }
    }
}
