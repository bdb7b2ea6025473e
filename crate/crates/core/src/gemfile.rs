//! Line-oriented text format for colored graphs.
//!
//! ```text
//! gem 1
//! colors 3
//! vertices 2
//! color 0: 0-1
//! color 1: 0-1
//! color 2: 0-1
//! ```
//!
//! `#` starts a comment; blank lines are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{validate, ColoredGraph, InvalidGraph, RawGraph};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GemFileError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {message}")]
    Structure { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] InvalidGraph),
}

impl GemFileError {
    /// 1-based line of the problem, when it has one.
    pub fn line(&self) -> Option<usize> {
        match self {
            GemFileError::Syntax { line, .. } | GemFileError::Structure { line, .. } => Some(*line),
            GemFileError::Invalid(_) => None,
        }
    }
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    /// Byte offset of `text` within the original line.
    start: usize,
}

impl Cursor<'_> {
    fn err(&self, at: usize, message: impl Into<String>) -> GemFileError {
        GemFileError::Syntax {
            line: self.line,
            column: at + 1,
            message: message.into(),
        }
    }
}

/// Tokens of `s` with their byte offsets.
fn tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.split_ascii_whitespace()
        .map(move |t| (t.as_ptr() as usize - s.as_ptr() as usize, t))
}

fn number(cur: &Cursor<'_>, at: usize, tok: &str, what: &str) -> Result<usize, GemFileError> {
    tok.parse()
        .map_err(|_| cur.err(at, format!("expected {what}, found `{tok}`")))
}

/// Reads `key <number>` from a header line.
fn header(cur: &Cursor<'_>, key: &str) -> Result<usize, GemFileError> {
    let toks: Vec<_> = tokens(cur.text).collect();
    match toks.as_slice() {
        [(_, k), (at, v)] if *k == key => number(cur, cur.start + at, v, "a number"),
        [(at, k), ..] if *k != key => {
            Err(cur.err(cur.start + at, format!("expected `{key}`, found `{k}`")))
        }
        [(at, _), rest @ ..] => {
            let at = rest.get(1).map_or(cur.start + at, |(a, _)| cur.start + a);
            Err(cur.err(at, format!("expected `{key} <number>`")))
        }
        [] => Err(cur.err(cur.start, format!("expected `{key}`"))),
    }
}

pub fn parse_gem(text: &str) -> Result<ColoredGraph, GemFileError> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        let start = body.len() - trimmed.len();
        let trimmed = trimmed.trim_end();
        (!trimmed.is_empty()).then_some(Cursor {
            line: i + 1,
            text: trimmed,
            start,
        })
    });
    let last_line = text.lines().count().max(1);
    let eof = |what: &str| GemFileError::Structure {
        line: last_line,
        message: format!("unexpected end of file, expected {what}"),
    };

    let cur = lines.next().ok_or_else(|| eof("`gem 1`"))?;
    let version = header(&cur, "gem")?;
    if version != FORMAT_VERSION as usize {
        return Err(cur.err(
            cur.start + 4,
            format!("unsupported format version {version}"),
        ));
    }
    let colors = header(&lines.next().ok_or_else(|| eof("`colors`"))?, "colors")?;
    let vertices = header(&lines.next().ok_or_else(|| eof("`vertices`"))?, "vertices")?;

    let mut raw = RawGraph::new(colors, vertices);
    let mut seen_lines = 0usize;
    for cur in lines {
        let Some((head, rest)) = cur.text.split_once(':') else {
            return Err(cur.err(cur.start, "expected `color <c>: a-b ...`"));
        };
        let mut head_toks = tokens(head);
        let color = match (head_toks.next(), head_toks.next(), head_toks.next()) {
            (Some((_, "color")), Some((at, c)), None) => {
                number(&cur, cur.start + at, c, "a color")?
            }
            (Some((at, _)), ..) => return Err(cur.err(cur.start + at, "expected `color <c>:`")),
            (None, ..) => return Err(cur.err(cur.start, "expected `color <c>:`")),
        };
        seen_lines += 1;
        if seen_lines > colors {
            return Err(GemFileError::Structure {
                line: cur.line,
                message: format!("more pairing lines than the {colors} declared colors"),
            });
        }
        if raw.pairings.contains_key(&color) {
            return Err(GemFileError::Structure {
                line: cur.line,
                message: format!("color {color} is given twice"),
            });
        }
        let offset = cur.start + head.len() + 1;
        let mut pairs = Vec::new();
        for (at, tok) in tokens(rest) {
            let at = offset + at;
            let Some((a, b)) = tok.split_once('-') else {
                return Err(cur.err(at, format!("expected a pair `a-b`, found `{tok}`")));
            };
            let a = number(&cur, at, a, "a vertex")?;
            let b = number(&cur, at + tok.find('-').unwrap_or(0) + 1, b, "a vertex")?;
            pairs.push((a, b));
        }
        raw.pairings.insert(color, pairs);
    }
    Ok(validate(&raw)?)
}

pub fn write_gem(g: &ColoredGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "gem {FORMAT_VERSION}");
    let _ = writeln!(out, "colors {}", g.color_count());
    let _ = writeln!(out, "vertices {}", g.vertex_count());
    for c in 0..g.color_count() {
        let pairs: Vec<String> = g.pairs(c).map(|(a, b)| format!("{a}-{b}")).collect();
        let _ = writeln!(out, "color {c}: {}", pairs.join(" "));
    }
    out
}
