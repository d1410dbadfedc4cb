//! Line-oriented instance and map file formats.
//!
//! Instance files (`.msspace`):
//!
//! ```text
//! msspace v1
//! points 3
//! point 1
//! point 2
//! point 3
//! sym on
//! val 1 1 1 8
//! val 1 1 2 8
//! ...
//! ```
//!
//! The header, the point count, the point declarations (in order), the
//! `sym on|off` mode line, and then one `val x y z value` line per
//! multiset (`sym on`) or ordered triple (`sym off`). Values are
//! non-negative integers, decimals, or fractions (`8`, `3.5`, `7/2`).
//! `#` starts a comment that runs to the end of the line; blank lines
//! are ignored. Every entry must appear exactly once: duplicates and
//! missing entries are parse errors.
//!
//! Map files (`.msmap`) have the header `msmap v1` followed by one
//! `map from to` line per point of the companion instance.
//!
//! Serialization is canonical: points in declaration order, entries in
//! lexicographic index order (sorted triples in symmetric mode), values
//! in lowest terms. Parsing a serialized space reproduces it exactly.

use std::fmt;

use crate::space::{MsSpace, SelfMap, SpaceError, MAX_POINTS};
use crate::value::{format_rational, Value};

/// A syntax or structure error, located by 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

/// Non-comment tokens of one line with their 1-based start columns.
type TokenList<'a> = Vec<(usize, &'a str)>;

fn tokens(line: &str) -> TokenList<'_> {
    let code = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (col, ch) in code.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &code[s..col]));
            }
        } else if start.is_none() {
            start = Some(col);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &code[s..]));
    }
    out
}

/// Iterator over the meaningful lines of a file: line number plus
/// tokens, skipping blank and comment-only lines.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last_line: 1,
        }
    }

    fn next_line(&mut self) -> Option<(usize, TokenList<'a>)> {
        for (i, line) in self.inner.by_ref() {
            self.last_line = i + 1;
            let toks = tokens(line);
            if !toks.is_empty() {
                return Some((i + 1, toks));
            }
        }
        None
    }
}

fn expect_line<'a>(
    lines: &mut Lines<'a>,
    what: &str,
) -> Result<(usize, TokenList<'a>), ParseError> {
    lines
        .next_line()
        .ok_or_else(|| ParseError::new(lines.last_line, 1, format!("expected {what}")))
}

/// The line must consist of exactly the given keywords followed by
/// `arity` free tokens; returns the free tokens.
fn expect_tokens<'a>(
    line: usize,
    toks: &[(usize, &'a str)],
    keywords: &[&str],
    arity: usize,
    what: &str,
) -> Result<Vec<(usize, &'a str)>, ParseError> {
    for (i, kw) in keywords.iter().enumerate() {
        match toks.get(i) {
            Some(&(_, t)) if t == *kw => {}
            Some(&(col, _)) => {
                return Err(ParseError::new(line, col, format!("expected {what}")));
            }
            None => {
                return Err(ParseError::new(
                    line,
                    end_col(toks),
                    format!("expected {what}"),
                ));
            }
        }
    }
    let free = &toks[keywords.len()..];
    if free.len() < arity {
        return Err(ParseError::new(
            line,
            end_col(toks),
            format!("expected {what}"),
        ));
    }
    if free.len() > arity {
        let (col, t) = free[arity];
        return Err(ParseError::new(
            line,
            col,
            format!("unexpected token `{t}`"),
        ));
    }
    Ok(free.to_vec())
}

// Columns are 1-based byte offsets within the line.
fn end_col(toks: &[(usize, &str)]) -> usize {
    toks.last().map(|(c, t)| c + t.len()).unwrap_or(1)
}

/// Parses an instance file into a space. Totality, duplicate entries,
/// id validity, and the point cap are all enforced; errors carry the
/// offending line and column.
pub fn parse_instance(text: &str) -> Result<MsSpace, ParseError> {
    let mut lines = Lines::new(text);

    let (hline, htoks) = expect_line(&mut lines, "header `msspace v1`")?;
    expect_tokens(hline, &htoks, &["msspace", "v1"], 0, "header `msspace v1`")?;

    let (nline, ntoks) = expect_line(&mut lines, "`points <n>` line")?;
    let free = expect_tokens(nline, &ntoks, &["points"], 1, "`points <n>` line")?;
    let (ncol, ntok) = free[0];
    let n: usize = ntok
        .parse()
        .map_err(|_| ParseError::new(nline, ncol, format!("invalid point count `{ntok}`")))?;
    if n == 0 {
        return Err(ParseError::new(
            nline,
            ncol,
            "point count must be at least 1",
        ));
    }
    if n > MAX_POINTS {
        return Err(ParseError::new(
            nline,
            ncol,
            format!("point count {n} exceeds the maximum of {MAX_POINTS}"),
        ));
    }

    // Point declarations arrive before the mode line, so collect them
    // first and build once the mode is known.
    let mut point_ids: Vec<(usize, usize, String)> = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, toks) = expect_line(&mut lines, "`point <id>` line")?;
        let free = expect_tokens(line, &toks, &["point"], 1, "`point <id>` line")?;
        let (col, id) = free[0];
        point_ids.push((line, col, id.to_string()));
    }

    let (sline, stoks) = expect_line(&mut lines, "`sym on|off` line")?;
    let free = expect_tokens(sline, &stoks, &["sym"], 1, "`sym on|off` line")?;
    let symmetric = match free[0] {
        (_, "on") => true,
        (_, "off") => false,
        (col, other) => {
            return Err(ParseError::new(
                sline,
                col,
                format!("expected `on` or `off`, got `{other}`"),
            ));
        }
    };

    let mut builder = MsSpace::builder(symmetric);
    for (line, col, id) in &point_ids {
        builder
            .add_point(id)
            .map_err(|e| ParseError::new(*line, *col, e.to_string()))?;
    }

    while let Some((line, toks)) = lines.next_line() {
        let free = expect_tokens(line, &toks, &["val"], 4, "`val <x> <y> <z> <value>` line")?;
        let value: Value = free[3]
            .1
            .parse()
            .map_err(|e| ParseError::new(line, free[3].0, format!("{e}")))?;
        builder
            .set(free[0].1, free[1].1, free[2].1, value)
            .map_err(|e| {
                let col = match e {
                    SpaceError::UnknownPoint(_) => free[0].0,
                    _ => toks[0].0,
                };
                ParseError::new(line, col, e.to_string())
            })?;
    }

    builder
        .build()
        .map_err(|e| ParseError::new(lines.last_line, 1, e.to_string()))
}

/// Canonical text form of a space; [`parse_instance`] inverts it
/// exactly.
pub fn serialize_instance(space: &MsSpace) -> String {
    let n = space.len();
    let mut out = String::from("msspace v1\n");
    out.push_str(&format!("points {n}\n"));
    for p in space.points() {
        out.push_str(&format!("point {p}\n"));
    }
    out.push_str(if space.symmetric() {
        "sym on\n"
    } else {
        "sym off\n"
    });
    let mut entry = |i: usize, j: usize, k: usize| {
        out.push_str(&format!(
            "val {} {} {} {}\n",
            space.point(i),
            space.point(j),
            space.point(k),
            format_rational(space.value_at(i, j, k).ratio()),
        ));
    };
    if space.symmetric() {
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    entry(i, j, k);
                }
            }
        }
    } else {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    entry(i, j, k);
                }
            }
        }
    }
    out
}

/// Parses a map file into `(from, to)` id pairs. Binding them to a
/// space (totality, unknown ids, duplicates) happens in
/// [`SelfMap::from_pairs`], which knows the companion instance.
pub fn parse_map_pairs(text: &str) -> Result<Vec<(String, String)>, ParseError> {
    let mut lines = Lines::new(text);
    let (hline, htoks) = expect_line(&mut lines, "header `msmap v1`")?;
    expect_tokens(hline, &htoks, &["msmap", "v1"], 0, "header `msmap v1`")?;
    let mut pairs = Vec::new();
    while let Some((line, toks)) = lines.next_line() {
        let free = expect_tokens(line, &toks, &["map"], 2, "`map <from> <to>` line")?;
        pairs.push((free[0].1.to_string(), free[1].1.to_string()));
    }
    Ok(pairs)
}

/// Canonical text form of a map over its space, one line per point in
/// declaration order.
pub fn serialize_map(space: &MsSpace, map: &SelfMap) -> String {
    let mut out = String::from("msmap v1\n");
    for (i, p) in space.points().iter().enumerate() {
        out.push_str(&format!("map {} {}\n", p, space.point(map.apply_idx(i))));
    }
    out
}
