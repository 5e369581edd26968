//! Line-oriented text formats: word lists and indexed families.
//!
//! Word lists hold one word per line. Family files hold lines `i: body` where the body is
//! `w1 w2 ...` (a finite subset), `x->y x->y ...` (a finite function) or `a<b<c` (a finite
//! chain). In both formats blank lines and lines starting with `#` are ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::diagonal::{finite_function, Family, IndexedFamily, OrderComparator};
use crate::system::System;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct TextError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, TextError> {
    Err(TextError { line, message: message.into() })
}

/// Numbered lines that carry content.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_word(line: usize, s: &str) -> Result<Word, TextError> {
    s.parse().or_else(|e| err(line, format!("{s:?}: {e}")))
}

/// Words in file order; duplicates are rejected.
pub fn parse_word_list(text: &str) -> Result<Vec<Word>, TextError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (line, s) in content_lines(text) {
        let w = parse_word(line, s)?;
        if !seen.insert(w.clone()) {
            return err(line, format!("duplicate word {w}"));
        }
        out.push(w);
    }
    Ok(out)
}

/// A family file before it is turned into a [`Family`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedFamily {
    Subsets(Vec<BTreeSet<Word>>),
    Functions(Vec<BTreeMap<Word, Word>>),
    Orders(Vec<Vec<Word>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BodyKind {
    Subset,
    Function,
    Order,
}

impl fmt::Display for BodyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BodyKind::Subset => "subset",
            BodyKind::Function => "function",
            BodyKind::Order => "order",
        })
    }
}

enum Body {
    Empty,
    Subset(BTreeSet<Word>),
    Function(BTreeMap<Word, Word>),
    Order(Vec<Word>),
}

fn parse_body(line: usize, body: &str) -> Result<Body, TextError> {
    if body.is_empty() {
        return Ok(Body::Empty);
    }
    if body.contains("->") {
        let mut graph = BTreeMap::new();
        for arrow in body.split_whitespace() {
            let Some((x, y)) = arrow.split_once("->") else {
                return err(line, format!("expected x->y, found {arrow:?}"));
            };
            let (x, y) = (parse_word(line, x)?, parse_word(line, y)?);
            if let Some(prev) = graph.insert(x.clone(), y.clone()) {
                if prev != y {
                    return err(line, format!("{x} is sent to both {prev} and {y}"));
                }
            }
        }
        return Ok(Body::Function(graph));
    }
    if body.contains('<') {
        let chain: Vec<Word> = body
            .split('<')
            .map(|s| parse_word(line, s.trim()))
            .collect::<Result<_, _>>()?;
        let distinct: BTreeSet<&Word> = chain.iter().collect();
        if distinct.len() != chain.len() {
            return err(line, "chain repeats an element");
        }
        return Ok(Body::Order(chain));
    }
    let mut set = BTreeSet::new();
    for s in body.split_whitespace() {
        let w = parse_word(line, s)?;
        if !set.insert(w.clone()) {
            return err(line, format!("duplicate word {w}"));
        }
    }
    Ok(Body::Subset(set))
}

/// Parses a family file. Indices must be exactly `1..=n`, in any order; all nonempty lines must agree on the kind.
pub fn parse_family(text: &str) -> Result<ParsedFamily, TextError> {
    let mut kind: Option<(BodyKind, usize)> = None;
    let mut entries: BTreeMap<u64, (usize, Body)> = BTreeMap::new();
    for (line, s) in content_lines(text) {
        let Some((idx, body)) = s.split_once(':') else {
            return err(line, "expected `index: body`");
        };
        let idx: u64 = match idx.trim().parse() {
            Ok(i) if i >= 1 => i,
            _ => return err(line, format!("index {:?} is not a positive integer", idx.trim())),
        };
        let body = parse_body(line, body.trim())?;
        let this = match &body {
            Body::Empty => None,
            Body::Subset(_) => Some(BodyKind::Subset),
            Body::Function(_) => Some(BodyKind::Function),
            Body::Order(_) => Some(BodyKind::Order),
        };
        if let Some(this) = this {
            match kind {
                Some((k, first)) if k != this => {
                    return err(line, format!("{this} line in a family of {k}s (line {first})"))
                }
                None => kind = Some((this, line)),
                _ => {}
            }
        }
        if entries.insert(idx, (line, body)).is_some() {
            return err(line, format!("index {idx} appears twice"));
        }
    }
    if let Some((&last, (line, _))) = entries.iter().next_back() {
        if last != entries.len() as u64 {
            return err(*line, format!("indices must be 1..{}, found {last}", entries.len()));
        }
    }
    let bodies = entries.into_values().map(|(_, b)| b);
    Ok(match kind.map(|(k, _)| k).unwrap_or(BodyKind::Subset) {
        BodyKind::Subset => ParsedFamily::Subsets(
            bodies
                .map(|b| match b {
                    Body::Subset(s) => s,
                    _ => BTreeSet::new(),
                })
                .collect(),
        ),
        BodyKind::Function => ParsedFamily::Functions(
            bodies
                .map(|b| match b {
                    Body::Function(g) => g,
                    _ => BTreeMap::new(),
                })
                .collect(),
        ),
        BodyKind::Order => ParsedFamily::Orders(
            bodies
                .map(|b| match b {
                    Body::Order(c) => c,
                    _ => Vec::new(),
                })
                .collect(),
        ),
    })
}

impl ParsedFamily {
    pub fn len(&self) -> usize {
        match self {
            ParsedFamily::Subsets(v) => v.len(),
            ParsedFamily::Functions(v) => v.len(),
            ParsedFamily::Orders(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn into_family(self, description: &str) -> Family {
        match self {
            ParsedFamily::Subsets(v) => Family::Subsets(IndexedFamily::finite(
                description,
                v.into_iter().map(System::finite).collect(),
            )),
            ParsedFamily::Functions(v) => Family::Functions(IndexedFamily::finite(
                description,
                v.into_iter().map(finite_function).collect(),
            )),
            ParsedFamily::Orders(v) => Family::Orders(IndexedFamily::finite(
                description,
                v.into_iter()
                    .map(|c| OrderComparator::chain(c).expect("chains are checked while parsing"))
                    .collect(),
            )),
        }
    }
}
