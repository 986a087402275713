//! Line-oriented molecule format:
//!
//! ```text
//! # comment
//! qubits 6          # required first statement
//! name ring6        # optional
//! bind 1 2 2/9      # one edge per line; weight is a decimal or p/q
//! ```

use std::collections::BTreeMap;
use std::fmt;

use super::spec::{MoleculeSpec, Pair, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    MissingQubits,
    SelfLoop,
    DuplicateEdge,
    NonPositiveWeight,
    IndexOutOfRange,
    NoEdges,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::MissingQubits => "missing qubits declaration",
            ParseErrorKind::SelfLoop => "self-loop",
            ParseErrorKind::DuplicateEdge => "duplicate edge",
            ParseErrorKind::NonPositiveWeight => "non-positive weight",
            ParseErrorKind::IndexOutOfRange => "qubit index out of range",
            ParseErrorKind::NoEdges => "no edges",
        })
    }
}

/// Located diagnostic; `line` and `column` are 1-based, columns counted in characters.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn is_semantic(&self) -> bool {
        !matches!(self.kind, ParseErrorKind::Syntax | ParseErrorKind::MissingQubits)
    }
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let body = match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    };
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in body.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (true, Some((b, c))) => {
                tokens.push(Token {
                    text: &body[b..byte],
                    column: c + 1,
                });
                start = None;
            }
            (false, None) => start = Some((byte, col)),
            _ => {}
        }
    }
    if let Some((b, c)) = start {
        tokens.push(Token {
            text: &body[b..],
            column: c + 1,
        });
    }
    tokens
}

struct Ctx {
    line: usize,
}

impl Ctx {
    fn err(&self, kind: ParseErrorKind, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            kind,
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn arity(&self, tokens: &[Token], expected: usize, usage: &str) -> Result<(), ParseError> {
        if tokens.len() != expected + 1 {
            let col = tokens.get(expected + 1).map_or(tokens[0].column, |t| t.column);
            return Err(self.err(ParseErrorKind::Syntax, col, format!("expected `{usage}`")));
        }
        Ok(())
    }

    fn integer(&self, tok: Token) -> Result<usize, ParseError> {
        if !tok.text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(self.err(
                ParseErrorKind::Syntax,
                tok.column,
                format!("expected an integer, found `{}`", tok.text),
            ));
        }
        tok.text.parse().map_err(|_| {
            self.err(
                ParseErrorKind::Syntax,
                tok.column,
                format!("integer `{}` is too large", tok.text),
            )
        })
    }

    fn weight(&self, tok: Token) -> Result<Weight, ParseError> {
        let non_positive = || {
            self.err(
                ParseErrorKind::NonPositiveWeight,
                tok.column,
                format!("weight must be positive, found `{}`", tok.text),
            )
        };
        let value = if let Some((p, q)) = tok.text.split_once('/') {
            let num: i64 = p.parse().map_err(|_| {
                self.err(
                    ParseErrorKind::Syntax,
                    tok.column,
                    format!("bad fraction numerator `{p}`"),
                )
            })?;
            let den: u64 = q.parse().map_err(|_| {
                self.err(
                    ParseErrorKind::Syntax,
                    tok.column,
                    format!("bad fraction denominator `{q}`"),
                )
            })?;
            if den == 0 {
                return Err(self.err(ParseErrorKind::Syntax, tok.column, "zero denominator"));
            }
            if num <= 0 {
                return Err(non_positive());
            }
            num as f64 / den as f64
        } else {
            let decimal = tok
                .text
                .bytes()
                .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-'));
            let v: f64 = if decimal { tok.text.parse().ok() } else { None }.ok_or_else(|| {
                self.err(
                    ParseErrorKind::Syntax,
                    tok.column,
                    format!("expected a weight, found `{}`", tok.text),
                )
            })?;
            if !v.is_finite() {
                return Err(self.err(ParseErrorKind::Syntax, tok.column, "weight must be finite"));
            }
            if v <= 0.0 {
                return Err(non_positive());
            }
            v
        };
        Ok(Weight::with_text(value, tok.text))
    }
}

fn valid_ident(s: &str) -> bool {
    s.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

/// Parses the molecule format, reporting the first problem with its location.
pub fn parse_spec(text: &str) -> Result<MoleculeSpec, ParseError> {
    let mut n_qubits: Option<usize> = None;
    let mut name: Option<String> = None;
    let mut edges: BTreeMap<Pair, (usize, Weight)> = BTreeMap::new();
    let mut last_line = 1;

    for (idx, raw) in text.lines().enumerate() {
        let ctx = Ctx { line: idx + 1 };
        last_line = idx + 1;
        let tokens = tokenize(raw);
        let Some(head) = tokens.first().copied() else {
            continue;
        };
        let Some(n) = n_qubits else {
            if head.text != "qubits" {
                return Err(ctx.err(
                    ParseErrorKind::MissingQubits,
                    head.column,
                    format!("expected `qubits <n>` as the first statement, found `{}`", head.text),
                ));
            }
            ctx.arity(&tokens, 1, "qubits <n>")?;
            let n = ctx.integer(tokens[1])?;
            if n < 2 {
                return Err(ctx.err(
                    ParseErrorKind::Syntax,
                    tokens[1].column,
                    "a molecule needs at least 2 qubits",
                ));
            }
            n_qubits = Some(n);
            continue;
        };
        match head.text {
            "qubits" => {
                return Err(ctx.err(ParseErrorKind::Syntax, head.column, "qubit count declared twice"));
            }
            "name" => {
                ctx.arity(&tokens, 1, "name <ident>")?;
                if name.is_some() {
                    return Err(ctx.err(ParseErrorKind::Syntax, head.column, "name declared twice"));
                }
                if !valid_ident(tokens[1].text) {
                    return Err(ctx.err(
                        ParseErrorKind::Syntax,
                        tokens[1].column,
                        format!("`{}` is not an identifier", tokens[1].text),
                    ));
                }
                name = Some(tokens[1].text.to_string());
            }
            "bind" => {
                ctx.arity(&tokens, 3, "bind <i> <j> <weight>")?;
                let i = ctx.integer(tokens[1])?;
                let j = ctx.integer(tokens[2])?;
                for (q, tok) in [(i, tokens[1]), (j, tokens[2])] {
                    if q == 0 || q > n {
                        return Err(ctx.err(
                            ParseErrorKind::IndexOutOfRange,
                            tok.column,
                            format!("qubit {q} is outside 1..={n}"),
                        ));
                    }
                }
                if i == j {
                    return Err(ctx.err(
                        ParseErrorKind::SelfLoop,
                        tokens[1].column,
                        format!("qubit {i} bound to itself"),
                    ));
                }
                let weight = ctx.weight(tokens[3])?;
                let key = (i.min(j), i.max(j));
                if let Some((first, _)) = edges.get(&key) {
                    return Err(ctx.err(
                        ParseErrorKind::DuplicateEdge,
                        head.column,
                        format!("pair ({}, {}) already bound on line {first}", key.0, key.1),
                    ));
                }
                edges.insert(key, (ctx.line, weight));
            }
            other => {
                return Err(ctx.err(
                    ParseErrorKind::Syntax,
                    head.column,
                    format!("unknown statement `{other}`"),
                ));
            }
        }
    }

    let ctx = Ctx { line: last_line };
    let n = n_qubits.ok_or_else(|| ctx.err(ParseErrorKind::MissingQubits, 1, "no `qubits <n>` statement"))?;
    if edges.is_empty() {
        return Err(ctx.err(ParseErrorKind::NoEdges, 1, "at least one `bind` is required"));
    }
    let spec = MoleculeSpec::new(n, edges.into_iter().map(|((k, l), (_, w))| (k, l, w)), name)
        .expect("parser already enforced every spec invariant");
    Ok(spec)
}
