//! Generator matrix files.
//!
//! Text form: a header line `ring=<spec> n=<n> b=<b> t=<t>` followed by one
//! row per line of whitespace-separated element indices. Blank lines and
//! lines starting with `#` are ignored. The JSON form is an object with
//! fields `ring`, `n`, `b`, `t` and `rows`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::{ByteLayout, Code, CodeError, Limits};
use crate::rings::{FiniteRing, RingError, RingSpec};

#[derive(Debug, Error)]
pub enum MatrixFileError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("invalid JSON matrix: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub ring: String,
    pub n: usize,
    pub b: usize,
    pub t: usize,
    pub rows: Vec<Vec<u32>>,
}

impl MatrixFile {
    /// Accepts either form; JSON is recognised by a leading `{`.
    pub fn parse(text: &str) -> Result<Self, MatrixFileError> {
        if text.trim_start().starts_with('{') {
            let file: MatrixFile = serde_json::from_str(text)?;
            file.ring.parse::<RingSpec>()?;
            return Ok(file);
        }
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(MatrixFileError::Syntax {
            line: 1,
            reason: "missing header line".into(),
        })?;
        let syntax = |reason: String| MatrixFileError::Syntax { line: hline, reason };

        // Ring specs may contain spaces, so tokens without '=' continue the
        // previous value.
        let mut fields: Vec<(String, String)> = Vec::new();
        for tok in header.split_whitespace() {
            match tok.split_once('=') {
                Some((k, v)) => fields.push((k.to_string(), v.to_string())),
                None => match fields.last_mut() {
                    Some((_, v)) => v.push_str(tok),
                    None => return Err(syntax(format!("unexpected token {tok:?}"))),
                },
            }
        }
        let get = |key: &str| {
            fields
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| syntax(format!("header is missing {key}=")))
        };
        let number = |key: &str| -> Result<usize, MatrixFileError> {
            get(key)?.parse().map_err(|_| syntax(format!("{key}= is not a non-negative integer")))
        };
        if let Some((k, _)) = fields.iter().find(|(k, _)| !["ring", "n", "b", "t"].contains(&k.as_str())) {
            return Err(syntax(format!("unknown header field {k:?}")));
        }
        let ring = get("ring")?;
        ring.parse::<RingSpec>()?;
        let (n, b, t) = (number("n")?, number("b")?, number("t")?);

        let mut rows = Vec::new();
        for (line, l) in lines {
            let row = l
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u32>().map_err(|_| MatrixFileError::Syntax {
                        line,
                        reason: format!("{tok:?} is not an element index"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        Ok(MatrixFile { ring, n, b, t, rows })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("ring={} n={} b={} t={}\n", self.ring, self.n, self.b, self.t);
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix file serializes")
    }

    pub fn ring_spec(&self) -> Result<RingSpec, RingError> {
        self.ring.parse()
    }

    pub fn layout(&self) -> Result<ByteLayout, CodeError> {
        ByteLayout::new(self.n, self.b, self.t)
    }

    /// Builds the ring and spans the rows.
    pub fn build_code(&self, limits: &Limits) -> Result<Code, MatrixFileError> {
        let ring = Arc::new(FiniteRing::build(&self.ring_spec()?)?);
        Ok(Code::from_indices(ring, self.layout()?, &self.rows, limits)?)
    }
}
