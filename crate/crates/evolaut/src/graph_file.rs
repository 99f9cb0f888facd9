//! Line-oriented graph files.
//!
//! ```text
//! # the path P3
//! n 3
//! e 1 2
//! e 2 3
//! ```
//!
//! The first non-comment line gives the vertex count; each `e` line adds one undirected edge.
//! `#` starts a comment anywhere on a line.

use std::fmt::Write as _;
use std::path::Path;

use evolaut_core::{Error as CoreError, Graph};

#[derive(Debug, thiserror::Error)]
pub enum GraphFileError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] CoreError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<usize, GraphFileError> {
    let tok = tok.ok_or_else(|| GraphFileError::Parse {
        line,
        message: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| GraphFileError::Parse {
        line,
        message: format!("{what} {tok:?} is not a non-negative integer"),
    })
}

pub fn parse_graph(text: &str) -> Result<Graph, GraphFileError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut toks = content.split_whitespace();
        let Some(head) = toks.next() else {
            continue;
        };
        match (head, n) {
            ("n", None) => n = Some(number(toks.next(), line, "vertex count")?),
            ("n", Some(_)) => {
                return Err(GraphFileError::Parse {
                    line,
                    message: "repeated \"n\" line".into(),
                })
            }
            ("e", Some(_)) => {
                let i = number(toks.next(), line, "edge endpoint")?;
                let j = number(toks.next(), line, "edge endpoint")?;
                edges.push((i, j));
            }
            (_, None) => {
                return Err(GraphFileError::Parse {
                    line,
                    message: "expected \"n <count>\" first".into(),
                })
            }
            (other, Some(_)) => {
                return Err(GraphFileError::Parse {
                    line,
                    message: format!("unknown record {other:?}"),
                })
            }
        }
        if let Some(extra) = toks.next() {
            return Err(GraphFileError::Parse {
                line,
                message: format!("unexpected token {extra:?}"),
            });
        }
    }
    let n = n.ok_or(GraphFileError::Parse {
        line: 0,
        message: "no \"n <count>\" line".into(),
    })?;
    Ok(Graph::new(n, &edges)?)
}

pub fn read_graph(path: &Path) -> Result<Graph, GraphFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| GraphFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_graph(&text)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.order());
    for (i, j) in g.edges() {
        writeln!(out, "e {i} {j}").unwrap();
    }
    out
}
