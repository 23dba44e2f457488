use std::fmt::Write as _;

use num_bigint::BigInt;

use super::reduction::StandardIP;
use crate::error::{Error, Result};
use crate::matrix::{content_lines, parse_ints, parse_matrix_lines, IntMatrix};

/// max{h·y : C y <= g, y integral}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityProblem {
    pub c_mat: IntMatrix,
    pub g: Vec<BigInt>,
    pub h: Vec<BigInt>,
}

/// An instance file: a matrix in the shared text format followed by either
/// `b:` and `c:` lines (standard form) or `g:` and `h:` lines (inequality
/// form).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Standard(StandardIP),
    Inequality(InequalityProblem),
}

impl Instance {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let mat = parse_matrix_lines(&mut lines)?;
        let mut fields: Vec<(String, usize, Vec<BigInt>)> = Vec::new();
        for (line, content) in lines {
            let Some((key, rest)) = content.split_once(':') else {
                return Err(Error::Parse {
                    line,
                    message: "expected `key: values`".into(),
                });
            };
            let key = key.trim().to_string();
            if fields.iter().any(|(k, _, _)| k == &key) {
                return Err(Error::Parse {
                    line,
                    message: format!("duplicate `{key}:` line"),
                });
            }
            fields.push((key, line, parse_ints(line, rest)?));
        }
        let take = |name: &str, len: usize| -> Result<Vec<BigInt>> {
            let (_, line, v) = fields.iter().find(|(k, _, _)| k == name).ok_or(Error::Parse {
                line: 0,
                message: format!("missing `{name}:` line"),
            })?;
            if v.len() != len {
                return Err(Error::Parse {
                    line: *line,
                    message: format!("`{name}:` needs {len} entries, found {}", v.len()),
                });
            }
            Ok(v.clone())
        };
        let keys: Vec<&str> = fields.iter().map(|(k, _, _)| k.as_str()).collect();
        let (m, n) = (mat.rows(), mat.cols());
        match keys.as_slice() {
            ["b", "c"] | ["c", "b"] => {
                let (b, c) = (take("b", m)?, take("c", n)?);
                Ok(Instance::Standard(StandardIP::new(mat, b, c)?))
            }
            ["g", "h"] | ["h", "g"] => Ok(Instance::Inequality(InequalityProblem {
                g: take("g", m)?,
                h: take("h", n)?,
                c_mat: mat,
            })),
            _ => Err(Error::Parse {
                line: fields.first().map_or(0, |f| f.1),
                message: "expected exactly `b:` and `c:`, or `g:` and `h:`".into(),
            }),
        }
    }

    pub fn to_text(&self) -> String {
        let line = |key: &str, v: &[BigInt]| {
            let vals: Vec<String> = v.iter().map(ToString::to_string).collect();
            format!("{key}: {}\n", vals.join(" "))
        };
        let mut out = String::new();
        match self {
            Instance::Standard(ip) => {
                write!(out, "{}", ip.b_mat).unwrap();
                out += &line("b", &ip.b);
                out += &line("c", &ip.c);
            }
            Instance::Inequality(p) => {
                write!(out, "{}", p.c_mat).unwrap();
                out += &line("g", &p.g);
                out += &line("h", &p.h);
            }
        }
        out
    }

    /// The matrix whose subdeterminants matter: `Bᵀ` or `C`.
    pub fn constraint_matrix(&self) -> IntMatrix {
        match self {
            Instance::Standard(ip) => ip.b_mat.transpose(),
            Instance::Inequality(p) => p.c_mat.clone(),
        }
    }
}
