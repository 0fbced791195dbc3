//! Line-oriented text format for matrix algebras:
//!
//! ```text
//! # comment
//! algebra p=101 n=2 dim=3
//! basis: 1 0 0 0
//! basis: 0 1 0 0
//! basis: 0 0 0 1
//! element a: matrix 0 1 0 0
//! element b: coords 1 0 1
//! ```
//!
//! `coords` refer to the basis in file order. Full-line comments are kept and
//! written back at the top; trailing comments are dropped.

use std::fmt::{self, Write as _};
use std::path::Path;

use crate::algebra::{AlgebraError, MatrixAlgebra};
use crate::generators::GeneratedAlgebra;
use crate::linalg::{is_prime, Matrix, PrimeField, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("basis matrices are linearly dependent (rank {rank} < dim {dim})")]
    DependentBasis { rank: usize, dim: usize },
    #[error("element `{0}` is not in the algebra")]
    ElementNotInSpan(String),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Io(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementValue {
    Matrix(Vec<u32>),
    Coords(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub p: u32,
    pub n: usize,
    pub comments: Vec<String>,
    pub basis: Vec<Vec<u32>>,
    pub elements: Vec<(String, ElementValue)>,
}

struct Cursor<'a> {
    line_no: usize,
    line: &'a str,
}

impl Cursor<'_> {
    fn err(&self, col: usize, msg: impl Into<String>) -> FormatError {
        FormatError::Parse {
            line: self.line_no,
            col,
            msg: msg.into(),
        }
    }

    /// Whitespace-separated tokens from byte offset `from`, with 1-based columns.
    fn tokens(&self, from: usize) -> Vec<(usize, &str)> {
        let rest = &self.line[from..];
        let mut out = Vec::new();
        let mut start = None;
        for (i, ch) in rest.char_indices() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    out.push((from + s + 1, &rest[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((from + s + 1, &rest[s..]));
        }
        out
    }

    fn integers(
        &self,
        from: usize,
        count: usize,
        p: u32,
        what: &str,
    ) -> Result<Vec<u32>, FormatError> {
        let toks = self.tokens(from);
        if toks.len() != count {
            let col = toks.get(count).map_or(self.line.len() + 1, |t| t.0);
            return Err(self.err(
                col,
                format!("expected {count} integers for {what}, found {}", toks.len()),
            ));
        }
        let f = PrimeField::new(p).expect("checked prime");
        toks.iter()
            .map(|&(col, t)| {
                t.parse::<i64>()
                    .map(|x| f.reduce(x))
                    .map_err(|_| self.err(col, format!("`{t}` is not an integer")))
            })
            .collect()
    }
}

fn header_value(cur: &Cursor, col: usize, tok: &str, key: &str) -> Result<u64, FormatError> {
    let v = tok
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| cur.err(col, format!("expected `{key}=<int>`, found `{tok}`")))?;
    v.parse().map_err(|_| {
        cur.err(
            col + key.len() + 1,
            format!("`{v}` is not a nonnegative integer"),
        )
    })
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut comments = Vec::new();
        let mut header: Option<(u32, usize, usize)> = None;
        let mut basis = Vec::new();
        let mut elements: Vec<(String, ElementValue)> = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            last_line = idx + 1;
            let trimmed = raw.trim_start();
            if trimmed.starts_with('#') {
                comments.push(trimmed.to_string());
                continue;
            }
            let line = raw.split('#').next().unwrap_or("");
            let cur = Cursor {
                line_no: idx + 1,
                line,
            };
            let toks = cur.tokens(0);
            let Some(&(col0, first)) = toks.first() else {
                continue;
            };
            let Some((p, n, dim)) = header else {
                if first != "algebra" || toks.len() != 4 {
                    return Err(cur.err(
                        col0,
                        "expected header `algebra p=<prime> n=<int> dim=<int>`",
                    ));
                }
                let p = header_value(&cur, toks[1].0, toks[1].1, "p")?;
                let n = header_value(&cur, toks[2].0, toks[2].1, "n")? as usize;
                let dim = header_value(&cur, toks[3].0, toks[3].1, "dim")? as usize;
                if p >= 1 << 16 || !is_prime(p as u32) {
                    return Err(cur.err(toks[1].0, format!("p = {p} is not a prime below 65536")));
                }
                if n == 0 {
                    return Err(cur.err(toks[2].0, "n must be positive"));
                }
                header = Some((p as u32, n, dim));
                continue;
            };
            if first == "basis:" {
                if basis.len() == dim {
                    return Err(cur.err(col0, format!("more than dim = {dim} basis lines")));
                }
                if !elements.is_empty() {
                    return Err(cur.err(col0, "basis lines must precede element lines"));
                }
                let off = col0 - 1 + first.len();
                basis.push(cur.integers(off, n * n, p, "a basis matrix")?);
            } else if first == "element" {
                if basis.len() != dim {
                    return Err(cur.err(
                        col0,
                        format!("expected {dim} basis lines, found {}", basis.len()),
                    ));
                }
                let rest_off = col0 - 1 + first.len();
                let colon = line[rest_off..].find(':').ok_or_else(|| {
                    cur.err(line.len() + 1, "expected `:` after the element label")
                })?;
                let label = line[rest_off..rest_off + colon].trim();
                if label.is_empty() || label.contains(char::is_whitespace) {
                    return Err(cur.err(rest_off + 1, "element label must be a single word"));
                }
                if elements.iter().any(|(l, _)| l == label) {
                    return Err(FormatError::DuplicateLabel(label.to_string()));
                }
                let after = rest_off + colon + 1;
                let kind = cur.tokens(after);
                let Some(&(kcol, kw)) = kind.first() else {
                    return Err(cur.err(line.len() + 1, "expected `matrix` or `coords`"));
                };
                let off = kcol - 1 + kw.len();
                let value = match kw {
                    "matrix" => ElementValue::Matrix(cur.integers(off, n * n, p, "a matrix")?),
                    "coords" => ElementValue::Coords(cur.integers(off, dim, p, "coordinates")?),
                    other => {
                        return Err(cur.err(
                            kcol,
                            format!("expected `matrix` or `coords`, found `{other}`"),
                        ))
                    }
                };
                elements.push((label.to_string(), value));
            } else {
                return Err(cur.err(col0, format!("unexpected `{first}`")));
            }
        }
        let Some((p, n, dim)) = header else {
            return Err(FormatError::Parse {
                line: last_line.max(1),
                col: 1,
                msg: "missing header line".into(),
            });
        };
        if basis.len() != dim {
            return Err(FormatError::Parse {
                line: last_line.max(1),
                col: 1,
                msg: format!("expected {dim} basis lines, found {}", basis.len()),
            });
        }
        Ok(Self {
            p,
            n,
            comments,
            basis,
            elements,
        })
    }

    pub fn read(path: &Path) -> Result<Self, FormatError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| FormatError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("validated prime")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Validates and builds the algebra with its named elements as matrices.
    pub fn to_generated(&self, name: impl Into<String>) -> Result<GeneratedAlgebra, FormatError> {
        let f = self.field();
        let nn = self.n * self.n;
        let rank = Subspace::from_vectors(f, nn, self.basis.iter()).dim();
        if rank != self.dim() {
            return Err(FormatError::DependentBasis {
                rank,
                dim: self.dim(),
            });
        }
        let mats: Vec<Matrix> = self
            .basis
            .iter()
            .map(|v| Matrix::from_data(f, self.n, self.n, v.clone()).expect("n*n entries"))
            .collect();
        let algebra = MatrixAlgebra::new(f, self.n, &mats)?;
        let mut elements = Vec::with_capacity(self.elements.len());
        for (label, value) in &self.elements {
            let data = match value {
                ElementValue::Matrix(m) => m.clone(),
                ElementValue::Coords(c) => {
                    let mut acc = vec![0u32; nn];
                    for (ci, bi) in c.iter().zip(&self.basis) {
                        for (x, &y) in acc.iter_mut().zip(bi) {
                            *x = f.add(*x, f.mul(*ci, y));
                        }
                    }
                    acc
                }
            };
            let m = Matrix::from_data(f, self.n, self.n, data).expect("n*n entries");
            if !algebra.contains(&m) {
                return Err(FormatError::ElementNotInSpan(label.clone()));
            }
            elements.push((label.clone(), m));
        }
        Ok(GeneratedAlgebra {
            name: name.into(),
            algebra,
            elements,
        })
    }

    /// File for a generated algebra: canonical basis, elements as matrices.
    pub fn from_generated(g: &GeneratedAlgebra) -> Self {
        Self {
            p: g.algebra.field().p(),
            n: g.algebra.size(),
            comments: vec![format!("# {}", g.name)],
            basis: g
                .algebra
                .basis()
                .iter()
                .map(|m| m.data().to_vec())
                .collect(),
            elements: g
                .elements
                .iter()
                .map(|(l, m)| (l.clone(), ElementValue::Matrix(m.data().to_vec())))
                .collect(),
        }
    }

    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

fn join(v: &[u32]) -> String {
    let mut s = String::with_capacity(v.len() * 3);
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        write!(s, "{x}").expect("string write");
    }
    s
}

impl fmt::Display for AlgebraFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.comments {
            writeln!(f, "{c}")?;
        }
        writeln!(f, "algebra p={} n={} dim={}", self.p, self.n, self.dim())?;
        for b in &self.basis {
            writeln!(f, "basis: {}", join(b))?;
        }
        for (label, value) in &self.elements {
            match value {
                ElementValue::Matrix(m) => writeln!(f, "element {label}: matrix {}", join(m))?,
                ElementValue::Coords(c) => writeln!(f, "element {label}: coords {}", join(c))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    const M2: &str = "# M_2\nalgebra p=101 n=2 dim=4\nbasis: 1 0 0 0\nbasis: 0 1 0 0\nbasis: 0 0 1 0\nbasis: 0 0 0 1\nelement a: matrix 0 1 0 0\n";

    #[test]
    fn parses_minimal_file() {
        let file = AlgebraFile::parse(M2).unwrap();
        let g = file.to_generated("m2").unwrap();
        assert_eq!(g.algebra.dim(), 4);
        assert_eq!(file.serialize(), M2);
    }

    #[test]
    fn reports_positions() {
        let bad = "algebra p=101 n=2 dim=1\nbasis: 1 0 x 0\n";
        assert_eq!(
            AlgebraFile::parse(bad),
            Err(FormatError::Parse {
                line: 2,
                col: 12,
                msg: "`x` is not an integer".into()
            })
        );
        let bad = "algebra p=100 n=2 dim=1\n";
        assert!(matches!(
            AlgebraFile::parse(bad),
            Err(FormatError::Parse {
                line: 1,
                col: 9,
                ..
            })
        ));
    }

    #[test]
    fn closure_violation() {
        let text = "algebra p=101 n=2 dim=1\nbasis: 0 1 1 0\n";
        let file = AlgebraFile::parse(text).unwrap();
        assert!(matches!(
            file.to_generated("x"),
            Err(FormatError::Algebra(AlgebraError::ClosureViolation(0, 0)))
        ));
    }

    #[test]
    fn coords_and_membership() {
        let text = "algebra p=5 n=2 dim=3\nbasis: 1 0 0 0\nbasis: 0 1 0 0\nbasis: 0 0 0 1\nelement u: coords 1 -1 1\nelement v: matrix 0 0 1 0\n";
        let file = AlgebraFile::parse(text).unwrap();
        assert_eq!(file.elements[0].1, ElementValue::Coords(vec![1, 4, 1]));
        assert_eq!(
            file.to_generated("t2").unwrap_err(),
            FormatError::ElementNotInSpan("v".into())
        );
    }

    #[test]
    fn paper10_round_trip() {
        let g = generators::paper10(101, 1).unwrap();
        let text = AlgebraFile::from_generated(&g).serialize();
        let again = AlgebraFile::parse(&text).unwrap();
        assert_eq!(again.serialize(), text);
        let g2 = again.to_generated(g.name.clone()).unwrap();
        assert_eq!(g2.algebra, g.algebra);
        assert_eq!(g2.elements, g.elements);
    }
}
