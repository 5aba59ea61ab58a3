//! JSON documents for algebras, operators and bracket tables.
//!
//! ```json
//! {"scalar": "Q", "dim": 2, "unit": ["1", "0"], "mul": [[["1","0"],["0","1"]],[["0","1"],["-1","0"]]]}
//! {"matrix": [["0", "1"], ["0", "0"]]}
//! {"table": [[["0","0"],["1","0"]],[["-1","0"],["0","0"]]]}
//! ```
//!
//! Scalars are strings (`"3"`, `"-1/2"`); bare JSON integers are accepted on
//! input. The `scalar` field of an algebra may be omitted, in which case the
//! caller's default ring applies.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::findim::{BracketTable, FindimError, StructureAlgebra};
use crate::linalg::{Matrix, Vector};
use crate::scalar::{Ring, Scalar, ScalarError};

/// Environment variable naming the default scalar ring.
pub const SCALAR_DEFAULT_ENV: &str = "AVG_SCALAR_DEFAULT";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad scalar at {path}: {source}")]
    Scalar { path: String, source: ScalarError },
    #[error("bad scalar ring `{0}`")]
    Ring(String),
    #[error("shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Findim(#[from] FindimError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Text(String),
    Int(i64),
}

impl ScalarText {
    fn parse(&self, ring: Ring, path: &str) -> Result<Scalar, IoError> {
        match self {
            ScalarText::Text(s) => ring.parse_scalar(s),
            ScalarText::Int(v) => Ok(ring.from_i64(*v)),
        }
        .map_err(|source| IoError::Scalar { path: path.to_string(), source })
    }
}

impl From<&Scalar> for ScalarText {
    fn from(s: &Scalar) -> Self {
        ScalarText::Text(s.to_string())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar: Option<String>,
    pub dim: usize,
    pub unit: Vec<ScalarText>,
    pub mul: Vec<Vec<Vec<ScalarText>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDoc {
    pub matrix: Vec<Vec<ScalarText>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDoc {
    pub table: Vec<Vec<Vec<ScalarText>>>,
}

fn parse_vector(v: &[ScalarText], ring: Ring, n: usize, path: &str) -> Result<Vector, IoError> {
    if v.len() != n {
        return Err(IoError::Shape(format!("{path} has length {} but dim is {n}", v.len())));
    }
    v.iter().enumerate().map(|(k, s)| s.parse(ring, &format!("{path}[{k}]"))).collect()
}

fn parse_cube(c: &[Vec<Vec<ScalarText>>], ring: Ring, n: usize, name: &str) -> Result<Vec<Vec<Vector>>, IoError> {
    if c.len() != n {
        return Err(IoError::Shape(format!("{name} has {} rows but dim is {n}", c.len())));
    }
    c.iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != n {
                return Err(IoError::Shape(format!("{name}[{i}] has {} entries but dim is {n}", row.len())));
            }
            row.iter()
                .enumerate()
                .map(|(j, v)| parse_vector(v, ring, n, &format!("{name}[{i}][{j}]")))
                .collect()
        })
        .collect()
}

impl AlgebraDoc {
    /// Builds and verifies the algebra; `default` applies when `scalar` is absent.
    pub fn build(&self, default: Ring) -> Result<StructureAlgebra, IoError> {
        let a = self.build_unverified(default)?;
        let report = a.verify();
        if !report.ok() {
            return Err(FindimError::NotAnAlgebra(report).into());
        }
        Ok(a)
    }

    /// Checks only the shape, leaving the algebra axioms to the caller.
    pub fn build_unverified(&self, default: Ring) -> Result<StructureAlgebra, IoError> {
        let ring = match &self.scalar {
            Some(s) => s.parse().map_err(|_| IoError::Ring(s.clone()))?,
            None => default,
        };
        let unit = parse_vector(&self.unit, ring, self.dim, "unit")?;
        let mul = parse_cube(&self.mul, ring, self.dim, "mul")?;
        Ok(StructureAlgebra::new(ring, unit, mul)?)
    }

    pub fn from_algebra(a: &StructureAlgebra) -> Self {
        AlgebraDoc {
            scalar: Some(a.ring().to_string()),
            dim: a.dim(),
            unit: a.unit().iter().map(ScalarText::from).collect(),
            mul: cube_doc(a.structure_constants()),
        }
    }
}

fn cube_doc(c: &[Vec<Vector>]) -> Vec<Vec<Vec<ScalarText>>> {
    c.iter().map(|row| row.iter().map(|v| v.iter().map(ScalarText::from).collect()).collect()).collect()
}

impl OperatorDoc {
    /// Row-major matrix acting on coordinates of `a`.
    pub fn build(&self, a: &StructureAlgebra) -> Result<Matrix, IoError> {
        let n = a.dim();
        if self.matrix.len() != n {
            return Err(IoError::Shape(format!("matrix has {} rows but dim is {n}", self.matrix.len())));
        }
        let rows = self
            .matrix
            .iter()
            .enumerate()
            .map(|(i, r)| parse_vector(r, a.ring(), n, &format!("matrix[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::from_rows(a.ring(), &rows).map_err(|e| IoError::Shape(e.to_string()))
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        OperatorDoc { matrix: m.to_rows().iter().map(|r| r.iter().map(ScalarText::from).collect()).collect() }
    }
}

impl BracketDoc {
    /// Builds the table and checks the Lie axioms.
    pub fn build(&self, a: &StructureAlgebra) -> Result<BracketTable, IoError> {
        let table = parse_cube(&self.table, a.ring(), a.dim(), "table")?;
        Ok(BracketTable::lie(a, table)?)
    }

    pub fn from_table(l: &BracketTable) -> Self {
        BracketDoc { table: cube_doc(l.table()) }
    }
}

pub fn parse_algebra(text: &str, default: Ring) -> Result<StructureAlgebra, IoError> {
    serde_json::from_str::<AlgebraDoc>(text)?.build(default)
}

pub fn parse_operator(text: &str, a: &StructureAlgebra) -> Result<Matrix, IoError> {
    serde_json::from_str::<OperatorDoc>(text)?.build(a)
}

pub fn parse_bracket(text: &str, a: &StructureAlgebra) -> Result<BracketTable, IoError> {
    serde_json::from_str::<BracketDoc>(text)?.build(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAUSSIAN: &str = r#"{"scalar": "Q", "dim": 2, "unit": ["1", 0],
        "mul": [[["1","0"],["0","1"]],[["0","1"],["-1","0"]]]}"#;

    #[test]
    fn roundtrip() {
        let a = parse_algebra(GAUSSIAN, Ring::Rational).unwrap();
        let doc = serde_json::to_string(&AlgebraDoc::from_algebra(&a)).unwrap();
        assert_eq!(parse_algebra(&doc, Ring::Zmod(5)).unwrap(), a);
        let f = parse_operator(r#"{"matrix": [["0", "1"], ["0", "0"]]}"#, &a).unwrap();
        let back = serde_json::to_string(&OperatorDoc::from_matrix(&f)).unwrap();
        assert_eq!(parse_operator(&back, &a).unwrap(), f);
        let l = parse_bracket(r#"{"table": [[["0","0"],["1","0"]],[["-1","0"],["0","0"]]]}"#, &a).unwrap();
        assert_eq!(l.basis_bracket(0, 1), &vec![Ring::Rational.one(), Ring::Rational.zero()]);
    }

    #[test]
    fn default_ring_and_errors() {
        let z6 = r#"{"dim": 1, "unit": ["1"], "mul": [[["1"]]]}"#;
        assert_eq!(parse_algebra(z6, Ring::Zmod(6)).unwrap().ring(), Ring::Zmod(6));
        assert!(matches!(parse_algebra("{", Ring::Rational), Err(IoError::Json(_))));
        let bad = r#"{"dim": 1, "unit": ["x"], "mul": [[["1"]]]}"#;
        assert!(matches!(parse_algebra(bad, Ring::Rational), Err(IoError::Scalar { .. })));
        let short = r#"{"dim": 2, "unit": ["1"], "mul": []}"#;
        assert!(matches!(parse_algebra(short, Ring::Rational), Err(IoError::Shape(_))));
        let skew = r#"{"table": [[["0","0"],["1","0"]],[["1","0"],["0","0"]]]}"#;
        let a = parse_algebra(GAUSSIAN, Ring::Rational).unwrap();
        assert!(matches!(parse_bracket(skew, &a), Err(IoError::Findim(_))));
    }
}
