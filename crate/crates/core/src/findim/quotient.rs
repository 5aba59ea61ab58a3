//! Quotients by averaging ideals and the primary algebras `Q[y]/(p)`.

use crate::linalg::{require_field, vector, Matrix, Subspace, Vector};
use crate::scalar::{Rational, Ring, Scalar, ScalarError};

use super::operator::{apply, check_operator, is_averaging, LawCheck};
use super::{FindimError, StructureAlgebra};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub algebra: StructureAlgebra,
    pub operator: Matrix,
    /// Coordinates of `pi(v)` are `projection * v`.
    pub projection: Matrix,
    /// Standard basis indices whose classes form the quotient basis.
    pub basis_indices: Vec<usize>,
}

/// `A / I` with the operator `F(a + I) = F(a) + I`. The ideal must be
/// closed under multiplication by every basis element and under `F`.
pub fn quotient_by_averaging_ideal(
    a: &StructureAlgebra,
    f: &Matrix,
    ideal: &Subspace,
) -> Result<Quotient, FindimError> {
    require_field(a.ring())?;
    check_operator(a, f)?;
    if ideal.ambient_dim() != a.dim() || ideal.ring() != a.ring() {
        return Err(FindimError::Dimension("ideal lives in a different space".into()));
    }
    for g in ideal.basis() {
        for j in 0..a.dim() {
            if !ideal.contains_vector(&a.mul(g, &a.basis(j))) {
                return Err(FindimError::NotAveragingIdeal(format!(
                    "{} times basis vector {j} leaves the ideal",
                    fmt_vec(g)
                )));
            }
        }
        if !ideal.contains_vector(&apply(f, g)) {
            return Err(FindimError::NotAveragingIdeal(format!("F({}) leaves the ideal", fmt_vec(g))));
        }
    }
    if ideal.is_full() {
        return Err(FindimError::Degenerate("quotient by the whole algebra is the zero algebra".into()));
    }
    let complement = ideal.complement_indices()?;
    let mut cols: Vec<Vector> = ideal.basis().to_vec();
    cols.extend(complement.iter().map(|&i| a.basis(i)));
    let inv = Matrix::from_columns(a.ring(), a.dim(), &cols)?.inverse()?;
    let skip = ideal.dim();
    let proj_rows: Vec<Vector> = (skip..a.dim()).map(|r| inv.row(r)).collect();
    let projection = Matrix::from_rows(a.ring(), &proj_rows)?;
    let pi = |v: &Vector| projection.apply(v).expect("dimension");
    let mul = complement
        .iter()
        .map(|&i| complement.iter().map(|&j| pi(a.basis_product(i, j))).collect())
        .collect();
    let algebra = StructureAlgebra::new(a.ring(), pi(a.unit()), mul)?;
    let op_cols: Vec<Vector> = complement.iter().map(|&j| pi(&apply(f, &a.basis(j)))).collect();
    let operator = Matrix::from_columns(a.ring(), complement.len(), &op_cols)?;
    Ok(Quotient { algebra, operator, projection, basis_indices: complement })
}

fn fmt_vec(v: &[Scalar]) -> String {
    format!("[{}]", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

/// `A = Q[y]/(p)` on the basis `1, y, ..., y^(d-1)` with `F` multiplication
/// by the class of `y`. `p` is given by ascending coefficients and must be
/// monic of degree at least 1.
pub fn primary_from_poly(p: &[Rational]) -> Result<(StructureAlgebra, Matrix), FindimError> {
    let ring = Ring::Rational;
    let coeffs: Vec<Scalar> = p.iter().map(|c| Scalar::Q(c.clone())).collect();
    let a = StructureAlgebra::from_monic_poly(ring, &coeffs)?;
    let y = if a.dim() == 1 {
        // Q[y]/(y + c): the class of y is -c
        vec![-&coeffs[0]]
    } else {
        vector::unit(ring, a.dim(), 1)
    };
    let f = a.mult_matrix(&y);
    match is_averaging(&a, &f)? {
        LawCheck::Holds => Ok((a, f)),
        LawCheck::FailsAt(i, j) => Err(FindimError::InvariantBreach(format!(
            "multiplication operator failed the averaging law at ({i}, {j})"
        ))),
    }
}

/// Parses a univariate polynomial in `t`, such as `t^3 - 2` or `t^2 - 1/2*t`,
/// into ascending rational coefficients.
pub fn parse_univariate(text: &str) -> Result<Vec<Rational>, FindimError> {
    let bad = |m: &str| FindimError::Parse(format!("{m} in polynomial `{text}`"));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty input"));
    }
    let mut coeffs: Vec<Rational> = Vec::new();
    let mut rest = compact.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let negative = match rest.as_bytes()[0] {
            b'+' => {
                rest = &rest[1..];
                false
            }
            b'-' => {
                rest = &rest[1..];
                true
            }
            _ if first => false,
            _ => return Err(bad("expected `+` or `-`")),
        };
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (mono, tail) = rest.split_at(end);
        rest = tail;
        let (coef, power) = parse_monomial(mono).ok_or_else(|| bad(&format!("malformed term `{mono}`")))?;
        let coef = if negative { -coef } else { coef };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, Rational::from_integer(0.into()));
        }
        coeffs[power] += coef;
    }
    Ok(coeffs)
}

fn parse_monomial(m: &str) -> Option<(Rational, usize)> {
    let parse_coef = |s: &str| -> Option<Rational> {
        crate::scalar::parse_rational(s).map_err(|_: ScalarError| ()).ok()
    };
    let Some(tpos) = m.find('t') else {
        return Some((parse_coef(m)?, 0));
    };
    let (head, tail) = m.split_at(tpos);
    let coef = match head {
        "" => Rational::from_integer(1.into()),
        h => parse_coef(h.strip_suffix('*')?)?,
    };
    let power = match &tail[1..] {
        "" => 1,
        p => p.strip_prefix('^')?.parse().ok().filter(|&e: &usize| e <= 64)?,
    };
    Some((coef, power))
}
