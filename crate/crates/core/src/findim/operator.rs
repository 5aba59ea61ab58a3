//! Linear operators on a structure algebra: the averaging, unitary and
//! Reynolds laws, and the closure rules for building new averaging operators.
//!
//! Operators are square matrices whose column `j` holds the coordinates of
//! `F(e_j)`. Every law below is bilinear in its two arguments, so checking
//! all pairs of basis vectors decides it for the whole algebra.

use crate::linalg::{vector, Matrix, Vector};
use crate::scalar::Scalar;

use super::{FindimError, StructureAlgebra};

/// Outcome of a law checked on basis pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawCheck {
    Holds,
    FailsAt(usize, usize),
}

impl LawCheck {
    pub fn holds(self) -> bool {
        self == LawCheck::Holds
    }
}

pub fn check_operator(a: &StructureAlgebra, f: &Matrix) -> Result<(), FindimError> {
    if f.rows() != a.dim() || f.cols() != a.dim() {
        return Err(FindimError::Dimension(format!(
            "operator is {}x{} but the algebra has dimension {}",
            f.rows(),
            f.cols(),
            a.dim()
        )));
    }
    if f.ring() != a.ring() {
        return Err(FindimError::Dimension(format!("operator over {} on an algebra over {}", f.ring(), a.ring())));
    }
    Ok(())
}

pub fn apply(f: &Matrix, x: &[Scalar]) -> Vector {
    f.apply(x).expect("operator dimension checked")
}

fn scan_pairs(n: usize, mut ok: impl FnMut(usize, usize) -> bool) -> LawCheck {
    for i in 0..n {
        for j in 0..n {
            if !ok(i, j) {
                return LawCheck::FailsAt(i, j);
            }
        }
    }
    LawCheck::Holds
}

/// `F(e_i F(e_j)) = F(e_i) F(e_j)` for all basis pairs.
pub fn is_averaging(a: &StructureAlgebra, f: &Matrix) -> Result<LawCheck, FindimError> {
    check_operator(a, f)?;
    let images = f.columns();
    Ok(scan_pairs(a.dim(), |i, j| {
        let lhs = apply(f, &a.mul(&a.basis(i), &images[j]));
        lhs == a.mul(&images[i], &images[j])
    }))
}

/// `F(1) = 1`
pub fn is_unitary(a: &StructureAlgebra, f: &Matrix) -> Result<bool, FindimError> {
    check_operator(a, f)?;
    Ok(apply(f, a.unit()) == *a.unit())
}

/// `F(F(e_i) F(e_j)) = F(e_i) F(e_j)` for all basis pairs.
pub fn is_reynolds(a: &StructureAlgebra, f: &Matrix) -> Result<LawCheck, FindimError> {
    check_operator(a, f)?;
    let images = f.columns();
    Ok(scan_pairs(a.dim(), |i, j| {
        let p = a.mul(&images[i], &images[j]);
        apply(f, &p) == p
    }))
}

/// Averaging together with the Reynolds law.
pub fn is_reynolds_averaging(a: &StructureAlgebra, f: &Matrix) -> Result<LawCheck, FindimError> {
    match is_averaging(a, f)? {
        LawCheck::Holds => is_reynolds(a, f),
        fail => Ok(fail),
    }
}

/// Which closure rule was applied and whether its side condition held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub rule: ClosureRule,
    /// Every input operator passed the averaging check.
    pub inputs_averaging: bool,
    /// The rule's own hypothesis (commuting, compatibility, ...) held.
    pub hypothesis_held: bool,
}

impl Certificate {
    /// True when the rule guarantees the result is averaging.
    pub fn guarantees_averaging(&self) -> bool {
        self.inputs_averaging && self.hypothesis_held
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureRule {
    /// `r F`; no side condition.
    Scale,
    /// `F^-1` for bijective `F`.
    Inverse,
    /// `F G` when `F G = G F`.
    Compose,
    /// `F + G` when `F(x G(y)) + G(x F(y)) = F(x) G(y) + G(x) F(y)`.
    Add,
    /// `P(F)` for a polynomial without constant term.
    Polynomial,
}

impl ClosureRule {
    pub fn hypothesis(self) -> &'static str {
        match self {
            ClosureRule::Scale => "none",
            ClosureRule::Inverse => "F is bijective",
            ClosureRule::Compose => "F and G commute",
            ClosureRule::Add => "F(xG(y)) + G(xF(y)) = F(x)G(y) + G(x)F(y) on all basis pairs",
            ClosureRule::Polynomial => "P has zero constant term",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combined {
    pub operator: Matrix,
    pub certificate: Certificate,
}

fn averaging(a: &StructureAlgebra, f: &Matrix) -> Result<bool, FindimError> {
    Ok(is_averaging(a, f)?.holds())
}

pub fn scale(a: &StructureAlgebra, r: &Scalar, f: &Matrix) -> Result<Combined, FindimError> {
    let inputs_averaging = averaging(a, f)?;
    Ok(Combined {
        operator: f.scale(r),
        certificate: Certificate { rule: ClosureRule::Scale, inputs_averaging, hypothesis_held: true },
    })
}

pub fn inverse(a: &StructureAlgebra, f: &Matrix) -> Result<Combined, FindimError> {
    let inputs_averaging = averaging(a, f)?;
    let operator = f.inverse()?;
    Ok(Combined {
        operator,
        certificate: Certificate { rule: ClosureRule::Inverse, inputs_averaging, hypothesis_held: true },
    })
}

pub fn compose(a: &StructureAlgebra, f: &Matrix, g: &Matrix) -> Result<Combined, FindimError> {
    let inputs_averaging = averaging(a, f)? && averaging(a, g)?;
    let fg = f.mul(g)?;
    let hypothesis_held = fg == g.mul(f)?;
    Ok(Combined {
        operator: fg,
        certificate: Certificate { rule: ClosureRule::Compose, inputs_averaging, hypothesis_held },
    })
}

/// The compatibility identity for sums, checked on basis pairs.
pub fn sum_compatible(a: &StructureAlgebra, f: &Matrix, g: &Matrix) -> Result<LawCheck, FindimError> {
    check_operator(a, f)?;
    check_operator(a, g)?;
    let (fs, gs) = (f.columns(), g.columns());
    Ok(scan_pairs(a.dim(), |i, j| {
        let e = a.basis(i);
        let lhs = vector::add(&apply(f, &a.mul(&e, &gs[j])), &apply(g, &a.mul(&e, &fs[j])));
        let rhs = vector::add(&a.mul(&fs[i], &gs[j]), &a.mul(&gs[i], &fs[j]));
        lhs == rhs
    }))
}

pub fn add(a: &StructureAlgebra, f: &Matrix, g: &Matrix) -> Result<Combined, FindimError> {
    let inputs_averaging = averaging(a, f)? && averaging(a, g)?;
    let hypothesis_held = sum_compatible(a, f, g)?.holds();
    Ok(Combined {
        operator: f.add(g)?,
        certificate: Certificate { rule: ClosureRule::Add, inputs_averaging, hypothesis_held },
    })
}

/// `P(F) = sum_k p[k] F^k` (ascending coefficients). A nonzero constant term
/// is rejected: the identity summand breaks the averaging law in general.
pub fn poly_apply(a: &StructureAlgebra, p: &[Scalar], f: &Matrix) -> Result<Combined, FindimError> {
    check_operator(a, f)?;
    if p.first().is_some_and(|c| !c.is_zero()) {
        return Err(FindimError::ConstantTerm);
    }
    let inputs_averaging = averaging(a, f)?;
    Ok(Combined {
        operator: eval_poly(p, f)?,
        certificate: Certificate { rule: ClosureRule::Polynomial, inputs_averaging, hypothesis_held: true },
    })
}

/// Evaluates a polynomial at a square matrix by Horner's rule, constant term
/// included.
pub fn eval_poly(p: &[Scalar], f: &Matrix) -> Result<Matrix, FindimError> {
    let n = f.rows();
    let id = Matrix::identity(f.ring(), n);
    let mut acc = Matrix::zeros(f.ring(), n, n);
    for c in p.iter().rev() {
        acc = acc.mul(f)?.add(&id.scale(c))?;
    }
    Ok(acc)
}

/// Matrix of multiplication by `c`; always averaging.
pub fn multiplication_operator(a: &StructureAlgebra, c: &[Scalar]) -> Matrix {
    a.mult_matrix(c)
}

/// `x -> lambda(x) 1_A` for a linear functional given by its values on the
/// basis; always averaging.
pub fn functional_operator(a: &StructureAlgebra, lambda: &[Scalar]) -> Result<Matrix, FindimError> {
    if lambda.len() != a.dim() {
        return Err(FindimError::Dimension("functional length".into()));
    }
    let cols: Vec<Vector> = lambda.iter().map(|l| vector::scale(l, a.unit())).collect();
    Ok(Matrix::from_columns(a.ring(), a.dim(), &cols)?)
}
