//! Random instances for property tests, acceptance sweeps and benchmarks.
//!
//! Everything here is over `Q` with small coefficients, driven by a caller
//! supplied RNG so runs are reproducible from a seed.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::findim::lie::BracketTable;
use crate::findim::operator::{functional_operator, multiplication_operator};
use crate::findim::StructureAlgebra;
use crate::freeavg::{bracket_free, FreePoly, Generator, Monomial, XMonomial};
use crate::linalg::{vector, Matrix, Vector};
use crate::scalar::{Rational, Ring, Scalar};

/// Integer in `[-bound, bound]` as a rational.
pub fn small_int(rng: &mut impl Rng, bound: i64) -> Rational {
    Rational::from_integer(BigInt::from(rng.gen_range(-bound..=bound)))
}

/// `n / d` with `n` in `[-bound, bound]` and `d` in `1..=3`.
pub fn small_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=3i64);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn small_scalar(rng: &mut impl Rng, bound: i64) -> Scalar {
    Scalar::Q(small_rational(rng, bound))
}

pub fn small_vector(rng: &mut impl Rng, n: usize, bound: i64) -> Vector {
    (0..n).map(|_| small_scalar(rng, bound)).collect()
}

/// Shape of random free polynomials.
#[derive(Clone, Copy, Debug)]
pub struct PolyShape {
    pub x_vars: u32,
    pub max_degree: u32,
    pub max_terms: usize,
    pub coeff_bound: i64,
}

impl Default for PolyShape {
    fn default() -> Self {
        PolyShape { x_vars: 3, max_degree: 4, max_terms: 4, coeff_bound: 5 }
    }
}

fn random_x_monomial(rng: &mut impl Rng, x_vars: u32, degree: u32) -> XMonomial {
    XMonomial::from_pairs((0..degree).map(|_| (rng.gen_range(1..=x_vars), 1)))
}

/// A monomial of total degree at most `max_degree`, counting each `Y`
/// generator as one. `Y` indices have degree at most 2.
pub fn random_monomial(rng: &mut impl Rng, x_vars: u32, max_degree: u32) -> Monomial {
    let degree = rng.gen_range(0..=max_degree);
    let mut m = Monomial::one();
    for _ in 0..degree {
        let g = if x_vars > 0 && rng.gen_bool(0.5) {
            Generator::X(rng.gen_range(1..=x_vars))
        } else {
            let d = if x_vars == 0 { 0 } else { rng.gen_range(0..=2) };
            Generator::Y(random_x_monomial(rng, x_vars, d))
        };
        m = m.mul(&Monomial::generator(g));
    }
    m
}

/// A monomial rich in `y[1]`, for exercising the Reynolds rewrite.
pub fn random_y1_heavy_monomial(rng: &mut impl Rng, x_vars: u32) -> Monomial {
    let y1 = Monomial::from_pairs([(Generator::y_one(), rng.gen_range(0..=5))]);
    let mut others = Monomial::one();
    for _ in 0..rng.gen_range(0..=3) {
        let d = rng.gen_range(1..=2);
        others = others.mul(&Monomial::generator(Generator::Y(random_x_monomial(rng, x_vars, d))));
    }
    let d = rng.gen_range(0..=2);
    let x = random_x_monomial(rng, x_vars, d);
    y1.mul(&others).mul(&Monomial::from_x(&x))
}

pub fn random_free_poly(rng: &mut impl Rng, shape: PolyShape) -> FreePoly {
    let n = rng.gen_range(0..=shape.max_terms);
    FreePoly::from_terms(
        (0..n).map(|_| (random_monomial(rng, shape.x_vars, shape.max_degree), small_int(rng, shape.coeff_bound))),
    )
}

/// A random element of `ker f_X` of degree at most 4: a sum of up to three
/// brackets `[p, q]` with `deg p <= 2` and `deg q <= 1`.
pub fn random_kernel_element(rng: &mut impl Rng, x_vars: u32) -> FreePoly {
    let p_shape = PolyShape { x_vars, max_degree: 2, max_terms: 3, coeff_bound: 3 };
    let q_shape = PolyShape { x_vars, max_degree: 1, max_terms: 2, coeff_bound: 3 };
    (0..rng.gen_range(1..=3)).fold(FreePoly::zero(), |acc, _| {
        let p = random_free_poly(rng, p_shape);
        let q = random_free_poly(rng, q_shape);
        &acc + &bracket_free(&p, &q)
    })
}

/// A random monic polynomial of the given degree, ascending coefficients.
pub fn random_monic(rng: &mut impl Rng, degree: usize) -> Vec<Scalar> {
    let mut p: Vec<Scalar> = (0..degree).map(|_| Scalar::Q(small_int(rng, 3))).collect();
    p.push(Ring::Rational.one());
    p
}

/// An invertible matrix: a product of a random unit lower and a random unit
/// upper triangular matrix, then a random row permutation.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> Matrix {
    let ring = Ring::Rational;
    let mut lower = Matrix::identity(ring, n);
    let mut upper = Matrix::identity(ring, n);
    for i in 0..n {
        for j in 0..i {
            lower.set(i, j, Scalar::Q(small_int(rng, 2)));
            upper.set(j, i, Scalar::Q(small_int(rng, 2)));
        }
    }
    let lu = lower.mul(&upper).expect("square");
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let rows: Vec<Vector> = perm.iter().map(|&i| lu.row(i)).collect();
    Matrix::from_rows(ring, &rows).expect("square")
}

/// A random averaging operator on `a`: a functional `x -> lambda(x) 1`, a
/// multiplication `x -> c x`, zero or the identity.
pub fn random_simple_operator(rng: &mut impl Rng, a: &StructureAlgebra) -> Matrix {
    let n = a.dim();
    match rng.gen_range(0..10) {
        0 => Matrix::zeros(Ring::Rational, n, n),
        1 => Matrix::identity(Ring::Rational, n),
        2..=5 => functional_operator(a, &small_vector(rng, n, 3)).expect("dimension matches"),
        _ => multiplication_operator(a, &small_vector(rng, n, 3)),
    }
}

/// A functional operator `lambda(x) 1` with `lambda(1) = 1`.
pub fn random_unitary_functional(rng: &mut impl Rng, a: &StructureAlgebra) -> Matrix {
    let n = a.dim();
    let mut lambda = small_vector(rng, n, 3);
    let unit = a.unit();
    let j = (0..n).find(|&j| !unit[j].is_zero()).expect("unit is nonzero");
    let others = (0..n)
        .filter(|&k| k != j)
        .fold(Ring::Rational.zero(), |acc, k| acc + &lambda[k] * &unit[k]);
    lambda[j] = (Ring::Rational.one() - others) * unit[j].inverse().expect("nonzero rational");
    functional_operator(a, &lambda).expect("dimension matches")
}

fn block_diag(f: &Matrix, g: &Matrix) -> Matrix {
    let (n, m) = (f.rows(), g.rows());
    let mut out = Matrix::zeros(f.ring(), n + m, n + m);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, f.get(i, j).clone());
        }
    }
    for i in 0..m {
        for j in 0..m {
            out.set(n + i, n + j, g.get(i, j).clone());
        }
    }
    out
}

/// Rewrites `(a, f)` in the basis given by the columns of `p`.
pub fn conjugate(a: &StructureAlgebra, f: &Matrix, p: &Matrix) -> (StructureAlgebra, Matrix) {
    let b = a.change_basis(p).expect("invertible change of basis");
    let p_inv = p.inverse().expect("invertible");
    let g = p_inv.mul(&f.mul(p).expect("square")).expect("square");
    (b, g)
}

/// What kind of operator [`random_averaging_algebra`] should produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    Averaging,
    UnitaryAveraging,
}

/// A random averaging algebra of dimension `1..=max_dim`: a direct product
/// of algebras `Q[t]/(p)` with operators acting blockwise, in a random basis.
pub fn random_averaging_algebra(
    rng: &mut impl Rng,
    max_dim: usize,
    kind: OperatorKind,
) -> (StructureAlgebra, Matrix) {
    let dim = rng.gen_range(1..=max_dim.max(1));
    let (a, f) = random_block(rng, dim, kind);
    if rng.gen_bool(0.5) {
        let p = random_invertible(rng, dim);
        conjugate(&a, &f, &p)
    } else {
        (a, f)
    }
}

fn random_block(rng: &mut impl Rng, dim: usize, kind: OperatorKind) -> (StructureAlgebra, Matrix) {
    if dim >= 2 && rng.gen_bool(0.4) {
        let left = rng.gen_range(1..dim);
        let (a1, f1) = random_block(rng, left, kind);
        let (a2, f2) = random_block(rng, dim - left, kind);
        let a = StructureAlgebra::direct_product(&a1, &a2).expect("same ring");
        return (a, block_diag(&f1, &f2));
    }
    let a = StructureAlgebra::from_monic_poly(Ring::Rational, &random_monic(rng, dim)).expect("monic");
    let f = match kind {
        OperatorKind::Averaging => random_simple_operator(rng, &a),
        OperatorKind::UnitaryAveraging => {
            if rng.gen_bool(0.2) {
                Matrix::identity(Ring::Rational, dim)
            } else {
                random_unitary_functional(rng, &a)
            }
        }
    };
    (a, f)
}

/// A random two-dimensional algebra with a random antisymmetric bracket;
/// Jacobi holds automatically in dimension 2.
pub fn random_dim2_bracket(rng: &mut impl Rng) -> (StructureAlgebra, BracketTable) {
    let a = StructureAlgebra::from_monic_poly(Ring::Rational, &random_monic(rng, 2)).expect("monic");
    let a = if rng.gen_bool(0.5) { a.change_basis(&random_invertible(rng, 2)).expect("invertible") } else { a };
    let v = small_vector(rng, 2, 4);
    let zero = vector::zero(Ring::Rational, 2);
    let table = vec![vec![zero.clone(), v.clone()], vec![vector::neg(&v), zero]];
    let l = BracketTable::lie(&a, table).expect("dimension-2 brackets are Lie");
    (a, l)
}

/// A random polynomial without constant term, degree `1..=max_degree`,
/// ascending coefficients.
pub fn random_poly_no_constant(rng: &mut impl Rng, max_degree: usize) -> Vec<Scalar> {
    let d = rng.gen_range(1..=max_degree);
    let mut p = vec![Ring::Rational.zero()];
    p.extend((0..d).map(|_| Scalar::Q(small_int(rng, 3))));
    p
}
