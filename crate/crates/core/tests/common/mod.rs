#![allow(dead_code)]

use avg_core::findim::operator::apply;
use avg_core::findim::StructureAlgebra;
use avg_core::freeavg::{apply_redex, reynolds_redexes, FreePoly, Monomial};
use avg_core::linalg::{vector, Matrix, Vector};
use avg_core::scalar::Scalar;
use avg_core::terms::Term;
use rand::Rng;

/// Evaluates a term in a concrete averaging algebra `(a, f)`.
pub fn eval_in(a: &StructureAlgebra, f: &Matrix, t: &Term, values: &[Vector]) -> Vector {
    let rec = |t: &Term| eval_in(a, f, t, values);
    match t {
        Term::Var(i) => values[*i as usize - 1].clone(),
        Term::One => a.unit().clone(),
        Term::Zero => a.zero(),
        Term::Add(x, y) => vector::add(&rec(x), &rec(y)),
        Term::Sub(x, y) => vector::sub(&rec(x), &rec(y)),
        Term::Mul(x, y) => a.mul(&rec(x), &rec(y)),
        Term::ScalarMul(r, x) => vector::scale(&Scalar::Q(r.clone()), &rec(x)),
        Term::F(x) => apply(f, &rec(x)),
    }
}

/// Reynolds normal form by rewriting one redex at a time, chosen at random,
/// until none is left.
pub fn reduce_by_rewriting(m: &Monomial, rng: &mut impl Rng) -> Monomial {
    let mut cur = m.clone();
    loop {
        let rs = reynolds_redexes(&cur);
        if rs.is_empty() {
            return cur;
        }
        cur = apply_redex(&cur, rs[rng.gen_range(0..rs.len())]);
    }
}

pub fn reduce_poly_by_rewriting(p: &FreePoly, rng: &mut impl Rng) -> FreePoly {
    FreePoly::from_terms(p.terms().map(|(m, c)| (reduce_by_rewriting(m, rng), c.clone())))
}
