//! The free averaging algebra `F_A = A ⊗ S(A)` on a finite-dimensional
//! algebra `A`, with `f_A(a ⊗ s) = 1_A ⊗ (a s)`.
//!
//! An element is a finite sum of `e_i ⊗ (e_j1 ⊙ ... ⊙ e_jm)`, keyed by the
//! basis index `i` and the sorted multiset `[j1, ..., jm]`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::findim::operator::{apply, is_averaging, LawCheck};
use crate::findim::{FindimError, StructureAlgebra};
use crate::linalg::{vector, LinAlgError, Matrix, Vector};
use crate::scalar::{Ring, Scalar};

#[derive(Debug, Error)]
pub enum OnAlgebraError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not an algebra homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("target operator is not averaging (fails at basis pair ({0}, {1}))")]
    NotAveraging(usize, usize),
    #[error(transparent)]
    Findim(#[from] FindimError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

pub type Key = (usize, Vec<usize>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeOnAlgebraElement {
    ring: Ring,
    dim: usize,
    terms: BTreeMap<Key, Scalar>,
}

impl FreeOnAlgebraElement {
    pub fn zero(ring: Ring, dim: usize) -> Self {
        FreeOnAlgebraElement { ring, dim, terms: BTreeMap::new() }
    }

    /// `c · e_i ⊗ (e_s1 ⊙ ...)`; the slots may be given in any order.
    pub fn term(ring: Ring, dim: usize, c: Scalar, i: usize, slots: &[usize]) -> Result<Self, OnAlgebraError> {
        let mut out = Self::zero(ring, dim);
        out.add_term(i, slots.to_vec(), c)?;
        Ok(out)
    }

    pub fn basis(ring: Ring, dim: usize, i: usize, slots: &[usize]) -> Result<Self, OnAlgebraError> {
        Self::term(ring, dim, ring.one(), i, slots)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Key, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest multiset size, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|(_, s)| s.len()).max()
    }

    pub fn add_term(&mut self, i: usize, mut slots: Vec<usize>, c: Scalar) -> Result<(), OnAlgebraError> {
        if i >= self.dim || slots.iter().any(|&j| j >= self.dim) {
            return Err(OnAlgebraError::Dimension(format!(
                "basis index out of range for dimension {}",
                self.dim
            )));
        }
        slots.sort_unstable();
        self.add_sorted((i, slots), c);
        Ok(())
    }

    fn add_sorted(&mut self, key: Key, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    fn same_space(&self, other: &Self) -> Result<(), OnAlgebraError> {
        if self.dim != other.dim || self.ring != other.ring {
            return Err(OnAlgebraError::Dimension(format!(
                "elements over {} (dim {}) and {} (dim {})",
                self.ring, self.dim, other.ring, other.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, OnAlgebraError> {
        self.same_space(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_sorted(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, OnAlgebraError> {
        self.add(&other.scale(&-self.ring.one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.ring, self.dim);
        for (k, v) in &self.terms {
            out.add_sorted(k.clone(), v * c);
        }
        out
    }
}

fn check_on(a: &FreeOnAlgebraElement, alg: &StructureAlgebra) -> Result<(), OnAlgebraError> {
    if a.dim != alg.dim() || a.ring != alg.ring() {
        return Err(OnAlgebraError::Dimension(format!(
            "element over {} (dim {}) used with an algebra over {} (dim {})",
            a.ring,
            a.dim,
            alg.ring(),
            alg.dim()
        )));
    }
    Ok(())
}

fn merge(s: &[usize], t: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(s.len() + t.len());
    out.extend_from_slice(s);
    out.extend_from_slice(t);
    out.sort_unstable();
    out
}

/// `(a ⊗ s)(a' ⊗ s') = a a' ⊗ s s'`
pub fn fa_mul(
    a: &FreeOnAlgebraElement,
    b: &FreeOnAlgebraElement,
    alg: &StructureAlgebra,
) -> Result<FreeOnAlgebraElement, OnAlgebraError> {
    check_on(a, alg)?;
    check_on(b, alg)?;
    let mut out = FreeOnAlgebraElement::zero(a.ring, a.dim);
    for ((i, s), c) in &a.terms {
        for ((j, t), d) in &b.terms {
            let cd = c * d;
            let slots = merge(s, t);
            for (k, coeff) in alg.basis_product(*i, *j).iter().enumerate() {
                if !coeff.is_zero() {
                    out.add_sorted((k, slots.clone()), &cd * coeff);
                }
            }
        }
    }
    Ok(out)
}

/// `f_A(e_i ⊗ s) = 1_A ⊗ (e_i s)`, with `1_A` expanded in the basis.
pub fn fa_f(a: &FreeOnAlgebraElement, alg: &StructureAlgebra) -> Result<FreeOnAlgebraElement, OnAlgebraError> {
    check_on(a, alg)?;
    let mut out = FreeOnAlgebraElement::zero(a.ring, a.dim);
    for ((i, s), c) in &a.terms {
        let slots = merge(s, &[*i]);
        for (k, u) in alg.unit().iter().enumerate() {
            if !u.is_zero() {
                out.add_sorted((k, slots.clone()), c * u);
            }
        }
    }
    Ok(out)
}

/// Checks that `theta` (columns are images of the basis of `a`) is a unital
/// algebra homomorphism `a -> b`.
pub fn check_algebra_hom(theta: &Matrix, a: &StructureAlgebra, b: &StructureAlgebra) -> Result<(), OnAlgebraError> {
    if theta.rows() != b.dim() || theta.cols() != a.dim() || theta.ring() != a.ring() || a.ring() != b.ring() {
        return Err(OnAlgebraError::Dimension(format!(
            "map is {}x{} over {}, algebras have dimensions {} -> {}",
            theta.rows(),
            theta.cols(),
            theta.ring(),
            a.dim(),
            b.dim()
        )));
    }
    if theta.apply(a.unit())? != *b.unit() {
        return Err(OnAlgebraError::NotHomomorphism("unit is not preserved".into()));
    }
    let images = theta.columns();
    for i in 0..a.dim() {
        for j in i..a.dim() {
            let lhs = theta.apply(a.basis_product(i, j))?;
            let rhs = b.mul(&images[i], &images[j]);
            if lhs != rhs {
                return Err(OnAlgebraError::NotHomomorphism(format!("product e{i}*e{j} is not preserved")));
            }
        }
    }
    Ok(())
}

/// Expands `v_1 ⊙ ... ⊙ v_m` multilinearly into sorted multisets.
fn symmetric_expand(ring: Ring, vectors: &[Vector]) -> BTreeMap<Vec<usize>, Scalar> {
    let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::from([(Vec::new(), ring.one())]);
    for v in vectors {
        let mut next: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        for (key, c) in &acc {
            for (k, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let slots = merge(key, &[k]);
                let add = c * x;
                let entry = next.entry(slots).or_insert_with(|| ring.zero());
                *entry = &*entry + &add;
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc
}

fn apply_hom_unchecked(theta: &Matrix, b_dim: usize, x: &FreeOnAlgebraElement) -> FreeOnAlgebraElement {
    let ring = theta.ring();
    let images = theta.columns();
    let mut out = FreeOnAlgebraElement::zero(ring, b_dim);
    for ((i, s), c) in &x.terms {
        let slot_images: Vec<Vector> = s.iter().map(|&j| images[j].clone()).collect();
        let sym = symmetric_expand(ring, &slot_images);
        for (k, t) in images[*i].iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            let ct = c * t;
            for (slots, d) in &sym {
                out.add_sorted((k, slots.clone()), &ct * d);
            }
        }
    }
    out
}

/// `theta_hat(a ⊗ a_1 ⊙ ... ⊙ a_k) = theta(a) ⊗ theta(a_1) ⊙ ... ⊙ theta(a_k)`
pub fn fa_induced_hom(
    theta: &Matrix,
    a: &StructureAlgebra,
    b: &StructureAlgebra,
    x: &FreeOnAlgebraElement,
) -> Result<FreeOnAlgebraElement, OnAlgebraError> {
    check_algebra_hom(theta, a, b)?;
    check_on(x, a)?;
    Ok(apply_hom_unchecked(theta, b.dim(), x))
}

/// The universal extension of an algebra homomorphism `phi: A -> B` into an
/// averaging algebra `(B, g)`: `a ⊗ a_1 ⊙ ... ⊙ a_n -> phi(a) g(phi(a_1)) ... g(phi(a_n))`.
pub fn lift(
    phi: &Matrix,
    a: &StructureAlgebra,
    b: &StructureAlgebra,
    g: &Matrix,
    x: &FreeOnAlgebraElement,
) -> Result<Vector, OnAlgebraError> {
    check_algebra_hom(phi, a, b)?;
    check_on(x, a)?;
    if let LawCheck::FailsAt(i, j) = is_averaging(b, g)? {
        return Err(OnAlgebraError::NotAveraging(i, j));
    }
    let images = phi.columns();
    let g_images: Vec<Vector> = images.iter().map(|v| apply(g, v)).collect();
    let mut out = b.zero();
    for ((i, s), c) in &x.terms {
        let mut v = images[*i].clone();
        for &j in s {
            v = b.mul(&v, &g_images[j]);
        }
        vector::axpy(&mut out, c, &v);
    }
    Ok(out)
}

/// Sorted multisets of size `m` over `0..n`.
pub fn multisets(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j);
            go(n, m, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, m, 0, &mut Vec::new(), &mut out);
    out
}

/// Basis keys of the component of `F_A` with multisets of size at most `d`.
pub fn truncated_basis(dim: usize, d: usize) -> Vec<Key> {
    (0..=d)
        .flat_map(|m| multisets(dim, m))
        .flat_map(|s| (0..dim).map(move |i| (i, s.clone())))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncatedRank {
    pub degree: usize,
    pub source_dim: usize,
    pub rank: usize,
}

impl TruncatedRank {
    pub fn injective(&self) -> bool {
        self.rank == self.source_dim
    }
}

/// Rank of `theta_hat` restricted to multiset degree at most `d`.
pub fn truncated_injectivity(
    theta: &Matrix,
    a: &StructureAlgebra,
    b: &StructureAlgebra,
    d: usize,
) -> Result<TruncatedRank, OnAlgebraError> {
    check_algebra_hom(theta, a, b)?;
    let ring = a.ring();
    let source = truncated_basis(a.dim(), d);
    let target = truncated_basis(b.dim(), d);
    let index: BTreeMap<&Key, usize> = target.iter().enumerate().map(|(k, key)| (key, k)).collect();
    let mut columns = Vec::with_capacity(source.len());
    for (i, s) in &source {
        let x = FreeOnAlgebraElement::basis(ring, a.dim(), *i, s)?;
        let y = apply_hom_unchecked(theta, b.dim(), &x);
        let mut col = vector::zero(ring, target.len());
        for (key, c) in y.terms() {
            col[index[key]] = c.clone();
        }
        columns.push(col);
    }
    let m = Matrix::from_columns(ring, target.len(), &columns)?;
    Ok(TruncatedRank { degree: d, source_dim: source.len(), rank: m.rank()? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;

    fn gaussian() -> StructureAlgebra {
        StructureAlgebra::from_monic_poly(Ring::Rational, &[qi(1), qi(0), qi(1)]).unwrap()
    }

    fn inclusion() -> Matrix {
        Matrix::from_rows(Ring::Rational, &[vec![qi(1)], vec![qi(0)]]).unwrap()
    }

    #[test]
    fn product_and_operator_on_scalars() {
        let q = StructureAlgebra::scalars(Ring::Rational);
        let e = FreeOnAlgebraElement::basis(Ring::Rational, 1, 0, &[]).unwrap();
        assert_eq!(fa_mul(&e, &e, &q).unwrap(), e);
        let fe = fa_f(&e, &q).unwrap();
        assert_eq!(fe, FreeOnAlgebraElement::basis(Ring::Rational, 1, 0, &[0]).unwrap());
    }

    #[test]
    fn operator_reexpands_the_unit() {
        let b = gaussian().change_basis(&Matrix::from_rows(Ring::Rational, &[vec![qi(1), qi(1)], vec![qi(0), qi(1)]]).unwrap()).unwrap();
        let e1 = FreeOnAlgebraElement::basis(Ring::Rational, 2, 1, &[]).unwrap();
        let fe = fa_f(&e1, &b).unwrap();
        let mut expected = FreeOnAlgebraElement::zero(Ring::Rational, 2);
        for (k, u) in b.unit().iter().enumerate() {
            expected.add_term(k, vec![1], u.clone()).unwrap();
        }
        assert_eq!(fe, expected);
    }

    #[test]
    fn inclusion_of_scalars() {
        let q = StructureAlgebra::scalars(Ring::Rational);
        let b = gaussian();
        let x = FreeOnAlgebraElement::basis(Ring::Rational, 1, 0, &[0]).unwrap();
        let y = fa_induced_hom(&inclusion(), &q, &b, &x).unwrap();
        assert_eq!(y, FreeOnAlgebraElement::basis(Ring::Rational, 2, 0, &[0]).unwrap());
        let fx = fa_f(&x, &q).unwrap();
        assert_eq!(fa_induced_hom(&inclusion(), &q, &b, &fx).unwrap(), fa_f(&y, &b).unwrap());
        let id = Matrix::identity(Ring::Rational, 2);
        let z = FreeOnAlgebraElement::basis(Ring::Rational, 2, 1, &[1, 0]).unwrap();
        assert_eq!(fa_induced_hom(&id, &b, &b, &z).unwrap(), z);
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let b = gaussian();
        let swap = Matrix::from_rows(Ring::Rational, &[vec![qi(0), qi(1)], vec![qi(1), qi(0)]]).unwrap();
        let z = FreeOnAlgebraElement::basis(Ring::Rational, 2, 0, &[]).unwrap();
        assert!(matches!(fa_induced_hom(&swap, &b, &b, &z), Err(OnAlgebraError::NotHomomorphism(_))));
    }

    #[test]
    fn truncated_rank_of_inclusion() {
        let q = StructureAlgebra::scalars(Ring::Rational);
        let r = truncated_injectivity(&inclusion(), &q, &gaussian(), 2).unwrap();
        assert_eq!(r.source_dim, 3);
        assert!(r.injective());
        assert_eq!(truncated_basis(2, 2).len(), 2 * (1 + 2 + 3));
    }

    #[test]
    fn lift_into_an_averaging_target() {
        let q = StructureAlgebra::scalars(Ring::Rational);
        let b = gaussian();
        // g(x) = re(x) · 1 is averaging on Q[i].
        let g = Matrix::from_rows(Ring::Rational, &[vec![qi(1), qi(0)], vec![qi(0), qi(0)]]).unwrap();
        let x = FreeOnAlgebraElement::basis(Ring::Rational, 1, 0, &[0, 0]).unwrap();
        assert_eq!(lift(&inclusion(), &q, &b, &g, &x).unwrap(), vec![qi(1), qi(0)]);
        let bad = Matrix::from_rows(Ring::Rational, &[vec![qi(1), qi(0)], vec![qi(0), qi(2)]]).unwrap();
        assert!(matches!(lift(&inclusion(), &q, &b, &bad, &x), Err(OnAlgebraError::NotAveraging(..))));
    }
}
