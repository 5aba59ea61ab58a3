//! Structure of an induced Lie algebra: derived and lower central series,
//! nilpotency, the nilpotent radical on domains, eigenvalues of `ad(a)`, and
//! the comparison of `ker F` with the bracket span.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{rational_roots, require_field, vector, Matrix, Subspace, Vector};
use crate::scalar::{Rational, Scalar};

use super::lie::{induced_bracket, BracketTable};
use super::operator::{apply, check_operator, is_averaging, LawCheck};
use super::{FindimError, StructureAlgebra};

/// Random samples used by the domain check.
pub const DOMAIN_SAMPLES: usize = 50;
const DOMAIN_SEED: u64 = 0x5eed;

/// A chain of subspaces `stages[0] ⊇ stages[1] ⊇ ...`, numbered from
/// `first_index`, computed until it reaches zero or stops shrinking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    pub first_index: usize,
    pub stages: Vec<Subspace>,
}

impl Series {
    /// Index of the first zero stage, if the chain reaches zero.
    pub fn zero_at(&self) -> Option<usize> {
        self.stages.iter().position(Subspace::is_zero).map(|p| p + self.first_index)
    }

    pub fn last(&self) -> &Subspace {
        self.stages.last().expect("a series has at least one stage")
    }
}

fn span_of_brackets(a: &StructureAlgebra, l: &BracketTable, left: &[Vector], right: &[Vector]) -> Subspace {
    let mut gens = Vec::with_capacity(left.len() * right.len());
    for u in left {
        for v in right {
            gens.push(l.bracket(u, v));
        }
    }
    Subspace::span(a.ring(), a.dim(), &gens)
}

fn iterate(a: &StructureAlgebra, first_index: usize, step: impl Fn(&Subspace) -> Subspace) -> Series {
    let mut stages = vec![Subspace::full(a.ring(), a.dim())];
    loop {
        let prev = stages.last().unwrap();
        if prev.is_zero() {
            break;
        }
        let next = step(prev);
        let stable = next == *prev;
        stages.push(next);
        if stable {
            break;
        }
    }
    Series { first_index, stages }
}

/// `L^(0) = L`, `L^(k) = [L^(k-1), L^(k-1)]`.
pub fn derived_series(a: &StructureAlgebra, l: &BracketTable) -> Series {
    iterate(a, 0, |prev| span_of_brackets(a, l, prev.basis(), prev.basis()))
}

/// `L^1 = L`, `L^k = [L^(k-1), L]`.
pub fn lower_central_series(a: &StructureAlgebra, l: &BracketTable) -> Series {
    let basis: Vec<Vector> = (0..a.dim()).map(|i| a.basis(i)).collect();
    iterate(a, 1, |prev| span_of_brackets(a, l, prev.basis(), &basis))
}

pub fn is_solvable(a: &StructureAlgebra, l: &BracketTable) -> bool {
    derived_series(a, l).zero_at().is_some()
}

pub fn is_nilpotent(a: &StructureAlgebra, l: &BracketTable) -> bool {
    lower_central_series(a, l).zero_at().is_some()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    /// Least `k >= 1` with `f(A)^k` inside the annihilator of `[A, A]`.
    Nilpotent { k: usize },
    /// The powers of `f(A)` stabilized at this subspace without entering the
    /// annihilator.
    NotNilpotent { stable: Subspace },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyReport {
    pub verdict: Nilpotency,
    pub annihilator: Subspace,
    pub powers: Vec<Subspace>,
}

/// `{a : a b = 0 for every b in s}`
pub fn annihilator(a: &StructureAlgebra, s: &Subspace) -> Result<Subspace, FindimError> {
    let mut rows: Vec<Vector> = Vec::new();
    for b in s.basis() {
        rows.extend(a.mult_matrix(b).to_rows());
    }
    if rows.is_empty() {
        return Ok(Subspace::full(a.ring(), a.dim()));
    }
    Ok(Subspace::kernel(&Matrix::from_rows(a.ring(), &rows)?))
}

/// Span of products `u v` with `u` from `s` and `v` from `t`.
pub fn product_span(a: &StructureAlgebra, s: &Subspace, t: &Subspace) -> Subspace {
    let mut gens = Vec::new();
    for u in s.basis() {
        for v in t.basis() {
            gens.push(a.mul(u, v));
        }
    }
    Subspace::span(a.ring(), a.dim(), &gens)
}

pub fn image(a: &StructureAlgebra, f: &Matrix) -> Subspace {
    Subspace::span(a.ring(), a.dim(), &f.columns())
}

pub fn kernel(f: &Matrix) -> Subspace {
    Subspace::kernel(f)
}

/// The induced Lie algebra is nilpotent exactly when some power `f(A)^k`
/// annihilates `[A, A]`. The powers descend because `f(A)` is closed under
/// products, so the loop terminates.
pub fn nilpotency_check(a: &StructureAlgebra, f: &Matrix) -> Result<NilpotencyReport, FindimError> {
    let l = induced_bracket(a, f)?;
    let ann = annihilator(a, &l.derived_span(a))?;
    let fa = image(a, f);
    let mut powers = vec![fa.clone()];
    loop {
        let cur = powers.last().unwrap().clone();
        if ann.contains(&cur)? {
            let k = powers.len();
            return Ok(NilpotencyReport { verdict: Nilpotency::Nilpotent { k }, annihilator: ann, powers });
        }
        let next = product_span(a, &cur, &fa);
        if next == cur {
            return Ok(NilpotencyReport { verdict: Nilpotency::NotNilpotent { stable: cur }, annihilator: ann, powers });
        }
        powers.push(next);
    }
}

/// Deterministic version of [`StructureAlgebra::looks_like_domain`].
pub fn domain_check(a: &StructureAlgebra) -> Result<bool, FindimError> {
    a.looks_like_domain(DOMAIN_SAMPLES, &mut ChaCha8Rng::seed_from_u64(DOMAIN_SEED))
}

fn require_domain(a: &StructureAlgebra) -> Result<(), FindimError> {
    if domain_check(a)? {
        Ok(())
    } else {
        Err(FindimError::NotDomain)
    }
}

fn require_averaging(a: &StructureAlgebra, f: &Matrix) -> Result<(), FindimError> {
    match is_averaging(a, f)? {
        LawCheck::Holds => Ok(()),
        LawCheck::FailsAt(i, j) => Err(FindimError::NotAveraging { i, j }),
    }
}

/// Nilpotent radical of the induced Lie algebra on a domain: everything when
/// `ker F = 0`, else `ker F`.
pub fn nilpotent_radical_domain(a: &StructureAlgebra, f: &Matrix) -> Result<Subspace, FindimError> {
    require_field(a.ring())?;
    require_averaging(a, f)?;
    require_domain(a)?;
    let k = kernel(f);
    Ok(if k.is_zero() { Subspace::full(a.ring(), a.dim()) } else { k })
}

/// Matrix of `ad(a): x -> a F(x) - x F(a)`.
pub fn ad_matrix(a: &StructureAlgebra, f: &Matrix, elem: &[Scalar]) -> Result<Matrix, FindimError> {
    check_operator(a, f)?;
    let fa = apply(f, elem);
    let cols: Vec<Vector> = (0..a.dim())
        .map(|j| {
            let ej = a.basis(j);
            vector::sub(&a.mul(elem, &apply(f, &ej)), &a.mul(&ej, &fa))
        })
        .collect();
    Ok(Matrix::from_columns(a.ring(), a.dim(), &cols)?)
}

/// Eigenvalues in ascending order, each with its eigenspace.
pub type Eigenstructure = Vec<(Rational, Subspace)>;

/// Eigenvalues from the rational roots of the characteristic polynomial,
/// eigenspaces from nullspaces. Works on any algebra over Q.
pub fn ad_eigen_direct(a: &StructureAlgebra, f: &Matrix, elem: &[Scalar]) -> Result<Eigenstructure, FindimError> {
    let ad = ad_matrix(a, f, elem)?;
    let cp: Vec<Rational> = ad
        .char_poly()?
        .iter()
        .map(|c| c.as_rational().cloned().ok_or(FindimError::Unsupported("eigenvalues need rational scalars")))
        .collect::<Result<_, _>>()?;
    let mut roots = rational_roots(&cp);
    roots.dedup();
    let id = Matrix::identity(a.ring(), a.dim());
    roots
        .into_iter()
        .map(|r| {
            let shifted = ad.sub(&id.scale(&Scalar::Q(r.clone())))?;
            Ok((r, shifted.nullspace()?))
        })
        .collect()
}

/// The eigenstructure predicted on a domain: only `0` when `ker F = 0` or
/// `F(a)` is not a nonzero multiple of `1`; otherwise `0` and `-k` with
/// eigenspace `ker F`, where `F(a) = k 1`.
pub fn ad_eigen_structural(a: &StructureAlgebra, f: &Matrix, elem: &[Scalar]) -> Result<Eigenstructure, FindimError> {
    let ad = ad_matrix(a, f, elem)?;
    let k = kernel(f);
    if vector::is_zero(elem) || k.is_zero() {
        return Ok(vec![(Rational::from_integer(0.into()), Subspace::full(a.ring(), a.dim()))]);
    }
    let v0 = ad.nullspace()?;
    let fa = apply(f, elem);
    let unit = a.unit();
    let pivot = unit.iter().position(|c| !c.is_zero()).expect("unit is nonzero");
    let scale = &fa[pivot] * &unit[pivot].inverse().expect("field");
    let zero = Rational::from_integer(0.into());
    if scale.is_zero() || vector::scale(&scale, unit) != fa {
        return Ok(vec![(zero, v0)]);
    }
    let minus_k = (-&scale).as_rational().cloned().ok_or(FindimError::Unsupported("eigenvalues need rational scalars"))?;
    let mut out = vec![(zero, v0), (minus_k, k)];
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

/// Structural eigenstructure on a domain, cross-checked against the direct
/// computation. A disagreement is reported as an invariant breach.
pub fn ad_eigen(a: &StructureAlgebra, f: &Matrix, elem: &[Scalar]) -> Result<Eigenstructure, FindimError> {
    require_field(a.ring())?;
    require_averaging(a, f)?;
    require_domain(a)?;
    let structural = ad_eigen_structural(a, f, elem)?;
    let direct = ad_eigen_direct(a, f, elem)?;
    if structural != direct {
        return Err(FindimError::InvariantBreach(format!(
            "ad eigenstructure: structural {} vs direct {}",
            describe(&structural),
            describe(&direct)
        )));
    }
    Ok(structural)
}

pub fn describe(e: &Eigenstructure) -> String {
    let parts: Vec<String> = e.iter().map(|(r, s)| format!("{}: {}", crate::scalar::format_rational(r), s)).collect();
    format!("{{{}}}", parts.join("; "))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBrackets {
    pub kernel: Subspace,
    pub brackets: Subspace,
    pub equal: bool,
    /// `F(1)` is not a zero divisor (multiplication by it is injective).
    pub unit_image_regular: bool,
}

/// Compares `ker F` with the span of all brackets `[x, y]_F`. The inclusion
/// of brackets in the kernel always holds for averaging `F`.
pub fn kernel_equals_brackets(a: &StructureAlgebra, f: &Matrix) -> Result<KernelBrackets, FindimError> {
    let l = induced_bracket(a, f)?;
    let kernel = kernel(f);
    let brackets = l.derived_span(a);
    let f1 = apply(f, a.unit());
    let unit_image_regular = Subspace::kernel(&a.mult_matrix(&f1)).is_zero();
    Ok(KernelBrackets { equal: kernel == brackets, kernel, brackets, unit_image_regular })
}
