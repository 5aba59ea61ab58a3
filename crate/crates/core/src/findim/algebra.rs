//! Finite-dimensional commutative unital algebras given by structure constants.

use rand::Rng;

use crate::linalg::{vector, Matrix, Vector};
use crate::scalar::{Ring, Scalar};

use super::FindimError;

/// `e_i * e_j = sum_k mul[i][j][k] e_k`, with `unit` the coordinates of `1_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    ring: Ring,
    dim: usize,
    unit: Vector,
    mul: Vec<Vec<Vector>>,
}

/// First failures of the ambient axioms, if any.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraReport {
    pub commutativity_failure: Option<(usize, usize)>,
    pub associativity_failure: Option<(usize, usize, usize)>,
    pub unit_failure: Option<usize>,
}

impl AlgebraReport {
    pub fn commutative(&self) -> bool {
        self.commutativity_failure.is_none()
    }

    pub fn associative(&self) -> bool {
        self.associativity_failure.is_none()
    }

    pub fn unital(&self) -> bool {
        self.unit_failure.is_none()
    }

    pub fn ok(&self) -> bool {
        self.commutative() && self.associative() && self.unital()
    }
}

impl StructureAlgebra {
    /// Shape-checked constructor. The algebra axioms are not checked here;
    /// see [`StructureAlgebra::verify`] and [`StructureAlgebra::verified`].
    pub fn new(ring: Ring, unit: Vector, mul: Vec<Vec<Vector>>) -> Result<Self, FindimError> {
        let dim = unit.len();
        if dim == 0 {
            return Err(FindimError::Degenerate("an algebra needs dimension at least 1".into()));
        }
        let shape_ok = mul.len() == dim
            && mul.iter().all(|row| row.len() == dim && row.iter().all(|v| v.len() == dim));
        if !shape_ok {
            return Err(FindimError::Dimension(format!("structure constants must be {dim}x{dim}x{dim}")));
        }
        let rings_ok = unit.iter().chain(mul.iter().flatten().flatten()).all(|s| s.ring() == ring);
        if !rings_ok {
            return Err(FindimError::Dimension(format!("entries outside the declared ring {ring}")));
        }
        Ok(StructureAlgebra { ring, dim, unit, mul })
    }

    /// Constructs and checks commutativity, associativity and the unit law.
    pub fn verified(ring: Ring, unit: Vector, mul: Vec<Vec<Vector>>) -> Result<Self, FindimError> {
        let a = Self::new(ring, unit, mul)?;
        let report = a.verify();
        if !report.ok() {
            return Err(FindimError::NotAnAlgebra(report));
        }
        Ok(a)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn structure_constants(&self) -> &Vec<Vec<Vector>> {
        &self.mul
    }

    pub fn basis(&self, i: usize) -> Vector {
        vector::unit(self.ring, self.dim, i)
    }

    pub fn zero(&self) -> Vector {
        vector::zero(self.ring, self.dim)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.mul[i][j]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                vector::axpy(&mut out, &(xi * yj), &self.mul[i][j]);
            }
        }
        out
    }

    /// Matrix of `x -> a x`.
    pub fn mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(a, &self.basis(j))).collect();
        Matrix::from_columns(self.ring, self.dim, &cols).expect("square by construction")
    }

    pub fn verify(&self) -> AlgebraReport {
        let n = self.dim;
        let mut report = AlgebraReport::default();
        'comm: for i in 0..n {
            for j in i + 1..n {
                if self.mul[i][j] != self.mul[j][i] {
                    report.commutativity_failure = Some((i, j));
                    break 'comm;
                }
            }
        }
        'assoc: for i in 0..n {
            for j in 0..n {
                let ij = &self.mul[i][j];
                for k in 0..n {
                    let left = self.mul(ij, &self.basis(k));
                    let right = self.mul(&self.basis(i), &self.mul[j][k]);
                    if left != right {
                        report.associativity_failure = Some((i, j, k));
                        break 'assoc;
                    }
                }
            }
        }
        for i in 0..n {
            let e = self.basis(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                report.unit_failure = Some(i);
                break;
            }
        }
        report
    }

    /// `R` itself as a rank-one algebra.
    pub fn scalars(ring: Ring) -> Self {
        Self::new(ring, vec![ring.one()], vec![vec![vec![ring.one()]]]).expect("rank one")
    }

    /// `R[t]/(p)` for monic `p` (ascending coefficients, leading 1), on the
    /// basis `1, t, ..., t^(d-1)`.
    pub fn from_monic_poly(ring: Ring, p: &[Scalar]) -> Result<Self, FindimError> {
        let d = p.len().saturating_sub(1);
        if d == 0 {
            return Err(FindimError::Degenerate("polynomial of degree 0".into()));
        }
        if !p[d].is_one() {
            return Err(FindimError::NonMonic);
        }
        // powers t^0 .. t^(2d-2) reduced modulo p
        let mut powers: Vec<Vector> = Vec::with_capacity(2 * d - 1);
        let mut cur = vector::unit(ring, d, 0);
        for _ in 0..2 * d - 1 {
            powers.push(cur.clone());
            // multiply by t: shift up, then fold t^d = -sum p_k t^k
            let top = cur[d - 1].clone();
            let mut next = vector::zero(ring, d);
            next[1..d].clone_from_slice(&cur[..d - 1]);
            for k in 0..d {
                next[k] = &next[k] - &(&top * &p[k]);
            }
            cur = next;
        }
        let mul = (0..d).map(|i| (0..d).map(|j| powers[i + j].clone()).collect()).collect();
        Self::new(ring, vector::unit(ring, d, 0), mul)
    }

    /// Componentwise product algebra `A x B`.
    pub fn direct_product(a: &Self, b: &Self) -> Result<Self, FindimError> {
        if a.ring != b.ring {
            return Err(FindimError::Dimension("factors over different rings".into()));
        }
        let ring = a.ring;
        let n = a.dim + b.dim;
        let mut unit = a.unit.clone();
        unit.extend(b.unit.iter().cloned());
        let mut mul = vec![vec![vector::zero(ring, n); n]; n];
        for i in 0..a.dim {
            for j in 0..a.dim {
                mul[i][j][..a.dim].clone_from_slice(&a.mul[i][j]);
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                mul[a.dim + i][a.dim + j][a.dim..].clone_from_slice(&b.mul[i][j]);
            }
        }
        Self::new(ring, unit, mul)
    }

    /// The same algebra on the basis given by the columns of `p`
    /// (new `e'_j = sum_i p[i][j] e_i`). Field scalars only.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self, FindimError> {
        let inv = p.inverse()?;
        let cols = p.columns();
        let to_new = |v: &Vector| inv.apply(v).expect("square");
        let mul = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| to_new(&self.mul(&cols[i], &cols[j]))).collect())
            .collect();
        Self::new(self.ring, to_new(&self.unit), mul)
    }

    /// Necessary check for "no zero divisors": multiplication by every basis
    /// element and by `samples` random nonzero elements is injective. Sound
    /// as a refutation; for field extensions of Q it is the expected answer.
    pub fn looks_like_domain(&self, samples: usize, rng: &mut impl Rng) -> Result<bool, FindimError> {
        crate::linalg::require_field(self.ring)?;
        let injective = |a: &Vector| -> Result<bool, FindimError> {
            Ok(self.mult_matrix(a).rank()? == self.dim)
        };
        for i in 0..self.dim {
            if !injective(&self.basis(i))? {
                return Ok(false);
            }
        }
        let mut drawn = 0;
        while drawn < samples {
            let a: Vector = (0..self.dim).map(|_| self.ring.from_i64(rng.gen_range(-5..=5))).collect();
            if vector::is_zero(&a) {
                continue;
            }
            drawn += 1;
            if !injective(&a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;

    fn gaussian() -> StructureAlgebra {
        StructureAlgebra::from_monic_poly(Ring::Rational, &[qi(1), qi(0), qi(1)]).unwrap()
    }

    #[test]
    fn gaussian_rationals_pass() {
        let a = gaussian();
        assert!(a.verify().ok());
        let i = a.basis(1);
        assert_eq!(a.mul(&i, &i), vec![qi(-1), qi(0)]);
    }

    #[test]
    fn commutativity_failure_is_located() {
        let r = Ring::Rational;
        let mut mul = gaussian().structure_constants().clone();
        mul[0][1] = vec![qi(1), qi(1)];
        let a = StructureAlgebra::new(r, vec![qi(1), qi(0)], mul).unwrap();
        assert_eq!(a.verify().commutativity_failure, Some((0, 1)));
    }

    #[test]
    fn z6_rank_one() {
        let a = StructureAlgebra::scalars(Ring::Zmod(6));
        assert!(a.verify().ok());
    }

    #[test]
    fn products_and_basis_changes_stay_algebras() {
        let q = StructureAlgebra::scalars(Ring::Rational);
        let p = StructureAlgebra::direct_product(&q, &gaussian()).unwrap();
        assert!(p.verify().ok());
        let m = Matrix::from_rows(
            Ring::Rational,
            &[vec![qi(1), qi(1), qi(0)], vec![qi(0), qi(1), qi(2)], vec![qi(0), qi(0), qi(1)]],
        )
        .unwrap();
        assert!(p.change_basis(&m).unwrap().verify().ok());
    }

    #[test]
    fn domain_check() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        assert!(gaussian().looks_like_domain(50, &mut rng).unwrap());
        let split = StructureAlgebra::from_monic_poly(Ring::Rational, &[qi(-1), qi(0), qi(1)]).unwrap();
        assert!(!split.looks_like_domain(50, &mut rng).unwrap());
        assert!(StructureAlgebra::from_monic_poly(Ring::Rational, &[qi(1), qi(2)]).is_err());
    }
}
