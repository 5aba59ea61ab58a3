//! Lie brackets on a structure algebra: the bracket induced by an operator,
//! the endomorphism and averaging criteria, and the linear-system solver that
//! recovers an averaging operator from a bracket.

use crate::linalg::{vector, Matrix, Solution, Subspace, Vector};
use crate::scalar::Scalar;

use super::operator::{check_operator, is_averaging, LawCheck};
use super::{FindimError, StructureAlgebra};

/// `[e_i, e_j] = sum_k table[i][j][k] e_k`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTable {
    dim: usize,
    table: Vec<Vec<Vector>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieReport {
    pub antisymmetry_failure: Option<(usize, usize)>,
    pub jacobi_failure: Option<(usize, usize, usize)>,
}

impl LieReport {
    pub fn ok(&self) -> bool {
        self.antisymmetry_failure.is_none() && self.jacobi_failure.is_none()
    }
}

impl BracketTable {
    pub fn new(a: &StructureAlgebra, table: Vec<Vec<Vector>>) -> Result<Self, FindimError> {
        let n = a.dim();
        let ok = table.len() == n && table.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n));
        if !ok {
            return Err(FindimError::Dimension(format!("bracket table must be {n}x{n}x{n}")));
        }
        if table.iter().flatten().flatten().any(|s| s.ring() != a.ring()) {
            return Err(FindimError::Dimension("bracket entries outside the algebra's ring".into()));
        }
        Ok(BracketTable { dim: n, table })
    }

    /// Constructs and insists on antisymmetry and the Jacobi identity.
    pub fn lie(a: &StructureAlgebra, table: Vec<Vec<Vector>>) -> Result<Self, FindimError> {
        let b = Self::new(a, table)?;
        let report = b.check_lie();
        if !report.ok() {
            return Err(FindimError::NotLie(report));
        }
        Ok(b)
    }

    pub fn zero(a: &StructureAlgebra) -> Self {
        BracketTable { dim: a.dim(), table: vec![vec![a.zero(); a.dim()]; a.dim()] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self) -> &Vec<Vec<Vector>> {
        &self.table
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().flatten().all(|v| vector::is_zero(v))
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let ring = x.first().or(y.first()).map(Scalar::ring);
        let mut out: Vector = match ring {
            Some(r) => vector::zero(r, self.dim),
            None => Vec::new(),
        };
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    vector::axpy(&mut out, &(xi * yj), &self.table[i][j]);
                }
            }
        }
        out
    }

    pub fn check_lie(&self) -> LieReport {
        let n = self.dim;
        let mut report = LieReport::default();
        'anti: for i in 0..n {
            for j in i..n {
                if self.table[i][j] != vector::neg(&self.table[j][i]) {
                    report.antisymmetry_failure = Some((i, j));
                    break 'anti;
                }
            }
        }
        'jac: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ring = match self.table[0][0].first() {
                        Some(s) => s.ring(),
                        None => return report,
                    };
                    let e = |t| vector::unit(ring, n, t);
                    let t1 = self.bracket(&e(i), &self.table[j][k]);
                    let t2 = self.bracket(&e(j), &self.table[k][i]);
                    let t3 = self.bracket(&e(k), &self.table[i][j]);
                    if !vector::is_zero(&vector::add(&vector::add(&t1, &t2), &t3)) {
                        report.jacobi_failure = Some((i, j, k));
                        break 'jac;
                    }
                }
            }
        }
        report
    }

    /// Span of all brackets, `[A, A]`.
    pub fn derived_span(&self, a: &StructureAlgebra) -> Subspace {
        let gens: Vec<Vector> = self.table.iter().flatten().cloned().collect();
        Subspace::span(a.ring(), a.dim(), &gens)
    }
}

/// `[x, y] = x F(y) - y F(x)` on basis pairs, without any precondition on
/// `F`. The result is returned only if it is a Lie bracket.
pub fn raw_bracket(a: &StructureAlgebra, f: &Matrix) -> Result<BracketTable, FindimError> {
    check_operator(a, f)?;
    let images = f.columns();
    let table = (0..a.dim())
        .map(|i| {
            (0..a.dim())
                .map(|j| vector::sub(&a.mul(&a.basis(i), &images[j]), &a.mul(&a.basis(j), &images[i])))
                .collect()
        })
        .collect();
    BracketTable::lie(a, table)
}

/// The bracket induced by an averaging operator.
pub fn induced_bracket(a: &StructureAlgebra, f: &Matrix) -> Result<BracketTable, FindimError> {
    if let LawCheck::FailsAt(i, j) = is_averaging(a, f)? {
        return Err(FindimError::NotAveraging { i, j });
    }
    raw_bracket(a, f)
}

/// `[x, y] = x [1, y] + y [x, 1]` on basis pairs; both sides are bilinear.
pub fn endo_induced_check(a: &StructureAlgebra, l: &BracketTable) -> LawCheck {
    let one = a.unit();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let (ei, ej) = (a.basis(i), a.basis(j));
            let rhs = vector::add(&a.mul(&ei, &l.bracket(one, &ej)), &a.mul(&ej, &l.bracket(&ei, one)));
            if *l.basis_bracket(i, j) != rhs {
                return LawCheck::FailsAt(i, j);
            }
        }
    }
    LawCheck::Holds
}

/// `{a : [a x, y] = a [x, y] for all x, y}`, solved as a linear system in the
/// coordinates of `a` over all basis pairs.
pub fn gamma_subalgebra(a: &StructureAlgebra, l: &BracketTable) -> Result<Subspace, FindimError> {
    let n = a.dim();
    let columns: Vec<Vector> = (0..n)
        .map(|k| {
            let ek = a.basis(k);
            let mut col = Vec::with_capacity(n * n * n);
            for i in 0..n {
                for j in 0..n {
                    let lhs = l.bracket(&a.mul(&ek, &a.basis(i)), &a.basis(j));
                    let rhs = a.mul(&ek, l.basis_bracket(i, j));
                    col.extend(vector::sub(&lhs, &rhs));
                }
            }
            col
        })
        .collect();
    let m = Matrix::from_columns(a.ring(), n * n * n, &columns)?;
    Ok(Subspace::kernel(&m))
}

/// `L_t(x) = [1, x] + x t`, as a matrix.
pub fn l_t(a: &StructureAlgebra, l: &BracketTable, t: &[Scalar]) -> Matrix {
    let cols: Vec<Vector> = (0..a.dim())
        .map(|j| {
            let ej = a.basis(j);
            vector::add(&l.bracket(a.unit(), &ej), &a.mul(&ej, t))
        })
        .collect();
    Matrix::from_columns(a.ring(), a.dim(), &cols).expect("square")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InduceResult {
    /// The endomorphism criterion fails at this basis pair, so no operator
    /// at all induces the bracket.
    NotEndoInduced { i: usize, j: usize },
    /// The stacked linear system has no solution.
    NoSolution,
    Induced { t: Vector, operator: Matrix },
    /// The system was solvable but the resulting operator failed the final
    /// check. Kept as a separate diagnostic.
    VerificationFailed { t: Vector, operator: Matrix, detail: String },
}

/// The intermediate data of the solver, exposed for inspection and tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InduceSystem {
    /// Basis `eps_1..eps_p` of Gamma(L).
    pub eps: Vec<Vector>,
    /// Standard basis indices completing `eps` to a basis (the `delta_j`).
    pub delta: Vec<usize>,
    /// `b[j][k][i]`: delta_k-coordinate of `eps_i delta_j`.
    pub b: Vec<Vec<Vector>>,
    /// `d[j][k]`: minus the delta_k-coordinate of `[1, delta_j]`.
    pub d: Vec<Vector>,
}

pub fn build_system(a: &StructureAlgebra, l: &BracketTable) -> Result<InduceSystem, FindimError> {
    crate::linalg::require_field(a.ring())?;
    let gamma = gamma_subalgebra(a, l)?;
    let eps: Vec<Vector> = gamma.basis().to_vec();
    let delta = gamma.complement_indices()?;
    let mut cols = eps.clone();
    cols.extend(delta.iter().map(|&i| a.basis(i)));
    let to_coords = Matrix::from_columns(a.ring(), a.dim(), &cols)?.inverse()?;
    let p = eps.len();
    let delta_coords = |v: &Vector| -> Vector { to_coords.apply(v).expect("square")[p..].to_vec() };
    let mut b = Vec::with_capacity(delta.len());
    let mut d = Vec::with_capacity(delta.len());
    for &dj in &delta {
        let ej = a.basis(dj);
        let per_eps: Vec<Vector> = eps.iter().map(|e| delta_coords(&a.mul(e, &ej))).collect();
        // transpose to b[j][k][i]
        let bj: Vec<Vector> =
            (0..delta.len()).map(|k| per_eps.iter().map(|c| c[k].clone()).collect()).collect();
        b.push(bj);
        d.push(vector::neg(&delta_coords(&l.bracket(a.unit(), &ej))));
    }
    Ok(InduceSystem { eps, delta, b, d })
}

/// Decides whether a Lie bracket is induced by an averaging operator and,
/// if so, returns one.
pub fn induced_by_averaging(a: &StructureAlgebra, l: &BracketTable) -> Result<InduceResult, FindimError> {
    crate::linalg::require_field(a.ring())?;
    if let LawCheck::FailsAt(i, j) = endo_induced_check(a, l) {
        return Ok(InduceResult::NotEndoInduced { i, j });
    }
    let sys = build_system(a, l)?;
    let ring = a.ring();
    let p = sys.eps.len();
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vector = Vec::new();
    for (bj, dj) in sys.b.iter().zip(&sys.d) {
        rows.extend(bj.iter().cloned());
        rhs.extend(dj.iter().cloned());
    }
    let x = if rows.is_empty() {
        vector::zero(ring, p)
    } else {
        let m = Matrix::from_rows(ring, &rows)?;
        match m.solve(&rhs)? {
            Solution::NoSolution => return Ok(InduceResult::NoSolution),
            Solution::Solution { particular, .. } => particular,
        }
    };
    let mut t = a.zero();
    for (xi, e) in x.iter().zip(&sys.eps) {
        vector::axpy(&mut t, xi, e);
    }
    let operator = l_t(a, l, &t);
    if let LawCheck::FailsAt(i, j) = is_averaging(a, &operator)? {
        let detail = format!("L_t fails the averaging law at basis pair ({i}, {j})");
        return Ok(InduceResult::VerificationFailed { t, operator, detail });
    }
    let reproduced = raw_bracket(a, &operator)?;
    if reproduced != *l {
        let detail = "L_t induces a different bracket".to_string();
        return Ok(InduceResult::VerificationFailed { t, operator, detail });
    }
    Ok(InduceResult::Induced { t, operator })
}

/// Image of an operator applied to every basis vector, as a subspace.
pub fn image(a: &StructureAlgebra, f: &Matrix) -> Subspace {
    Subspace::span(a.ring(), a.dim(), &f.columns())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Ring};

    fn gaussian() -> StructureAlgebra {
        StructureAlgebra::from_monic_poly(Ring::Rational, &[qi(1), qi(0), qi(1)]).unwrap()
    }

    fn imag() -> Matrix {
        Matrix::from_rows(Ring::Rational, &[vec![qi(0), qi(1)], vec![qi(0), qi(0)]]).unwrap()
    }

    /// Q^3 componentwise with [e1,e2]=e1, [e1,e3]=e2, [e2,e3]=e3.
    fn q3_example() -> (StructureAlgebra, BracketTable) {
        let q = StructureAlgebra::scalars(Ring::Rational);
        let a = StructureAlgebra::direct_product(&StructureAlgebra::direct_product(&q, &q).unwrap(), &q).unwrap();
        let e = |i| a.basis(i);
        let z = a.zero();
        let neg = |v: Vector| vector::neg(&v);
        let table = vec![
            vec![z.clone(), e(0), e(1)],
            vec![neg(e(0)), z.clone(), e(2)],
            vec![neg(e(1)), neg(e(2)), z],
        ];
        let l = BracketTable::lie(&a, table).unwrap();
        (a, l)
    }

    #[test]
    fn brackets_from_operators() {
        let a = gaussian();
        assert!(induced_bracket(&a, &Matrix::identity(Ring::Rational, 2)).unwrap().is_zero());
        let l = induced_bracket(&a, &imag()).unwrap();
        assert_eq!(l.basis_bracket(0, 1), &vec![qi(1), qi(0)]);
        let h1 = Matrix::from_rows(Ring::Rational, &[vec![qi(0), qi(0)], vec![qi(1), qi(0)]]).unwrap();
        assert!(matches!(induced_bracket(&a, &h1), Err(FindimError::NotAveraging { .. })));
    }

    #[test]
    fn endo_criterion() {
        let a = gaussian();
        assert!(endo_induced_check(&a, &BracketTable::zero(&a)).holds());
        assert!(endo_induced_check(&a, &induced_bracket(&a, &imag()).unwrap()).holds());
        let (a3, l3) = q3_example();
        assert_eq!(endo_induced_check(&a3, &l3), LawCheck::FailsAt(0, 1));
    }

    #[test]
    fn gamma() {
        let a = gaussian();
        assert!(gamma_subalgebra(&a, &BracketTable::zero(&a)).unwrap().is_full());
        let g = gamma_subalgebra(&a, &induced_bracket(&a, &imag()).unwrap()).unwrap();
        assert_eq!(g, Subspace::span(Ring::Rational, 2, &[a.unit().clone()]));
    }

    #[test]
    fn solver_examples() {
        let (a3, l3) = q3_example();
        assert!(matches!(induced_by_averaging(&a3, &l3).unwrap(), InduceResult::NotEndoInduced { .. }));

        let a = gaussian();
        match induced_by_averaging(&a, &BracketTable::zero(&a)).unwrap() {
            InduceResult::Induced { t, operator } => {
                assert!(vector::is_zero(&t));
                assert!(operator.is_zero());
            }
            other => panic!("{other:?}"),
        }

        // [1, i] = i
        let table = vec![vec![a.zero(), a.basis(1)], vec![vector::neg(&a.basis(1)), a.zero()]];
        let l = BracketTable::lie(&a, table).unwrap();
        match induced_by_averaging(&a, &l).unwrap() {
            InduceResult::Induced { t, operator } => {
                assert_eq!(t, vec![qi(-1), qi(0)]);
                assert!(is_averaging(&a, &operator).unwrap().holds());
                assert_eq!(raw_bracket(&a, &operator).unwrap(), l);
            }
            other => panic!("{other:?}"),
        }
    }
}
