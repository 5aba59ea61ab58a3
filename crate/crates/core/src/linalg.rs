//! Exact linear algebra over the active scalar ring.
//!
//! Over a field everything is reduced row echelon form. Over a composite
//! `Z/n` the canonical form is the Howell form, which keeps the property that
//! rows with leading zeros span exactly the part of the row module that
//! vanishes on those leading coordinates. Kernels and intersections rely on
//! that property, so both paths share one code route.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::{ext_gcd, mod_inverse, Rational, Ring, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("operation requires a field, but the scalar ring is {0}")]
    UnsupportedRing(Ring),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
}

pub type Vector = Vec<Scalar>;

pub mod vector {
    //! Coordinate-vector helpers.
    use super::Vector;
    use crate::scalar::{Ring, Scalar};

    pub fn zero(ring: Ring, n: usize) -> Vector {
        vec![ring.zero(); n]
    }

    pub fn unit(ring: Ring, n: usize, i: usize) -> Vector {
        let mut v = zero(ring, n);
        v[i] = ring.one();
        v
    }

    pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
        assert_eq!(a.len(), b.len(), "vector length mismatch");
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
        assert_eq!(a.len(), b.len(), "vector length mismatch");
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(c: &Scalar, a: &[Scalar]) -> Vector {
        a.iter().map(|x| c * x).collect()
    }

    pub fn neg(a: &[Scalar]) -> Vector {
        a.iter().map(|x| -x).collect()
    }

    pub fn is_zero(a: &[Scalar]) -> bool {
        a.iter().all(Scalar::is_zero)
    }

    /// `acc += c * a`
    pub fn axpy(acc: &mut [Scalar], c: &Scalar, a: &[Scalar]) {
        if c.is_zero() {
            return;
        }
        for (x, y) in acc.iter_mut().zip(a) {
            *x = &*x + &(c * y);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, LinAlgError> {
        if data.len() != rows * cols {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { ring, rows, cols, data })
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        Matrix { ring, rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: Ring, rows: &[Vector]) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinAlgError::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flatten().cloned().collect();
        Self::new(ring, rows.len(), cols, data)
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`; `rows` fixes the
    /// height when there are no columns.
    pub fn from_columns(ring: Ring, rows: usize, columns: &[Vector]) -> Result<Self, LinAlgError> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(LinAlgError::DimensionMismatch("column length".into()));
        }
        let mut m = Self::zeros(ring, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vector, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{}x{} matrix applied to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.ring.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix, LinAlgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { ring: self.ring, rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| c * x).collect(),
        }
    }

    /// Reduced row echelon form and pivot columns. Field scalars only.
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>), LinAlgError> {
        require_field(self.ring)?;
        let (rows, pivots) = rref_rows(self.ring, self.to_rows(), self.cols, true);
        let mut out = Matrix::zeros(self.ring, self.rows, self.cols);
        for (i, r) in rows.into_iter().enumerate() {
            for (j, x) in r.into_iter().enumerate() {
                out.set(i, j, x);
            }
        }
        Ok((out, pivots))
    }

    pub fn rank(&self) -> Result<usize, LinAlgError> {
        Ok(self.rref()?.1.len())
    }

    /// Exact basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Result<Subspace, LinAlgError> {
        require_field(self.ring)?;
        let (rows, pivots) = rref_rows(self.ring, self.to_rows(), self.cols, false);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis: Vec<Vector> = free
            .iter()
            .map(|&fc| {
                let mut v = vector::zero(self.ring, self.cols);
                v[fc] = self.ring.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&rows[r][fc];
                }
                v
            })
            .collect();
        Ok(Subspace::span(self.ring, self.cols, &basis))
    }

    /// Solves `self * x = b`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Solution, LinAlgError> {
        require_field(self.ring)?;
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug: Vec<Vector> = self
            .to_rows()
            .into_iter()
            .zip(b)
            .map(|(mut r, x)| {
                r.push(x.clone());
                r
            })
            .collect();
        let (rows, pivots) = rref_rows(self.ring, aug, self.cols + 1, false);
        if pivots.last() == Some(&self.cols) {
            return Ok(Solution::NoSolution);
        }
        let mut x = vector::zero(self.ring, self.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = rows[r][self.cols].clone();
        }
        Ok(Solution::Solution { particular: x, nullspace: self.nullspace()? })
    }

    pub fn inverse(&self) -> Result<Matrix, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        require_field(self.ring)?;
        let n = self.rows;
        let aug: Vec<Vector> = (0..n)
            .map(|i| {
                let mut r = self.row(i);
                r.extend(vector::unit(self.ring, n, i));
                r
            })
            .collect();
        let (rows, pivots) = rref_rows(self.ring, aug, 2 * n, false);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(LinAlgError::Singular);
        }
        let inv: Vec<Vector> = rows.iter().map(|r| r[n..].to_vec()).collect();
        Matrix::from_rows(self.ring, &inv)
    }

    /// Characteristic polynomial `det(t I - self)`, ascending coefficients,
    /// computed with Berkowitz's division-free recurrence.
    pub fn char_poly(&self) -> Result<Vec<Scalar>, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let ring = self.ring;
        let n = self.rows;
        // descending coefficients of the leading r x r block
        let mut p = vec![ring.one()];
        for r in 0..n {
            let diag = self.get(r, r);
            let row: Vector = (0..r).map(|j| self.get(r, j).clone()).collect();
            let mut col: Vector = (0..r).map(|i| self.get(i, r).clone()).collect();
            let mut toeplitz = vec![ring.one(), -diag];
            for _ in 0..r {
                let dot = row
                    .iter()
                    .zip(&col)
                    .fold(ring.zero(), |acc, (a, b)| &acc + &(a * b));
                toeplitz.push(-&dot);
                // col <- M_r * col
                col = (0..r)
                    .map(|i| {
                        (0..r).fold(ring.zero(), |acc, j| &acc + &(self.get(i, j) * &col[j]))
                    })
                    .collect();
            }
            let mut q = vec![ring.zero(); r + 2];
            for (i, qi) in q.iter_mut().enumerate() {
                for (j, pj) in p.iter().enumerate().take(i + 1) {
                    *qi = &*qi + &(&toeplitz[i - j] * pj);
                }
            }
            p = q;
        }
        p.reverse();
        Ok(p)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    NoSolution,
    Solution { particular: Vector, nullspace: Subspace },
}

pub fn require_field(ring: Ring) -> Result<(), LinAlgError> {
    if ring.is_field() {
        Ok(())
    } else {
        Err(LinAlgError::UnsupportedRing(ring))
    }
}

/// Gauss-Jordan elimination over a field. Returns the (possibly truncated)
/// rows and pivot columns.
fn rref_rows(ring: Ring, mut a: Vec<Vector>, ncols: usize, keep_zero_rows: bool) -> (Vec<Vector>, Vec<usize>) {
    let m = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r >= m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][col].inverse().expect("nonzero element of a field");
        a[r] = vector::scale(&inv, &a[r]);
        for i in 0..m {
            if i != r && !a[i][col].is_zero() {
                let factor = -&a[i][col];
                let pivot_row = a[r].clone();
                vector::axpy(&mut a[i], &factor, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
    }
    if !keep_zero_rows {
        a.truncate(r);
    }
    let _ = ring;
    (a, pivots)
}

/// Howell form of the row module spanned by `rows` over `Z/n`.
///
/// Pivots are normalized to divisors of `n`, entries above a pivot are
/// reduced modulo it, and the annihilator multiple of each pivot row is fed
/// back in so the leading-zero property holds.
pub fn howell_form(rows: &[Vec<u64>], ncols: usize, n: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let n128 = n as i128;
    let norm = |x: i128| x.rem_euclid(n128) as u64;
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x % n).collect::<Vec<_>>())
        .filter(|r: &Vec<u64>| r.iter().any(|&x| x != 0))
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| a[i][col] != 0) else { continue };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][col] == 0 {
                continue;
            }
            let x = a[r][col] as i128;
            let y = a[i][col] as i128;
            let (g, s, t) = ext_gcd(x, y);
            let (u, v) = (-(y / g), x / g);
            let (rr, ri) = (a[r].clone(), a[i].clone());
            for j in 0..ncols {
                let (p_, q_) = (rr[j] as i128, ri[j] as i128);
                a[r][j] = norm(s * p_ + t * q_);
                a[i][j] = norm(u * p_ + v * q_);
            }
        }
        let pv = a[r][col];
        let g = num_integer::gcd(pv, n);
        let unit = stabilizing_unit(pv, n);
        for x in a[r].iter_mut() {
            *x = crate::scalar::mul_mod(*x, unit, n);
        }
        debug_assert_eq!(a[r][col], g);
        for i in 0..r {
            let q = a[i][col] / g;
            if q != 0 {
                let pivot_row = a[r].clone();
                for j in 0..ncols {
                    a[i][j] = norm(a[i][j] as i128 - q as i128 * pivot_row[j] as i128);
                }
            }
        }
        let ann = n / g;
        let extra: Vec<u64> = a[r].iter().map(|&x| crate::scalar::mul_mod(x, ann, n)).collect();
        if extra.iter().any(|&x| x != 0) {
            a.push(extra);
        }
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// A unit `c` of `Z/n` with `c * x = gcd(x, n) (mod n)`.
fn stabilizing_unit(x: u64, n: u64) -> u64 {
    let g = num_integer::gcd(x, n);
    let (xp, np) = (x / g, n / g);
    let c0 = if np == 1 { 0 } else { mod_inverse(xp % np, np).expect("coprime after division") };
    (0..g)
        .map(|k| c0 + k * np)
        .find(|&c| num_integer::gcd(c, n) == 1)
        .expect("a stabilizing unit always exists")
}

/// Canonical row basis: RREF over a field, Howell form over a composite
/// modulus. Zero rows are dropped.
pub(crate) fn canonical_rows(ring: Ring, rows: Vec<Vector>, ncols: usize) -> Vec<Vector> {
    match ring {
        Ring::Zmod(n) if !ring.is_field() => {
            let raw: Vec<Vec<u64>> = rows
                .iter()
                .map(|r| r.iter().map(|x| x.residue().expect("residue scalar")).collect())
                .collect();
            let (h, _) = howell_form(&raw, ncols, n);
            h.into_iter()
                .map(|r| r.into_iter().map(|value| Scalar::Mod { value, modulus: n }).collect())
                .collect()
        }
        _ => rref_rows(ring, rows, ncols, false).0,
    }
}

/// A subspace (over a composite `Z/n`: a submodule) of the coordinate space,
/// stored by its canonical basis so that equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ring: Ring,
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ring: Ring, ambient: usize) -> Self {
        Subspace { ring, ambient, basis: Vec::new() }
    }

    pub fn full(ring: Ring, ambient: usize) -> Self {
        let gens: Vec<Vector> = (0..ambient).map(|i| vector::unit(ring, ambient, i)).collect();
        Self::span(ring, ambient, &gens)
    }

    /// Span of `vectors`. Panics if a vector has the wrong length.
    pub fn span(ring: Ring, ambient: usize, vectors: &[Vector]) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient), "span: vector length != ambient dimension");
        let basis = canonical_rows(ring, vectors.to_vec(), ambient);
        Subspace { ring, ambient, basis }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Number of canonical generators. Over a field this is the dimension.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.ring, self.ambient)
    }

    fn check(&self, other: &Subspace) -> Result<(), LinAlgError> {
        if self.ambient != other.ambient || self.ring != other.ring {
            return Err(LinAlgError::DimensionMismatch(format!(
                "subspaces of {}^{} and {}^{}",
                self.ring, self.ambient, other.ring, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check(other)?;
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Ok(Self::span(self.ring, self.ambient, &gens))
    }

    /// Zassenhaus intersection: rows `(u, u)` and `(v, 0)`; rows of the
    /// canonical form vanishing on the first block span `U ∩ V`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check(other)?;
        let n = self.ambient;
        let mut rows = Vec::new();
        for u in &self.basis {
            let mut r = u.clone();
            r.extend(u.iter().cloned());
            rows.push(r);
        }
        for v in &other.basis {
            let mut r = v.clone();
            r.extend(vector::zero(self.ring, n));
            rows.push(r);
        }
        let canon = canonical_rows(self.ring, rows, 2 * n);
        let gens: Vec<Vector> = canon
            .into_iter()
            .filter(|r| vector::is_zero(&r[..n]))
            .map(|r| r[n..].to_vec())
            .collect();
        Ok(Self::span(self.ring, n, &gens))
    }

    /// `other ⊆ self`
    pub fn contains(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        Ok(self.sum(other)? == *self)
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient
            && self
                .sum(&Self::span(self.ring, self.ambient, &[v.to_vec()]))
                .map(|s| s == *self)
                .unwrap_or(false)
    }

    /// `{x : m x = 0}`, over fields and composite moduli alike.
    pub fn kernel(m: &Matrix) -> Subspace {
        let ring = m.ring();
        let (rows, cols) = (m.rows(), m.cols());
        // row i: (column i of m, e_i); combinations with zero left block are kernel vectors
        let aug: Vec<Vector> = (0..cols)
            .map(|i| {
                let mut r = m.column(i);
                r.extend(vector::unit(ring, cols, i));
                r
            })
            .collect();
        let canon = canonical_rows(ring, aug, rows + cols);
        let gens: Vec<Vector> = canon
            .into_iter()
            .filter(|r| vector::is_zero(&r[..rows]))
            .map(|r| r[rows..].to_vec())
            .collect();
        Self::span(ring, cols, &gens)
    }

    /// Extends the canonical basis to a basis of the whole space by appending
    /// standard basis vectors greedily in index order. Field only.
    pub fn complement_indices(&self) -> Result<Vec<usize>, LinAlgError> {
        require_field(self.ring)?;
        let mut current = self.clone();
        let mut out = Vec::new();
        for i in 0..self.ambient {
            let e = vector::unit(self.ring, self.ambient, i);
            if !current.contains_vector(&e) {
                current = current.sum(&Self::span(self.ring, self.ambient, &[e]))?;
                out.push(i);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self
            .basis
            .iter()
            .map(|v| format!("[{}]", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "span{{{}}}", vs.join(", "))
    }
}

/// All rational roots of a polynomial with rational coefficients (ascending
/// order), with multiplicity, sorted ascending.
pub fn rational_roots(poly: &[Rational]) -> Vec<Rational> {
    let mut coeffs: Vec<BigInt> = primitive_integer_form(poly);
    let mut roots = Vec::new();
    if coeffs.is_empty() {
        return roots;
    }
    while coeffs.len() > 1 && coeffs[0].is_zero() {
        coeffs.remove(0);
        roots.push(Rational::zero());
    }
    if coeffs.len() > 1 {
        let lead = coeffs.last().unwrap().abs();
        let constant = coeffs[0].abs();
        let ps = divisors(&constant);
        let qs = divisors(&lead);
        let mut candidates: Vec<Rational> = Vec::new();
        for p in &ps {
            for q in &qs {
                for sign in [1, -1] {
                    let c = Rational::new(p * BigInt::from(sign), q.clone());
                    if !candidates.contains(&c) {
                        candidates.push(c);
                    }
                }
            }
        }
        for c in candidates {
            while coeffs.len() > 1 && eval_int_poly(&coeffs, &c).is_zero() {
                roots.push(c.clone());
                coeffs = divide_by_root(&coeffs, &c);
            }
        }
    }
    roots.sort();
    roots
}

fn primitive_integer_form(poly: &[Rational]) -> Vec<BigInt> {
    let mut p: Vec<Rational> = poly.to_vec();
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &content).collect()
}

fn eval_int_poly(coeffs: &[BigInt], x: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
}

/// Divides by `(q t - p)` where `root = p/q`; the quotient stays integral
/// because the polynomial is primitive.
fn divide_by_root(coeffs: &[BigInt], root: &Rational) -> Vec<BigInt> {
    let (p, q) = (root.numer().clone(), root.denom().clone());
    let n = coeffs.len() - 1;
    let mut quotient = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for k in (0..n).rev() {
        // coefficient of t^(k+1) in the remainder chain
        let c = &coeffs[k + 1] + &carry;
        quotient[k] = c.clone() / &q;
        carry = &quotient[k] * &p;
    }
    quotient
}

fn divisors(v: &BigInt) -> Vec<BigInt> {
    let v = v.abs();
    if v.is_zero() {
        return vec![BigInt::one()];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= v {
        if (&v % &d).is_zero() {
            let other = &v / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}
