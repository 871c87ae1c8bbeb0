//! Dense complex linear algebra for the quantum models.
//!
//! Everything here is deliberately small: row-major dense matrices, state
//! vectors, Kronecker products, and the unitary / projector checks used when
//! validating machines. Validation uses the entrywise max-modulus norm
//! `‖A‖_max = max_ij |A_ij|`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod random;

/// Complex scalar. Serialized as a two-element `[re, im]` array.
pub type Complex = num_complex::Complex64;

/// Tolerance on the norm of a quantum state.
pub const TOL_NORM: f64 = 1e-9;
/// Tolerance on probability sums.
pub const TOL_PROB: f64 = 1e-9;
/// Tolerance for unitarity and projector checks.
pub const TOL_OPERATOR: f64 = 1e-9;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Complex>>", into = "Vec<Vec<Complex>>")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a real matrix from row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Matrix::from_vec(rows, cols, data.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    pub fn from_rows(rows: Vec<Vec<Complex>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != m) {
            return Err(Error::Dimension(format!(
                "row {i} has {} entries, expected {m}",
                r.len()
            )));
        }
        Ok(Matrix {
            rows: n,
            cols: m,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: &[Complex]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    /// Outer product `|a⟩⟨b|`.
    pub fn outer(a: &StateVector, b: &StateVector) -> Self {
        let mut m = Matrix::zeros(a.dim(), b.dim());
        for (i, ai) in a.amplitudes().iter().enumerate() {
            for (j, bj) in b.amplitudes().iter().enumerate() {
                m.data[i * b.dim() + j] = ai * bj.conj();
            }
        }
        m
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

    pub fn get(&self, i: usize, j: usize) -> Complex {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Complex) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> StateVector {
        StateVector::new((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    /// Conjugate transpose `M†`.
    pub fn adjoint(&self) -> Self {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[j * self.rows + i] = self.get(i, j);
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Complex::conj).collect(),
        }
    }

    pub fn scale(&self, factor: Complex) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    /// Matrix product, checking inner dimensions.
    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a vector, checking dimensions.
    pub fn try_apply(&self, v: &StateVector) -> Result<StateVector> {
        if self.cols != v.dim() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} matrix to a vector of dimension {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        Ok(self.apply(v))
    }

    /// Applies the matrix to a vector. Panics on a dimension mismatch.
    pub fn apply(&self, v: &StateVector) -> StateVector {
        assert_eq!(self.cols, v.dim(), "matrix/vector dimension mismatch");
        let amps = v.amplitudes();
        StateVector::new(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(amps).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        tensor(self, rhs)
    }

    /// Entrywise max modulus of `self - other`. Panics on a shape mismatch.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.re.is_finite() && x.im.is_finite())
    }

    /// Block-diagonal direct sum of square blocks.
    pub fn direct_sum(blocks: &[Matrix]) -> Matrix {
        let rows: usize = blocks.iter().map(Matrix::rows).sum();
        let cols: usize = blocks.iter().map(Matrix::cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Indices of the unit diagonal entries, if the matrix is a 0/1 diagonal.
    pub(crate) fn diagonal_support(&self, tol: f64) -> Option<Vec<usize>> {
        if !self.is_square() {
            return None;
        }
        let mut support = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if i != j {
                    if x.norm() > tol {
                        return None;
                    }
                } else if (x - ONE).norm() <= tol {
                    support.push(i);
                } else if x.norm() > tol {
                    return None;
                }
            }
        }
        Some(support)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|c| format!("{:.4}{:+.4}i", c.re, c.im))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl TryFrom<Vec<Vec<Complex>>> for Matrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<Complex>>) -> Result<Self> {
        Matrix::from_rows(rows)
    }
}

impl From<Matrix> for Vec<Vec<Complex>> {
    fn from(m: Matrix) -> Self {
        (0..m.rows).map(|i| m.row(i).to_vec()).collect()
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// A vector in `C^n`. Quantum states are unit vectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StateVector {
    amplitudes: Vec<Complex>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex>) -> Self {
        StateVector { amplitudes }
    }

    pub fn from_real(amplitudes: &[f64]) -> Self {
        StateVector::new(amplitudes.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    /// Computational basis vector `|index⟩` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        StateVector { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex::norm_sqr).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex {
        assert_eq!(self.dim(), other.dim());
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Euclidean distance `‖self − other‖`.
    pub fn distance(&self, other: &StateVector) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, factor: Complex) -> Self {
        StateVector::new(self.amplitudes.iter().map(|a| a * factor).collect())
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        self.scale(Complex::new(1.0 / n, 0.0))
    }

    /// Kronecker product `|self⟩ ⊗ |other⟩`.
    pub fn tensor(&self, other: &StateVector) -> Self {
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                out.push(a * b);
            }
        }
        StateVector::new(out)
    }

    pub fn is_finite(&self) -> bool {
        self.amplitudes
            .iter()
            .all(|x| x.re.is_finite() && x.im.is_finite())
    }
}

/// Kronecker product `A ⊗ B`: block `(i, j)` of the result is `A_ij · B`.
pub fn tensor(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = Matrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a.get(i, j);
            if aij == ZERO {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out.set(i * b.rows + k, j * b.cols + l, aij * b.get(k, l));
                }
            }
        }
    }
    out
}

fn require_square(m: &Matrix) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        })
    }
}

/// `max(‖MM† − I‖_max, ‖M†M − I‖_max)`.
pub fn unitarity_defect(m: &Matrix) -> Result<f64> {
    require_square(m)?;
    let id = Matrix::identity(m.rows);
    let adj = m.adjoint();
    let left = (m * &adj).max_abs_diff(&id);
    let right = (&adj * m).max_abs_diff(&id);
    Ok(left.max(right))
}

/// `max(‖P − P†‖_max, ‖P² − P‖_max)`.
pub fn projector_defect(p: &Matrix) -> Result<f64> {
    require_square(p)?;
    let hermitian = p.max_abs_diff(&p.adjoint());
    let idempotent = (p * p).max_abs_diff(p);
    Ok(hermitian.max(idempotent))
}

pub fn is_unitary(m: &Matrix, tol: f64) -> Result<bool> {
    Ok(unitarity_defect(m)? <= tol)
}

pub fn is_projector(p: &Matrix, tol: f64) -> Result<bool> {
    Ok(projector_defect(p)? <= tol)
}

/// Outcome probabilities `‖P_i v‖²` of a projective measurement.
///
/// The family must consist of projectors that are pairwise orthogonal and sum
/// to the identity, and `v` must be a unit vector.
pub fn measure(family: &[Matrix], v: &StateVector) -> Result<Vec<f64>> {
    let Some(first) = family.first() else {
        return Err(Error::Measurement("empty family".into()));
    };
    let n = first.rows();
    if v.dim() != n {
        return Err(Error::Dimension(format!(
            "state of dimension {} measured by {n}x{n} projectors",
            v.dim()
        )));
    }
    let mut sum = Matrix::zeros(n, n);
    for (i, p) in family.iter().enumerate() {
        if p.rows() != n || p.cols() != n {
            return Err(Error::Measurement(format!("member {i} has the wrong shape")));
        }
        let defect = projector_defect(p)?;
        if defect > TOL_OPERATOR {
            return Err(Error::Measurement(format!(
                "member {i} is not a projector (defect {defect:.3e})"
            )));
        }
        sum = &sum + p;
    }
    let completeness = sum.max_abs_diff(&Matrix::identity(n));
    if completeness > TOL_OPERATOR {
        return Err(Error::Measurement(format!(
            "projectors do not sum to the identity (defect {completeness:.3e})"
        )));
    }
    for i in 0..family.len() {
        for j in (i + 1)..family.len() {
            let overlap = (&family[i] * &family[j]).max_norm();
            if overlap > TOL_OPERATOR {
                return Err(Error::Measurement(format!(
                    "members {i} and {j} are not orthogonal (defect {overlap:.3e})"
                )));
            }
        }
    }
    if (v.norm() - 1.0).abs() > TOL_NORM {
        return Err(Error::Measurement(format!(
            "state has norm {}, expected 1",
            v.norm()
        )));
    }
    Ok(family.iter().map(|p| p.apply(v).norm_sqr()).collect())
}

/// Upper bound `(1 + 2/θ)^{2n}` on the size of a θ-separated set of unit
/// vectors in `C^n`.
pub fn packing_bound(theta: f64, n: usize) -> Result<f64> {
    if theta.is_nan() || theta <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "separation must be positive, got {theta}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    Ok((1.0 + 2.0 / theta).powf(2.0 * n as f64))
}

/// Smallest `n` in `[min_power, max_power]` with `‖I − Uⁿ‖_max < eps`.
pub fn recurrence_search(
    u: &Matrix,
    eps: f64,
    min_power: usize,
    max_power: usize,
) -> Result<Option<usize>> {
    require_square(u)?;
    let id = Matrix::identity(u.rows());
    let mut power = id.clone();
    for n in 1..=max_power {
        power = &power * u;
        if n >= min_power && power.max_abs_diff(&id) < eps {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Orthonormal basis adapted to a projector: returns a unitary `W` whose first
/// `rank` columns span the range of `p` and whose remaining columns span its
/// kernel, so `W† P W` is `diag(1, …, 1, 0, …, 0)`.
pub fn projector_basis(p: &Matrix, tol: f64) -> Result<(Matrix, usize)> {
    require_square(p)?;
    let n = p.rows();
    let complement = &Matrix::identity(n) - p;
    let mut basis: Vec<StateVector> = Vec::with_capacity(n);
    let mut rank = 0;
    for (source, is_range) in [(p, true), (&complement, false)] {
        for j in 0..n {
            let mut v = source.column(j);
            // Two passes of modified Gram-Schmidt.
            for _ in 0..2 {
                for b in &basis {
                    let c = b.inner(&v);
                    v = StateVector::new(
                        v.amplitudes()
                            .iter()
                            .zip(b.amplitudes())
                            .map(|(x, y)| x - c * y)
                            .collect(),
                    );
                }
            }
            if v.norm() > tol.max(1e-7) {
                basis.push(v.normalized());
                if is_range {
                    rank += 1;
                }
            }
        }
    }
    if basis.len() != n {
        return Err(Error::Assertion(format!(
            "projector basis has {} vectors, expected {n}",
            basis.len()
        )));
    }
    let mut w = Matrix::zeros(n, n);
    for (j, b) in basis.iter().enumerate() {
        for (i, a) in b.amplitudes().iter().enumerate() {
            w.set(i, j, *a);
        }
    }
    Ok((w, rank))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli_x() -> Matrix {
        Matrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    fn rotation(theta: f64) -> Matrix {
        let (s, c) = theta.sin_cos();
        Matrix::from_real(2, 2, &[c, -s, s, c]).unwrap()
    }

    #[test]
    fn identity_tensor_identity() {
        assert_eq!(tensor(&Matrix::identity(2), &Matrix::identity(2)), Matrix::identity(4));
    }

    #[test]
    fn x_tensor_identity_is_block_antidiagonal() {
        let t = tensor(&pauli_x(), &Matrix::identity(2));
        let expected = Matrix::from_real(
            4,
            4,
            &[
                0.0, 0.0, 1.0, 0.0, //
                0.0, 0.0, 0.0, 1.0, //
                1.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0,
            ],
        )
        .unwrap();
        assert_eq!(t, expected);
    }

    #[test]
    fn unitarity_examples() {
        assert!(is_unitary(&Matrix::identity(3), 1e-9).unwrap());
        let shear = Matrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert!(!is_unitary(&shear, 1e-9).unwrap());
        // R Rᵀ for a rotation by 0.3 rad, computed entrywise.
        let r = rotation(0.3);
        let (s, c) = 0.3f64.sin_cos();
        assert!((c * c + s * s - 1.0).abs() < 1e-15);
        assert!(is_unitary(&r, 1e-9).unwrap());
    }

    #[test]
    fn non_square_rejected() {
        let m = Matrix::zeros(2, 3);
        assert_eq!(is_unitary(&m, 1e-9), Err(Error::NotSquare { rows: 2, cols: 3 }));
        assert!(is_projector(&m, 1e-9).is_err());
    }

    #[test]
    fn projector_examples() {
        let p0 = Matrix::outer(&StateVector::basis(2, 0), &StateVector::basis(2, 0));
        assert!(is_projector(&p0, 1e-9).unwrap());
        assert!(is_projector(&Matrix::identity(2), 1e-9).unwrap());
        // [[.5,.5],[.5,.5]]² = [[.5,.5],[.5,.5]] and it is real symmetric.
        let half = Matrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap();
        assert!(is_projector(&half, 1e-9).unwrap());
        assert!(!is_projector(&Matrix::from_real(2, 2, &[1.0, 1.0, 0.0, 0.0]).unwrap(), 1e-9).unwrap());
    }

    #[test]
    fn measurement_examples() {
        let e0 = StateVector::basis(2, 0);
        let e1 = StateVector::basis(2, 1);
        let family = [Matrix::outer(&e0, &e0), Matrix::outer(&e1, &e1)];
        let h = 1.0 / 2f64.sqrt();
        let plus = StateVector::from_real(&[h, h]);
        let probs = measure(&family, &plus).unwrap();
        assert!((probs[0] - 0.5).abs() < 1e-12 && (probs[1] - 0.5).abs() < 1e-12);

        let probs = measure(&[Matrix::identity(2)], &plus).unwrap();
        assert!((probs[0] - 1.0).abs() < 1e-12);

        // ‖|0⟩⟨0| (0.6, 0.8)‖² = 0.6² = 0.36
        let v = StateVector::from_real(&[0.6, 0.8]);
        let probs = measure(&family, &v).unwrap();
        assert!((probs[0] - 0.36).abs() < 1e-12);
    }

    #[test]
    fn measurement_rejects_bad_families() {
        let e0 = StateVector::basis(2, 0);
        let v = StateVector::basis(2, 0);
        let incomplete = [Matrix::outer(&e0, &e0)];
        assert!(matches!(measure(&incomplete, &v), Err(Error::Measurement(_))));
        let doubled = [Matrix::outer(&e0, &e0), Matrix::identity(2)];
        assert!(matches!(measure(&doubled, &v), Err(Error::Measurement(_))));
        let unnormalized = StateVector::from_real(&[1.0, 1.0]);
        assert!(measure(&[Matrix::identity(2)], &unnormalized).is_err());
    }

    #[test]
    fn packing_bound_values() {
        assert_eq!(packing_bound(1.0, 1).unwrap(), 9.0);
        assert_eq!(packing_bound(2.0, 1).unwrap(), 4.0);
        assert_eq!(packing_bound(0.5, 2).unwrap(), 625.0);
        assert!(packing_bound(0.0, 1).is_err());
        assert!(packing_bound(-1.0, 1).is_err());
    }

    #[test]
    fn recurrence_of_rational_rotation() {
        let r = rotation(2.0 * std::f64::consts::PI / 7.0);
        assert_eq!(recurrence_search(&r, 1e-9, 2, 100).unwrap(), Some(7));
    }

    #[test]
    fn projector_basis_diagonalizes() {
        let half = Matrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap();
        let (w, rank) = projector_basis(&half, 1e-9).unwrap();
        assert_eq!(rank, 1);
        assert!(is_unitary(&w, 1e-9).unwrap());
        let d = &(&w.adjoint() * &half) * &w;
        assert!(d.max_abs_diff(&Matrix::diagonal(&[ONE, ZERO])) < 1e-12);
    }

    #[test]
    fn serde_shape() {
        let m = Matrix::from_vec(1, 2, vec![Complex::new(1.0, -2.0), ZERO]).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, "[[[1.0,-2.0],[0.0,0.0]]]");
        let back: Matrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<Matrix>("[[[1,0]],[]]").is_err());
    }
}
