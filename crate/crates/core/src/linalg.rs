//! Small dense complex matrices, Hermitian operators and density matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::eigen;
use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Entrywise Hermiticity tolerance.
pub const TOL_HERM: f64 = 1e-10;
/// Eigenvalue floor for positive semidefiniteness.
pub const TOL_PSD: f64 = 1e-10;
/// Tolerance for scalar identities (relative to `max(1, |value|)`).
pub const TOL_STRUCT: f64 = 1e-9;

/// `|a - b| <= tol * max(1, |b|)`.
pub(crate) fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Matrix { dim, data }
    }

    /// Panics if the rows are ragged or not square.
    pub fn from_rows(rows: &[&[C64]]) -> Self {
        let dim = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == dim),
            "rows must form a square matrix"
        );
        Self::from_fn(dim, |i, j| rows[i][j])
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d = diag.len();
        Self::from_fn(d, |i, j| {
            if i == j {
                C64::new(diag[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// `|v><v|`.
    pub fn outer(v: &[C64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: C64) {
        self.data[i * self.dim + j] = z;
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Self {
        let (p, q) = (self.dim, other.dim);
        Self::from_fn(p * q, |r, c| {
            self.get(r / q, c / q) * other.get(r % q, c % q)
        })
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Matrix) -> C64 {
        let d = self.dim;
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..d {
            for k in 0..d {
                acc += self.get(i, k) * other.get(k, i);
            }
        }
        acc
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest `|a_ij - conj(a_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim);
        Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim);
        Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        let mut out = Matrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

/// Complex Hermitian matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator(Matrix);

impl HermitianOperator {
    /// Accepts `m` if it is finite and Hermitian within [`TOL_HERM`]; the
    /// stored matrix is the exact Hermitian part `(m + m†)/2`.
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let defect = m.hermiticity_defect();
        if defect > TOL_HERM {
            return Err(Error::NotHermitian(defect));
        }
        let herm = (&m + &m.adjoint()).scale(0.5);
        Ok(HermitianOperator(herm))
    }

    pub fn identity(dim: usize) -> Self {
        HermitianOperator(Matrix::identity(dim))
    }

    pub fn zeros(dim: usize) -> Self {
        HermitianOperator(Matrix::zeros(dim))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        HermitianOperator(Matrix::from_real_diagonal(diag))
    }

    /// `|v><v|` (not normalized).
    pub fn projector(v: &[C64]) -> Self {
        HermitianOperator(Matrix::outer(v))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    #[inline]
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn scale(&self, s: f64) -> Self {
        HermitianOperator(self.0.scale(s))
    }

    pub fn add(&self, other: &Self) -> Self {
        HermitianOperator(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        HermitianOperator(&self.0 - &other.0)
    }

    /// `self ⊗ other`, Hermitian whenever both factors are.
    pub fn kron(&self, other: &Self) -> Self {
        HermitianOperator(self.0.kron(&other.0))
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eigen::hermitian_eigenvalues(&self.0)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().first().copied().unwrap_or(0.0)
    }

    /// Coordinates in an orthonormal real basis of Hermitian matrices
    /// (diagonal entries, then `√2 Re` and `√2 Im` of the upper triangle),
    /// so that dot products equal `tr(AB)`.
    pub fn real_coordinates(&self) -> Vec<f64> {
        let d = self.dim();
        let mut out = Vec::with_capacity(d * d);
        for i in 0..d {
            out.push(self.0.get(i, i).re);
        }
        let r2 = core::f64::consts::SQRT_2;
        for i in 0..d {
            for j in (i + 1)..d {
                let z = self.0.get(i, j);
                out.push(r2 * z.re);
                out.push(r2 * z.im);
            }
        }
        out
    }
}

/// `tr(AB)` for Hermitian `A`, `B`.
pub fn hs_inner(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let t = a.0.trace_product(&b.0);
    debug_assert!(
        t.im.abs() <= TOL_STRUCT * t.re.abs().max(1.0),
        "imaginary trace residue {}",
        t.im
    );
    Ok(t.re)
}

/// `true` iff the smallest eigenvalue is at least `-tol`.
pub fn is_psd(a: &HermitianOperator, tol: f64) -> bool {
    a.min_eigenvalue() >= -tol
}

/// Unit-trace positive semidefinite operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(HermitianOperator);

impl DensityMatrix {
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let tr = op.trace();
        if !close(tr, 1.0, TOL_STRUCT) {
            return Err(Error::InvalidTrace(tr));
        }
        let min = op.min_eigenvalue();
        if min < -TOL_PSD {
            return Err(Error::NotPsd(min));
        }
        Ok(DensityMatrix(op))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix(HermitianOperator::identity(dim).scale(1.0 / dim as f64))
    }

    /// Pure state from a nonzero vector (normalized here).
    pub fn pure(v: &[C64]) -> Result<Self> {
        let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if !(norm_sq > 0.0) || !norm_sq.is_finite() {
            return Err(Error::NotNormalized {
                index: 0,
                norm: libm::sqrt(norm_sq),
            });
        }
        Ok(DensityMatrix(
            HermitianOperator::projector(v).scale(1.0 / norm_sq),
        ))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    #[inline]
    pub fn operator(&self) -> &HermitianOperator {
        &self.0
    }

    pub fn purity(&self) -> f64 {
        purity(self)
    }

    /// Bloch vector of a qubit state, `None` for `d != 2`.
    pub fn bloch(&self) -> Option<BlochVector> {
        density_to_bloch(self).ok()
    }
}

/// `tr(ρ²)`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.0 .0.trace_product(&rho.0 .0).re
}

/// Qubit Bloch vector.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BlochVector {
    pub rx: f64,
    pub ry: f64,
    pub rz: f64,
}

impl BlochVector {
    pub fn new(rx: f64, ry: f64, rz: f64) -> Self {
        BlochVector { rx, ry, rz }
    }

    pub fn norm_sq(&self) -> f64 {
        self.rx * self.rx + self.ry * self.ry + self.rz * self.rz
    }
}

/// `ρ = (I + rx σx + ry σy + rz σz) / 2`.
pub fn bloch_to_density(b: BlochVector) -> Result<DensityMatrix> {
    if ![b.rx, b.ry, b.rz].iter().all(|x| x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let r2 = b.norm_sq();
    if r2 > 1.0 + TOL_STRUCT {
        return Err(Error::InvalidBloch(libm::sqrt(r2)));
    }
    let m = Matrix::from_rows(&[
        &[
            C64::new(0.5 * (1.0 + b.rz), 0.0),
            C64::new(0.5 * b.rx, -0.5 * b.ry),
        ],
        &[
            C64::new(0.5 * b.rx, 0.5 * b.ry),
            C64::new(0.5 * (1.0 - b.rz), 0.0),
        ],
    ]);
    Ok(DensityMatrix(HermitianOperator(m)))
}

/// Inverse of [`bloch_to_density`]; `r_k = tr(ρ σ_k)`.
pub fn density_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch(rho.dim(), 2));
    }
    let m = rho.0.matrix();
    let off = m.get(1, 0);
    Ok(BlochVector {
        rx: 2.0 * off.re,
        ry: 2.0 * off.im,
        rz: (m.get(0, 0) - m.get(1, 1)).re,
    })
}

/// Swap `W`, symmetric projector and antisymmetric projector on `H_d ⊗ H_d`.
pub fn swap_and_sym_projectors(
    d: usize,
) -> (HermitianOperator, HermitianOperator, HermitianOperator) {
    let dd = d * d;
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    // W |i>|j> = |j>|i>: row index (j, i) gets column index (i, j).
    let w = Matrix::from_fn(dd, |r, c| {
        let (i, j) = (c / d, c % d);
        if r == j * d + i {
            one
        } else {
            zero
        }
    });
    let id = Matrix::identity(dd);
    let sym = (&id + &w).scale(0.5);
    let asym = (&id - &w).scale(0.5);
    (
        HermitianOperator(w),
        HermitianOperator(sym),
        HermitianOperator(asym),
    )
}
