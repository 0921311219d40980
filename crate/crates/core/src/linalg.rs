//! Dense complex linear algebra for small multi-qubit systems.
//!
//! Everything here works on row-major [`ComplexMatrix`] values: Kronecker
//! products, conjugate transposes, partial traces over arbitrary subsystem
//! factorizations, and a cyclic-Jacobi Hermitian eigensolver. Matrices in
//! this crate never exceed 16x16, so all kernels are written for clarity
//! over asymptotic cleverness.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermiticity acceptance tolerance for eigensolver inputs.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Slack allowed below zero for eigenvalues of density matrices.
pub const POSITIVITY_SLACK: f64 = 1e-10;
/// Jacobi stops once the off-diagonal Frobenius norm falls below this
/// fraction of the total Frobenius norm.
pub const JACOBI_REL_TOL: f64 = 1e-14;
/// Maximum number of full Jacobi sweeps before giving up.
pub const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex matrix, row-major.
///
/// Square matrices carry quantum states and operators; the 4x2 horizon-mode
/// isometry is the one rectangular citizen.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl std::fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix must be non-empty");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from a row-major slice of entries.
    pub fn from_rows(rows: usize, cols: usize, entries: &[Complex64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Self {
            rows,
            cols,
            data: entries.to_vec(),
        }
    }

    /// Builds a square matrix from real row-major entries.
    pub fn from_real(n: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), n * n, "entry count mismatch");
        Self {
            rows: n,
            cols: n,
            data: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
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

    /// Side length of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Kronecker product `self (x) other`. The first factor owns the slower
    /// (most significant) index: basis order |00>, |01>, |10>, |11> for two
    /// qubits with `self` acting on the first.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i0 in 0..self.rows {
            for j0 in 0..self.cols {
                let a = self[(i0, j0)];
                for i1 in 0..other.rows {
                    for j1 in 0..other.cols {
                        out[(i0 * other.rows + i1, j0 * other.cols + j1)] = a * other[(i1, j1)];
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.clone();
        for z in &mut out.data {
            *z *= s;
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// tr(self^2), real for Hermitian inputs.
    pub fn purity(&self) -> f64 {
        assert!(self.is_square());
        let mut acc = ZERO;
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc += self[(i, j)] * self[(j, i)];
            }
        }
        acc.re
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry-wise modulus of the difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_asymmetry(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.max_asymmetry() <= tol
    }

    /// Checks the three density-matrix conditions: Hermitian, unit trace,
    /// spectrum bounded below by `-POSITIVITY_SLACK`.
    pub fn validate_density(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::InvalidDensity(format!(
                "{}x{} matrix is not square",
                self.rows, self.cols
            )));
        }
        if !self.is_hermitian(HERMITICITY_TOL) {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (max asymmetry {:.3e})",
                self.max_asymmetry()
            )));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
            return Err(Error::InvalidDensity(format!("trace {} != 1", tr)));
        }
        let spectrum = hermitian_eigenvalues(self, HERMITICITY_TOL)?;
        let min = spectrum.min();
        if min < -POSITIVITY_SLACK {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl std::ops::Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl std::ops::Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        out
    }
}

impl std::ops::Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        out
    }
}

/// Pauli matrices and friends.
pub mod pauli {
    use super::{Complex64, ComplexMatrix};

    pub fn identity2() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0])
    }

    pub fn sigma_y() -> ComplexMatrix {
        ComplexMatrix::from_rows(
            2,
            2,
            &[
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, 0.0),
            ],
        )
    }

    pub fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0])
    }
}

/// Kronecker product as a free function, for formula-shaped call sites.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.tensor(b)
}

/// Conjugate transpose as a free function.
pub fn dagger(a: &ComplexMatrix) -> ComplexMatrix {
    a.dagger()
}

/// Real eigenvalues sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSpectrum {
    values: Vec<f64>,
}

impl EigenSpectrum {
    /// Sorts the input ascending (stable, so exact ties keep their order).
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Copy with tiny negatives (within `slack`) clamped to zero. Used only
    /// when printing spectra; capacity arithmetic always takes raw values.
    pub fn clamped(&self, slack: f64) -> Vec<f64> {
        self.values
            .iter()
            .map(|&v| if v < 0.0 && v >= -slack { 0.0 } else { v })
            .collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.len(), other.len());
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<usize> for EigenSpectrum {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// The d-dimensional Hermitian problem is embedded into the 2d-dimensional
/// real symmetric matrix [[X, -Y], [Y, X]] for `a = X + iY`, which carries
/// every eigenvalue of `a` twice. Cyclic Jacobi sweeps (row-major pivot
/// order, so fully deterministic) run until the off-diagonal Frobenius norm
/// drops below [`JACOBI_REL_TOL`] times the total norm; the doubled spectrum
/// is then sorted and deduplicated by taking every other entry.
pub fn hermitian_eigenvalues(a: &ComplexMatrix, tol: f64) -> Result<EigenSpectrum> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "eigensolver needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let asym = a.max_asymmetry();
    if asym > tol {
        return Err(Error::NotHermitian {
            max_asymmetry: asym,
            tol,
        });
    }

    let d = a.dim();
    let n = 2 * d;
    // Real symmetric embedding; symmetrize the Hermitian input first so the
    // allowed asymmetry slack cannot leak into the real problem.
    let mut m = vec![0.0f64; n * n];
    for i in 0..d {
        for j in 0..d {
            let z = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            m[i * n + j] = z.re;
            m[(i + d) * n + j + d] = z.re;
            m[i * n + j + d] = -z.im;
            m[(i + d) * n + j] = z.im;
        }
    }

    let total_norm = m.iter().map(|x| x * x).sum::<f64>().sqrt();
    let doubled = jacobi_real_symmetric(&mut m, n, total_norm)?;

    let mut sorted = doubled;
    sorted.sort_by(f64::total_cmp);
    let values = sorted.into_iter().step_by(2).collect();
    Ok(EigenSpectrum { values })
}

/// Cyclic Jacobi on a real symmetric matrix stored row-major in `m`.
/// Returns the diagonal after convergence (unsorted).
fn jacobi_real_symmetric(m: &mut [f64], n: usize, total_norm: f64) -> Result<Vec<f64>> {
    let stop = JACOBI_REL_TOL * total_norm;

    let off_norm = |m: &[f64]| -> f64 {
        let mut acc = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                acc += 2.0 * m[i * n + j] * m[i * n + j];
            }
        }
        acc.sqrt()
    };

    if off_norm(m) <= stop {
        return Ok((0..n).map(|i| m[i * n + i]).collect());
    }

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                // Classic two-sided rotation choosing the smaller angle.
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
            }
        }
        if off_norm(m) <= stop {
            return Ok((0..n).map(|i| m[i * n + i]).collect());
        }
    }
    Err(Error::NoConvergence {
        sweeps: JACOBI_MAX_SWEEPS,
    })
}

/// Partial trace over the complement of `keep`.
///
/// `dims` factorizes the matrix into subsystems (slowest index first, same
/// convention as [`ComplexMatrix::tensor`]); `keep` lists the subsystems to
/// retain, in the order they should appear in the output.
pub fn partial_trace(rho: &ComplexMatrix, keep: &[usize], dims: &[usize]) -> Result<ComplexMatrix> {
    if !rho.is_square() {
        return Err(Error::Dimension(format!(
            "partial trace needs a square matrix, got {}x{}",
            rho.rows(),
            rho.cols()
        )));
    }
    let total: usize = dims.iter().product();
    if total != rho.dim() {
        return Err(Error::Dimension(format!(
            "subsystem dims {:?} multiply to {}, matrix is {}x{}",
            dims,
            total,
            rho.dim(),
            rho.dim()
        )));
    }
    let mut seen = vec![false; dims.len()];
    for &s in keep {
        if s >= dims.len() {
            return Err(Error::Dimension(format!(
                "keep index {} out of range for {} subsystems",
                s,
                dims.len()
            )));
        }
        if seen[s] {
            return Err(Error::Dimension(format!("keep index {s} repeated")));
        }
        seen[s] = true;
    }

    let traced: Vec<usize> = (0..dims.len()).filter(|s| !seen[*s]).collect();
    let keep_dim: usize = keep.iter().map(|&s| dims[s]).product();
    let trace_dim: usize = traced.iter().map(|&s| dims[s]).product();

    // Strides of each subsystem index inside the flat basis label.
    let mut strides = vec![1usize; dims.len()];
    for s in (0..dims.len().saturating_sub(1)).rev() {
        strides[s] = strides[s + 1] * dims[s + 1];
    }

    let unpack = |mut flat: usize, subs: &[usize]| -> usize {
        // Recombines `flat` (an index over `subs` in row-major order) into
        // a full-basis offset with zeros elsewhere.
        let mut offset = 0;
        for &s in subs.iter().rev() {
            offset += (flat % dims[s]) * strides[s];
            flat /= dims[s];
        }
        offset
    };

    let mut out = ComplexMatrix::zeros(keep_dim, keep_dim);
    for r in 0..keep_dim {
        let row_base = unpack(r, keep);
        for c in 0..keep_dim {
            let col_base = unpack(c, keep);
            let mut acc = ZERO;
            for t in 0..trace_dim {
                let diag = unpack(t, &traced);
                acc += rho[(row_base + diag, col_base + diag)];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(out)
}
