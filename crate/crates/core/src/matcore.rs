//! Dense complex matrices of dimension 2 (one qubit) and 4 (two qubits).
//!
//! Two-qubit operators use the computational basis `{|00>, |01>, |10>, |11>}`
//! with qubit A as the left Kronecker factor, so the basis index is
//! `2 * a + b`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Tolerance on `max |h - h†|` accepted by [`hermitian_eig`].
pub const HERMITIAN_TOL: f64 = 1e-10;

const JACOBI_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Which qubit of a two-qubit operator to keep when tracing out the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Row-major complex matrix of dimension 2 or 4.
#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: [C64; 16],
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self.get(i, j);
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 4 {
        Ok(())
    } else {
        Err(Error::InvalidDimension {
            expected: 4,
            got: dim,
        })
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries. Rejects non-finite values.
    pub fn new(dim: usize, entries: &[C64]) -> Result<Self> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::EntryCount {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        let mut data = [ZERO; 16];
        for (k, z) in entries.iter().enumerate() {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite {
                    row: k / dim,
                    col: k % dim,
                });
            }
            data[k] = *z;
        }
        Ok(Self { dim, data })
    }

    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        let z: Vec<C64> = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::new(dim, &z)
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: [ZERO; 16],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        Ok(m)
    }

    /// Real diagonal matrix; the dimension is the length of `diag`.
    pub fn diag(diag: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        let dim = m.dim;
        for (i, &d) in diag.iter().enumerate() {
            if !d.is_finite() {
                return Err(Error::NonFinite { row: i, col: i });
            }
            m.data[i * dim + i] = C64::new(d, 0.0);
        }
        Ok(m)
    }

    /// Outer product `|u><v|` of two vectors of equal length 2 or 4.
    pub fn outer(u: &[C64], v: &[C64]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch {
                left: u.len(),
                right: v.len(),
            });
        }
        let mut m = Self::zeros(u.len())?;
        let dim = m.dim;
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                m.data[i * dim + j] = ui * vj.conj();
            }
        }
        Ok(m)
    }

    pub fn pauli_x() -> Self {
        Self::from_real(2, &[0.0, 1.0, 1.0, 0.0]).expect("static")
    }

    pub fn pauli_y() -> Self {
        Self::new(2, &[ZERO, C64::new(0.0, -1.0), C64::new(0.0, 1.0), ZERO]).expect("static")
    }

    pub fn pauli_z() -> Self {
        Self::from_real(2, &[1.0, 0.0, 0.0, -1.0]).expect("static")
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub(crate) fn set(&mut self, row: usize, col: usize, value: C64) {
        self.data[row * self.dim + col] = value;
    }

    /// Row-major entries, `dim²` long.
    pub fn entries(&self) -> &[C64] {
        &self.data[..self.dim * self.dim]
    }

    pub fn is_finite(&self) -> bool {
        self.entries()
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut out = [ZERO; 16];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Ok(Self { dim: n, data: out })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut out = *self;
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut out = *self;
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = *self;
        for z in out.data.iter_mut() {
            *z *= s;
        }
        out
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut out = *self;
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = self.data[j * n + i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// `self * rho * self†`.
    pub fn sandwich(&self, rho: &Self) -> Result<Self> {
        self.mul(rho)?.mul(&self.dagger())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    /// `max |h - h†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                let d = (self.data[i * n + j] - self.data[j * n + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries()
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Kronecker product `a ⊗ b` of two single-qubit operators.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    for m in [a, b] {
        if m.dim != 2 {
            return Err(Error::InvalidDimension {
                expected: 2,
                got: m.dim,
            });
        }
    }
    let mut out = ComplexMatrix::zeros(4)?;
    for i in 0..2 {
        for j in 0..2 {
            let aij = a.get(i, j);
            for k in 0..2 {
                for l in 0..2 {
                    out.data[(2 * i + k) * 4 + 2 * j + l] = aij * b.get(k, l);
                }
            }
        }
    }
    Ok(out)
}

/// Reduced operator on the `keep` qubit.
pub fn partial_trace(rho: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix> {
    if rho.dim != 4 {
        return Err(Error::InvalidDimension {
            expected: 4,
            got: rho.dim,
        });
    }
    let mut out = ComplexMatrix::zeros(2)?;
    for x in 0..2 {
        for y in 0..2 {
            let mut acc = ZERO;
            for t in 0..2 {
                let (r, c) = match keep {
                    Subsystem::A => (2 * x + t, 2 * y + t),
                    Subsystem::B => (2 * t + x, 2 * t + y),
                };
                acc += rho.get(r, c);
            }
            out.data[x * 2 + y] = acc;
        }
    }
    Ok(out)
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianSpectrum {
    /// Sorted descending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianSpectrum {
    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        let n = self.eigenvectors.dim();
        (0..n).map(|i| self.eigenvectors.get(i, k)).collect()
    }

    /// `Σ λ_k v_k v_k†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvectors.dim();
        let mut out = ComplexMatrix::zeros(n).expect("dimension already checked");
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            for i in 0..n {
                let vi = self.eigenvectors.get(i, k);
                for j in 0..n {
                    let vj = self.eigenvectors.get(j, k);
                    out.data[i * n + j] += vi * vj.conj() * lambda;
                }
            }
        }
        out
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }
}

/// Full spectrum of a Hermitian 2×2 or 4×4 matrix.
///
/// 2×2 inputs use the closed form; 4×4 inputs use cyclic complex Jacobi
/// rotations until the off-diagonal Frobenius norm drops below
/// `1e-12 · max(1, ‖h‖_F)`.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<HermitianSpectrum> {
    if !h.is_finite() {
        return Err(Error::NonFinite { row: 0, col: 0 });
    }
    let defect = h.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian { defect });
    }
    let (values, vectors) = match h.dim {
        2 => eig2(h),
        _ => jacobi(h)?,
    };
    Ok(sort_descending(values, vectors))
}

fn eig2(h: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let a = h.get(0, 0).re;
    let d = h.get(1, 1).re;
    // Average the two off-diagonal entries so tiny anti-Hermitian noise cancels.
    let b = (h.get(0, 1) + h.get(1, 0).conj()) * 0.5;
    let mean = 0.5 * (a + d);
    let half_gap = 0.5 * (a - d);
    let radius = half_gap.hypot(b.norm());
    let (l0, l1) = (mean + radius, mean - radius);

    let mut v = ComplexMatrix::identity(2).expect("static");
    if b.norm() > 0.0 {
        // (b, l0 - a) solves (h - l0) v = 0 for the top eigenvalue; pick the
        // better conditioned of the two equivalent forms.
        let (x, y) = if half_gap >= 0.0 {
            (C64::new(l0 - d, 0.0), b.conj())
        } else {
            (b, C64::new(l0 - a, 0.0))
        };
        let norm = (x.norm_sqr() + y.norm_sqr()).sqrt();
        let (x, y) = (x / norm, y / norm);
        // Second column is orthogonal to the first.
        v.data = [ZERO; 16];
        v.data[0] = x;
        v.data[2] = y;
        v.data[1] = -y.conj();
        v.data[3] = x.conj();
    } else if d > a {
        v.data = [ZERO; 16];
        v.data[1] = ONE;
        v.data[2] = ONE;
    }
    (vec![l0, l1], v)
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.dim;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m.data[i * n + j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn jacobi(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = h.dim;
    let mut a = *h;
    // Symmetrize so the iteration runs on an exactly Hermitian matrix.
    for i in 0..n {
        a.data[i * n + i] = C64::new(a.data[i * n + i].re, 0.0);
        for j in (i + 1)..n {
            let avg = (h.data[i * n + j] + h.data[j * n + i].conj()) * 0.5;
            a.data[i * n + j] = avg;
            a.data[j * n + i] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n)?;
    let threshold = JACOBI_TOL * h.frobenius_norm().max(1.0);

    let mut residual = off_diagonal_norm(&a);
    let mut sweeps = 0;
    while residual >= threshold {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, residual });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        residual = off_diagonal_norm(&a);
    }
    let values = (0..n).map(|i| a.data[i * n + i].re).collect();
    Ok((values, v))
}

/// Zeroes `a[p][q]` with a unitary acting on columns `p`, `q`:
/// a phase on `q` makes the pivot real, then a real Jacobi rotation.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.dim;
    let g = a.data[p * n + q];
    let g_abs = g.norm();
    if g_abs < 1e-300 {
        return;
    }
    let phase = g / g_abs;
    let app = a.data[p * n + p].re;
    let aqq = a.data[q * n + q].re;
    let tau = (aqq - app) / (2.0 * g_abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // U restricted to (p, q): [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
    let phase_c = phase.conj();
    let u_pp = C64::new(c, 0.0);
    let u_pq = C64::new(s, 0.0);
    let u_qp = phase_c * (-s);
    let u_qq = phase_c * c;

    // a <- a U
    for i in 0..n {
        let aip = a.data[i * n + p];
        let aiq = a.data[i * n + q];
        a.data[i * n + p] = aip * u_pp + aiq * u_qp;
        a.data[i * n + q] = aip * u_pq + aiq * u_qq;
    }
    // a <- U† a
    for j in 0..n {
        let apj = a.data[p * n + j];
        let aqj = a.data[q * n + j];
        a.data[p * n + j] = u_pp.conj() * apj + u_qp.conj() * aqj;
        a.data[q * n + j] = u_pq.conj() * apj + u_qq.conj() * aqj;
    }
    a.data[p * n + q] = ZERO;
    a.data[q * n + p] = ZERO;
    a.data[p * n + p] = C64::new(a.data[p * n + p].re, 0.0);
    a.data[q * n + q] = C64::new(a.data[q * n + q].re, 0.0);

    // v <- v U
    for i in 0..n {
        let vip = v.data[i * n + p];
        let viq = v.data[i * n + q];
        v.data[i * n + p] = vip * u_pp + viq * u_qp;
        v.data[i * n + q] = vip * u_pq + viq * u_qq;
    }
}

fn sort_descending(values: Vec<f64>, vectors: ComplexMatrix) -> HermitianSpectrum {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let mut sorted = vectors;
    for (dst, &src) in order.iter().enumerate() {
        for row in 0..n {
            sorted.data[row * n + dst] = vectors.data[row * n + src];
        }
    }
    HermitianSpectrum {
        eigenvalues: order.iter().map(|&k| values[k]).collect(),
        eigenvectors: sorted,
    }
}
