//! Weak measurement before the noise, measurement reversal after it, and
//! Alice's projective measurement on qubit A.

use crate::channels::{apply_local, KrausChannel};
use crate::error::{check_non_negative, Error, Result};
use crate::matcore::{kron, ComplexMatrix, C64};
use crate::states::DensityMatrix;

/// Below this (after rescaling the filter to unit max entry) the filtered
/// state is treated as annihilated.
pub const ANNIHILATION_TOL: f64 = 1e-12;

const ORTHONORMAL_TOL: f64 = 1e-12;

/// Local filter strengths. `m*` are weak-measurement strengths and `n*`
/// reversal strengths, qubit A then qubit B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterParams {
    pub m1: f64,
    pub m2: f64,
    pub n1: f64,
    pub n2: f64,
}

impl FilterParams {
    pub fn new(m1: f64, m2: f64, n1: f64, n2: f64) -> Result<Self> {
        check_non_negative("m1", m1)?;
        check_non_negative("m2", m2)?;
        check_non_negative("n1", n1)?;
        check_non_negative("n2", n2)?;
        Ok(Self { m1, m2, n1, n2 })
    }

    /// All four filters are the identity.
    pub fn identity() -> Self {
        Self {
            m1: 1.0,
            m2: 1.0,
            n1: 1.0,
            n2: 1.0,
        }
    }
}

/// Orthonormal basis of one qubit: the eigenstates of a measured observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitBasis {
    vectors: [[C64; 2]; 2],
}

impl QubitBasis {
    pub fn new(first: [C64; 2], second: [C64; 2]) -> Result<Self> {
        let inner = |u: &[C64; 2], v: &[C64; 2]| u[0].conj() * v[0] + u[1].conj() * v[1];
        let defect = [
            (inner(&first, &first) - 1.0).norm(),
            (inner(&second, &second) - 1.0).norm(),
            inner(&first, &second).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        if defect.is_nan() || defect > ORTHONORMAL_TOL {
            return Err(Error::NonOrthonormalBasis { defect });
        }
        Ok(Self {
            vectors: [first, second],
        })
    }

    pub fn sigma_z() -> Self {
        Self::rotated(0.0, 0.0)
    }

    pub fn sigma_x() -> Self {
        Self::rotated(std::f64::consts::FRAC_PI_2, 0.0)
    }

    pub fn sigma_y() -> Self {
        Self::rotated(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2)
    }

    /// Eigenbasis of the spin along the Bloch direction `(theta, phi)`.
    pub fn rotated(theta: f64, phi: f64) -> Self {
        let (c, s) = ((0.5 * theta).cos(), (0.5 * theta).sin());
        let e = C64::from_polar(1.0, phi);
        Self {
            vectors: [[C64::new(c, 0.0), e * s], [C64::new(-s, 0.0), e * c]],
        }
    }

    pub fn vectors(&self) -> &[[C64; 2]; 2] {
        &self.vectors
    }

    /// `|o_i><o_i|` for both basis states.
    pub fn projectors(&self) -> [ComplexMatrix; 2] {
        self.vectors
            .map(|v| ComplexMatrix::outer(&v, &v).expect("2-vectors"))
    }
}

/// The two observables Alice measures, given by their eigenbases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservablePair {
    pub q: QubitBasis,
    pub r: QubitBasis,
}

impl Default for ObservablePair {
    fn default() -> Self {
        Self {
            q: QubitBasis::sigma_x(),
            r: QubitBasis::sigma_z(),
        }
    }
}

/// Intermediate states of one run through the filter / noise / reversal
/// sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineReport {
    pub state_after_weak: DensityMatrix,
    pub state_after_noise: DensityMatrix,
    pub state_after_reversal: DensityMatrix,
    pub weak_success_prob: f64,
    pub reversal_success_prob: f64,
}

/// `diag(1, m) ⊗ diag(1, m2)` = `diag(1, m2, m1, m1·m2)`.
pub fn weak_filter(m1: f64, m2: f64) -> Result<ComplexMatrix> {
    check_non_negative("m1", m1)?;
    check_non_negative("m2", m2)?;
    kron(
        &ComplexMatrix::diag(&[1.0, m1])?,
        &ComplexMatrix::diag(&[1.0, m2])?,
    )
}

/// `diag(n1, 1) ⊗ diag(n2, 1)` = `diag(n1·n2, n1, n2, 1)`.
pub fn reversal_filter(n1: f64, n2: f64) -> Result<ComplexMatrix> {
    check_non_negative("n1", n1)?;
    check_non_negative("n2", n2)?;
    kron(
        &ComplexMatrix::diag(&[n1, 1.0])?,
        &ComplexMatrix::diag(&[n2, 1.0])?,
    )
}

/// Applies `F rho F† / tr(F rho F†)`; also returns `tr(F rho F†)`.
///
/// `F` is rescaled to unit max entry first, so strengths far from 1 do not
/// overflow; the annihilation check runs on the rescaled norm.
pub fn apply_filter(rho: &DensityMatrix, filter: &ComplexMatrix) -> Result<(DensityMatrix, f64)> {
    if !filter.is_finite() {
        return Err(Error::NonFinite { row: 0, col: 0 });
    }
    let scale = filter.max_abs();
    if scale == 0.0 {
        return Err(Error::FilterAnnihilation { norm: 0.0 });
    }
    let f = filter.scale_real(1.0 / scale);
    let num = f.sandwich(rho.matrix())?;
    let norm = num.trace().re;
    if norm.is_nan() || norm < ANNIHILATION_TOL {
        return Err(Error::FilterAnnihilation {
            norm: norm * scale * scale,
        });
    }
    let state = DensityMatrix::new(num.scale_real(1.0 / norm))?;
    Ok((state, norm * scale * scale))
}

pub fn run_pipeline(
    rho0: &DensityMatrix,
    filters: &FilterParams,
    channel_a: &KrausChannel,
    channel_b: &KrausChannel,
) -> Result<PipelineReport> {
    let (state_after_weak, weak_success_prob) =
        apply_filter(rho0, &weak_filter(filters.m1, filters.m2)?)?;
    let state_after_noise = apply_local(&state_after_weak, channel_a, channel_b)?;
    let (state_after_reversal, reversal_success_prob) = apply_filter(
        &state_after_noise,
        &reversal_filter(filters.n1, filters.n2)?,
    )?;
    Ok(PipelineReport {
        state_after_weak,
        state_after_noise,
        state_after_reversal,
        weak_success_prob,
        reversal_success_prob,
    })
}

/// Non-selective projective measurement of qubit A in `basis`.
pub fn project_measure(rho: &DensityMatrix, basis: &QubitBasis) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::InvalidDimension {
            expected: 4,
            got: rho.dim(),
        });
    }
    let id = ComplexMatrix::identity(2)?;
    let mut acc = ComplexMatrix::zeros(4)?;
    for p in basis.projectors() {
        acc = acc.add(&kron(&p, &id)?.sandwich(rho.matrix())?)?;
    }
    DensityMatrix::new(acc)
}
