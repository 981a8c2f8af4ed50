//! Two-qubit initial-state families and density-matrix validation.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{check_unit_interval, Error, Result};
use crate::matcore::{hermitian_eig, kron, ComplexMatrix, C64};

pub const HERMITICITY_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
/// Smallest eigenvalue still accepted as numerically positive semidefinite.
pub const PSD_FLOOR: f64 = -1e-9;

const TETRAHEDRON_TOL: f64 = 1e-12;

/// A validated density matrix: Hermitian, unit trace and PSD within the
/// tolerances above.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let report = validate_density(&mat);
        if report.passed {
            Ok(Self(mat))
        } else {
            Err(Error::NotAState {
                reason: report.to_string(),
            })
        }
    }

    /// Pure state `|psi><psi|` from a normalized vector.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        Self::new(ComplexMatrix::outer(psi, psi)?)
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::new(ComplexMatrix::identity(dim)?.scale_real(1.0 / dim as f64))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// `tr(rho²)`.
    pub fn purity(&self) -> f64 {
        self.0.mul(&self.0).expect("square").trace().re
    }
}

impl AsRef<ComplexMatrix> for DensityMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// Outcome of checking a matrix against the density-matrix invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    pub hermiticity_defect: f64,
    pub trace_defect: f64,
    pub min_eigenvalue: f64,
    pub passed: bool,
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "hermiticity defect {:e}, trace defect {:e}, min eigenvalue {:e}",
            self.hermiticity_defect, self.trace_defect, self.min_eigenvalue
        )
    }
}

pub fn validate_density(mat: &ComplexMatrix) -> ValidationReport {
    let hermiticity_defect = if mat.is_finite() {
        mat.hermiticity_defect()
    } else {
        f64::INFINITY
    };
    let tr = mat.trace();
    let trace_defect = (tr - C64::new(1.0, 0.0)).norm();
    let min_eigenvalue = if hermiticity_defect <= HERMITICITY_TOL {
        hermitian_eig(mat)
            .map(|s| s.min_eigenvalue())
            .unwrap_or(f64::NAN)
    } else {
        f64::NAN
    };
    let passed = hermiticity_defect <= HERMITICITY_TOL
        && trace_defect <= TRACE_TOL
        && min_eigenvalue >= PSD_FLOOR;
    ValidationReport {
        hermiticity_defect,
        trace_defect,
        min_eigenvalue,
        passed,
    }
}

/// Correlation coefficients of a Bell-diagonal state
/// `¼(I⊗I + Σ c_i σ_i⊗σ_i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl BellDiagonalParams {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        for (name, c) in [("c1", c1), ("c2", c2), ("c3", c3)] {
            if !(c.is_finite() && (-1.0..=1.0).contains(&c)) {
                return Err(Error::ParameterOutOfRange {
                    name,
                    value: c,
                    range: "[-1, 1]",
                });
            }
        }
        let params = Self { c1, c2, c3 };
        let min = params
            .bell_eigenvalues()
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min < -TETRAHEDRON_TOL {
            return Err(Error::OutsideTetrahedron { eigenvalue: min });
        }
        Ok(params)
    }

    /// Weights on `(Φ⁺, Φ⁻, Ψ⁺, Ψ⁻)`.
    pub fn bell_eigenvalues(&self) -> [f64; 4] {
        let Self { c1, c2, c3 } = *self;
        [
            (1.0 + c1 - c2 + c3) / 4.0,
            (1.0 - c1 + c2 + c3) / 4.0,
            (1.0 + c1 + c2 - c3) / 4.0,
            (1.0 - c1 - c2 - c3) / 4.0,
        ]
    }

    /// One-parameter family `c = (1 − 2p, −p, −p)`, `p ∈ [0, 1]`.
    pub fn from_p(p: f64) -> Result<Self> {
        check_unit_interval("p", p)?;
        Self::new(1.0 - 2.0 * p, -p, -p)
    }
}

pub fn bell_diagonal(c: BellDiagonalParams) -> Result<DensityMatrix> {
    let paulis = [
        ComplexMatrix::pauli_x(),
        ComplexMatrix::pauli_y(),
        ComplexMatrix::pauli_z(),
    ];
    let mut acc = ComplexMatrix::identity(4)?;
    for (coef, s) in [c.c1, c.c2, c.c3].into_iter().zip(paulis.iter()) {
        acc = acc.add(&kron(s, s)?.scale_real(coef))?;
    }
    DensityMatrix::new(acc.scale_real(0.25))
}

pub fn bell_diagonal_p(p: f64) -> Result<DensityMatrix> {
    bell_diagonal(BellDiagonalParams::from_p(p)?)
}

/// Mixing weight of the X-state family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateParams {
    pub p: f64,
}

impl XStateParams {
    pub fn new(p: f64) -> Result<Self> {
        check_unit_interval("p", p)?;
        Ok(Self { p })
    }
}

/// `p |ψ⁺><ψ⁺| + (1 − p) |11><11|` with `|ψ⁺> = (|01> + |10>)/√2`.
pub fn x_state(params: XStateParams) -> Result<DensityMatrix> {
    let p = params.p;
    let mut m = ComplexMatrix::zeros(4)?;
    let half = C64::new(0.5 * p, 0.0);
    m.set(1, 1, half);
    m.set(1, 2, half);
    m.set(2, 1, half);
    m.set(2, 2, half);
    m.set(3, 3, C64::new(1.0 - p, 0.0));
    DensityMatrix::new(m)
}

/// Named two-qubit pure states used in tests and presets.
pub mod bell {
    use super::*;

    fn vec4(a: f64, b: f64, c: f64, d: f64) -> [C64; 4] {
        [a, b, c, d].map(|x| C64::new(x, 0.0))
    }

    pub fn psi_minus() -> [C64; 4] {
        vec4(0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0)
    }

    pub fn psi_plus() -> [C64; 4] {
        vec4(0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0)
    }

    pub fn phi_plus() -> [C64; 4] {
        vec4(FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2)
    }

    pub fn phi_minus() -> [C64; 4] {
        vec4(FRAC_1_SQRT_2, 0.0, 0.0, -FRAC_1_SQRT_2)
    }
}
