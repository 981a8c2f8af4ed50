//! Entropies in bits and the memory-assisted entropic uncertainty bound.

use crate::error::{Error, Result};
use crate::matcore::{hermitian_eig, partial_trace, Subsystem};
use crate::protocol::{project_measure, ObservablePair};
use crate::states::{DensityMatrix, PSD_FLOOR};

fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

/// `−tr(rho log₂ rho)`. Eigenvalues in `[−1e-9, 0)` count as zero.
pub fn von_neumann(rho: &DensityMatrix) -> Result<f64> {
    let spectrum = hermitian_eig(rho.matrix())?;
    let mut s = 0.0;
    for &lambda in &spectrum.eigenvalues {
        if lambda < PSD_FLOOR {
            return Err(Error::NotAState {
                reason: format!("eigenvalue {lambda:e} below {PSD_FLOOR:e}"),
            });
        }
        s += plogp(lambda);
    }
    Ok(s)
}

/// `S(A|B) = S(AB) − S(B)`.
pub fn conditional_entropy(rho_ab: &DensityMatrix) -> Result<f64> {
    let rho_b = DensityMatrix::new(partial_trace(rho_ab.matrix(), Subsystem::B)?)?;
    Ok(von_neumann(rho_ab)? - von_neumann(&rho_b)?)
}

/// Largest squared overlap between the eigenbases of the two observables.
pub fn complementarity(obs: &ObservablePair) -> f64 {
    let mut c: f64 = 0.0;
    for q in obs.q.vectors() {
        for r in obs.r.vectors() {
            let overlap = q[0].conj() * r[0] + q[1].conj() * r[1];
            c = c.max(overlap.norm_sqr());
        }
    }
    c
}

/// Entropic uncertainty lower bound `log₂(1/c) + S(A|B)`. Not clamped.
pub fn eulb(rho_ab: &DensityMatrix, obs: &ObservablePair) -> Result<f64> {
    Ok(-complementarity(obs).log2() + conditional_entropy(rho_ab)?)
}

/// `S(Q|B) + S(R|B)`: Bob's total uncertainty about Alice's outcomes.
pub fn uncertainty_lhs(rho_ab: &DensityMatrix, obs: &ObservablePair) -> Result<f64> {
    let sq = conditional_entropy(&project_measure(rho_ab, &obs.q)?)?;
    let sr = conditional_entropy(&project_measure(rho_ab, &obs.r)?)?;
    Ok(sq + sr)
}

/// Shannon entropy in bits of a probability vector.
pub fn shannon(probs: &[f64]) -> Result<f64> {
    if probs.is_empty() {
        return Err(Error::InvalidDistribution {
            reason: "empty".into(),
        });
    }
    if let Some(p) = probs.iter().find(|p| !(p.is_finite() && **p >= -1e-12)) {
        return Err(Error::InvalidDistribution {
            reason: format!("entry {p}"),
        });
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution {
            reason: format!("sums to {total}"),
        });
    }
    Ok(probs.iter().map(|&p| plogp(p)).sum())
}
