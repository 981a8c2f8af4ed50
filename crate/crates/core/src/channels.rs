//! Single-qubit noise channels in Kraus form and their product action on
//! two-qubit states.

use crate::error::{check_unit_interval, Result};
use crate::matcore::{kron, ComplexMatrix, C64};
use crate::states::DensityMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    Identity,
    AmplitudeDamping,
    GeneralizedAmplitudeDamping,
    Depolarizing,
}

/// A trace-preserving single-qubit channel `rho -> Σ K_i rho K_i†`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    kind: ChannelKind,
    /// Transition probability; unused by the depolarizing channel.
    p: f64,
    /// Excitation-loss probability (GAD) or depolarizing probability.
    r: f64,
    ops: Vec<ComplexMatrix>,
}

fn m2(a: f64, b: f64, c: f64, d: f64) -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[a, b, c, d]).expect("finite entries")
}

impl KrausChannel {
    pub fn identity() -> Self {
        Self {
            kind: ChannelKind::Identity,
            p: 0.0,
            r: 0.0,
            ops: vec![ComplexMatrix::identity(2).expect("static")],
        }
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    /// `Σ K_i† K_i`, which equals the identity for a trace-preserving set.
    pub fn completeness(&self) -> ComplexMatrix {
        self.ops
            .iter()
            .map(|k| k.dagger().mul(k).expect("2x2"))
            .fold(ComplexMatrix::zeros(2).expect("static"), |acc, t| {
                acc.add(&t).expect("2x2")
            })
    }

    /// Action on a single-qubit operator (not necessarily a state).
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        let mut acc = ComplexMatrix::zeros(rho.dim())?;
        for k in &self.ops {
            acc = acc.add(&k.sandwich(rho)?)?;
        }
        Ok(acc)
    }
}

/// Zero-temperature decay `|1> -> |0>` with probability `p`.
pub fn amplitude_damping(p: f64) -> Result<KrausChannel> {
    check_unit_interval("p", p)?;
    Ok(KrausChannel {
        kind: ChannelKind::AmplitudeDamping,
        p,
        r: 1.0,
        ops: vec![
            m2(1.0, 0.0, 0.0, (1.0 - p).sqrt()),
            m2(0.0, p.sqrt(), 0.0, 0.0),
        ],
    })
}

/// Finite-temperature damping: excitation is lost with probability `r`
/// and gained with probability `1 - r`.
pub fn generalized_amplitude_damping(p: f64, r: f64) -> Result<KrausChannel> {
    check_unit_interval("p", p)?;
    check_unit_interval("r", r)?;
    let (sr, sr_c) = (r.sqrt(), (1.0 - r).sqrt());
    let (sp, sp_c) = (p.sqrt(), (1.0 - p).sqrt());
    Ok(KrausChannel {
        kind: ChannelKind::GeneralizedAmplitudeDamping,
        p,
        r,
        ops: vec![
            m2(sr, 0.0, 0.0, sr * sp_c),
            m2(0.0, sr * sp, 0.0, 0.0),
            m2(sr_c * sp_c, 0.0, 0.0, sr_c),
            m2(0.0, 0.0, sr_c * sp, 0.0),
        ],
    })
}

/// Pauli depolarizing channel with total error probability `r`.
pub fn depolarizing(r: f64) -> Result<KrausChannel> {
    check_unit_interval("r", r)?;
    let w = C64::new((r / 3.0).sqrt(), 0.0);
    Ok(KrausChannel {
        kind: ChannelKind::Depolarizing,
        p: 0.0,
        r,
        ops: vec![
            ComplexMatrix::identity(2)?.scale_real((1.0 - r).sqrt()),
            ComplexMatrix::pauli_x().scale(w),
            ComplexMatrix::pauli_y().scale(w),
            ComplexMatrix::pauli_z().scale(w),
        ],
    })
}

/// `Σ_{i,j} (K_i ⊗ L_j) rho (K_i ⊗ L_j)†` over every Kraus pair of the two
/// channels, on an arbitrary 4×4 operator.
pub fn apply_local_operator(
    rho: &ComplexMatrix,
    channel_a: &KrausChannel,
    channel_b: &KrausChannel,
) -> Result<ComplexMatrix> {
    let mut acc = ComplexMatrix::zeros(4)?;
    for ka in &channel_a.ops {
        for kb in &channel_b.ops {
            acc = acc.add(&kron(ka, kb)?.sandwich(rho)?)?;
        }
    }
    Ok(acc)
}

/// Independent noise on each qubit of a two-qubit state.
pub fn apply_local(
    rho: &DensityMatrix,
    channel_a: &KrausChannel,
    channel_b: &KrausChannel,
) -> Result<DensityMatrix> {
    DensityMatrix::new(apply_local_operator(rho.matrix(), channel_a, channel_b)?)
}
