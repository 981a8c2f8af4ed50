//! Two-qubit simulation of weak measurement, local decoherence and
//! measurement reversal, with the quantum-memory-assisted entropic
//! uncertainty lower bound (EULB) as the figure of merit.
//!
//! The pipeline for one evaluation:
//!
//! 1. weak measurement `diag(1, m1) ⊗ diag(1, m2)` on the initial state,
//! 2. independent Kraus noise on each qubit ([`channels`]),
//! 3. measurement reversal `diag(n1, 1) ⊗ diag(n2, 1)`,
//! 4. `EULB = log₂(1/c) + S(A|B)` on the result ([`entropy`]).
//!
//! [`optimize`] searches `(m, n1, n2)` with `m2 = 1` for the smallest bound.
//!
//! Basis ordering everywhere is `{|00>, |01>, |10>, |11>}` with qubit A as the
//! left tensor factor.

pub mod channels;
pub mod entropy;
pub mod error;
pub mod matcore;
pub mod optimize;
pub mod presets;
pub mod protocol;
pub mod scenario;
pub mod states;

pub use error::{Error, Result};
pub use matcore::{ComplexMatrix, C64};
pub use optimize::{OptimizationResult, OptimizerConfig, SearchSpace};
pub use scenario::{Scenario, ScenarioConfig};
pub use states::DensityMatrix;
