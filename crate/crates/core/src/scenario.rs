//! Experiment descriptions: initial state, noise, measured observables,
//! search space and optimizer settings.
//!
//! [`ScenarioConfig`] is the serializable form (TOML on disk, unknown keys
//! rejected); [`Scenario`] is the validated, ready-to-evaluate form.

use serde::{Deserialize, Serialize};

use crate::channels::{
    amplitude_damping, depolarizing, generalized_amplitude_damping, KrausChannel,
};
use crate::error::{Error, Result};
use crate::optimize::{OptimizerConfig, SearchSpace};
use crate::protocol::{ObservablePair, QubitBasis};
use crate::states::{
    bell_diagonal, bell_diagonal_p, x_state, BellDiagonalParams, DensityMatrix, XStateParams,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialStateConfig {
    BellDiagonalP { p: f64 },
    BellDiagonalC { c: [f64; 3] },
    XState { p: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ChannelConfig {
    Gad {
        p_a: f64,
        r_a: f64,
        p_b: f64,
        r_b: f64,
    },
    Depolarizing {
        r_a: f64,
        r_b: f64,
    },
    Ad {
        p_a: f64,
        p_b: f64,
    },
    // Braces rather than a unit variant: serde ignores `deny_unknown_fields`
    // for unit variants of an internally tagged enum.
    Identity {},
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedBasis {
    SigmaX,
    SigmaY,
    SigmaZ,
}

/// Either a Pauli eigenbasis by name or the spin basis along the Bloch
/// direction `(theta, phi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BasisConfig {
    Named(NamedBasis),
    Angles(BlochAngles),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlochAngles {
    pub theta: f64,
    #[serde(default)]
    pub phi: f64,
}

impl BasisConfig {
    pub fn to_basis(self) -> Result<QubitBasis> {
        Ok(match self {
            BasisConfig::Named(NamedBasis::SigmaX) => QubitBasis::sigma_x(),
            BasisConfig::Named(NamedBasis::SigmaY) => QubitBasis::sigma_y(),
            BasisConfig::Named(NamedBasis::SigmaZ) => QubitBasis::sigma_z(),
            BasisConfig::Angles(BlochAngles { theta, phi }) => {
                if !(theta.is_finite() && phi.is_finite()) {
                    return Err(Error::Config("observables: non-finite Bloch angle".into()));
                }
                QubitBasis::rotated(theta, phi)
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservablesConfig {
    pub q: BasisConfig,
    pub r: BasisConfig,
}

impl Default for ObservablesConfig {
    fn default() -> Self {
        Self {
            q: BasisConfig::Named(NamedBasis::SigmaX),
            r: BasisConfig::Named(NamedBasis::SigmaZ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub initial_state: InitialStateConfig,
    pub channel: ChannelConfig,
    #[serde(default)]
    pub observables: ObservablesConfig,
    #[serde(default)]
    pub search: SearchSpace,
    #[serde(default)]
    pub optimizer: OptimizerConfig,
}

fn at_key<T>(key: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Config(format!("{key}: {e}")))
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always representable as TOML")
    }

    /// Checks every parameter range without building the scenario.
    pub fn validate(&self) -> Result<()> {
        self.build().map(|_| ())
    }

    pub fn build(&self) -> Result<Scenario> {
        let initial = match &self.initial_state {
            InitialStateConfig::BellDiagonalP { p } => {
                at_key("initial_state.p", bell_diagonal_p(*p))?
            }
            InitialStateConfig::BellDiagonalC { c } => at_key(
                "initial_state.c",
                BellDiagonalParams::new(c[0], c[1], c[2]).and_then(bell_diagonal),
            )?,
            InitialStateConfig::XState { p } => {
                at_key("initial_state.p", XStateParams::new(*p).and_then(x_state))?
            }
        };
        let (channel_a, channel_b) = match self.channel {
            ChannelConfig::Gad { p_a, r_a, p_b, r_b } => (
                at_key("channel.p_a/r_a", generalized_amplitude_damping(p_a, r_a))?,
                at_key("channel.p_b/r_b", generalized_amplitude_damping(p_b, r_b))?,
            ),
            ChannelConfig::Depolarizing { r_a, r_b } => (
                at_key("channel.r_a", depolarizing(r_a))?,
                at_key("channel.r_b", depolarizing(r_b))?,
            ),
            ChannelConfig::Ad { p_a, p_b } => (
                at_key("channel.p_a", amplitude_damping(p_a))?,
                at_key("channel.p_b", amplitude_damping(p_b))?,
            ),
            ChannelConfig::Identity {} => (KrausChannel::identity(), KrausChannel::identity()),
        };
        let observables = ObservablePair {
            q: at_key("observables.q", self.observables.q.to_basis())?,
            r: at_key("observables.r", self.observables.r.to_basis())?,
        };
        at_key("search", self.search.validate())?;
        at_key("optimizer", self.optimizer.validate())?;
        Ok(Scenario {
            initial,
            channel_a,
            channel_b,
            observables,
        })
    }
}

/// Everything the objective needs: the state before filtering, the noise on
/// each qubit, and the measured observables.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub initial: DensityMatrix,
    pub channel_a: KrausChannel,
    pub channel_b: KrausChannel,
    pub observables: ObservablePair,
}

impl Scenario {
    pub fn new(
        initial: DensityMatrix,
        channel_a: KrausChannel,
        channel_b: KrausChannel,
        observables: ObservablePair,
    ) -> Self {
        Self {
            initial,
            channel_a,
            channel_b,
            observables,
        }
    }
}
