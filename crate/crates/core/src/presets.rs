//! Built-in figure scenarios and the table of reference values they are
//! compared against.
//!
//! Figures whose caption and body text disagree ship two presets labelled
//! `caption` and `text`; the others ship a single `main` preset.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::scenario::ScenarioConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Preset {
    pub figure: &'static str,
    pub variant: &'static str,
    pub toml: &'static str,
}

impl Preset {
    pub fn config(&self) -> ScenarioConfig {
        ScenarioConfig::from_toml(self.toml).expect("built-in presets are valid")
    }

    /// `fig3_caption`-style identifier.
    pub fn id(&self) -> String {
        format!("{}_{}", self.figure, self.variant)
    }
}

macro_rules! preset {
    ($fig:literal, $variant:literal) => {
        Preset {
            figure: $fig,
            variant: $variant,
            toml: include_str!(concat!("../presets/", $fig, "_", $variant, ".toml")),
        }
    };
}

pub const PRESETS: &[Preset] = &[
    preset!("fig2", "main"),
    preset!("fig3", "caption"),
    preset!("fig3", "text"),
    preset!("fig4", "caption"),
    preset!("fig4", "text"),
    preset!("fig5", "main"),
    preset!("fig6", "main"),
    preset!("fig7", "main"),
    preset!("fig8", "main"),
    preset!("fig9", "text"),
    preset!("fig9", "caption"),
];

pub const FIGURES: &[&str] = &[
    "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9",
];

pub fn presets_for(figure: &str) -> Result<Vec<Preset>> {
    let found: Vec<Preset> = PRESETS
        .iter()
        .copied()
        .filter(|p| p.figure == figure)
        .collect();
    if found.is_empty() {
        Err(Error::Config(format!(
            "unknown figure `{figure}`; valid ids: {}",
            FIGURES.join(", ")
        )))
    } else {
        Ok(found)
    }
}

pub fn preset(figure: &str, variant: &str) -> Option<Preset> {
    PRESETS
        .iter()
        .copied()
        .find(|p| p.figure == figure && p.variant == variant)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Baseline,
    Minimum,
}

impl Quantity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Quantity::Baseline => "baseline",
            Quantity::Minimum => "minimum",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub figure: String,
    pub variants: Vec<String>,
    pub quantity: Quantity,
    pub value: f64,
    pub tolerance: f64,
    #[serde(default)]
    pub advisory_tolerance: Option<f64>,
}

impl Expectation {
    pub fn passes(&self, computed: f64) -> bool {
        (computed - self.value).abs() <= self.tolerance
    }

    pub fn passes_advisory(&self, computed: f64) -> Option<bool> {
        self.advisory_tolerance
            .map(|tol| (computed - self.value).abs() <= tol)
    }

    pub fn applies_to(&self, figure: &str, variant: &str) -> bool {
        self.figure == figure && self.variants.iter().any(|v| v == variant)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectationTable {
    pub expectation: Vec<Expectation>,
}

pub const DEFAULT_EXPECTATIONS: &str = include_str!("../data/expectations.toml");

impl ExpectationTable {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(format!("expectation table: {e}")))
    }

    pub fn builtin() -> Self {
        Self::from_toml(DEFAULT_EXPECTATIONS).expect("built-in table parses")
    }

    pub fn lookup(&self, figure: &str, variant: &str, quantity: Quantity) -> Option<&Expectation> {
        self.expectation
            .iter()
            .find(|e| e.quantity == quantity && e.applies_to(figure, variant))
    }
}
