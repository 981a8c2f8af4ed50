//! Minimization of the uncertainty bound over the filter strengths
//! `(m, n1, n2)` with the weak measurement on qubit B switched off (`m2 = 1`).
//!
//! The search runs in mixed coordinates: `m` on a linear scale, `n1` and `n2`
//! as `log10`. [`evolve`] is a seeded genetic algorithm; [`grid_oracle`] is an
//! exhaustive lattice search used to cross-check it.
//!
//! All random draws happen in the sequential part of a generation. Objective
//! evaluations run on the rayon pool and are collected in order, so results
//! do not depend on thread count.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy::eulb;
use crate::error::{Error, Result};
use crate::protocol::{run_pipeline, FilterParams};
use crate::scenario::Scenario;

/// Blend-crossover expansion factor (BLX-α).
const BLEND_ALPHA: f64 = 0.5;
/// Per-coordinate mutation probability.
const MUTATION_RATE: f64 = 1.0 / 3.0;
const CONVERGENCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SearchSpace {
    /// Weak-measurement strength, linear scale.
    pub m_range: [f64; 2],
    /// Reversal strength on A, log scale.
    pub n1_range: [f64; 2],
    /// Reversal strength on B, log scale.
    pub n2_range: [f64; 2],
}

impl Default for SearchSpace {
    fn default() -> Self {
        Self {
            m_range: [0.0, 3.0],
            n1_range: [1e-9, 1e5],
            n2_range: [1e-9, 1e5],
        }
    }
}

impl SearchSpace {
    pub fn validate(&self) -> Result<()> {
        let [lo, hi] = self.m_range;
        if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && lo <= hi) {
            return Err(Error::Config(format!(
                "m_range [{lo}, {hi}] is not a non-negative interval"
            )));
        }
        for (name, [lo, hi]) in [("n1_range", self.n1_range), ("n2_range", self.n2_range)] {
            if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
                return Err(Error::Config(format!(
                    "{name} [{lo}, {hi}] needs a strictly positive lower bound"
                )));
            }
        }
        Ok(())
    }

    fn bounds(&self) -> Bounds {
        [
            (self.m_range[0], self.m_range[1]),
            (self.n1_range[0].log10(), self.n1_range[1].log10()),
            (self.n2_range[0].log10(), self.n2_range[1].log10()),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptimizerConfig {
    pub population: usize,
    pub generations: usize,
    pub seed: u64,
    pub elite_fraction: f64,
    /// Standard deviation of the Gaussian mutation, in search coordinates
    /// (absolute for `m`, decades for `n1`/`n2`).
    pub mutation_scale: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            population: 64,
            generations: 200,
            seed: 0,
            elite_fraction: 0.1,
            mutation_scale: 0.1,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population < 4 {
            return Err(Error::Config(format!("population {} < 4", self.population)));
        }
        if self.generations < 1 {
            return Err(Error::Config("generations must be at least 1".into()));
        }
        if !(self.elite_fraction.is_finite() && (0.0..1.0).contains(&self.elite_fraction)) {
            return Err(Error::Config(format!(
                "elite_fraction {} outside [0, 1)",
                self.elite_fraction
            )));
        }
        if !(self.mutation_scale.is_finite() && self.mutation_scale >= 0.0) {
            return Err(Error::Config(format!(
                "mutation_scale {} must be >= 0",
                self.mutation_scale
            )));
        }
        Ok(())
    }

    fn elite_count(&self) -> usize {
        ((self.elite_fraction * self.population as f64).round() as usize)
            .clamp(1, self.population - 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub m: f64,
    pub n1: f64,
    pub n2: f64,
    pub eulb_min: f64,
    /// Bound with every filter switched off (`m = n1 = n2 = 1`).
    pub baseline: f64,
    pub evaluations: usize,
    pub converged: bool,
    /// Best objective value after each generation (one entry for a lattice search).
    pub best_history: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub m: f64,
    pub n1: f64,
    pub n2: f64,
    pub eulb: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub baseline: f64,
    pub points: Vec<SweepPoint>,
}

/// Bound after the full filter / noise / reversal sequence with
/// `(m1, m2, n1, n2) = (m, 1, n1, n2)`. Any failure, including filter
/// annihilation, maps to `+∞`.
pub fn objective(scenario: &Scenario, m: f64, n1: f64, n2: f64) -> f64 {
    let value = FilterParams::new(m, 1.0, n1, n2)
        .and_then(|f| {
            run_pipeline(
                &scenario.initial,
                &f,
                &scenario.channel_a,
                &scenario.channel_b,
            )
        })
        .and_then(|rep| eulb(&rep.state_after_reversal, &scenario.observables));
    match value {
        Ok(v) if v.is_finite() => v,
        _ => f64::INFINITY,
    }
}

pub fn baseline(scenario: &Scenario) -> f64 {
    objective(scenario, 1.0, 1.0, 1.0)
}

type Coords = [f64; 3];
type Bounds = [(f64, f64); 3];

fn to_params(x: &Coords) -> (f64, f64, f64) {
    (x[0], 10f64.powf(x[1]), 10f64.powf(x[2]))
}

fn evaluate(scenario: &Scenario, x: &Coords) -> f64 {
    let (m, n1, n2) = to_params(x);
    objective(scenario, m, n1, n2)
}

fn evaluate_all(scenario: &Scenario, xs: &[Coords]) -> Vec<f64> {
    xs.par_iter().map(|x| evaluate(scenario, x)).collect()
}

/// Lower value first; ties go to the lexicographically smaller point.
fn candidate_order(a: &(Coords, f64), b: &(Coords, f64)) -> Ordering {
    a.1.total_cmp(&b.1).then_with(|| {
        a.0.iter()
            .zip(b.0.iter())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

fn clamp_to(x: &mut Coords, bounds: &Bounds) {
    for (v, &(lo, hi)) in x.iter_mut().zip(bounds.iter()) {
        *v = v.clamp(lo, hi);
    }
}

/// Index drawn with weight `n - i` for rank `i` (best first).
fn rank_select(rng: &mut ChaCha8Rng, n: usize) -> usize {
    let total = n * (n + 1) / 2;
    let mut ticket = rng.random_range(0..total);
    for i in 0..n {
        let w = n - i;
        if ticket < w {
            return i;
        }
        ticket -= w;
    }
    n - 1
}

fn genetic_search(
    scenario: &Scenario,
    bounds: &Bounds,
    cfg: &OptimizerConfig,
    seed: u64,
) -> (Coords, f64, usize, bool, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = cfg.population;

    // The unfiltered point (1, 1, 1) seeds the population.
    let mut seed_point = [1.0, 0.0, 0.0];
    clamp_to(&mut seed_point, bounds);
    let mut xs: Vec<Coords> = vec![seed_point];
    while xs.len() < n {
        let mut x = [0.0; 3];
        for (v, &(lo, hi)) in x.iter_mut().zip(bounds.iter()) {
            *v = if hi > lo {
                rng.random_range(lo..=hi)
            } else {
                lo
            };
        }
        xs.push(x);
    }
    let values = evaluate_all(scenario, &xs);
    let mut evaluations = xs.len();
    let mut pop: Vec<(Coords, f64)> = xs.into_iter().zip(values).collect();
    pop.sort_by(candidate_order);

    let elites = cfg.elite_count();
    let mut history = Vec::with_capacity(cfg.generations);
    for _ in 0..cfg.generations {
        let mut children: Vec<Coords> = Vec::with_capacity(n - elites);
        while children.len() < n - elites {
            let a = pop[rank_select(&mut rng, n)].0;
            let b = pop[rank_select(&mut rng, n)].0;
            let mut child = [0.0; 3];
            for k in 0..3 {
                let (lo, hi) = (a[k].min(b[k]), a[k].max(b[k]));
                let spread = BLEND_ALPHA * (hi - lo);
                child[k] = if hi - lo > 0.0 {
                    rng.random_range((lo - spread)..=(hi + spread))
                } else {
                    lo
                };
                if rng.random_bool(MUTATION_RATE) {
                    let z: f64 = rng.sample(StandardNormal);
                    child[k] += cfg.mutation_scale * z;
                }
            }
            clamp_to(&mut child, bounds);
            children.push(child);
        }
        let values = evaluate_all(scenario, &children);
        evaluations += children.len();
        pop.truncate(elites);
        pop.extend(children.into_iter().zip(values));
        pop.sort_by(candidate_order);
        history.push(pop[0].1);
    }

    let window = (cfg.generations / 4).max(1);
    let converged = history.len() > window
        && (history[history.len() - 1 - window] - history[history.len() - 1]).abs()
            <= CONVERGENCE_TOL;
    let (best, value) = pop[0];
    (best, value, evaluations, converged, history)
}

/// Genetic minimization over the whole search space.
pub fn evolve(
    scenario: &Scenario,
    space: &SearchSpace,
    cfg: &OptimizerConfig,
) -> Result<OptimizationResult> {
    space.validate()?;
    cfg.validate()?;
    let (best, value, evaluations, converged, best_history) =
        genetic_search(scenario, &space.bounds(), cfg, cfg.seed);
    let (m, n1, n2) = to_params(&best);
    Ok(OptimizationResult {
        m,
        n1,
        n2,
        eulb_min: value,
        baseline: baseline(scenario),
        evaluations,
        converged,
        best_history,
    })
}

/// Values of a lattice axis: linear in `[lo, hi]` with `steps` points.
fn axis(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

/// Exhaustive search on a `steps³` lattice (linear in `m`, logarithmic in
/// `n1`, `n2`).
pub fn grid_oracle(
    scenario: &Scenario,
    space: &SearchSpace,
    steps: usize,
) -> Result<OptimizationResult> {
    space.validate()?;
    if steps < 2 {
        return Err(Error::Config(format!(
            "grid needs at least 2 steps per axis, got {steps}"
        )));
    }
    let b = space.bounds();
    let axes: Vec<Vec<f64>> = b.iter().map(|&(lo, hi)| axis(lo, hi, steps)).collect();
    let points: Vec<Coords> = (0..steps.pow(3))
        .map(|idx| {
            let (i, j, k) = (idx / (steps * steps), (idx / steps) % steps, idx % steps);
            [axes[0][i], axes[1][j], axes[2][k]]
        })
        .collect();
    let values = evaluate_all(scenario, &points);
    let (best, value) = points
        .into_iter()
        .zip(values)
        .min_by(candidate_order)
        .expect("non-empty lattice");
    let (m, n1, n2) = to_params(&best);
    Ok(OptimizationResult {
        m,
        n1,
        n2,
        eulb_min: value,
        baseline: baseline(scenario),
        evaluations: steps.pow(3),
        converged: true,
        best_history: vec![value],
    })
}

/// For each `m` in `m_grid`, minimizes over `(n1, n2)` only.
///
/// Point `i` uses seed `cfg.seed + i`.
pub fn sweep_m(
    scenario: &Scenario,
    space: &SearchSpace,
    m_grid: &[f64],
    cfg: &OptimizerConfig,
) -> Result<SweepResult> {
    space.validate()?;
    cfg.validate()?;
    let [lo, hi] = space.m_range;
    if let Some(m) = m_grid.iter().find(|m| !(lo..=hi).contains(*m)) {
        return Err(Error::Config(format!(
            "m = {m} outside m_range [{lo}, {hi}]"
        )));
    }
    let full = space.bounds();
    let points = m_grid
        .par_iter()
        .enumerate()
        .map(|(i, &m)| {
            let bounds = [(m, m), full[1], full[2]];
            let (best, value, ..) =
                genetic_search(scenario, &bounds, cfg, cfg.seed.wrapping_add(i as u64));
            let (m, n1, n2) = to_params(&best);
            SweepPoint {
                m,
                n1,
                n2,
                eulb: value,
            }
        })
        .collect();
    Ok(SweepResult {
        baseline: baseline(scenario),
        points,
    })
}

/// `steps` evenly spaced values covering `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    axis(lo, hi, steps)
}
