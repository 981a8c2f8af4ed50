//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test -p eulb-core --test acceptance -- --nocapture` to see them.

mod common;

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use common::*;
use eulb_core::channels::{
    amplitude_damping, apply_local, depolarizing, generalized_amplitude_damping, KrausChannel,
};
use eulb_core::entropy::{eulb, shannon, uncertainty_lhs};
use eulb_core::matcore::ComplexMatrix;
use eulb_core::optimize::{evolve, grid_oracle, objective, OptimizationResult};
use eulb_core::presets::{preset, PRESETS};
use eulb_core::protocol::{run_pipeline, FilterParams, ObservablePair};
use eulb_core::states::{bell, validate_density, DensityMatrix};
use eulb_core::Scenario;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Absolute tolerance on reproduced EULB values.
const TOL: f64 = 0.02;
/// Tighter advisory flag for the one value reported to three decimals.
const ADVISORY_TOL: f64 = 0.005;
const GRID_STEPS: usize = 40;
/// evolve may exceed the lattice minimum by at most this much.
const EVOLVE_SLACK: f64 = 0.01;
const MAX_EVOLVE_TIME: Duration = Duration::from_secs(60);

struct PresetRun {
    evolved: OptimizationResult,
    grid: OptimizationResult,
    evolve_time: Duration,
}

fn scenario(figure: &str, variant: &str) -> Scenario {
    preset(figure, variant)
        .unwrap_or_else(|| panic!("no preset {figure}/{variant}"))
        .config()
        .build()
        .unwrap()
}

/// Evolve and 40³ lattice results for every shipped preset, computed once.
fn runs() -> &'static BTreeMap<String, PresetRun> {
    static RUNS: OnceLock<BTreeMap<String, PresetRun>> = OnceLock::new();
    RUNS.get_or_init(|| {
        PRESETS
            .iter()
            .map(|p| {
                let cfg = p.config();
                let sc = cfg.build().unwrap();
                let start = Instant::now();
                let evolved = evolve(&sc, &cfg.search, &cfg.optimizer).unwrap();
                let evolve_time = start.elapsed();
                let grid = grid_oracle(&sc, &cfg.search, GRID_STEPS).unwrap();
                (
                    p.id(),
                    PresetRun {
                        evolved,
                        grid,
                        evolve_time,
                    },
                )
            })
            .collect()
    })
}

fn run(id: &str) -> &'static PresetRun {
    &runs()[id]
}

fn within(value: f64, expected: f64, tol: f64) -> bool {
    (value - expected).abs() <= tol
}

fn verdict(id: &str, title: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] {id} {title}: {detail}");
    assert!(pass, "{id} {title} failed: {detail}");
}

#[test]
fn criterion_01_fig2_baseline() {
    let base = run("fig2_main").evolved.baseline;
    verdict(
        "C1",
        "fig2 baseline = 0.41",
        within(base, 0.41, TOL),
        &format!("computed {base:.4}"),
    );
}

#[test]
fn criterion_02_fig2_optimum() {
    let min = run("fig2_main").evolved.eulb_min;
    let at_reported = objective(&scenario("fig2", "main"), 0.18, 0.18, 0.81);
    verdict(
        "C2",
        "fig2 minimum = 0.37",
        within(min, 0.37, TOL) && within(at_reported, 0.37, TOL),
        &format!("evolve min {min:.4}, objective(0.18, 0.18, 0.81) = {at_reported:.4}"),
    );
}

#[test]
fn criterion_03_fig3_optimum() {
    let mut detail = Vec::new();
    let mut reproduced = Vec::new();
    for variant in ["caption", "text"] {
        let r = &run(&format!("fig3_{variant}")).evolved;
        let ok = within(r.eulb_min, 0.34, TOL) && within(r.baseline, 0.46, TOL);
        if ok {
            reproduced.push(variant);
        }
        detail.push(format!(
            "{variant}: min {:.4}, baseline {:.4}",
            r.eulb_min, r.baseline
        ));
    }
    detail.push(format!("reproduced by: {reproduced:?}"));
    verdict(
        "C3",
        "fig3 minimum = 0.34, baseline = 0.46 (either reading)",
        !reproduced.is_empty(),
        &detail.join("; "),
    );
}

#[test]
fn criterion_04_fig4_fig5_depolarizing_bell() {
    let cap = &run("fig4_caption").evolved;
    let txt = &run("fig4_text").evolved;
    let f5 = &run("fig5_main").evolved;
    let mins_ok = [cap, txt, f5].iter().all(|r| within(r.eulb_min, 1.0, TOL));
    let fig4_base_ok = within(cap.baseline, 1.97, TOL) || within(txt.baseline, 1.97, TOL);
    let fig5_base_ok = within(f5.baseline, 1.92, TOL);
    verdict(
        "C4",
        "fig4/fig5 minimum = 1.00, baselines 1.97 / 1.92",
        mins_ok && fig4_base_ok && fig5_base_ok,
        &format!(
            "fig4 caption: min {:.4} base {:.4}; fig4 text: min {:.4} base {:.4}; fig5: min {:.4} base {:.4}",
            cap.eulb_min, cap.baseline, txt.eulb_min, txt.baseline, f5.eulb_min, f5.baseline
        ),
    );
}

#[test]
fn criterion_05_fig6() {
    let r = &run("fig6_main").evolved;
    verdict(
        "C5",
        "fig6 minimum = 0.08, baseline = 1.18",
        within(r.eulb_min, 0.08, TOL) && within(r.baseline, 1.18, TOL),
        &format!("min {:.4}, baseline {:.4}", r.eulb_min, r.baseline),
    );
}

#[test]
fn criterion_06_fig7() {
    let r = &run("fig7_main").evolved;
    let advisory = within(r.eulb_min, 0.008, ADVISORY_TOL);
    verdict(
        "C6",
        "fig7 minimum = 0.008, baseline = 1.25",
        within(r.eulb_min, 0.008, TOL) && within(r.baseline, 1.25, TOL),
        &format!(
            "min {:.4} (advisory ±{ADVISORY_TOL}: {}), baseline {:.4}",
            r.eulb_min,
            if advisory { "pass" } else { "fail" },
            r.baseline
        ),
    );
}

#[test]
fn criterion_07_fig8_fig9_depolarizing_x() {
    let f8 = &run("fig8_main").evolved;
    let f9 = &run("fig9_text").evolved;
    verdict(
        "C7",
        "fig8/fig9 minimum = 1.00, baselines 1.88 / 1.69",
        within(f8.eulb_min, 1.0, TOL)
            && within(f9.eulb_min, 1.0, TOL)
            && within(f8.baseline, 1.88, TOL)
            && within(f9.baseline, 1.69, TOL),
        &format!(
            "fig8: min {:.4} base {:.4}; fig9 (text): min {:.4} base {:.4}",
            f8.eulb_min, f8.baseline, f9.eulb_min, f9.baseline
        ),
    );
}

#[test]
fn criterion_08_cptp() {
    let i2 = ComplexMatrix::identity(2).unwrap();
    let mut worst: f64 = 0.0;
    for i in 0..=20 {
        let p = i as f64 / 20.0;
        worst = worst.max(
            amplitude_damping(p)
                .unwrap()
                .completeness()
                .max_abs_diff(&i2)
                .unwrap(),
        );
        worst = worst.max(
            depolarizing(p)
                .unwrap()
                .completeness()
                .max_abs_diff(&i2)
                .unwrap(),
        );
        for j in 0..=20 {
            let r = j as f64 / 20.0;
            let ch = generalized_amplitude_damping(p, r).unwrap();
            worst = worst.max(ch.completeness().max_abs_diff(&i2).unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(801);
    let mut invalid = 0;
    for _ in 0..1_000 {
        let rho = random_two_qubit_state(&mut rng);
        let (a, b) = (random_channel(&mut rng), random_channel(&mut rng));
        let out = eulb_core::channels::apply_local_operator(rho.matrix(), &a, &b).unwrap();
        if !validate_density(&out).passed {
            invalid += 1;
        }
    }
    verdict(
        "C8",
        "Kraus completeness and valid channel outputs",
        worst < 1e-12 && invalid == 0,
        &format!("max |Σ K†K − I| = {worst:.2e}, invalid outputs {invalid}/1000"),
    );
}

#[test]
fn criterion_09_gad_full_loss_equals_ad() {
    let mut worst: f64 = 0.0;
    for i in 0..=20 {
        let p = i as f64 / 20.0;
        let gad = generalized_amplitude_damping(p, 1.0).unwrap();
        let ad = amplitude_damping(p).unwrap();
        for k in 0..4 {
            let mut e = [0.0; 4];
            e[k] = 1.0;
            let unit = ComplexMatrix::from_real(2, &e).unwrap();
            let d = gad
                .apply(&unit)
                .unwrap()
                .max_abs_diff(&ad.apply(&unit).unwrap())
                .unwrap();
            worst = worst.max(d);
        }
    }
    verdict(
        "C9",
        "GAD(p, 1) = AD(p) on matrix units",
        worst < 1e-12,
        &format!("max deviation {worst:.2e}"),
    );
}

#[test]
fn criterion_10_berta_inequality() {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let obs = ObservablePair::default();
    let (mut checked, mut worst) = (0, f64::INFINITY);
    while checked < 1_000 {
        let rho = random_two_qubit_state(&mut rng);
        let f = random_filters(&mut rng);
        let (a, b) = (random_channel(&mut rng), random_channel(&mut rng));
        let Ok(rep) = run_pipeline(&rho, &f, &a, &b) else {
            continue;
        };
        let out = &rep.state_after_reversal;
        let gap = uncertainty_lhs(out, &obs).unwrap() - eulb(out, &obs).unwrap();
        worst = worst.min(gap);
        checked += 1;
    }
    verdict(
        "C10",
        "S(Q|B) + S(R|B) >= EULB on random pipelines",
        worst >= -1e-9,
        &format!("smallest gap {worst:.3e} over {checked} pipelines"),
    );
}

#[test]
fn criterion_11_maassen_uffink() {
    let mut rng = ChaCha8Rng::seed_from_u64(1101);
    let obs = ObservablePair::default();
    let mut worst = f64::INFINITY;
    for _ in 0..1_000 {
        let rho = random_density(&mut rng, 2);
        let h: f64 = [obs.q, obs.r]
            .iter()
            .map(|b| {
                let probs: Vec<f64> = b
                    .projectors()
                    .iter()
                    .map(|p| p.mul(rho.matrix()).unwrap().trace().re)
                    .collect();
                shannon(&probs).unwrap()
            })
            .sum();
        worst = worst.min(h);
    }
    verdict(
        "C11",
        "H(Q) + H(R) >= log2(1/c) = 1",
        worst >= 1.0 - 1e-9,
        &format!("smallest sum {worst:.6}"),
    );
}

#[test]
fn criterion_12_noiseless_reversal() {
    let singlet = DensityMatrix::pure(&bell::psi_minus()).unwrap();
    let id = KrausChannel::identity();
    let mut worst: f64 = 0.0;
    for k in 1..=9 {
        let m = k as f64 / 10.0;
        let rep = run_pipeline(
            &singlet,
            &FilterParams::new(m, 1.0, m, 1.0).unwrap(),
            &id,
            &id,
        )
        .unwrap();
        worst = worst.max(
            rep.state_after_reversal
                .matrix()
                .max_abs_diff(singlet.matrix())
                .unwrap(),
        );
    }
    verdict(
        "C12",
        "weak measurement + reversal is the identity without noise",
        worst < 1e-10,
        &format!("max deviation {worst:.2e}"),
    );
}

#[test]
fn criterion_13_determinism_and_oracle() {
    let cfg = preset("fig2", "main").unwrap().config();
    let sc = cfg.build().unwrap();
    let again = evolve(&sc, &cfg.search, &cfg.optimizer).unwrap();
    let deterministic = again == run("fig2_main").evolved
        && again.eulb_min.to_bits() == run("fig2_main").evolved.eulb_min.to_bits();

    let mut ok = deterministic;
    let mut lines = vec![format!("fixed-seed rerun identical: {deterministic}")];
    for (id, r) in runs() {
        let gap = r.evolved.eulb_min - r.grid.eulb_min;
        let pass = gap.abs() <= TOL && gap <= EVOLVE_SLACK && r.evolve_time < MAX_EVOLVE_TIME;
        ok &= pass;
        lines.push(format!(
            "{id}: evolve {:.5} grid {:.5} ({:.2?})",
            r.evolved.eulb_min, r.grid.eulb_min, r.evolve_time
        ));
    }
    verdict(
        "C13",
        "determinism, |evolve − grid(40³)| <= 0.02, runtime < 60 s",
        ok,
        &lines.join("; "),
    );
}

#[test]
fn criterion_14_baseline_dominance() {
    let mut ok = true;
    let mut lines = Vec::new();
    for (id, r) in runs() {
        ok &= r.evolved.eulb_min <= r.evolved.baseline;
        lines.push(format!(
            "{id}: {:.4} <= {:.4}",
            r.evolved.eulb_min, r.evolved.baseline
        ));
    }
    verdict(
        "C14",
        "EULB minimum <= baseline on every preset",
        ok,
        &lines.join("; "),
    );
}

#[test]
fn supporting_fig2_baseline_matches_direct_evaluation() {
    // Same number through apply_local + eulb, bypassing the optimizer.
    let sc = scenario("fig2", "main");
    let rho = apply_local(&sc.initial, &sc.channel_a, &sc.channel_b).unwrap();
    let direct = eulb(&rho, &sc.observables).unwrap();
    assert!((direct - run("fig2_main").evolved.baseline).abs() < 1e-12);
}
