#![allow(dead_code)]

use eulb_core::channels::{
    amplitude_damping, depolarizing, generalized_amplitude_damping, KrausChannel,
};
use eulb_core::matcore::{ComplexMatrix, C64};
use eulb_core::protocol::FilterParams;
use eulb_core::states::{bell_diagonal, x_state, BellDiagonalParams, DensityMatrix, XStateParams};
use rand::Rng;
use rand_distr::StandardNormal;

pub fn gaussian(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_matrix(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let entries: Vec<C64> = (0..dim * dim).map(|_| gaussian(rng)).collect();
    ComplexMatrix::new(dim, &entries).unwrap()
}

pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let g = random_matrix(rng, dim);
    g.add(&g.dagger()).unwrap().scale_real(0.5)
}

/// Ginibre-distributed mixed state `G G† / tr(G G†)`, optionally of lower rank.
pub fn random_density(rng: &mut impl Rng, dim: usize) -> DensityMatrix {
    let mut g = random_matrix(rng, dim);
    // Occasionally drop columns to produce rank-deficient states.
    let rank = rng.random_range(1..=dim);
    let mut entries = g.entries().to_vec();
    for row in 0..dim {
        for col in rank..dim {
            entries[row * dim + col] = C64::new(0.0, 0.0);
        }
    }
    g = ComplexMatrix::new(dim, &entries).unwrap();
    let m = g.mul(&g.dagger()).unwrap();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_real(1.0 / tr)).unwrap()
}

pub fn random_bell_diagonal(rng: &mut impl Rng) -> DensityMatrix {
    loop {
        let c: [f64; 3] = [0, 1, 2].map(|_| rng.random_range(-1.0..=1.0));
        if let Ok(params) = BellDiagonalParams::new(c[0], c[1], c[2]) {
            return bell_diagonal(params).unwrap();
        }
    }
}

pub fn random_x_state(rng: &mut impl Rng) -> DensityMatrix {
    x_state(XStateParams::new(rng.random_range(0.0..=1.0)).unwrap()).unwrap()
}

pub fn random_channel(rng: &mut impl Rng) -> KrausChannel {
    let p = rng.random_range(0.0..=1.0);
    let r = rng.random_range(0.0..=1.0);
    match rng.random_range(0..4) {
        0 => amplitude_damping(p).unwrap(),
        1 => generalized_amplitude_damping(p, r).unwrap(),
        2 => depolarizing(r).unwrap(),
        _ => KrausChannel::identity(),
    }
}

/// Filter strengths spread over several decades around 1.
pub fn random_filters(rng: &mut impl Rng) -> FilterParams {
    let mut draw = |lo: f64, hi: f64| 10f64.powf(rng.random_range(lo..=hi));
    let m1 = draw(-3.0, 0.5);
    let m2 = draw(-3.0, 0.5);
    let n1 = draw(-4.0, 4.0);
    let n2 = draw(-4.0, 4.0);
    FilterParams::new(m1, m2, n1, n2).unwrap()
}

pub fn random_two_qubit_state(rng: &mut impl Rng) -> DensityMatrix {
    match rng.random_range(0..3) {
        0 => random_density(rng, 4),
        1 => random_bell_diagonal(rng),
        _ => random_x_state(rng),
    }
}
