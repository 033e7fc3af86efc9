//! Shared fixtures: small hand-built complexes and the random-ACC
//! generator re-exported from the library's sample module.

#![allow(dead_code)]

use homred_core::complex::FiniteComplex;
use homred_core::sample::SampleRng;
use homred_core::{Cell, Chain, Key};
use rand::RngCore;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// ∂Δ² as a finite complex with integer vertex keys and vertex-list edge
/// keys.
pub fn circle_complex() -> Arc<FiniteComplex> {
    let mut b = FiniteComplex::builder();
    for v in 0..3 {
        b.add_cell(vertex(v));
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let mut chain = Chain::zero(0);
        chain.add_cell(&vertex(j), 1);
        chain.add_cell(&vertex(i), -1);
        b.add_cell_with_boundary(edge(i, j), chain);
    }
    b.build().unwrap()
}

pub fn vertex(v: i64) -> Cell {
    Cell::new(0, v)
}

pub fn edge(i: i64, j: i64) -> Cell {
    Cell::new(1, Key::ints([i, j]))
}

/// The one-vertex projective-plane chain complex: d(tau) = 2 sigma.
pub fn projective_plane_complex() -> Arc<FiniteComplex> {
    let mut b = FiniteComplex::builder();
    let star = Cell::new(0, "*");
    let sigma = Cell::new(1, "sigma");
    let tau = Cell::new(2, "tau");
    b.add_cell(star);
    b.add_cell_with_boundary(sigma.clone(), Chain::zero(0));
    b.add_cell_with_boundary(tau, Chain::generator(&sigma).scale(2));
    b.build().unwrap()
}

/// A random finite ACC, seeded off the caller's rng.
pub fn random_acc(rng: &mut ChaCha8Rng, max_degree: i32, max_cells: usize) -> Arc<FiniteComplex> {
    let mut sample_rng = SampleRng::new(rng.next_u64());
    homred_core::sample::random_acc(&mut sample_rng, max_degree, max_cells)
}

/// All cells of a finite complex.
pub fn all_cells(cx: &FiniteComplex) -> Vec<Cell> {
    cx.all_cells()
}
