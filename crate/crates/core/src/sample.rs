//! Deterministic pseudo-random finite complexes with planted unit pivots,
//! used by the verification suites.
//!
//! Complexes are built as direct sums of elementary pieces — isolated cells
//! and pairs d(τ) = c·σ with c ∈ {±1, ±2} — then mixed by elementary
//! unimodular basis changes, which keeps d² = 0 exact; changes that would
//! push an entry outside {-2..2} are skipped.

use crate::chain::Chain;
use crate::complex::FiniteComplex;
use crate::key::Cell;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A small xorshift* generator so sampling needs no external crates.
pub struct SampleRng {
    state: u64,
}

impl SampleRng {
    pub fn new(seed: u64) -> SampleRng {
        SampleRng { state: seed.wrapping_mul(2685821657736338717).max(1) }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(2685821657736338717)
    }

    /// Uniform in [lo, hi].
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.range_i64(lo as i64, hi as i64) as usize
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.range(0, items.len() - 1)]
    }
}

/// A random finite ACC with d² = 0 exact, entries in {-2..2}, and planted
/// unit pivots.
pub fn random_acc(rng: &mut SampleRng, max_degree: i32, max_cells: usize) -> Arc<FiniteComplex> {
    let mut names: BTreeMap<i32, Vec<Cell>> = BTreeMap::new();
    let mut boundaries: BTreeMap<Cell, Chain> = BTreeMap::new();
    let mut counter = 0i64;
    let mut total = 0usize;
    while total + 2 <= max_cells {
        if rng.range(0, 2) == 0 {
            let d = rng.range_i64(0, max_degree as i64) as i32;
            let cell = Cell::new(d, counter);
            counter += 1;
            names.entry(d).or_default().push(cell);
            total += 1;
        } else {
            let d = rng.range_i64(1, max_degree as i64) as i32;
            let sigma = Cell::new(d - 1, counter);
            let tau = Cell::new(d, counter + 1);
            counter += 2;
            let coeff = *rng.pick(&[1i64, 2, -1, -2]);
            boundaries.insert(tau.clone(), Chain::generator(&sigma).scale(coeff));
            names.entry(d - 1).or_default().push(sigma);
            names.entry(d).or_default().push(tau);
            total += 2;
        }
    }
    let degrees: Vec<i32> = names.keys().copied().collect();
    for _ in 0..(2 * total) {
        let d = *rng.pick(&degrees);
        let cells = &names[&d];
        if cells.len() < 2 {
            continue;
        }
        let i = rng.range(0, cells.len() - 1);
        let mut j = rng.range(0, cells.len() - 1);
        if i == j {
            j = (j + 1) % cells.len();
        }
        let a = cells[i].clone();
        let b = cells[j].clone();
        let c = *rng.pick(&[1i64, -1]);
        // Basis change e_b := e_b + c e_a: d(b) gains c·d(a) and boundaries
        // from the degree above compensate on a; skip if any entry leaves
        // {-2..2}.
        let da = boundaries.get(&a).cloned().unwrap_or_else(|| Chain::zero(d - 1));
        let db = boundaries.get(&b).cloned().unwrap_or_else(|| Chain::zero(d - 1));
        let new_db = db.add(&da.scale(c));
        if new_db.iter().any(|(_, v)| v.abs() > 2) {
            continue;
        }
        let mut adjusted: Vec<(Cell, Chain)> = Vec::new();
        let mut ok = true;
        for (cell, chain) in boundaries.iter() {
            if cell.degree == d + 1 {
                let coeff = chain.coeff_of(&b);
                if coeff != 0 {
                    let mut new_chain = chain.clone();
                    new_chain.add_cell(&a, -c * coeff);
                    if new_chain.iter().any(|(_, v)| v.abs() > 2) {
                        ok = false;
                        break;
                    }
                    adjusted.push((cell.clone(), new_chain));
                }
            }
        }
        if !ok {
            continue;
        }
        boundaries.insert(b, new_db);
        for (cell, chain) in adjusted {
            boundaries.insert(cell, chain);
        }
    }

    let mut builder = FiniteComplex::builder();
    for cells in names.values() {
        for cell in cells {
            match boundaries.remove(cell) {
                Some(chain) => builder.add_cell_with_boundary(cell.clone(), chain),
                None => builder.add_cell(cell.clone()),
            }
        }
    }
    builder.build().expect("basis changes preserve d^2 = 0")
}
