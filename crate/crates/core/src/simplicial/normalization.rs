//! The two vector fields of the "two simple examples": the normalization
//! field pairing all degenerate simplices by first-repetition parity, and
//! the K(ℤ,1) field reducing its normalized complex onto the circle.

use super::{simplex_from_key, simplex_to_key, Simplex};
use crate::dvf::{Admissibility, CellClass, Field, LazyVectorField};
use crate::key::{Cell, Key};
use std::sync::Arc;

/// Where the first repetition of a monotone surjection sits: start slot and
/// multiplicity (block length).
fn first_repetition(map: &[u32]) -> Option<(usize, usize)> {
    let first = (0..map.len() - 1).find(|&i| map[i] == map[i + 1])?;
    let value = map[first];
    let mult = map.iter().filter(|&&v| v == value).count();
    Some((first, mult))
}

/// Classify a simplex for the normalization field: non-degenerate simplices
/// are critical; a degenerate simplex is a source when the multiplicity of
/// its first repetition is even (target adds one extra repetition there) and
/// a target when it is odd.
pub fn normalization_classify(s: &Simplex) -> CellClass {
    let map = s.vertex_map();
    let Some((first, mult)) = first_repetition(&map) else {
        return CellClass::Critical;
    };
    if mult % 2 == 0 {
        let target = s.degenerate(first as u32);
        CellClass::Source { target: cell_of(&target) }
    } else {
        let source = s.strip_collapses(&[first as u32]);
        CellClass::Target { source: cell_of(&source) }
    }
}

fn cell_of(s: &Simplex) -> Cell {
    Cell { degree: s.dim(), key: simplex_to_key(s) }
}

/// The normalization vector field on the full (non-normalized) chain
/// complex, with its genuine-dimension Lyapunov certificate.
pub fn normalization_vf() -> (Field, Admissibility) {
    let field: Field = LazyVectorField::new(|cell: &Cell| {
        let s = simplex_from_key(&cell.key).expect("full-complex cell");
        normalization_classify(&s)
    });
    // Lyapunov function: the genuine dimension of the simplex.
    let l = |cell: &Cell| -> u64 {
        let s = simplex_from_key(&cell.key).expect("full-complex cell");
        s.base_dim as u64
    };
    (field, Admissibility::Lyapunov { l: Arc::new(l), verified_on: 0 })
}

fn bar_entries(key: &Key) -> Vec<i64> {
    key.as_list()
        .expect("bar key")
        .iter()
        .map(|k| k.as_int().expect("bar entry"))
        .collect()
}

/// Classify a non-degenerate bar simplex of K(ℤ,1): the empty bar and `[1]`
/// are critical; [a₁|⋯] with a₁ ≠ 1 is a source paired with [1|a₁−1|⋯]
/// (a₁ > 1) or [1|a₁|⋯] (a₁ < 0); bars of dimension ≥ 2 with a₁ = 1 are
/// targets.
pub fn kz1_classify(cell: &Cell) -> CellClass {
    let entries = bar_entries(&cell.key);
    if entries.is_empty() {
        return CellClass::Critical;
    }
    let a1 = entries[0];
    if a1 == 1 {
        if entries.len() == 1 {
            return CellClass::Critical;
        }
        // target: recover the source by undoing the pairing
        let rest = &entries[1..];
        let b1 = rest[0];
        let mut source = Vec::with_capacity(entries.len() - 1);
        if b1 > 0 {
            source.push(b1 + 1);
            source.extend_from_slice(&rest[1..]);
        } else {
            source.extend_from_slice(rest);
        }
        CellClass::Target {
            source: Cell { degree: cell.degree - 1, key: Key::ints(source) },
        }
    } else {
        let mut target = Vec::with_capacity(entries.len() + 1);
        target.push(1);
        if a1 > 1 {
            target.push(a1 - 1);
        } else {
            target.push(a1);
        }
        target.extend_from_slice(&entries[1..]);
        CellClass::Source { target: Cell { degree: cell.degree + 1, key: Key::ints(target) } }
    }
}

/// The K(ℤ,1) vector field on its normalized chain complex, with the
/// |a₁|-decrease Lyapunov certificate.
pub fn kz1_vf() -> (Field, Admissibility) {
    let field: Field = LazyVectorField::new(kz1_classify);
    let l = |cell: &Cell| -> u64 {
        let entries = bar_entries(&cell.key);
        entries.first().map(|a| a.unsigned_abs()).unwrap_or(0)
    };
    (field, Admissibility::Lyapunov { l: Arc::new(l), verified_on: 0 })
}

/// A textual V-path trace "[3|6] -> [1|2|6] -> ... -> halt!" in bar
/// notation, for reports and tests.
pub fn bar_trace(path: &crate::dvf::VPath) -> String {
    let mut parts = Vec::new();
    for (s, t) in &path.steps {
        parts.push(bar_display(&s.key));
        parts.push(bar_display(&t.key));
    }
    parts.push("halt!".to_string());
    parts.join(" -> ")
}

pub fn bar_display(key: &Key) -> String {
    let entries = bar_entries(key);
    if entries.is_empty() {
        return "[]".to_string();
    }
    format!("[{}]", entries.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("|"))
}
