//! Simplicial sets with canonical Eilenberg-triple simplex representation.
//!
//! Every simplex is stored as a degeneracy word applied to a non-degenerate
//! base simplex of the owning simplicial set. A word is the collapse set of
//! the corresponding monotone surjection: the strictly decreasing index list
//! `[j_k, …, j_1]` denotes η_{j_k} ∘ ⋯ ∘ η_{j_1} with the smallest index
//! applied first. All face/degeneracy commutation lives in one place,
//! [`canonical_face`], which re-normalizes to an Eilenberg triple.

pub mod models;
pub mod normalization;
pub mod product;

use crate::chain::Chain;
use crate::complex::{BasisView, Cx, LazyComplex};
use crate::key::{Cell, Key};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A possibly-degenerate simplex in Eilenberg-triple form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    /// Strictly decreasing degeneracy indices (the collapse set of the
    /// associated monotone surjection).
    pub word: Vec<u32>,
    pub base: Key,
    pub base_dim: i32,
}

impl Simplex {
    pub fn nondeg(base: Key, dim: i32) -> Simplex {
        Simplex { word: Vec::new(), base, base_dim: dim }
    }

    pub fn dim(&self) -> i32 {
        self.base_dim + self.word.len() as i32
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// The monotone surjection [0..dim] → [0..base_dim] as a value table.
    pub fn vertex_map(&self) -> Vec<u32> {
        let dim = self.dim();
        let collapses: BTreeSet<u32> = self.word.iter().copied().collect();
        let mut out = Vec::with_capacity(dim as usize + 1);
        let mut drop = 0u32;
        for v in 0..=dim as u32 {
            out.push(v - drop);
            if collapses.contains(&v) {
                drop += 1;
            }
        }
        out
    }

    /// Rebuild a simplex from a monotone surjection table onto `base`.
    pub fn from_vertex_map(map: &[u32], base: Key, base_dim: i32) -> Simplex {
        debug_assert_eq!(*map.last().unwrap() as i32, base_dim);
        debug_assert_eq!(map[0], 0);
        let mut word: Vec<u32> = (0..map.len() - 1)
            .filter(|&i| map[i] == map[i + 1])
            .map(|i| i as u32)
            .collect();
        word.reverse();
        Simplex { word, base, base_dim }
    }

    /// Apply the elementary degeneracy η_k.
    pub fn degenerate(&self, k: u32) -> Simplex {
        let m = self.vertex_map();
        debug_assert!((k as usize) < m.len());
        let mut out = Vec::with_capacity(m.len() + 1);
        out.extend_from_slice(&m[..=k as usize]);
        out.extend_from_slice(&m[k as usize..]);
        Simplex::from_vertex_map(&out, self.base.clone(), self.base_dim)
    }

    /// Remove the collapses listed in `slots` (must be a subset of the word,
    /// given in decreasing order), keeping the base.
    pub fn strip_collapses(&self, slots: &[u32]) -> Simplex {
        let mut m = self.vertex_map();
        for &k in slots {
            debug_assert!(m[k as usize] == m[k as usize + 1]);
            m.remove(k as usize);
        }
        Simplex::from_vertex_map(&m, self.base.clone(), self.base_dim)
    }

    /// Textual form "eta_3 eta_1 base".
    pub fn display(&self) -> String {
        let mut s = String::new();
        for j in &self.word {
            s.push_str(&format!("eta_{j} "));
        }
        s.push_str(&format!("{}", self.base));
        s
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// A simplicial set presented by its non-degenerate simplices and the face
/// maps on them; everything else is derived from the Eilenberg-triple
/// algebra.
pub trait SimplicialSet: Send + Sync {
    fn name(&self) -> String;

    /// Is `key` a non-degenerate simplex of this dimension?
    fn is_nondeg(&self, key: &Key, dim: i32) -> bool;

    /// All non-degenerate simplices of a dimension, or None when the set is
    /// not enumerable there.
    fn nondeg_basis(&self, dim: i32) -> Option<Vec<Key>>;

    /// The i-th face of a non-degenerate simplex, in canonical form.
    fn base_face(&self, i: u32, key: &Key, dim: i32) -> Simplex;
}

pub type SSet = Arc<dyn SimplicialSet>;

/// The i-th face of an arbitrary simplex: commute ∂_i through the degeneracy
/// word, evaluate the owner's face maps on the base where the index
/// survives, and re-normalize.
pub fn canonical_face(set: &dyn SimplicialSet, i: u32, s: &Simplex) -> Simplex {
    assert!(s.dim() >= 1, "faces need dimension >= 1");
    assert!(i <= s.dim() as u32, "face index out of range");
    if s.word.is_empty() {
        return set.base_face(i, &s.base, s.base_dim);
    }
    let mut m = s.vertex_map();
    m.remove(i as usize);
    // Which base vertices disappeared? (At most one can.)
    let present: BTreeSet<u32> = m.iter().copied().collect();
    let missing: Vec<u32> = (0..=s.base_dim as u32).rev().filter(|v| !present.contains(v)).collect();
    if missing.is_empty() {
        return Simplex::from_vertex_map(&m, s.base.clone(), s.base_dim);
    }
    let compressed: Vec<u32> = m
        .iter()
        .map(|&v| v - missing.iter().filter(|&&x| x < v).count() as u32)
        .collect();
    let mut t = Simplex::nondeg(s.base.clone(), s.base_dim);
    for j in &missing {
        t = canonical_face(set, *j, &t);
    }
    compose_word_over(&compressed, &t)
}

/// Result = η_word(t) where `word_map` is a surjection table onto [0..dim t]:
/// the composite vertex map factors through t's own triple.
fn compose_word_over(word_map: &[u32], t: &Simplex) -> Simplex {
    let tm = t.vertex_map();
    let composite: Vec<u32> = word_map.iter().map(|&v| tm[v as usize]).collect();
    Simplex::from_vertex_map(&composite, t.base.clone(), t.base_dim)
}

/// Encode a simplex as a key (for complexes whose cells are arbitrary
/// simplices).
pub fn simplex_to_key(s: &Simplex) -> Key {
    Key::List(vec![
        Key::List(s.word.iter().map(|&j| Key::Int(j as i64)).collect()),
        Key::Int(s.base_dim as i64),
        s.base.clone(),
    ])
}

pub fn simplex_from_key(key: &Key) -> Option<Simplex> {
    let items = key.as_list()?;
    if items.len() != 3 {
        return None;
    }
    let word: Option<Vec<u32>> =
        items[0].as_list()?.iter().map(|k| k.as_int().map(|n| n as u32)).collect();
    Some(Simplex { word: word?, base_dim: items[1].as_int()? as i32, base: items[2].clone() })
}

/// All degeneracy words of length `len` available in dimension `dim` (i.e.
/// decreasing subsets of [0..dim-1]); `dim` is the resulting dimension.
pub fn degeneracy_words(len: usize, dim: i32) -> Vec<Vec<u32>> {
    let slots = dim as usize;
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    subsets(0, slots, len, &mut cur, &mut out);
    return out;

    fn subsets(
        start: usize,
        slots: usize,
        len: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if cur.len() == len {
            let mut w = cur.clone();
            w.reverse();
            out.push(w);
            return;
        }
        for j in start..slots {
            cur.push(j as u32);
            subsets(j + 1, slots, len, cur, out);
            cur.pop();
        }
    }
}

/// The normalized chain complex C^ND: basis the non-degenerate simplices,
/// boundary the alternating face sum with degenerate faces dropped.
///
/// `enum_limit` bounds the degrees where the basis is presented as
/// enumerable; boundaries are computable in any degree.
pub fn nondeg_complex(set: &SSet, enum_limit: Option<i32>) -> Cx {
    let member = {
        let set = set.clone();
        move |cell: &Cell| cell.degree >= 0 && set.is_nondeg(&cell.key, cell.degree)
    };
    let enumerate = {
        let set = set.clone();
        move |degree: i32| {
            if degree < 0 {
                return BasisView::Enumerable(Vec::new());
            }
            if let Some(limit) = enum_limit {
                if degree > limit {
                    return BasisView::PredicateOnly;
                }
            }
            match set.nondeg_basis(degree) {
                Some(mut keys) => {
                    keys.sort();
                    BasisView::Enumerable(
                        keys.into_iter().map(|k| Cell { degree, key: k }).collect(),
                    )
                }
                None => BasisView::PredicateOnly,
            }
        }
    };
    let boundary = {
        let set = set.clone();
        move |cell: &Cell| {
            let mut out = Chain::zero(cell.degree - 1);
            if cell.degree == 0 {
                return out;
            }
            let s = Simplex::nondeg(cell.key.clone(), cell.degree);
            let mut sign = 1i64;
            for i in 0..=cell.degree as u32 {
                let face = canonical_face(set.as_ref(), i, &s);
                if !face.is_degenerate() {
                    out.add_term(&face.base, sign);
                }
                sign = -sign;
            }
            out
        }
    };
    LazyComplex::new(member, enumerate, boundary)
}

/// The full (non-normalized) chain complex: basis all simplices, boundary
/// the alternating face sum with nothing dropped. Cells are encoded
/// simplices.
pub fn full_complex(set: &SSet, enum_limit: Option<i32>) -> Cx {
    let member = {
        let set = set.clone();
        move |cell: &Cell| match simplex_from_key(&cell.key) {
            Some(s) => {
                s.dim() == cell.degree
                    && set.is_nondeg(&s.base, s.base_dim)
                    && s.word.windows(2).all(|w| w[0] > w[1])
                    && s.word.iter().all(|&j| (j as i32) < s.dim())
            }
            None => false,
        }
    };
    let enumerate = {
        let set = set.clone();
        move |degree: i32| {
            if degree < 0 {
                return BasisView::Enumerable(Vec::new());
            }
            if let Some(limit) = enum_limit {
                if degree > limit {
                    return BasisView::PredicateOnly;
                }
            }
            let mut cells = Vec::new();
            for q in 0..=degree {
                let Some(bases) = set.nondeg_basis(q) else {
                    return BasisView::PredicateOnly;
                };
                for word in degeneracy_words((degree - q) as usize, degree) {
                    for b in &bases {
                        let s = Simplex { word: word.clone(), base: b.clone(), base_dim: q };
                        cells.push(Cell { degree, key: simplex_to_key(&s) });
                    }
                }
            }
            cells.sort();
            BasisView::Enumerable(cells)
        }
    };
    let boundary = {
        let set = set.clone();
        move |cell: &Cell| {
            let mut out = Chain::zero(cell.degree - 1);
            if cell.degree == 0 {
                return out;
            }
            let s = simplex_from_key(&cell.key).expect("cell of a full simplicial complex");
            let mut sign = 1i64;
            for i in 0..=cell.degree as u32 {
                let face = canonical_face(set.as_ref(), i, &s);
                out.add_term(&simplex_to_key(&face), sign);
                sign = -sign;
            }
            out
        }
    };
    LazyComplex::new(member, enumerate, boundary)
}

/// The subcomplex of the full complex spanned by the degenerate simplices.
pub fn degenerate_subcomplex(set: &SSet, enum_limit: Option<i32>) -> Cx {
    let full = full_complex(set, enum_limit);
    let member = {
        let full = full.clone();
        move |cell: &Cell| {
            full.contains(cell)
                && simplex_from_key(&cell.key).map(|s| s.is_degenerate()).unwrap_or(false)
        }
    };
    let enumerate = {
        let full = full.clone();
        move |degree: i32| match full.basis(degree) {
            BasisView::Enumerable(cells) => BasisView::Enumerable(
                cells
                    .into_iter()
                    .filter(|c| {
                        simplex_from_key(&c.key).map(|s| s.is_degenerate()).unwrap_or(false)
                    })
                    .collect(),
            ),
            BasisView::PredicateOnly => BasisView::PredicateOnly,
        }
    };
    let boundary = {
        let full = full.clone();
        move |cell: &Cell| full.diff(cell)
    };
    LazyComplex::new(member, enumerate, boundary)
}
