//! Built-in simplicial sets: standard simplices and their boundaries,
//! minimal spheres, the one-triangle projective plane, and the simplicial
//! abelian group K(ℤ,1), plus a registry for user models.

use super::{Simplex, SimplicialSet, SSet};
use crate::key::Key;
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

fn increasing_subsets(n: i32, len: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(0, n, len, &mut cur, &mut out);
    return out;

    fn rec(start: i32, n: i32, len: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v as i64);
            rec(v + 1, n, len, cur, out);
            cur.pop();
        }
    }
}

fn vertex_list(key: &Key) -> Option<Vec<i64>> {
    key.as_list()?.iter().map(|k| k.as_int()).collect()
}

/// The standard simplex Δⁿ: non-degenerate simplices are the strictly
/// increasing vertex lists.
pub struct Delta {
    n: i32,
}

pub fn delta(n: i32) -> SSet {
    Arc::new(Delta { n })
}

impl SimplicialSet for Delta {
    fn name(&self) -> String {
        format!("Delta^{}", self.n)
    }

    fn is_nondeg(&self, key: &Key, dim: i32) -> bool {
        match vertex_list(key) {
            Some(vs) => {
                vs.len() as i32 == dim + 1
                    && vs.windows(2).all(|w| w[0] < w[1])
                    && vs.iter().all(|&v| 0 <= v && v <= self.n as i64)
            }
            None => false,
        }
    }

    fn nondeg_basis(&self, dim: i32) -> Option<Vec<Key>> {
        if dim < 0 || dim > self.n {
            return Some(Vec::new());
        }
        Some(increasing_subsets(self.n, dim as usize + 1).into_iter().map(Key::ints).collect())
    }

    fn base_face(&self, i: u32, key: &Key, dim: i32) -> Simplex {
        let mut vs = vertex_list(key).expect("Delta simplex key");
        vs.remove(i as usize);
        Simplex::nondeg(Key::ints(vs), dim - 1)
    }
}

/// ∂Δⁿ: the standard simplex minus its top cell.
pub struct BoundaryDelta {
    n: i32,
}

pub fn boundary_delta(n: i32) -> SSet {
    Arc::new(BoundaryDelta { n })
}

impl SimplicialSet for BoundaryDelta {
    fn name(&self) -> String {
        format!("dDelta^{}", self.n)
    }

    fn is_nondeg(&self, key: &Key, dim: i32) -> bool {
        dim < self.n && Delta { n: self.n }.is_nondeg(key, dim)
    }

    fn nondeg_basis(&self, dim: i32) -> Option<Vec<Key>> {
        if dim >= self.n {
            return Some(Vec::new());
        }
        Delta { n: self.n }.nondeg_basis(dim)
    }

    fn base_face(&self, i: u32, key: &Key, dim: i32) -> Simplex {
        Delta { n: self.n }.base_face(i, key, dim)
    }
}

/// The minimal sphere Sⁿ: one vertex `*`, one non-degenerate n-simplex `s`,
/// all of whose faces collapse to the point.
pub struct MinimalSphere {
    n: i32,
}

pub fn minimal_sphere(n: i32) -> SSet {
    assert!(n >= 1);
    Arc::new(MinimalSphere { n })
}

/// The minimal circle: one vertex, one edge.
pub fn s1() -> SSet {
    minimal_sphere(1)
}

pub const BASE_POINT: Key = Key::Sym("*");
pub const TOP_CELL: Key = Key::Sym("s");

impl SimplicialSet for MinimalSphere {
    fn name(&self) -> String {
        format!("S^{}", self.n)
    }

    fn is_nondeg(&self, key: &Key, dim: i32) -> bool {
        (dim == 0 && *key == BASE_POINT) || (dim == self.n && *key == TOP_CELL)
    }

    fn nondeg_basis(&self, dim: i32) -> Option<Vec<Key>> {
        Some(if dim == 0 {
            vec![BASE_POINT]
        } else if dim == self.n {
            vec![TOP_CELL]
        } else {
            Vec::new()
        })
    }

    fn base_face(&self, _i: u32, key: &Key, dim: i32) -> Simplex {
        assert_eq!(*key, TOP_CELL, "only the top cell has faces");
        debug_assert_eq!(dim, self.n);
        // the totally degenerate (n-1)-simplex over the base point
        let word: Vec<u32> = (0..(self.n - 1) as u32).rev().collect();
        Simplex { word, base: BASE_POINT, base_dim: 0 }
    }
}

/// The real projective plane as a simplicial set: one vertex, one edge σ,
/// one triangle τ with ∂₀τ = ∂₂τ = σ and ∂₁τ degenerate.
pub struct ProjectivePlane;

pub fn projective_plane() -> SSet {
    Arc::new(ProjectivePlane)
}

pub const RP2_EDGE: Key = Key::Sym("sigma");
pub const RP2_TRIANGLE: Key = Key::Sym("tau");

impl SimplicialSet for ProjectivePlane {
    fn name(&self) -> String {
        "P2R".into()
    }

    fn is_nondeg(&self, key: &Key, dim: i32) -> bool {
        (dim == 0 && *key == BASE_POINT)
            || (dim == 1 && *key == RP2_EDGE)
            || (dim == 2 && *key == RP2_TRIANGLE)
    }

    fn nondeg_basis(&self, dim: i32) -> Option<Vec<Key>> {
        Some(match dim {
            0 => vec![BASE_POINT],
            1 => vec![RP2_EDGE],
            2 => vec![RP2_TRIANGLE],
            _ => Vec::new(),
        })
    }

    fn base_face(&self, i: u32, key: &Key, _dim: i32) -> Simplex {
        if *key == RP2_EDGE {
            Simplex::nondeg(BASE_POINT, 0)
        } else if *key == RP2_TRIANGLE && (i == 0 || i == 2) {
            Simplex::nondeg(RP2_EDGE, 1)
        } else if *key == RP2_TRIANGLE && i == 1 {
            Simplex { word: vec![0], base: BASE_POINT, base_dim: 0 }
        } else {
            panic!("no such face")
        }
    }
}

/// Simplicial groups: degree-wise group structure compatible with the
/// simplicial operators.
pub trait SimplicialGroup: SimplicialSet {
    fn mul(&self, a: &Simplex, b: &Simplex) -> Simplex;
    fn neutral(&self, dim: i32) -> Simplex;
    fn inverse(&self, a: &Simplex) -> Simplex;
}

/// K(ℤ,1): n-simplices are bar tuples [a₁|…|a_n] ∈ ℤⁿ, non-degenerate when
/// no entry vanishes. Infinite in every positive dimension, so the basis is
/// predicate-only.
pub struct KZ1;

pub fn kz1() -> Arc<KZ1> {
    Arc::new(KZ1)
}

impl KZ1 {
    /// Full bar tuple of a possibly-degenerate simplex: degeneracies insert
    /// zero entries.
    pub fn to_tuple(&self, s: &Simplex) -> Vec<i64> {
        let mut t = vertex_list(&s.base).expect("bar key");
        for &k in s.word.iter().rev() {
            t.insert(k as usize, 0);
        }
        t
    }

    /// Canonical simplex of a bar tuple: zero entries become the degeneracy
    /// word.
    pub fn from_tuple(&self, t: &[i64]) -> Simplex {
        let word: Vec<u32> = (0..t.len())
            .rev()
            .filter(|&i| t[i] == 0)
            .map(|i| i as u32)
            .collect();
        let base: Vec<i64> = t.iter().copied().filter(|&v| v != 0).collect();
        let base_dim = base.len() as i32;
        Simplex { word, base: Key::ints(base), base_dim }
    }
}

impl SimplicialSet for KZ1 {
    fn name(&self) -> String {
        "K(Z,1)".into()
    }

    fn is_nondeg(&self, key: &Key, dim: i32) -> bool {
        match vertex_list(key) {
            Some(vs) => vs.len() as i32 == dim && vs.iter().all(|&v| v != 0),
            None => false,
        }
    }

    fn nondeg_basis(&self, dim: i32) -> Option<Vec<Key>> {
        if dim <= 0 {
            return Some(if dim == 0 { vec![Key::ints([])] } else { Vec::new() });
        }
        None
    }

    fn base_face(&self, i: u32, key: &Key, dim: i32) -> Simplex {
        let vs = vertex_list(key).expect("bar key");
        debug_assert_eq!(vs.len() as i32, dim);
        let n = vs.len();
        let mut out: Vec<i64>;
        if i == 0 {
            out = vs[1..].to_vec();
        } else if i as usize == n {
            out = vs[..n - 1].to_vec();
        } else {
            out = Vec::with_capacity(n - 1);
            out.extend_from_slice(&vs[..i as usize - 1]);
            out.push(vs[i as usize - 1] + vs[i as usize]);
            out.extend_from_slice(&vs[i as usize + 1..]);
        }
        self.from_tuple(&out)
    }
}

impl SimplicialGroup for KZ1 {
    fn mul(&self, a: &Simplex, b: &Simplex) -> Simplex {
        assert_eq!(a.dim(), b.dim(), "group law is degree-wise");
        let ta = self.to_tuple(a);
        let tb = self.to_tuple(b);
        let sum: Vec<i64> = ta.iter().zip(&tb).map(|(x, y)| x + y).collect();
        self.from_tuple(&sum)
    }

    fn neutral(&self, dim: i32) -> Simplex {
        self.from_tuple(&vec![0; dim as usize])
    }

    fn inverse(&self, a: &Simplex) -> Simplex {
        let t: Vec<i64> = self.to_tuple(a).iter().map(|v| -v).collect();
        self.from_tuple(&t)
    }
}

/// A name → model registry for user-supplied simplicial sets.
#[derive(Default)]
pub struct ModelRegistry {
    models: Mutex<BTreeMap<String, SSet>>,
}

impl ModelRegistry {
    pub fn new() -> ModelRegistry {
        ModelRegistry::default()
    }

    pub fn with_builtins() -> ModelRegistry {
        let reg = ModelRegistry::new();
        reg.register("delta2", delta(2));
        reg.register("delta3", delta(3));
        reg.register("boundary-delta2", boundary_delta(2));
        reg.register("s1", s1());
        reg.register("s2", minimal_sphere(2));
        reg.register("p2r", projective_plane());
        reg.register("kz1", kz1());
        reg
    }

    pub fn register(&self, name: &str, set: SSet) {
        self.models.lock().unwrap().insert(name.to_string(), set);
    }

    pub fn get(&self, name: &str) -> Option<SSet> {
        self.models.lock().unwrap().get(name).cloned()
    }

    pub fn names(&self) -> Vec<String> {
        self.models.lock().unwrap().keys().cloned().collect()
    }
}
