//! Products and twisted products of simplicial sets.
//!
//! A p-simplex of X × Y is a pair of p-simplices; it is non-degenerate
//! exactly when the canonical degeneracy words of the components are
//! disjoint. A twisting function perturbs only the 0-face, in the fiber
//! direction.

use super::models::SimplicialGroup;
use super::{canonical_face, simplex_from_key, simplex_to_key, Simplex, SimplicialSet, SSet};
use crate::key::Key;
use std::sync::Arc;

/// Encode a non-degenerate pair as a product key.
pub fn pair_key(x: &Simplex, y: &Simplex) -> Key {
    Key::List(vec![simplex_to_key(x), simplex_to_key(y)])
}

pub fn pair_from_key(key: &Key) -> Option<(Simplex, Simplex)> {
    let items = key.as_list()?;
    if items.len() != 2 {
        return None;
    }
    Some((simplex_from_key(&items[0])?, simplex_from_key(&items[1])?))
}

/// Canonicalize a pair of equal-dimension simplices: the shared collapse
/// slots form the degeneracy word of the pair, and stripping them leaves a
/// non-degenerate pair as base.
pub fn canonical_pair(x: &Simplex, y: &Simplex) -> Simplex {
    debug_assert_eq!(x.dim(), y.dim());
    let common: Vec<u32> =
        x.word.iter().copied().filter(|j| y.word.contains(j)).collect(); // decreasing
    if common.is_empty() {
        return Simplex::nondeg(pair_key(x, y), x.dim());
    }
    let xs = x.strip_collapses(&common);
    let ys = y.strip_collapses(&common);
    Simplex { word: common, base: pair_key(&xs, &ys), base_dim: xs.dim() }
}

fn subsets_of(slots: &[u32], len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(slots, 0, len, &mut cur, &mut out);
    return out;

    fn rec(slots: &[u32], start: usize, len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            let mut w = cur.clone();
            w.sort_unstable_by(|a, b| b.cmp(a));
            out.push(w);
            return;
        }
        for i in start..slots.len() {
            cur.push(slots[i]);
            rec(slots, i + 1, len, cur, out);
            cur.pop();
        }
    }
}

pub struct ProductSet {
    pub x: SSet,
    pub y: SSet,
}

/// The product simplicial set X × Y with component-wise operators.
pub fn product(x: &SSet, y: &SSet) -> Arc<ProductSet> {
    Arc::new(ProductSet { x: x.clone(), y: y.clone() })
}

impl ProductSet {
    fn valid_component(set: &dyn SimplicialSet, s: &Simplex, dim: i32) -> bool {
        s.dim() == dim
            && s.word.windows(2).all(|w| w[0] > w[1])
            && s.word.iter().all(|&j| (j as i32) < dim)
            && set.is_nondeg(&s.base, s.base_dim)
    }
}

impl SimplicialSet for ProductSet {
    fn name(&self) -> String {
        format!("{} x {}", self.x.name(), self.y.name())
    }

    fn is_nondeg(&self, key: &Key, dim: i32) -> bool {
        match pair_from_key(key) {
            Some((sx, sy)) => {
                ProductSet::valid_component(self.x.as_ref(), &sx, dim)
                    && ProductSet::valid_component(self.y.as_ref(), &sy, dim)
                    && sx.word.iter().all(|j| !sy.word.contains(j))
            }
            None => false,
        }
    }

    fn nondeg_basis(&self, dim: i32) -> Option<Vec<Key>> {
        if dim < 0 {
            return Some(Vec::new());
        }
        let mut out = Vec::new();
        for p in 0..=dim {
            let xs = self.x.nondeg_basis(p)?;
            if xs.is_empty() {
                continue;
            }
            for q in 0..=dim {
                if p + q < dim {
                    continue;
                }
                let ys = self.y.nondeg_basis(q)?;
                if ys.is_empty() {
                    continue;
                }
                // degeneracy words: I on x of size dim-p, J on y of size
                // dim-q, disjoint subsets of [0..dim-1]
                let slots: Vec<u32> = (0..dim as u32).collect();
                for i_word in subsets_of(&slots, (dim - p) as usize) {
                    let rest: Vec<u32> =
                        slots.iter().copied().filter(|j| !i_word.contains(j)).collect();
                    for j_word in subsets_of(&rest, (dim - q) as usize) {
                        for xb in &xs {
                            let sx =
                                Simplex { word: i_word.clone(), base: xb.clone(), base_dim: p };
                            for yb in &ys {
                                let sy = Simplex {
                                    word: j_word.clone(),
                                    base: yb.clone(),
                                    base_dim: q,
                                };
                                out.push(pair_key(&sx, &sy));
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        Some(out)
    }

    fn base_face(&self, i: u32, key: &Key, _dim: i32) -> Simplex {
        let (sx, sy) = pair_from_key(key).expect("product simplex key");
        let fx = canonical_face(self.x.as_ref(), i, &sx);
        let fy = canonical_face(self.y.as_ref(), i, &sy);
        canonical_pair(&fx, &fy)
    }
}

type ActionFn = dyn Fn(&Simplex, &Simplex) -> Simplex + Send + Sync;
type NondegTwistFn = dyn Fn(&Key, i32) -> Simplex + Send + Sync;

/// A twisting function τ: B_p → G_{p−1}, presented on non-degenerate base
/// simplices and extended to all simplices by the twisting identities
/// τ(η₀b) = e and τ(η_{i+1}b) = η_i τ(b).
pub struct TwistingFn {
    pub group: Arc<dyn SimplicialGroup>,
    on_nondeg: Arc<NondegTwistFn>,
}

impl TwistingFn {
    pub fn new(
        group: Arc<dyn SimplicialGroup>,
        on_nondeg: impl Fn(&Key, i32) -> Simplex + Send + Sync + 'static,
    ) -> Arc<TwistingFn> {
        Arc::new(TwistingFn { group, on_nondeg: Arc::new(on_nondeg) })
    }

    /// The constant twisting function, every value neutral.
    pub fn trivial(group: Arc<dyn SimplicialGroup>) -> Arc<TwistingFn> {
        let g = group.clone();
        TwistingFn::new(group, move |_, dim| g.neutral(dim - 1))
    }

    pub fn eval(&self, b: &Simplex) -> Simplex {
        assert!(b.dim() >= 1, "twisting functions start in dimension 1");
        if b.word.contains(&0) {
            return self.group.neutral(b.dim() - 1);
        }
        match b.word.first().copied() {
            // peel the outermost (largest) degeneracy: τ(η_j x) = η_{j-1} τ(x)
            Some(j) => {
                let inner = b.strip_collapses(&[j]);
                self.eval(&inner).degenerate(j - 1)
            }
            None => (self.on_nondeg)(&b.base, b.dim()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TwistingViolation {
    pub identity: &'static str,
    pub simplex: Simplex,
}

#[derive(Debug, Default)]
pub struct TwistingReport {
    pub checked: usize,
    pub violations: Vec<TwistingViolation>,
}

impl TwistingReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify the four twisting identities on a sample of base simplices.
pub fn verify_twisting(
    tau: &TwistingFn,
    base_set: &SSet,
    samples: &[Simplex],
) -> TwistingReport {
    let g = tau.group.as_ref();
    let mut report = TwistingReport::default();
    for b in samples {
        let p = b.dim();
        if p < 1 {
            continue;
        }
        report.checked += 1;
        let tb = tau.eval(b);
        // ∂_0(τ b) = τ(∂_0 b)⁻¹ · τ(∂_1 b)
        if p >= 2 {
            let lhs = canonical_face(g as &dyn SimplicialSet, 0, &tb);
            let rhs = g.mul(
                &g.inverse(&tau.eval(&canonical_face(base_set.as_ref(), 0, b))),
                &tau.eval(&canonical_face(base_set.as_ref(), 1, b)),
            );
            if lhs != rhs {
                report.violations.push(TwistingViolation {
                    identity: "d0(tau b) = tau(d0 b)^-1 . tau(d1 b)",
                    simplex: b.clone(),
                });
            }
            // ∂_i τ(b) = τ(∂_{i+1} b), i > 0
            for i in 1..p as u32 {
                let lhs = canonical_face(g as &dyn SimplicialSet, i, &tb);
                let rhs = tau.eval(&canonical_face(base_set.as_ref(), i + 1, b));
                if lhs != rhs {
                    report.violations.push(TwistingViolation {
                        identity: "di tau(b) = tau(d(i+1) b)",
                        simplex: b.clone(),
                    });
                }
            }
        }
        // η_i τ(b) = τ(η_{i+1} b)
        for i in 0..p as u32 {
            let lhs = tb.degenerate(i);
            let rhs = tau.eval(&b.degenerate(i + 1));
            if lhs != rhs {
                report.violations.push(TwistingViolation {
                    identity: "eta_i tau(b) = tau(eta_(i+1) b)",
                    simplex: b.clone(),
                });
            }
        }
        // τ(η_0 b) = e
        if tau.eval(&b.degenerate(0)) != tau.group.neutral(p) {
            report.violations.push(TwistingViolation {
                identity: "tau(eta_0 b) = e",
                simplex: b.clone(),
            });
        }
    }
    report
}

/// The twisted product F ×_τ B: same simplices as F × B, component-wise
/// operators except ∂₀(f, b) = (τ(b)·∂₀f, ∂₀b).
pub struct TwistedProductSet {
    pub fiber: SSet,
    pub base: SSet,
    pub tau: Arc<TwistingFn>,
    pub action: Arc<ActionFn>,
    untwisted: ProductSet,
}

pub fn twisted_product(
    fiber: &SSet,
    base: &SSet,
    tau: &Arc<TwistingFn>,
    action: impl Fn(&Simplex, &Simplex) -> Simplex + Send + Sync + 'static,
) -> Arc<TwistedProductSet> {
    Arc::new(TwistedProductSet {
        fiber: fiber.clone(),
        base: base.clone(),
        tau: tau.clone(),
        action: Arc::new(action),
        untwisted: ProductSet { x: fiber.clone(), y: base.clone() },
    })
}

/// Principal twisted product G ×_τ B: the group acting on itself by left
/// translation.
pub fn principal_twisted_product(
    group: &Arc<dyn SimplicialGroup>,
    base: &SSet,
    tau: &Arc<TwistingFn>,
) -> Arc<TwistedProductSet> {
    let g = group.clone();
    let fiber: SSet = group.clone();
    twisted_product(&fiber, base, tau, move |gamma, f| g.mul(gamma, f))
}

impl SimplicialSet for TwistedProductSet {
    fn name(&self) -> String {
        format!("{} x_tau {}", self.fiber.name(), self.base.name())
    }

    fn is_nondeg(&self, key: &Key, dim: i32) -> bool {
        self.untwisted.is_nondeg(key, dim)
    }

    fn nondeg_basis(&self, dim: i32) -> Option<Vec<Key>> {
        self.untwisted.nondeg_basis(dim)
    }

    fn base_face(&self, i: u32, key: &Key, dim: i32) -> Simplex {
        if i > 0 {
            return self.untwisted.base_face(i, key, dim);
        }
        let (sf, sb) = pair_from_key(key).expect("twisted product simplex key");
        let f0 = canonical_face(self.fiber.as_ref(), 0, &sf);
        let twisted = (self.action)(&self.tau.eval(&sb), &f0);
        let b0 = canonical_face(self.base.as_ref(), 0, &sb);
        canonical_pair(&twisted, &b0)
    }
}
