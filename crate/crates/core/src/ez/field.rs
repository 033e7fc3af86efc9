//! The Eilenberg-Zilber vector field on a product of simplicial sets, the
//! induced reduction onto the tensor complex, tensor products of complexes
//! and of reductions, and the twisted variant.

use super::spath::{
    config_from_spath, ez_classify, prism_lyapunov, spath_from_config, DegeneracyConfiguration,
    EzClass, SPath,
};
use crate::chain::Chain;
use crate::complex::{BasisView, Cx, Error, LazyComplex, Result};
use crate::dvf::{build_reduction_gauss, Admissibility, CellClass, Field, LazyVectorField};
use crate::key::{Cell, Key};
use crate::morphism::Morphism;
use crate::reduction::Reduction;
use crate::simplicial::product::{pair_from_key, pair_key, product, verify_twisting, TwistingFn};
use crate::simplicial::{nondeg_complex, Simplex, SSet};
use std::sync::Arc;

/// The s-path of a non-degenerate product simplex: its degeneracy
/// configuration read in the bidimension lattice.
pub fn spath_of_pair(sx: &Simplex, sy: &Simplex) -> SPath {
    let cfg =
        DegeneracyConfiguration { first: sx.word.clone(), second: sy.word.clone() };
    spath_from_config(&cfg, sx.base_dim as u32, sy.base_dim as u32)
}

fn pair_of_cell(cell: &Cell) -> (Simplex, Simplex) {
    pair_from_key(&cell.key).expect("product cell")
}

fn cell_of_config(path: &SPath, sx: &Simplex, sy: &Simplex, degree: i32) -> Cell {
    let cfg = config_from_spath(path);
    let nx = Simplex { word: cfg.first, base: sx.base.clone(), base_dim: sx.base_dim };
    let ny = Simplex { word: cfg.second, base: sy.base.clone(), base_dim: sy.base_dim };
    Cell { degree, key: pair_key(&nx, &ny) }
}

/// Classify a non-degenerate product simplex through its s-path.
pub fn ez_classify_cell(cell: &Cell) -> CellClass {
    let (sx, sy) = pair_of_cell(cell);
    let path = spath_of_pair(&sx, &sy);
    match ez_classify(&path) {
        EzClass::Source { partner, .. } => {
            CellClass::Source { target: cell_of_config(&partner, &sx, &sy, cell.degree + 1) }
        }
        EzClass::Target { partner, .. } => {
            CellClass::Target { source: cell_of_config(&partner, &sx, &sy, cell.degree - 1) }
        }
        EzClass::LastSimplex => CellClass::Critical,
    }
}

/// Layered Lyapunov function: bidimension total degree first, then the
/// number of lattice points above the path. Strictly decreases along every
/// V-step, twisted or not: same-layer steps lower the point count by one,
/// and any bidimension drop clears the whole layer offset.
pub fn ez_lyapunov(cell: &Cell) -> u64 {
    let (sx, sy) = pair_of_cell(cell);
    let (p, q) = (sx.base_dim as u64, sy.base_dim as u64);
    let s = p + q;
    // offset(s) = Σ_{j<s} (max_{p'+q'=j} p'·q' + 1)
    let offset: u64 = (0..s).map(|j| (j / 2) * j.div_ceil(2) + 1).sum();
    let path = spath_of_pair(&sx, &sy);
    offset + prism_lyapunov(&path)
}

/// The Eilenberg-Zilber vector field on C^ND(X × Y) with its layered
/// Lyapunov certificate.
pub fn ez_vector_field() -> (Field, Admissibility) {
    let field: Field = LazyVectorField::new(ez_classify_cell);
    (field, Admissibility::Lyapunov { l: Arc::new(ez_lyapunov), verified_on: 0 })
}

/// Tensor-complex cell: degree of the left factor, then both keys.
pub fn tensor_key(p: i32, xkey: &Key, ykey: &Key) -> Key {
    Key::List(vec![Key::Int(p as i64), xkey.clone(), ykey.clone()])
}

pub fn tensor_cell(p: i32, xkey: &Key, q: i32, ykey: &Key) -> Cell {
    Cell { degree: p + q, key: tensor_key(p, xkey, ykey) }
}

/// Split a tensor cell into its factor cells.
pub fn tensor_parts(cell: &Cell) -> (Cell, Cell) {
    let items = cell.key.as_list().expect("tensor cell");
    let p = items[0].as_int().expect("tensor degree") as i32;
    (
        Cell { degree: p, key: items[1].clone() },
        Cell { degree: cell.degree - p, key: items[2].clone() },
    )
}

/// The tensor product of two complexes, with the Koszul differential
/// d(a⊗b) = d(a)⊗b + (−1)^{|a|} a⊗d(b).
pub fn tensor_complex(x: &Cx, y: &Cx) -> Cx {
    let member = {
        let x = x.clone();
        let y = y.clone();
        move |cell: &Cell| {
            let Some(items) = cell.key.as_list() else { return false };
            if items.len() != 3 {
                return false;
            }
            let Some(p) = items[0].as_int() else { return false };
            let p = p as i32;
            let a = Cell { degree: p, key: items[1].clone() };
            let b = Cell { degree: cell.degree - p, key: items[2].clone() };
            x.contains(&a) && y.contains(&b)
        }
    };
    let enumerate = {
        let x = x.clone();
        let y = y.clone();
        move |degree: i32| {
            let mut out = Vec::new();
            for p in 0..=degree.max(0) {
                let BasisView::Enumerable(xa) = x.basis(p) else {
                    return BasisView::PredicateOnly;
                };
                if xa.is_empty() {
                    continue;
                }
                let BasisView::Enumerable(yb) = y.basis(degree - p) else {
                    return BasisView::PredicateOnly;
                };
                for a in &xa {
                    for b in &yb {
                        out.push(tensor_cell(p, &a.key, degree - p, &b.key));
                    }
                }
            }
            out.sort();
            BasisView::Enumerable(out)
        }
    };
    let boundary = {
        let x = x.clone();
        let y = y.clone();
        move |cell: &Cell| {
            let (a, b) = tensor_parts(cell);
            let mut out = Chain::zero(cell.degree - 1);
            for (ka, ca) in x.diff(&a).iter() {
                out.add_term(&tensor_key(a.degree - 1, ka, &b.key), ca);
            }
            let sign = if a.degree % 2 == 0 { 1 } else { -1 };
            for (kb, cb) in y.diff(&b).iter() {
                out.add_term(&tensor_key(a.degree, &a.key, kb), cb * sign);
            }
            out
        }
    };
    LazyComplex::new(member, enumerate, boundary)
}

/// (u ⊗ v)(a ⊗ b) = (−1)^{|v|·|a|} u(a) ⊗ v(b).
pub fn tensor_morphism(u: &Morphism, v: &Morphism) -> Morphism {
    let u = u.clone();
    let v = v.clone();
    let shift = u.shift() + v.shift();
    Morphism::new(shift, move |cell| {
        let (a, b) = tensor_parts(cell);
        let ua = u.apply(&a);
        let vb = v.apply(&b);
        let sign = if (v.shift() * a.degree) % 2 == 0 { 1 } else { -1 };
        let mut out = Chain::zero(cell.degree + shift);
        for (ka, ca) in ua.iter() {
            for (kb, cb) in vb.iter() {
                out.add_term(
                    &tensor_key(a.degree + u.shift(), ka, kb),
                    ca.checked_mul(cb).expect("overflow") * sign,
                );
            }
        }
        out
    })
}

/// Tensor of two reductions with the one-sided homotopy
/// h = h_F ⊗ id + (g_F f_F) ⊗ h_B.
pub fn tensor_of_reductions(rf: &Reduction, rb: &Reduction) -> Reduction {
    let big = tensor_complex(&rf.big, &rb.big);
    let small = tensor_complex(&rf.small, &rb.small);
    let f = tensor_morphism(&rf.f, &rb.f);
    let g = tensor_morphism(&rf.g, &rb.g);
    let gf = rf.g.compose(&rf.f);
    let h = tensor_morphism(&rf.h, &Morphism::identity())
        .add(&tensor_morphism(&gf, &rb.h));
    Reduction { big, small, f, g, h }
}

/// Critical cell of the EZ field holding a tensor generator: the last
/// simplex of the prism σ × τ.
pub fn last_simplex_cell(p: i32, xkey: &Key, q: i32, ykey: &Key) -> Cell {
    let first: Vec<u32> = (p as u32..(p + q) as u32).rev().collect();
    let second: Vec<u32> = (0..p as u32).rev().collect();
    let sx = Simplex { word: first, base: xkey.clone(), base_dim: p };
    let sy = Simplex { word: second, base: ykey.clone(), base_dim: q };
    Cell { degree: p + q, key: pair_key(&sx, &sy) }
}

fn relabel_to_tensor(chain: &Chain) -> Chain {
    let mut out = Chain::zero(chain.degree());
    for (key, coeff) in chain.iter() {
        let cell = Cell { degree: chain.degree(), key: key.clone() };
        let (sx, sy) = pair_of_cell(&cell);
        debug_assert!(matches!(
            ez_classify(&spath_of_pair(&sx, &sy)),
            EzClass::LastSimplex
        ));
        out.add_term(&tensor_key(sx.base_dim, &sx.base, &sy.base), coeff);
    }
    out
}

fn tensor_to_critical(cell: &Cell) -> Cell {
    let (a, b) = tensor_parts(cell);
    last_simplex_cell(a.degree, &a.key, b.degree, &b.key)
}

struct EzParts {
    big: Cx,
    f: Morphism,
    g: Morphism,
    h: Morphism,
    /// The reduction differential on tensor generators.
    small_diff: Morphism,
}

fn ez_reduction_parts(set: &SSet, enum_limit: Option<i32>) -> EzParts {
    let big = nondeg_complex(set, enum_limit);
    let (field, cert) = ez_vector_field();
    let raw = build_reduction_gauss(&big, &field, &cert);
    let f = {
        let rf = raw.f.clone();
        Morphism::new(0, move |cell| relabel_to_tensor(&rf.apply(cell)))
    };
    let g = {
        let rg = raw.g.clone();
        Morphism::new(0, move |cell| rg.apply(&tensor_to_critical(cell)))
    };
    let small_diff = {
        let small = raw.small.clone();
        Morphism::new(-1, move |cell| relabel_to_tensor(&small.diff(&tensor_to_critical(cell))))
    };
    EzParts { big, f, g, h: raw.h, small_diff }
}

/// The Eilenberg-Zilber reduction C^ND(X × Y) ⇒ C^ND(X) ⊗ C^ND(Y).
///
/// The reduction differential on the critical complex is checked against the
/// Koszul tensor differential on every generator through `through_degree`;
/// a mismatch is an internal-consistency error.
pub fn ez_reduction(x: &SSet, y: &SSet, through_degree: i32) -> Result<Reduction> {
    let set: SSet = product(x, y);
    let parts = ez_reduction_parts(&set, Some(through_degree + 1));
    let tensor = tensor_complex(&nondeg_complex(x, None), &nondeg_complex(y, None));
    for n in 0..=through_degree {
        if let BasisView::Enumerable(cells) = tensor.basis(n) {
            for cell in cells {
                let got = parts.small_diff.apply(&cell);
                let want = tensor.diff(&cell);
                if got != want {
                    return Err(Error::Internal(format!(
                        "EZ small differential disagrees with the tensor differential \
                         at {cell}: got {got}, want {want}"
                    )));
                }
            }
        }
    }
    Ok(Reduction { big: parts.big, small: tensor, f: parts.f, g: parts.g, h: parts.h })
}

/// The twisted Eilenberg-Zilber reduction C(F ×_τ B) ⇒ C(F) ⊗_t C(B): the
/// same vector field, the small complex now carrying the differential the
/// reduction machinery produces (the twisted tensor differential).
pub fn twisted_ez_reduction(
    fiber: &SSet,
    base: &SSet,
    tau: &Arc<TwistingFn>,
    action: impl Fn(&Simplex, &Simplex) -> Simplex + Send + Sync + 'static,
    through_degree: i32,
    twist_samples: &[Simplex],
) -> Result<Reduction> {
    let report = verify_twisting(tau, base, twist_samples);
    if let Some(v) = report.violations.first() {
        return Err(Error::Contract(format!(
            "twisting identity {} fails at {:?}",
            v.identity, v.simplex
        )));
    }
    let set: SSet =
        crate::simplicial::product::twisted_product(fiber, base, tau, action);
    let parts = ez_reduction_parts(&set, Some(through_degree + 1));

    // The small complex is the tensor module with the transferred
    // differential.
    let untwisted = tensor_complex(&nondeg_complex(fiber, None), &nondeg_complex(base, None));
    let small_diff = parts.small_diff.memoized();
    let member = {
        let untwisted = untwisted.clone();
        move |cell: &Cell| untwisted.contains(cell)
    };
    let enumerate = {
        let untwisted = untwisted.clone();
        move |degree: i32| untwisted.basis(degree)
    };
    let boundary = {
        let small_diff = small_diff.clone();
        move |cell: &Cell| small_diff.apply(cell)
    };
    let small: Cx = LazyComplex::new(member, enumerate, boundary);
    Ok(Reduction { big: parts.big, small, f: parts.f, g: parts.g, h: parts.h })
}

/// Homology of a finite truncation of a complex: materialize degrees
/// 0..=max_degree into a finite complex (boundaries below degree 0 and above
/// max_degree are ignored) and run the matrix pipeline.
pub fn truncated_finite_complex(
    cx: &Cx,
    max_degree: i32,
) -> Result<std::sync::Arc<crate::complex::FiniteComplex>> {
    let mut builder = crate::complex::FiniteComplex::builder();
    for degree in 0..=max_degree {
        let BasisView::Enumerable(cells) = cx.basis(degree) else {
            return Err(Error::Contract(format!(
                "degree {degree} basis is not enumerable"
            )));
        };
        for cell in cells {
            if degree == 0 {
                builder.add_cell(cell);
            } else {
                builder.add_cell_with_boundary(cell.clone(), cx.diff(&cell));
            }
        }
    }
    builder.build()
}

/// Sample every non-degenerate cell of a product complex through a degree.
pub fn product_cells_through(set: &SSet, max_degree: i32) -> Vec<Cell> {
    let cx = nondeg_complex(set, None);
    let mut out = Vec::new();
    for degree in 0..=max_degree {
        if let BasisView::Enumerable(cells) = cx.basis(degree) {
            out.extend(cells);
        }
    }
    out
}
