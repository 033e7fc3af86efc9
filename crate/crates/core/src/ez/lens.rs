//! The twisted-product demo pipeline: K(ℤ,1) ×_τ S² with τ(s²) = k is a
//! lens space; composing the twisted Eilenberg-Zilber reduction with the
//! tensor of the K(ℤ,1) ⇒ S¹ reduction and the identity on C(S²), through
//! the homological perturbation theorem, lands on a four-generator complex
//!   0 ← ℤ ←0− ℤ ←·k− ℤ ←0− ℤ.

use super::field::{tensor_of_reductions, twisted_ez_reduction};
use crate::chain::Chain;
use crate::complex::{BasisView, Cx, LazyComplex, Result};
use crate::dvf::build_reduction_gauss;
use crate::key::{Cell, Key};
use crate::morphism::Morphism;
use crate::reduction::{compose_reductions, perturb, Perturbation, Reduction};
use crate::simplicial::models::{kz1, minimal_sphere, SimplicialGroup, TOP_CELL};
use crate::simplicial::normalization::kz1_vf;
use crate::simplicial::product::TwistingFn;
use crate::simplicial::{degeneracy_words, nondeg_complex, Simplex, SSet};
use std::sync::Arc;

/// The twisting function of the lens-space bundle: τ(s²) = `[k]`.
pub fn lens_twisting(k: i64) -> Arc<TwistingFn> {
    let group: Arc<dyn SimplicialGroup> = kz1();
    TwistingFn::new(group, move |key, dim| {
        assert!(*key == TOP_CELL && dim == 2, "the base S² has one simplex with a twist");
        Simplex::nondeg(Key::ints([k]), 1)
    })
}

/// Every simplex of the minimal S² through a dimension (for twisting-identity
/// samples).
pub fn sphere_simplices_through(n: i32) -> Vec<Simplex> {
    let set = minimal_sphere(2);
    let mut out = Vec::new();
    for dim in 0..=n {
        for q in [0, 2] {
            if q > dim {
                continue;
            }
            for base in set.nondeg_basis(q).unwrap() {
                for word in degeneracy_words((dim - q) as usize, dim) {
                    out.push(Simplex { word, base: base.clone(), base_dim: q });
                }
            }
        }
    }
    out
}

/// Non-degenerate cells of K(ℤ,1) × S² (twisted or not — same underlying
/// simplices) through a degree, with bar entries drawn from a small range.
pub fn lens_sample_cells(through: i32, max_entry: i64) -> Vec<Cell> {
    use crate::simplicial::product::pair_key;
    let mut bars_by_dim: Vec<Vec<Key>> = vec![vec![Key::ints([])]];
    for dim in 1..=through {
        let mut layer = Vec::new();
        rec(&mut layer, &mut Vec::new(), dim as usize, max_entry);
        bars_by_dim.push(layer);
    }
    let sphere = minimal_sphere(2);
    let mut out = Vec::new();
    for n in 0..=through {
        for p in 0..=n {
            for q in [0i32, 2] {
                if q > n {
                    continue;
                }
                let s_words = degeneracy_words((n - p) as usize, n);
                let t_words = degeneracy_words((n - q) as usize, n);
                for sw in &s_words {
                    for tw in &t_words {
                        if sw.iter().any(|j| tw.contains(j)) {
                            continue;
                        }
                        for bar in &bars_by_dim[p as usize] {
                            let sx = Simplex { word: sw.clone(), base: bar.clone(), base_dim: p };
                            for tb in sphere.nondeg_basis(q).unwrap() {
                                let sy =
                                    Simplex { word: tw.clone(), base: tb.clone(), base_dim: q };
                                out.push(Cell { degree: n, key: pair_key(&sx, &sy) });
                            }
                        }
                    }
                }
            }
        }
    }
    return out;

    fn rec(out: &mut Vec<Key>, cur: &mut Vec<i64>, len: usize, max_entry: i64) {
        if cur.len() == len {
            out.push(Key::ints(cur.clone()));
            return;
        }
        for v in -max_entry..=max_entry {
            if v == 0 {
                continue;
            }
            cur.push(v);
            rec(out, cur, len, max_entry);
            cur.pop();
        }
    }
}

/// Everything the demo reports: the final reduction and its four-generator
/// bottom complex.
pub struct LensPipeline {
    /// C(K(ℤ,1) ×_τ S²) ⇒ twisted tensor complex.
    pub twisted: Reduction,
    /// The composed reduction down to the four-generator complex.
    pub total: Reduction,
    /// The four bottom generators in degrees 0..=3.
    pub generators: Vec<Cell>,
}

/// Run the full lens-space pipeline for τ(s²) = k.
pub fn lens_space_pipeline(k: i64) -> Result<LensPipeline> {
    let group = kz1();
    let fiber: SSet = group.clone();
    let base: SSet = minimal_sphere(2);
    let tau = lens_twisting(k);

    // twisted EZ reduction; twisting identities are verified on every base
    // simplex through dimension 5
    let g2 = group.clone();
    let rho1 = twisted_ez_reduction(
        &fiber,
        &base,
        &tau,
        move |gamma, f| g2.mul(gamma, f),
        4,
        &sphere_simplices_through(5),
    )?;

    // K(ℤ,1) ⇒ circle reduction, with an enumerable view of its critical
    // complex (cells [] and [1])
    let kc: Cx = nondeg_complex(&fiber, None);
    let (field, cert) = kz1_vf();
    let rho_k = build_reduction_gauss(&kc, &field, &cert);
    let circle: Cx = {
        let inner = rho_k.small.clone();
        LazyComplex::new(
            {
                let inner = inner.clone();
                move |cell: &Cell| inner.contains(cell)
            },
            |degree: i32| {
                BasisView::Enumerable(match degree {
                    0 => vec![Cell { degree: 0, key: Key::ints([]) }],
                    1 => vec![Cell { degree: 1, key: Key::ints([1]) }],
                    _ => Vec::new(),
                })
            },
            {
                let inner = inner.clone();
                move |cell: &Cell| inner.diff(cell)
            },
        )
    };
    let rho_k = Reduction { big: rho_k.big, small: circle, f: rho_k.f, g: rho_k.g, h: rho_k.h };

    // tensor with the identity reduction of C^ND(S²)
    let sphere_cx: Cx = nondeg_complex(&base, None);
    let rho2 = tensor_of_reductions(&rho_k, &Reduction::identity(&sphere_cx));

    // perturb the tensor reduction by the twist of the big differential
    let delta_hat = {
        let twisted_small = rho1.small.clone();
        let plain = rho2.big.clone();
        Morphism::new(-1, move |cell| twisted_small.diff(cell).sub(&plain.diff(cell)))
    };
    let perturbation = Perturbation::new(delta_hat, |cell| cell.degree as usize + 2);
    let rho2p = perturb(&rho2, &perturbation)?;

    // rebind the middle complex so the composition sees one Arc; the two
    // differentials agree cell-wise by construction
    let rho1 = Reduction {
        big: rho1.big,
        small: rho2p.big.clone(),
        f: rho1.f,
        g: rho1.g,
        h: rho1.h,
    };
    let total = compose_reductions(&rho1, &rho2p)?;

    let generators = lens_generators();
    Ok(LensPipeline { twisted: rho1, total, generators })
}

/// The four bottom generators `[]⊗*`, `[1]⊗*`, `[]⊗s²`, `[1]⊗s²` in degrees 0..=3.
pub fn lens_generators() -> Vec<Cell> {
    use super::field::tensor_cell;
    let empty = Key::ints([]);
    let one = Key::ints([1]);
    vec![
        tensor_cell(0, &empty, 0, &Key::Sym("*")),
        tensor_cell(1, &one, 0, &Key::Sym("*")),
        tensor_cell(0, &empty, 2, &TOP_CELL),
        tensor_cell(1, &one, 2, &TOP_CELL),
    ]
}

/// The textbook lens-space cellular complex 0 ← ℤ ←0− ℤ ←·k− ℤ ←0− ℤ, the
/// oracle for the pipeline's bottom complex.
pub fn lens_oracle_complex(k: i64) -> Result<Arc<crate::complex::FiniteComplex>> {
    let mut b = crate::complex::FiniteComplex::builder();
    let cells: Vec<Cell> = (0..4).map(|d| Cell::new(d, "e")).collect();
    b.add_cell(cells[0].clone());
    b.add_cell_with_boundary(cells[1].clone(), Chain::zero(0));
    b.add_cell_with_boundary(cells[2].clone(), Chain::generator(&cells[1]).scale(k));
    b.add_cell_with_boundary(cells[3].clone(), Chain::zero(2));
    b.build()
}
