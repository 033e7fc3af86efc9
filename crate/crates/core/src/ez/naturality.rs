//! Naturality of the Eilenberg-Zilber reduction: a pair of simplicial
//! morphisms induces a morphism between the two reductions, and the vector
//! fields are compatible wherever the images stay non-degenerate.

use super::field::{ez_vector_field, tensor_key, tensor_parts};
use crate::chain::Chain;
use crate::complex::BasisView;
use crate::dvf::CellClass;
use crate::key::{Cell, Key};
use crate::morphism::Morphism;
use crate::reduction::Reduction;
use crate::simplicial::product::{canonical_pair, pair_from_key};
use crate::simplicial::{Simplex, SSet};
use std::sync::Arc;

type OnNondegFn = dyn Fn(&Key, i32) -> Simplex + Send + Sync;

/// A simplicial morphism, presented on non-degenerate simplices and extended
/// by functoriality.
pub struct SimplicialMorphism {
    pub source: SSet,
    pub target: SSet,
    on_nondeg: Arc<OnNondegFn>,
}

impl SimplicialMorphism {
    pub fn new(
        source: &SSet,
        target: &SSet,
        on_nondeg: impl Fn(&Key, i32) -> Simplex + Send + Sync + 'static,
    ) -> SimplicialMorphism {
        SimplicialMorphism {
            source: source.clone(),
            target: target.clone(),
            on_nondeg: Arc::new(on_nondeg),
        }
    }

    pub fn identity(set: &SSet) -> SimplicialMorphism {
        SimplicialMorphism::new(set, set, |key, dim| Simplex::nondeg(key.clone(), dim))
    }

    /// φ(η_w base) = η_w φ(base), re-normalized.
    pub fn apply(&self, s: &Simplex) -> Simplex {
        let mut t = (self.on_nondeg)(&s.base, s.base_dim);
        for &j in s.word.iter().rev() {
            t = t.degenerate(j);
        }
        t
    }
}

/// The induced map on product cells, as a chain morphism of the normalized
/// complexes (degenerate images die).
pub fn product_chain_map(
    phi: &SimplicialMorphism,
    psi: &SimplicialMorphism,
) -> Morphism {
    let phi_on = phi.on_nondeg.clone();
    let psi_on = psi.on_nondeg.clone();
    Morphism::new(0, move |cell: &Cell| {
        let (sx, sy) = pair_from_key(&cell.key).expect("product cell");
        let fx = apply_morphism_parts(&phi_on, &sx);
        let fy = apply_morphism_parts(&psi_on, &sy);
        let pair = canonical_pair(&fx, &fy);
        if pair.is_degenerate() {
            Chain::zero(cell.degree)
        } else {
            Chain::single(cell.degree, pair.base, 1)
        }
    })
}

fn apply_morphism_parts(on_nondeg: &Arc<OnNondegFn>, s: &Simplex) -> Simplex {
    let mut t = on_nondeg(&s.base, s.base_dim);
    for &j in s.word.iter().rev() {
        t = t.degenerate(j);
    }
    t
}

/// The induced map on tensor cells.
pub fn tensor_chain_map(phi: &SimplicialMorphism, psi: &SimplicialMorphism) -> Morphism {
    let phi_on = phi.on_nondeg.clone();
    let psi_on = psi.on_nondeg.clone();
    Morphism::new(0, move |cell: &Cell| {
        let (a, b) = tensor_parts(cell);
        let fa = phi_on(&a.key, a.degree);
        let fb = psi_on(&b.key, b.degree);
        if fa.is_degenerate() || fb.is_degenerate() {
            Chain::zero(cell.degree)
        } else {
            Chain::single(cell.degree, tensor_key(fa.base_dim, &fa.base, &fb.base), 1)
        }
    })
}

#[derive(Debug)]
pub struct NaturalityViolation {
    pub check: &'static str,
    pub cell: Cell,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Default)]
pub struct NaturalityReport {
    pub checked: usize,
    pub violations: Vec<NaturalityViolation>,
}

impl NaturalityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify that (φ × ψ) is a morphism of Eilenberg-Zilber reductions on the
/// sampled product cells: the induced chain maps commute with f and h, with
/// g on the tensor generators below, and the vector fields correspond
/// wherever both members of a vector survive.
pub fn naturality_check(
    phi: &SimplicialMorphism,
    psi: &SimplicialMorphism,
    rho: &Reduction,
    rho_image: &Reduction,
    samples: &[Cell],
) -> NaturalityReport {
    let mut report = NaturalityReport::default();
    let big_map = product_chain_map(phi, psi);
    let small_map = tensor_chain_map(phi, psi);
    let (field, _) = ez_vector_field();
    let (field_image, _) = ez_vector_field();

    for cell in samples {
        report.checked += 1;
        // f′ ∘ F = (Fφ ⊗ Fψ) ∘ f
        let lhs = rho_image.f.apply_chain(&big_map.apply(cell));
        let rhs = small_map.apply_chain(&rho.f.apply(cell));
        if lhs != rhs {
            report.violations.push(NaturalityViolation {
                check: "f-naturality",
                cell: cell.clone(),
                lhs: format!("{lhs}"),
                rhs: format!("{rhs}"),
            });
        }
        // h′ ∘ F = F ∘ h
        let lhs = rho_image.h.apply_chain(&big_map.apply(cell));
        let rhs = big_map.apply_chain(&rho.h.apply(cell));
        if lhs != rhs {
            report.violations.push(NaturalityViolation {
                check: "h-naturality",
                cell: cell.clone(),
                lhs: format!("{lhs}"),
                rhs: format!("{rhs}"),
            });
        }
        // vector-field compatibility where images survive
        if let CellClass::Source { target } = field.classify(cell) {
            let fc = big_map.apply(cell);
            let ft = big_map.apply(&target);
            let fc_key = fc.iter().next().map(|(k, _)| k.clone());
            let ft_key = ft.iter().next().map(|(k, _)| k.clone());
            if let (Some(ck), Some(tk)) = (fc_key, ft_key) {
                let image_cell = Cell { degree: cell.degree, key: ck };
                let image_target = Cell { degree: target.degree, key: tk };
                match field_image.classify(&image_cell) {
                    CellClass::Source { target: t2 } if t2 == image_target => {}
                    other => report.violations.push(NaturalityViolation {
                        check: "vector-compatibility",
                        cell: cell.clone(),
                        lhs: format!("{image_cell} -> {image_target}"),
                        rhs: format!("{other:?}"),
                    }),
                }
            }
        }
    }

    // g-naturality on the tensor generators reachable from the samples.
    let mut seen = std::collections::BTreeSet::new();
    for cell in samples {
        for (key, _) in rho.f.apply(cell).iter() {
            seen.insert(Cell { degree: cell.degree, key: key.clone() });
        }
    }
    for gen in seen {
        let lhs = big_map.apply_chain(&rho.g.apply(&gen));
        let rhs = rho_image.g.apply_chain(&small_map.apply(&gen));
        if lhs != rhs {
            report.violations.push(NaturalityViolation {
                check: "g-naturality",
                cell: gen.clone(),
                lhs: format!("{lhs}"),
                rhs: format!("{rhs}"),
            });
        }
    }
    report
}

/// The inclusion of a face Δ^m ↪ Δ^n along a vertex map.
pub fn delta_inclusion(m: i32, n: i32, vertex_map: Vec<i64>) -> SimplicialMorphism {
    use crate::simplicial::models::delta;
    assert_eq!(vertex_map.len() as i32, m + 1);
    let src = delta(m);
    let dst = delta(n);
    SimplicialMorphism::new(&src, &dst, move |key, dim| {
        let vs: Vec<i64> = key
            .as_list()
            .expect("delta key")
            .iter()
            .map(|k| vertex_map[k.as_int().unwrap() as usize])
            .collect();
        Simplex::nondeg(Key::ints(vs), dim)
    })
}

/// The collapse Δ^n → Δ^0.
pub fn delta_collapse(n: i32) -> SimplicialMorphism {
    use crate::simplicial::models::delta;
    let src = delta(n);
    let dst = delta(0);
    SimplicialMorphism::new(&src, &dst, move |_key, dim| {
        // every vertex to 0; the image of a d-simplex is the totally
        // degenerate d-simplex over the vertex
        let base = Simplex::nondeg(Key::ints([0]), 0);
        let mut out = base;
        for j in 0..dim as u32 {
            out = out.degenerate(j);
        }
        out
    })
}

/// Every non-degenerate cell of C^ND(X × Y) through a degree bound.
pub fn sample_product_cells(set: &SSet, through: i32) -> Vec<Cell> {
    let cx = crate::simplicial::nondeg_complex(set, None);
    let mut out = Vec::new();
    for d in 0..=through {
        if let BasisView::Enumerable(cells) = cx.basis(d) {
            out.extend(cells);
        }
    }
    out
}

