//! Property tests for the structural invariants: exact chain arithmetic,
//! Eilenberg-triple round-trips, simplicial identities, incidence versus
//! boundary coefficients, and reduction identities on random instances.

mod common;

use common::random_acc;
use homred_core::dvf::{build_reduction_gauss, recover_vector_field, Field, RecoveryOutcome};
use homred_core::matrix::complex_vf_incremental;
use homred_core::reduction::{boundary_preimage, verify_reduction};
use homred_core::simplicial::models::{delta, kz1};
use homred_core::simplicial::{canonical_face, Simplex, SSet};
use homred_core::{incidence, Cell, Chain, Key};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn arb_chain() -> impl Strategy<Value = Chain> {
    prop::collection::btree_map(0i64..20, -5i64..=5, 0..8)
        .prop_map(|terms| Chain::from_terms(1, terms.into_iter().map(|(k, v)| (Key::Int(k), v))))
}

proptest! {
    #[test]
    fn chain_arithmetic_is_an_exact_z_module(a in arb_chain(), b in arb_chain(), c in arb_chain()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert!(a.add(&b).iter().all(|(_, v)| v != 0));
        prop_assert_eq!(a.scale(3).sub(&a.scale(2)), a.clone());
    }

    #[test]
    fn eilenberg_triple_round_trip(word in prop::collection::btree_set(0u32..6, 0..4),
                                   entries in prop::collection::vec((1i64..4).prop_union(-3i64..0), 1..4)) {
        // a random degeneracy word applied to a random non-degenerate bar
        // simplex re-normalizes to itself
        let base_dim = entries.len() as i32;
        let mut s = Simplex::nondeg(Key::ints(entries), base_dim);
        for j in word.iter().copied().collect::<Vec<_>>() {
            // keep indices in range as the dimension grows
            let j = j.min(s.dim() as u32);
            s = s.degenerate(j);
        }
        let m = s.vertex_map();
        let back = Simplex::from_vertex_map(&m, s.base.clone(), s.base_dim);
        prop_assert_eq!(back, s);
    }

    #[test]
    fn face_degeneracy_identities_on_kz1(entries in prop::collection::vec((1i64..5).prop_union(-4i64..0), 2..5),
                                         i in 0u32..6, j in 0u32..6) {
        let set: SSet = kz1();
        let dim = entries.len() as i32;
        let s = Simplex::nondeg(Key::ints(entries), dim);
        // ∂_i ∂_j = ∂_{j-1} ∂_i for i < j
        let (i, j) = (i.min(dim as u32 - 1), j.min(dim as u32));
        if i < j {
            let lhs = canonical_face(set.as_ref(), i, &canonical_face(set.as_ref(), j, &s));
            let rhs = canonical_face(set.as_ref(), j - 1, &canonical_face(set.as_ref(), i, &s));
            prop_assert_eq!(lhs, rhs);
        }
        // ∂_i η_i = id = ∂_{i+1} η_i
        let k = i.min(dim as u32);
        prop_assert_eq!(canonical_face(set.as_ref(), k, &s.degenerate(k)), s.clone());
        prop_assert_eq!(canonical_face(set.as_ref(), k + 1, &s.degenerate(k)), s);
    }
}

#[test]
fn incidence_equals_boundary_coefficient() {
    let set = delta(3);
    let cx = homred_core::simplicial::nondeg_complex(&set, None);
    for dim in 1..=3 {
        for tau_key in set.nondeg_basis(dim).unwrap() {
            let tau = Cell { degree: dim, key: tau_key };
            let d = cx.diff(&tau);
            for sigma_key in set.nondeg_basis(dim - 1).unwrap() {
                let sigma = Cell { degree: dim - 1, key: sigma_key };
                assert_eq!(
                    incidence(cx.as_ref(), &sigma, &tau).unwrap(),
                    d.coeff_of(&sigma)
                );
            }
        }
    }
}

#[test]
fn composed_reductions_on_random_instances_pass_verification() {
    // build two-step reductions by splitting a heuristic field, compose,
    // and verify the five identities
    use homred_core::dvf::DiscreteVectorField;
    use homred_core::reduction::compose_reductions;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..10 {
        let cx = random_acc(&mut rng, 4, 20);
        let (field, _) = complex_vf_incremental(cx.as_ref());
        if field.len() < 2 {
            continue;
        }
        let vectors: Vec<_> =
            field.vectors().map(|(s, t)| (s.clone(), t.clone())).collect();
        let (first, second) = vectors.split_at(vectors.len() / 2);

        let cx: homred_core::Cx = cx;
        let mut v1 = DiscreteVectorField::new();
        for (s, t) in first {
            v1.add_vector(cx.as_ref(), s.clone(), t.clone()).unwrap();
        }
        let f1: Field = Arc::new(v1);
        let c1 = homred_core::dvf::check_admissible(cx.as_ref(), f1.as_ref(), 0..=4)
            .certificate()
            .unwrap();
        let r1 = build_reduction_gauss(&cx, &f1, &c1);

        let mid = r1.small.clone();
        let mut v2 = DiscreteVectorField::new();
        let mut ok = true;
        for (s, t) in second {
            if v2.add_vector(mid.as_ref(), s.clone(), t.clone()).is_err() {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let f2: Field = Arc::new(v2);
        let c2 = match homred_core::dvf::check_admissible(mid.as_ref(), f2.as_ref(), 0..=4) {
            homred_core::dvf::AdmissibleOutcome::Certified(c) => c,
            homred_core::dvf::AdmissibleOutcome::Loop(_) => continue,
        };
        let r2 = build_reduction_gauss(&mid, &f2, &c2);
        let composed = compose_reductions(&r1, &r2).unwrap();

        let cells = cx_cells(&cx);
        let criticals: Vec<Cell> = cells
            .iter()
            .filter(|c| composed.small.contains(c))
            .cloned()
            .collect();
        let report = verify_reduction(&composed, cells.iter(), criticals.iter());
        assert!(report.is_clean(), "{:?}", report.violations.first());
    }
}

fn cx_cells(cx: &homred_core::Cx) -> Vec<Cell> {
    let mut out = Vec::new();
    for d in 0..=6 {
        if let homred_core::BasisView::Enumerable(cells) = cx.basis(d) {
            out.extend(cells);
        }
    }
    out
}

#[test]
fn boundary_preimage_is_exact_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    for _ in 0..15 {
        let cx = random_acc(&mut rng, 4, 20);
        let (field, cert) = complex_vf_incremental(cx.as_ref());
        let field: Field = Arc::new(field);
        let cx: homred_core::Cx = cx;
        let red = build_reduction_gauss(&cx, &field, &cert);
        // boundaries are cycles with known preimages: z = d(w0) for any cell
        // w0; then d(boundary_preimage(z, c)) = z for a matching c
        for cell in cx_cells(&cx).into_iter().filter(|c| c.degree >= 1).take(8) {
            let z = cx.diff(&cell);
            if z.is_zero() {
                continue;
            }
            let fz = red.f.apply_chain(&z);
            // f(z) = f(d(w0)) = d'(f(w0)), so c = f(w0) works
            let c = red.f.apply(&cell);
            let w = boundary_preimage(&red, &z, &c).unwrap();
            assert_eq!(homred_core::complex::diff_chain(cx.as_ref(), &w), z);
            let _ = fz;
        }
    }
}

#[test]
fn recovery_round_trip_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for case in 0..20 {
        let cx = random_acc(&mut rng, 4, 20);
        let (field, cert) = complex_vf_incremental(cx.as_ref());
        let expected: Vec<_> = field.vectors().map(|(s, t)| (s.clone(), t.clone())).collect();
        let field: Field = Arc::new(field);
        let cx: homred_core::Cx = cx;
        let red = build_reduction_gauss(&cx, &field, &cert);
        match recover_vector_field(&red, &cx_cells(&cx)) {
            RecoveryOutcome::Field(rec) => {
                let got: Vec<_> = rec.vectors().map(|(s, t)| (s.clone(), t.clone())).collect();
                assert_eq!(got, expected, "case {case}");
            }
            RecoveryOutcome::Failure(msg) => panic!("case {case}: {msg}"),
        }
    }
}

#[test]
fn d21_inverse_is_a_right_inverse_on_sources() {
    // d_{2,1} ∘ invert_d21 = id on source cells, exactly
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..10 {
        let cx = random_acc(&mut rng, 4, 24);
        let (field, cert) = complex_vf_incremental(cx.as_ref());
        let field: Field = Arc::new(field);
        let cx: homred_core::Cx = cx;
        for sigma in cx_cells(&cx) {
            use homred_core::dvf::CellClass;
            if !matches!(field.classify(&sigma), CellClass::Source { .. }) {
                continue;
            }
            let x = homred_core::dvf::invert_d21(&cx, &field, &cert, &sigma).unwrap();
            // source component of d(x) must be exactly sigma
            let dx = homred_core::complex::diff_chain(cx.as_ref(), &x);
            let mut src_part = Chain::zero(dx.degree());
            for c in dx.cells() {
                if matches!(field.classify(&c), CellClass::Source { .. }) {
                    src_part.add_cell(&c, dx.coeff_of(&c));
                }
            }
            assert_eq!(src_part, Chain::generator(&sigma));
        }
    }
}

#[test]
fn composition_is_associative_cell_wise() {
    use homred_core::dvf::DiscreteVectorField;
    use homred_core::morphism::morphisms_agree;
    use homred_core::reduction::compose_reductions;
    // three one-vector reductions on a 4-cell interval complex
    let mut b = homred_core::FiniteComplex::builder();
    for v in 0..4 {
        b.add_cell(Cell::new(0, v));
    }
    for (e, (i, j)) in [(10i64, (0i64, 1i64)), (11, (1, 2)), (12, (2, 3))] {
        let mut d = Chain::generator(&Cell::new(0, j));
        d.add_cell(&Cell::new(0, i), -1);
        b.add_cell_with_boundary(Cell::new(1, e), d);
    }
    let cx: homred_core::Cx = b.build().unwrap();
    let step = |big: &homred_core::Cx, v: i64, e: i64| {
        let mut field = DiscreteVectorField::new();
        field.add_vector(big.as_ref(), Cell::new(0, v), Cell::new(1, e)).unwrap();
        let f: Field = Arc::new(field);
        let cert = homred_core::dvf::check_admissible(big.as_ref(), f.as_ref(), 0..=1)
            .certificate()
            .unwrap();
        build_reduction_gauss(big, &f, &cert)
    };
    let r1 = step(&cx, 1, 10);
    let r2 = step(&r1.small, 2, 11);
    let r3 = step(&r2.small, 3, 12);
    let left = compose_reductions(&compose_reductions(&r1, &r2).unwrap(), &r3).unwrap();
    let right = compose_reductions(&r1, &compose_reductions(&r2, &r3).unwrap()).unwrap();
    let cells = cx_cells(&cx);
    let small_cells = [Cell::new(0, 0)];
    assert!(morphisms_agree(&left.f, &right.f, cells.iter()));
    assert!(morphisms_agree(&left.h, &right.h, cells.iter()));
    assert!(morphisms_agree(&left.g, &right.g, small_cells.iter()));
}
