//! The Eilenberg-Zilber machinery: filling sequences against the tables,
//! prism classification, the EZ reduction and its comparison with the
//! classical formulas, naturality, and the twisted variant.

use homred_core::complex::{BasisView, Cx};
use homred_core::dvf::{check_admissible_lyapunov, AdmissibleOutcome, CellClass};
use homred_core::ez::field::{
    ez_lyapunov, product_cells_through, truncated_finite_complex,
};
use homred_core::ez::naturality::{delta_collapse, delta_inclusion, sample_product_cells};
use homred_core::ez::*;
use homred_core::matrix::{homology_by_snf, Homology};
use homred_core::reduction::verify_reduction;
use homred_core::simplicial::models::{boundary_delta, delta, kz1, s1};
use homred_core::simplicial::product::{pair_from_key, product, TwistingFn};
use homred_core::simplicial::{nondeg_complex, SSet};
use homred_core::{Cell, Key};

#[test]
fn filling_sequences_match_the_tables() {
    // (1,1): diagonal, then up-right
    let f11 = filling_sequence(1, 1);
    assert_eq!(
        f11,
        vec![
            SPath::parse("(0,0)(1,1)").unwrap(),
            SPath::parse("(0,0)(0,1)(1,1)").unwrap(),
        ]
    );
    // (2,1) and (1,2): 4 paths each, in table order
    let f21 = filling_sequence(2, 1);
    assert_eq!(
        f21,
        vec![
            SPath::parse("(0,0)(1,1)(2,1)").unwrap(),
            SPath::parse("(0,0)(0,1)(1,1)(2,1)").unwrap(),
            SPath::parse("(0,0)(1,0)(2,1)").unwrap(),
            SPath::parse("(0,0)(1,0)(1,1)(2,1)").unwrap(),
        ]
    );
    assert_eq!(filling_sequence(1, 2).len(), 4);
    // (2,2): the 12 paths of the table, in order
    let f22 = filling_sequence(2, 2);
    let expected: Vec<SPath> = [
        "(0,0)(1,1)(2,2)",
        "(0,0)(1,1)(1,2)(2,2)",
        "(0,0)(0,1)(1,2)(2,2)",
        "(0,0)(0,1)(0,2)(1,2)(2,2)",
        "(0,0)(0,1)(1,1)(2,2)",
        "(0,0)(0,1)(1,1)(1,2)(2,2)",
        "(0,0)(1,1)(2,1)(2,2)",
        "(0,0)(0,1)(1,1)(2,1)(2,2)",
        "(0,0)(1,0)(1,1)(2,2)",
        "(0,0)(1,0)(1,1)(1,2)(2,2)",
        "(0,0)(1,0)(2,1)(2,2)",
        "(0,0)(1,0)(1,1)(2,1)(2,2)",
    ]
    .iter()
    .map(|s| SPath::parse(s).unwrap())
    .collect();
    assert_eq!(f22, expected);
}

#[test]
fn filling_sequences_are_valid_and_counted() {
    for p in 0..=4u32 {
        for q in 0..=4u32 {
            let seq = filling_sequence(p, q);
            assert_eq!(
                seq.len() as u128 + 1,
                interior_path_count(p, q),
                "count at ({p},{q})"
            );
            is_valid_filling_sequence(p, q, &seq).unwrap();
        }
    }
    // the sequence beats 3^p for p = q in 2..=5
    for p in 2..=5u32 {
        let count = interior_path_count(p, p) - 1;
        assert!(count > 3u128.pow(p), "({p},{p}): {count}");
    }
}

#[test]
fn interior_faces_against_direct_test_on_2x2() {
    // every face of every interior path: the bend criterion agrees with the
    // direct interiority test
    for path in all_interior_paths(2, 2) {
        let listed = interior_faces(&path);
        for k in 0..=path.dim() {
            let face = path.face(k);
            // interior relative to the ambient (2,2) prism
            let interior = face.is_interior() && face.bidim() == (2, 2);
            let is_listed = listed.iter().any(|(i, _)| *i == k);
            assert_eq!(interior, is_listed, "{path} face {k}");
        }
    }
    // end faces are never interior in the ambient prism
    let lam = last_simplex(2, 1);
    assert!(!lam.face(0).is_interior());
    assert!(lam.face(lam.dim()).bidim() != (2, 1));
    // a diagonal-only path has no interior faces
    let diag = SPath::parse("(0,0)(1,1)(2,2)").unwrap();
    assert!(interior_faces(&diag).is_empty());
}

#[test]
fn classification_partition_of_prisms() {
    // D and R are mutually inverse, one last simplex per prism
    for (p, q) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
        let mut last_count = 0;
        let mut d_count = 0;
        let mut r_count = 0;
        for path in all_interior_paths(p, q) {
            match ez_classify(&path) {
                EzClass::Source { partner, face_index } => {
                    d_count += 1;
                    match ez_classify(&partner) {
                        EzClass::Target { partner: back, face_index: k } => {
                            assert_eq!(back, path);
                            assert_eq!(k, face_index);
                        }
                        other => panic!("partner of a source is a target, got {other:?}"),
                    }
                }
                EzClass::Target { partner, .. } => {
                    r_count += 1;
                    match ez_classify(&partner) {
                        EzClass::Source { partner: back, .. } => assert_eq!(back, path),
                        other => panic!("{other:?}"),
                    }
                }
                EzClass::LastSimplex => last_count += 1,
            }
        }
        assert_eq!(last_count, 1, "({p},{q})");
        assert_eq!(d_count, r_count, "({p},{q})");
    }
}

#[test]
fn ez_field_on_the_square() {
    // Δ¹×Δ¹: classification matches the (1,1) prism table
    let set: SSet = product(&delta(1), &delta(1));
    let (field, _) = ez_vector_field();
    let cells = product_cells_through(&set, 2);
    // 4 vertices + 5 edges + 2 triangles
    assert_eq!(cells.len(), 11);
    let mut sources = 0;
    let mut targets = 0;
    let mut criticals = 0;
    for cell in &cells {
        match field.classify(cell) {
            CellClass::Source { target } => {
                sources += 1;
                // mutual pairing
                match field.classify(&target) {
                    CellClass::Target { source } => assert_eq!(source, *cell),
                    other => panic!("{other:?}"),
                }
            }
            CellClass::Target { .. } => targets += 1,
            CellClass::Critical => criticals += 1,
        }
    }
    // tensor basis of Δ¹⊗Δ¹: 2·2 vertices... dims (2+2·... ) = 9 generators
    assert_eq!(criticals, 9);
    assert_eq!(sources, 1);
    assert_eq!(targets, 1);

    // admissibility via the layered Lyapunov function on this sample
    let cx = nondeg_complex(&set, None);
    match check_admissible_lyapunov(cx.as_ref(), field.as_ref(), ez_lyapunov, &cells) {
        AdmissibleOutcome::Certified(_) => {}
        AdmissibleOutcome::Loop(w) => panic!("{:?}", w.cycle),
    }
}

#[test]
fn ez_reduction_of_small_prisms() {
    // Δ¹×Δ¹ reduces onto the tensor complex; identities hold
    let x = delta(1);
    let y = delta(1);
    let red = ez_reduction(&x, &y, 3).unwrap();
    let set: SSet = product(&x, &y);
    let big_cells = product_cells_through(&set, 2);
    let mut small_cells = Vec::new();
    for d in 0..=2 {
        if let BasisView::Enumerable(cells) = red.small.basis(d) {
            small_cells.extend(cells);
        }
    }
    assert_eq!(small_cells.len(), 9);
    let report = verify_reduction(&red, big_cells.iter(), small_cells.iter());
    assert!(report.is_clean(), "{:?}", report.violations.first());

    // homology of the square is a point
    let finite = truncated_finite_complex(&red.small, 2).unwrap();
    let h = homology_by_snf(finite.as_ref()).unwrap();
    assert_eq!(h[&0], Homology::free(1));
    assert_eq!(h.get(&1).cloned().unwrap_or(Homology::free(0)), Homology::free(0));
}

#[test]
fn f_is_identity_like_on_last_simplices() {
    let x = delta(2);
    let y = delta(1);
    let red = ez_reduction(&x, &y, 4).unwrap();
    // f maps the last simplex of each prism to the corresponding tensor
    // generator
    let sigma = Key::ints([0, 1, 2]);
    let tau = Key::ints([0, 1]);
    let last = homred_core::ez::field::last_simplex_cell(2, &sigma, 1, &tau);
    let f = red.f.apply(&last);
    assert_eq!(f, homred_core::Chain::single(3, tensor_key(2, &sigma, &tau), 1));
}

#[test]
fn torus_homology_through_the_reduction() {
    // ∂Δ² × S¹ is a torus: H₀ = Z, H₁ = Z², H₂ = Z
    let x = boundary_delta(2);
    let y = s1();
    let red = ez_reduction(&x, &y, 3).unwrap();

    // via the reduction: homology of the small tensor complex
    let small = truncated_finite_complex(&red.small, 3).unwrap();
    let h_small = homology_by_snf(small.as_ref()).unwrap();
    assert_eq!(h_small[&0], Homology::free(1));
    assert_eq!(h_small[&1], Homology::free(2));
    assert_eq!(h_small[&2], Homology::free(1));

    // direct SNF of the full product complex agrees
    let set: SSet = product(&x, &y);
    let big = nondeg_complex(&set, Some(4));
    let full = truncated_finite_complex(&big, 3).unwrap();
    let h_full = homology_by_snf(full.as_ref()).unwrap();
    for d in 0..=2 {
        assert_eq!(h_small[&d], h_full[&d], "degree {d}");
    }
}

#[test]
fn classical_formula_comparison_on_small_prisms() {
    // f = AW, g = EML, h = SHI cell-wise on Δᵖ×Δ^q for p+q ≤ 3 (the
    // acceptance suite pushes this to p+q ≤ 5)
    for (p, q) in [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (3, 0)] {
        let x = delta(p);
        let y = delta(q);
        let red = ez_reduction(&x, &y, (p + q) + 1).unwrap();
        let set: SSet = product(&x, &y);
        let cells = product_cells_through(&set, p + q);
        for cell in &cells {
            assert_eq!(
                red.f.apply(cell),
                aw_cell(&x, &y, cell),
                "AW at {cell} in ({p},{q})"
            );
            assert_eq!(
                red.h.apply(cell),
                shi_cell(&x, &y, cell),
                "SHI at {cell} in ({p},{q})"
            );
        }
        let tensor = tensor_complex(&nondeg_complex(&x, None), &nondeg_complex(&y, None));
        for d in 0..=(p + q) {
            let BasisView::Enumerable(gens) = tensor.basis(d) else { panic!() };
            for gen in gens {
                assert_eq!(red.g.apply(&gen), eml_cell(&gen), "EML at {gen} in ({p},{q})");
            }
        }
    }
}

#[test]
fn naturality_of_the_reduction() {
    // identity, a face inclusion crossed with id, and a collapse crossed
    // with id are all morphisms of EZ reductions on the sampled cells
    let through = 3;

    // identity on Δ¹×Δ¹
    let x = delta(1);
    let id = homred_core::ez::naturality::SimplicialMorphism::identity(&x);
    let id2 = homred_core::ez::naturality::SimplicialMorphism::identity(&x);
    let rho = ez_reduction(&x, &x, through).unwrap();
    let set: SSet = product(&x, &x);
    let samples = sample_product_cells(&set, 2);
    let report = naturality_check(&id, &id2, &rho, &rho, &samples);
    assert!(report.is_clean(), "{:?}", report.violations.first());

    // face inclusion Δ¹ ↪ Δ² crossed with id_Δ¹
    let inc = delta_inclusion(1, 2, vec![0, 1]);
    let idy = homred_core::ez::naturality::SimplicialMorphism::identity(&delta(1));
    let rho_src = ez_reduction(&delta(1), &delta(1), through).unwrap();
    let rho_dst = ez_reduction(&delta(2), &delta(1), through).unwrap();
    let src_set: SSet = product(&delta(1), &delta(1));
    let samples = sample_product_cells(&src_set, 3);
    let report = naturality_check(&inc, &idy, &rho_src, &rho_dst, &samples);
    assert!(report.is_clean(), "{:?}", report.violations.first());

    // collapse Δ¹ → Δ⁰ crossed with id_Δ¹
    let col = delta_collapse(1);
    let rho_dst = ez_reduction(&delta(0), &delta(1), through).unwrap();
    let report = naturality_check(&col, &idy, &rho_src, &rho_dst, &samples);
    assert!(report.is_clean(), "{:?}", report.violations.first());
}

#[test]
fn trivial_twist_equals_untwisted() {
    use homred_core::simplicial::models::SimplicialGroup;
    use homred_core::simplicial::Simplex;
    let g = kz1();
    let fiber: SSet = g.clone();
    let base = s1();
    let tau = TwistingFn::trivial(g.clone());
    let gg = g.clone();
    let samples: Vec<Simplex> = vec![
        Simplex::nondeg(Key::ints([2]), 1),
        Simplex::nondeg(Key::Sym("s"), 1),
    ];
    let twisted = twisted_ez_reduction(
        &fiber,
        &base,
        &tau,
        move |gamma, f| gg.mul(gamma, f),
        3,
        &samples,
    )
    .unwrap();
    let untwisted = ez_reduction(&fiber, &base, 3).unwrap();

    // sampled cells of the product: classification-independent equality of
    // f, h, and the small differential
    let set: SSet = product(&fiber, &base);
    let cx = nondeg_complex(&set, None);
    let mut cells = Vec::new();
    for a1 in [-2i64, 1, 2] {
        for w in 0..2u32 {
            // (eta_w [a1], eta_{1-w} s) style pairs in dimension 2
            let sx = Simplex::nondeg(Key::ints([a1]), 1).degenerate(w);
            let sy = Simplex::nondeg(Key::Sym("s"), 1).degenerate(1 - w);
            let pair = homred_core::simplicial::product::canonical_pair(&sx, &sy);
            if !pair.is_degenerate() {
                cells.push(Cell { degree: 2, key: pair.base });
            }
        }
    }
    assert!(!cells.is_empty());
    for cell in &cells {
        assert!(cx.contains(cell));
        assert_eq!(twisted.f.apply(cell), untwisted.f.apply(cell));
        assert_eq!(twisted.h.apply(cell), untwisted.h.apply(cell));
    }
    for d in 0..=2 {
        if let BasisView::Enumerable(gens) = untwisted.small.basis(d) {
            for gen in gens.iter().take(6) {
                assert_eq!(twisted.small.diff(gen), untwisted.small.diff(gen), "{gen}");
            }
        }
    }
}

#[test]
fn pair_decoding_round_trip() {
    let set: SSet = product(&delta(1), &delta(1));
    let cx: Cx = nondeg_complex(&set, None);
    let BasisView::Enumerable(cells) = cx.basis(2) else { panic!() };
    for cell in cells {
        let (sx, sy) = pair_from_key(&cell.key).unwrap();
        assert_eq!(sx.dim(), 2);
        assert_eq!(sy.dim(), 2);
        // words are disjoint for a non-degenerate pair
        assert!(sx.word.iter().all(|j| !sy.word.contains(j)));
    }
}

#[test]
fn layered_lyapunov_decreases_on_bigger_prisms() {
    // exhaustive decrease check of the layered Lyapunov function over every
    // non-degenerate cell of Δ²×Δ² and Δ³×Δ¹ through their top dimension
    for (p, q) in [(2, 2), (3, 1)] {
        let set: SSet = product(&delta(p), &delta(q));
        let cx = nondeg_complex(&set, None);
        let cells = product_cells_through(&set, p + q);
        let (field, _) = ez_vector_field();
        match check_admissible_lyapunov(cx.as_ref(), field.as_ref(), ez_lyapunov, &cells) {
            AdmissibleOutcome::Certified(_) => {}
            AdmissibleOutcome::Loop(w) => panic!("({p},{q}): decrease fails at {:?}", w.cycle),
        }
        // exactly one critical cell per prism pair (σ, τ) of each bidimension
        let mut criticals = 0usize;
        let mut vectors = 0usize;
        for cell in &cells {
            match field.classify(cell) {
                CellClass::Critical => criticals += 1,
                CellClass::Source { .. } => vectors += 1,
                CellClass::Target { .. } => {}
            }
        }
        // the tensor complex of the factors counts the critical cells
        let tensor = tensor_complex(
            &nondeg_complex(&delta(p), None),
            &nondeg_complex(&delta(q), None),
        );
        let mut tensor_rank = 0usize;
        for d in 0..=(p + q) {
            if let BasisView::Enumerable(gens) = tensor.basis(d) {
                tensor_rank += gens.len();
            }
        }
        assert_eq!(criticals, tensor_rank, "({p},{q})");
        // sources and targets pair up the rest
        assert_eq!(criticals + 2 * vectors, cells.len(), "({p},{q})");
    }
}
