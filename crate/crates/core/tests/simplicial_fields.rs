//! The normalization and K(ℤ,1) vector fields as reductions, and the
//! built-in model chain complexes.

use homred_core::complex::{verify_d_squared, BasisView, Cx};
use homred_core::dvf::{
    build_reduction_gauss, check_admissible_lyapunov, enumerate_v_paths, AdmissibleOutcome,
};
use homred_core::matrix::{homology_by_snf, Homology};
use homred_core::reduction::verify_reduction;
use homred_core::simplicial::models::{
    boundary_delta, delta, kz1, minimal_sphere, projective_plane, s1, ModelRegistry,
};
use homred_core::simplicial::normalization::{bar_trace, kz1_vf, normalization_vf};
use homred_core::simplicial::{
    degenerate_subcomplex, full_complex, nondeg_complex, simplex_from_key, Simplex, SSet,
};
use homred_core::{Cell, Chain, Key};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn bar_cell(entries: &[i64]) -> Cell {
    Cell { degree: entries.len() as i32, key: Key::ints(entries.to_vec()) }
}

#[test]
fn model_chain_complexes() {
    // S¹ minimal: 0 ← Z[*] ← Z[s¹] ← 0 with zero differential
    let c = nondeg_complex(&s1(), None);
    let BasisView::Enumerable(v0) = c.basis(0) else { panic!() };
    let BasisView::Enumerable(v1) = c.basis(1) else { panic!() };
    let BasisView::Enumerable(v2) = c.basis(2) else { panic!() };
    assert_eq!((v0.len(), v1.len(), v2.len()), (1, 1, 0));
    assert!(c.diff(&v1[0]).is_zero());

    // Δ²: ranks 3, 3, 1; boundary of the triangle alternates
    let d2 = nondeg_complex(&delta(2), None);
    let BasisView::Enumerable(t) = d2.basis(2) else { panic!() };
    assert_eq!(t.len(), 1);
    let mut expected = Chain::zero(1);
    expected.add_term(&Key::ints([1, 2]), 1);
    expected.add_term(&Key::ints([0, 2]), -1);
    expected.add_term(&Key::ints([0, 1]), 1);
    assert_eq!(d2.diff(&t[0]), expected);

    // projective plane: d(tau) = 2 sigma, d(sigma) = 0
    let p2 = nondeg_complex(&projective_plane(), None);
    let tau = Cell::new(2, "tau");
    assert_eq!(p2.diff(&tau), Chain::single(1, Key::Sym("sigma"), 2));
    assert!(p2.diff(&Cell::new(1, "sigma")).is_zero());

    // any 0-cell has zero boundary
    assert!(d2.diff(&Cell { degree: 0, key: Key::ints([1]) }).is_zero());
}

#[test]
fn kz1_d_squared_on_random_bars() {
    let k: SSet = kz1();
    let c = nondeg_complex(&k, None);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut cells = Vec::new();
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let entries: Vec<i64> = (0..n)
            .map(|_| {
                let v = rng.gen_range(1..=9);
                if rng.gen_bool(0.5) {
                    v
                } else {
                    -v
                }
            })
            .collect();
        cells.push(bar_cell(&entries));
    }
    let report = verify_d_squared(c.as_ref(), cells.iter());
    assert!(report.is_clean(), "{:?}", report.violations.first());
}

#[test]
fn kz1_v_path_traces() {
    let k: SSet = kz1();
    let c = nondeg_complex(&k, None);
    let (field, _) = kz1_vf();

    let (paths, truncated) = enumerate_v_paths(c.as_ref(), field.as_ref(), &bar_cell(&[3, 6]), 50);
    assert!(!truncated);
    assert_eq!(paths.len(), 1);
    assert_eq!(
        bar_trace(&paths[0]),
        "[3|6] -> [1|2|6] -> [2|6] -> [1|1|6] -> halt!"
    );

    let (paths, _) = enumerate_v_paths(c.as_ref(), field.as_ref(), &bar_cell(&[-3, 6]), 50);
    assert_eq!(paths.len(), 1);
    assert_eq!(
        bar_trace(&paths[0]),
        "[-3|6] -> [1|-3|6] -> [-2|6] -> [1|-2|6] -> [-1|6] -> [1|-1|6] -> halt!"
    );
}

fn kz1_sample_cells(max_dim: i32, max_entry: i64) -> Vec<Cell> {
    // all bars with entries in {-max_entry..max_entry}\{0} through max_dim
    let mut out = vec![bar_cell(&[])];
    let mut layer: Vec<Vec<i64>> = vec![vec![]];
    for _ in 1..=max_dim {
        let mut next = Vec::new();
        for bar in &layer {
            for v in -max_entry..=max_entry {
                if v == 0 {
                    continue;
                }
                let mut b = bar.clone();
                b.push(v);
                out.push(bar_cell(&b));
                next.push(b);
            }
        }
        layer = next;
    }
    out
}

#[test]
fn kz1_reduction_onto_the_circle() {
    let k: SSet = kz1();
    let c: Cx = nondeg_complex(&k, None);
    let (field, cert) = kz1_vf();

    // Lyapunov decrease verified on the sample
    let sample = kz1_sample_cells(3, 3);
    let l = |cell: &Cell| -> u64 {
        cell.key.as_list().unwrap().first().and_then(|k| k.as_int()).unwrap_or(0).unsigned_abs()
    };
    match check_admissible_lyapunov(c.as_ref(), field.as_ref(), l, &sample) {
        AdmissibleOutcome::Certified(_) => {}
        AdmissibleOutcome::Loop(w) => panic!("decrease fails at {:?}", w.cycle),
    }

    let red = build_reduction_gauss(&c, &field, &cert);
    // critical complex: 0 ← Z[()] ← Z[(1)] ← 0 with zero differential
    let small_cells = [bar_cell(&[]), bar_cell(&[1])];
    assert!(red.small.contains(&small_cells[0]));
    assert!(red.small.contains(&small_cells[1]));
    assert!(red.small.diff(&bar_cell(&[1])).is_zero());
    // no critical cells in dimensions 2 and 3: H₂ = H₃ = 0
    for dim in 2..=3 {
        for cell in sample.iter().filter(|c| c.degree == dim) {
            assert!(!red.small.contains(cell));
        }
    }
    let report = verify_reduction(&red, sample.iter(), small_cells.iter());
    assert!(report.is_clean(), "{:?}", report.violations.first());
}

#[test]
fn normalization_reduction_matches_normalized_complex() {
    // on Δ³ and the minimal S²: the critical complex of the normalization
    // field equals the normalized chain complex, cell-wise, through degree 6
    for set in [delta(3), minimal_sphere(2)] {
        let full: Cx = full_complex(&set, Some(7));
        let nd: Cx = nondeg_complex(&set, Some(7));
        let (field, cert) = normalization_vf();
        let red = build_reduction_gauss(&full, &field, &cert);

        for degree in 0..=6 {
            let BasisView::Enumerable(nd_cells) = nd.basis(degree) else { panic!() };
            let BasisView::Enumerable(crit_cells) = red.small.basis(degree) else { panic!() };
            assert_eq!(
                crit_cells.len(),
                nd_cells.len(),
                "{}: critical vs non-degenerate rank in degree {degree}",
                set.name()
            );
            for cell in &nd_cells {
                // the critical cell is the encoded non-degenerate simplex
                let crit = Cell {
                    degree: cell.degree,
                    key: homred_core::simplicial::simplex_to_key(&Simplex::nondeg(
                        cell.key.clone(),
                        cell.degree,
                    )),
                };
                assert!(red.small.contains(&crit));
                let d_small = red.small.diff(&crit);
                let d_nd = nd.diff(cell);
                // compare after decoding the simplex keys
                let mut translated = Chain::zero(cell.degree - 1);
                for (key, coeff) in d_small.iter() {
                    let s = simplex_from_key(key).unwrap();
                    assert!(!s.is_degenerate());
                    translated.add_term(&s.base, coeff);
                }
                assert_eq!(translated, d_nd, "{} at {cell}", set.name());
            }
        }
    }
}

#[test]
fn normalization_identities_on_sample() {
    let set = minimal_sphere(2);
    let full: Cx = full_complex(&set, Some(6));
    let (field, cert) = normalization_vf();

    // Lyapunov decrease on all cells through degree 5
    let mut sample = Vec::new();
    for d in 0..=5 {
        let BasisView::Enumerable(cells) = full.basis(d) else { panic!() };
        sample.extend(cells);
    }
    let l = |cell: &Cell| -> u64 {
        simplex_from_key(&cell.key).map(|s| s.base_dim as u64).unwrap_or(0)
    };
    match check_admissible_lyapunov(full.as_ref(), field.as_ref(), l, &sample) {
        AdmissibleOutcome::Certified(_) => {}
        AdmissibleOutcome::Loop(w) => panic!("decrease fails at {:?}", w.cycle),
    }

    let red = build_reduction_gauss(&full, &field, &cert);
    let criticals: Vec<Cell> = sample
        .iter()
        .filter(|c| red.small.contains(c))
        .cloned()
        .collect();
    let report = verify_reduction(&red, sample.iter(), criticals.iter());
    assert!(report.is_clean(), "{:?}", report.violations.first());
}

#[test]
fn degenerate_subcomplex_is_acyclic() {
    use homred_core::ez::field::truncated_finite_complex;
    for set in [delta(3), minimal_sphere(2)] {
        let degen: Cx = degenerate_subcomplex(&set, Some(6));
        let finite = truncated_finite_complex(&degen, 6).unwrap();
        let h = homology_by_snf(finite.as_ref()).unwrap();
        for degree in 1..=5 {
            assert_eq!(
                h.get(&degree).cloned().unwrap_or(Homology::free(0)),
                Homology::free(0),
                "{} degenerate subcomplex H_{degree}",
                set.name()
            );
        }
    }
}

#[test]
fn boundary_delta_homology_is_a_sphere() {
    use homred_core::ez::field::truncated_finite_complex;
    let c = nondeg_complex(&boundary_delta(3), None);
    let finite = truncated_finite_complex(&c, 3).unwrap();
    let h = homology_by_snf(finite.as_ref()).unwrap();
    assert_eq!(h[&0], Homology::free(1));
    assert_eq!(h[&1], Homology::free(0));
    assert_eq!(h[&2], Homology::free(1));
}

#[test]
fn registry_knows_builtin_models() {
    let reg = ModelRegistry::with_builtins();
    assert!(reg.get("kz1").is_some());
    assert!(reg.get("s2").is_some());
    assert!(reg.get("nonexistent").is_none());
    assert!(reg.names().contains(&"p2r".to_string()));
}

#[test]
fn delta3_is_contractible() {
    use homred_core::ez::field::truncated_finite_complex;
    let c = nondeg_complex(&delta(3), None);
    let finite = truncated_finite_complex(&c, 3).unwrap();
    let h = homred_core::matrix::homology_of_finite_complex(finite.as_ref()).unwrap();
    assert_eq!(h[&0], Homology::free(1));
    for d in 1..=3 {
        assert_eq!(h[&d], Homology::free(0));
    }
}

#[test]
fn broken_twisting_is_reported() {
    use homred_core::simplicial::models::kz1;
    use homred_core::simplicial::product::{verify_twisting, TwistingFn};
    let g = kz1();
    let base = delta(3);
    // τ sends every triangle to [7] and the tetrahedron to [1|1]; the face
    // identity ∂_i τ(b) = τ(∂_{i+1} b) demands 1+1 = 7 at i = 1, so the
    // verifier must flag it.
    let broken = TwistingFn::new(g, |_key, dim| match dim {
        1 => Simplex::nondeg(Key::ints([]), 0),
        2 => Simplex::nondeg(Key::ints([7]), 1),
        3 => Simplex::nondeg(Key::ints([1, 1]), 2),
        other => panic!("unexpected dimension {other}"),
    });
    let samples = vec![Simplex::nondeg(Key::ints([0, 1, 2, 3]), 3)];
    let report = verify_twisting(&broken, &base, &samples);
    assert!(!report.is_clean());
    assert!(report
        .violations
        .iter()
        .any(|v| v.identity.contains("di tau(b)")));
}
