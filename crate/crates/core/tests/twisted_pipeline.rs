//! The lens-space pipeline: twisted EZ + tensor reduction + perturbation.

use homred_core::ez::field::truncated_finite_complex;
use homred_core::ez::lens::{
    lens_generators, lens_oracle_complex, lens_sample_cells, lens_space_pipeline,
};
use homred_core::matrix::homology_by_snf;
use homred_core::reduction::verify_reduction;

#[test]
fn lens_space_homology_for_small_k() {
    for k in [1i64, 2, 3, 5] {
        let pipeline = lens_space_pipeline(k).unwrap();
        let generators = lens_generators();

        // the bottom differential is the lens complex: d2 = ±k, d1 = d3 = 0
        let small = &pipeline.total.small;
        assert!(small.diff(&generators[1]).is_zero(), "k={k}: d1");
        let d2 = small.diff(&generators[2]);
        assert_eq!(d2.coeff_of(&generators[1]).abs(), k, "k={k}: d2");
        assert_eq!(d2.len(), usize::from(k != 0), "k={k}: d2 support");
        assert!(small.diff(&generators[3]).is_zero(), "k={k}: d3");

        // H0 = Z, H1 = Z/k, H2 = 0, H3 = Z — same as the oracle complex
        let bottom = truncated_finite_complex(small, 3).unwrap();
        let got = homology_by_snf(bottom.as_ref()).unwrap();
        let oracle = homology_by_snf(lens_oracle_complex(k).unwrap().as_ref()).unwrap();
        for d in 0..=3 {
            assert_eq!(got[&d], oracle[&d], "k={k} degree {d}");
        }
    }
}

#[test]
fn lens_reduction_identities_on_samples() {
    let pipeline = lens_space_pipeline(2).unwrap();
    let big_cells = lens_sample_cells(2, 2);
    assert!(!big_cells.is_empty());
    let generators = lens_generators();
    let report = verify_reduction(&pipeline.total, big_cells.iter(), generators.iter());
    assert!(report.is_clean(), "{:?}", report.violations.first());
}

#[test]
fn twisted_zero_face_picks_up_the_group_element() {
    use homred_core::ez::lens::lens_twisting;
    use homred_core::simplicial::models::{kz1, SimplicialGroup, TOP_CELL};
    use homred_core::simplicial::product::{pair_from_key, twisted_product};
    use homred_core::simplicial::{canonical_face, Simplex, SimplicialSet, SSet};
    use homred_core::Key;

    let g = kz1();
    let fiber: SSet = g.clone();
    let base: SSet = homred_core::simplicial::models::minimal_sphere(2);
    let tau = lens_twisting(1);
    let gg = g.clone();
    let tw = twisted_product(&fiber, &base, &tau, move |gamma, f| gg.mul(gamma, f));

    // the 2-simplex (totally degenerate fiber over [], s²)
    let sf = Simplex::nondeg(Key::ints([]), 0).degenerate(0).degenerate(1);
    let sb = Simplex::nondeg(TOP_CELL, 2);
    let pair = homred_core::simplicial::product::canonical_pair(&sf, &sb);
    assert!(!pair.is_degenerate());
    let cell = Simplex::nondeg(pair.base.clone(), 2);

    // ∂_0(f, b) = (τ(b)·∂_0 f, ∂_0 b): the fiber part becomes the bar [1]
    let face = canonical_face(tw.as_ref() as &dyn SimplicialSet, 0, &cell);
    assert!(!face.is_degenerate());
    let (fx, fy) = pair_from_key(&face.base).unwrap();
    assert_eq!(fx, Simplex::nondeg(Key::ints([1]), 1));
    assert_eq!(fy, Simplex { word: vec![0], base: Key::Sym("*"), base_dim: 0 });
}

#[test]
fn twisted_field_satisfies_the_layered_lyapunov_decrease() {
    use homred_core::dvf::{check_admissible_lyapunov, AdmissibleOutcome};
    use homred_core::ez::field::{ez_lyapunov, ez_vector_field};
    use homred_core::ez::lens::{lens_sample_cells, lens_twisting};
    use homred_core::simplicial::models::{kz1, minimal_sphere, SimplicialGroup};
    use homred_core::simplicial::product::twisted_product;
    use homred_core::simplicial::{nondeg_complex, SSet};

    let g = kz1();
    let fiber: SSet = g.clone();
    let base: SSet = minimal_sphere(2);
    let tau = lens_twisting(3);
    let gg = g.clone();
    let tw = twisted_product(&fiber, &base, &tau, move |gamma, f| gg.mul(gamma, f));
    let tw: SSet = tw;
    let cx = nondeg_complex(&tw, None);
    let (field, _) = ez_vector_field();
    // the 0-face is twisted, so this checks the decrease against the twisted
    // boundary operator on every sampled source
    let samples = lens_sample_cells(3, 2);
    match check_admissible_lyapunov(cx.as_ref(), field.as_ref(), ez_lyapunov, &samples) {
        AdmissibleOutcome::Certified(_) => {}
        AdmissibleOutcome::Loop(w) => panic!("decrease fails at {:?}", w.cycle),
    }
}
