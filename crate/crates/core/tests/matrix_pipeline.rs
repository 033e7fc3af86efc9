//! Matrix vector fields and the reduction pipeline on the worked 5×5 matrix
//! and on the standard small complexes.

mod common;

use common::{projective_plane_complex, random_acc};
use homred_core::matrix::{
    check_matrix_vf_admissible, homology_by_snf, homology_of_finite_complex, rank, reduce_matrix,
    smith_normal_form, snf_equal_padded, vf_by_predefined_order, vf_incremental, Homology,
    IntMatrix, MatrixAdmissibility, MatrixVectorField,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// A fixed 5x5 toy matrix with unit pivots (0-indexed).
fn toy_matrix() -> IntMatrix {
    IntMatrix::from_dense(&[
        &[0, 0, -1, -1, 0],
        &[0, -1, 0, 0, 1],
        &[0, 0, 0, 1, 1],
        &[0, -1, 1, 0, -1],
        &[-1, 1, -1, 0, 0],
    ])
}

#[test]
fn predefined_order_field_and_reduction() {
    let m = toy_matrix();
    let order: Vec<usize> = (0..5).collect();
    let field = vf_by_predefined_order(&m, &order);
    // rows 5, 3, 4 pair with columns 1, 4, 5 in 1-indexed terms
    assert_eq!(field.vectors, vec![(2, 3), (3, 4), (4, 0)]);
    let (reduced, _) = reduce_matrix(&m, &field).unwrap();
    assert_eq!(reduced, IntMatrix::from_dense(&[&[-1, 0], &[-2, 1]]));
}

#[test]
fn incremental_field_and_reduction() {
    let m = toy_matrix();
    let (field, graph) = vf_incremental(&m);
    // V₄ = {(1,3),(2,2),(3,4),(5,1)} in 1-indexed terms
    assert_eq!(field.vectors, vec![(0, 2), (1, 1), (2, 3), (4, 0)]);
    // the nontrivial order relations are 3 > 1 > 5 and 2 > 5
    assert!(graph.dominates(2, 0));
    assert!(graph.dominates(0, 4));
    assert!(graph.dominates(2, 4));
    assert!(graph.dominates(1, 4));
    assert!(!graph.dominates(0, 1));
    assert!(!graph.dominates(4, 0));
    // row 4 is the remaining minimal cell
    assert!(graph.is_minimal(3));
    assert!(!graph.is_source(3));

    let (reduced, _) = reduce_matrix(&m, &field).unwrap();
    assert_eq!(reduced, IntMatrix::from_dense(&[&[-1]]));
}

#[test]
fn loop_rule_examples() {
    let m = toy_matrix();
    // {(4,2),(2,5)} in 1-indexed terms loops between rows 4 and 2
    let field = MatrixVectorField { vectors: vec![(3, 1), (1, 4)] };
    match check_matrix_vf_admissible(&m, &field).unwrap() {
        MatrixAdmissibility::Loop(cycle) => {
            assert_eq!(cycle.len(), 2);
            assert!(cycle.contains(&3) && cycle.contains(&1));
        }
        MatrixAdmissibility::TopologicalOrder(_) => panic!("expected a loop"),
    }
    // the size-4 incremental field is acyclic
    let (field, _) = vf_incremental(&m);
    assert!(matches!(
        check_matrix_vf_admissible(&m, &field).unwrap(),
        MatrixAdmissibility::TopologicalOrder(_)
    ));
    // the empty field trivially is
    let empty = MatrixVectorField::default();
    assert!(matches!(
        check_matrix_vf_admissible(&m, &empty).unwrap(),
        MatrixAdmissibility::TopologicalOrder(ref v) if v.is_empty()
    ));
}

#[test]
fn degenerate_field_inputs() {
    // zero matrix: no vectors to find
    let zero = IntMatrix::zero(3, 4);
    assert!(vf_by_predefined_order(&zero, &[0, 1, 2]).is_empty());
    assert!(vf_incremental(&zero).0.is_empty());
    // identity matrix: the full diagonal in both heuristics
    let id = IntMatrix::identity(4);
    assert_eq!(vf_by_predefined_order(&id, &[0, 1, 2, 3]).len(), 4);
    let (field, _) = vf_incremental(&id);
    assert_eq!(field.len(), 4);
    let (reduced, _) = reduce_matrix(&id, &field).unwrap();
    assert_eq!(reduced.rows(), 0);
    assert_eq!(reduced.cols(), 0);
}

#[test]
fn smith_normal_form_examples() {
    assert_eq!(smith_normal_form(&IntMatrix::from_dense(&[&[2, 0], &[0, 3]])), vec![1, 6]);
    assert_eq!(smith_normal_form(&IntMatrix::zero(3, 2)), Vec::<u64>::new());
    assert_eq!(smith_normal_form(&IntMatrix::from_dense(&[&[-1]])), vec![1]);
    // torsion-producing boundary
    assert_eq!(smith_normal_form(&IntMatrix::from_dense(&[&[2]])), vec![2]);
    // the toy matrix is an automorphism of Z^5
    assert_eq!(smith_normal_form(&toy_matrix()), vec![1, 1, 1, 1, 1]);
    assert_eq!(rank(&toy_matrix()), 5);
}

#[test]
fn reduction_preserves_invariant_factors() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let rows = rng.gen_range(1..=30);
        let cols = rng.gen_range(1..=30);
        let mut m = IntMatrix::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if rng.gen_bool(0.2) {
                    m.set(r, c, rng.gen_range(-2..=2));
                }
            }
        }
        let (field, _) = vf_incremental(&m);
        let (reduced, _) = reduce_matrix(&m, &field).unwrap();
        assert!(
            snf_equal_padded(&m, &reduced, field.len()),
            "invariant factors changed: {:?} vs {:?} + {} units",
            smith_normal_form(&m),
            smith_normal_form(&reduced),
            field.len()
        );
    }
}

#[test]
fn homology_of_small_complexes() {
    // projective plane: H0 = Z, H1 = Z/2, H2 = 0
    let p2 = projective_plane_complex();
    let h = homology_of_finite_complex(p2.as_ref()).unwrap();
    assert_eq!(h[&0], Homology::free(1));
    assert_eq!(h[&1], Homology { betti: 0, torsion: vec![2] });
    assert_eq!(h[&2], Homology::free(0));

    // the boundary of the triangle: a circle
    let circle = common::circle_complex();
    let h = homology_of_finite_complex(circle.as_ref()).unwrap();
    assert_eq!(h[&0], Homology::free(1));
    assert_eq!(h[&1], Homology::free(1));
}

#[test]
fn pipeline_agrees_with_snf_oracle_on_random_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for case in 0..40 {
        let cx = random_acc(&mut rng, 5, 30);
        let fast = homology_of_finite_complex(cx.as_ref()).unwrap();
        let oracle = homology_by_snf(cx.as_ref()).unwrap();
        assert_eq!(fast, oracle, "case {case}");
    }
}

#[test]
fn invalid_complex_is_rejected() {
    use homred_core::{Cell, Chain};
    let mut b = homred_core::FiniteComplex::builder();
    let v0 = Cell::new(0, 0);
    let v1 = Cell::new(0, 1);
    b.add_cell(v0.clone());
    b.add_cell(v1.clone());
    let mut e = Chain::generator(&v1);
    e.add_cell(&v0, -1);
    b.add_cell_with_boundary(Cell::new(1, 10), e);
    let mut dd = Chain::zero(1);
    dd.add_cell(&Cell::new(1, 10), 1);
    b.add_cell_with_boundary(Cell::new(2, 20), dd);
    let broken = b.build_unchecked();
    assert!(homology_of_finite_complex(broken.as_ref()).is_err());
}
