//! Homology reports for images: groups, lifted generator cycles, and cycle
//! classification, rendered as text or versioned JSON.

use crate::cubical::{build_cubical, decode, geometric_vf, CubicalComplex};
use crate::image::ImageGrid;
use homred_core::complex::{diff_chain, ComplexLike, Cx};
use homred_core::dvf::{check_admissible, AdmissibleOutcome, Field};
use homred_core::ez::field::truncated_finite_complex;
use homred_core::matrix::{complex_vf_incremental, homology_of_finite_complex, Homology};
use homred_core::reduction::{compose_reductions, Reduction};
use homred_core::{Cell, Chain};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

pub struct ImageHomology {
    pub cubical: CubicalComplex,
    pub groups: BTreeMap<i32, Homology>,
    pub critical_counts: BTreeMap<i32, usize>,
    /// The reduction from the cubical complex onto the final critical
    /// complex (geometric field first, then matrix heuristics until no unit
    /// pivots remain).
    pub reduction: Reduction,
    /// Final critical cells that are cycles of the final complex, with their
    /// lifted representative cycles in the cubical complex.
    pub generators: Vec<(Cell, Chain)>,
}

fn rebind_small(red: &Reduction, small: &Cx) -> Reduction {
    Reduction {
        big: red.big.clone(),
        small: small.clone(),
        f: red.f.clone(),
        g: red.g.clone(),
        h: red.h.clone(),
    }
}

/// Build the image's iterated reduction and homology data.
pub fn analyze_image(img: &ImageGrid) -> ImageHomology {
    let cubical = build_cubical(img);
    let cx: Cx = cubical.complex.clone();
    let groups = homology_of_finite_complex(cubical.complex.as_ref()).unwrap();

    let field: Field = Arc::new(geometric_vf(&cubical));
    let cert = match check_admissible(cx.as_ref(), field.as_ref(), 0..=2) {
        AdmissibleOutcome::Certified(c) => c,
        AdmissibleOutcome::Loop(w) => {
            unreachable!("geometric field admits a loop: {:?}", w.cycle)
        }
    };
    let mut total =
        homred_core::dvf::build_reduction_gauss(&cx, &field, &cert);
    let mut critical_counts: BTreeMap<i32, usize>;

    // iterate matrix-heuristic reductions until the residual has no unit
    // pivots
    loop {
        let small = truncated_finite_complex(&total.small, 2).unwrap();
        critical_counts =
            (0..=2).map(|d| (d, small.cells_of_degree(d).len())).collect();
        let (vf, vf_cert) = complex_vf_incremental(small.as_ref());
        if vf.is_empty() {
            let small_cx: Cx = small;
            total = rebind_small(&total, &small_cx);
            break;
        }
        let vf: Field = Arc::new(vf);
        let small_cx: Cx = small;
        let next = homred_core::dvf::build_reduction_gauss(&small_cx, &vf, &vf_cert);
        total = compose_reductions(&rebind_small(&total, &small_cx), &next).unwrap();
    }

    // generators: final critical cells that are cycles with free class
    let final_cx = truncated_finite_complex(&total.small, 2).unwrap();
    let mut generators = Vec::new();
    for cell in final_cx.all_cells() {
        if final_cx.diff(&cell).is_zero() {
            let lifted = total.g.apply(&cell);
            generators.push((cell, lifted));
        }
    }
    ImageHomology { cubical, groups, critical_counts, reduction: total, generators }
}

pub struct CycleReport {
    /// Coefficients of the classified cycle on the final critical cells.
    pub class: Vec<(Cell, i64)>,
    /// When the class vanishes: a 2-chain whose boundary is the input.
    pub preimage: Option<Chain>,
}

/// Classify a cycle and, when null-homologous, produce a boundary preimage.
pub fn classify_cycle(analysis: &ImageHomology, z: &Chain) -> Result<CycleReport, String> {
    let dz = diff_chain(analysis.reduction.big.as_ref(), z);
    if !dz.is_zero() {
        return Err(format!("not a cycle: d(z) = {dz}"));
    }
    let fz = analysis.reduction.f.apply_chain(z);
    let class: Vec<(Cell, i64)> = fz.cells().map(|c| (c.clone(), fz.coeff_of(&c))).collect();
    let preimage = if fz.is_zero() {
        Some(
            homred_core::reduction::boundary_preimage(
                &analysis.reduction,
                z,
                &Chain::zero(z.degree() + 1),
            )
            .map_err(|e| e.to_string())?,
        )
    } else {
        None
    };
    Ok(CycleReport { class, preimage })
}

fn chain_json(chain: &Chain) -> Value {
    let terms: Vec<Value> = chain
        .cells()
        .map(|cell| {
            let (kind, x, y) = decode(&cell).expect("cubical cell");
            json!({"kind": kind, "x": x, "y": y, "coeff": chain.coeff_of(&cell)})
        })
        .collect();
    Value::Array(terms)
}

pub fn chain_text(chain: &Chain) -> String {
    let mut parts = Vec::new();
    for cell in chain.cells() {
        let (kind, x, y) = decode(&cell).expect("cubical cell");
        parts.push(format!("{:+} {kind}({x},{y})", chain.coeff_of(&cell)));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

pub fn homology_json(
    analysis: &ImageHomology,
    with_generators: bool,
    cycle: Option<&CycleReport>,
) -> Value {
    let groups: BTreeMap<String, Value> = analysis
        .groups
        .iter()
        .map(|(d, h)| {
            (d.to_string(), json!({"betti": h.betti, "torsion": h.torsion, "pretty": h.to_string()}))
        })
        .collect();
    let mut out = json!({
        "schema": 1,
        "image": {"width": analysis.cubical.image.width, "height": analysis.cubical.image.height},
        "cells": {
            "vertices": analysis.cubical.complex.cells_of_degree(0).len(),
            "edges": analysis.cubical.complex.cells_of_degree(1).len(),
            "squares": analysis.cubical.complex.cells_of_degree(2).len(),
        },
        "critical_cells": analysis.critical_counts.iter()
            .map(|(d, n)| (d.to_string(), json!(n))).collect::<BTreeMap<_, _>>(),
        "homology": groups,
    });
    if with_generators {
        let gens: Vec<Value> = analysis
            .generators
            .iter()
            .map(|(cell, lifted)| {
                json!({"degree": cell.degree, "cycle": chain_json(lifted)})
            })
            .collect();
        out["generators"] = Value::Array(gens);
    }
    if let Some(c) = cycle {
        let class: Vec<Value> =
            c.class.iter().map(|(cell, v)| json!({"generator_degree": cell.degree, "coeff": v})).collect();
        out["cycle"] = json!({
            "class": class,
            "null_homologous": c.preimage.is_some(),
        });
        if let Some(w) = &c.preimage {
            out["cycle"]["boundary_preimage"] = chain_json(w);
        }
    }
    out
}

pub fn homology_text(
    analysis: &ImageHomology,
    with_generators: bool,
    cycle: Option<&CycleReport>,
) -> String {
    let mut out = String::new();
    let c = &analysis.cubical.complex;
    out.push_str(&format!(
        "cubical complex: {} vertices, {} edges, {} squares\n",
        c.cells_of_degree(0).len(),
        c.cells_of_degree(1).len(),
        c.cells_of_degree(2).len()
    ));
    let crit: Vec<String> =
        analysis.critical_counts.iter().map(|(d, n)| format!("{n} in degree {d}")).collect();
    out.push_str(&format!("critical cells after reduction: {}\n", crit.join(", ")));
    for (d, h) in &analysis.groups {
        out.push_str(&format!("H_{d} = {h}\n"));
    }
    if with_generators {
        for (cell, lifted) in &analysis.generators {
            out.push_str(&format!("generator (degree {}): {}\n", cell.degree, chain_text(lifted)));
        }
    }
    if let Some(rep) = cycle {
        if rep.class.is_empty() {
            out.push_str("cycle class: 0 (null-homologous)\n");
        } else {
            let parts: Vec<String> =
                rep.class.iter().map(|(cell, v)| format!("{v} x [degree-{} generator]", cell.degree)).collect();
            out.push_str(&format!("cycle class: {}\n", parts.join(" + ")));
        }
        if let Some(w) = &rep.preimage {
            out.push_str(&format!("boundary preimage: {}\n", chain_text(w)));
        }
    }
    out
}
