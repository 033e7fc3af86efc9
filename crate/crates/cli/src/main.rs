//! homred: effective homology of binary images, matrix reductions, and
//! Eilenberg-Zilber demos.

use clap::{Parser, Subcommand, ValueEnum};
use homred_cli::image::parse_image;
use homred_cli::matrixfile::{format_matrix, parse_cycle, parse_matrix};
use homred_cli::report::{analyze_image, classify_cycle, homology_json, homology_text};
use homred_core::complex::{BasisView};
use homred_core::ez::{
    aw_cell, eml_cell, ez_reduction, filling_sequence, interior_path_count, shi_cell,
    tensor_complex,
};
use homred_core::matrix::{
    check_matrix_vf_admissible, reduce_matrix, smith_normal_form, vf_by_predefined_order,
    vf_incremental, MatrixAdmissibility,
};
use homred_core::reduction::verify_reduction;
use homred_core::simplicial::models::delta;
use homred_core::simplicial::{nondeg_complex, SSet};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "homred", version, about = "effective homology via discrete vector fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Heuristic {
    Order,
    Incremental,
}

#[derive(Subcommand)]
enum Command {
    /// Homology of a binary image (plain 0/1 grid or PBM P1).
    Homology {
        image: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also print lifted representative cycles for the generators.
        #[arg(long)]
        generators: bool,
        /// Classify a 1-cycle (file of "coeff h|v x y" lines) and, when
        /// null-homologous, print a boundary preimage.
        #[arg(long)]
        cycle: Option<PathBuf>,
    },
    /// Reduce an integer matrix by an admissible vector field.
    ReduceMatrix {
        matrix: PathBuf,
        #[arg(long, value_enum, default_value = "incremental")]
        heuristic: Heuristic,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The prism filling sequence for (p,q).
    FillingSequence {
        p: u32,
        q: u32,
        #[arg(long)]
        count_only: bool,
    },
    /// Verify the Eilenberg-Zilber reduction of Δᵖ×Δ^q and compare it with
    /// the classical AW/EML/SHI formulas.
    EzCheck { p: u32, q: u32 },
    /// The twisted-product pipeline on the lens space K(Z,1) ×_τ S².
    TwistedDemo {
        #[arg(long)]
        k: i64,
    },
}

fn fail(message: String) -> ExitCode {
    let payload = json!({"error": {"message": message}});
    eprintln!("{payload}");
    ExitCode::from(2)
}

fn fail_parse(path: &Path, e: homred_cli::image::ParseError) -> ExitCode {
    let payload = json!({
        "error": {
            "file": path.display().to_string(),
            "line": e.line,
            "column": e.column,
            "message": e.message,
        }
    });
    eprintln!("{payload}");
    ExitCode::from(2)
}

fn read(path: &Path) -> Result<String, ExitCode> {
    std::fs::read_to_string(path)
        .map_err(|e| fail(format!("cannot read {}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Homology { image, format, generators, cycle } => {
            let text = match read(&image) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let img = match parse_image(&text) {
                Ok(i) => i,
                Err(e) => return fail_parse(&image, e),
            };
            if img.count_filled() == 0 {
                match format {
                    Format::Text => println!("empty image: no cells, all homology trivial"),
                    Format::Json => println!(
                        "{}",
                        json!({"schema": 1, "homology": {}, "cells": {"vertices": 0, "edges": 0, "squares": 0}})
                    ),
                }
                return ExitCode::SUCCESS;
            }
            let analysis = analyze_image(&img);
            let cycle_report = match cycle {
                Some(path) => {
                    let text = match read(&path) {
                        Ok(t) => t,
                        Err(code) => return code,
                    };
                    let z = match parse_cycle(&text) {
                        Ok(z) => z,
                        Err(e) => return fail_parse(&path, e),
                    };
                    match classify_cycle(&analysis, &z) {
                        Ok(r) => Some(r),
                        Err(msg) => return fail(msg),
                    }
                }
                None => None,
            };
            match format {
                Format::Text => {
                    print!("{}", homology_text(&analysis, generators, cycle_report.as_ref()))
                }
                Format::Json => {
                    println!("{}", homology_json(&analysis, generators, cycle_report.as_ref()))
                }
            }
            ExitCode::SUCCESS
        }
        Command::ReduceMatrix { matrix, heuristic, format } => {
            let text = match read(&matrix) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let m = match parse_matrix(&text) {
                Ok(m) => m,
                Err(e) => return fail_parse(&matrix, e),
            };
            let (field, graph) = match heuristic {
                Heuristic::Incremental => {
                    let (f, g) = vf_incremental(&m);
                    (f, Some(g))
                }
                Heuristic::Order => {
                    let order: Vec<usize> = (0..m.rows()).collect();
                    (vf_by_predefined_order(&m, &order), None)
                }
            };
            let admissible = match check_matrix_vf_admissible(&m, &field) {
                Ok(MatrixAdmissibility::TopologicalOrder(order)) => order,
                Ok(MatrixAdmissibility::Loop(cycle)) => {
                    return fail(format!("heuristic field has a loop through rows {cycle:?}"))
                }
                Err(e) => return fail(e.to_string()),
            };
            let (reduced, _) = match reduce_matrix(&m, &field) {
                Ok(r) => r,
                Err(e) => return fail(e.to_string()),
            };
            // iterate to the invariant factors
            let mut residual = reduced.clone();
            let mut total_units = field.len();
            loop {
                let (f, _) = vf_incremental(&residual);
                if f.is_empty() {
                    break;
                }
                total_units += f.len();
                residual = reduce_matrix(&residual, &f).unwrap().0;
            }
            let mut factors: Vec<u64> = std::iter::repeat_n(1, total_units)
                .chain(smith_normal_form(&residual))
                .collect();
            factors.sort_unstable();
            match format {
                Format::Text => {
                    let vectors: Vec<String> = field
                        .vectors
                        .iter()
                        .map(|(r, c)| format!("({},{})", r + 1, c + 1))
                        .collect();
                    println!("vector field: {{{}}}", vectors.join(", "));
                    if let Some(g) = &graph {
                        let edges: Vec<String> = g
                            .edges()
                            .map(|(a, b)| format!("{} > {}", a + 1, b + 1))
                            .collect();
                        println!("order graph: {}", edges.join(", "));
                    }
                    println!(
                        "topological order of source rows: {:?}",
                        admissible.iter().map(|r| r + 1).collect::<Vec<_>>()
                    );
                    println!("reduced matrix:\n{}", format_matrix(&reduced));
                    println!("invariant factors after iteration: {factors:?}");
                }
                Format::Json => {
                    let payload = json!({
                        "schema": 1,
                        "vector_field": field.vectors.iter().map(|(r, c)| json!([r + 1, c + 1])).collect::<Vec<_>>(),
                        "order_graph": graph.map(|g| g.edges().map(|(a, b)| json!([a + 1, b + 1])).collect::<Vec<_>>()),
                        "reduced": {
                            "rows": reduced.rows(),
                            "cols": reduced.cols(),
                            "entries": reduced.iter().map(|(r, c, v)| json!([r + 1, c + 1, v])).collect::<Vec<_>>(),
                        },
                        "invariant_factors": factors,
                    });
                    println!("{payload}");
                }
            }
            ExitCode::SUCCESS
        }
        Command::FillingSequence { p, q, count_only } => {
            if count_only {
                println!("{}", interior_path_count(p, q) - 1);
            } else {
                let seq = filling_sequence(p, q);
                for path in &seq {
                    println!("{path}");
                }
                eprintln!("{} paths", seq.len());
            }
            ExitCode::SUCCESS
        }
        Command::EzCheck { p, q } => {
            let x: SSet = delta(p as i32);
            let y: SSet = delta(q as i32);
            let n = (p + q) as i32;
            let red = match ez_reduction(&x, &y, n + 1) {
                Ok(r) => r,
                Err(e) => return fail(e.to_string()),
            };
            let product: SSet = homred_core::simplicial::product::product(&x, &y);
            let cx = nondeg_complex(&product, None);
            let mut big_cells = Vec::new();
            for d in 0..=n {
                if let BasisView::Enumerable(cells) = cx.basis(d) {
                    big_cells.extend(cells);
                }
            }
            let tensor = tensor_complex(&nondeg_complex(&x, None), &nondeg_complex(&y, None));
            let mut small_cells = Vec::new();
            for d in 0..=n {
                if let BasisView::Enumerable(cells) = tensor.basis(d) {
                    small_cells.extend(cells);
                }
            }
            let report = verify_reduction(&red, big_cells.iter(), small_cells.iter());
            println!(
                "reduction identities on {} big and {} small cells: {}",
                report.checked_big,
                report.checked_small,
                if report.is_clean() { "ok" } else { "FAILED" }
            );
            let f_ok = big_cells.iter().all(|c| red.f.apply(c) == aw_cell(&x, &y, c));
            println!("f = AW: {}", if f_ok { "ok" } else { "FAILED" });
            let g_ok = small_cells.iter().all(|c| red.g.apply(c) == eml_cell(c));
            println!("g = EML: {}", if g_ok { "ok" } else { "FAILED" });
            let h_ok = big_cells.iter().all(|c| red.h.apply(c) == shi_cell(&x, &y, c));
            println!("h = SHI (empirical): {}", if h_ok { "ok" } else { "differs" });
            if report.is_clean() && f_ok && g_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::TwistedDemo { k } => {
            use homred_core::ez::field::truncated_finite_complex;
            use homred_core::ez::lens::{
                lens_generators, lens_sample_cells, lens_space_pipeline,
            };
            use homred_core::matrix::homology_by_snf;
            let pipeline = match lens_space_pipeline(k) {
                Ok(p) => p,
                Err(e) => return fail(e.to_string()),
            };
            let generators = lens_generators();
            println!("twisted product: K(Z,1) x_tau S^2 with tau(s^2) = {k}");
            println!("bottom complex generators (degrees 0..3):");
            for g in &generators {
                let d = pipeline.total.small.diff(g);
                println!("  degree {}: d = {}", g.degree, d);
            }
            let bottom = truncated_finite_complex(&pipeline.total.small, 3).unwrap();
            let h = homology_by_snf(bottom.as_ref()).unwrap();
            for d in 0..=3 {
                println!("H_{d} = {}", h[&d]);
            }
            let samples = lens_sample_cells(2, 2);
            let report = verify_reduction(&pipeline.total, samples.iter(), generators.iter());
            println!(
                "reduction identities on {} sampled cells: {}",
                report.checked_big,
                if report.is_clean() { "ok" } else { "FAILED" }
            );
            if report.is_clean() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
