//! The cubical complex of a binary image and its geometric vector field.
//!
//! Cells sit on the integer lattice: one vertex per corner of a filled
//! pixel, one edge per side, one square per pixel. The geometric field only
//! uses vectors oriented leftward or downward, which rules out V-path loops
//! outright.

use crate::image::ImageGrid;
use homred_core::complex::FiniteComplex;
use homred_core::dvf::DiscreteVectorField;
use homred_core::{Cell, Chain, Key};
use std::sync::Arc;

pub fn point(x: i64, r: i64) -> Cell {
    Cell { degree: 0, key: Key::list([Key::Sym("pt"), Key::Int(x), Key::Int(r)]) }
}

/// Horizontal edge from (x,r) to (x+1,r).
pub fn hedge(x: i64, r: i64) -> Cell {
    Cell { degree: 1, key: Key::list([Key::Sym("eh"), Key::Int(x), Key::Int(r)]) }
}

/// Vertical edge from (x,r) to (x,r+1) — rows grow downward.
pub fn vedge(x: i64, r: i64) -> Cell {
    Cell { degree: 1, key: Key::list([Key::Sym("ev"), Key::Int(x), Key::Int(r)]) }
}

/// The square of the pixel at (x,r).
pub fn square(x: i64, r: i64) -> Cell {
    Cell { degree: 2, key: Key::list([Key::Sym("sq"), Key::Int(x), Key::Int(r)]) }
}

/// Decode an edge cell back into (kind, x, r); used by cycle files.
pub fn decode(cell: &Cell) -> Option<(&'static str, i64, i64)> {
    let items = cell.key.as_list()?;
    let kind = match items.first()? {
        Key::Sym(s) => *s,
        _ => return None,
    };
    let kind = ["pt", "eh", "ev", "sq"].iter().find(|k| **k == kind)?;
    Some((kind, items[1].as_int()?, items[2].as_int()?))
}

pub struct CubicalComplex {
    pub image: ImageGrid,
    pub complex: Arc<FiniteComplex>,
}

/// Does the image support this horizontal edge? It borders the pixels above
/// and below it.
fn hedge_exists(img: &ImageGrid, x: i64, r: i64) -> bool {
    img.filled(x, r - 1) || img.filled(x, r)
}

/// A vertical edge borders the pixels left and right of it.
fn vedge_exists(img: &ImageGrid, x: i64, r: i64) -> bool {
    img.filled(x - 1, r) || img.filled(x, r)
}

fn point_exists(img: &ImageGrid, x: i64, r: i64) -> bool {
    img.filled(x, r) || img.filled(x - 1, r) || img.filled(x, r - 1) || img.filled(x - 1, r - 1)
}

/// One vertex per corner of a filled pixel, one edge per bounding side, one
/// square per filled pixel, all deduplicated.
pub fn build_cubical(img: &ImageGrid) -> CubicalComplex {
    let mut b = FiniteComplex::builder();
    let (w, h) = (img.width as i64, img.height as i64);
    for r in 0..=h {
        for x in 0..=w {
            if point_exists(img, x, r) {
                b.add_cell(point(x, r));
            }
        }
    }
    for r in 0..=h {
        for x in 0..w {
            if hedge_exists(img, x, r) {
                let mut d = Chain::generator(&point(x + 1, r));
                d.add_cell(&point(x, r), -1);
                b.add_cell_with_boundary(hedge(x, r), d);
            }
        }
    }
    for r in 0..h {
        for x in 0..=w {
            if vedge_exists(img, x, r) {
                let mut d = Chain::generator(&point(x, r + 1));
                d.add_cell(&point(x, r), -1);
                b.add_cell_with_boundary(vedge(x, r), d);
            }
        }
    }
    for r in 0..h {
        for x in 0..w {
            if img.filled(x, r) {
                let mut d = Chain::generator(&vedge(x + 1, r));
                d.add_cell(&vedge(x, r), -1);
                d.add_cell(&hedge(x, r + 1), -1);
                d.add_cell(&hedge(x, r), 1);
                b.add_cell_with_boundary(square(x, r), d);
            }
        }
    }
    let complex = b.build().expect("cubical boundaries satisfy d^2 = 0");
    CubicalComplex { image: img.clone(), complex }
}

/// The geometric vector field: every vector points leftward or downward.
///
/// Squares pair first — with the vertical edge on their right when both
/// pixels beside it are filled, with their top edge otherwise; vertices then
/// sweep row-major, pairing with the edge below when it is free and the edge
/// to their left as a fallback. Remaining cells are critical.
pub fn geometric_vf(cubical: &CubicalComplex) -> DiscreteVectorField {
    let img = &cubical.image;
    let cx = cubical.complex.as_ref();
    let (w, h) = (img.width as i64, img.height as i64);
    let mut field = DiscreteVectorField::new();
    let mut used = std::collections::BTreeSet::new();

    // squares
    for r in 0..h {
        for x in 0..w {
            if !img.filled(x, r) {
                continue;
            }
            let sq = square(x, r);
            if img.filled(x + 1, r) {
                // the edge between this pixel and the filled one on its right
                let e = vedge(x + 1, r);
                field.add_vector(cx, e.clone(), sq).expect("interior side is regular");
                used.insert(e);
            } else {
                let e = hedge(x, r);
                field.add_vector(cx, e.clone(), sq).expect("top side is regular");
                used.insert(e);
            }
        }
    }
    // vertices
    for r in 0..=h {
        for x in 0..=w {
            if !point_exists(img, x, r) {
                continue;
            }
            let below = vedge(x, r);
            let left = hedge(x - 1, r);
            if vedge_exists(img, x, r) && !used.contains(&below) {
                field.add_vector(cx, point(x, r), below.clone()).expect("regular side");
                used.insert(below);
            } else if x > 0 && hedge_exists(img, x - 1, r) && !used.contains(&left) {
                field.add_vector(cx, point(x, r), left.clone()).expect("regular side");
                used.insert(left);
            }
        }
    }
    field
}
