//! Algebraic cellular complexes: degree-indexed distinguished bases plus a
//! differential evaluator with d² = 0.
//!
//! A basis is either enumerable (finite explicit list per degree) or
//! predicate-only (membership test, possibly infinite); all operations act
//! lazily on presented cells.

use crate::chain::Chain;
use crate::key::Cell;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cell {0} is not in the basis of the complex")]
    UnknownCell(Cell),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("precondition violated: {0}")]
    Contract(String),
    #[error("vector rejected: {0}")]
    VectorRejected(String),
    #[error("vector field not admissible: {0}")]
    Inadmissible(String),
    #[error("nilpotency bound {bound} exceeded on {cell}")]
    NilpotencyViolation { cell: Cell, bound: usize },
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("complex mismatch: {0}")]
    ComplexMismatch(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// What a complex can say about one of its degree-p bases.
pub enum BasisView {
    Enumerable(Vec<Cell>),
    PredicateOnly,
}

impl BasisView {
    pub fn cells(&self) -> Option<&[Cell]> {
        match self {
            BasisView::Enumerable(v) => Some(v),
            BasisView::PredicateOnly => None,
        }
    }
}

pub trait ComplexLike: Send + Sync {
    /// Membership test for presented cells.
    fn contains(&self, cell: &Cell) -> bool;

    /// The degree-p basis, listed in (degree, key) order when enumerable.
    fn basis(&self, degree: i32) -> BasisView;

    /// Differential of a presented cell; a chain of degree `cell.degree - 1`
    /// supported on basis cells.
    fn diff(&self, cell: &Cell) -> Chain;
}

pub type Cx = Arc<dyn ComplexLike>;

/// Checked boundary evaluation.
pub fn boundary(cx: &dyn ComplexLike, cell: &Cell) -> Result<Chain> {
    if !cx.contains(cell) {
        return Err(Error::UnknownCell(cell.clone()));
    }
    Ok(cx.diff(cell))
}

/// The coefficient of `sigma` in the differential of `tau`.
pub fn incidence(cx: &dyn ComplexLike, sigma: &Cell, tau: &Cell) -> Result<i64> {
    if sigma.degree != tau.degree - 1 {
        return Err(Error::DegreeMismatch(format!(
            "incidence wants |sigma| = |tau| - 1, got {} and {}",
            sigma.degree, tau.degree
        )));
    }
    Ok(boundary(cx, tau)?.coeff_of(sigma))
}

/// One d²≠0 violation: the offending cell and the nonzero d(d(cell)).
#[derive(Debug, Clone)]
pub struct D2Violation {
    pub cell: Cell,
    pub dd: Chain,
}

#[derive(Debug, Clone, Default)]
pub struct D2Report {
    pub checked: usize,
    pub violations: Vec<D2Violation>,
}

impl D2Report {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluate d∘d on each sample cell and report the violations.
pub fn verify_d_squared<'a>(
    cx: &dyn ComplexLike,
    cells: impl IntoIterator<Item = &'a Cell>,
) -> D2Report {
    let mut report = D2Report::default();
    for cell in cells {
        report.checked += 1;
        let d = cx.diff(cell);
        let mut dd = Chain::zero(cell.degree - 2);
        for (key, coeff) in d.iter() {
            let c = Cell { degree: cell.degree - 1, key: key.clone() };
            dd.add_scaled(&cx.diff(&c), coeff);
        }
        if !dd.is_zero() {
            report.violations.push(D2Violation { cell: cell.clone(), dd });
        }
    }
    report
}

/// Apply a complex's differential linearly to a chain.
pub fn diff_chain(cx: &dyn ComplexLike, chain: &Chain) -> Chain {
    let mut out = Chain::zero(chain.degree() - 1);
    for (key, coeff) in chain.iter() {
        let c = Cell { degree: chain.degree(), key: key.clone() };
        out.add_scaled(&cx.diff(&c), coeff);
    }
    out
}

/// A finite complex with explicit bases and a boundary table.
pub struct FiniteComplex {
    basis: BTreeMap<i32, Vec<Cell>>,
    members: BTreeSet<Cell>,
    boundaries: BTreeMap<Cell, Chain>,
}

impl FiniteComplex {
    pub fn builder() -> FiniteComplexBuilder {
        FiniteComplexBuilder::default()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.basis.keys().copied()
    }

    pub fn all_cells(&self) -> Vec<Cell> {
        self.basis.values().flatten().cloned().collect()
    }

    pub fn cells_of_degree(&self, degree: i32) -> &[Cell] {
        self.basis.get(&degree).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

impl ComplexLike for FiniteComplex {
    fn contains(&self, cell: &Cell) -> bool {
        self.members.contains(cell)
    }

    fn basis(&self, degree: i32) -> BasisView {
        BasisView::Enumerable(self.cells_of_degree(degree).to_vec())
    }

    fn diff(&self, cell: &Cell) -> Chain {
        match self.boundaries.get(cell) {
            Some(c) => c.clone(),
            None => Chain::zero(cell.degree - 1),
        }
    }
}

#[derive(Default)]
pub struct FiniteComplexBuilder {
    cells: BTreeSet<Cell>,
    boundaries: BTreeMap<Cell, Chain>,
}

impl FiniteComplexBuilder {
    pub fn cell(mut self, cell: Cell) -> Self {
        self.cells.insert(cell);
        self
    }

    pub fn cell_with_boundary(mut self, cell: Cell, boundary: Chain) -> Self {
        assert_eq!(boundary.degree(), cell.degree - 1, "boundary degree mismatch");
        self.cells.insert(cell.clone());
        if !boundary.is_zero() {
            self.boundaries.insert(cell, boundary);
        }
        self
    }

    pub fn add_cell(&mut self, cell: Cell) {
        self.cells.insert(cell);
    }

    pub fn add_cell_with_boundary(&mut self, cell: Cell, boundary: Chain) {
        assert_eq!(boundary.degree(), cell.degree - 1, "boundary degree mismatch");
        self.cells.insert(cell.clone());
        if !boundary.is_zero() {
            self.boundaries.insert(cell, boundary);
        }
    }

    /// Validates that boundaries are supported on the declared bases and that
    /// d² = 0 on every cell.
    pub fn build(self) -> Result<Arc<FiniteComplex>> {
        let mut basis: BTreeMap<i32, Vec<Cell>> = BTreeMap::new();
        for cell in &self.cells {
            basis.entry(cell.degree).or_default().push(cell.clone());
        }
        let cx = FiniteComplex { basis, members: self.cells, boundaries: self.boundaries };
        for (cell, b) in &cx.boundaries {
            for face in b.cells() {
                if !cx.members.contains(&face) {
                    return Err(Error::InvalidComplex(format!(
                        "boundary of {cell} mentions {face} outside the basis"
                    )));
                }
            }
        }
        let all = cx.all_cells();
        let report = verify_d_squared(&cx, all.iter());
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidComplex(format!(
                "d^2 != 0 at {}: d(d(cell)) = {}",
                v.cell, v.dd
            )));
        }
        Ok(Arc::new(cx))
    }

    /// Builds without the d² check (for deliberately corrupted test fixtures).
    pub fn build_unchecked(self) -> Arc<FiniteComplex> {
        let mut basis: BTreeMap<i32, Vec<Cell>> = BTreeMap::new();
        for cell in &self.cells {
            basis.entry(cell.degree).or_default().push(cell.clone());
        }
        Arc::new(FiniteComplex { basis, members: self.cells, boundaries: self.boundaries })
    }
}

type MemberFn = dyn Fn(&Cell) -> bool + Send + Sync;
type EnumFn = dyn Fn(i32) -> BasisView + Send + Sync;
type DiffFn = dyn Fn(&Cell) -> Chain + Send + Sync;

/// A complex given by closures; the basis may be predicate-only.
pub struct LazyComplex {
    member: Arc<MemberFn>,
    enumerate: Arc<EnumFn>,
    boundary: Arc<DiffFn>,
}

impl LazyComplex {
    pub fn new(
        member: impl Fn(&Cell) -> bool + Send + Sync + 'static,
        enumerate: impl Fn(i32) -> BasisView + Send + Sync + 'static,
        boundary: impl Fn(&Cell) -> Chain + Send + Sync + 'static,
    ) -> Arc<LazyComplex> {
        Arc::new(LazyComplex {
            member: Arc::new(member),
            enumerate: Arc::new(enumerate),
            boundary: Arc::new(boundary),
        })
    }

    pub fn predicate_only(
        member: impl Fn(&Cell) -> bool + Send + Sync + 'static,
        boundary: impl Fn(&Cell) -> Chain + Send + Sync + 'static,
    ) -> Arc<LazyComplex> {
        LazyComplex::new(member, |_| BasisView::PredicateOnly, boundary)
    }
}

impl ComplexLike for LazyComplex {
    fn contains(&self, cell: &Cell) -> bool {
        (self.member)(cell)
    }

    fn basis(&self, degree: i32) -> BasisView {
        (self.enumerate)(degree)
    }

    fn diff(&self, cell: &Cell) -> Chain {
        (self.boundary)(cell)
    }
}

/// Same cells as `inner`, differential `inner.diff + delta`.
pub struct PerturbedComplex {
    pub inner: Cx,
    pub delta: crate::morphism::Morphism,
}

impl ComplexLike for PerturbedComplex {
    fn contains(&self, cell: &Cell) -> bool {
        self.inner.contains(cell)
    }

    fn basis(&self, degree: i32) -> BasisView {
        self.inner.basis(degree)
    }

    fn diff(&self, cell: &Cell) -> Chain {
        self.inner.diff(cell).add(&self.delta.apply(cell))
    }
}
