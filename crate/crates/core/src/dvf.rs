//! Discrete vector fields on cellular complexes: V-paths, admissibility
//! certification, the vector-field reduction by both constructions (Gauss
//! elimination and homological perturbation), and recovery of the unique
//! vector field behind a given reduction.

use crate::chain::{Chain, Coeff};
use crate::complex::{incidence, BasisView, ComplexLike, Cx, Error, LazyComplex, Result};
use crate::key::Cell;
use crate::morphism::Morphism;
use crate::reduction::{perturb, Perturbation, Reduction};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex};

/// How a cell sits in a vector field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellClass {
    /// Paired upward: the cell is the source of a vector with this target.
    Source { target: Cell },
    /// Paired downward: the cell is the target of a vector with this source.
    Target { source: Cell },
    Critical,
}

impl CellClass {
    pub fn is_source(&self) -> bool {
        matches!(self, CellClass::Source { .. })
    }
    pub fn is_critical(&self) -> bool {
        matches!(self, CellClass::Critical)
    }
}

/// A vector field presented as a total classifier on presented cells.
pub trait VectorFieldLike: Send + Sync {
    fn classify(&self, cell: &Cell) -> CellClass;
}

pub type Field = Arc<dyn VectorFieldLike>;

/// A finite, explicitly stored vector field.
#[derive(Clone, Default)]
pub struct DiscreteVectorField {
    by_source: BTreeMap<Cell, Cell>,
    by_target: BTreeMap<Cell, Cell>,
}

impl DiscreteVectorField {
    pub fn new() -> DiscreteVectorField {
        DiscreteVectorField::default()
    }

    /// Add the vector (sigma, tau). Rejects non-regular incidences and any
    /// reuse of a cell, naming the violated condition.
    pub fn add_vector(&mut self, cx: &dyn ComplexLike, sigma: Cell, tau: Cell) -> Result<()> {
        if sigma.degree + 1 != tau.degree {
            return Err(Error::VectorRejected(format!(
                "target degree must exceed source degree by one: {sigma} -> {tau}"
            )));
        }
        let eps = incidence(cx, &sigma, &tau)?;
        if eps.abs() != 1 {
            return Err(Error::VectorRejected(format!(
                "{sigma} is not a regular face of {tau} (incidence {eps})"
            )));
        }
        if self.by_source.contains_key(&sigma) || self.by_target.contains_key(&sigma) {
            return Err(Error::VectorRejected(format!("{sigma} already used in the field")));
        }
        if self.by_source.contains_key(&tau) || self.by_target.contains_key(&tau) {
            return Err(Error::VectorRejected(format!("{tau} already used in the field")));
        }
        self.by_source.insert(sigma.clone(), tau.clone());
        self.by_target.insert(tau, sigma);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.by_source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_source.is_empty()
    }

    pub fn vectors(&self) -> impl Iterator<Item = (&Cell, &Cell)> {
        self.by_source.iter()
    }

    pub fn target_of(&self, sigma: &Cell) -> Option<&Cell> {
        self.by_source.get(sigma)
    }

    pub fn source_of(&self, tau: &Cell) -> Option<&Cell> {
        self.by_target.get(tau)
    }

    pub fn source_cells(&self) -> impl Iterator<Item = &Cell> {
        self.by_source.keys()
    }
}

impl VectorFieldLike for DiscreteVectorField {
    fn classify(&self, cell: &Cell) -> CellClass {
        if let Some(t) = self.by_source.get(cell) {
            CellClass::Source { target: t.clone() }
        } else if let Some(s) = self.by_target.get(cell) {
            CellClass::Target { source: s.clone() }
        } else {
            CellClass::Critical
        }
    }
}

type ClassifyFn = dyn Fn(&Cell) -> CellClass + Send + Sync;

/// A vector field given by a classifier closure, for complexes whose bases
/// are not enumerable.
pub struct LazyVectorField {
    classify: Arc<ClassifyFn>,
}

impl LazyVectorField {
    pub fn new(classify: impl Fn(&Cell) -> CellClass + Send + Sync + 'static) -> Arc<Self> {
        Arc::new(LazyVectorField { classify: Arc::new(classify) })
    }
}

impl VectorFieldLike for LazyVectorField {
    fn classify(&self, cell: &Cell) -> CellClass {
        (self.classify)(cell)
    }
}

/// A V-path: a sequence of vectors, each new source a face of the previous
/// target and different from the previous source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPath {
    pub steps: Vec<(Cell, Cell)>,
}

impl VPath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
    /// The cells visited, alternating source, target, source, target, ...
    pub fn visited(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (s, t) in &self.steps {
            out.push(s.clone());
            out.push(t.clone());
        }
        out
    }
}

/// All maximal V-paths starting at a source cell, cut off at `max_len`
/// vectors. The second component reports whether any path was truncated.
pub fn enumerate_v_paths(
    cx: &dyn ComplexLike,
    field: &dyn VectorFieldLike,
    sigma: &Cell,
    max_len: usize,
) -> (Vec<VPath>, bool) {
    let mut paths = Vec::new();
    let mut truncated = false;
    let mut stack: Vec<(Cell, Cell)> = Vec::new();
    walk(cx, field, sigma, max_len, &mut stack, &mut paths, &mut truncated);
    return (paths, truncated);

    fn walk(
        cx: &dyn ComplexLike,
        field: &dyn VectorFieldLike,
        sigma: &Cell,
        max_len: usize,
        stack: &mut Vec<(Cell, Cell)>,
        paths: &mut Vec<VPath>,
        truncated: &mut bool,
    ) {
        let target = match field.classify(sigma) {
            CellClass::Source { target } => target,
            _ => return,
        };
        stack.push((sigma.clone(), target.clone()));
        let extensions: Vec<Cell> = cx
            .diff(&target)
            .cells()
            .filter(|face| face != sigma && field.classify(face).is_source())
            .collect();
        if extensions.is_empty() {
            paths.push(VPath { steps: stack.clone() });
        } else if stack.len() >= max_len {
            paths.push(VPath { steps: stack.clone() });
            *truncated = true;
        } else {
            for face in extensions {
                walk(cx, field, &face, max_len, stack, paths, truncated);
            }
        }
        stack.pop();
    }
}

type LyapunovFn = dyn Fn(&Cell) -> u64 + Send + Sync;

/// Certification that every V-path from a source has bounded length.
#[derive(Clone)]
pub enum Admissibility {
    /// Finite case: per-source longest-path bounds from the acyclic order
    /// graph.
    FiniteAcyclic { bounds: Arc<HashMap<Cell, usize>> },
    /// Lyapunov case: a cell function strictly decreasing along elementary
    /// V-steps, verified on whatever sample the caller supplied.
    Lyapunov { l: Arc<LyapunovFn>, verified_on: usize },
}

impl Admissibility {
    /// An upper bound for the length of any V-path starting at this cell.
    pub fn path_bound(&self, cell: &Cell) -> usize {
        match self {
            Admissibility::FiniteAcyclic { bounds } => bounds.get(cell).copied().unwrap_or(1),
            Admissibility::Lyapunov { l, .. } => l(cell) as usize + 1,
        }
    }
}

/// A concrete violation of admissibility: a circular V-path through these
/// source cells.
#[derive(Clone, Debug)]
pub struct LoopWitness {
    pub cycle: Vec<Cell>,
}

impl LoopWitness {
    pub fn period(&self) -> usize {
        self.cycle.len()
    }
}

pub enum AdmissibleOutcome {
    Certified(Admissibility),
    Loop(LoopWitness),
}

impl AdmissibleOutcome {
    pub fn certificate(self) -> Result<Admissibility> {
        match self {
            AdmissibleOutcome::Certified(c) => Ok(c),
            AdmissibleOutcome::Loop(w) => Err(Error::Inadmissible(format!(
                "V-path loop of period {} through {:?}",
                w.period(),
                w.cycle
            ))),
        }
    }
}

/// Decide admissibility of a field on an enumerable complex by building the
/// oriented graph on source cells (source → faces of its target that are
/// sources) and either topologically ordering it or exhibiting a loop.
pub fn check_admissible(
    cx: &dyn ComplexLike,
    field: &dyn VectorFieldLike,
    degrees: std::ops::RangeInclusive<i32>,
) -> AdmissibleOutcome {
    let mut sources: Vec<Cell> = Vec::new();
    for d in degrees {
        match cx.basis(d) {
            BasisView::Enumerable(cells) => {
                sources.extend(cells.into_iter().filter(|c| field.classify(c).is_source()));
            }
            BasisView::PredicateOnly => {
                panic!("check_admissible requires enumerable bases; supply a Lyapunov function")
            }
        }
    }
    check_admissible_sources(cx, field, &sources)
}

/// Same as [`check_admissible`] but over an explicit closed set of source
/// cells.
pub fn check_admissible_sources(
    cx: &dyn ComplexLike,
    field: &dyn VectorFieldLike,
    sources: &[Cell],
) -> AdmissibleOutcome {
    // successors(σ) = source faces of V(σ) other than σ
    let succ = |sigma: &Cell| -> Vec<Cell> {
        let target = match field.classify(sigma) {
            CellClass::Source { target } => target,
            _ => return Vec::new(),
        };
        cx.diff(&target)
            .cells()
            .filter(|face| face != sigma && field.classify(face).is_source())
            .collect()
    };

    // Iterative tricolor DFS computing longest-path bounds, loop on back edge.
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    let mut marks: HashMap<Cell, Mark> = HashMap::new();
    let mut bounds: HashMap<Cell, usize> = HashMap::new();

    enum Frame {
        Enter(Cell),
        Exit(Cell),
    }
    for root in sources {
        if marks.contains_key(root) {
            continue;
        }
        let mut stack = vec![Frame::Enter(root.clone())];
        let mut trail: Vec<Cell> = Vec::new();
        while let Some(frame) = stack.pop() {
            match frame {
                Frame::Enter(cell) => {
                    match marks.get(&cell) {
                        Some(Mark::Done) => continue,
                        Some(Mark::Open) => {
                            let start = trail.iter().position(|c| *c == cell).unwrap_or(0);
                            return AdmissibleOutcome::Loop(LoopWitness {
                                cycle: trail[start..].to_vec(),
                            });
                        }
                        None => {}
                    }
                    marks.insert(cell.clone(), Mark::Open);
                    trail.push(cell.clone());
                    stack.push(Frame::Exit(cell.clone()));
                    for next in succ(&cell) {
                        match marks.get(&next) {
                            Some(Mark::Open) => {
                                let start =
                                    trail.iter().position(|c| *c == next).unwrap_or(0);
                                return AdmissibleOutcome::Loop(LoopWitness {
                                    cycle: trail[start..].to_vec(),
                                });
                            }
                            Some(Mark::Done) => {}
                            None => stack.push(Frame::Enter(next)),
                        }
                    }
                }
                Frame::Exit(cell) => {
                    let succ_bound =
                        succ(&cell).iter().map(|s| bounds.get(s).copied().unwrap_or(0)).max();
                    bounds.insert(cell.clone(), 1 + succ_bound.unwrap_or(0));
                    marks.insert(cell.clone(), Mark::Done);
                    trail.pop();
                }
            }
        }
    }
    AdmissibleOutcome::Certified(Admissibility::FiniteAcyclic { bounds: Arc::new(bounds) })
}

/// Certify admissibility conditionally via a caller-supplied Lyapunov
/// function, verifying the strict decrease on the supplied sample of source
/// cells. Failure of the decrease on the sample is a loop-style witness.
pub fn check_admissible_lyapunov(
    cx: &dyn ComplexLike,
    field: &dyn VectorFieldLike,
    l: impl Fn(&Cell) -> u64 + Send + Sync + 'static,
    sample: &[Cell],
) -> AdmissibleOutcome {
    let mut verified = 0usize;
    for sigma in sample {
        let target = match field.classify(sigma) {
            CellClass::Source { target } => target,
            _ => continue,
        };
        verified += 1;
        for face in cx.diff(&target).cells() {
            if face == *sigma || !field.classify(&face).is_source() {
                continue;
            }
            if l(&face) >= l(sigma) {
                return AdmissibleOutcome::Loop(LoopWitness { cycle: vec![sigma.clone(), face] });
            }
        }
    }
    AdmissibleOutcome::Certified(Admissibility::Lyapunov { l: Arc::new(l), verified_on: verified })
}

/// Memoized inverse of the target→source block of the differential,
/// computed by the recursion
///
///   d21⁻¹(σ) = ε(σ,V(σ)) · ( V(σ) − Σ_{σ' source, σ'≠σ} ε(σ',V(σ)) · d21⁻¹(σ') ).
pub struct D21Inverse {
    cx: Cx,
    field: Field,
    cert: Admissibility,
    memo: Mutex<HashMap<Cell, Chain>>,
}

impl D21Inverse {
    pub fn new(cx: Cx, field: Field, cert: Admissibility) -> Arc<D21Inverse> {
        Arc::new(D21Inverse { cx, field, cert, memo: Mutex::new(HashMap::new()) })
    }

    /// The unique chain of target cells x with d_{2,1}(x) = σ.
    pub fn invert(&self, sigma: &Cell) -> Result<Chain> {
        let mut on_stack = HashSet::new();
        // The certificate bounds V-path lengths from the starting cell, so
        // it budgets the whole recursion below it.
        let budget = self.cert.path_bound(sigma).saturating_add(1);
        self.invert_inner(sigma, 0, budget, &mut on_stack)
    }

    /// Linear extension to a chain of source cells.
    pub fn invert_chain(&self, sources: &Chain) -> Result<Chain> {
        let mut out = Chain::zero(sources.degree() + 1);
        for (key, coeff) in sources.iter() {
            let cell = Cell { degree: sources.degree(), key: key.clone() };
            out.add_scaled(&self.invert(&cell)?, coeff);
        }
        Ok(out)
    }

    fn invert_inner(
        &self,
        sigma: &Cell,
        depth: usize,
        budget: usize,
        on_stack: &mut HashSet<Cell>,
    ) -> Result<Chain> {
        if let Some(hit) = self.memo.lock().unwrap().get(sigma) {
            return Ok(hit.clone());
        }
        if !on_stack.insert(sigma.clone()) {
            return Err(Error::Inadmissible(format!("circular V-path through {sigma}")));
        }
        if depth > budget {
            return Err(Error::NilpotencyViolation { cell: sigma.clone(), bound: budget });
        }
        let target = match self.field.classify(sigma) {
            CellClass::Source { target } => target,
            _ => {
                return Err(Error::Contract(format!("{sigma} is not a source cell")));
            }
        };
        let d_target = self.cx.diff(&target);
        let eps = d_target.coeff_of(sigma);
        debug_assert!(eps.abs() == 1, "vector with non-regular incidence");
        let mut acc = Chain::generator(&target);
        for (key, coeff) in d_target.iter() {
            let face = Cell { degree: sigma.degree, key: key.clone() };
            if face == *sigma || !self.field.classify(&face).is_source() {
                continue;
            }
            let rec = self.invert_inner(&face, depth + 1, budget, on_stack)?;
            acc.add_scaled(&rec, -coeff);
        }
        let result = acc.scale(eps);
        on_stack.remove(sigma);
        self.memo.lock().unwrap().insert(sigma.clone(), result.clone());
        Ok(result)
    }
}

/// Free-function entry point for the recursion above.
pub fn invert_d21(cx: &Cx, field: &Field, cert: &Admissibility, sigma: &Cell) -> Result<Chain> {
    D21Inverse::new(cx.clone(), field.clone(), cert.clone()).invert(sigma)
}

fn split_by_class(field: &dyn VectorFieldLike, chain: &Chain) -> (Chain, Chain, Chain) {
    let d = chain.degree();
    let (mut target, mut source, mut critical) =
        (Chain::zero(d), Chain::zero(d), Chain::zero(d));
    for (key, coeff) in chain.iter() {
        let cell = Cell { degree: d, key: key.clone() };
        match field.classify(&cell) {
            CellClass::Target { .. } => target.add_term(key, coeff),
            CellClass::Source { .. } => source.add_term(key, coeff),
            CellClass::Critical => critical.add_term(key, coeff),
        }
    }
    (target, source, critical)
}

/// The critical complex of a field on a complex: basis the critical cells,
/// differential d' = d_{3,3} − d_{3,1} ∘ d_{2,1}⁻¹ ∘ d_{2,3}.
fn critical_complex(cx: &Cx, field: &Field, inv: &Arc<D21Inverse>) -> Cx {
    let member = {
        let cx = cx.clone();
        let field = field.clone();
        move |cell: &Cell| cx.contains(cell) && field.classify(cell).is_critical()
    };
    let enumerate = {
        let cx = cx.clone();
        let field = field.clone();
        move |degree: i32| match cx.basis(degree) {
            BasisView::Enumerable(cells) => BasisView::Enumerable(
                cells.into_iter().filter(|c| field.classify(c).is_critical()).collect(),
            ),
            BasisView::PredicateOnly => BasisView::PredicateOnly,
        }
    };
    let boundary = {
        let cx = cx.clone();
        let field = field.clone();
        let inv = inv.clone();
        move |cell: &Cell| {
            let d = cx.diff(cell);
            let (_, src, mut crit) = split_by_class(field.as_ref(), &d);
            if !src.is_zero() {
                let lifted = inv.invert_chain(&src).expect("admissible field");
                let dd = crate::complex::diff_chain(cx.as_ref(), &lifted);
                let (_, _, crit2) = split_by_class(field.as_ref(), &dd);
                crit.add_scaled(&crit2, -1);
            }
            crit
        }
    };
    LazyComplex::new(member, enumerate, boundary)
}

/// Vector-field reduction built from the explicit Gauss-elimination formulas.
pub fn build_reduction_gauss(cx: &Cx, field: &Field, cert: &Admissibility) -> Reduction {
    let inv = D21Inverse::new(cx.clone(), field.clone(), cert.clone());
    let small = critical_complex(cx, field, &inv);

    let f = {
        let cx = cx.clone();
        let field = field.clone();
        let inv = inv.clone();
        Morphism::new(0, move |cell| match field.classify(cell) {
            CellClass::Target { .. } => Chain::zero(cell.degree),
            CellClass::Critical => Chain::generator(cell),
            CellClass::Source { .. } => {
                let lifted = inv.invert(cell).expect("admissible field");
                let dd = crate::complex::diff_chain(cx.as_ref(), &lifted);
                let (_, _, crit) = split_by_class(field.as_ref(), &dd);
                crit.scale(-1)
            }
        })
        .memoized()
    };

    let g = {
        let cx = cx.clone();
        let field = field.clone();
        let inv = inv.clone();
        Morphism::new(0, move |cell| {
            let d = cx.diff(cell);
            let (_, src, _) = split_by_class(field.as_ref(), &d);
            let mut out = Chain::generator(cell);
            if !src.is_zero() {
                let lifted = inv.invert_chain(&src).expect("admissible field");
                out.add_scaled(&lifted, -1);
            }
            out
        })
        .memoized()
    };

    let h = {
        let field = field.clone();
        let inv = inv.clone();
        Morphism::new(1, move |cell| match field.classify(cell) {
            CellClass::Source { .. } => inv.invert(cell).expect("admissible field"),
            _ => Chain::zero(cell.degree + 1),
        })
        .memoized()
    };

    Reduction { big: cx.clone(), small, f, g, h }
}

/// Vector-field reduction built by perturbing the trivial reduction of
/// (C, δ = εV⁻¹) onto the zero-differential critical complex with δ̂ = d − δ.
pub fn build_reduction_hpt(cx: &Cx, field: &Field, cert: &Admissibility) -> Reduction {
    let eps_of = |cx: &Cx, source: &Cell, target: &Cell| -> Coeff {
        cx.diff(target).coeff_of(source)
    };

    // δ = εV⁻¹: nonzero only on target cells.
    let delta = {
        let cx = cx.clone();
        let field = field.clone();
        Morphism::new(-1, move |cell| match field.classify(cell) {
            CellClass::Target { source } => {
                Chain::generator(&source).scale(eps_of(&cx, &source, cell))
            }
            _ => Chain::zero(cell.degree - 1),
        })
    };
    // h = εV: nonzero only on source cells.
    let h0 = {
        let cx = cx.clone();
        let field = field.clone();
        Morphism::new(1, move |cell| match field.classify(cell) {
            CellClass::Source { target } => {
                Chain::generator(&target).scale(eps_of(&cx, cell, &target))
            }
            _ => Chain::zero(cell.degree + 1),
        })
    };
    let f0 = {
        let field = field.clone();
        Morphism::new(0, move |cell| match field.classify(cell) {
            CellClass::Critical => Chain::generator(cell),
            _ => Chain::zero(cell.degree),
        })
    };
    let g0 = Morphism::identity();

    let big0: Cx = {
        let inner = cx.clone();
        let delta = delta.clone();
        LazyComplex::new(
            {
                let inner = inner.clone();
                move |cell: &Cell| inner.contains(cell)
            },
            {
                let inner = inner.clone();
                move |degree| inner.basis(degree)
            },
            move |cell: &Cell| delta.apply(cell),
        )
    };
    let small0: Cx = {
        let inner = cx.clone();
        let field_m = field.clone();
        let field_e = field.clone();
        LazyComplex::new(
            {
                let inner = inner.clone();
                move |cell: &Cell| {
                    inner.contains(cell) && field_m.classify(cell).is_critical()
                }
            },
            {
                let inner = inner.clone();
                move |degree| match inner.basis(degree) {
                    BasisView::Enumerable(cells) => BasisView::Enumerable(
                        cells
                            .into_iter()
                            .filter(|c| field_e.classify(c).is_critical())
                            .collect(),
                    ),
                    BasisView::PredicateOnly => BasisView::PredicateOnly,
                }
            },
            |cell: &Cell| Chain::zero(cell.degree - 1),
        )
    };

    let rho0 = Reduction { big: big0, small: small0, f: f0, g: g0, h: h0 };

    // Perturbation restoring the true differential.
    let delta_hat = {
        let cx = cx.clone();
        let delta = delta.clone();
        Morphism::new(-1, move |cell| cx.diff(cell).sub(&delta.apply(cell)))
    };
    let cert = cert.clone();
    let perturbation =
        Perturbation::new(delta_hat, move |cell| cert.path_bound(cell).saturating_add(2));
    let rho1 = perturb(&rho0, &perturbation).expect("perturbation of the initial reduction");

    // The perturbed big differential equals the true one cell-wise; present
    // the reduction on the original complex.
    Reduction { big: cx.clone(), small: rho1.small, f: rho1.f, g: rho1.g, h: rho1.h }
}

/// Outcome of trying to read a vector field off a reduction.
pub enum RecoveryOutcome {
    Field(DiscreteVectorField),
    Failure(String),
}

impl RecoveryOutcome {
    pub fn field(self) -> Option<DiscreteVectorField> {
        match self {
            RecoveryOutcome::Field(v) => Some(v),
            RecoveryOutcome::Failure(_) => None,
        }
    }
}

/// Recover the unique vector field explaining a reduction, if one exists:
/// a cell is a source iff h(cell) ≠ 0, its target is the unique cell of the
/// support of h(cell) having the source in its boundary, and the reduction's
/// homotopy must then reproduce the d₂₁⁻¹ recursion of the recovered field.
pub fn recover_vector_field(rho: &Reduction, cells: &[Cell]) -> RecoveryOutcome {
    let mut field = DiscreteVectorField::new();
    for sigma in cells {
        let h = rho.h.apply(sigma);
        if h.is_zero() {
            continue;
        }
        let mut candidates = Vec::new();
        for tau in h.cells() {
            let eps = rho.big.diff(&tau).coeff_of(sigma);
            if eps != 0 {
                candidates.push((tau, eps));
            }
        }
        match candidates.as_slice() {
            [] => {
                return RecoveryOutcome::Failure(format!(
                    "h({sigma}) has no cell with {sigma} in its boundary"
                ))
            }
            [(tau, eps)] => {
                if eps.abs() != 1 {
                    return RecoveryOutcome::Failure(format!(
                        "pivot incidence {eps} at ({sigma}, {tau}) is not a unit"
                    ));
                }
                if let Err(e) = field.add_vector(rho.big.as_ref(), sigma.clone(), tau.clone()) {
                    return RecoveryOutcome::Failure(e.to_string());
                }
            }
            _ => {
                return RecoveryOutcome::Failure(format!(
                    "target of {sigma} is not unique: {:?}",
                    candidates.iter().map(|(t, _)| t.clone()).collect::<Vec<_>>()
                ))
            }
        }
    }
    // The candidate field must actually generate the homotopy: h = d₂₁⁻¹ on
    // every recovered source.
    let sources: Vec<Cell> = field.source_cells().cloned().collect();
    let cert = match check_admissible_sources(rho.big.as_ref(), &field, &sources) {
        AdmissibleOutcome::Certified(cert) => cert,
        AdmissibleOutcome::Loop(w) => {
            return RecoveryOutcome::Failure(format!(
                "recovered pairing has a V-path loop through {:?}",
                w.cycle
            ))
        }
    };
    let shared: Field = Arc::new(field.clone());
    let inv = D21Inverse::new(rho.big.clone(), shared, cert);
    for sigma in &sources {
        match inv.invert(sigma) {
            Ok(expected) if expected == rho.h.apply(sigma) => {}
            Ok(expected) => {
                return RecoveryOutcome::Failure(format!(
                    "h({sigma}) = {} does not match the vector-field formula {expected}",
                    rho.h.apply(sigma)
                ))
            }
            Err(e) => return RecoveryOutcome::Failure(e.to_string()),
        }
    }
    RecoveryOutcome::Field(field)
}
