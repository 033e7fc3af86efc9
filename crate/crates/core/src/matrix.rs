//! Vector fields on integer matrices, the predefined-order and incremental
//! construction heuristics, iterated matrix reduction, Smith normal form, and
//! homology of finite complexes.
//!
//! Rows and columns are 0-indexed.

use crate::chain::{cmul, Coeff};
use crate::complex::{verify_d_squared, ComplexLike, Error, FiniteComplex, Result};
use crate::dvf::{check_admissible_sources, Admissibility, AdmissibleOutcome, DiscreteVectorField};
use crate::key::Cell;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

/// Sparse integer matrix; no explicit zeros are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Coeff>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn from_dense(data: &[&[Coeff]]) -> IntMatrix {
        let rows = data.len();
        let cols = data.first().map(|r| r.len()).unwrap_or(0);
        let mut m = IntMatrix::zero(rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Coeff {
        self.entries.get(&(r, c)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Coeff) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v == 0 {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Coeff)> + '_ {
        self.entries.iter().map(|(&(r, c), &v)| (r, c, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn col_entries(&self, c: usize) -> Vec<(usize, Coeff)> {
        self.entries
            .iter()
            .filter(|((_, cc), _)| *cc == c)
            .map(|(&(r, _), &v)| (r, v))
            .collect()
    }

    pub fn row_entries(&self, r: usize) -> Vec<(usize, Coeff)> {
        self.entries.range((r, 0)..=(r, usize::MAX)).map(|(&(_, c), &v)| (c, v)).collect()
    }

    /// Submatrix on the listed rows and columns, positions renumbered.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let rpos: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let cpos: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut m = IntMatrix::zero(rows.len(), cols.len());
        for (r, c, v) in self.iter() {
            if let (Some(&ri), Some(&ci)) = (rpos.get(&r), cpos.get(&c)) {
                m.set(ri, ci, v);
            }
        }
        m
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{:>4}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// A vector field on a matrix: unit-entry pivots with pairwise distinct rows
/// and pairwise distinct columns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MatrixVectorField {
    pub vectors: Vec<(usize, usize)>,
}

impl MatrixVectorField {
    pub fn validate(&self, m: &IntMatrix) -> Result<()> {
        let mut rs = HashSet::new();
        let mut cs = HashSet::new();
        for &(r, c) in &self.vectors {
            if m.get(r, c).abs() != 1 {
                return Err(Error::VectorRejected(format!(
                    "entry M[{r},{c}] = {} is not a unit",
                    m.get(r, c)
                )));
            }
            if !rs.insert(r) {
                return Err(Error::VectorRejected(format!("row {r} used twice")));
            }
            if !cs.insert(c) {
                return Err(Error::VectorRejected(format!("column {c} used twice")));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// The order graph maintained by the incremental heuristic: row nodes are
/// sources or minimal cells, and an edge a → a′ records the relation a > a′.
#[derive(Clone, Debug, Default)]
pub struct OrderGraph {
    sources: BTreeSet<usize>,
    minimal: BTreeSet<usize>,
    edges: BTreeSet<(usize, usize)>,
}

impl OrderGraph {
    pub fn contains(&self, row: usize) -> bool {
        self.sources.contains(&row) || self.minimal.contains(&row)
    }

    pub fn is_source(&self, row: usize) -> bool {
        self.sources.contains(&row)
    }

    pub fn is_minimal(&self, row: usize) -> bool {
        self.minimal.contains(&row)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Whether a > b holds in the transitive closure.
    pub fn dominates(&self, a: usize, b: usize) -> bool {
        let mut seen = BTreeSet::new();
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for &(from, to) in self.edges.range((x, 0)..=(x, usize::MAX)) {
                debug_assert_eq!(from, x);
                if to == b {
                    return true;
                }
                if seen.insert(to) {
                    stack.push(to);
                }
            }
        }
        false
    }

    fn add_vector_edges(&mut self, source: usize, faces: &[usize]) {
        self.minimal.remove(&source);
        self.sources.insert(source);
        for &f in faces {
            if !self.contains(f) {
                self.minimal.insert(f);
            }
            self.edges.insert((source, f));
        }
    }
}

/// Greedy field from a predefined row order: a column is selected when its
/// unit pivot row dominates every other nonzero row of that column.
///
/// `row_order` lists all row indices from lowest to highest priority; the
/// admissibility of the result is forced by construction, every elementary
/// V-path descending strictly in the order.
pub fn vf_by_predefined_order(m: &IntMatrix, row_order: &[usize]) -> MatrixVectorField {
    assert_eq!(row_order.len(), m.rows(), "row_order must be a permutation of the rows");
    let mut rank = vec![0usize; m.rows()];
    for (i, &r) in row_order.iter().enumerate() {
        rank[r] = i;
    }
    let mut used_rows = HashSet::new();
    let mut vectors = Vec::new();
    for c in 0..m.cols() {
        let entries = m.col_entries(c);
        let Some(&(top, v)) = entries.iter().max_by_key(|&&(r, _)| rank[r]) else {
            continue;
        };
        if v.abs() == 1 && !used_rows.contains(&top) {
            used_rows.insert(top);
            vectors.push((top, c));
        }
    }
    vectors.sort();
    MatrixVectorField { vectors }
}

/// Incremental heuristic: scan rows in ascending index, columns in ascending
/// index inside each row, and add a vector whenever the conservative
/// order-graph rule admits it: either the source row is absent from the
/// graph, or it is minimal and none of the other rows of the column is a
/// source.
pub fn vf_incremental(m: &IntMatrix) -> (MatrixVectorField, OrderGraph) {
    let mut graph = OrderGraph::default();
    let mut used_cols = HashSet::new();
    let mut vectors = Vec::new();
    for r in 0..m.rows() {
        for (c, v) in m.row_entries(r) {
            if v.abs() != 1 || used_cols.contains(&c) {
                continue;
            }
            let faces: Vec<usize> =
                m.col_entries(c).iter().map(|&(rr, _)| rr).filter(|&rr| rr != r).collect();
            let allowed = if !graph.contains(r) {
                true
            } else {
                graph.is_minimal(r) && faces.iter().all(|&f| !graph.is_source(f))
            };
            if allowed {
                used_cols.insert(c);
                vectors.push((r, c));
                graph.add_vector_edges(r, &faces);
                break;
            }
        }
    }
    (MatrixVectorField { vectors }, graph)
}

pub enum MatrixAdmissibility {
    /// Source rows in an order compatible with every elementary V-step
    /// (each listed row only dominates rows listed after it).
    TopologicalOrder(Vec<usize>),
    Loop(Vec<usize>),
}

/// Build the relation a > a′ (vector (a,b) present and M[a′,b] ≠ 0) and
/// either topologically order the source rows or exhibit a loop.
pub fn check_matrix_vf_admissible(
    m: &IntMatrix,
    field: &MatrixVectorField,
) -> Result<MatrixAdmissibility> {
    field.validate(m)?;
    let col_of: HashMap<usize, usize> = field.vectors.iter().map(|&(r, c)| (r, c)).collect();
    let succ = |a: usize| -> Vec<usize> {
        match col_of.get(&a) {
            Some(&c) => m
                .col_entries(c)
                .iter()
                .map(|&(r, _)| r)
                .filter(|&r| r != a && col_of.contains_key(&r))
                .collect(),
            None => Vec::new(),
        }
    };
    // DFS with cycle extraction.
    let mut state: HashMap<usize, u8> = HashMap::new(); // 1 = open, 2 = done
    let mut order = Vec::new();
    for &(root, _) in &field.vectors {
        if state.get(&root).copied() == Some(2) {
            continue;
        }
        let mut trail: Vec<(usize, Vec<usize>)> = vec![(root, succ(root))];
        state.insert(root, 1);
        while let Some((node, rest)) = trail.last_mut() {
            match rest.pop() {
                Some(next) => match state.get(&next).copied() {
                    Some(1) => {
                        let mut cycle: Vec<usize> =
                            trail.iter().map(|(n, _)| *n).collect();
                        if let Some(pos) = cycle.iter().position(|&n| n == next) {
                            cycle.drain(..pos);
                        }
                        return Ok(MatrixAdmissibility::Loop(cycle));
                    }
                    Some(2) => {}
                    _ => {
                        state.insert(next, 1);
                        trail.push((next, succ(next)));
                    }
                },
                None => {
                    state.insert(*node, 2);
                    order.push(*node);
                    trail.pop();
                }
            }
        }
    }
    order.reverse();
    Ok(MatrixAdmissibility::TopologicalOrder(order))
}

/// Basis-change data retained by a matrix reduction: the pairing and, per
/// source row, the unique column combination y(a) with (paired rows of M·y)
/// equal to the unit vector at a. These are what the reduction morphisms are
/// made of.
pub struct TransformRecord {
    pub field: MatrixVectorField,
    pub lift: BTreeMap<usize, BTreeMap<usize, Coeff>>,
}

/// Gauss-style reduction of a matrix by an admissible field: returns the
/// Schur complement on the unpaired rows and columns (in ascending original
/// order) together with the transform record.
pub fn reduce_matrix(
    m: &IntMatrix,
    field: &MatrixVectorField,
) -> Result<(IntMatrix, TransformRecord)> {
    field.validate(m)?;
    let col_of: BTreeMap<usize, usize> = field.vectors.iter().map(|&(r, c)| (r, c)).collect();
    let source_rows: BTreeSet<usize> = col_of.keys().copied().collect();

    // y(a) by the forward recursion; explicit stack guards against loops.
    let mut lift: BTreeMap<usize, BTreeMap<usize, Coeff>> = BTreeMap::new();
    fn solve(
        a: usize,
        m: &IntMatrix,
        col_of: &BTreeMap<usize, usize>,
        lift: &mut BTreeMap<usize, BTreeMap<usize, Coeff>>,
        on_stack: &mut BTreeSet<usize>,
    ) -> Result<()> {
        if lift.contains_key(&a) {
            return Ok(());
        }
        if !on_stack.insert(a) {
            return Err(Error::Inadmissible(format!("loop through row {a}")));
        }
        let b = col_of[&a];
        let pivot = m.get(a, b);
        let mut acc: BTreeMap<usize, Coeff> = BTreeMap::new();
        acc.insert(b, 1);
        for (r, v) in m.col_entries(b) {
            if r == a || !col_of.contains_key(&r) {
                continue;
            }
            solve(r, m, col_of, lift, on_stack)?;
            for (&cb, &cv) in &lift[&r] {
                let e = acc.entry(cb).or_insert(0);
                *e = e.checked_add(cmul(v, cv).checked_neg().unwrap()).expect("overflow");
                if *e == 0 {
                    acc.remove(&cb);
                }
            }
        }
        for v in acc.values_mut() {
            *v = cmul(*v, pivot);
        }
        acc.retain(|_, v| *v != 0);
        on_stack.remove(&a);
        lift.insert(a, acc);
        Ok(())
    }
    for &a in &source_rows {
        let mut on_stack = BTreeSet::new();
        solve(a, m, &col_of, &mut lift, &mut on_stack)?;
    }

    let res_rows: Vec<usize> = (0..m.rows()).filter(|r| !source_rows.contains(r)).collect();
    let used_cols: BTreeSet<usize> = col_of.values().copied().collect();
    let res_cols: Vec<usize> = (0..m.cols()).filter(|c| !used_cols.contains(c)).collect();

    let mut out = m.submatrix(&res_rows, &res_cols);
    for (ci, &c) in res_cols.iter().enumerate() {
        // correction: − Σ_{a source, M[a,c] ≠ 0} M[a,c] · (M[r,·] · y(a))
        for (a, vac) in m.col_entries(c) {
            if !source_rows.contains(&a) {
                continue;
            }
            for (ri, &r) in res_rows.iter().enumerate() {
                let mut dot: Coeff = 0;
                for (&b, &yb) in &lift[&a] {
                    dot = dot.checked_add(cmul(m.get(r, b), yb)).expect("overflow");
                }
                if dot != 0 {
                    let cur = out.get(ri, ci);
                    out.set(ri, ci, cur.checked_sub(cmul(vac, dot)).expect("overflow"));
                }
            }
        }
    }
    Ok((out, TransformRecord { field: field.clone(), lift }))
}

/// Invariant factors d₁ | d₂ | ⋯ of an integer matrix (zeros dropped).
///
/// Exact integer elimination can blow entries up exponentially, so the
/// computation is staged: unit pivots are eliminated by Schur steps (entries
/// stay minors of the input), the rank r and a nonzero r×r minor R of the
/// unit-free residual come from fraction-free Bareiss elimination, and the
/// classical diagonalization then runs modulo R. Working mod R is exact for
/// the invariant factors: it amounts to row operations against the virtual
/// block matrix [T; R·I], whose first r factors are those of T whenever R is
/// a multiple of the r-th determinantal divisor — and any nonzero r-minor
/// is. The divisibility chain is restored at the end from the per-column
/// gcds with R.
#[allow(clippy::needless_range_loop)] // index loops mirror the matrix algebra
pub fn smith_normal_form(m: &IntMatrix) -> Vec<u64> {
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};

    fn big_gcd(a: BigInt, b: BigInt) -> BigInt {
        let (mut a, mut b) = (a.abs(), b.abs());
        while !b.is_zero() {
            let r = &a % &b;
            a = b;
            b = r;
        }
        a
    }

    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); cols]; rows];
    for (r, c, v) in m.iter() {
        a[r][c] = BigInt::from(v);
    }

    // Phase 1: eliminate unit pivots. Schur updates keep every entry a minor
    // of the original matrix, so the magnitudes stay tame.
    let mut t = 0usize;
    loop {
        let mut unit: Option<(usize, usize)> = None;
        'find: for i in t..rows {
            for j in t..cols {
                if a[i][j].abs() == BigInt::from(1) {
                    unit = Some((i, j));
                    break 'find;
                }
            }
        }
        let Some((pi, pj)) = unit else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let d = a[t][t].clone();
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = &a[i][t] * &d; // d = ±1, so q·d = a[i][t]
            for j in t..cols {
                let delta = &q * &a[t][j];
                a[i][j] -= delta;
            }
        }
        for j in t + 1..cols {
            a[t][j] = BigInt::zero();
        }
        t += 1;
    }
    let units = t;

    // The unit-free residual.
    let sub_rows = rows - units;
    let sub_cols = cols - units;
    let mut b: Vec<Vec<BigInt>> = (units..rows)
        .map(|i| a[i][units..cols].to_vec())
        .collect();
    let mut factors: Vec<u64> = vec![1; units];
    if sub_rows == 0 || sub_cols == 0 {
        return factors;
    }

    // Rank and a nonzero maximal minor by fraction-free Bareiss elimination.
    let (r, minor) = {
        let mut w = b.clone();
        let mut prev = BigInt::from(1);
        let mut rank = 0usize;
        let mut last_pivot = BigInt::from(1);
        for k in 0..sub_rows.min(sub_cols) {
            let mut pivot: Option<(usize, usize)> = None;
            'p: for i in k..sub_rows {
                for j in k..sub_cols {
                    if !w[i][j].is_zero() {
                        pivot = Some((i, j));
                        break 'p;
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            w.swap(k, pi);
            for row in w.iter_mut() {
                row.swap(k, pj);
            }
            let piv = w[k][k].clone();
            for i in k + 1..sub_rows {
                for j in k + 1..sub_cols {
                    let num = &w[i][j] * &piv - &w[i][k] * &w[k][j];
                    w[i][j] = num / &prev; // exact by the Bareiss identity
                }
                w[i][k] = BigInt::zero();
            }
            prev = piv.clone();
            last_pivot = piv;
            rank = k + 1;
        }
        (rank, last_pivot.abs())
    };
    if r == 0 {
        return factors;
    }
    if minor == BigInt::from(1) {
        factors.extend(std::iter::repeat_n(1, r));
        return factors;
    }

    // Phase 2: classical diagonalization modulo R = |minor|.
    let modulus = minor;
    let reduce = |x: &mut BigInt, modulus: &BigInt| {
        let mut v = x.clone() % modulus;
        if v.abs() * 2 > *modulus {
            if v.is_negative() {
                v += modulus;
            } else {
                v -= modulus;
            }
        }
        *x = v;
    };
    for row in b.iter_mut() {
        for e in row.iter_mut() {
            reduce(e, &modulus);
        }
    }
    let div_round = |x: &BigInt, y: &BigInt| -> BigInt {
        let q = x / y;
        let rem = x - &q * y;
        if rem.abs() * 2 > y.abs() {
            if (rem < BigInt::zero()) == (y < &BigInt::zero()) {
                q + 1
            } else {
                q - 1
            }
        } else {
            q
        }
    };
    let mut k = 0usize;
    while k < sub_rows.min(sub_cols) {
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..sub_rows {
            for j in k..sub_cols {
                if !b[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj): (usize, usize)| {
                        b[i][j].abs() < b[pi][pj].abs()
                    })
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        b.swap(k, pi);
        for row in b.iter_mut() {
            row.swap(k, pj);
        }
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in k + 1..sub_rows {
                if !b[i][k].is_zero() {
                    let q = div_round(&b[i][k], &b[k][k]);
                    if !q.is_zero() {
                        for j in k..sub_cols {
                            let delta = &q * &b[k][j];
                            b[i][j] -= delta;
                            reduce(&mut b[i][j], &modulus);
                        }
                    }
                    if !b[i][k].is_zero() {
                        b.swap(k, i);
                        dirty = true;
                    }
                }
            }
            for j in k + 1..sub_cols {
                if !b[k][j].is_zero() {
                    let q = div_round(&b[k][j], &b[k][k]);
                    if !q.is_zero() {
                        for row in b.iter_mut().take(sub_rows).skip(k) {
                            let delta = &q * &row[k];
                            row[j] -= delta;
                            reduce(&mut row[j], &modulus);
                        }
                    }
                    if !b[k][j].is_zero() {
                        for row in b.iter_mut() {
                            row.swap(k, j);
                        }
                        dirty = true;
                    }
                }
            }
        }
        k += 1;
    }

    // Reassemble the augmented diagonal {gcd(b_jj, R)} ∪ {R}^(cols−k) and
    // normalize it into a divisibility chain; the first r entries are the
    // residual's invariant factors.
    let mut diag: Vec<BigInt> = (0..k).map(|i| big_gcd(b[i][i].clone(), modulus.clone())).collect();
    diag.extend(std::iter::repeat_n(modulus.clone(), sub_cols - k));
    let mut stable = false;
    while !stable {
        stable = true;
        for i in 0..diag.len() {
            for j in i + 1..diag.len() {
                if (&diag[j] % &diag[i]).is_zero() {
                    continue;
                }
                let g = big_gcd(diag[i].clone(), diag[j].clone());
                let l = &diag[i] / &g * &diag[j];
                diag[i] = g;
                diag[j] = l;
                stable = false;
            }
        }
        diag.sort();
    }
    for d in diag.into_iter().take(r) {
        factors.push(u64::try_from(d).expect("invariant factor fits in u64"));
    }
    factors.sort_unstable();
    factors
}

/// Rank over ℤ (number of invariant factors).
pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).len()
}

/// H_p ≅ ℤ^betti ⊕ ⊕_i ℤ/torsion_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl Homology {
    pub fn free(betti: usize) -> Homology {
        Homology { betti, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for Homology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn boundary_matrices(cx: &FiniteComplex) -> (BTreeMap<i32, Vec<Cell>>, BTreeMap<i32, IntMatrix>) {
    let mut cells: BTreeMap<i32, Vec<Cell>> = BTreeMap::new();
    for d in cx.degrees() {
        let v = cx.cells_of_degree(d).to_vec();
        if !v.is_empty() {
            cells.insert(d, v);
        }
    }
    let mut mats = BTreeMap::new();
    for (&p, pcells) in &cells {
        let Some(below) = cells.get(&(p - 1)) else { continue };
        let pos: HashMap<&Cell, usize> = below.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut m = IntMatrix::zero(below.len(), pcells.len());
        for (j, cell) in pcells.iter().enumerate() {
            for (key, coeff) in cx.diff(cell).iter() {
                let face = Cell { degree: p - 1, key: key.clone() };
                if let Some(&i) = pos.get(&face) {
                    m.set(i, j, coeff);
                }
            }
        }
        mats.insert(p, m);
    }
    (cells, mats)
}

fn homology_from_residuals(
    counts: &BTreeMap<i32, usize>,
    mats: &BTreeMap<i32, IntMatrix>,
) -> BTreeMap<i32, Homology> {
    let mut out = BTreeMap::new();
    for (&p, &n) in counts {
        let snf_above = mats.get(&(p + 1)).map(smith_normal_form).unwrap_or_default();
        let rank_above = snf_above.len();
        let rank_here = mats.get(&p).map(rank).unwrap_or(0);
        let betti = n - rank_here - rank_above;
        let torsion: Vec<u64> = snf_above.into_iter().filter(|&d| d > 1).collect();
        out.insert(p, Homology { betti, torsion });
    }
    out
}

/// Homology over ℤ straight from Smith normal forms of the boundary
/// matrices, with no vector fields involved. Serves as the independent
/// oracle for the reduction pipeline.
pub fn homology_by_snf(cx: &FiniteComplex) -> Result<BTreeMap<i32, Homology>> {
    let all = cx.all_cells();
    let report = verify_d_squared(cx, all.iter());
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidComplex(format!("d^2 != 0 at {}", v.cell)));
    }
    let (cells, mats) = boundary_matrices(cx);
    let counts = cells.iter().map(|(&d, v)| (d, v.len())).collect();
    Ok(homology_from_residuals(&counts, &mats))
}

/// Homology over ℤ by iterated vector-field reduction: run the incremental
/// heuristic on each boundary matrix, reduce, repeat until no unit pivots
/// remain, then take Smith normal forms of the residues.
pub fn homology_of_finite_complex(cx: &FiniteComplex) -> Result<BTreeMap<i32, Homology>> {
    let all = cx.all_cells();
    let report = verify_d_squared(cx, all.iter());
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidComplex(format!("d^2 != 0 at {}", v.cell)));
    }
    let (cells, mut mats) = boundary_matrices(cx);
    let mut counts: BTreeMap<i32, usize> = cells.iter().map(|(&d, v)| (d, v.len())).collect();

    loop {
        let mut progress = false;
        let degrees: Vec<i32> = mats.keys().copied().collect();
        for p in degrees {
            let m = &mats[&p];
            let (field, _) = vf_incremental(m);
            if field.is_empty() {
                continue;
            }
            progress = true;
            let (reduced, record) = reduce_matrix(m, &field)?;
            let removed_rows: BTreeSet<usize> =
                record.field.vectors.iter().map(|&(r, _)| r).collect();
            let removed_cols: BTreeSet<usize> =
                record.field.vectors.iter().map(|&(_, c)| c).collect();

            // Degree p-1 loses the source cells: drop those columns below.
            if let Some(below) = mats.get(&(p - 1)) {
                let keep_rows: Vec<usize> = (0..below.rows()).collect();
                let keep_cols: Vec<usize> =
                    (0..below.cols()).filter(|c| !removed_rows.contains(c)).collect();
                mats.insert(p - 1, below.submatrix(&keep_rows, &keep_cols));
            }
            // Degree p loses the target cells: drop those rows above.
            if let Some(above) = mats.get(&(p + 1)) {
                let keep_rows: Vec<usize> =
                    (0..above.rows()).filter(|r| !removed_cols.contains(r)).collect();
                let keep_cols: Vec<usize> = (0..above.cols()).collect();
                mats.insert(p + 1, above.submatrix(&keep_rows, &keep_cols));
            }
            *counts.get_mut(&(p - 1)).unwrap() -= removed_rows.len();
            *counts.get_mut(&p).unwrap() -= removed_cols.len();
            mats.insert(p, reduced);
        }
        if !progress {
            break;
        }
    }
    Ok(homology_from_residuals(&counts, &mats))
}

/// Greedy cell-level vector field on a finite complex, built degree by
/// degree with the matrix incremental heuristic; cells already paired at one
/// degree are withheld from the next.
pub fn complex_vf_incremental(cx: &FiniteComplex) -> (DiscreteVectorField, Admissibility) {
    let (cells, mats) = boundary_matrices(cx);
    let mut used: HashSet<Cell> = HashSet::new();
    let mut field = DiscreteVectorField::new();
    for (&p, m) in &mats {
        let below = &cells[&(p - 1)];
        let here = &cells[&p];
        let avail_rows: Vec<usize> =
            (0..below.len()).filter(|&i| !used.contains(&below[i])).collect();
        let avail_cols: Vec<usize> =
            (0..here.len()).filter(|&j| !used.contains(&here[j])).collect();
        let sub = m.submatrix(&avail_rows, &avail_cols);
        let (vf, _) = vf_incremental(&sub);
        for (ri, ci) in vf.vectors {
            let sigma = below[avail_rows[ri]].clone();
            let tau = here[avail_cols[ci]].clone();
            used.insert(sigma.clone());
            used.insert(tau.clone());
            field
                .add_vector(cx, sigma, tau)
                .expect("heuristic vectors satisfy the field conditions");
        }
    }
    let sources: Vec<Cell> = field.source_cells().cloned().collect();
    let cert = match check_admissible_sources(cx, &field, &sources) {
        AdmissibleOutcome::Certified(c) => c,
        AdmissibleOutcome::Loop(w) => {
            unreachable!("incremental heuristic produced a loop: {:?}", w.cycle)
        }
    };
    (field, cert)
}

/// SNF-equality up to padding with units: used to state that a matrix
/// reduction preserved the homological content.
pub fn snf_equal_padded(a: &IntMatrix, b: &IntMatrix, pad_units: usize) -> bool {
    let mut fa = smith_normal_form(a);
    let fb = smith_normal_form(b);
    let mut padded: Vec<u64> = std::iter::repeat_n(1, pad_units).chain(fb).collect();
    padded.sort_unstable();
    fa.sort_unstable();
    fa == padded
}

pub type CellBases = BTreeMap<i32, Vec<Cell>>;

/// Expose the boundary matrices of a finite complex (used by the CLI and by
/// oracle tests).
pub fn complex_matrices(cx: &FiniteComplex) -> (CellBases, BTreeMap<i32, IntMatrix>) {
    boundary_matrices(cx)
}

/// Convenience: Arc-wrapped complexes.
pub fn homology_of(cx: &Arc<FiniteComplex>) -> Result<BTreeMap<i32, Homology>> {
    homology_of_finite_complex(cx)
}
