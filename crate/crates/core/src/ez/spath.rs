//! S-paths: strictly increasing lattice paths in [0..p] × [0..q] encoding
//! the non-degenerate simplices of a prism Δᵖ × Δ^q, their face
//! combinatorics, backward-scan classification, and filling sequences.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// A strictly increasing path in the (p,q) lattice; the ambient bidimension
/// is the last point.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SPath {
    pub points: Vec<(u32, u32)>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Step {
    Vertical,
    Horizontal,
    Diagonal,
}

impl SPath {
    pub fn new(points: Vec<(u32, u32)>) -> SPath {
        debug_assert!(points
            .windows(2)
            .all(|w| w[1].0 >= w[0].0 && w[1].1 >= w[0].1 && w[1] != w[0]));
        SPath { points }
    }

    /// Simplex dimension: one less than the number of points.
    pub fn dim(&self) -> usize {
        self.points.len() - 1
    }

    /// The ambient bidimension (p, q), read off the last point.
    pub fn bidim(&self) -> (u32, u32) {
        *self.points.last().expect("nonempty path")
    }

    pub fn step(&self, i: usize) -> Step {
        let (a0, b0) = self.points[i - 1];
        let (a1, b1) = self.points[i];
        match (a1 - a0, b1 - b0) {
            (0, 1) => Step::Vertical,
            (1, 0) => Step::Horizontal,
            (1, 1) => Step::Diagonal,
            _ => panic!("not an elementary step"),
        }
    }

    /// Interior test: both projections run all the vertices, i.e. the path
    /// starts at (0,0), ends at (p,q), and moves by unit steps.
    pub fn is_interior(&self) -> bool {
        if self.points.first() != Some(&(0, 0)) {
            return false;
        }
        self.points.windows(2).all(|w| {
            let (da, db) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            da <= 1 && db <= 1 && (da, db) != (0, 0)
        })
    }

    /// Remove the k-th point.
    pub fn face(&self, k: usize) -> SPath {
        let mut points = self.points.clone();
        points.remove(k);
        SPath { points }
    }

    /// Parse "(0,0)(1,0)(1,1)".
    pub fn parse(s: &str) -> Option<SPath> {
        let mut points = Vec::new();
        for part in s.split(')').filter(|p| !p.trim().is_empty()) {
            let part = part.trim().trim_start_matches('(');
            let mut nums = part.split(',');
            let a: u32 = nums.next()?.trim().parse().ok()?;
            let b: u32 = nums.next()?.trim().parse().ok()?;
            points.push((a, b));
        }
        if points.is_empty() {
            return None;
        }
        Some(SPath { points })
    }
}

impl fmt::Debug for SPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in &self.points {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

impl fmt::Display for SPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The last simplex λ_{p,q}: run the bottom edge, then the right edge.
pub fn last_simplex(p: u32, q: u32) -> SPath {
    let mut points = Vec::with_capacity((p + q + 1) as usize);
    for a in 0..=p {
        points.push((a, 0));
    }
    for b in 1..=q {
        points.push((p, b));
    }
    SPath { points }
}

/// A degeneracy configuration: the pair of disjoint decreasing index lists
/// read off an interior s-path (vertical step started at time t ↦ first
/// list, horizontal ↦ second list, diagonal ↦ gap).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyConfiguration {
    pub first: Vec<u32>,
    pub second: Vec<u32>,
}

/// Read the configuration of an interior s-path.
pub fn config_from_spath(path: &SPath) -> DegeneracyConfiguration {
    assert!(path.is_interior(), "configurations are defined for interior s-paths");
    let mut first = Vec::new();
    let mut second = Vec::new();
    for i in 1..path.points.len() {
        match path.step(i) {
            Step::Vertical => first.push((i - 1) as u32),
            Step::Horizontal => second.push((i - 1) as u32),
            Step::Diagonal => {}
        }
    }
    first.reverse();
    second.reverse();
    DegeneracyConfiguration { first, second }
}

/// Rebuild the interior s-path of a configuration in the (p,q) lattice.
pub fn spath_from_config(cfg: &DegeneracyConfiguration, p: u32, q: u32) -> SPath {
    let dim = p as usize + cfg.first.len();
    assert_eq!(dim, q as usize + cfg.second.len(), "incoherent configuration");
    let mut points = vec![(0u32, 0u32)];
    let (mut a, mut b) = (0u32, 0u32);
    for t in 0..dim as u32 {
        if cfg.first.contains(&t) {
            b += 1;
        } else if cfg.second.contains(&t) {
            a += 1;
        } else {
            a += 1;
            b += 1;
        }
        points.push((a, b));
    }
    assert_eq!((a, b), (p, q), "configuration does not reach (p,q)");
    SPath { points }
}

/// Interior faces of an interior s-path: ∂₀ and ∂_d are always exterior,
/// and ∂_k is interior exactly at the right-angle bends.
pub fn interior_faces(path: &SPath) -> Vec<(usize, SPath)> {
    let d = path.dim();
    let mut out = Vec::new();
    for k in 1..d {
        let bend = matches!(
            (path.step(k), path.step(k + 1)),
            (Step::Vertical, Step::Horizontal) | (Step::Horizontal, Step::Vertical)
        );
        if bend {
            out.push((k, path.face(k)));
        }
    }
    out
}

/// Classification of an interior s-path by the backward scan from (p,q):
/// the first event is either a diagonal step (the path is a source, the
/// partner straightens ... inserts the corner) or a +90° bend, vertical then
/// horizontal (the path is a target, the partner removes the corner); the
/// unique path with no event is the last simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EzClass {
    /// Source: partner is the target obtained by inserting the up-then-right
    /// corner in place of the diagonal step; `face_index` is the index of
    /// the inserted point, so that ∂_{face_index}(partner) = path.
    Source { partner: SPath, face_index: usize },
    /// Target: partner is the source obtained by flattening the corner at
    /// `face_index` to a diagonal step.
    Target { partner: SPath, face_index: usize },
    LastSimplex,
}

pub fn ez_classify(path: &SPath) -> EzClass {
    assert!(path.is_interior());
    let d = path.dim();
    for i in (1..=d).rev() {
        if path.step(i) == Step::Diagonal {
            let (a, b) = path.points[i - 1];
            let mut points = path.points.clone();
            points.insert(i, (a, b + 1));
            return EzClass::Source { partner: SPath { points }, face_index: i };
        }
        if i >= 2
            && path.step(i - 1) == Step::Vertical
            && path.step(i) == Step::Horizontal
        {
            return EzClass::Target { partner: path.face(i - 1), face_index: i - 1 };
        }
    }
    EzClass::LastSimplex
}

/// Lyapunov value of a source path: the number of lattice points strictly
/// above the path.
pub fn prism_lyapunov(path: &SPath) -> u64 {
    let (p, q) = path.bidim();
    let mut total = 0u64;
    for x in 0..=p {
        let max_b = path
            .points
            .iter()
            .filter(|&&(a, _)| a == x)
            .map(|&(_, b)| b)
            .max()
            .expect("interior path touches every abscissa");
        total += (q - max_b) as u64;
    }
    total
}

/// The filling sequence of the hollowed prism: all interior s-paths except
/// the last simplex, ordered so that consecutive pairs (odd, even) are
/// (face, coface) and every face of every listed path is exterior or occurs
/// earlier. Built by the completion recursion
///
///   F(p,q) = diag(F(p-1,q-1)) ‖ vert(F(p,q-1)) ‖ (λ̄_{p-1,q-1}, λ̄_{p,q-1}) ‖ horiz(F(p-1,q)).
pub fn filling_sequence(p: u32, q: u32) -> Vec<SPath> {
    let mut memo: HashMap<(u32, u32), Arc<Vec<SPath>>> = HashMap::new();
    return build(p, q, &mut memo).as_ref().clone();

    fn shift(path: &SPath, da: u32, db: u32) -> SPath {
        let mut points = vec![(0u32, 0u32)];
        points.extend(path.points.iter().map(|&(a, b)| (a + da, b + db)));
        SPath { points }
    }

    fn build(p: u32, q: u32, memo: &mut HashMap<(u32, u32), Arc<Vec<SPath>>>) -> Arc<Vec<SPath>> {
        if let Some(hit) = memo.get(&(p, q)) {
            return hit.clone();
        }
        let result = if p == 0 || q == 0 {
            Arc::new(Vec::new())
        } else {
            let f1 = build(p - 1, q - 1, memo);
            let f2 = build(p, q - 1, memo);
            let f3 = build(p - 1, q, memo);
            let mut out = Vec::with_capacity(f1.len() + f2.len() + f3.len() + 2);
            out.extend(f1.iter().map(|pi| shift(pi, 1, 1)));
            out.extend(f2.iter().map(|pi| shift(pi, 0, 1)));
            out.push(shift(&last_simplex(p - 1, q - 1), 1, 1));
            out.push(shift(&last_simplex(p, q - 1), 0, 1));
            out.extend(f3.iter().map(|pi| shift(pi, 1, 0)));
            Arc::new(out)
        };
        memo.insert((p, q), result.clone());
        result
    }
}

/// Check that a path list is a filling sequence witnessing the
/// W-contraction of the hollowed prism: the list must consist of face/cofce
/// pairs — at every even position (1-based) the previous path is a face of
/// the current one with a unique interior face index — and every interior
/// face of every listed path must occur earlier in the list.
pub fn is_valid_filling_sequence(p: u32, q: u32, seq: &[SPath]) -> std::result::Result<(), String> {
    if !seq.len().is_multiple_of(2) {
        return Err(format!("odd length {}", seq.len()));
    }
    let mut position: HashMap<&SPath, usize> = HashMap::new();
    for (i, path) in seq.iter().enumerate() {
        if !path.is_interior() || path.bidim() != (p, q) {
            return Err(format!("entry {i} is not an interior ({p},{q}) path: {path}"));
        }
        if position.insert(path, i).is_some() {
            return Err(format!("entry {i} repeats {path}"));
        }
    }
    let last = last_simplex(p, q);
    if position.contains_key(&last) {
        return Err("the last simplex must not be listed".into());
    }
    for (i, path) in seq.iter().enumerate() {
        let interior = interior_faces(path);
        for (k, face) in &interior {
            match position.get(face) {
                Some(&j) if j < i => {}
                Some(_) => {
                    return Err(format!(
                        "entry {i} has interior face d_{k} appearing later"
                    ))
                }
                None if *face == last => {
                    return Err(format!("entry {i} has the last simplex as a face"))
                }
                None => {
                    return Err(format!(
                        "entry {i} has interior face d_{k} = {face} missing from the list"
                    ))
                }
            }
        }
        if i % 2 == 1 {
            // pairs: seq[i-1] must be a face of seq[i] with a unique index
            let hits: Vec<usize> = interior
                .iter()
                .filter(|(_, f)| f == &seq[i - 1])
                .map(|(k, _)| *k)
                .collect();
            if hits.len() != 1 {
                return Err(format!(
                    "entries {} and {i} are not an elementary filling pair ({} interior hits)",
                    i - 1,
                    hits.len()
                ));
            }
        }
    }
    Ok(())
}

/// Number of interior s-paths of the (p,q) lattice (the filling sequence
/// has one fewer). Computed by the three-step lattice-path recurrence.
#[allow(clippy::needless_range_loop)]
pub fn interior_path_count(p: u32, q: u32) -> u128 {
    let mut table = vec![vec![0u128; q as usize + 1]; p as usize + 1];
    for (a, row) in table.iter_mut().enumerate() {
        for b in 0..row.len() {
            row[b] = if a == 0 || b == 0 { 1 } else { 0 };
        }
    }
    for a in 1..=p as usize {
        for b in 1..=q as usize {
            table[a][b] = table[a - 1][b] + table[a][b - 1] + table[a - 1][b - 1];
        }
    }
    table[p as usize][q as usize]
}

/// All interior s-paths of the (p,q) lattice.
pub fn all_interior_paths(p: u32, q: u32) -> Vec<SPath> {
    let mut out = Vec::new();
    let mut cur = vec![(0u32, 0u32)];
    rec(p, q, &mut cur, &mut out);
    return out;

    fn rec(p: u32, q: u32, cur: &mut Vec<(u32, u32)>, out: &mut Vec<SPath>) {
        let &(a, b) = cur.last().unwrap();
        if (a, b) == (p, q) {
            out.push(SPath { points: cur.clone() });
            return;
        }
        for (da, db) in [(0, 1), (1, 0), (1, 1)] {
            let (na, nb) = (a + da, b + db);
            if na <= p && nb <= q {
                cur.push((na, nb));
                rec(p, q, cur, out);
                cur.pop();
            }
        }
    }
}
