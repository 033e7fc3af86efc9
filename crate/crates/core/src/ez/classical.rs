//! The classical closed formulas for the Eilenberg-Zilber reduction:
//! Alexander-Whitney, Eilenberg-MacLane (shuffle), and the Shih homotopy.

use super::field::{tensor_key, tensor_parts};
use crate::chain::Chain;
use crate::key::Cell;
use crate::simplicial::product::{canonical_pair, pair_from_key};
use crate::simplicial::{canonical_face, Simplex, SSet};

fn last_face(set: &SSet, s: &Simplex) -> Simplex {
    canonical_face(set.as_ref(), s.dim() as u32, s)
}

fn front_face(set: &SSet, s: &Simplex) -> Simplex {
    canonical_face(set.as_ref(), 0, s)
}

/// AW(x × y) = Σ_k x|[0..k] ⊗ y|[k..p]: the alternating front-back
/// splitting, degenerate factors dropped.
pub fn aw(x_set: &SSet, y_set: &SSet, x: &Simplex, y: &Simplex) -> Chain {
    assert_eq!(x.dim(), y.dim(), "AW applies to a product simplex");
    let p = x.dim();
    let mut out = Chain::zero(p);
    // fronts[i] = i last-faces of x (dimension p-i); backs[j] = j 0-faces of y
    let mut fronts = vec![x.clone()];
    let mut backs = vec![y.clone()];
    for _ in 0..p {
        fronts.push(last_face(x_set, fronts.last().unwrap()));
        backs.push(front_face(y_set, backs.last().unwrap()));
    }
    for i in 0..=p as usize {
        let front = &fronts[i];
        let back = &backs[p as usize - i];
        if !front.is_degenerate() && !back.is_degenerate() {
            out.add_term(&tensor_key(front.base_dim, &front.base, &back.base), 1);
        }
    }
    out
}

/// All (p,q)-shuffles: partitions of {0..p+q-1} into an increasing sequence
/// of length p and its complement, with the parity of the concatenated
/// permutation.
pub fn shuffles(p: usize, q: usize) -> Vec<(Vec<u32>, Vec<u32>, i64)> {
    let n = p + q;
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(0, n, p, &mut cur, &mut out);
    return out;

    fn rec(
        start: usize,
        n: usize,
        p: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<(Vec<u32>, Vec<u32>, i64)>,
    ) {
        if cur.len() == p {
            let a = cur.clone();
            let b: Vec<u32> = (0..n as u32).filter(|v| !a.contains(v)).collect();
            let mut seq: Vec<u32> = a.clone();
            seq.extend(&b);
            let mut inversions = 0usize;
            for i in 0..seq.len() {
                for j in i + 1..seq.len() {
                    if seq[i] > seq[j] {
                        inversions += 1;
                    }
                }
            }
            let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
            out.push((a, b, sign));
            return;
        }
        for v in start..n {
            cur.push(v as u32);
            rec(v + 1, n, p, cur, out);
            cur.pop();
        }
    }
}

fn apply_degeneracies_ascending(s: &Simplex, word: &[u32], shift: u32) -> Simplex {
    let mut out = s.clone();
    let mut sorted: Vec<u32> = word.to_vec();
    sorted.sort_unstable();
    for j in sorted {
        out = out.degenerate(j + shift);
    }
    out
}

/// EML(x_p ⊗ y_q) = Σ_{(η₁,η₂) ∈ Sh(p,q)} (−1)^{ε} (η_{η₂} x, η_{η₁} y):
/// every term is a non-degenerate product simplex.
pub fn eml(x: &Simplex, y: &Simplex) -> Chain {
    let (p, q) = (x.dim() as usize, y.dim() as usize);
    let mut out = Chain::zero((p + q) as i32);
    for (eta1, eta2, sign) in shuffles(p, q) {
        let sx = apply_degeneracies_ascending(x, &eta2, 0);
        let sy = apply_degeneracies_ascending(y, &eta1, 0);
        let pair = canonical_pair(&sx, &sy);
        debug_assert!(!pair.is_degenerate(), "shuffle terms are non-degenerate");
        out.add_term(&pair.base, sign);
    }
    out
}

/// EML evaluated on a tensor cell of C(X) ⊗ C(Y).
pub fn eml_cell(cell: &Cell) -> Chain {
    let (a, b) = tensor_parts(cell);
    eml(&Simplex::nondeg(a.key, a.degree), &Simplex::nondeg(b.key, b.degree))
}

/// SHI(x_p × y_p): the Shih homotopy of a product p-simplex, a chain of
/// product (p+1)-simplices; degenerate pairs are dropped.
pub fn shi(x_set: &SSet, y_set: &SSet, x: &Simplex, y: &Simplex) -> Chain {
    assert_eq!(x.dim(), y.dim(), "SHI applies to a product simplex");
    let p = x.dim();
    let mut out = Chain::zero(p + 1);
    if p == 0 {
        return out;
    }
    for r in 0..=(p - 1) {
        for s in 0..=(p - r - 1) {
            let shift = (p - r - s) as u32;
            // x part: ∂_{p-r+1} ⋯ ∂_p x, then η_{p-r-s-1}, then shifted η₂
            let mut xf = x.clone();
            for _ in 0..r {
                xf = last_face(x_set, &xf);
            }
            let xd = xf.degenerate((p - r - s - 1) as u32);
            // y part: ∂_{p-r-s} ⋯ ∂_{p-r-1} y, then shifted η₁
            let mut yf = y.clone();
            for k in ((p - r - s)..=(p - r - 1)).rev() {
                yf = canonical_face(y_set.as_ref(), k as u32, &yf);
            }
            for (eta1, eta2, sh_sign) in shuffles(s as usize + 1, r as usize) {
                let sx = apply_degeneracies_ascending(&xd, &eta2, shift);
                let sy = apply_degeneracies_ascending(&yf, &eta1, shift);
                let pair = canonical_pair(&sx, &sy);
                if pair.is_degenerate() {
                    continue;
                }
                let sign = if (p - r - s) % 2 == 0 { sh_sign } else { -sh_sign };
                out.add_term(&pair.base, sign);
            }
        }
    }
    out
}

/// AW on a product cell of C^ND(X × Y).
pub fn aw_cell(x_set: &SSet, y_set: &SSet, cell: &Cell) -> Chain {
    let (sx, sy) = pair_from_key(&cell.key).expect("product cell");
    aw(x_set, y_set, &sx, &sy)
}

/// SHI on a product cell of C^ND(X × Y).
pub fn shi_cell(x_set: &SSet, y_set: &SSet, cell: &Cell) -> Chain {
    let (sx, sy) = pair_from_key(&cell.key).expect("product cell");
    if cell.degree == 0 {
        return Chain::zero(1);
    }
    shi(x_set, y_set, &sx, &sy)
}
