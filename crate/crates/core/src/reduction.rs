//! Homology reductions (f, g, h) between a big and a small complex, their
//! identity verifier, composition, homological-problem solving, and the
//! homological perturbation theorem.

use crate::chain::Chain;
use crate::complex::{diff_chain, Cx, Error, PerturbedComplex, Result};
use crate::key::Cell;
use crate::morphism::Morphism;
use std::fmt;
use std::sync::Arc;

/// A reduction big ⇒ small: f and g are chain morphisms of shift 0 and h is a
/// degree +1 homotopy on the big complex, subject to
///
///   f∘g = id,   g∘f + d∘h + h∘d = id,   f∘h = 0,   h∘g = 0,   h∘h = 0.
#[derive(Clone)]
pub struct Reduction {
    pub big: Cx,
    pub small: Cx,
    pub f: Morphism,
    pub g: Morphism,
    pub h: Morphism,
}

impl Reduction {
    /// The identity reduction of a complex: f = g = id, h = 0.
    pub fn identity(cx: &Cx) -> Reduction {
        Reduction {
            big: cx.clone(),
            small: cx.clone(),
            f: Morphism::identity(),
            g: Morphism::identity(),
            h: Morphism::zero(1),
        }
    }
}

#[derive(Clone)]
pub struct IdentityViolation {
    pub identity: &'static str,
    pub cell: Cell,
    pub got: Chain,
    pub expected: Chain,
}

impl fmt::Debug for IdentityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at {}: got {}, expected {}",
            self.identity, self.cell, self.got, self.expected
        )
    }
}

#[derive(Debug, Default)]
pub struct ReductionReport {
    pub checked_big: usize,
    pub checked_small: usize,
    pub violations: Vec<IdentityViolation>,
}

impl ReductionReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluate the five reduction identities on samples of big and small cells.
/// fg = id and hg = 0 are tested on the small sample, the rest on the big one.
pub fn verify_reduction<'a>(
    rho: &Reduction,
    big_cells: impl IntoIterator<Item = &'a Cell>,
    small_cells: impl IntoIterator<Item = &'a Cell>,
) -> ReductionReport {
    let mut report = ReductionReport::default();
    let d_big = Morphism::diff_of(&rho.big);
    let d_small = Morphism::diff_of(&rho.small);

    for cell in small_cells {
        report.checked_small += 1;
        let id = Chain::generator(cell);
        let fg = rho.f.apply_chain(&rho.g.apply(cell));
        if fg != id {
            report.violations.push(IdentityViolation {
                identity: "f∘g = id",
                cell: cell.clone(),
                got: fg,
                expected: id.clone(),
            });
        }
        let hg = rho.h.apply_chain(&rho.g.apply(cell));
        if !hg.is_zero() {
            report.violations.push(IdentityViolation {
                identity: "h∘g = 0",
                cell: cell.clone(),
                got: hg,
                expected: Chain::zero(cell.degree + 1),
            });
        }
        // f and g must be chain maps: d_small∘f = f∘d_big is covered on the
        // big sample; here check d_big∘g = g∘d_small.
        let dg = diff_chain(rho.big.as_ref(), &rho.g.apply(cell));
        let gd = rho.g.apply_chain(&d_small.apply(cell));
        if dg != gd {
            report.violations.push(IdentityViolation {
                identity: "d∘g = g∘d",
                cell: cell.clone(),
                got: dg,
                expected: gd,
            });
        }
    }

    for cell in big_cells {
        report.checked_big += 1;
        let id = Chain::generator(cell);
        let gf = rho.g.apply_chain(&rho.f.apply(cell));
        let dh = diff_chain(rho.big.as_ref(), &rho.h.apply(cell));
        let hd = rho.h.apply_chain(&d_big.apply(cell));
        let total = gf.add(&dh).add(&hd);
        if total != id {
            report.violations.push(IdentityViolation {
                identity: "g∘f + d∘h + h∘d = id",
                cell: cell.clone(),
                got: total,
                expected: id,
            });
        }
        let fh = rho.f.apply_chain(&rho.h.apply(cell));
        if !fh.is_zero() {
            report.violations.push(IdentityViolation {
                identity: "f∘h = 0",
                cell: cell.clone(),
                got: fh,
                expected: Chain::zero(cell.degree + 1),
            });
        }
        let hh = rho.h.apply_chain(&rho.h.apply(cell));
        if !hh.is_zero() {
            report.violations.push(IdentityViolation {
                identity: "h∘h = 0",
                cell: cell.clone(),
                got: hh,
                expected: Chain::zero(cell.degree + 2),
            });
        }
        let fd = rho.f.apply_chain(&d_big.apply(cell));
        let df = diff_chain(rho.small.as_ref(), &rho.f.apply(cell));
        if fd != df {
            report.violations.push(IdentityViolation {
                identity: "d∘f = f∘d",
                cell: cell.clone(),
                got: df,
                expected: fd,
            });
        }
    }
    report
}

/// Compose two reductions big ⇒ mid ⇒ small into big ⇒ small:
/// f = f″∘f′, g = g′∘g″, h = h′ + g′∘h″∘f′.
pub fn compose_reductions(outer: &Reduction, inner: &Reduction) -> Result<Reduction> {
    if !Arc::ptr_eq(&outer.small, &inner.big) {
        return Err(Error::ComplexMismatch(
            "outer.small and inner.big must be the same complex".into(),
        ));
    }
    let f = inner.f.compose(&outer.f);
    let g = outer.g.compose(&inner.g);
    let h = outer.h.add(&outer.g.compose(&inner.h).compose(&outer.f));
    Ok(Reduction { big: outer.big.clone(), small: inner.small.clone(), f, g, h })
}

fn require_cycle(cx: &Cx, z: &Chain, what: &str) -> Result<()> {
    let dz = diff_chain(cx.as_ref(), z);
    if !dz.is_zero() {
        return Err(Error::Contract(format!("{what} must be a cycle, but d(z) = {dz}")));
    }
    Ok(())
}

/// Project a cycle of the big complex to the homologous cycle f(z) below.
pub fn project_cycle(rho: &Reduction, z: &Chain) -> Result<Chain> {
    require_cycle(&rho.big, z, "project_cycle input")?;
    Ok(rho.f.apply_chain(z))
}

/// Lift a cycle of the small complex to the homologous cycle g(z) above.
pub fn lift_cycle(rho: &Reduction, z: &Chain) -> Result<Chain> {
    require_cycle(&rho.small, z, "lift_cycle input")?;
    Ok(rho.g.apply_chain(z))
}

/// Given a cycle z of the big complex and c with d(c) = f(z) in the small
/// complex, produce w = g(c) + h(z) with d(w) = z.
pub fn boundary_preimage(rho: &Reduction, z: &Chain, c: &Chain) -> Result<Chain> {
    require_cycle(&rho.big, z, "boundary_preimage input")?;
    let fz = rho.f.apply_chain(z);
    let dc = diff_chain(rho.small.as_ref(), c);
    if dc != fz {
        return Err(Error::Contract(format!(
            "boundary_preimage wants d(c) = f(z); got d(c) = {dc}, f(z) = {fz}"
        )));
    }
    Ok(rho.g.apply_chain(c).add(&rho.h.apply_chain(z)))
}

type BoundFn = dyn Fn(&Cell) -> usize + Send + Sync;

/// A perturbation δ̂ of the big differential, with a pointwise nilpotency
/// bound: (δ̂∘h)^ν vanishes on the cell within the declared bound.
#[derive(Clone)]
pub struct Perturbation {
    pub delta_hat: Morphism,
    bound: Arc<BoundFn>,
}

impl Perturbation {
    pub fn new(
        delta_hat: Morphism,
        bound: impl Fn(&Cell) -> usize + Send + Sync + 'static,
    ) -> Perturbation {
        assert_eq!(delta_hat.shift(), -1, "a perturbation has degree -1");
        Perturbation { delta_hat, bound: Arc::new(bound) }
    }

    pub fn bound_for(&self, cell: &Cell) -> usize {
        (self.bound)(cell)
    }
}

/// Homological perturbation: transfer a perturbation δ̂ of the big
/// differential through a reduction.
///
/// With φ = Σ_{i≥0} (−1)^i (h∘δ̂)^i (pointwise finite under the nilpotency
/// bound) the new reduction between (big, d̂+δ̂) and (small, d+δ) is
///
///   f′ = f∘(id − δ̂∘φ∘h),  g′ = φ∘g,  h′ = φ∘h,  δ = f∘δ̂∘φ∘g.
pub fn perturb(rho: &Reduction, p: &Perturbation) -> Result<Reduction> {
    let phi = {
        let h = rho.h.clone();
        let delta_hat = p.delta_hat.clone();
        let p = p.clone();
        Morphism::new(0, move |cell| {
            let mut acc = Chain::generator(cell);
            let mut term = acc.clone();
            let mut sign = 1i64;
            let bound = p.bound_for(cell);
            let mut steps = 0usize;
            loop {
                term = h.apply_chain(&delta_hat.apply_chain(&term));
                if term.is_zero() {
                    break;
                }
                steps += 1;
                if steps > bound.saturating_add(1) {
                    // Diverging series: the declared nilpotency bound lied.
                    panic!(
                        "nilpotency bound {bound} exceeded while perturbing at {cell}; \
                         the vector field or bound is not admissible"
                    );
                }
                sign = -sign;
                acc.add_scaled(&term, sign);
            }
            acc
        })
        .memoized()
    };

    // f′ = f∘(id − δ̂∘φ∘h)
    let f_new = {
        let f = rho.f.clone();
        let h = rho.h.clone();
        let delta_hat = p.delta_hat.clone();
        let phi = phi.clone();
        Morphism::new(0, move |cell| {
            let correction = delta_hat.apply_chain(&phi.apply_chain(&h.apply(cell)));
            f.apply_chain(&Chain::generator(cell).sub(&correction))
        })
    };
    let g_new = phi.compose(&rho.g).memoized();
    let h_new = phi.compose(&rho.h).memoized();
    // δ = f∘δ̂∘φ∘g, the induced perturbation of the small differential.
    let delta = rho.f.compose(&p.delta_hat).compose(&phi).compose(&rho.g).memoized();

    let big = Arc::new(PerturbedComplex { inner: rho.big.clone(), delta: p.delta_hat.clone() });
    let small = Arc::new(PerturbedComplex { inner: rho.small.clone(), delta });
    Ok(Reduction { big, small, f: f_new, g: g_new, h: h_new })
}
