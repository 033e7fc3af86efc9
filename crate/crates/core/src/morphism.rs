//! Chain morphisms of a fixed degree shift, given by cell evaluators and
//! extended linearly. Evaluators must be pure; an optional memo table keeps
//! repeated evaluation cheap without changing observable behaviour.

use crate::chain::Chain;
use crate::complex::Cx;
use crate::key::Cell;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

type EvalFn = dyn Fn(&Cell) -> Chain + Send + Sync;

#[derive(Clone)]
pub struct Morphism {
    shift: i32,
    eval: Arc<EvalFn>,
    memo: Option<Arc<Mutex<HashMap<Cell, Chain>>>>,
}

impl Morphism {
    pub fn new(shift: i32, eval: impl Fn(&Cell) -> Chain + Send + Sync + 'static) -> Morphism {
        Morphism { shift, eval: Arc::new(eval), memo: None }
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    /// Identity morphism (shift 0).
    pub fn identity() -> Morphism {
        Morphism::new(0, Chain::generator)
    }

    pub fn zero(shift: i32) -> Morphism {
        Morphism::new(shift, move |cell| Chain::zero(cell.degree + shift))
    }

    /// The differential of a complex as a shift −1 morphism.
    pub fn diff_of(cx: &Cx) -> Morphism {
        let cx = cx.clone();
        Morphism::new(-1, move |cell| cx.diff(cell))
    }

    /// Wrap with a memo table (pure cache).
    pub fn memoized(mut self) -> Morphism {
        if self.memo.is_none() {
            self.memo = Some(Arc::new(Mutex::new(HashMap::new())));
        }
        self
    }

    pub fn apply(&self, cell: &Cell) -> Chain {
        if let Some(memo) = &self.memo {
            if let Some(hit) = memo.lock().unwrap().get(cell) {
                return hit.clone();
            }
            let value = (self.eval)(cell);
            debug_assert_eq!(value.degree(), cell.degree + self.shift);
            memo.lock().unwrap().insert(cell.clone(), value.clone());
            value
        } else {
            let value = (self.eval)(cell);
            debug_assert_eq!(value.degree(), cell.degree + self.shift);
            value
        }
    }

    /// Linear extension to chains; the zero chain maps to the zero chain.
    pub fn apply_chain(&self, chain: &Chain) -> Chain {
        let mut out = Chain::zero(chain.degree() + self.shift);
        for (key, coeff) in chain.iter() {
            let cell = Cell { degree: chain.degree(), key: key.clone() };
            out.add_scaled(&self.apply(&cell), coeff);
        }
        out
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Morphism) -> Morphism {
        let f = self.clone();
        let g = other.clone();
        Morphism::new(self.shift + other.shift, move |cell| f.apply_chain(&g.apply(cell)))
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        assert_eq!(self.shift, other.shift, "cannot add morphisms of different shifts");
        let f = self.clone();
        let g = other.clone();
        Morphism::new(self.shift, move |cell| f.apply(cell).add(&g.apply(cell)))
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Morphism {
        let f = self.clone();
        Morphism::new(self.shift, move |cell| f.apply(cell).scale(c))
    }
}

/// Linear extension of a morphism to a chain.
pub fn apply_morphism(m: &Morphism, chain: &Chain) -> Chain {
    m.apply_chain(chain)
}

/// Cell-wise equality of two morphisms on a sample of cells.
pub fn morphisms_agree<'a>(
    a: &Morphism,
    b: &Morphism,
    cells: impl IntoIterator<Item = &'a Cell>,
) -> bool {
    a.shift == b.shift && cells.into_iter().all(|c| a.apply(c) == b.apply(c))
}
