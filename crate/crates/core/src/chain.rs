//! Integer chains: finite ℤ-linear combinations of same-degree cells.
//!
//! Coefficients are `i64` with checked arithmetic; any overflow panics instead
//! of wrapping, so results are exact or loudly absent.

use crate::key::{Cell, Key};
use std::collections::BTreeMap;
use std::fmt;

pub type Coeff = i64;

#[inline]
pub fn cadd(a: Coeff, b: Coeff) -> Coeff {
    a.checked_add(b).expect("chain coefficient overflow")
}

#[inline]
pub fn cmul(a: Coeff, b: Coeff) -> Coeff {
    a.checked_mul(b).expect("chain coefficient overflow")
}

/// A chain of a fixed degree. The zero chain has an empty term map.
/// Stored coefficients are never zero; iteration order is the key order.
#[derive(Clone, PartialEq, Eq)]
pub struct Chain {
    degree: i32,
    terms: BTreeMap<Key, Coeff>,
}

impl Chain {
    pub fn zero(degree: i32) -> Chain {
        Chain { degree, terms: BTreeMap::new() }
    }

    pub fn generator(cell: &Cell) -> Chain {
        Chain::single(cell.degree, cell.key.clone(), 1)
    }

    pub fn single(degree: i32, key: Key, coeff: Coeff) -> Chain {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(key, coeff);
        }
        Chain { degree, terms }
    }

    pub fn from_terms(degree: i32, terms: impl IntoIterator<Item = (Key, Coeff)>) -> Chain {
        let mut c = Chain::zero(degree);
        for (k, v) in terms {
            c.add_term(&k, v);
        }
        c
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &Key) -> Coeff {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn coeff_of(&self, cell: &Cell) -> Coeff {
        if cell.degree != self.degree {
            return 0;
        }
        self.coeff(&cell.key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, Coeff)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let d = self.degree;
        self.terms.keys().map(move |k| Cell { degree: d, key: k.clone() })
    }

    pub fn add_term(&mut self, key: &Key, coeff: Coeff) {
        if coeff == 0 {
            return;
        }
        match self.terms.get_mut(key) {
            Some(c) => {
                *c = cadd(*c, coeff);
                if *c == 0 {
                    self.terms.remove(key);
                }
            }
            None => {
                self.terms.insert(key.clone(), coeff);
            }
        }
    }

    pub fn add_cell(&mut self, cell: &Cell, coeff: Coeff) {
        assert_eq!(cell.degree, self.degree, "degree mismatch in chain sum");
        self.add_term(&cell.key, coeff);
    }

    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!(self.degree, other.degree, "degree mismatch in chain sum");
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_term(k, v);
        }
        out
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: Coeff) -> Chain {
        if c == 0 {
            return Chain::zero(self.degree);
        }
        Chain {
            degree: self.degree,
            terms: self.terms.iter().map(|(k, &v)| (k.clone(), cmul(v, c))).collect(),
        }
    }

    /// Accumulate `coeff * other` into `self`.
    pub fn add_scaled(&mut self, other: &Chain, coeff: Coeff) {
        if coeff == 0 {
            return;
        }
        assert_eq!(self.degree, other.degree, "degree mismatch in chain sum");
        for (k, v) in other.iter() {
            self.add_term(k, cmul(v, coeff));
        }
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0[{}]", self.degree);
        }
        for (i, (k, v)) in self.iter().enumerate() {
            if i == 0 {
                if v < 0 {
                    write!(f, "-")?;
                }
            } else if v < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = v.abs();
            if a != 1 {
                write!(f, "{a}*")?;
            }
            write!(f, "{k:?}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(k: i64) -> Cell {
        Cell::new(1, k)
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = Chain::from_terms(1, [(Key::Int(1), 2), (Key::Int(2), -1)]);
        let b = Chain::from_terms(1, [(Key::Int(1), -2), (Key::Int(3), 5)]);
        let s = a.add(&b);
        assert_eq!(s.coeff(&Key::Int(1)), 0);
        assert_eq!(s.len(), 2);
        assert!(!s.iter().any(|(_, v)| v == 0));
    }

    #[test]
    fn exact_module_laws() {
        let a = Chain::generator(&cell(1)).scale(3);
        let b = Chain::generator(&cell(2)).scale(-2);
        let c = Chain::generator(&cell(1));
        assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_loud() {
        let a = Chain::single(0, Key::Int(0), i64::MAX);
        let _ = a.scale(2);
    }
}
