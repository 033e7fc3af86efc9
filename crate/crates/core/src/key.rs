//! Cell identifiers.
//!
//! Every complex in this crate names its cells with a [`Key`], a small ordered
//! datum: an integer, a symbol, or a list of keys. Different kinds of
//! complexes (simplicial, cubical, tensor, matrix rows) encode their own cell
//! data into this one type, which lets reductions connect complexes of
//! different origins without generics spreading through every signature.

use std::fmt;

/// Ordered, hashable cell datum.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Key {
    Int(i64),
    Sym(&'static str),
    Str(String),
    List(Vec<Key>),
}

impl Key {
    pub fn list(items: impl IntoIterator<Item = Key>) -> Key {
        Key::List(items.into_iter().collect())
    }

    pub fn ints(items: impl IntoIterator<Item = i64>) -> Key {
        Key::List(items.into_iter().map(Key::Int).collect())
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Key::Int(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Key]> {
        match self {
            Key::List(items) => Some(items),
            _ => None,
        }
    }
}

impl fmt::Debug for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Int(n) => write!(f, "{n}"),
            Key::Sym(s) => write!(f, "{s}"),
            Key::Str(s) => write!(f, "{s}"),
            Key::List(items) => {
                write!(f, "(")?;
                for (i, k) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{k:?}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<i64> for Key {
    fn from(n: i64) -> Key {
        Key::Int(n)
    }
}

impl From<&'static str> for Key {
    fn from(s: &'static str) -> Key {
        Key::Sym(s)
    }
}

/// A cell of a complex: a degree together with a key unique in that degree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub degree: i32,
    pub key: Key,
}

impl Cell {
    pub fn new(degree: i32, key: impl Into<Key>) -> Cell {
        Cell { degree, key: key.into() }
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{}", self.key, self.degree)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
