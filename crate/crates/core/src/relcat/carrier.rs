use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An opaque element identifier.
///
/// Atoms are plain strings; tuples are the elements of product carriers (or
/// atomic carriers whose tokens happen to be structured, such as the squares
/// `(g, h)` of a pair double groupoid).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Token {
    Atom(String),
    Tuple(Vec<Token>),
}

impl Token {
    pub fn atom(s: impl Into<String>) -> Self {
        Token::Atom(s.into())
    }

    pub fn pair(a: Token, b: Token) -> Self {
        Token::Tuple(vec![a, b])
    }
}

impl From<&str> for Token {
    fn from(s: &str) -> Self {
        Token::Atom(s.to_owned())
    }
}

impl From<String> for Token {
    fn from(s: String) -> Self {
        Token::Atom(s)
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Atom(s) => f.write_str(s),
            Token::Tuple(items) => {
                f.write_str("(")?;
                for (k, t) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
        }
    }
}

const PT_NAME: &str = "pt";
const PT_TOKEN: &str = "*";

#[derive(Debug)]
enum Kind {
    Atomic {
        name: String,
        tokens: Vec<Token>,
        lookup: HashMap<Token, usize>,
    },
    /// Flattened list of at least two non-`pt`, non-product factors.
    Product { factors: Vec<Carrier> },
}

/// An object of the relation category: a finite set of elements addressed
/// by index.
///
/// Product carriers are kept flat and unit-free: `(A × B) × C` and
/// `A × (B × C)` are the same carrier `A × B × C`, and `pt × A` is `A`.
/// Elements of a product are numbered in mixed radix with the first factor
/// most significant, so indices of nested products concatenate.
#[derive(Clone)]
pub struct Carrier(Arc<Kind>);

impl Carrier {
    pub fn atomic(name: impl Into<String>, tokens: Vec<Token>) -> Result<Self> {
        let name = name.into();
        let mut lookup = HashMap::with_capacity(tokens.len());
        for (k, t) in tokens.iter().enumerate() {
            if lookup.insert(t.clone(), k).is_some() {
                return Err(Error::DuplicateElement {
                    carrier: name,
                    element: t.to_string(),
                });
            }
        }
        Ok(Carrier(Arc::new(Kind::Atomic {
            name,
            tokens,
            lookup,
        })))
    }

    /// The monoidal unit: a single element `*`.
    pub fn pt() -> Self {
        thread_local! {
            static PT: Carrier = Carrier::atomic(PT_NAME, vec![Token::atom(PT_TOKEN)]).unwrap();
        }
        PT.with(Carrier::clone)
    }

    pub fn empty(name: impl Into<String>) -> Self {
        Carrier::atomic(name, Vec::new()).unwrap()
    }

    pub fn product(factors: &[Carrier]) -> Self {
        let mut flat = Vec::with_capacity(factors.len());
        for f in factors {
            match &*f.0 {
                Kind::Product { factors } => flat.extend(factors.iter().cloned()),
                Kind::Atomic { .. } if f.is_pt() => {}
                Kind::Atomic { .. } => flat.push(f.clone()),
            }
        }
        match flat.len() {
            0 => Carrier::pt(),
            1 => flat.pop().unwrap(),
            _ => Carrier(Arc::new(Kind::Product { factors: flat })),
        }
    }

    pub fn square(c: &Carrier) -> Self {
        Carrier::product(&[c.clone(), c.clone()])
    }

    pub fn is_pt(&self) -> bool {
        match &*self.0 {
            Kind::Atomic { name, tokens, .. } => name == PT_NAME && tokens.len() == 1,
            Kind::Product { .. } => false,
        }
    }

    pub fn is_product(&self) -> bool {
        matches!(&*self.0, Kind::Product { .. })
    }

    pub fn name(&self) -> String {
        match &*self.0 {
            Kind::Atomic { name, .. } => name.clone(),
            Kind::Product { factors } => factors
                .iter()
                .map(Carrier::name)
                .collect::<Vec<_>>()
                .join("×"),
        }
    }

    pub fn len(&self) -> usize {
        match &*self.0 {
            Kind::Atomic { tokens, .. } => tokens.len(),
            Kind::Product { factors } => factors.iter().map(Carrier::len).product(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flattened factors; an atomic carrier is its own single factor.
    pub fn factors(&self) -> Vec<Carrier> {
        match &*self.0 {
            Kind::Atomic { .. } => vec![self.clone()],
            Kind::Product { factors } => factors.clone(),
        }
    }

    pub fn token(&self, index: usize) -> Token {
        match &*self.0 {
            Kind::Atomic { tokens, .. } => tokens[index].clone(),
            Kind::Product { factors } => {
                let parts = split_index(index, factors.iter().map(Carrier::len));
                Token::Tuple(
                    factors
                        .iter()
                        .zip(parts)
                        .map(|(f, k)| f.token(k))
                        .collect(),
                )
            }
        }
    }

    pub fn tokens(&self) -> Vec<Token> {
        (0..self.len()).map(|k| self.token(k)).collect()
    }

    pub fn index_of(&self, token: &Token) -> Option<usize> {
        match &*self.0 {
            Kind::Atomic { lookup, .. } => lookup.get(token).copied(),
            Kind::Product { factors } => {
                let Token::Tuple(items) = token else {
                    return None;
                };
                if items.len() != factors.len() {
                    return None;
                }
                let parts = factors
                    .iter()
                    .zip(items)
                    .map(|(f, t)| f.index_of(t))
                    .collect::<Option<Vec<_>>>()?;
                Some(join_index(&parts, factors.iter().map(Carrier::len)))
            }
        }
    }

    pub fn require(&self, token: &Token) -> Result<usize> {
        self.index_of(token).ok_or_else(|| Error::Membership {
            carrier: self.name(),
            element: token.to_string(),
        })
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        let size = self.len();
        if index < size {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                carrier: self.name(),
                index,
                size,
            })
        }
    }

    /// Splits an element of `self` into its components along the given
    /// grouping. The groups must multiply out to `self` (checked by the
    /// callers that build the grouping).
    pub fn split(index: usize, groups: &[Carrier]) -> Vec<usize> {
        split_index(index, groups.iter().map(Carrier::len))
    }

    pub fn join(parts: &[usize], groups: &[Carrier]) -> usize {
        join_index(parts, groups.iter().map(Carrier::len))
    }

    /// Carrier on a subset of `self`'s elements, listed in the given order.
    pub fn subset(&self, name: impl Into<String>, indices: &[usize]) -> Result<Carrier> {
        Carrier::atomic(name, indices.iter().map(|&k| self.token(k)).collect())
    }

    pub fn ptr_eq(&self, other: &Carrier) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

fn split_index(mut index: usize, sizes: impl DoubleEndedIterator<Item = usize>) -> Vec<usize> {
    let mut parts: Vec<usize> = sizes
        .rev()
        .map(|n| {
            if n == 0 {
                return 0;
            }
            let k = index % n;
            index /= n;
            k
        })
        .collect();
    parts.reverse();
    parts
}

fn join_index(parts: &[usize], sizes: impl Iterator<Item = usize>) -> usize {
    parts
        .iter()
        .zip(sizes)
        .fold(0, |acc, (&k, n)| acc * n + k)
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (
                Kind::Atomic {
                    name: a, tokens: x, ..
                },
                Kind::Atomic {
                    name: b, tokens: y, ..
                },
            ) => a == b && x == y,
            (Kind::Product { factors: x }, Kind::Product { factors: y }) => x == y,
            _ => false,
        }
    }
}

impl Eq for Carrier {}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Carrier({}; {} elements)", self.name(), self.len())
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
