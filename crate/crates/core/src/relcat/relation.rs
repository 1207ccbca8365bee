use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::relcat::carrier::{Carrier, Token};

/// A morphism `dom → cod` of the relation category: a set of index pairs.
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    dom: Carrier,
    cod: Carrier,
    pairs: BTreeSet<(usize, usize)>,
}

/// Set-level mapping properties of a relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub surjective: bool,
    pub injective: bool,
    pub cosurjective: bool,
    pub coinjective: bool,
}

impl Relation {
    pub fn new(
        dom: Carrier,
        cod: Carrier,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        for &(x, y) in &pairs {
            dom.check_index(x)?;
            cod.check_index(y)?;
        }
        Ok(Relation { dom, cod, pairs })
    }

    /// Builds a relation from element tokens.
    pub fn from_tokens<'a>(
        dom: Carrier,
        cod: Carrier,
        pairs: impl IntoIterator<Item = (&'a Token, &'a Token)>,
    ) -> Result<Self> {
        let pairs = pairs
            .into_iter()
            .map(|(x, y)| Ok((dom.require(x)?, cod.require(y)?)))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(Relation { dom, cod, pairs })
    }

    pub(crate) fn from_parts_unchecked(
        dom: Carrier,
        cod: Carrier,
        pairs: BTreeSet<(usize, usize)>,
    ) -> Self {
        Relation { dom, cod, pairs }
    }

    pub fn identity(c: &Carrier) -> Self {
        Relation {
            dom: c.clone(),
            cod: c.clone(),
            pairs: (0..c.len()).map(|k| (k, k)).collect(),
        }
    }

    /// Graph of a total map given as a table `dom index -> cod index`.
    pub fn graph(dom: &Carrier, cod: &Carrier, map: &[usize]) -> Result<Self> {
        if map.len() != dom.len() {
            return Err(Error::Invalid(format!(
                "map table has {} entries but `{}` has {} elements",
                map.len(),
                dom.name(),
                dom.len()
            )));
        }
        Relation::new(dom.clone(), cod.clone(), map.iter().copied().enumerate())
    }

    /// The symmetry `A × B → B × A`.
    pub fn swap(a: &Carrier, b: &Carrier) -> Self {
        let groups = [a.clone(), b.clone()];
        let swapped = [b.clone(), a.clone()];
        let pairs = (0..a.len())
            .flat_map(|x| (0..b.len()).map(move |y| (x, y)))
            .map(|(x, y)| (Carrier::join(&[x, y], &groups), Carrier::join(&[y, x], &swapped)))
            .collect();
        Relation {
            dom: Carrier::product(&groups),
            cod: Carrier::product(&swapped),
            pairs,
        }
    }

    /// A subset of `c` viewed as a morphism `pt → c`.
    pub fn subset_as_relation(c: &Carrier, subset: impl IntoIterator<Item = usize>) -> Result<Self> {
        Relation::new(Carrier::pt(), c.clone(), subset.into_iter().map(|x| (0, x)))
    }

    /// A subset of `c` viewed as a morphism `c → pt`.
    pub fn subset_as_corelation(c: &Carrier, subset: impl IntoIterator<Item = usize>) -> Result<Self> {
        Relation::new(c.clone(), Carrier::pt(), subset.into_iter().map(|x| (x, 0)))
    }

    pub fn dom(&self) -> &Carrier {
        &self.dom
    }

    pub fn cod(&self) -> &Carrier {
        &self.cod
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.contains(&(x, y))
    }

    pub fn image_of(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.pairs.range((x, 0)..=(x, usize::MAX)).map(|&(_, y)| y)
    }

    /// The set `dom R` of elements related to something.
    pub fn domain(&self) -> BTreeSet<usize> {
        self.pairs.iter().map(|&(x, _)| x).collect()
    }

    pub fn range(&self) -> BTreeSet<usize> {
        self.pairs.iter().map(|&(_, y)| y).collect()
    }

    /// Image of a `pt → c` relation, i.e. the subset it names.
    pub fn as_subset(&self) -> BTreeSet<usize> {
        self.range()
    }

    /// Single-valued reading: `Some(map)` with `None` outside the domain,
    /// or `None` if some element has two images.
    pub fn as_partial_map(&self) -> Option<Vec<Option<usize>>> {
        let mut map = vec![None; self.dom.len()];
        for &(x, y) in &self.pairs {
            if map[x].replace(y).is_some() {
                return None;
            }
        }
        Some(map)
    }

    /// Total single-valued reading.
    pub fn as_map(&self) -> Option<Vec<usize>> {
        self.as_partial_map()?.into_iter().collect()
    }

    pub fn token_pairs(&self) -> Vec<(Token, Token)> {
        self.pairs
            .iter()
            .map(|&(x, y)| (self.dom.token(x), self.cod.token(y)))
            .collect()
    }

    /// Diagrammatic composition: first `self`, then `next`.
    pub fn then(&self, next: &Relation) -> Result<Relation> {
        compose(self, next)
    }

    /// First pair present in exactly one of the two relations, rendered
    /// with tokens.
    pub fn first_difference(&self, other: &Relation) -> Option<String> {
        if self.dom != other.dom || self.cod != other.cod {
            return Some(format!(
                "carriers differ: {} → {} vs {} → {}",
                self.dom, self.cod, other.dom, other.cod
            ));
        }
        let render = |&(x, y): &(usize, usize)| {
            format!("{} ↦ {}", self.dom.token(x), self.cod.token(y))
        };
        if let Some(p) = self.pairs.difference(&other.pairs).next() {
            return Some(format!("{} only on the left", render(p)));
        }
        other
            .pairs
            .difference(&self.pairs)
            .next()
            .map(|p| format!("{} only on the right", render(p)))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation({} → {}: {{", self.dom, self.cod)?;
        for (k, (x, y)) in self.token_pairs().into_iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}↦{y}")?;
        }
        f.write_str("})")
    }
}

/// `r` then `s`. The paper-style `s ∘ r`.
pub fn compose(r: &Relation, s: &Relation) -> Result<Relation> {
    if r.cod != s.dom {
        return Err(Error::Composition {
            left: r.cod.name(),
            right: s.dom.name(),
        });
    }
    let pairs = r
        .pairs
        .iter()
        .flat_map(|&(x, y)| s.image_of(y).map(move |z| (x, z)))
        .collect();
    Ok(Relation::from_parts_unchecked(
        r.dom.clone(),
        s.cod.clone(),
        pairs,
    ))
}

pub fn transpose(r: &Relation) -> Relation {
    Relation::from_parts_unchecked(
        r.cod.clone(),
        r.dom.clone(),
        r.pairs.iter().map(|&(x, y)| (y, x)).collect(),
    )
}

/// Cartesian product of relations.
pub fn tensor(r: &Relation, s: &Relation) -> Relation {
    let dom_groups = [r.dom.clone(), s.dom.clone()];
    let cod_groups = [r.cod.clone(), s.cod.clone()];
    let pairs = r
        .pairs
        .iter()
        .flat_map(|&(x, y)| {
            s.pairs.iter().map(move |&(u, v)| (x, y, u, v))
        })
        .map(|(x, y, u, v)| {
            (
                Carrier::join(&[x, u], &dom_groups),
                Carrier::join(&[y, v], &cod_groups),
            )
        })
        .collect();
    Relation::from_parts_unchecked(
        Carrier::product(&dom_groups),
        Carrier::product(&cod_groups),
        pairs,
    )
}

pub fn classify(r: &Relation) -> Classification {
    let mut dom_hits = vec![0usize; r.dom.len()];
    let mut cod_hits = vec![0usize; r.cod.len()];
    for &(x, y) in &r.pairs {
        dom_hits[x] += 1;
        cod_hits[y] += 1;
    }
    Classification {
        surjective: cod_hits.iter().all(|&n| n > 0),
        injective: cod_hits.iter().all(|&n| n <= 1),
        cosurjective: dom_hits.iter().all(|&n| n > 0),
        coinjective: dom_hits.iter().all(|&n| n <= 1),
    }
}

/// `R ∘ Rᵗ = id` on the codomain.
pub fn is_reduction(r: &Relation) -> bool {
    compose(&transpose(r), r)
        .map(|rr| rr == Relation::identity(&r.cod))
        .unwrap_or(false)
}

/// `Rᵗ ∘ R = id` on the domain.
pub fn is_coreduction(r: &Relation) -> bool {
    is_reduction(&transpose(r))
}

pub fn relations_equal(r: &Relation, s: &Relation) -> bool {
    r == s
}

/// `subset ⊆ c` as a morphism `pt → c`, by token.
pub fn subset_as_relation(c: &Carrier, subset: &[Token]) -> Result<Relation> {
    let indices = subset
        .iter()
        .map(|t| c.require(t))
        .collect::<Result<Vec<_>>>()?;
    Relation::subset_as_relation(c, indices)
}
