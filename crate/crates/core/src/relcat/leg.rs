//! Diagram legs evaluated pointwise.
//!
//! A leg is a composite of tensors of relations. Evaluating it element by
//! element avoids materialising identity and symmetry relations on large
//! products such as `D × D × D × D`; the result of [`Leg::eval`] is an
//! ordinary [`Relation`] and is compared with [`relations_equal`].
//!
//! [`relations_equal`]: crate::relcat::relations_equal

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::relcat::carrier::Carrier;
use crate::relcat::relation::Relation;

#[derive(Clone, Debug)]
pub enum Leg {
    Rel(Relation),
    Id(Carrier),
    /// `A × B → B × A`.
    Swap(Carrier, Carrier),
    Tensor(Vec<Leg>),
    /// Diagrammatic order: the first leg is applied first.
    Seq(Vec<Leg>),
}

impl From<Relation> for Leg {
    fn from(r: Relation) -> Self {
        Leg::Rel(r)
    }
}

impl From<&Relation> for Leg {
    fn from(r: &Relation) -> Self {
        Leg::Rel(r.clone())
    }
}

impl Leg {
    pub fn id(c: &Carrier) -> Leg {
        Leg::Id(c.clone())
    }

    pub fn tensor(parts: impl IntoIterator<Item = Leg>) -> Leg {
        Leg::Tensor(parts.into_iter().collect())
    }

    /// Composite of `steps` in diagrammatic order, checking that adjacent
    /// carriers agree.
    pub fn seq(steps: impl IntoIterator<Item = Leg>) -> Result<Leg> {
        let steps: Vec<Leg> = steps.into_iter().collect();
        for w in steps.windows(2) {
            let (c, d) = (w[0].cod(), w[1].dom());
            if c != d {
                return Err(Error::Composition {
                    left: c.name(),
                    right: d.name(),
                });
            }
        }
        if steps.is_empty() {
            return Err(Error::Invalid("empty composite".into()));
        }
        Ok(Leg::Seq(steps))
    }

    pub fn dom(&self) -> Carrier {
        match self {
            Leg::Rel(r) => r.dom().clone(),
            Leg::Id(c) => c.clone(),
            Leg::Swap(a, b) => Carrier::product(&[a.clone(), b.clone()]),
            Leg::Tensor(parts) => Carrier::product(&parts.iter().map(Leg::dom).collect::<Vec<_>>()),
            Leg::Seq(steps) => steps[0].dom(),
        }
    }

    pub fn cod(&self) -> Carrier {
        match self {
            Leg::Rel(r) => r.cod().clone(),
            Leg::Id(c) => c.clone(),
            Leg::Swap(a, b) => Carrier::product(&[b.clone(), a.clone()]),
            Leg::Tensor(parts) => Carrier::product(&parts.iter().map(Leg::cod).collect::<Vec<_>>()),
            Leg::Seq(steps) => steps[steps.len() - 1].cod(),
        }
    }

    /// Everything `x` is related to.
    pub fn image(&self, x: usize) -> BTreeSet<usize> {
        match self {
            Leg::Rel(r) => r.image_of(x).collect(),
            Leg::Id(_) => BTreeSet::from([x]),
            Leg::Swap(a, b) => {
                let parts = Carrier::split(x, &[a.clone(), b.clone()]);
                BTreeSet::from([Carrier::join(&[parts[1], parts[0]], &[b.clone(), a.clone()])])
            }
            Leg::Tensor(parts) => {
                let doms: Vec<Carrier> = parts.iter().map(Leg::dom).collect();
                let cods: Vec<Carrier> = parts.iter().map(Leg::cod).collect();
                let xs = Carrier::split(x, &doms);
                let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
                for (leg, xi) in parts.iter().zip(xs) {
                    let img = leg.image(xi);
                    if img.is_empty() {
                        return BTreeSet::new();
                    }
                    acc = acc
                        .into_iter()
                        .flat_map(|prefix| {
                            img.iter().map(move |&y| {
                                let mut p = prefix.clone();
                                p.push(y);
                                p
                            })
                        })
                        .collect();
                }
                acc.iter().map(|ys| Carrier::join(ys, &cods)).collect()
            }
            Leg::Seq(steps) => {
                let mut current = BTreeSet::from([x]);
                for step in steps {
                    current = current.iter().flat_map(|&y| step.image(y)).collect();
                    if current.is_empty() {
                        break;
                    }
                }
                current
            }
        }
    }

    pub fn eval(&self) -> Relation {
        let dom = self.dom();
        let pairs = (0..dom.len())
            .flat_map(|x| self.image(x).into_iter().map(move |y| (x, y)))
            .collect();
        Relation::from_parts_unchecked(dom, self.cod(), pairs)
    }
}
