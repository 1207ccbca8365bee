//! JSON documents for groupoids, double groupoids and hopfoids.
//!
//! Every document is `{"kind": ..., "version": "1", "payload": ...}` and
//! refers to elements by token. Output has sorted keys and is stable.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::doublegpd::{core_named, DoubleGroupoid};
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::hopfoid::Hopfoid;
use crate::relcat::{Carrier, Relation, Token};

pub const VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Groupoid,
    DoubleGroupoid,
    Hopfoid,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub kind: Kind,
    pub version: String,
    pub payload: Value,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CarrierJson {
    name: String,
    elements: Vec<Token>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupoidJson {
    objects: CarrierJson,
    arrows: CarrierJson,
    source: Vec<Token>,
    target: Vec<Token>,
    unit: Vec<Token>,
    inverse: Vec<Token>,
    /// `[g, h, gh]`.
    product: Vec<(Token, Token, Token)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DoubleJson {
    top: GroupoidJson,
    left: GroupoidJson,
    right: GroupoidJson,
    bottom: GroupoidJson,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HopfoidJson {
    carrier: CarrierJson,
    base: Vec<Token>,
    relations: BTreeMap<String, Vec<(Token, Token)>>,
}

pub enum Decoded {
    Groupoid(Groupoid),
    DoubleGroupoid(Box<DoubleGroupoid>),
    Hopfoid(Box<Hopfoid>),
}

fn parse_error(e: impl std::fmt::Display) -> Error {
    Error::Invalid(format!("malformed document: {e}"))
}

fn carrier_json(c: &Carrier) -> CarrierJson {
    CarrierJson {
        name: c.name(),
        elements: c.tokens(),
    }
}

fn carrier_from(c: CarrierJson) -> Result<Carrier> {
    Carrier::atomic(c.name, c.elements)
}

fn groupoid_json(g: &Groupoid) -> GroupoidJson {
    let a = |k: usize| g.arrows.token(k);
    let o = |k: usize| g.objects.token(k);
    GroupoidJson {
        objects: carrier_json(&g.objects),
        arrows: carrier_json(&g.arrows),
        source: g.src.iter().map(|&x| o(x)).collect(),
        target: g.tgt.iter().map(|&x| o(x)).collect(),
        unit: g.unit.iter().map(|&x| a(x)).collect(),
        inverse: g.inv.iter().map(|&x| a(x)).collect(),
        product: g.mul.iter().map(|(&(x, y), &z)| (a(x), a(y), a(z))).collect(),
    }
}

fn groupoid_from(j: GroupoidJson) -> Result<Groupoid> {
    let objects = carrier_from(j.objects)?;
    let arrows = carrier_from(j.arrows)?;
    let lookup = |c: &Carrier, ts: &[Token]| ts.iter().map(|t| c.require(t)).collect::<Result<Vec<_>>>();
    let mut mul = BTreeMap::new();
    for (x, y, z) in &j.product {
        let key = (arrows.require(x)?, arrows.require(y)?);
        if mul.insert(key, arrows.require(z)?).is_some() {
            return Err(Error::Invalid(format!("product {x}·{y} listed twice")));
        }
    }
    Ok(Groupoid {
        src: lookup(&objects, &j.source)?,
        tgt: lookup(&objects, &j.target)?,
        unit: lookup(&arrows, &j.unit)?,
        inv: lookup(&arrows, &j.inverse)?,
        mul,
        objects,
        arrows,
    })
}

fn hopfoid_json(h: &Hopfoid) -> HopfoidJson {
    HopfoidJson {
        carrier: carrier_json(&h.carrier),
        base: h.base.tokens(),
        relations: h
            .relations()
            .into_iter()
            .map(|(name, r)| (name.to_owned(), r.token_pairs()))
            .collect(),
    }
}

fn hopfoid_from(j: HopfoidJson) -> Result<Hopfoid> {
    let dd = carrier_from(j.carrier)?;
    let mut base_set = j.base.iter().map(|t| dd.require(t)).collect::<Result<Vec<_>>>()?;
    base_set.sort_unstable();
    base_set.dedup();
    let base = core_named(&dd, &base_set)?;
    let pt = Carrier::pt();
    let pair = Carrier::square(&dd);
    let mut relations = j.relations;
    let mut rel = |name: &str, dom: &Carrier, cod: &Carrier| -> Result<Relation> {
        let pairs = relations
            .remove(name)
            .ok_or_else(|| Error::Invalid(format!("relation `{name}` missing")))?;
        Relation::from_tokens(dom.clone(), cod.clone(), pairs.iter().map(|(x, y)| (x, y)))
    };
    let h = Hopfoid {
        delta: rel("delta", &dd, &pair)?,
        epsilon: rel("epsilon", &dd, &pt)?,
        star: rel("star", &dd, &dd)?,
        t: rel("t", &dd, &base)?,
        s: rel("s", &dd, &base)?,
        e: rel("e", &base, &dd)?,
        m: rel("m", &pair, &dd)?,
        i: rel("i", &dd, &dd)?,
        carrier: dd,
        base,
        base_set,
    };
    if let Some(extra) = relations.keys().next() {
        return Err(Error::Invalid(format!("unknown relation `{extra}`")));
    }
    Ok(h)
}

impl Document {
    fn new(kind: Kind, payload: impl Serialize) -> Self {
        Document {
            kind,
            version: VERSION.to_owned(),
            payload: serde_json::to_value(payload).expect("payload serialises"),
        }
    }

    pub fn groupoid(g: &Groupoid) -> Self {
        Document::new(Kind::Groupoid, groupoid_json(g))
    }

    pub fn double(d: &DoubleGroupoid) -> Self {
        Document::new(
            Kind::DoubleGroupoid,
            DoubleJson {
                top: groupoid_json(&d.top),
                left: groupoid_json(&d.left),
                right: groupoid_json(&d.right),
                bottom: groupoid_json(&d.bottom),
            },
        )
    }

    pub fn hopfoid(h: &Hopfoid) -> Self {
        Document::new(Kind::Hopfoid, hopfoid_json(h))
    }

    /// Pretty-printed JSON with sorted keys.
    pub fn encode(&self) -> String {
        let value = serde_json::to_value(self).expect("document serialises");
        serde_json::to_string_pretty(&value).expect("value serialises")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text).map_err(parse_error)?;
        if doc.version != VERSION {
            return Err(Error::Invalid(format!("unsupported version `{}`", doc.version)));
        }
        Ok(doc)
    }

    pub fn decode(self) -> Result<Decoded> {
        let payload = self.payload;
        Ok(match self.kind {
            Kind::Groupoid => Decoded::Groupoid(groupoid_from(serde_json::from_value(payload).map_err(parse_error)?)?),
            Kind::DoubleGroupoid => {
                let j: DoubleJson = serde_json::from_value(payload).map_err(parse_error)?;
                Decoded::DoubleGroupoid(Box::new(DoubleGroupoid {
                    top: groupoid_from(j.top)?,
                    left: groupoid_from(j.left)?,
                    right: groupoid_from(j.right)?,
                    bottom: groupoid_from(j.bottom)?,
                }))
            }
            Kind::Hopfoid => Decoded::Hopfoid(Box::new(hopfoid_from(
                serde_json::from_value(payload).map_err(parse_error)?,
            )?)),
        })
    }
}

impl Decoded {
    pub fn kind(&self) -> Kind {
        match self {
            Decoded::Groupoid(_) => Kind::Groupoid,
            Decoded::DoubleGroupoid(_) => Kind::DoubleGroupoid,
            Decoded::Hopfoid(_) => Kind::Hopfoid,
        }
    }
}
