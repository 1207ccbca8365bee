//! Finite groupoids and their description as strongly positive *-monoids in
//! the relation category.
//!
//! Multiplication follows function composition: `mul(g, h)` is defined iff
//! `src(g) == tgt(h)`, with `src(gh) = src(h)` and `tgt(gh) = tgt(g)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::relcat::{transpose, Carrier, Leg, Relation};
use crate::report::CheckReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Groupoid {
    pub objects: Carrier,
    pub arrows: Carrier,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub unit: Vec<usize>,
    pub inv: Vec<usize>,
    pub mul: BTreeMap<(usize, usize), usize>,
}

/// A monoid object `(S, m, e)` with an involution `star`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarMonoid {
    pub carrier: Carrier,
    pub m: Relation,
    pub e: Relation,
    pub star: Relation,
}

/// A groupoid with its arrows placed inside some ambient carrier and its
/// objects replaced by their unit arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedGroupoid {
    pub arrows: BTreeSet<usize>,
    pub units: BTreeSet<usize>,
    pub src: BTreeMap<usize, usize>,
    pub tgt: BTreeMap<usize, usize>,
    pub inv: BTreeMap<usize, usize>,
    pub mul: BTreeMap<(usize, usize), usize>,
}

impl Groupoid {
    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn composable(&self, g: usize, h: usize) -> bool {
        self.src[g] == self.tgt[h]
    }

    pub fn mul(&self, g: usize, h: usize) -> Option<usize> {
        self.mul.get(&(g, h)).copied()
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.unit[self.src[a]] == a
    }

    pub fn unit_set(&self) -> BTreeSet<usize> {
        self.unit.iter().copied().collect()
    }

    /// Unit arrow at the source of `a`.
    pub fn src_unit(&self, a: usize) -> usize {
        self.unit[self.src[a]]
    }

    pub fn tgt_unit(&self, a: usize) -> usize {
        self.unit[self.tgt[a]]
    }

    /// Arrows grouped by target object.
    pub fn arrows_by_tgt(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_objects()];
        for (a, &t) in self.tgt.iter().enumerate() {
            out[t].push(a);
        }
        out
    }

    pub fn arrows_by_src(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_objects()];
        for (a, &s) in self.src.iter().enumerate() {
            out[s].push(a);
        }
        out
    }

    /// Replaces both carriers by carriers of the same sizes.
    pub fn with_carriers(mut self, objects: Carrier, arrows: Carrier) -> Result<Self> {
        if objects.len() != self.objects.len() || arrows.len() != self.arrows.len() {
            return Err(Error::Invalid(format!(
                "carrier sizes {}/{} do not match groupoid sizes {}/{}",
                objects.len(),
                arrows.len(),
                self.objects.len(),
                self.arrows.len()
            )));
        }
        self.objects = objects;
        self.arrows = arrows;
        Ok(self)
    }

    /// Transports the structure along `embed: arrows → ambient`.
    pub fn embedded(&self, embed: &[usize]) -> EmbeddedGroupoid {
        let at = |a: usize| embed[a];
        EmbeddedGroupoid {
            arrows: (0..self.n_arrows()).map(at).collect(),
            units: self.unit.iter().map(|&u| at(u)).collect(),
            src: (0..self.n_arrows()).map(|a| (at(a), at(self.src_unit(a)))).collect(),
            tgt: (0..self.n_arrows()).map(|a| (at(a), at(self.tgt_unit(a)))).collect(),
            inv: (0..self.n_arrows()).map(|a| (at(a), at(self.inv[a]))).collect(),
            mul: self
                .mul
                .iter()
                .map(|(&(g, h), &gh)| ((at(g), at(h)), at(gh)))
                .collect(),
        }
    }

    pub fn self_embedded(&self) -> EmbeddedGroupoid {
        let id: Vec<usize> = (0..self.n_arrows()).collect();
        self.embedded(&id)
    }

    /// Equality with objects compared through their unit arrows.
    pub fn same_up_to_units(&self, other: &Groupoid) -> Result<(), String> {
        if self.arrows != other.arrows {
            return Err(format!(
                "arrow carriers differ: {} vs {}",
                self.arrows, other.arrows
            ));
        }
        match self.self_embedded().difference(&other.self_embedded(), &self.arrows) {
            None => Ok(()),
            Some(w) => Err(w),
        }
    }

    fn tok(&self, a: usize) -> String {
        self.arrows.token(a).to_string()
    }
}

impl EmbeddedGroupoid {
    /// First disagreement, rendered with tokens of `ambient`.
    pub fn difference(&self, other: &EmbeddedGroupoid, ambient: &Carrier) -> Option<String> {
        let t = |k: usize| ambient.token(k).to_string();
        if self.arrows != other.arrows {
            let x = self.arrows.symmetric_difference(&other.arrows).next()?;
            return Some(format!("arrow sets differ at {}", t(*x)));
        }
        if self.units != other.units {
            let x = self.units.symmetric_difference(&other.units).next()?;
            return Some(format!("unit sets differ at {}", t(*x)));
        }
        for (label, a, b) in [
            ("source", &self.src, &other.src),
            ("target", &self.tgt, &other.tgt),
            ("inverse", &self.inv, &other.inv),
        ] {
            if let Some((k, v)) = a.iter().find(|(k, v)| b.get(k) != Some(v)) {
                let w = b.get(k).map(|&x| t(x)).unwrap_or_else(|| "undefined".into());
                return Some(format!("{label} of {} is {} vs {}", t(*k), t(*v), w));
            }
        }
        if self.mul != other.mul {
            let only = |a: &BTreeMap<(usize, usize), usize>, b: &BTreeMap<(usize, usize), usize>| {
                a.iter()
                    .find(|(k, v)| b.get(k) != Some(v))
                    .map(|(&(g, h), &gh)| format!("{}·{} = {}", t(g), t(h), t(gh)))
            };
            return only(&self.mul, &other.mul)
                .map(|w| format!("product {w} only on the left"))
                .or_else(|| only(&other.mul, &self.mul).map(|w| format!("product {w} only on the right")));
        }
        None
    }
}

fn check_tables(g: &Groupoid) -> Result<(), String> {
    let (n, k) = (g.n_arrows(), g.n_objects());
    for (label, table, len, bound) in [
        ("src", &g.src, n, k),
        ("tgt", &g.tgt, n, k),
        ("unit", &g.unit, k, n),
        ("inv", &g.inv, n, n),
    ] {
        if table.len() != len {
            return Err(format!("{label} has {} entries, expected {len}", table.len()));
        }
        if let Some(x) = table.iter().find(|&&x| x >= bound) {
            return Err(format!("{label} has out-of-range value {x}"));
        }
    }
    if let Some(((a, b), c)) = g.mul.iter().find(|(&(a, b), &c)| a >= n || b >= n || c >= n) {
        return Err(format!("mul entry ({a}, {b}) -> {c} out of range"));
    }
    Ok(())
}

fn first_failure<I, F>(items: I, f: F) -> Result<(), String>
where
    I: IntoIterator,
    F: FnMut(I::Item) -> Result<(), String>,
{
    items.into_iter().try_for_each(f)
}

/// Checks every groupoid axiom; failures carry a witness.
pub fn validate_groupoid(g: &Groupoid) -> CheckReport {
    let mut report = CheckReport::new(format!("groupoid {} ⇉ {}", g.arrows, g.objects));
    let tables = check_tables(g);
    let ok = tables.is_ok();
    report.record("tables", "structure maps total", tables);
    if !ok {
        return report;
    }
    let n = g.n_arrows();
    let arrows = 0..n;

    report.record(
        "unit endpoints",
        "src(1_x) = tgt(1_x) = x",
        first_failure(0..g.n_objects(), |x| {
            let u = g.unit[x];
            if g.src[u] == x && g.tgt[u] == x {
                Ok(())
            } else {
                Err(format!("object {}", g.objects.token(x)))
            }
        }),
    );

    report.record(
        "product domain",
        "gh defined iff src(g) = tgt(h)",
        first_failure(arrows.clone().flat_map(|a| (0..n).map(move |b| (a, b))), |(a, b)| {
            match (g.composable(a, b), g.mul(a, b)) {
                (true, None) => Err(format!("{}·{} undefined", g.tok(a), g.tok(b))),
                (false, Some(_)) => Err(format!("{}·{} defined but not composable", g.tok(a), g.tok(b))),
                _ => Ok(()),
            }
        }),
    );

    report.record(
        "product endpoints",
        "src(gh) = src(h), tgt(gh) = tgt(g)",
        first_failure(g.mul.iter(), |(&(a, b), &c)| {
            if g.src[c] == g.src[b] && g.tgt[c] == g.tgt[a] {
                Ok(())
            } else {
                Err(format!("{}·{} = {}", g.tok(a), g.tok(b), g.tok(c)))
            }
        }),
    );

    report.record(
        "left unit",
        "1_tgt(g) · g = g",
        first_failure(arrows.clone(), |a| match g.mul(g.tgt_unit(a), a) {
            Some(x) if x == a => Ok(()),
            other => Err(format!(
                "1·{} = {}",
                g.tok(a),
                other.map(|x| g.tok(x)).unwrap_or_else(|| "undefined".into())
            )),
        }),
    );

    report.record(
        "right unit",
        "g · 1_src(g) = g",
        first_failure(arrows.clone(), |a| match g.mul(a, g.src_unit(a)) {
            Some(x) if x == a => Ok(()),
            other => Err(format!(
                "{}·1 = {}",
                g.tok(a),
                other.map(|x| g.tok(x)).unwrap_or_else(|| "undefined".into())
            )),
        }),
    );

    report.record(
        "inverse",
        "g · g⁻¹ = 1_tgt(g), g⁻¹ · g = 1_src(g)",
        first_failure(arrows.clone(), |a| {
            let i = g.inv[a];
            let right = g.mul(a, i);
            let left = g.mul(i, a);
            if right == Some(g.tgt_unit(a)) && left == Some(g.src_unit(a)) {
                Ok(())
            } else {
                Err(format!("g = {}, g⁻¹ = {}", g.tok(a), g.tok(i)))
            }
        }),
    );

    let by_tgt = g.arrows_by_tgt();
    report.record(
        "associativity",
        "(gh)k = g(hk)",
        first_failure(g.mul.iter(), |(&(a, b), &ab)| {
            for &c in &by_tgt[g.src[b]] {
                let left = g.mul(ab, c);
                let right = g.mul(b, c).and_then(|bc| g.mul(a, bc));
                if left != right || left.is_none() {
                    return Err(format!("({}, {}, {})", g.tok(a), g.tok(b), g.tok(c)));
                }
            }
            Ok(())
        }),
    );
    report
}

pub fn to_star_monoid(g: &Groupoid) -> Result<StarMonoid> {
    let report = validate_groupoid(g);
    if !report.passed() {
        return Err(Error::Validation(report));
    }
    Ok(star_monoid_of(g))
}

/// The *-monoid of a groupoid without validating it first.
pub(crate) fn star_monoid_of(g: &Groupoid) -> StarMonoid {
    let s = &g.arrows;
    let ss = Carrier::square(s);
    let groups = [s.clone(), s.clone()];
    let m = Relation::from_parts_unchecked(
        ss,
        s.clone(),
        g.mul
            .iter()
            .map(|(&(a, b), &c)| (Carrier::join(&[a, b], &groups), c))
            .collect(),
    );
    let e = Relation::from_parts_unchecked(
        Carrier::pt(),
        s.clone(),
        g.unit.iter().map(|&u| (0, u)).collect(),
    );
    let star = Relation::from_parts_unchecked(
        s.clone(),
        s.clone(),
        g.inv.iter().copied().enumerate().collect(),
    );
    StarMonoid {
        carrier: s.clone(),
        m,
        e,
        star,
    }
}

impl StarMonoid {
    /// Reverses every arrow of a comonoid `(S, Δ, ε)` with a *-structure.
    pub fn from_comonoid(carrier: &Carrier, delta: &Relation, epsilon: &Relation, star: &Relation) -> Self {
        StarMonoid {
            carrier: carrier.clone(),
            m: transpose(delta),
            e: transpose(epsilon),
            star: star.clone(),
        }
    }

    fn diagonal(&self) -> Relation {
        let s = &self.carrier;
        let groups = [s.clone(), s.clone()];
        Relation::from_parts_unchecked(
            Carrier::pt(),
            Carrier::square(s),
            (0..s.len()).map(|x| (0, Carrier::join(&[x, x], &groups))).collect(),
        )
    }
}

/// Associativity, both unit laws, compatibility of the involution with the
/// product, and strong positivity, each as an exact relation equality.
pub fn check_star_monoid(sm: &StarMonoid) -> CheckReport {
    let s = &sm.carrier;
    let m = Leg::from(&sm.m);
    let e = Leg::from(&sm.e);
    let star = Leg::from(&sm.star);
    let id = Leg::id(s);
    let mut report = CheckReport::new(format!("*-monoid on {s}"));

    report.record_legs(
        "associativity",
        "m∘(m×id) = m∘(id×m)",
        Leg::seq([Leg::tensor([m.clone(), id.clone()]), m.clone()]),
        Leg::seq([Leg::tensor([id.clone(), m.clone()]), m.clone()]),
    );
    report.record_legs(
        "left unit",
        "m∘(e×id) = id",
        Leg::seq([Leg::tensor([e.clone(), id.clone()]), m.clone()]),
        Ok(id.clone()),
    );
    report.record_legs(
        "right unit",
        "m∘(id×e) = id",
        Leg::seq([Leg::tensor([id.clone(), e.clone()]), m.clone()]),
        Ok(id.clone()),
    );

    let involution = Leg::seq([star.clone(), star.clone()]).map(|l| l.eval());
    match involution {
        Ok(ss) if ss == Relation::identity(s) => report.record_legs(
            "star compatibility",
            "s² = id, s∘m = m∘(s×s)∘σ",
            Leg::seq([m.clone(), star.clone()]),
            Leg::seq([
                Leg::Swap(s.clone(), s.clone()),
                Leg::tensor([star.clone(), star.clone()]),
                m.clone(),
            ]),
        ),
        Ok(ss) => report.record(
            "star compatibility",
            "s² = id, s∘m = m∘(s×s)∘σ",
            Err(format!(
                "s² ≠ id: {}",
                ss.first_difference(&Relation::identity(s)).unwrap_or_default()
            )),
        ),
        Err(err) => report.record(
            "star compatibility",
            "s² = id, s∘m = m∘(s×s)∘σ",
            Err(format!("ill-typed leg: {err}")),
        ),
    }

    report.record_legs(
        "strong positivity",
        "m∘(id×s)∘diag = e",
        Leg::seq([
            Leg::from(sm.diagonal()),
            Leg::tensor([id.clone(), star.clone()]),
            m.clone(),
        ]),
        Ok(e.clone()),
    );
    report
}

fn extraction(reason: impl Into<String>, witness: impl Into<String>) -> Error {
    Error::Extraction {
        reason: reason.into(),
        witness: witness.into(),
    }
}

/// Recovers the groupoid of a strongly positive *-monoid. Objects are the
/// unit arrows named by `e`; source and target of `a` are the unique units
/// acting trivially on `a` from the right and left.
pub fn from_star_monoid(sm: &StarMonoid) -> Result<Groupoid> {
    let s = &sm.carrier;
    let n = s.len();
    let ss = Carrier::square(s);
    if sm.m.dom() != &ss || sm.m.cod() != s {
        return Err(extraction("product has wrong carriers", format!("{} → {}", sm.m.dom(), sm.m.cod())));
    }
    if !sm.e.dom().is_pt() || sm.e.cod() != s {
        return Err(extraction("unit has wrong carriers", format!("{} → {}", sm.e.dom(), sm.e.cod())));
    }
    let tok = |a: usize| s.token(a).to_string();
    let groups = [s.clone(), s.clone()];

    let mut mul = BTreeMap::new();
    for &(ab, c) in sm.m.pairs() {
        let parts = Carrier::split(ab, &groups);
        if let Some(prev) = mul.insert((parts[0], parts[1]), c) {
            return Err(extraction(
                "product is multivalued",
                format!("{}·{} ∈ {{{}, {}}}", tok(parts[0]), tok(parts[1]), tok(prev), tok(c)),
            ));
        }
    }
    let inv = sm
        .star
        .as_map()
        .filter(|_| sm.star.dom() == s && sm.star.cod() == s)
        .ok_or_else(|| extraction("star is not a total map", s.name()))?;

    let units: Vec<usize> = sm.e.as_subset().into_iter().collect();
    let unit_pos: BTreeMap<usize, usize> = units.iter().enumerate().map(|(k, &u)| (u, k)).collect();

    let unique = |a: usize, on_left: bool| -> Result<usize> {
        let found: Vec<usize> = units
            .iter()
            .copied()
            .filter(|&u| {
                let key = if on_left { (u, a) } else { (a, u) };
                mul.get(&key) == Some(&a)
            })
            .collect();
        match found.as_slice() {
            [u] => Ok(unit_pos[u]),
            [] => Err(extraction(
                if on_left { "no left unit" } else { "no right unit" },
                tok(a),
            )),
            _ => Err(extraction(
                if on_left { "left unit not unique" } else { "right unit not unique" },
                format!(
                    "{} fixed by {}",
                    tok(a),
                    found.iter().map(|&u| tok(u)).collect::<Vec<_>>().join(", ")
                ),
            )),
        }
    };
    let tgt = (0..n).map(|a| unique(a, true)).collect::<Result<Vec<_>>>()?;
    let src = (0..n).map(|a| unique(a, false)).collect::<Result<Vec<_>>>()?;

    let objects = s
        .subset(format!("{}.units", s.name()), &units)
        .map_err(|e| extraction("unit carrier", e.to_string()))?;
    let g = Groupoid {
        objects,
        arrows: s.clone(),
        src,
        tgt,
        unit: units,
        inv,
        mul,
    };
    let report = validate_groupoid(&g);
    if let Some(f) = report.failures().next() {
        return Err(extraction(
            format!("extracted structure violates `{}`", f.name),
            f.witness.clone().unwrap_or_default(),
        ));
    }
    Ok(g)
}

fn restriction(reason: impl Into<String>, witness: impl Into<String>) -> Error {
    Error::Restriction {
        reason: reason.into(),
        witness: witness.into(),
    }
}

/// Restricts `g` to a subset of arrows closed under products, inverses and
/// the units at sources and targets. Objects of the result are those unit
/// arrows; both carriers take their tokens from `g.arrows`.
pub fn restrict_groupoid(g: &Groupoid, subset: &BTreeSet<usize>) -> Result<Groupoid> {
    for &a in subset {
        g.arrows.check_index(a)?;
    }
    let tok = |a: usize| g.arrows.token(a).to_string();
    for &a in subset {
        if !subset.contains(&g.inv[a]) {
            return Err(restriction("not closed under inverse", tok(a)));
        }
        for u in [g.src_unit(a), g.tgt_unit(a)] {
            if !subset.contains(&u) {
                return Err(restriction("missing unit", format!("{} for {}", tok(u), tok(a))));
            }
        }
    }
    for (&(a, b), &c) in &g.mul {
        if subset.contains(&a) && subset.contains(&b) && !subset.contains(&c) {
            return Err(restriction("not closed under product", format!("{}·{}", tok(a), tok(b))));
        }
    }

    let arrows: Vec<usize> = subset.iter().copied().collect();
    let pos: BTreeMap<usize, usize> = arrows.iter().enumerate().map(|(k, &a)| (a, k)).collect();
    let unit_arrows: Vec<usize> = arrows.iter().copied().filter(|&a| g.is_unit(a)).collect();
    let obj_pos: BTreeMap<usize, usize> = unit_arrows.iter().enumerate().map(|(k, &u)| (u, k)).collect();

    let arrows_carrier = g.arrows.subset(format!("{}|sub", g.arrows.name()), &arrows)?;
    let objects_carrier = g.arrows.subset(format!("{}|sub.units", g.arrows.name()), &unit_arrows)?;
    Ok(Groupoid {
        objects: objects_carrier,
        arrows: arrows_carrier,
        src: arrows.iter().map(|&a| obj_pos[&g.src_unit(a)]).collect(),
        tgt: arrows.iter().map(|&a| obj_pos[&g.tgt_unit(a)]).collect(),
        unit: unit_arrows.iter().map(|u| pos[u]).collect(),
        inv: arrows.iter().map(|&a| pos[&g.inv[a]]).collect(),
        mul: g
            .mul
            .iter()
            .filter(|(&(a, b), _)| subset.contains(&a) && subset.contains(&b))
            .map(|(&(a, b), &c)| ((pos[&a], pos[&b]), pos[&c]))
            .collect(),
    })
}
