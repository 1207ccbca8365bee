//! Double groupoids: squares `D` with a vertical structure `D ⇉ V` (top),
//! a horizontal structure `D ⇉ H` (left), and side groupoids `V ⇉ M`
//! (right) and `H ⇉ M` (bottom).
//!
//! A square `a` has top edge `top.src[a]`, bottom edge `top.tgt[a]` (both in
//! `V`), right edge `left.src[a]` and left edge `left.tgt[a]` (both in `H`).
//! Vertical edges run from right to left and horizontal edges from top to
//! bottom, so `vertical(a, b)` puts `b` on top of `a` and
//! `horizontal(a, b)` puts `b` to the right of `a`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupoid::{validate_groupoid, Groupoid};
use crate::relcat::{Carrier, Relation};
use crate::report::CheckReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleGroupoid {
    /// Squares composed vertically, over `V`.
    pub top: Groupoid,
    /// Squares composed horizontally, over `H`.
    pub left: Groupoid,
    /// `V ⇉ M`.
    pub right: Groupoid,
    /// `H ⇉ M`.
    pub bottom: Groupoid,
}

/// The four edges of a square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Square {
    pub index: usize,
    pub top: usize,
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
}

impl DoubleGroupoid {
    pub fn squares(&self) -> &Carrier {
        &self.top.arrows
    }

    pub fn n_squares(&self) -> usize {
        self.top.n_arrows()
    }

    pub fn square(&self, a: usize) -> Square {
        Square {
            index: a,
            top: self.top.src[a],
            bottom: self.top.tgt[a],
            left: self.left.tgt[a],
            right: self.left.src[a],
        }
    }

    /// `b` stacked on top of `a`.
    pub fn vertical(&self, a: usize, b: usize) -> Option<usize> {
        self.top.mul(a, b)
    }

    /// `b` placed to the right of `a`.
    pub fn horizontal(&self, a: usize, b: usize) -> Option<usize> {
        self.left.mul(a, b)
    }

    /// Vertical identity square on a vertical edge.
    pub fn vertical_unit(&self, v: usize) -> usize {
        self.top.unit[v]
    }

    /// Horizontal identity square on a horizontal edge.
    pub fn horizontal_unit(&self, h: usize) -> usize {
        self.left.unit[h]
    }

    /// Both inverses: horizontal reflection then vertical reflection.
    pub fn double_inverse(&self, a: usize) -> usize {
        self.left.inv[self.top.inv[a]]
    }

    pub fn tok(&self, a: usize) -> String {
        self.squares().token(a).to_string()
    }

    /// Equality of all four groupoids, objects compared through units.
    pub fn same_up_to_units(&self, other: &DoubleGroupoid) -> Result<(), String> {
        for (label, a, b) in [
            ("top", &self.top, &other.top),
            ("left", &self.left, &other.left),
            ("right", &self.right, &other.right),
            ("bottom", &self.bottom, &other.bottom),
        ] {
            a.same_up_to_units(b).map_err(|w| format!("{label}: {w}"))?;
        }
        Ok(())
    }
}

fn first_failure<T>(items: impl IntoIterator<Item = T>, f: impl FnMut(T) -> Result<(), String>) -> Result<(), String> {
    items.into_iter().try_for_each(f)
}

fn check_carriers(d: &DoubleGroupoid) -> Result<(), String> {
    for (label, a, b) in [
        ("top and left arrows", &d.top.arrows, &d.left.arrows),
        ("top objects and right arrows", &d.top.objects, &d.right.arrows),
        ("left objects and bottom arrows", &d.left.objects, &d.bottom.arrows),
        ("right and bottom objects", &d.right.objects, &d.bottom.objects),
    ] {
        if a != b {
            return Err(format!("{label} differ: {a} vs {b}"));
        }
    }
    Ok(())
}

/// `map` is a groupoid morphism `from → to` over the object map `base`.
fn check_morphism(
    from: &Groupoid,
    to: &Groupoid,
    map: &[usize],
    base: &[usize],
) -> Result<(), String> {
    let t = |a: usize| from.arrows.token(a).to_string();
    first_failure(0..from.n_arrows(), |a| {
        let fa = map[a];
        if to.src[fa] != base[from.src[a]] {
            return Err(format!("source of image of {}", t(a)));
        }
        if to.tgt[fa] != base[from.tgt[a]] {
            return Err(format!("target of image of {}", t(a)));
        }
        if map[from.inv[a]] != to.inv[fa] {
            return Err(format!("inverse of {}", t(a)));
        }
        Ok(())
    })?;
    first_failure(0..from.n_objects(), |x| {
        if map[from.unit[x]] == to.unit[base[x]] {
            Ok(())
        } else {
            Err(format!("unit at {}", from.objects.token(x)))
        }
    })?;
    first_failure(from.mul.iter(), |(&(a, b), &ab)| {
        if to.mul(map[a], map[b]) == Some(map[ab]) {
            Ok(())
        } else {
            Err(format!("product {}·{}", t(a), t(b)))
        }
    })
}

/// Every axiom of a double groupoid, by name.
pub fn validate_double(d: &DoubleGroupoid) -> CheckReport {
    let mut report = CheckReport::new(format!("double groupoid on {}", d.squares()));
    let carriers = check_carriers(d);
    let ok = carriers.is_ok();
    report.record("carriers", "D, V, H, M shared between the four groupoids", carriers);
    if !ok {
        return report;
    }
    let mut tables_ok = true;
    for (label, g) in [("top", &d.top), ("left", &d.left), ("right", &d.right), ("bottom", &d.bottom)] {
        let sub = validate_groupoid(g);
        tables_ok &= sub.entry("tables").is_some_and(|e| e.passed);
        report.absorb(label, sub);
    }
    if !tables_ok {
        return report;
    }

    let (top, left, right, bottom) = (&d.top, &d.left, &d.right, &d.bottom);
    let morphisms: [(&str, &str, &Groupoid, &Groupoid, &[usize], &[usize]); 8] = [
        ("top edge", "horizontal structure → V ⇉ M", left, right, &top.src, &bottom.src),
        ("bottom edge", "horizontal structure → V ⇉ M", left, right, &top.tgt, &bottom.tgt),
        ("vertical unit", "V ⇉ M → horizontal structure", right, left, &top.unit, &bottom.unit),
        ("vertical inverse", "automorphism of the horizontal structure", left, left, &top.inv, &bottom.inv),
        ("right edge", "vertical structure → H ⇉ M", top, bottom, &left.src, &right.src),
        ("left edge", "vertical structure → H ⇉ M", top, bottom, &left.tgt, &right.tgt),
        ("horizontal unit", "H ⇉ M → vertical structure", bottom, top, &left.unit, &right.unit),
        ("horizontal inverse", "automorphism of the vertical structure", top, top, &left.inv, &right.inv),
    ];
    for (name, tag, from, to, map, base) in morphisms {
        report.record(format!("morphism {name}"), tag, check_morphism(from, to, map, base));
    }

    let corners: [(&str, &[usize], &[usize], &[usize], &[usize]); 4] = [
        ("top-right corner", &right.src, &top.src, &bottom.src, &left.src),
        ("top-left corner", &right.tgt, &top.src, &bottom.src, &left.tgt),
        ("bottom-right corner", &right.src, &top.tgt, &bottom.tgt, &left.src),
        ("bottom-left corner", &right.tgt, &top.tgt, &bottom.tgt, &left.tgt),
    ];
    for (name, v_end, v_edge, h_end, h_edge) in corners {
        report.record(
            name,
            "vertical and horizontal edges meet",
            first_failure(0..d.n_squares(), |a| {
                if v_end[v_edge[a]] == h_end[h_edge[a]] {
                    Ok(())
                } else {
                    Err(d.tok(a))
                }
            }),
        );
    }

    report.record("interchange", "2×2 blocks compose the same either way", check_interchange(d));

    report.record(
        "unit exchange",
        "vertical unit of 1_x = horizontal unit of 1_x",
        first_failure(0..right.n_objects(), |x| {
            if top.unit[right.unit[x]] == left.unit[bottom.unit[x]] {
                Ok(())
            } else {
                Err(right.objects.token(x).to_string())
            }
        }),
    );

    report.record(
        "double source surjective",
        "every (h, v) with matching sources is (right edge, top edge) of a square",
        check_double_source(d),
    );
    report
}

fn check_interchange(d: &DoubleGroupoid) -> Result<(), String> {
    // Blocks are enumerated from the bottom-left square outward.
    let by_left_edge = d.left.arrows_by_tgt();
    let by_bottom_edge = d.top.arrows_by_tgt();
    for bl in 0..d.n_squares() {
        for &tl in &by_bottom_edge[d.top.src[bl]] {
            for &br in &by_left_edge[d.left.src[bl]] {
                for &tr in &by_bottom_edge[d.top.src[br]] {
                    if d.left.tgt[tr] != d.left.src[tl] {
                        continue;
                    }
                    let rows = d
                        .horizontal(bl, br)
                        .zip(d.horizontal(tl, tr))
                        .and_then(|(b, t)| d.vertical(b, t));
                    let cols = d
                        .vertical(bl, tl)
                        .zip(d.vertical(br, tr))
                        .and_then(|(l, r)| d.horizontal(l, r));
                    if rows.is_none() || rows != cols {
                        return Err(format!(
                            "bottom ({}, {}), top ({}, {})",
                            d.tok(bl),
                            d.tok(br),
                            d.tok(tl),
                            d.tok(tr)
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_double_source(d: &DoubleGroupoid) -> Result<(), String> {
    let hit: BTreeSet<(usize, usize)> = (0..d.n_squares())
        .map(|a| (d.left.src[a], d.top.src[a]))
        .collect();
    for h in 0..d.bottom.n_arrows() {
        for v in 0..d.right.n_arrows() {
            if d.bottom.src[h] == d.right.src[v] && !hit.contains(&(h, v)) {
                return Err(format!(
                    "({}, {})",
                    d.bottom.arrows.token(h),
                    d.right.arrows.token(v)
                ));
            }
        }
    }
    Ok(())
}

/// Exchanges the roles of vertical and horizontal.
pub fn transpose_double(d: &DoubleGroupoid) -> Result<DoubleGroupoid> {
    let report = validate_double(d);
    if !report.passed() {
        return Err(Error::Validation(report));
    }
    Ok(DoubleGroupoid {
        top: d.left.clone(),
        left: d.top.clone(),
        right: d.bottom.clone(),
        bottom: d.right.clone(),
    })
}

/// Squares whose top and right edges are identities, in square order.
pub fn core_set(d: &DoubleGroupoid) -> Vec<usize> {
    (0..d.n_squares())
        .filter(|&a| d.right.is_unit(d.top.src[a]) && d.bottom.is_unit(d.left.src[a]))
        .collect()
}

/// Squares whose bottom and left edges are identities.
pub fn target_core_set(d: &DoubleGroupoid) -> Vec<usize> {
    (0..d.n_squares())
        .filter(|&a| d.right.is_unit(d.top.tgt[a]) && d.bottom.is_unit(d.left.tgt[a]))
        .collect()
}

/// The core as a carrier of its own, tokens taken from the squares.
pub fn core_carrier(d: &DoubleGroupoid) -> Result<Carrier> {
    core_named(d.squares(), &core_set(d))
}

/// A subset of the squares named as the core of `squares`.
pub fn core_named(squares: &Carrier, subset: &[usize]) -> Result<Carrier> {
    squares.subset(format!("core({})", squares.name()), subset)
}

fn core_error(reason: impl Into<String>, witness: impl Into<String>) -> Error {
    Error::Core {
        reason: reason.into(),
        witness: witness.into(),
    }
}

/// The core groupoid over `M`. The product of `c` and `c'` fills the 2×2
/// block with `c` bottom-left, `c'` top-right, and identity squares in the
/// other two slots; both evaluation orders must agree.
pub fn core_groupoid_square(d: &DoubleGroupoid) -> Result<Groupoid> {
    let report = validate_double(d);
    if !report.passed() {
        return Err(Error::Validation(report));
    }
    let core = core_set(d);
    let pos: BTreeMap<usize, usize> = core.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let in_core = |a: usize, what: &str| {
        pos.get(&a)
            .copied()
            .ok_or_else(|| core_error(format!("{what} leaves the core"), d.tok(a)))
    };
    let (right, bottom) = (&d.right, &d.bottom);
    let src: Vec<usize> = core.iter().map(|&c| right.src[d.top.src[c]]).collect();
    let tgt: Vec<usize> = core.iter().map(|&c| right.tgt[d.top.tgt[c]]).collect();

    let unit = (0..right.n_objects())
        .map(|x| in_core(d.vertical_unit(right.unit[x]), "unit"))
        .collect::<Result<Vec<_>>>()?;

    let inv = core
        .iter()
        .map(|&c| {
            let flipped = d.left.inv[c];
            let filler = d.horizontal_unit(bottom.inv[d.left.tgt[c]]);
            let x = d
                .vertical(flipped, filler)
                .ok_or_else(|| core_error("inverse filler does not fit", d.tok(c)))?;
            in_core(x, "inverse")
        })
        .collect::<Result<Vec<_>>>()?;

    let mut mul = BTreeMap::new();
    for (i, &c) in core.iter().enumerate() {
        for (j, &c2) in core.iter().enumerate() {
            if src[i] != tgt[j] {
                continue;
            }
            let witness = || format!("({}, {})", d.tok(c), d.tok(c2));
            let bl = c;
            let tr = c2;
            let tl = d.horizontal_unit(d.left.tgt[c2]);
            let br = d.vertical_unit(d.top.tgt[c2]);
            let columns = d
                .vertical(bl, tl)
                .zip(d.vertical(br, tr))
                .and_then(|(l, r)| d.horizontal(l, r));
            let rows = d
                .horizontal(bl, br)
                .zip(d.horizontal(tl, tr))
                .and_then(|(b, t)| d.vertical(b, t));
            let x = match (columns, rows) {
                (Some(x), Some(y)) if x == y => x,
                (Some(_), Some(_)) => return Err(core_error("block orders disagree", witness())),
                _ => return Err(core_error("block does not compose", witness())),
            };
            mul.insert((i, j), in_core(x, "product")?);
        }
    }

    let g = Groupoid {
        objects: right.objects.clone(),
        arrows: core_carrier(d)?,
        src,
        tgt,
        unit,
        inv,
        mul,
    };
    let report = validate_groupoid(&g);
    if !report.passed() {
        return Err(Error::Validation(report));
    }
    Ok(g)
}

/// Which boundary map's preimage of the identities is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Boundary {
    /// Top edge is an identity.
    #[serde(rename = "sH")]
    SourceH,
    /// Right edge is an identity.
    #[serde(rename = "sV")]
    SourceV,
    /// Bottom edge is an identity.
    #[serde(rename = "tH")]
    TargetH,
    /// Left edge is an identity.
    #[serde(rename = "tV")]
    TargetV,
}

impl Boundary {
    pub const ALL: [Boundary; 4] = [Boundary::SourceH, Boundary::SourceV, Boundary::TargetH, Boundary::TargetV];

    pub fn is_source(self) -> bool {
        matches!(self, Boundary::SourceH | Boundary::SourceV)
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::SourceH => "sH",
            Boundary::SourceV => "sV",
            Boundary::TargetH => "tH",
            Boundary::TargetV => "tV",
        })
    }
}

impl FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Boundary::ALL
            .into_iter()
            .find(|b| b.to_string() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown boundary `{s}`, expected sH, sV, tH or tV")))
    }
}

/// Squares on which the chosen edge is an identity.
pub fn coisotropic_subset(d: &DoubleGroupoid, which: Boundary) -> BTreeSet<usize> {
    (0..d.n_squares())
        .filter(|&a| match which {
            Boundary::SourceH => d.right.is_unit(d.top.src[a]),
            Boundary::SourceV => d.bottom.is_unit(d.left.src[a]),
            Boundary::TargetH => d.right.is_unit(d.top.tgt[a]),
            Boundary::TargetV => d.bottom.is_unit(d.left.tgt[a]),
        })
        .collect()
}

fn structure_error(reason: impl Into<String>, witness: impl Into<String>) -> Error {
    Error::Structure {
        reason: reason.into(),
        witness: witness.into(),
    }
}

/// Everything reachable from `a` by gluing an identity square onto the edge
/// opposite to the identity one.
pub fn leaf(d: &DoubleGroupoid, which: Boundary, a: usize) -> Result<BTreeSet<usize>> {
    let (right, bottom) = (&d.right, &d.bottom);
    let glue = |c: Option<usize>, edge: usize| {
        c.ok_or_else(|| structure_error("leaf gluing undefined", format!("{} with edge {edge}", d.tok(a))))
    };
    let mut out = BTreeSet::new();
    match which {
        Boundary::SourceH => {
            let m = right.src[d.top.src[a]];
            for h in (0..bottom.n_arrows()).filter(|&h| bottom.tgt[h] == m) {
                out.insert(glue(d.vertical(a, d.horizontal_unit(h)), h)?);
            }
        }
        Boundary::SourceV => {
            let m = bottom.src[d.left.src[a]];
            for v in (0..right.n_arrows()).filter(|&v| right.tgt[v] == m) {
                out.insert(glue(d.horizontal(a, d.vertical_unit(v)), v)?);
            }
        }
        Boundary::TargetH => {
            let m = right.tgt[d.top.tgt[a]];
            for h in (0..bottom.n_arrows()).filter(|&h| bottom.src[h] == m) {
                out.insert(glue(d.vertical(d.horizontal_unit(h), a), h)?);
            }
        }
        Boundary::TargetV => {
            let m = bottom.tgt[d.left.tgt[a]];
            for v in (0..right.n_arrows()).filter(|&v| right.src[v] == m) {
                out.insert(glue(d.horizontal(d.vertical_unit(v), a), v)?);
            }
        }
    }
    Ok(out)
}

/// The leaves of the coisotropic subset, checked to partition it, in order
/// of their smallest square.
pub fn leaf_partition(d: &DoubleGroupoid, which: Boundary) -> Result<Vec<BTreeSet<usize>>> {
    let subset = coisotropic_subset(d, which);
    let leaves: BTreeMap<usize, BTreeSet<usize>> = subset
        .iter()
        .map(|&a| Ok((a, leaf(d, which, a)?)))
        .collect::<Result<_>>()?;
    for (&a, l) in &leaves {
        if !l.contains(&a) {
            return Err(structure_error("square missing from its own leaf", d.tok(a)));
        }
        if let Some(&b) = l.iter().find(|b| !subset.contains(b)) {
            return Err(structure_error("leaf leaves the subset", format!("{} from {}", d.tok(b), d.tok(a))));
        }
        if let Some(&b) = l.iter().find(|b| leaves[b] != *l) {
            return Err(structure_error("leaves overlap", format!("{} and {}", d.tok(a), d.tok(b))));
        }
    }
    let distinct: BTreeSet<BTreeSet<usize>> = leaves.into_values().collect();
    let mut out: Vec<BTreeSet<usize>> = distinct.into_iter().collect();
    out.sort_by_key(|l| l.first().copied());
    Ok(out)
}

/// The square of the core a coisotropic square reduces to, by formula.
/// For source boundaries this glues the inverse identity square; for
/// target boundaries it glues and then reflects both ways.
pub fn reduce_square(d: &DoubleGroupoid, which: Boundary, a: usize) -> Option<usize> {
    let (right, bottom) = (&d.right, &d.bottom);
    match which {
        Boundary::SourceH => d.vertical(a, d.horizontal_unit(bottom.inv[d.left.src[a]])),
        Boundary::SourceV => d.horizontal(a, d.vertical_unit(right.inv[d.top.src[a]])),
        Boundary::TargetH => d
            .vertical(d.horizontal_unit(bottom.inv[d.left.tgt[a]]), a)
            .map(|x| d.double_inverse(x)),
        Boundary::TargetV => d
            .horizontal(d.vertical_unit(right.inv[d.top.tgt[a]]), a)
            .map(|x| d.double_inverse(x)),
    }
}

/// Graph of [`reduce_square`] as a relation from the squares to the core.
pub fn reduction_relation(d: &DoubleGroupoid, which: Boundary) -> Result<Relation> {
    let core = core_carrier(d)?;
    let pos: BTreeMap<usize, usize> = core_set(d).into_iter().enumerate().map(|(k, c)| (c, k)).collect();
    let pairs = coisotropic_subset(d, which)
        .into_iter()
        .map(|a| {
            let r = reduce_square(d, which, a)
                .ok_or_else(|| structure_error("reduction undefined", d.tok(a)))?;
            let c = pos
                .get(&r)
                .ok_or_else(|| structure_error("reduction leaves the core", format!("{} ↦ {}", d.tok(a), d.tok(r))))?;
            Ok((a, *c))
        })
        .collect::<Result<Vec<_>>>()?;
    Relation::new(d.squares().clone(), core, pairs)
}

/// The quotient by leaves, computed from the partition alone: each leaf is
/// sent to the unique square it shares with the core (source boundaries)
/// or with the target core, reflected both ways (target boundaries).
pub fn leaf_quotient(d: &DoubleGroupoid, which: Boundary) -> Result<Relation> {
    let core = core_carrier(d)?;
    let core_list = core_set(d);
    let pos: BTreeMap<usize, usize> = core_list.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let section: BTreeSet<usize> = if which.is_source() {
        core_list.iter().copied().collect()
    } else {
        target_core_set(d).into_iter().collect()
    };
    let mut pairs = Vec::new();
    for l in leaf_partition(d, which)? {
        let hits: Vec<usize> = l.intersection(&section).copied().collect();
        let [hit] = hits.as_slice() else {
            return Err(structure_error(
                format!("leaf meets the cross-section {} times", hits.len()),
                l.first().map(|&a| d.tok(a)).unwrap_or_default(),
            ));
        };
        let rep = if which.is_source() { *hit } else { d.double_inverse(*hit) };
        let c = *pos
            .get(&rep)
            .ok_or_else(|| structure_error("representative outside the core", d.tok(rep)))?;
        pairs.extend(l.iter().map(|&a| (a, c)));
    }
    Relation::new(d.squares().clone(), core, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cyclic_group, pair_double, symmetric_group_s3, trivial_double};
    use crate::relcat::is_reduction;

    #[test]
    fn examples_validate() {
        let z3 = cyclic_group(3).unwrap();
        for d in [trivial_double(&z3).unwrap(), pair_double(&z3).unwrap()] {
            let r = validate_double(&d);
            assert!(r.passed(), "{}", r.render_text());
            assert!(validate_double(&transpose_double(&d).unwrap()).passed());
        }
    }

    #[test]
    fn interchange_failure_is_reported() {
        let mut d = pair_double(&cyclic_group(2).unwrap()).unwrap();
        // Swap two horizontal products: the groupoid checks on `left` may or
        // may not catch it, interchange must.
        let keys: Vec<_> = d.left.mul.keys().copied().collect();
        let (k1, k2) = (keys[1], keys[2]);
        let (v1, v2) = (d.left.mul[&k1], d.left.mul[&k2]);
        d.left.mul.insert(k1, v2);
        d.left.mul.insert(k2, v1);
        let r = validate_double(&d);
        assert!(!r.passed());
    }

    #[test]
    fn carrier_mismatch_stops_early() {
        let mut d = trivial_double(&cyclic_group(2).unwrap()).unwrap();
        d.right = cyclic_group(3).unwrap();
        let r = validate_double(&d);
        assert_eq!(r.entries.len(), 1);
        assert!(!r.passed());
    }

    #[test]
    fn pair_double_has_all_source_pairs() {
        let d = pair_double(&cyclic_group(2).unwrap()).unwrap();
        assert!(check_double_source(&d).is_ok());
    }

    #[test]
    fn core_of_examples() {
        let s3 = symmetric_group_s3().unwrap();
        let c = core_groupoid_square(&trivial_double(&s3).unwrap()).unwrap();
        assert_eq!(c.n_arrows(), 1);
        let c = core_groupoid_square(&pair_double(&s3).unwrap()).unwrap();
        assert_eq!(c.n_arrows(), 6);
        let noncommutative = c.mul.iter().any(|(&(a, b), &x)| c.mul[&(b, a)] != x);
        assert!(noncommutative);
    }

    #[test]
    fn pair_core_is_the_group() {
        let z3 = cyclic_group(3).unwrap();
        let d = pair_double(&z3).unwrap();
        let c = core_groupoid_square(&d).unwrap();
        // Core squares are (g, 1); the product is that of the group.
        let tok = |k: usize| c.arrows.token(k).to_string();
        for (&(a, b), &x) in &c.mul {
            let first = |s: String| s.trim_start_matches('(').split(',').next().unwrap().to_owned();
            let (ga, gb, gx) = (first(tok(a)), first(tok(b)), first(tok(x)));
            let sum = (ga.parse::<usize>().unwrap() + gb.parse::<usize>().unwrap()) % 3;
            assert_eq!(gx, sum.to_string());
        }
    }

    #[test]
    fn leaves_partition_and_reduce() {
        let z3 = cyclic_group(3).unwrap();
        for d in [trivial_double(&z3).unwrap(), pair_double(&z3).unwrap()] {
            for which in Boundary::ALL {
                let leaves = leaf_partition(&d, which).unwrap();
                let union: BTreeSet<usize> = leaves.iter().flatten().copied().collect();
                assert_eq!(union, coisotropic_subset(&d, which));
                let formula = reduction_relation(&d, which).unwrap();
                assert_eq!(formula, leaf_quotient(&d, which).unwrap(), "{which}");
                assert!(is_reduction(&formula), "{which}");
            }
        }
    }

    #[test]
    fn boundary_names_round_trip() {
        for b in Boundary::ALL {
            assert_eq!(b.to_string().parse::<Boundary>().unwrap(), b);
        }
        assert!("xx".parse::<Boundary>().is_err());
    }
}
