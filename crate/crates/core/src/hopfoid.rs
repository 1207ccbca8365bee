//! Hopfoids: a carrier `D` over a base `C ⊆ D` with a *-comonoid
//! `(Δ, ε, star)`, target and source reductions `t, s: D → C`, a unit
//! coreduction `e: C → D`, a product `m` and an inverse `i`.
//!
//! All diagrams are written in diagrammatic order, the left-most relation
//! applied first.

use std::collections::{BTreeMap, BTreeSet};

use crate::doublegpd::{core_named, core_set, leaf, validate_double, Boundary, DoubleGroupoid};
use crate::error::{Error, Result};
use crate::groupoid::{check_star_monoid, from_star_monoid, restrict_groupoid, validate_groupoid, Groupoid, StarMonoid};
use crate::relcat::{classify, compose, is_coreduction, is_reduction, transpose, Carrier, Leg, Relation};
use crate::report::CheckReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hopfoid {
    pub carrier: Carrier,
    /// `C`, with tokens taken from `carrier`.
    pub base: Carrier,
    /// Positions of `C` inside `D`, ascending.
    pub base_set: Vec<usize>,
    /// `D → D × D`.
    pub delta: Relation,
    /// `D → pt`.
    pub epsilon: Relation,
    /// `D → D`, involutive.
    pub star: Relation,
    /// `D → C`.
    pub t: Relation,
    /// `D → C`.
    pub s: Relation,
    /// `C → D`.
    pub e: Relation,
    /// `D × D → D`.
    pub m: Relation,
    /// `D → D`.
    pub i: Relation,
}

pub const RELATION_NAMES: [&str; 8] = ["delta", "epsilon", "star", "t", "s", "e", "m", "i"];

impl Hopfoid {
    /// The eight structure relations in [`RELATION_NAMES`] order.
    pub fn relations(&self) -> [(&'static str, &Relation); 8] {
        [
            ("delta", &self.delta),
            ("epsilon", &self.epsilon),
            ("star", &self.star),
            ("t", &self.t),
            ("s", &self.s),
            ("e", &self.e),
            ("m", &self.m),
            ("i", &self.i),
        ]
    }

    pub fn relation_mut(&mut self, name: &str) -> Option<&mut Relation> {
        Some(match name {
            "delta" => &mut self.delta,
            "epsilon" => &mut self.epsilon,
            "star" => &mut self.star,
            "t" => &mut self.t,
            "s" => &mut self.s,
            "e" => &mut self.e,
            "m" => &mut self.m,
            "i" => &mut self.i,
            _ => return None,
        })
    }

    /// First relation (or carrier) on which two hopfoids differ.
    pub fn difference(&self, other: &Hopfoid) -> Option<String> {
        if self.carrier != other.carrier {
            return Some(format!("carriers differ: {} vs {}", self.carrier, other.carrier));
        }
        if self.base != other.base {
            return Some(format!("bases differ: {} vs {}", self.base, other.base));
        }
        self.relations()
            .into_iter()
            .zip(other.relations())
            .find_map(|((name, a), (_, b))| a.first_difference(b).map(|w| format!("{name}: {w}")))
    }
}

fn graph_of(dom: &Carrier, cod: &Carrier, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Relation> {
    Relation::new(dom.clone(), cod.clone(), pairs)
}

fn formula_error(what: &str, d: &DoubleGroupoid, a: usize) -> Error {
    Error::Structure {
        reason: format!("{what} undefined"),
        witness: d.tok(a),
    }
}

/// Builds the hopfoid of a double groupoid and checks every axiom on the
/// result.
pub fn build_hopfoid(d: &DoubleGroupoid) -> Result<Hopfoid> {
    let h = hopfoid_of(d)?;
    let report = check_hopfoid(&h);
    if !report.passed() {
        return Err(Error::Validation(report));
    }
    Ok(h)
}

/// The forward construction without the final axiom check.
pub fn hopfoid_of(d: &DoubleGroupoid) -> Result<Hopfoid> {
    let report = validate_double(d);
    if !report.passed() {
        return Err(Error::Validation(report));
    }
    let dd = d.squares().clone();
    let (top, left, right, bottom) = (&d.top, &d.left, &d.right, &d.bottom);
    let core = core_set(d);
    let base = core_named(&dd, &core)?;
    let pos: BTreeMap<usize, usize> = core.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let into_core = |what: &str, a: usize, x: Option<usize>| -> Result<usize> {
        let x = x.ok_or_else(|| formula_error(what, d, a))?;
        pos.get(&x).copied().ok_or_else(|| Error::Structure {
            reason: format!("{what} leaves the core"),
            witness: format!("{} ↦ {}", d.tok(a), d.tok(x)),
        })
    };

    // e: each core square goes to its leaf among squares with identity top edge.
    let mut e_pairs = Vec::new();
    for (k, &c) in core.iter().enumerate() {
        e_pairs.extend(leaf(d, Boundary::SourceH, c)?.into_iter().map(|a| (k, a)));
    }
    let e = graph_of(&base, &dd, e_pairs)?;

    // t: glue the vertical unit on the inverse of the top edge on the right.
    let t_pairs = (0..d.n_squares())
        .filter(|&a| bottom.is_unit(left.src[a]))
        .map(|a| {
            let glued = d.horizontal(a, d.vertical_unit(right.inv[top.src[a]]));
            Ok((a, into_core("target", a, glued)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let t = graph_of(&dd, &base, t_pairs)?;

    // s: reflect both ways, then glue the vertical unit on the bottom edge.
    let s_pairs = (0..d.n_squares())
        .filter(|&a| bottom.is_unit(left.tgt[a]))
        .map(|a| {
            let glued = d.horizontal(d.double_inverse(a), d.vertical_unit(top.tgt[a]));
            Ok((a, into_core("source", a, glued)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let s = graph_of(&dd, &base, s_pairs)?;

    let pair = Carrier::square(&dd);
    let groups = [dd.clone(), dd.clone()];
    let m = graph_of(
        &pair,
        &dd,
        left.mul.iter().map(|(&(a, b), &c)| (Carrier::join(&[a, b], &groups), c)),
    )?;
    let delta = graph_of(
        &dd,
        &pair,
        top.mul.iter().map(|(&(a, b), &c)| (c, Carrier::join(&[a, b], &groups))),
    )?;
    let epsilon = Relation::subset_as_corelation(&dd, top.unit.iter().copied())?;
    let star = Relation::graph(&dd, &dd, &top.inv)?;
    let i_map: Vec<usize> = (0..d.n_squares()).map(|a| d.double_inverse(a)).collect();
    let i = Relation::graph(&dd, &dd, &i_map)?;

    Ok(Hopfoid {
        carrier: dd,
        base,
        base_set: core,
        delta,
        epsilon,
        star,
        t,
        s,
        e,
        m,
        i,
    })
}

/// The comonoid with arrows reversed, as a *-monoid.
pub fn comonoid_as_monoid(h: &Hopfoid) -> StarMonoid {
    StarMonoid::from_comonoid(&h.carrier, &h.delta, &h.epsilon, &h.star)
}

fn bijection(r: &Relation) -> Result<(), String> {
    let c = classify(r);
    if r.dom() != r.cod() {
        return Err(format!("{} → {} is not an endomorphism", r.dom(), r.cod()));
    }
    match r.as_map() {
        Some(_) if c.surjective && c.injective => Ok(()),
        _ => Err(format!(
            "total map: {}, injective: {}, surjective: {}",
            r.as_map().is_some(),
            c.injective,
            c.surjective
        )),
    }
}

fn predicate(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(format!("{what} fails"))
    }
}

/// Every hopfoid axiom as an exact relation equality, one entry per clause.
pub fn check_hopfoid(h: &Hopfoid) -> CheckReport {
    let dd = &h.carrier;
    let cc = &h.base;
    let mut report = CheckReport::new(format!("hopfoid on {dd} over {cc}"));

    let id = Leg::id(dd);
    let id_c = Leg::id(cc);
    let sigma = Leg::Swap(dd.clone(), dd.clone());
    let [delta, eps, star, t, s, e, m, i] = h.relations().map(|(_, r)| Leg::from(r));
    let ei = || Leg::seq([e.clone(), i.clone()]);

    report.absorb("comonoid", check_star_monoid(&comonoid_as_monoid(h)));

    report.record_diagrams(
        "(i) sections",
        "t∘e = id_C = s∘e",
        vec![
            ("t∘e", Leg::seq([e.clone(), t.clone()]), Ok(id_c.clone())),
            ("s∘e", Leg::seq([e.clone(), s.clone()]), Ok(id_c.clone())),
        ],
    );
    report.record_diagrams(
        "(ii) inverse exchanges target and source",
        "t∘i = s, s∘i = t",
        vec![
            ("t∘i", Leg::seq([i.clone(), t.clone()]), Ok(s.clone())),
            ("s∘i", Leg::seq([i.clone(), s.clone()]), Ok(t.clone())),
        ],
    );
    report.record_diagrams(
        "(iii) associativity",
        "m∘(m×id) = m∘(id×m)",
        vec![(
            "associativity",
            Leg::seq([Leg::tensor([m.clone(), id.clone()]), m.clone()]),
            Leg::seq([Leg::tensor([id.clone(), m.clone()]), m.clone()]),
        )],
    );
    report.record_diagrams(
        "(iv) antipode",
        "i² = id, i∘star = star∘i, i∘m = m∘(i×i)∘σ",
        vec![
            ("i²", Leg::seq([i.clone(), i.clone()]), Ok(id.clone())),
            (
                "i∘star",
                Leg::seq([star.clone(), i.clone()]),
                Leg::seq([i.clone(), star.clone()]),
            ),
            (
                "i∘m",
                Leg::seq([m.clone(), i.clone()]),
                Leg::seq([sigma.clone(), Leg::tensor([i.clone(), i.clone()]), m.clone()]),
            ),
        ],
    );
    report.record_diagrams(
        "(v) product and coproduct",
        "Δ∘m = (m×m)∘(id×σ×id)∘(Δ×Δ)",
        vec![(
            "Δ∘m",
            Leg::seq([m.clone(), delta.clone()]),
            Leg::seq([
                Leg::tensor([delta.clone(), delta.clone()]),
                Leg::tensor([id.clone(), sigma.clone(), id.clone()]),
                Leg::tensor([m.clone(), m.clone()]),
            ]),
        )],
    );
    report.record_diagrams(
        "(vi) units",
        "m∘(e×id)∘(t×id)∘Δ = id = m∘(id×(i∘e))∘(id×s)∘Δ",
        vec![
            (
                "left unit",
                Leg::seq([
                    delta.clone(),
                    Leg::tensor([t.clone(), id.clone()]),
                    Leg::tensor([e.clone(), id.clone()]),
                    m.clone(),
                ]),
                Ok(id.clone()),
            ),
            (
                "right unit",
                ei().and_then(|ei| {
                    Leg::seq([
                        delta.clone(),
                        Leg::tensor([id.clone(), s.clone()]),
                        Leg::tensor([id.clone(), ei]),
                        m.clone(),
                    ])
                }),
                Ok(id.clone()),
            ),
        ],
    );
    report.record_diagrams(
        "(vii) inverses",
        "m∘(id×i)∘Δ = e∘t, m∘(i×id)∘Δ = i∘e∘s",
        vec![
            (
                "right inverse",
                Leg::seq([delta.clone(), Leg::tensor([id.clone(), i.clone()]), m.clone()]),
                Leg::seq([t.clone(), e.clone()]),
            ),
            (
                "left inverse",
                Leg::seq([delta.clone(), Leg::tensor([i.clone(), id.clone()]), m.clone()]),
                ei().and_then(|ei| Leg::seq([s.clone(), ei])),
            ),
        ],
    );

    report.record_diagrams(
        "counit preserved by i",
        "ε∘i = ε",
        vec![("ε∘i", Leg::seq([i.clone(), eps.clone()]), Ok(eps.clone()))],
    );
    report.record("i bijection", "i is a bijection of D", bijection(&h.i));
    report.record("star bijection", "star is a bijection of D", bijection(&h.star));
    report.record("t reduction", "t∘tᵗ = id_C", predicate(is_reduction(&h.t), "t∘tᵗ = id_C"));
    report.record("s reduction", "s∘sᵗ = id_C", predicate(is_reduction(&h.s), "s∘sᵗ = id_C"));
    report.record("e coreduction", "eᵗ∘e = id_C", predicate(is_coreduction(&h.e), "eᵗ∘e = id_C"));
    report
}

/// The Hopf-object axioms, for hopfoids whose base is a single element:
/// there the target and source collapse to the counit.
pub fn check_hopf_object(h: &Hopfoid) -> CheckReport {
    let dd = &h.carrier;
    let mut report = CheckReport::new(format!("Hopf object on {dd}"));
    if h.base.len() != 1 {
        report.record("point base", "|C| = 1", Err(format!("|C| = {}", h.base.len())));
        return report;
    }
    let pt = Carrier::pt();
    let unit = match Relation::new(pt.clone(), dd.clone(), h.e.pairs().iter().map(|&(_, a)| (0, a))) {
        Ok(r) => Leg::from(r),
        Err(err) => {
            report.record("point base", "|C| = 1", Err(err.to_string()));
            return report;
        }
    };
    report.record("point base", "|C| = 1", Ok(()));
    let id = Leg::id(dd);
    let sigma = Leg::Swap(dd.clone(), dd.clone());
    let [delta, eps, _, _, _, _, m, i] = h.relations().map(|(_, r)| Leg::from(r));

    report.record_diagrams(
        "monoid",
        "associativity and unit",
        vec![
            (
                "associativity",
                Leg::seq([Leg::tensor([m.clone(), id.clone()]), m.clone()]),
                Leg::seq([Leg::tensor([id.clone(), m.clone()]), m.clone()]),
            ),
            ("left unit", Leg::seq([Leg::tensor([unit.clone(), id.clone()]), m.clone()]), Ok(id.clone())),
            ("right unit", Leg::seq([Leg::tensor([id.clone(), unit.clone()]), m.clone()]), Ok(id.clone())),
        ],
    );
    report.record_diagrams(
        "comonoid",
        "coassociativity and counit",
        vec![
            (
                "coassociativity",
                Leg::seq([delta.clone(), Leg::tensor([delta.clone(), id.clone()])]),
                Leg::seq([delta.clone(), Leg::tensor([id.clone(), delta.clone()])]),
            ),
            ("left counit", Leg::seq([delta.clone(), Leg::tensor([eps.clone(), id.clone()])]), Ok(id.clone())),
            ("right counit", Leg::seq([delta.clone(), Leg::tensor([id.clone(), eps.clone()])]), Ok(id.clone())),
        ],
    );
    report.record_diagrams(
        "bimonoid",
        "Δ and ε are monoid morphisms",
        vec![
            (
                "Δ∘m",
                Leg::seq([m.clone(), delta.clone()]),
                Leg::seq([
                    Leg::tensor([delta.clone(), delta.clone()]),
                    Leg::tensor([id.clone(), sigma, id.clone()]),
                    Leg::tensor([m.clone(), m.clone()]),
                ]),
            ),
            ("ε∘m", Leg::seq([m.clone(), eps.clone()]), Ok(Leg::tensor([eps.clone(), eps.clone()]))),
            ("Δ∘unit", Leg::seq([unit.clone(), delta.clone()]), Ok(Leg::tensor([unit.clone(), unit.clone()]))),
            ("ε∘unit", Leg::seq([unit.clone(), eps.clone()]), Ok(Leg::id(&pt))),
        ],
    );
    report.record_diagrams(
        "antipode",
        "m∘(id×i)∘Δ = unit∘ε = m∘(i×id)∘Δ",
        vec![
            (
                "right",
                Leg::seq([delta.clone(), Leg::tensor([id.clone(), i.clone()]), m.clone()]),
                Leg::seq([eps.clone(), unit.clone()]),
            ),
            (
                "left",
                Leg::seq([delta, Leg::tensor([i, id]), m]),
                Leg::seq([eps, unit]),
            ),
        ],
    );
    report
}

/// The product, unit and involution induced on `C`.
pub fn core_monoid(h: &Hopfoid) -> Result<StarMonoid> {
    let report = check_hopfoid(h);
    if !report.passed() {
        return Err(Error::Validation(report));
    }
    Ok(core_monoid_of(h))
}

fn core_monoid_of(h: &Hopfoid) -> StarMonoid {
    let et = transpose(&h.e);
    let eval = |steps: Vec<Leg>| Leg::seq(steps).map(|l| l.eval()).expect("hopfoid carriers are consistent");
    let m = eval(vec![
        Leg::tensor([Leg::from(&h.e), Leg::from(&h.e)]),
        Leg::from(&h.m),
        Leg::from(&et),
    ]);
    let horizontal_units = horizontal_unit_subset(h);
    let e = eval(vec![Leg::from(horizontal_units), Leg::from(&et)]);
    let star = eval(vec![
        Leg::from(&h.e),
        Leg::from(&h.star),
        Leg::from(&h.i),
        Leg::from(&et),
    ]);
    StarMonoid {
        carrier: h.base.clone(),
        m,
        e,
        star,
    }
}

/// The horizontal identity squares as `pt → D`: everything the units of
/// the comonoid reach through the target and the unit.
fn horizontal_unit_subset(h: &Hopfoid) -> Relation {
    let steps = [transpose(&h.epsilon), h.t.clone(), h.e.clone()];
    let r = compose(&steps[0], &steps[1]).and_then(|r| compose(&r, &steps[2]));
    r.unwrap_or_else(|_| Relation::subset_as_relation(&h.carrier, []).expect("empty subset"))
}

fn reverse<T>(stage: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Reverse {
        stage,
        source: Box::new(e),
    })
}

/// Recovers the double groupoid of a hopfoid. `V` is the set of units of
/// the comonoid, `H` the image of those units under target then unit, and
/// `M = V ∩ H`; all three are carriers of tokens of `D`.
pub fn build_double(h: &Hopfoid) -> Result<DoubleGroupoid> {
    let dd = &h.carrier;
    let top = reverse("vertical groupoid", from_star_monoid(&comonoid_as_monoid(h)))?;
    let h_set: BTreeSet<usize> = horizontal_unit_subset(h).as_subset();
    let left = reverse(
        "horizontal groupoid",
        compose(&h.star, &h.i).and_then(|star| {
            from_star_monoid(&StarMonoid {
                carrier: dd.clone(),
                m: h.m.clone(),
                e: Relation::subset_as_relation(dd, h_set.iter().copied())?,
                star,
            })
        }),
    )?;
    let v_set: BTreeSet<usize> = top.unit.iter().copied().collect();
    let m_set: Vec<usize> = v_set.intersection(&h_set).copied().collect();
    let v_list: Vec<usize> = v_set.iter().copied().collect();
    let h_list: Vec<usize> = h_set.iter().copied().collect();

    let right = reverse("vertical edges", restrict_groupoid(&left, &v_set))?;
    let bottom = reverse("horizontal edges", restrict_groupoid(&top, &h_set))?;
    let vc = dd.subset("V", &v_list)?;
    let hc = dd.subset("H", &h_list)?;
    let mc = dd.subset("M", &m_set)?;
    let d = DoubleGroupoid {
        top: top.with_carriers(vc.clone(), dd.clone())?,
        left: left.with_carriers(hc.clone(), dd.clone())?,
        right: right.with_carriers(mc.clone(), vc)?,
        bottom: bottom.with_carriers(mc, hc)?,
    };
    let report = validate_double(&d);
    if !report.passed() {
        return reverse("validation", Err(Error::Validation(report)));
    }
    Ok(d)
}

fn compare_groupoids(
    report: &mut CheckReport,
    name: &str,
    ambient: &Carrier,
    (a, a_embed): (&Groupoid, &[usize]),
    (b, b_embed): (&Groupoid, &[usize]),
) {
    let outcome = match a.embedded(a_embed).difference(&b.embedded(b_embed), ambient) {
        None => Ok(()),
        Some(w) => Err(w),
    };
    report.record(name, "equal after identifying objects with unit squares", outcome);
}

/// Double groupoid → hopfoid → double groupoid, compared structure by
/// structure with every edge identified with its identity square.
pub fn roundtrip_double(d: &DoubleGroupoid) -> CheckReport {
    let mut report = CheckReport::new(format!("double groupoid round trip on {}", d.squares()));
    let back = match build_hopfoid(d).and_then(|h| build_double(&h)) {
        Ok(back) => back,
        Err(err) => {
            report.record("rebuild", "both constructions succeed", Err(err.to_string()));
            return report;
        }
    };
    report.record("rebuild", "both constructions succeed", Ok(()));
    let dd = d.squares();
    let ident: Vec<usize> = (0..dd.len()).collect();
    compare_groupoids(&mut report, "vertical groupoid", dd, (&d.top, &ident), (&back.top, &ident));
    compare_groupoids(&mut report, "horizontal groupoid", dd, (&d.left, &ident), (&back.left, &ident));
    compare_groupoids(
        &mut report,
        "vertical edges",
        dd,
        (&d.right, &d.top.unit),
        (&back.right, &back.top.unit),
    );
    compare_groupoids(
        &mut report,
        "horizontal edges",
        dd,
        (&d.bottom, &d.left.unit),
        (&back.bottom, &back.left.unit),
    );
    report
}

/// Hopfoid → double groupoid → hopfoid, relation by relation.
pub fn roundtrip_hopfoid(h: &Hopfoid) -> CheckReport {
    let mut report = CheckReport::new(format!("hopfoid round trip on {}", h.carrier));
    let back = match build_double(h).and_then(|d| hopfoid_of(&d)) {
        Ok(back) => back,
        Err(err) => {
            report.record("rebuild", "both constructions succeed", Err(err.to_string()));
            return report;
        }
    };
    report.record("rebuild", "both constructions succeed", Ok(()));
    report.record(
        "base",
        "same base",
        if h.base == back.base {
            Ok(())
        } else {
            Err(format!("{} vs {}", h.base, back.base))
        },
    );
    for ((name, a), (_, b)) in h.relations().into_iter().zip(back.relations()) {
        report.record(
            name,
            "relations equal",
            a.first_difference(b).map_or(Ok(()), Err),
        );
    }
    report
}

/// The hopfoid of the pair double groupoid of a group, written out by
/// hand: `t(g,h) = (gh⁻¹, 1)`, `s(g,h) = (h⁻¹g, 1)`, `i(g,h) = (h⁻¹, g⁻¹)`,
/// `m((g,a),(h,b)) = (gh, ab)`, `Δ(g,h) = {((g,k),(k,h)) : k ∈ G}`.
pub fn inertia_hopfoid_oracle(g: &Groupoid) -> Result<Hopfoid> {
    let report = validate_groupoid(g);
    if !report.passed() {
        return Err(Error::Validation(report));
    }
    if g.n_objects() != 1 {
        return Err(Error::Invalid(format!("{} is not a group", g.arrows)));
    }
    let n = g.n_arrows();
    let one = g.unit[0];
    let mul = |a: usize, b: usize| g.mul[&(a, b)];
    let inv = |a: usize| g.inv[a];
    let sq = |x: usize, y: usize| x * n + y;

    let tokens = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| crate::relcat::Token::pair(g.arrows.token(x), g.arrows.token(y)))
        .collect();
    let dd = Carrier::atomic(format!("pair({})", g.arrows.name()), tokens)?;
    let base_set: Vec<usize> = (0..n).map(|x| sq(x, one)).collect::<BTreeSet<_>>().into_iter().collect();
    let base = core_named(&dd, &base_set)?;
    let core_pos: BTreeMap<usize, usize> = base_set.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let c = |x: usize| core_pos[&sq(x, one)];
    let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    let pair = Carrier::square(&dd);
    let groups = &[dd.clone(), dd.clone()];

    Ok(Hopfoid {
        t: graph_of(&dd, &base, pairs().map(|(x, y)| (sq(x, y), c(mul(x, inv(y))))))?,
        s: graph_of(&dd, &base, pairs().map(|(x, y)| (sq(x, y), c(mul(inv(y), x)))))?,
        e: graph_of(&base, &dd, (0..n).map(|x| (c(x), sq(x, one))))?,
        i: graph_of(&dd, &dd, pairs().map(|(x, y)| (sq(x, y), sq(inv(y), inv(x)))))?,
        m: graph_of(
            &pair,
            &dd,
            pairs().flat_map(|(x, a)| {
                pairs().map(move |(y, b)| (Carrier::join(&[sq(x, a), sq(y, b)], groups), sq(mul(x, y), mul(a, b))))
            }),
        )?,
        delta: graph_of(
            &dd,
            &pair,
            pairs().flat_map(|(x, y)| (0..n).map(move |k| (sq(x, y), Carrier::join(&[sq(x, k), sq(k, y)], groups)))),
        )?,
        epsilon: Relation::subset_as_corelation(&dd, (0..n).map(|x| sq(x, x)))?,
        star: graph_of(&dd, &dd, pairs().map(|(x, y)| (sq(x, y), sq(y, x))))?,
        carrier: dd,
        base,
        base_set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doublegpd::{core_groupoid_square, reduction_relation};
    use crate::generators::{cyclic_group, pair_double, symmetric_group_s3, trivial_double};
    use crate::relcat::Token;

    fn tok(s: &str) -> Token {
        let parts: Vec<&str> = s.trim_matches(|c| c == '(' || c == ')').split(',').collect();
        Token::pair(Token::atom(parts[0]), Token::atom(parts[1]))
    }

    #[test]
    fn pair_z3_target_and_inverse() {
        let h = build_hopfoid(&pair_double(&cyclic_group(3).unwrap()).unwrap()).unwrap();
        assert!(h.t.token_pairs().contains(&(tok("(1,2)"), tok("(2,0)"))));
        assert!(h.i.token_pairs().contains(&(tok("(1,0)"), tok("(0,2)"))));
        assert!(check_hopfoid(&h).passed());
    }

    #[test]
    fn trivial_z2_sections() {
        let h = build_hopfoid(&trivial_double(&cyclic_group(2).unwrap()).unwrap()).unwrap();
        assert_eq!(compose(&h.e, &h.t).unwrap(), Relation::identity(&h.base));
        assert_eq!(compose(&h.e, &transpose(&h.e)).unwrap(), Relation::identity(&h.base));
        assert!(is_reduction(&transpose(&h.e)));
    }

    #[test]
    fn identity_inverse_breaks_inverse_clause() {
        let mut h = build_hopfoid(&pair_double(&symmetric_group_s3().unwrap()).unwrap()).unwrap();
        h.i = Relation::identity(&h.carrier);
        let r = check_hopfoid(&h);
        let e = r.entry("(vii) inverses").unwrap();
        assert!(!e.passed);
        assert!(e.witness.is_some());
    }

    #[test]
    fn noncommutative_target_differs_from_source() {
        let h = build_hopfoid(&pair_double(&symmetric_group_s3().unwrap()).unwrap()).unwrap();
        assert_ne!(h.t, h.s);
        assert_eq!(compose(&h.e, &h.t).unwrap(), compose(&h.e, &h.s).unwrap());
    }

    #[test]
    fn point_base_is_a_hopf_object() {
        let h = build_hopfoid(&trivial_double(&symmetric_group_s3().unwrap()).unwrap()).unwrap();
        assert_eq!(h.base.len(), 1);
        let r = check_hopf_object(&h);
        assert!(r.passed(), "{}", r.render_text());
        let h = build_hopfoid(&pair_double(&cyclic_group(2).unwrap()).unwrap()).unwrap();
        assert!(!check_hopf_object(&h).passed());
    }

    #[test]
    fn core_monoid_matches_square_core() {
        let z3 = cyclic_group(3).unwrap();
        for d in [trivial_double(&z3).unwrap(), pair_double(&z3).unwrap()] {
            let h = build_hopfoid(&d).unwrap();
            let sm = core_monoid(&h).unwrap();
            assert!(check_star_monoid(&sm).passed());
            let from_monoid = from_star_monoid(&sm).unwrap();
            let from_squares = core_groupoid_square(&d).unwrap();
            from_squares.same_up_to_units(&from_monoid).unwrap();
        }
    }

    #[test]
    fn unit_transpose_is_the_source_reduction() {
        let d = pair_double(&cyclic_group(3).unwrap()).unwrap();
        let h = build_hopfoid(&d).unwrap();
        assert_eq!(reduction_relation(&d, Boundary::SourceH).unwrap(), transpose(&h.e));
        assert_eq!(reduction_relation(&d, Boundary::SourceV).unwrap(), h.t);
        assert_eq!(reduction_relation(&d, Boundary::TargetV).unwrap(), h.s);
    }

    #[test]
    fn round_trips() {
        let s3 = symmetric_group_s3().unwrap();
        for d in [trivial_double(&cyclic_group(2).unwrap()).unwrap(), pair_double(&s3).unwrap()] {
            let r = roundtrip_double(&d);
            assert!(r.passed(), "{}", r.render_text());
            let h = build_hopfoid(&d).unwrap();
            let r = roundtrip_hopfoid(&h);
            assert!(r.passed(), "{}", r.render_text());
            let back = build_double(&h).unwrap();
            let eps: BTreeSet<usize> = h.epsilon.domain();
            assert_eq!(back.top.unit.iter().copied().collect::<BTreeSet<_>>(), eps);
        }
    }

    #[test]
    fn oracle_matches_construction() {
        for g in [cyclic_group(2).unwrap(), cyclic_group(3).unwrap(), symmetric_group_s3().unwrap()] {
            let oracle = inertia_hopfoid_oracle(&g).unwrap();
            let built = build_hopfoid(&pair_double(&g).unwrap()).unwrap();
            assert_eq!(oracle.difference(&built), None);
        }
        let z3 = inertia_hopfoid_oracle(&cyclic_group(3).unwrap()).unwrap();
        assert!(z3.t.token_pairs().contains(&(tok("(1,2)"), tok("(2,0)"))));
        let z2 = inertia_hopfoid_oracle(&cyclic_group(2).unwrap()).unwrap();
        let x = z2.carrier.index_of(&tok("(0,1)")).unwrap();
        assert_eq!(z2.delta.image_of(x).count(), 2);
    }
}
