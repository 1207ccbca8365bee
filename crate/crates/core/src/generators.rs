//! Example families and the small-instance corpus.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::doublegpd::{transpose_double, validate_double, DoubleGroupoid};
use crate::error::{Error, Result};
use crate::groupoid::{validate_groupoid, Groupoid};
use crate::relcat::{Carrier, Token};

const OBJECT: &str = "*";

fn table_error(name: &str, axiom: &str, witness: String) -> Error {
    Error::Table {
        name: name.to_owned(),
        axiom: axiom.to_owned(),
        witness,
    }
}

/// A one-object groupoid from a multiplication table, `table[g][h] = gh`.
pub fn group_from_table(name: &str, elements: Vec<Token>, table: &[Vec<usize>]) -> Result<Groupoid> {
    let n = elements.len();
    let tok = |k: usize| elements[k].to_string();
    if n == 0 {
        return Err(table_error(name, "identity", "empty table".into()));
    }
    if table.len() != n || table.iter().any(|row| row.len() != n) {
        return Err(table_error(name, "closure", format!("table is not {n}×{n}")));
    }
    for (g, row) in table.iter().enumerate() {
        if let Some(h) = row.iter().position(|&x| x >= n) {
            return Err(table_error(name, "closure", format!("{}·{}", tok(g), tok(h))));
        }
    }
    for g in 0..n {
        for h in 0..n {
            for k in 0..n {
                if table[table[g][h]][k] != table[g][table[h][k]] {
                    return Err(table_error(
                        name,
                        "associativity",
                        format!("({}, {}, {})", tok(g), tok(h), tok(k)),
                    ));
                }
            }
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        .ok_or_else(|| table_error(name, "identity", "no two-sided identity".into()))?;
    let inv = (0..n)
        .map(|g| {
            (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| table_error(name, "inverse", tok(g)))
        })
        .collect::<Result<Vec<_>>>()?;

    let mul = (0..n)
        .flat_map(|g| (0..n).map(move |h| (g, h)))
        .map(|(g, h)| ((g, h), table[g][h]))
        .collect();
    let g = Groupoid {
        objects: Carrier::atomic(format!("{name}.obj"), vec![Token::atom(OBJECT)])?,
        arrows: Carrier::atomic(name, elements)?,
        src: vec![0; n],
        tgt: vec![0; n],
        unit: vec![identity],
        inv,
        mul,
    };
    debug_assert!(validate_groupoid(&g).passed());
    Ok(g)
}

pub fn cyclic_group(n: usize) -> Result<Groupoid> {
    let elements = (0..n).map(|k| Token::atom(k.to_string())).collect();
    let table: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect();
    group_from_table(&format!("Z{n}"), elements, &table)
}

/// Permutations of `{1,2,3}` in one-line notation, composed as functions:
/// `(στ)(x) = σ(τ(x))`.
pub fn symmetric_group_s3() -> Result<Groupoid> {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let name = |p: &[usize; 3]| p.iter().map(|&x| (x + 1).to_string()).collect::<String>();
    let index: BTreeMap<[usize; 3], usize> = perms.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|s| {
            perms
                .iter()
                .map(|t| index[&[s[t[0]], s[t[1]], s[t[2]]]])
                .collect()
        })
        .collect();
    group_from_table("S3", perms.iter().map(|p| Token::atom(name(p))).collect(), &table)
}

/// Points `p0 … p{n-1}`.
pub fn points(name: &str, n: usize) -> Result<Carrier> {
    Carrier::atomic(name, (0..n).map(|k| Token::atom(format!("p{k}"))).collect())
}

/// Only identity arrows.
pub fn trivial_groupoid(objects: &Carrier) -> Groupoid {
    let n = objects.len();
    Groupoid {
        objects: objects.clone(),
        arrows: objects.clone(),
        src: (0..n).collect(),
        tgt: (0..n).collect(),
        unit: (0..n).collect(),
        inv: (0..n).collect(),
        mul: (0..n).map(|x| ((x, x), x)).collect(),
    }
}

/// Arrows `(x, y)` from `y` to `x`; `(x, y)(y, z) = (x, z)`.
pub fn pair_groupoid(objects: &Carrier) -> Result<Groupoid> {
    let n = objects.len();
    let idx = |x: usize, y: usize| x * n + y;
    let tokens = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| Token::pair(objects.token(x), objects.token(y)))
        .collect();
    let arrows = Carrier::atomic(format!("pair({})", objects.name()), tokens)?;
    let mut mul = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                mul.insert((idx(x, y), idx(y, z)), idx(x, z));
            }
        }
    }
    Ok(Groupoid {
        objects: objects.clone(),
        arrows,
        src: (0..n * n).map(|a| a % n).collect(),
        tgt: (0..n * n).map(|a| a / n).collect(),
        unit: (0..n).map(|x| idx(x, x)).collect(),
        inv: (0..n * n).map(|a| idx(a % n, a / n)).collect(),
        mul,
    })
}

/// Componentwise structure on `G × K`; tokens are pairs.
pub fn product_groupoid(g: &Groupoid, k: &Groupoid) -> Result<Groupoid> {
    let (na, nk) = (k.n_arrows(), k.n_objects());
    let arrow = |a: usize, b: usize| a * na + b;
    let object = |x: usize, y: usize| x * nk + y;
    let arrows = Carrier::atomic(
        format!("{}×{}", g.arrows.name(), k.arrows.name()),
        (0..g.n_arrows())
            .flat_map(|a| (0..na).map(move |b| (a, b)))
            .map(|(a, b)| Token::pair(g.arrows.token(a), k.arrows.token(b)))
            .collect(),
    )?;
    let objects = Carrier::atomic(
        format!("{}×{}", g.objects.name(), k.objects.name()),
        (0..g.n_objects())
            .flat_map(|x| (0..nk).map(move |y| (x, y)))
            .map(|(x, y)| Token::pair(g.objects.token(x), k.objects.token(y)))
            .collect(),
    )?;
    let pairs: Vec<(usize, usize)> = (0..g.n_arrows())
        .flat_map(|a| (0..na).map(move |b| (a, b)))
        .collect();
    let mut mul = BTreeMap::new();
    for (&(a, c), &ac) in &g.mul {
        for (&(b, d), &bd) in &k.mul {
            mul.insert((arrow(a, b), arrow(c, d)), arrow(ac, bd));
        }
    }
    Ok(Groupoid {
        objects,
        arrows,
        src: pairs.iter().map(|&(a, b)| object(g.src[a], k.src[b])).collect(),
        tgt: pairs.iter().map(|&(a, b)| object(g.tgt[a], k.tgt[b])).collect(),
        unit: (0..g.n_objects())
            .flat_map(|x| (0..nk).map(move |y| (x, y)))
            .map(|(x, y)| arrow(g.unit[x], k.unit[y]))
            .collect(),
        inv: pairs.iter().map(|&(a, b)| arrow(g.inv[a], k.inv[b])).collect(),
        mul,
    })
}

/// `G ⊔ K`; tokens are tagged `(0, g)` and `(1, k)`.
pub fn disjoint_union(g: &Groupoid, k: &Groupoid) -> Result<Groupoid> {
    let tag = |side: &str, t: Token| Token::pair(Token::atom(side), t);
    let (na, no) = (g.n_arrows(), g.n_objects());
    let arrows = Carrier::atomic(
        format!("{}⊔{}", g.arrows.name(), k.arrows.name()),
        g.arrows
            .tokens()
            .into_iter()
            .map(|t| tag("0", t))
            .chain(k.arrows.tokens().into_iter().map(|t| tag("1", t)))
            .collect(),
    )?;
    let objects = Carrier::atomic(
        format!("{}⊔{}", g.objects.name(), k.objects.name()),
        g.objects
            .tokens()
            .into_iter()
            .map(|t| tag("0", t))
            .chain(k.objects.tokens().into_iter().map(|t| tag("1", t)))
            .collect(),
    )?;
    let shift = |v: &[usize], by: usize| v.iter().map(|&x| x + by).collect::<Vec<_>>();
    let join = |a: &[usize], b: Vec<usize>| a.iter().copied().chain(b).collect::<Vec<_>>();
    Ok(Groupoid {
        objects,
        arrows,
        src: join(&g.src, shift(&k.src, no)),
        tgt: join(&g.tgt, shift(&k.tgt, no)),
        unit: join(&g.unit, shift(&k.unit, na)),
        inv: join(&g.inv, shift(&k.inv, na)),
        mul: g
            .mul
            .iter()
            .map(|(&k2, &v)| (k2, v))
            .chain(k.mul.iter().map(|(&(a, b), &c)| ((a + na, b + na), c + na)))
            .collect(),
    })
}

/// Reorders arrows and objects by the given permutations
/// (`new position k holds old element perm[k]`).
pub fn reorder(g: &Groupoid, arrow_perm: &[usize], object_perm: &[usize]) -> Result<Groupoid> {
    let inverse = |perm: &[usize]| {
        let mut inv = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        inv
    };
    let (na, no) = (inverse(arrow_perm), inverse(object_perm));
    Ok(Groupoid {
        objects: g.objects.subset(g.objects.name(), object_perm)?,
        arrows: g.arrows.subset(g.arrows.name(), arrow_perm)?,
        src: arrow_perm.iter().map(|&a| no[g.src[a]]).collect(),
        tgt: arrow_perm.iter().map(|&a| no[g.tgt[a]]).collect(),
        unit: object_perm.iter().map(|&x| na[g.unit[x]]).collect(),
        inv: arrow_perm.iter().map(|&a| na[g.inv[a]]).collect(),
        mul: g
            .mul
            .iter()
            .map(|(&(a, b), &c)| ((na[a], na[b]), na[c]))
            .collect(),
    })
}

fn checked(d: DoubleGroupoid) -> Result<DoubleGroupoid> {
    let report = validate_double(&d);
    if report.passed() {
        Ok(d)
    } else {
        Err(Error::Validation(report))
    }
}

/// Squares are the arrows of `g`; left and right sides are `g`, top and
/// bottom are trivial.
pub fn trivial_double(g: &Groupoid) -> Result<DoubleGroupoid> {
    let report = validate_groupoid(g);
    if !report.passed() {
        return Err(Error::Validation(report));
    }
    checked(DoubleGroupoid {
        top: trivial_groupoid(&g.arrows),
        left: g.clone(),
        right: g.clone(),
        bottom: trivial_groupoid(&g.objects),
    })
}

/// Squares `G × G`; top and bottom are pair groupoids over `G` and `M`,
/// left is `G × G ⇉ M × M`, right is `g`.
pub fn pair_double(g: &Groupoid) -> Result<DoubleGroupoid> {
    let report = validate_groupoid(g);
    if !report.passed() {
        return Err(Error::Validation(report));
    }
    let top = pair_groupoid(&g.arrows)?;
    let bottom = pair_groupoid(&g.objects)?;
    let left = product_groupoid(g, g)?.with_carriers(bottom.arrows.clone(), top.arrows.clone())?;
    checked(DoubleGroupoid {
        top,
        left,
        right: g.clone(),
        bottom,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `trivial_double` applied to every base groupoid.
    Trivial,
    /// `pair_double` applied to every base groupoid within the size cap.
    Pair,
    /// Finite groups as one-object base groupoids.
    Group,
    /// Disjoint unions of small base groupoids.
    DisjointUnion,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Trivial => "trivial",
            Family::Pair => "pair",
            Family::Group => "group",
            Family::DisjointUnion => "disjoint-union",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(Family::Trivial),
            "pair" => Ok(Family::Pair),
            "group" => Ok(Family::Group),
            "disjoint-union" => Ok(Family::DisjointUnion),
            other => Err(Error::Invalid(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    /// Largest number of arrows (squares, for double groupoids) allowed.
    pub max_size: usize,
    pub seed: u64,
    pub families: BTreeSet<Family>,
    pub include_transposes: bool,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            max_size: 36,
            seed: 0,
            families: [Family::Trivial, Family::Pair, Family::Group, Family::DisjointUnion]
                .into_iter()
                .collect(),
            include_transposes: true,
        }
    }
}

/// Looks up a base groupoid by name: `Z<n>`, `S3`, `pair<n>` (pair
/// groupoid on n points) or `triv<n>` (n objects, only units).
pub fn named_groupoid(name: &str) -> Result<Groupoid> {
    let bad = || Error::Invalid(format!("unknown groupoid `{name}`"));
    if name == "S3" {
        return symmetric_group_s3();
    }
    let num = |prefix: &str| name.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok());
    if let Some(n) = num("Z").filter(|&n| n >= 1) {
        return cyclic_group(n);
    }
    if let Some(n) = num("pair") {
        return pair_groupoid(&points(&format!("P{n}"), n)?);
    }
    if let Some(n) = num("triv") {
        return Ok(trivial_groupoid(&points(&format!("T{n}"), n)?));
    }
    Err(bad())
}

/// Base groupoids of the corpus, named.
pub fn base_groupoids(spec: &CorpusSpec) -> Result<Vec<(String, Groupoid)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::new();
    let mut push = |name: String, g: Groupoid| {
        if g.n_arrows() <= spec.max_size {
            out.push((name, g));
        }
    };
    if spec.families.contains(&Family::Group) {
        for name in ["Z2", "Z3", "Z4", "S3"] {
            push(name.to_owned(), named_groupoid(name)?);
        }
    }
    for name in ["pair1", "pair2", "pair3", "pair4", "triv2"] {
        push(name.to_owned(), named_groupoid(name)?);
    }
    if spec.families.contains(&Family::DisjointUnion) {
        let mut candidates = [
            ("Z2", "pair2"),
            ("Z2", "Z2"),
            ("Z3", "pair1"),
            ("pair2", "pair1"),
            ("Z2", "triv2"),
        ];
        candidates.shuffle(&mut rng);
        for (a, b) in candidates.iter().take(2) {
            let g = disjoint_union(&named_groupoid(a)?, &named_groupoid(b)?)?;
            push(format!("{a}+{b}"), g);
        }
    }
    // Seeded reordering of every carrier: nothing downstream may depend on
    // the listing order of elements.
    out.into_iter()
        .map(|(name, g)| {
            let mut arrows: Vec<usize> = (0..g.n_arrows()).collect();
            let mut objects: Vec<usize> = (0..g.n_objects()).collect();
            arrows.shuffle(&mut rng);
            objects.shuffle(&mut rng);
            Ok((name, reorder(&g, &arrows, &objects)?))
        })
        .collect()
}

/// Every double groupoid of the corpus, named by construction.
pub fn small_corpus(spec: &CorpusSpec) -> Result<Vec<(String, DoubleGroupoid)>> {
    if spec.max_size == 0 {
        return Err(Error::Invalid("max size must be at least 1".into()));
    }
    let mut out = Vec::new();
    for (name, g) in base_groupoids(spec)? {
        if spec.families.contains(&Family::Trivial) {
            out.push((format!("trivial_double({name})"), trivial_double(&g)?));
        }
        if spec.families.contains(&Family::Pair) && g.n_arrows() * g.n_arrows() <= spec.max_size {
            out.push((format!("pair_double({name})"), pair_double(&g)?));
        }
    }
    if spec.include_transposes {
        let transposed = out
            .iter()
            .map(|(name, d)| Ok((format!("transpose({name})"), transpose_double(d)?)))
            .collect::<Result<Vec<_>>>()?;
        out.extend(transposed);
    }
    Ok(out)
}
