//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hopfoid::doublegpd::{
    core_groupoid_square, core_set, leaf_partition, leaf_quotient, reduction_relation, validate_double, Boundary,
    DoubleGroupoid,
};
use hopfoid::generators::{
    base_groupoids, named_groupoid, pair_double, small_corpus, trivial_double, CorpusSpec,
};
use hopfoid::groupoid::{check_star_monoid, from_star_monoid, to_star_monoid, Groupoid};
use hopfoid::hopfoid::{
    build_hopfoid, check_hopfoid, core_monoid, inertia_hopfoid_oracle, roundtrip_double, roundtrip_hopfoid, Hopfoid,
};
use hopfoid::relcat::{is_reduction, relations_equal, Relation, Token};
use hopfoid::report::CheckReport;

type Outcome = Result<String, String>;

fn corpus() -> Vec<(String, DoubleGroupoid)> {
    small_corpus(&CorpusSpec::default()).expect("default corpus builds")
}

fn within(started: Instant, limit: Duration, detail: String) -> Outcome {
    let elapsed = started.elapsed();
    let detail = format!("{detail}, {:.2} s", elapsed.as_secs_f64());
    if elapsed < limit {
        Ok(detail)
    } else {
        Err(format!("{detail} exceeds {} s", limit.as_secs()))
    }
}

fn first_failure(report: &CheckReport) -> String {
    report
        .failures()
        .next()
        .map(|e| format!("{}: {}", e.name, e.witness.clone().unwrap_or_default()))
        .unwrap_or_default()
}

fn star_monoid_round_trip() -> Outcome {
    let started = Instant::now();
    let mut groupoids: Vec<(String, Groupoid)> = base_groupoids(&CorpusSpec::default()).map_err(|e| e.to_string())?;
    for (name, d) in corpus() {
        for (side, g) in [("top", d.top), ("left", d.left), ("right", d.right), ("bottom", d.bottom)] {
            groupoids.push((format!("{name}.{side}"), g));
        }
    }
    if groupoids.len() < 12 {
        return Err(format!("only {} groupoids", groupoids.len()));
    }
    let largest = groupoids.iter().map(|(_, g)| g.n_arrows()).max().unwrap_or(0);
    if largest > 36 {
        return Err(format!("groupoid with {largest} arrows"));
    }
    for (name, g) in &groupoids {
        let sm = to_star_monoid(g).map_err(|e| format!("{name}: {e}"))?;
        let report = check_star_monoid(&sm);
        if !report.passed() {
            return Err(format!("{name}: {}", first_failure(&report)));
        }
        let back = from_star_monoid(&sm).map_err(|e| format!("{name}: {e}"))?;
        g.same_up_to_units(&back).map_err(|w| format!("{name}: {w}"))?;
        if back.mul != g.mul || back.inv != g.inv {
            return Err(format!("{name}: product or inverse table changed"));
        }
    }
    within(
        started,
        Duration::from_secs(5),
        format!("{} groupoids up to {largest} arrows", groupoids.len()),
    )
}

fn double_validity() -> Outcome {
    let started = Instant::now();
    let mut count = 0;
    for base in ["Z2", "Z3", "Z4", "S3", "pair1", "pair2", "pair3", "pair4"] {
        let g = named_groupoid(base).map_err(|e| e.to_string())?;
        for (family, d) in [("trivial", trivial_double(&g)), ("pair", pair_double(&g))] {
            let d = d.map_err(|e| format!("{family}_double({base}): {e}"))?;
            let report = validate_double(&d);
            if !report.passed() || report.entry("interchange").is_none() {
                return Err(format!("{family}_double({base}): {}", first_failure(&report)));
            }
            count += 1;
        }
    }
    within(started, Duration::from_secs(30), format!("{count} double groupoids"))
}

/// `core` is the trivial groupoid on `m`: only units, one per object.
fn is_trivial_over(core: &Groupoid, objects: &Groupoid) -> bool {
    core.objects == objects.objects
        && core.n_arrows() == core.n_objects()
        && (0..core.n_arrows()).all(|a| core.is_unit(a))
}

/// The core of `pair_double(g)` is `g`, via `x ↦ (x, 1_{src x})`.
fn is_isomorphic_to_base(core: &Groupoid, g: &Groupoid) -> Result<(), String> {
    let phi: Vec<usize> = (0..g.n_arrows())
        .map(|x| {
            let t = Token::pair(g.arrows.token(x), g.arrows.token(g.src_unit(x)));
            core.arrows.index_of(&t).ok_or_else(|| format!("{t} not in the core"))
        })
        .collect::<Result<_, _>>()?;
    if phi.iter().collect::<BTreeSet<_>>().len() != core.n_arrows() || phi.len() != core.n_arrows() {
        return Err("not a bijection".into());
    }
    for x in 0..g.n_arrows() {
        if core.src[phi[x]] != g.src[x] || core.tgt[phi[x]] != g.tgt[x] || core.inv[phi[x]] != phi[g.inv[x]] {
            return Err(format!("structure differs at {}", g.arrows.token(x)));
        }
    }
    for (&(x, y), &xy) in &g.mul {
        if core.mul(phi[x], phi[y]) != Some(phi[xy]) {
            return Err(format!("product differs at {}·{}", g.arrows.token(x), g.arrows.token(y)));
        }
    }
    Ok(())
}

fn core_agreement() -> Outcome {
    let corpus = corpus();
    for (name, d) in &corpus {
        let square = core_groupoid_square(d).map_err(|e| format!("{name}: {e}"))?;
        let h = build_hopfoid(d).map_err(|e| format!("{name}: {e}"))?;
        let monoid = core_monoid(&h).map_err(|e| format!("{name}: {e}"))?;
        let from_monoid = from_star_monoid(&monoid).map_err(|e| format!("{name}: {e}"))?;
        square.same_up_to_units(&from_monoid).map_err(|w| format!("{name}: {w}"))?;
    }
    let bases = base_groupoids(&CorpusSpec::default()).map_err(|e| e.to_string())?;
    for (name, g) in &bases {
        let core = core_groupoid_square(&trivial_double(g).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        if !is_trivial_over(&core, g) {
            return Err(format!("core of trivial_double({name}) is not trivial"));
        }
        let core = core_groupoid_square(&pair_double(g).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        is_isomorphic_to_base(&core, g).map_err(|w| format!("core of pair_double({name}): {w}"))?;
    }
    Ok(format!(
        "{} instances agree, {} base groupoids recovered as cores",
        corpus.len(),
        bases.len()
    ))
}

fn leaf_cross_section() -> Outcome {
    let corpus = corpus();
    let mut leaves = 0;
    for (name, d) in &corpus {
        let core_size = core_set(d).len();
        for which in Boundary::ALL {
            let tag = || format!("{name}, {which}");
            let partition = leaf_partition(d, which).map_err(|e| format!("{}: {e}", tag()))?;
            if partition.len() != core_size {
                return Err(format!("{}: {} leaves for a core of {core_size}", tag(), partition.len()));
            }
            leaves += partition.len();
            let quotient = leaf_quotient(d, which).map_err(|e| format!("{}: {e}", tag()))?;
            let formula = reduction_relation(d, which).map_err(|e| format!("{}: {e}", tag()))?;
            if !relations_equal(&quotient, &formula) {
                return Err(format!("{}: {}", tag(), quotient.first_difference(&formula).unwrap_or_default()));
            }
            if !is_reduction(&formula) {
                return Err(format!("{}: not a reduction", tag()));
            }
        }
    }
    Ok(format!("{} instances, 4 boundaries each, {leaves} leaves", corpus.len()))
}

const CLAUSES: [&str; 7] = [
    "(i) sections",
    "(ii) inverse exchanges target and source",
    "(iii) associativity",
    "(iv) antipode",
    "(v) product and coproduct",
    "(vi) units",
    "(vii) inverses",
];

fn hopfoid_theorem() -> Outcome {
    let started = Instant::now();
    let corpus = corpus();
    let mut checks = 0;
    for (name, d) in &corpus {
        let h = build_hopfoid(d).map_err(|e| format!("{name}: {e}"))?;
        let report = check_hopfoid(&h);
        if !report.passed() {
            return Err(format!("{name}: {}", first_failure(&report)));
        }
        let required = CLAUSES
            .iter()
            .copied()
            .chain(["counit preserved by i", "comonoid.strong positivity", "comonoid.star compatibility"]);
        for clause in required {
            if report.entries.iter().filter(|e| e.name == clause).count() != 1 {
                return Err(format!("{name}: `{clause}` not reported exactly once"));
            }
        }
        checks += report.entries.len();
    }
    within(
        started,
        Duration::from_secs(60),
        format!("{} hopfoids, {checks} checks", corpus.len()),
    )
}

fn oracle_equality() -> Outcome {
    for base in ["Z2", "Z3", "S3"] {
        let g = named_groupoid(base).map_err(|e| e.to_string())?;
        let oracle = inertia_hopfoid_oracle(&g).map_err(|e| e.to_string())?;
        let built = build_hopfoid(&pair_double(&g).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        for ((name, a), (_, b)) in oracle.relations().into_iter().zip(built.relations()) {
            if !relations_equal(a, b) {
                return Err(format!("{base}, {name}: {}", a.first_difference(b).unwrap_or_default()));
            }
        }
    }
    Ok("Z2, Z3, S3: all eight relations equal".into())
}

fn main_correspondence() -> Outcome {
    let started = Instant::now();
    let corpus = corpus();
    for (name, d) in &corpus {
        let report = roundtrip_double(d);
        if !report.passed() {
            return Err(format!("{name}: {}", first_failure(&report)));
        }
        let h = build_hopfoid(d).map_err(|e| format!("{name}: {e}"))?;
        let report = roundtrip_hopfoid(&h);
        if !report.passed() {
            return Err(format!("{name}: {}", first_failure(&report)));
        }
    }
    within(
        started,
        Duration::from_secs(60),
        format!("{} instances both ways", corpus.len()),
    )
}

fn next_element(n: usize, x: usize) -> usize {
    (x + 1) % n
}

fn redirect_first(r: &Relation) -> Relation {
    let n = r.cod().len();
    let mut pairs: Vec<(usize, usize)> = r.pairs().iter().copied().collect();
    pairs[0].1 = next_element(n, pairs[0].1);
    Relation::new(r.dom().clone(), r.cod().clone(), pairs).expect("indices stay in range")
}

fn caught(report: &CheckReport) -> bool {
    report.failures().any(|e| e.witness.is_some())
}

fn mutation_sensitivity() -> Outcome {
    let corpus = corpus();
    let targets: Vec<&(String, DoubleGroupoid)> = corpus.iter().filter(|(_, d)| d.n_squares() >= 2).collect();
    let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
    let mut silent = Vec::new();
    for (name, d) in &targets {
        let n = d.n_squares();
        let double_mutations: [(&str, Box<dyn Fn(&mut DoubleGroupoid)>); 3] = [
            (
                "product cell",
                Box::new(move |d: &mut DoubleGroupoid| {
                    let (&k, &v) = d.top.mul.iter().next().expect("nonempty product");
                    d.top.mul.insert(k, next_element(n, v));
                }),
            ),
            ("inverse", Box::new(move |d: &mut DoubleGroupoid| d.top.inv[0] = next_element(n, d.top.inv[0]))),
            ("unit", Box::new(move |d: &mut DoubleGroupoid| d.top.unit[0] = next_element(n, d.top.unit[0]))),
        ];
        for (label, mutate) in double_mutations {
            let mut bad = (*d).clone();
            mutate(&mut bad);
            *tally.entry(label).or_default() += 1;
            if !caught(&validate_double(&bad)) {
                silent.push(format!("{label} on {name}"));
            }
        }
        let h = build_hopfoid(d).map_err(|e| format!("{name}: {e}"))?;
        let hopfoid_mutations: [(&str, fn(&mut Hopfoid)); 3] = [
            ("i", |h| h.i = redirect_first(&h.i)),
            ("star", |h| h.star = redirect_first(&h.star)),
            ("e", |h| h.e = redirect_first(&h.e)),
        ];
        for (label, mutate) in hopfoid_mutations {
            let mut bad = h.clone();
            mutate(&mut bad);
            *tally.entry(label).or_default() += 1;
            if bad == h {
                silent.push(format!("{label} on {name} left the hopfoid unchanged"));
            } else if !caught(&check_hopfoid(&bad)) {
                silent.push(format!("{label} on {name}"));
            }
        }
    }
    if !silent.is_empty() {
        return Err(format!("{} silent passes: {}", silent.len(), silent.join("; ")));
    }
    let total: usize = tally.values().sum();
    Ok(format!(
        "{total} corruptions over {} instances ({}), all caught",
        targets.len(),
        tally.iter().map(|(k, v)| format!("{k} ×{v}")).collect::<Vec<_>>().join(", ")
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("star-monoid round trip", star_monoid_round_trip),
        ("double groupoid validity", double_validity),
        ("core agreement", core_agreement),
        ("leaf cross-section", leaf_cross_section),
        ("hopfoid axioms on the corpus", hopfoid_theorem),
        ("oracle equality", oracle_equality),
        ("main correspondence", main_correspondence),
        ("mutation sensitivity", mutation_sensitivity),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {title}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
