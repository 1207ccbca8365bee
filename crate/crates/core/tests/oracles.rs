//! Values computed independently of the library: boolean-matrix relation
//! products, group arithmetic done by hand, and leaf counts.

use hopfoid::doublegpd::{core_groupoid_square, core_set, leaf_partition, reduction_relation, Boundary};
use hopfoid::generators::{cyclic_group, pair_double, symmetric_group_s3, trivial_double};
use hopfoid::hopfoid::{build_hopfoid, inertia_hopfoid_oracle};
use hopfoid::relcat::{classify, compose, is_reduction, transpose, Carrier, Relation, Token};

fn carrier(name: &str, n: usize) -> Carrier {
    Carrier::atomic(name, (0..n).map(|k| Token::atom(k.to_string())).collect()).unwrap()
}

fn pair(a: &str, b: &str) -> Token {
    Token::pair(Token::atom(a), Token::atom(b))
}

fn matrix(r: &Relation) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; r.cod().len()]; r.dom().len()];
    for &(x, y) in r.pairs() {
        m[x][y] = true;
    }
    m
}

#[test]
fn composition_matches_boolean_matrix_product() {
    let (a, b, c) = (carrier("A", 4), carrier("B", 3), carrier("C", 5));
    // Deterministic pseudo-random fill.
    let mut state = 12345u64;
    let mut bit = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33).is_multiple_of(3)
    };
    for _ in 0..20 {
        let r = Relation::new(a.clone(), b.clone(), (0..4).flat_map(|x| (0..3).map(move |y| (x, y))).filter(|_| bit()).collect::<Vec<_>>()).unwrap();
        let s = Relation::new(b.clone(), c.clone(), (0..3).flat_map(|x| (0..5).map(move |y| (x, y))).filter(|_| bit()).collect::<Vec<_>>()).unwrap();
        let (mr, ms) = (matrix(&r), matrix(&s));
        let expected: Vec<Vec<bool>> = (0..4)
            .map(|x| (0..5).map(|z| (0..3).any(|y| mr[x][y] && ms[y][z])).collect())
            .collect();
        assert_eq!(matrix(&compose(&r, &s).unwrap()), expected);
    }
}

#[test]
fn composing_through_a_single_point() {
    let a = Carrier::atomic("A", vec!["1".into(), "2".into()]).unwrap();
    let b = Carrier::atomic("B", vec!["a".into()]).unwrap();
    let c = Carrier::atomic("C", vec!["x".into()]).unwrap();
    let r = Relation::from_tokens(a.clone(), b.clone(), [(&"1".into(), &"a".into()), (&"2".into(), &"a".into())]).unwrap();
    let s = Relation::from_tokens(b, c.clone(), [(&"a".into(), &"x".into())]).unwrap();
    let expected = Relation::new(a, c, [(0, 0), (1, 0)]).unwrap();
    assert_eq!(compose(&r, &s).unwrap(), expected);
}

#[test]
fn pair_z3_structure_by_modular_arithmetic() {
    let h = build_hopfoid(&pair_double(&cyclic_group(3).unwrap()).unwrap()).unwrap();
    let tp = h.t.token_pairs();
    let sp = h.s.token_pairs();
    let ip = h.i.token_pairs();
    for g in 0..3 {
        for k in 0..3 {
            let sq = pair(&g.to_string(), &k.to_string());
            let diff = ((g + 3 - k) % 3).to_string();
            assert!(tp.contains(&(sq.clone(), pair(&diff, "0"))));
            assert!(sp.contains(&(sq.clone(), pair(&diff, "0"))));
            let inv = pair(&((3 - k) % 3).to_string(), &((3 - g) % 3).to_string());
            assert!(ip.contains(&(sq, inv)));
        }
    }
    assert!(tp.contains(&(pair("1", "2"), pair("2", "0"))));
    assert!(ip.contains(&(pair("1", "0"), pair("0", "2"))));
    let c = classify(&h.t);
    assert!(c.surjective && c.coinjective);
}

#[test]
fn oracle_values() {
    let z3 = inertia_hopfoid_oracle(&cyclic_group(3).unwrap()).unwrap();
    assert!(z3.t.token_pairs().contains(&(pair("1", "2"), pair("2", "0"))));
    let z2 = inertia_hopfoid_oracle(&cyclic_group(2).unwrap()).unwrap();
    let images: Vec<_> = z2
        .delta
        .token_pairs()
        .into_iter()
        .filter(|(x, _)| *x == pair("0", "1"))
        .map(|(_, y)| y)
        .collect();
    let expected = [
        Token::pair(pair("0", "0"), pair("0", "1")),
        Token::pair(pair("0", "1"), pair("1", "1")),
    ];
    assert_eq!(images.len(), 2);
    for y in expected {
        assert!(images.contains(&y), "{y}");
    }
}

#[test]
fn s3_core_multiplies_like_permutations() {
    let s3 = symmetric_group_s3().unwrap();
    let core = core_groupoid_square(&pair_double(&s3).unwrap()).unwrap();
    let compose_perm = |p: &str, q: &str| -> String {
        let (p, q): (Vec<usize>, Vec<usize>) = (
            p.bytes().map(|b| (b - b'1') as usize).collect(),
            q.bytes().map(|b| (b - b'1') as usize).collect(),
        );
        (0..3).map(|x| (p[q[x]] + 1).to_string()).collect()
    };
    let first = |t: Token| match t {
        Token::Tuple(parts) => parts[0].to_string(),
        other => panic!("unexpected token {other}"),
    };
    for (&(a, b), &ab) in &core.mul {
        let (pa, pb) = (first(core.arrows.token(a)), first(core.arrows.token(b)));
        assert_eq!(first(core.arrows.token(ab)), compose_perm(&pa, &pb));
    }
    assert_eq!(core.mul.len(), 36);
}

#[test]
fn leaf_counts() {
    for g in [cyclic_group(2).unwrap(), cyclic_group(4).unwrap(), symmetric_group_s3().unwrap()] {
        let n = g.n_arrows();
        let pair = pair_double(&g).unwrap();
        let trivial = trivial_double(&g).unwrap();
        assert_eq!(core_set(&pair).len(), n);
        assert_eq!(core_set(&trivial).len(), 1);
        for which in Boundary::ALL {
            let leaves = leaf_partition(&pair, which).unwrap();
            assert_eq!(leaves.len(), n, "{which}");
            assert!(leaves.iter().all(|l| l.len() == 1 || l.len() == n));
            assert_eq!(leaf_partition(&trivial, which).unwrap().len(), 1, "{which}");
        }
    }
}

#[test]
fn unit_reduction_of_trivial_z2() {
    let d = trivial_double(&cyclic_group(2).unwrap()).unwrap();
    let h = build_hopfoid(&d).unwrap();
    let et = transpose(&h.e);
    assert!(is_reduction(&et));
    assert_eq!(compose(&h.e, &et).unwrap(), Relation::identity(&h.base));
    assert_eq!(compose(&h.e, &h.t).unwrap(), Relation::identity(&h.base));
    // Only the identity square has an identity top edge.
    assert_eq!(et.len(), 1);
}

#[test]
fn source_reduction_is_unit_transpose_on_pair_z3() {
    let d = pair_double(&cyclic_group(3).unwrap()).unwrap();
    let h = build_hopfoid(&d).unwrap();
    assert_eq!(reduction_relation(&d, Boundary::SourceH).unwrap(), transpose(&h.e));
}
