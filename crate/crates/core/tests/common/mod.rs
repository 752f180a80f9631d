#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use wmk::families::{build_family, FamilyKind, FamilySpec};
use wmk::fq::build_field;
use wmk::grp::{GroupElem, MatrixGroup};
use wmk::symq::QPolynomial;

/// Checks wp(x + y) = wp(x) + wp(y) for every pair in F_{3^r}, and that the
/// image of wp has index 3. Returns the number of pairs checked.
pub fn wp_additivity(r: u32) -> Result<u64, String> {
    let f = build_field(r).map_err(|e| e.to_string())?;
    let elems: Vec<_> = f.elements().collect();
    let mut pairs = 0u64;
    for &x in &elems {
        for &y in &elems {
            if f.wp(f.add(x, y)) != f.add(f.wp(x), f.wp(y)) {
                return Err(format!("q = {}: wp not additive at {x:?}, {y:?}", f.order()));
            }
            pairs += 1;
        }
    }
    let image: BTreeSet<_> = elems.iter().map(|&x| f.wp(x)).collect();
    if image.len() * 3 != elems.len() {
        return Err(format!("q = {}: image of wp has size {}", f.order(), image.len()));
    }
    Ok(pairs)
}

/// Brute-force P(n, j): nonincreasing sequences of j positive parts summing to n.
pub fn brute_partitions(n: u32, j: u32) -> u64 {
    fn go(rest: u32, parts: u32, max: u32) -> u64 {
        if parts == 0 {
            return u64::from(rest == 0);
        }
        (1..=max.min(rest)).map(|p| go(rest - p, parts - 1, p)).sum()
    }
    go(n, j, n)
}

/// Every family group of order at most `bound` that fits in the field range,
/// together with the (kind, l) pairs that were out of reach.
pub fn small_family_groups(bound: usize) -> (Vec<(String, MatrixGroup)>, Vec<String>) {
    let mut groups = Vec::new();
    let mut unreachable = Vec::new();
    for kind in FamilyKind::ALL {
        for l in (2..=bound as u32).filter(|&l| wmk::families::is_prime(l) && l != 3) {
            if kind.group_order(l) > bound {
                continue;
            }
            let Ok(spec) = FamilySpec::smallest(kind, l) else {
                if FamilySpec::smallest(kind, l).is_err() && admissible(kind, l) {
                    unreachable.push(format!("{kind} l={l}"));
                }
                continue;
            };
            let fam = build_family(&spec).expect("valid spec builds");
            groups.push((format!("{kind} l={l} q={}", spec.q()), fam.group));
        }
    }
    (groups, unreachable)
}

/// The family groups of order at most `bound`, their subgroups generated by
/// pairs of class representatives, and two wild groups over F_3: the upper
/// unitriangular matrices and the signed permutation matrices of determinant 1.
pub fn small_groups(bound: usize) -> (Vec<(String, MatrixGroup)>, Vec<String>) {
    let (families, unreachable) = small_family_groups(bound);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |name: String, g: MatrixGroup, out: &mut Vec<(String, MatrixGroup)>| {
        let mut elems = g.elements().to_vec();
        elems.sort();
        if seen.insert((g.field().order(), elems)) {
            out.push((name, g));
        }
    };
    for (name, group) in families {
        let reps: Vec<GroupElem> = group.conjugacy_classes().iter().map(|c| c.representative).collect();
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i..] {
                let sub = group.subgroup(&[*a, *b]).expect("subgroup of a finite group");
                push(format!("{name} subgroup of order {}", sub.order()), sub, &mut out);
            }
        }
        push(name, group, &mut out);
    }
    let f3 = build_field(1).expect("F_3");
    let unitriangular = [
        GroupElem::from_ints(&f3, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
        GroupElem::from_ints(&f3, [[1, 0, 0], [0, 1, 1], [0, 0, 1]]),
    ];
    let signed = [
        GroupElem::from_ints(&f3, [[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
        GroupElem::from_ints(&f3, [[0, 1, 0], [1, 0, 0], [0, 0, -1]]),
        GroupElem::from_ints(&f3, [[-1, 0, 0], [0, -1, 0], [0, 0, 1]]),
    ];
    for (name, gens) in [("unitriangular q=3", &unitriangular[..]), ("signed permutations q=3", &signed[..])] {
        let g = MatrixGroup::generate(&f3, gens, bound).expect("small group");
        push(name.to_string(), g, &mut out);
    }
    (out, unreachable)
}

fn admissible(kind: FamilyKind, l: u32) -> bool {
    match kind {
        FamilyKind::CyclicL => wmk::families::find_twist(l).is_some(),
        FamilyKind::Sym2 => l == 2,
        FamilyKind::SymLL => l != 2,
        FamilyKind::CyclicLL => true,
    }
}

/// |class| * |centralizer| = |G| for elements, for conjugation orbits of
/// ordered pairs, and class sizes summing to |G|. Returns the number of
/// orbits checked.
pub fn orbit_stabilizer(group: &MatrixGroup) -> Result<usize, String> {
    let n = group.order();
    let classes = group.conjugacy_classes();
    if classes.iter().map(|c| c.members.len()).sum::<usize>() != n {
        return Err("class sizes do not sum to |G|".into());
    }
    let mut checked = 0;
    for c in &classes {
        let cent = group.centralizer(&[c.representative]).map_err(|e| e.to_string())?.order();
        if c.size != c.members.len() || c.size * cent != n {
            return Err(format!("class of size {} with centralizer {cent} in |G| = {n}", c.size));
        }
        checked += 1;
    }
    let perms: Vec<_> = group.elements().iter().map(|g| group.conjugation_permutation(g)).collect();
    let pairs: Vec<Vec<usize>> = (0..n).flat_map(|a| (0..n).map(move |b| vec![a, b])).collect();
    let elems = group.elements();
    let mut total = 0;
    for (rep, size) in wmk::grp::tuple_orbits(&perms, &pairs) {
        let subset: Vec<GroupElem> = rep.iter().map(|&i| elems[i]).collect();
        let cent = group.centralizer(&subset).map_err(|e| e.to_string())?.order();
        if size * cent != n {
            return Err(format!("pair orbit of size {size} with centralizer {cent} in |G| = {n}"));
        }
        total += size;
        checked += 1;
    }
    if total != n * n {
        return Err("pair orbits do not cover G x G".into());
    }
    Ok(checked)
}

pub fn small_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// Laurent polynomials with exponents in [-3, 5] and up to five terms.
pub fn qpoly() -> impl Strategy<Value = QPolynomial> {
    prop::collection::vec((-3i64..=5, small_rational()), 0..=5).prop_map(QPolynomial::from_terms)
}

/// Ring axioms on one triple; the message names the first failure.
pub fn ring_axioms(a: &QPolynomial, b: &QPolynomial, c: &QPolynomial) -> Result<(), String> {
    let zero = QPolynomial::zero();
    let one = QPolynomial::one();
    let checks = [
        ("additive commutativity", a + b == b + a),
        ("additive associativity", &(a + b) + c == a + &(b + c)),
        ("additive identity", a + &zero == *a),
        ("additive inverse", a + &(-a) == zero),
        ("multiplicative commutativity", a * b == b * a),
        ("multiplicative associativity", &(a * b) * c == a * &(b * c)),
        ("multiplicative identity", a * &one == *a),
        ("distributivity", a * &(b + c) == &(a * b) + &(a * c)),
        ("subtraction", &(a - b) + b == *a),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((name, _)) => Err(format!("{name} fails for a = {a}, b = {b}, c = {c}")),
        None => Ok(()),
    }
}
