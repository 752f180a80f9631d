mod common;

use std::sync::Arc;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use wmk::families::{build_family, FamilyKind, FamilySpec};
use wmk::fq::{build_field, Field};
use wmk::grp::{age, age_with_root_power};
use wmk::strata::oracle::{oracle_age_tallies, oracle_age_tallies_with_root, TallyMode};
use wmk::strata::{enumerate_strata, Count};
use wmk::stringy::{mass_rhs_poly, partitions, truncated_sum};
use wmk::symq::{assemble_stratum_sum, sum_geometric, QPolynomial, QRational};

fn fields() -> &'static Vec<Arc<Field>> {
    static FIELDS: OnceLock<Vec<Arc<Field>>> = OnceLock::new();
    FIELDS.get_or_init(|| (1..=8).map(|r| build_field(r).unwrap()).collect())
}

fn family_specs() -> Vec<FamilySpec> {
    [
        (FamilyKind::CyclicL, 7),
        (FamilyKind::CyclicL, 13),
        (FamilyKind::CyclicLL, 2),
        (FamilyKind::CyclicLL, 5),
        (FamilyKind::CyclicLL, 7),
        (FamilyKind::Sym2, 2),
        (FamilyKind::SymLL, 5),
        (FamilyKind::SymLL, 7),
    ]
    .into_iter()
    .map(|(k, l)| FamilySpec::smallest(k, l).unwrap())
    .collect()
}

fn nonzero_poly() -> impl Strategy<Value = QPolynomial> {
    common::qpoly().prop_filter("nonzero", |p| !p.is_zero())
}

fn polynomial() -> impl Strategy<Value = QPolynomial> {
    prop::collection::vec((0i64..=5, common::small_rational()), 0..=5).prop_map(QPolynomial::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn wp_is_additive(r in 0usize..8, a in any::<u32>(), b in any::<u32>()) {
        let f = &fields()[r];
        let x = f.from_code(a % f.order()).unwrap();
        let y = f.from_code(b % f.order()).unwrap();
        prop_assert_eq!(f.wp(f.add(x, y)), f.add(f.wp(x), f.wp(y)));
        prop_assert!(f.in_wp_image(f.wp(x)));
    }

    #[test]
    fn wp_cosets_partition(r in 0usize..8, a in any::<u32>()) {
        let f = &fields()[r];
        let x = f.from_code(a % f.order()).unwrap();
        let idx = f.wp_coset_index(x);
        let rep = f.wp_coset_reps()[idx];
        prop_assert!(f.in_wp_image(f.sub(x, rep)));
    }

    #[test]
    fn field_axioms(r in 0usize..8, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = &fields()[r];
        let [x, y, z] = [a, b, c].map(|n| f.from_code(n % f.order()).unwrap());
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        if let Some(inv) = f.inv(x) {
            prop_assert_eq!(f.mul(x, inv), f.one());
        } else {
            prop_assert!(x.is_zero());
        }
        prop_assert_eq!(f.pow(x, u64::from(f.order())), x);
    }

    #[test]
    fn ring_axioms(a in common::qpoly(), b in common::qpoly(), c in common::qpoly()) {
        prop_assert!(common::ring_axioms(&a, &b, &c).is_ok(), "{:?}", common::ring_axioms(&a, &b, &c));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in common::qpoly(), b in common::qpoly(), n in 1i64..=9, d in 1i64..=4) {
        let x = BigRational::new(BigInt::from(n), BigInt::from(d));
        let (ea, eb) = (a.eval(&x).unwrap(), b.eval(&x).unwrap());
        prop_assert_eq!((&a + &b).eval(&x).unwrap(), &ea + &eb);
        prop_assert_eq!((&a * &b).eval(&x).unwrap(), ea * eb);
    }

    #[test]
    fn division_with_remainder(a in polynomial(), b in polynomial().prop_filter("nonzero", |p| !p.is_zero())) {
        let (quot, rem) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&quot * &b) + &rem, a);
        if !rem.is_zero() {
            prop_assert!(rem.degree() < b.degree());
        }
    }

    #[test]
    fn gcd_divides_both(a in polynomial(), b in polynomial(), c in polynomial()) {
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let (x, y) = (&a * &c, &b * &c);
        let g = x.gcd(&y).unwrap();
        prop_assert!(x.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(y.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(g.div_rem(&c).unwrap().1.is_zero());
    }

    #[test]
    fn rational_functions_normalize(a in polynomial(), b in nonzero_poly(), c in polynomial().prop_filter("nonzero", |p| !p.is_zero())) {
        prop_assume!(b.is_polynomial());
        let plain = QRational::new(a.clone(), b.clone()).unwrap();
        let scaled = QRational::new(&a * &c, &b * &c).unwrap();
        prop_assert_eq!(&plain, &scaled);
        let x = BigRational::from_integer(BigInt::from(7));
        if let (Ok(v), Ok(den)) = (plain.eval(&x), b.eval(&x)) {
            if !den.is_zero() {
                prop_assert_eq!(v, a.eval(&x).unwrap() / den);
            }
        }
    }

    #[test]
    fn polynomial_json_round_trip(a in common::qpoly()) {
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<QPolynomial>(&text).unwrap(), a);
    }

    #[test]
    fn geometric_sum_matches_partial_sums(base in -3i64..=3, ratio in 1i64..=3, q in 2u64..=9) {
        let coeff = QPolynomial::from_ints(&[1, -1, 2]);
        let closed = sum_geometric(&coeff, base, ratio).unwrap();
        let x = BigRational::from_integer(BigInt::from(q));
        let total = closed.eval(&x).unwrap();
        let term = |r: i64| coeff.shift(base - ratio * r).eval(&x).unwrap();
        let partial: BigRational = (0..30).map(term).sum();
        let qd = num_traits::pow(x.clone(), ratio as usize);
        let tail = term(30) * &qd / (&qd - BigRational::one());
        prop_assert_eq!(total, partial + tail);
    }

    #[test]
    fn partition_identities(n in 1u32..=30, j in 1u32..=30) {
        prop_assert_eq!(partitions(n, j), if j > n { BigInt::zero() } else { partitions(n - 1, j - 1) + if n >= 2 * j { partitions(n - j, j) } else { BigInt::zero() } });
        if n <= 12 {
            prop_assert_eq!(partitions(n, j), BigInt::from(common::brute_partitions(n, j)));
        }
    }

    #[test]
    fn mass_rhs_at_one_counts_partitions(n in 1u32..=20) {
        let p: BigInt = (1..=n).map(|j| partitions(n, j)).sum();
        prop_assert_eq!(mass_rhs_poly(n).unwrap().coefficient_sum(), BigRational::from_integer(p));
    }

    #[test]
    fn truncation_converges_from_below(idx in 0usize..8, j in 0u32..25) {
        let spec = &family_specs()[idx];
        let strata = enumerate_strata(spec).unwrap();
        let value = assemble_stratum_sum(&strata).unwrap().eval_int(u64::from(spec.q())).unwrap();
        let t = truncated_sum(&strata, u64::from(spec.q()), j).unwrap();
        let next = truncated_sum(&strata, u64::from(spec.q()), j + 1).unwrap();
        prop_assert!(t.partial <= next.partial);
        prop_assert_eq!(&value - &t.partial, t.tail_bound.clone());
        prop_assert!(next.tail_bound < t.tail_bound);
    }

    #[test]
    fn stratum_invariants(idx in 0usize..8, r in 0i64..20) {
        let spec = &family_specs()[idx];
        let order = spec.kind.group_order(spec.l) as u64;
        for s in enumerate_strata(spec).unwrap() {
            prop_assert_eq!(order % s.centralizer, 0);
            let count = s.count_at(r).eval_int(u64::from(spec.q())).unwrap();
            prop_assert!(count.is_integer() && count > BigRational::zero(), "{}: {}", s.name(), count);
            if let Count::Progression(_) = s.count {
                prop_assert!(s.v_at(r + 1) > s.v_at(r));
                prop_assert!(s.v_at(r).is_integer());
            }
        }
    }

    #[test]
    fn age_is_integral_and_bounded(idx in 0usize..8, pick in any::<prop::sample::Index>()) {
        let spec = &family_specs()[idx];
        let fam = build_family(spec).unwrap();
        let tame: Vec<_> = fam.diagonal_block();
        let g = pick.get(&tame);
        let a = age(fam.field(), g).unwrap();
        prop_assert!(a.is_integer() && *a.numer() >= 0 && *a.numer() <= 2);
        let inverse = age(fam.field(), &g.inverse(fam.field()).unwrap()).unwrap();
        let fixed = g.fixed_space_dim(fam.field()) as i64;
        prop_assert_eq!(a + inverse, num_rational::Ratio::from_integer(3 - fixed));
    }

    #[test]
    fn age_tallies_ignore_root_choice(l in prop::sample::select(vec![2u32, 5, 7, 11, 13]), k in 1u32..13) {
        prop_assume!(k % l != 0);
        let base = oracle_age_tallies(l, TallyMode::Elements).unwrap();
        prop_assert_eq!(oracle_age_tallies_with_root(l, TallyMode::Elements, k % l).unwrap(), base);
    }

    #[test]
    fn age_under_root_power_is_age_of_power(idx in 0usize..8, k in 1u32..13, pick in any::<prop::sample::Index>()) {
        let spec = &family_specs()[idx];
        prop_assume!(k % spec.l != 0);
        let fam = build_family(spec).unwrap();
        let tame = fam.diagonal_block();
        let g = pick.get(&tame);
        let f = fam.field();
        // Replacing zeta by zeta^k is the same as measuring g^{k^{-1}} with zeta.
        let k_inv = (1..spec.l).find(|i| i * k % spec.l == 1).unwrap();
        prop_assert_eq!(age_with_root_power(f, g, k).unwrap(), age(f, &g.pow(u64::from(k_inv), f)).unwrap());
    }
}

#[test]
fn wp_additive_exhaustively_up_to_81() {
    for r in 1..=4 {
        common::wp_additivity(r).unwrap();
    }
}

#[test]
fn orbit_stabilizer_for_small_groups() {
    let (groups, _) = common::small_groups(200);
    assert!(groups.len() >= 8);
    for (name, group) in &groups {
        common::orbit_stabilizer(group).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
