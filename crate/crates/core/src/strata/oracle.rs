//! Brute-force enumerations that recount the strata independently of the
//! closed-form tables.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{build_family, minimal_degree, Family, FamilyKind, FamilySpec};
use crate::fq::{build_field, root_of_unity, Field, Fq};
use crate::grp::{age_with_root_power, tuple_orbits, GroupElem};
use crate::par::map_chunks;
use crate::strata::{Count, Label, Stratum};
use crate::vfun::v_c2l;

pub const DEFAULT_ENUMERATION_CAP: u128 = 100_000_000;

fn check_cap(size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::EnumerationTooLarge { size, cap })
    } else {
        Ok(())
    }
}

fn admissible_conductors(j_max: u32, keep: impl Fn(u32) -> bool) -> Vec<u32> {
    (1..=j_max).filter(|&j| keep(j)).collect()
}

/// Enumerates a constant term from `constants` and one coefficient per
/// position from `coeffs[i]`, tallying nonzero tuples by the largest
/// position with a nonzero coefficient (0 when only the constant is
/// nonzero). With `negation`, tuples a and -a are identified.
fn tally_leading_pole(
    field: &Field,
    conductors: &[u32],
    constants: &[Fq],
    coeffs: &[Vec<Fq>],
    negation: bool,
    cap: u128,
) -> Result<BTreeMap<u32, u128>> {
    let radices: Vec<u64> = coeffs.iter().map(|c| c.len() as u64).collect();
    let tails: u128 = radices.iter().map(|&r| u128::from(r)).product();
    check_cap(tails * constants.len() as u128, cap)?;
    let tails = u64::try_from(tails).map_err(|_| Error::EnumerationTooLarge { size: tails, cap })?;
    let position = |set: &[Fq], x: Fq| set.iter().position(|&y| y == x);
    let const_neg: Vec<usize> = constants
        .iter()
        .map(|&c| {
            let n = field.neg(c);
            constants
                .iter()
                .position(|&d| field.wp_coset_index(d) == field.wp_coset_index(n))
                .expect("constants closed under negation")
        })
        .collect();
    let coeff_neg: Vec<Vec<usize>> = coeffs
        .iter()
        .map(|set| set.iter().map(|&x| position(set, field.neg(x)).expect("closed")).collect())
        .collect();
    let parts = map_chunks(tails, |range| {
        let mut tally: BTreeMap<u32, u128> = BTreeMap::new();
        let mut digits = vec![0usize; radices.len()];
        let mut negated = vec![0usize; radices.len()];
        for index in range {
            let mut rest = index;
            for (d, &radix) in digits.iter_mut().zip(&radices) {
                *d = (rest % radix) as usize;
                rest /= radix;
            }
            let leading = digits
                .iter()
                .enumerate()
                .rev()
                .find(|&(i, &d)| !coeffs[i][d].is_zero())
                .map(|(i, _)| conductors[i]);
            for (ci, c) in constants.iter().enumerate() {
                let pole = match leading {
                    Some(j) => j,
                    None if c.is_zero() => continue,
                    None => 0,
                };
                if negation {
                    for (i, d) in digits.iter().enumerate() {
                        negated[i] = coeff_neg[i][*d];
                    }
                    let mine = (digits.iter().rev().collect::<Vec<_>>(), ci);
                    let theirs = (negated.iter().rev().collect::<Vec<_>>(), const_neg[ci]);
                    if mine > theirs {
                        continue;
                    }
                }
                *tally.entry(pole).or_default() += 1;
            }
        }
        tally
    });
    let mut total = BTreeMap::new();
    for part in parts {
        for (k, v) in part {
            *total.entry(k).or_default() += v;
        }
    }
    Ok(total)
}

/// Counts reduced Artin-Schreier representatives c + sum a_j t^{-j}
/// (c in k/wp(k), 0 < j <= j_max, 3 not dividing j) by m: m = 0 for nonzero
/// constants and m = j + 1 for leading pole j.
pub fn oracle_artin_schreier_counts(
    field: &Field,
    j_max: u32,
    negation: bool,
    cap: u128,
) -> Result<BTreeMap<u32, u128>> {
    if j_max == 0 {
        return Err(Error::InvalidArgument("j_max must be at least 1".into()));
    }
    let conductors = admissible_conductors(j_max, |j| j % 3 != 0);
    let all: Vec<Fq> = field.elements().collect();
    let coeffs = vec![all; conductors.len()];
    let tally = tally_leading_pole(field, &conductors, &field.wp_coset_reps(), &coeffs, negation, cap)?;
    Ok(tally.into_iter().map(|(j, n)| (if j == 0 { 0 } else { j + 1 }, n)).collect())
}

/// Counts of S_3-extensions by (m, j): m = 0 for the unramified quadratic
/// subfield, m = 1 for the two ramified ones, j the reduced conductor over
/// the quadratic subfield. Classes b and -b give the same algebra.
pub fn oracle_s7_counts(
    field: &Arc<Field>,
    j_max: u32,
    cap: u128,
) -> Result<BTreeMap<(u32, u32), u128>> {
    let q = u64::from(field.order());
    let mut out = BTreeMap::new();

    // m = 0: coefficients in F_{q^2}, the involution is the q-power Frobenius.
    let ext = build_field(2 * field.degree())?;
    let frob = |x: Fq| ext.pow(x, q);
    let anti: Vec<Fq> = ext.elements().filter(|&x| frob(x) == ext.neg(x)).collect();
    let constants: Vec<Fq> = ext
        .wp_coset_reps()
        .into_iter()
        .filter(|&c| ext.wp_coset_index(frob(c)) == ext.wp_coset_index(ext.neg(c)))
        .collect();
    let conductors = admissible_conductors(j_max, |j| j % 3 != 0);
    let coeffs = vec![anti; conductors.len()];
    for (j, n) in tally_leading_pole(&ext, &conductors, &constants, &coeffs, true, cap)? {
        *out.entry((0, j)).or_default() += n;
    }

    // m = 1: K(sqrt(t)) and K(sqrt(mu t)); the involution sends s to -s.
    let conductors = admissible_conductors(j_max, |j| j % 3 != 0);
    let constants: Vec<Fq> = field
        .wp_coset_reps()
        .into_iter()
        .filter(|&c| field.wp_coset_index(c) == field.wp_coset_index(field.neg(c)))
        .collect();
    let coeffs: Vec<Vec<Fq>> = conductors
        .iter()
        .map(|&j| {
            let sign = |x: Fq| if j % 2 == 1 { field.neg(x) } else { x };
            field.elements().filter(|&x| sign(x) == field.neg(x)).collect()
        })
        .collect();
    for _quadratic_field in 0..2 {
        for (j, n) in tally_leading_pole(field, &conductors, &constants, &coeffs, true, cap)? {
            *out.entry((1, j)).or_default() += n;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TallyMode {
    Elements,
    GeneratorPairs,
}

/// Age tallies over the diagonal subgroup C_l^2, computed from the matrices
/// against the root zeta_l^k.
pub fn oracle_age_tallies_with_root(l: u32, mode: TallyMode, k: u32) -> Result<BTreeMap<i64, u64>> {
    let r = minimal_degree(l).ok_or(Error::BadPrime(l))?;
    let field = build_field(r)?;
    let rou = root_of_unity(&field, l)?;
    let p = |e: u32| field.pow(rou.zeta(), u64::from(e));
    let mut elems = Vec::new();
    for a in 0..l {
        for b in 0..l {
            let c = (2 * l - a - b) % l;
            elems.push(((a, b), GroupElem::diag(p(a), p(b), p(c))));
        }
    }
    let age_of = |g: &GroupElem| -> Result<i64> {
        let a = age_with_root_power(&field, g, k)?;
        if !a.is_integer() {
            return Err(Error::Internal(format!("non-integral age {a}")));
        }
        Ok(a.to_integer())
    };
    let mut tally: BTreeMap<i64, u64> = (0..=2).map(|a| (a, 0)).collect();
    match mode {
        TallyMode::Elements => {
            for (_, g) in &elems {
                *tally.entry(age_of(g)?).or_default() += 1;
            }
        }
        TallyMode::GeneratorPairs => {
            let ages: Vec<i64> = elems.iter().map(|(_, g)| age_of(g)).collect::<Result<_>>()?;
            let full = (l * l) as usize;
            for (u, _) in &elems {
                for (idx, (w, _)) in elems.iter().enumerate() {
                    let mut span = BTreeSet::new();
                    for i in 0..l {
                        for j in 0..l {
                            span.insert(((i * u.0 + j * w.0) % l, (i * u.1 + j * w.1) % l));
                        }
                    }
                    if span.len() == full {
                        *tally.entry(ages[idx]).or_default() += 1;
                    }
                }
            }
        }
    }
    Ok(tally)
}

pub fn oracle_age_tallies(l: u32, mode: TallyMode) -> Result<BTreeMap<i64, u64>> {
    oracle_age_tallies_with_root(l, mode, 1)
}

fn symmetric_family(l: u32) -> Result<Family> {
    let kind = if l == 2 { FamilyKind::Sym2 } else { FamilyKind::SymLL };
    build_family(&FamilySpec::smallest(kind, l)?)
}

/// Cyclic degree-2l Kummer classes crossed with the non-conjugate choices of
/// generator image, tallied by v.
pub fn oracle_s6_classes(l: u32) -> Result<BTreeMap<i64, u64>> {
    let fam = symmetric_family(l)?;
    oracle_s6_classes_in(&fam)
}

pub fn oracle_s6_classes_in(fam: &Family) -> Result<BTreeMap<i64, u64>> {
    let l = fam.spec.l;
    let n = 2 * l;
    let group = &fam.group;
    let f = fam.field();

    let elems = group.elements();
    let class_of: HashMap<GroupElem, usize> = group
        .conjugacy_classes()
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.members.iter().map(move |&m| (elems[m], i)))
        .collect();
    let g = fam.c2l_generator();
    let mut seen_classes = BTreeSet::new();
    let mut powers = Vec::new();
    for k in (1..n).filter(|k| k.gcd(&n) == 1) {
        if seen_classes.insert(class_of[&g.pow(u64::from(k), f)]) {
            powers.push(k);
        }
    }

    // cyclic subgroups of order 2l in <mu> x <t> = (Z/2l)^2
    let mut subgroups: BTreeSet<Vec<(u32, u32)>> = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            if n / a.gcd(&b).gcd(&n) != n {
                continue;
            }
            let mut sub: Vec<(u32, u32)> = (0..n).map(|i| (i * a % n, i * b % n)).collect();
            sub.sort_unstable();
            subgroups.insert(sub);
        }
    }

    let mut tally: BTreeMap<i64, u64> = BTreeMap::new();
    for sub in &subgroups {
        let val = sub.iter().map(|&(_, b)| b).filter(|&b| b > 0).min().unwrap_or(0);
        for &k in &powers {
            let v = if val == 0 { 0 } else { v_c2l(l, val, k % l)?.to_integer()? };
            *tally.entry(v).or_default() += 1;
        }
    }
    Ok(tally)
}

/// Key of a tame stratum: label, v and centralizer order.
pub type TameKey = (Label, i64, u64);

/// Orbits of commuting pairs (inertia image, Frobenius image) with tame
/// span, under simultaneous conjugation, tallied by subgroup type, age of
/// the inertia image and centralizer order.
pub fn oracle_tame_strata(fam: &Family) -> Result<BTreeMap<TameKey, u64>> {
    let group = &fam.group;
    let f = group.field();
    let l = fam.spec.l as usize;
    let order = group.order();
    let elems = group.elements();
    let orders = group.element_orders();
    let tame: Vec<usize> = (0..order).filter(|&i| !orders[i].is_multiple_of(3)).collect();
    let mut pairs = Vec::new();
    for &x in &tame {
        for &y in &tame {
            if group.mul(&elems[x], &elems[y]) == group.mul(&elems[y], &elems[x]) {
                pairs.push(vec![x, y]);
            }
        }
    }
    let perms: Vec<Vec<usize>> =
        fam.small_generators().iter().map(|g| group.conjugation_permutation(g)).collect();

    let mut tally: BTreeMap<TameKey, u64> = BTreeMap::new();
    for (rep, orbit) in tuple_orbits(&perms, &pairs) {
        let (x, y) = (elems[rep[0]], elems[rep[1]]);
        let mut span = BTreeSet::new();
        for i in 0..orders[rep[0]] {
            let xi = x.pow(i, f);
            for j in 0..orders[rep[1]] {
                span.insert(xi.mul(&y.pow(j, f), f));
            }
        }
        let size = span.len();
        let diagonal = span.iter().all(GroupElem::is_diagonal);
        let cyclic = span.iter().any(|h| h.order(f, size as u64) == Some(size as u64));
        let label = match (size, diagonal, cyclic) {
            (1, _, _) => Label::S1,
            (s, true, _) if s == l => Label::S3,
            (s, true, _) if s == l * l => Label::S4,
            (2, false, _) => Label::S5,
            (s, false, true) if s == 2 * l => Label::S6,
            (4, false, false) => Label::S8,
            _ => {
                return Err(Error::Internal(format!(
                    "unexpected tame subgroup of order {size} (diagonal {diagonal}, cyclic {cyclic})"
                )))
            }
        };
        let age = age_with_root_power(f, &x, 1)?;
        if !age.is_integer() {
            return Err(Error::Internal(format!("non-integral age {age}")));
        }
        let centralizer = group.centralizer(&[x, y])?.order();
        if centralizer * orbit != order {
            return Err(Error::Internal(format!(
                "orbit {orbit} times centralizer {centralizer} is not |G| = {order}"
            )));
        }
        *tally.entry((label, age.to_integer(), centralizer as u64)).or_default() += 1;
    }
    Ok(tally)
}

/// The tame finite strata of a table aggregated the same way as
/// [`oracle_tame_strata`]. Wild strata (S2, S7) are skipped.
pub fn tame_table(strata: &[Stratum]) -> Result<BTreeMap<TameKey, u64>> {
    let mut out = BTreeMap::new();
    for s in strata {
        if matches!(s.label, Label::S2 | Label::S7) {
            continue;
        }
        let Count::Poly(p) = &s.count else {
            return Err(Error::Internal(format!("{} is an infinite tame stratum", s.name())));
        };
        let c = p.coeff(0);
        if p.degree() > Some(0) || !c.is_integer() {
            return Err(Error::Internal(format!("{} has a non-constant count", s.name())));
        }
        let n: u64 = c
            .to_integer()
            .try_into()
            .map_err(|_| Error::Internal(format!("{} count out of range", s.name())))?;
        *out.entry((s.label, s.v.to_integer()?, s.centralizer)).or_default() += n;
    }
    Ok(out)
}

/// A representative subgroup for a stratum's stabilizer and its centralizer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerCheck {
    pub stratum: String,
    pub expected: u64,
    pub actual: u64,
}

pub fn representative_generators(fam: &Family, label: Label, tag: Option<&str>) -> Vec<GroupElem> {
    let l = fam.spec.l;
    let f = fam.field();
    let m = fam.matrices;
    match label {
        Label::S1 => Vec::new(),
        Label::S2 => vec![m.s],
        Label::S3 => match (fam.spec.kind, tag) {
            (FamilyKind::CyclicL, _) => {
                let e = fam.spec.twist.expect("validated");
                vec![fam.diag_exponents(1, e % l, e * e % l)]
            }
            (_, Some("prime")) => vec![fam.diag_exponents(1, 1, (2 * l - 2) % l)],
            _ => vec![fam.diag_exponents(0, 1, l - 1)],
        },
        Label::S4 => vec![fam.diag_exponents(1, l - 1, 0), fam.diag_exponents(0, 1, l - 1)],
        Label::S5 => vec![m.t],
        Label::S6 => vec![fam.c2l_generator()],
        Label::S7 => vec![m.s, m.t],
        Label::S8 => vec![m.t, GroupElem::from_ints(f, [[-1, 0, 0], [0, 1, 0], [0, 0, -1]])],
    }
}

/// Compares each stratum's centralizer order with the centralizer of a
/// representative stabilizer computed in the group.
pub fn centralizer_checks(fam: &Family, strata: &[Stratum]) -> Result<Vec<CentralizerCheck>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in strata {
        if !seen.insert((s.label, s.tag.clone())) {
            continue;
        }
        let gens = representative_generators(fam, s.label, s.tag.as_deref());
        let actual = fam.group.centralizer(&gens)?.order() as u64;
        let name = match &s.tag {
            Some(t) => format!("{}[{t}]", s.label),
            None => s.label.to_string(),
        };
        out.push(CentralizerCheck { stratum: name, expected: s.centralizer, actual });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::enumerate_strata;

    #[test]
    fn artin_schreier_small() {
        let f = build_field(1).unwrap();
        let counts = oracle_artin_schreier_counts(&f, 4, false, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(counts[&0], 2);
        assert_eq!(counts[&2], 6);
        assert_eq!(counts[&5], 54);
        let halves = oracle_artin_schreier_counts(&f, 4, true, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(halves[&0], 1);
        assert_eq!(halves[&5], 27);
        assert!(matches!(
            oracle_artin_schreier_counts(&f, 40, false, 1000),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn age_tallies() {
        let t = oracle_age_tallies(2, TallyMode::Elements).unwrap();
        assert_eq!(t, BTreeMap::from([(0, 1), (1, 3), (2, 0)]));
        let t = oracle_age_tallies(5, TallyMode::Elements).unwrap();
        assert_eq!(t, BTreeMap::from([(0, 1), (1, 18), (2, 6)]));
        let t = oracle_age_tallies(5, TallyMode::GeneratorPairs).unwrap();
        assert_eq!(t[&1], 360);
    }

    #[test]
    fn s6_classes() {
        assert_eq!(oracle_s6_classes(2).unwrap(), BTreeMap::from([(0, 1), (1, 5)]));
        assert_eq!(oracle_s6_classes(5).unwrap(), BTreeMap::from([(0, 4), (1, 38), (2, 30)]));
    }

    #[test]
    fn tame_strata_match_tables() {
        for (kind, l, r) in [
            (FamilyKind::CyclicLL, 2, 1),
            (FamilyKind::CyclicL, 7, 6),
            (FamilyKind::Sym2, 2, 2),
            (FamilyKind::SymLL, 5, 4),
        ] {
            let spec = FamilySpec::new(kind, l, r).unwrap();
            let fam = build_family(&spec).unwrap();
            let strata = enumerate_strata(&spec).unwrap();
            assert_eq!(oracle_tame_strata(&fam).unwrap(), tame_table(&strata).unwrap(), "{kind} l={l}");
        }
    }

    #[test]
    fn s7_small() {
        let f = build_field(1).unwrap();
        let counts = oracle_s7_counts(&f, 5, DEFAULT_ENUMERATION_CAP).unwrap();
        // (1/2)(q-1) q^{j - floor(j/3) - 1} at q = 3
        assert_eq!(counts[&(0, 1)], 1);
        assert_eq!(counts[&(0, 2)], 3);
        assert_eq!(counts[&(0, 4)], 9);
        assert_eq!(counts[&(1, 1)], 2);
        assert_eq!(counts[&(1, 5)], 6);
        assert!(!counts.contains_key(&(1, 2)));
    }
}
