//! The oracle suite: every closed-form count is recomputed by enumeration
//! and compared exactly.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::families::{build_family, Family, FamilyKind, FamilySpec};
use crate::par::map_chunks;
use crate::strata::oracle::{
    centralizer_checks, oracle_age_tallies, oracle_artin_schreier_counts, oracle_s6_classes_in,
    oracle_s7_counts, oracle_tame_strata, tame_table, TallyMode, DEFAULT_ENUMERATION_CAP,
};
use crate::strata::{enumerate_strata, Count, Label, Stratum};
use crate::stringy::{closed_form, euler_characteristic, euler_closed_form, truncated_sum, within};
use crate::symq::{assemble_stratum_sum, rat, rational_to_string};
use crate::vfun::vandermonde_unit_check;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

impl CheckResult {
    fn compare<T: PartialEq + Debug>(name: &str, expected: T, actual: T) -> CheckResult {
        CheckResult {
            name: name.into(),
            status: if expected == actual { Status::Pass } else { Status::Fail },
            expected: format!("{expected:?}"),
            actual: format!("{actual:?}"),
            residual: None,
        }
    }

    fn skipped(name: &str, why: String) -> CheckResult {
        CheckResult {
            name: name.into(),
            status: Status::Skipped,
            expected: String::new(),
            actual: why,
            residual: None,
        }
    }

    fn error(name: &str, err: crate::Error) -> CheckResult {
        CheckResult {
            name: name.into(),
            status: Status::Fail,
            expected: "no error".into(),
            actual: err.to_string(),
            residual: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    None,
    Fast,
    Full,
}

/// Enumeration budget for the fast level.
pub const FAST_CAP: u128 = 1_000_000;

/// Default truncation index for the partial-sum check.
pub const DEFAULT_TRUNCATION: u32 = 40;

fn cap_for(level: Level) -> u128 {
    match level {
        Level::Full => DEFAULT_ENUMERATION_CAP,
        _ => FAST_CAP,
    }
}

/// Largest j_max <= 8 with `base` * q^{#(j <= j_max, 3 not dividing j)} within the cap.
fn conductor_bound(q: u32, base: u128, cap: u128) -> Option<u32> {
    (1..=8u32).rev().find(|&j_max| {
        let n = (1..=j_max).filter(|j| j % 3 != 0).count() as u32;
        u128::from(q).checked_pow(n).and_then(|x| x.checked_mul(base)).is_some_and(|x| x <= cap)
    })
}

fn eval_count(s: &Stratum, r: i64, q: u32) -> Result<u128> {
    let value = s.count_at(r).eval_int(u64::from(q))?;
    value
        .to_integer()
        .to_u128()
        .filter(|_| value.is_integer())
        .ok_or_else(|| crate::Error::Internal(format!("{} count is not a natural number", s.name())))
}

fn check_artin_schreier(spec: &FamilySpec, strata: &[Stratum], cap: u128) -> Result<CheckResult> {
    let name = "artin-schreier";
    let q = spec.q();
    let Some(j_max) = conductor_bound(q, 3, cap) else {
        return Ok(CheckResult::skipped(name, format!("3 q^j exceeds {cap} at q = {q}")));
    };
    let actual = oracle_artin_schreier_counts(&spec.field, j_max, spec.kind.is_symmetric(), cap)?;
    let mut expected = BTreeMap::new();
    for s in strata.iter().filter(|s| s.label == Label::S2) {
        match s.count {
            Count::Poly(_) => {
                expected.insert(0, eval_count(s, 0, q)?);
            }
            Count::Progression(_) => {
                let mut r = 0;
                while s.j_at(r).unwrap() <= i64::from(j_max) {
                    expected.insert(s.j_at(r).unwrap() as u32 + 1, eval_count(s, r, q)?);
                    r += 1;
                }
            }
        }
    }
    Ok(CheckResult::compare(&format!("{name} (j <= {j_max})"), expected, actual))
}

fn check_s7(spec: &FamilySpec, strata: &[Stratum], cap: u128) -> Result<CheckResult> {
    let name = "s7-enumeration";
    let q = spec.q();
    let Some(j_max) = conductor_bound(q, 1, cap) else {
        return Ok(CheckResult::skipped(name, format!("q^j exceeds {cap} at q = {q}")));
    };
    let actual = oracle_s7_counts(&spec.field, j_max, cap)?;
    let mut expected = BTreeMap::new();
    for s in strata.iter().filter(|s| s.label == Label::S7) {
        let m = u32::from(s.tag.as_deref() == Some("m=1"));
        let mut r = 0;
        while s.j_at(r).unwrap() <= i64::from(j_max) {
            expected.insert((m, s.j_at(r).unwrap() as u32), eval_count(s, r, q)?);
            r += 1;
        }
    }
    Ok(CheckResult::compare(&format!("{name} (j <= {j_max})"), expected, actual))
}

fn check_tame(fam: &Family, strata: &[Stratum], cap: u128) -> Result<CheckResult> {
    let name = "tame-strata";
    let n = fam.group.order() as u128;
    if n * n > cap {
        return Ok(CheckResult::skipped(name, format!("|G|^2 = {} exceeds {cap}", n * n)));
    }
    Ok(CheckResult::compare(name, tame_table(strata)?, oracle_tame_strata(fam)?))
}

/// Expected age tallies over C_l^2: 1, (l-1)(l+4)/2, (l-1)(l-2)/2.
pub fn expected_age_tallies(l: u32) -> BTreeMap<i64, u64> {
    let l = u64::from(l);
    BTreeMap::from([(0, 1), (1, (l - 1) * (l + 4) / 2), (2, (l - 1) * (l - 2) / 2)])
}

/// Expected tallies of age(h2) over generating pairs of C_l^2.
pub fn expected_pair_tallies(l: u32) -> BTreeMap<i64, u64> {
    let l = u64::from(l);
    let f = l * l - l;
    BTreeMap::from([(0, 0), (1, (l - 1) * (l + 4) / 2 * f), (2, (l - 1) * (l - 2) / 2 * f)])
}

fn check_ages(l: u32, cap: u128) -> Result<Vec<CheckResult>> {
    let mut out = vec![CheckResult::compare(
        "age-tallies",
        expected_age_tallies(l),
        oracle_age_tallies(l, TallyMode::Elements)?,
    )];
    let size = u128::from(l).pow(6);
    out.push(if size > cap {
        CheckResult::skipped("generator-pairs", format!("l^6 = {size} exceeds {cap}"))
    } else {
        CheckResult::compare(
            "generator-pairs",
            expected_pair_tallies(l),
            oracle_age_tallies(l, TallyMode::GeneratorPairs)?,
        )
    });
    Ok(out)
}

fn check_s6(fam: &Family, strata: &[Stratum]) -> Result<CheckResult> {
    let mut expected: BTreeMap<i64, u64> = BTreeMap::new();
    for s in strata.iter().filter(|s| s.label == Label::S6) {
        *expected.entry(s.v.to_integer()?).or_default() += eval_count(s, 0, 1)? as u64;
    }
    Ok(CheckResult::compare("s6-classes", expected, oracle_s6_classes_in(fam)?))
}

fn check_centralizers(fam: &Family, strata: &[Stratum]) -> Result<CheckResult> {
    let checks = centralizer_checks(fam, strata)?;
    let expected: Vec<_> = checks.iter().map(|c| (c.stratum.clone(), c.expected)).collect();
    let actual: Vec<_> = checks.iter().map(|c| (c.stratum.clone(), c.actual)).collect();
    Ok(CheckResult::compare("centralizers", expected, actual))
}

fn check_vandermonde() -> CheckResult {
    let check = vandermonde_unit_check();
    CheckResult {
        name: "vandermonde".into(),
        status: if check.is_unit { Status::Pass } else { Status::Fail },
        expected: "nonzero constant mod 3".into(),
        actual: format!("{:?} over Z, {:?} mod 3", check.determinant, check.determinant_mod3),
        residual: None,
    }
}

fn check_assembly(spec: &FamilySpec, strata: &[Stratum]) -> Result<Vec<CheckResult>> {
    let poly = assemble_stratum_sum(strata)?;
    let mut out = vec![CheckResult {
        name: "assembly".into(),
        status: if poly == closed_form(spec.kind, spec.l) { Status::Pass } else { Status::Fail },
        expected: closed_form(spec.kind, spec.l).to_string(),
        actual: poly.to_string(),
        residual: Some((&poly - &closed_form(spec.kind, spec.l)).to_string()),
    }];
    let chi = euler_characteristic(&poly)?;
    out.push(CheckResult::compare(
        "euler",
        rational_to_string(&euler_closed_form(spec.kind, spec.l)),
        chi.to_string(),
    ));
    let value = poly.eval_int(u64::from(spec.q()))?;
    let t = truncated_sum(strata, u64::from(spec.q()), DEFAULT_TRUNCATION)?;
    let relative = &t.tail_bound / &value;
    let ok = within(&value, &t.partial, &t.tail_bound) && relative < rat(1, 1_000_000_000);
    out.push(CheckResult {
        name: format!("truncation (J = {DEFAULT_TRUNCATION})"),
        status: if ok { Status::Pass } else { Status::Fail },
        expected: rational_to_string(&value),
        actual: format!("{:.6e}", t.partial.to_f64().unwrap_or(f64::NAN)),
        residual: Some(format!(
            "{:.3e} (bound {:.3e})",
            (&value - &t.partial).to_f64().unwrap_or(f64::NAN),
            t.tail_bound.to_f64().unwrap_or(f64::NAN)
        )),
    });
    Ok(out)
}

type Check<'a> = Box<dyn Fn() -> Result<Vec<CheckResult>> + Send + Sync + 'a>;

/// Runs the suite for one family. Results are sorted by check name.
pub fn run_checks(spec: &FamilySpec, level: Level) -> Result<Vec<CheckResult>> {
    if level == Level::None {
        return Ok(Vec::new());
    }
    let cap = cap_for(level);
    let fam = build_family(spec)?;
    let strata = enumerate_strata(spec)?;
    let (fam, strata) = (&fam, strata.as_slice());
    let mut checks: Vec<(&str, Check)> = vec![
        ("artin-schreier", Box::new(move || Ok(vec![check_artin_schreier(spec, strata, cap)?]))),
        ("tame-strata", Box::new(move || Ok(vec![check_tame(fam, strata, cap)?]))),
        ("centralizers", Box::new(move || Ok(vec![check_centralizers(fam, strata)?]))),
        ("vandermonde", Box::new(|| Ok(vec![check_vandermonde()]))),
        ("assembly", Box::new(move || check_assembly(spec, strata))),
    ];
    if spec.kind != FamilyKind::CyclicL {
        checks.push(("age-tallies", Box::new(move || check_ages(spec.l, cap))));
    }
    if spec.kind.is_symmetric() {
        checks.push(("s7-enumeration", Box::new(move || Ok(vec![check_s7(spec, strata, cap)?]))));
        checks.push(("s6-classes", Box::new(move || Ok(vec![check_s6(fam, strata)?]))));
    }
    let checks = &checks;
    let mut results: Vec<CheckResult> = map_chunks(checks.len() as u64, |range| {
        range
            .flat_map(|i| {
                let (name, check) = &checks[i as usize];
                check().unwrap_or_else(|e| vec![CheckResult::error(name, e)])
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    results.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(results)
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(CheckResult::passed)
}
