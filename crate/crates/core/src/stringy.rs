//! Stringy point counts, truncated partial sums, Euler characteristics and
//! the quadratic mass formula.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{FamilyDescriptor, FamilyKind, FamilySpec};
use crate::fq::Field;
use crate::strata::{enumerate_strata, Count, Stratum};
use crate::symq::{assemble_stratum_sum, int, opt_rational_string, rat, rational_string, QPolynomial};
use crate::verify::CheckResult;

/// The closed form of the stringy point count for a family.
pub fn closed_form(kind: FamilyKind, l: u32) -> QPolynomial {
    let l = i64::from(l);
    let (c2, c1) = match kind {
        FamilyKind::CyclicL => (int(2) + rat(l - 1, 6), rat(l - 1, 6)),
        FamilyKind::CyclicLL => (int(2) + rat((l - 1) * (l + 4), 6), rat((l - 1) * (l - 2), 6)),
        FamilyKind::Sym2 => (int(6), int(1)),
        FamilyKind::SymLL => (rat((l + 5) * (l + 7), 12), rat((l + 1) * (l + 5), 12)),
    };
    QPolynomial::from_terms([(3, int(1)), (2, c2), (1, c1)])
}

/// Euler characteristic of a crepant resolution, in closed form.
pub fn euler_closed_form(kind: FamilyKind, l: u32) -> BigRational {
    let l = i64::from(l);
    match kind {
        FamilyKind::CyclicL => int(3) + rat(l - 1, 3),
        FamilyKind::CyclicLL => int(3) + rat(l * l - 1, 3),
        FamilyKind::Sym2 | FamilyKind::SymLL => rat((l - 1) * (l - 2), 6) + int(2 * l + 4),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    /// Evaluate at the family's own q.
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedSum {
    pub truncation: u32,
    #[serde(with = "rational_string")]
    pub partial: BigRational,
    /// Exact value of the omitted geometric tails, an upper bound for
    /// value - partial.
    #[serde(with = "rational_string")]
    pub tail_bound: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringyReport {
    pub family: FamilyDescriptor,
    pub polynomial: QPolynomial,
    #[serde(with = "opt_rational_string", default)]
    pub numeric_value: Option<BigRational>,
    pub euler_characteristic: i64,
    #[serde(default)]
    pub truncated: Option<TruncatedSum>,
    #[serde(default)]
    pub verification: Vec<CheckResult>,
}

/// Assembles the strata of `spec` into the stringy point count.
pub fn stringy_point_count(spec: &FamilySpec, mode: Mode) -> Result<StringyReport> {
    let strata = enumerate_strata(spec)?;
    let polynomial = assemble_stratum_sum(&strata)?;
    let numeric_value = match mode {
        Mode::Symbolic => None,
        Mode::Numeric => Some(polynomial.eval_int(u64::from(spec.q()))?),
    };
    let euler_characteristic = euler_characteristic(&polynomial)?;
    Ok(StringyReport {
        family: spec.descriptor(),
        polynomial,
        numeric_value,
        euler_characteristic,
        truncated: None,
        verification: Vec::new(),
    })
}

fn weighted_term(stratum: &Stratum, r: i64, q0: &BigRational) -> Result<BigRational> {
    let v = stratum.v_at(r).to_integer()?;
    let count = stratum.count_at(r).eval(q0)?;
    let weight = QPolynomial::monomial(int(1), 3 - v).eval(q0)?;
    Ok(count * weight / BigRational::from_integer(stratum.centralizer.into()))
}

/// Finite strata exactly plus progressions up to r <= `truncation`, with
/// the exact geometric tail of what was left out.
pub fn truncated_sum(strata: &[Stratum], q0: u64, truncation: u32) -> Result<TruncatedSum> {
    let q0 = BigRational::from_integer(q0.into());
    let mut partial = BigRational::zero();
    let mut tail_bound = BigRational::zero();
    for s in strata {
        match &s.count {
            Count::Poly(_) => partial += weighted_term(s, 0, &q0)?,
            Count::Progression(p) => {
                for r in 0..=i64::from(truncation) {
                    partial += weighted_term(s, r, &q0)?;
                }
                let d = s.v_step - p.slope;
                if d < 1 {
                    return Err(Error::DivergentSeries { label: s.name(), slope: -d });
                }
                let next = weighted_term(s, i64::from(truncation) + 1, &q0)?;
                let ratio = num_traits::pow(q0.clone(), d as usize);
                tail_bound += next * &ratio / (ratio - BigRational::one());
            }
        }
    }
    Ok(TruncatedSum { truncation, partial, tail_bound })
}

/// Sum of coefficients, after checking the factorization
/// Z(t) = prod (1 - q^i t)^{-a_i} against N_m = sum a_i q^{im} to order 6.
pub fn euler_characteristic(poly: &QPolynomial) -> Result<i64> {
    if !poly.is_polynomial() || !poly.has_integer_coeffs() {
        return Err(Error::NonIntegerCoefficient(poly.to_string()));
    }
    zeta_consistency(poly, 6)?;
    poly.coefficient_sum()
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::Internal("Euler characteristic out of range".into()))
}

/// Power series in t with coefficients in Q[q], truncated at t^order.
type Series = Vec<QPolynomial>;

fn series_mul(a: &Series, b: &Series, order: usize) -> Series {
    let mut out = vec![QPolynomial::zero(); order + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take((order + 1).saturating_sub(i)) {
            out[i + j] += &(x * y);
        }
    }
    out
}

/// Checks t Z'(t) = Z(t) sum_{m>=1} N_m t^m coefficientwise up to t^order.
pub fn zeta_consistency(poly: &QPolynomial, order: usize) -> Result<()> {
    let mut zeta: Series = vec![QPolynomial::zero(); order + 1];
    zeta[0] = QPolynomial::one();
    for (i, a) in poly.terms() {
        // (1 - x)^{-a} = sum_k binom(a + k - 1, k) x^k with x = q^i t
        let mut factor = vec![QPolynomial::zero(); order + 1];
        let mut binom = BigRational::one();
        for (k, slot) in factor.iter_mut().enumerate() {
            *slot = QPolynomial::monomial(binom.clone(), i * k as i64);
            binom = binom * (a + int(k as i64)) / int(k as i64 + 1);
        }
        zeta = series_mul(&zeta, &factor, order);
    }
    let lhs: Series = zeta.iter().enumerate().map(|(k, c)| c.scale(&int(k as i64))).collect();
    let mut counts: Series = vec![QPolynomial::zero(); order + 1];
    for (m, slot) in counts.iter_mut().enumerate().skip(1) {
        *slot = QPolynomial::from_terms(poly.terms().map(|(i, a)| (i * m as i64, a.clone())));
    }
    let rhs = series_mul(&zeta, &counts, order);
    match lhs.iter().zip(&rhs).position(|(a, b)| a != b) {
        None => Ok(()),
        Some(k) => Err(Error::Internal(format!("zeta function mismatch at t^{k}"))),
    }
}

/// P(n, j): partitions of n into exactly j positive parts.
pub fn partitions(n: u32, j: u32) -> BigInt {
    let n = n as usize;
    let j = j as usize;
    if j > n {
        return BigInt::zero();
    }
    // table[a][b] = P(a, b)
    let mut table = vec![vec![BigInt::zero(); j + 1]; n + 1];
    table[0][0] = BigInt::one();
    for a in 1..=n {
        for b in 1..=j.min(a) {
            table[a][b] = &table[a - 1][b - 1] + &table[a - b][b];
        }
    }
    table[n][j].clone()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MassReport {
    pub n: u32,
    /// sum_m P(n, n - m) q^{-m}.
    pub rhs: QPolynomial,
    #[serde(default)]
    pub q: Option<u32>,
    #[serde(with = "opt_rational_string", default)]
    pub rhs_value: Option<BigRational>,
    #[serde(with = "opt_rational_string", default)]
    pub lhs_enumerated: Option<BigRational>,
    #[serde(default)]
    pub matches: Option<bool>,
    /// How the left side weights each algebra.
    pub weighting: String,
}

pub fn mass_rhs_poly(n: u32) -> Result<QPolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("mass formula degree must be positive".into()));
    }
    Ok(QPolynomial::from_terms(
        (0..n).map(|m| (-i64::from(m), BigRational::from_integer(partitions(n, n - m)))),
    ))
}

/// The right side for degree n, and for n = 2 with a field also the
/// enumerated left side.
pub fn mass_report(n: u32, field: Option<&Field>) -> Result<MassReport> {
    let rhs = mass_rhs_poly(n)?;
    let mut report = MassReport {
        n,
        rhs,
        q: None,
        rhs_value: None,
        lhs_enumerated: None,
        matches: None,
        weighting: "1/#Aut".into(),
    };
    if let Some(field) = field {
        let value = report.rhs.eval_int(u64::from(field.order()))?;
        report.q = Some(field.order());
        if n == 2 {
            let lhs = mass_lhs_quadratic(field);
            report.matches = Some(lhs == value);
            report.lhs_enumerated = Some(lhs);
        }
        report.rhs_value = Some(value);
    }
    Ok(report)
}

/// sum over quadratic etale algebras K[x]/(x^2 - d) of q^{-disc}/#Aut, with
/// d running over K^x/(K^x)^2 represented by u t^e.
pub fn mass_lhs_quadratic(field: &Field) -> BigRational {
    let mut classes: BTreeMap<(bool, u32), u32> = BTreeMap::new();
    for u in field.elements().filter(|u| !u.is_zero()) {
        for e in 0..2u32 {
            let disc = e;
            classes.insert((field.is_square(u), e), disc);
        }
    }
    let q = BigRational::from_integer(field.order().into());
    classes
        .values()
        .map(|&disc| rat(1, 2) * num_traits::pow(q.recip(), disc as usize))
        .sum()
}

/// True when |a - b| <= bound.
pub fn within(a: &BigRational, b: &BigRational, bound: &BigRational) -> bool {
    (a - b).abs() <= *bound
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::build_field;

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form(FamilyKind::CyclicL, 13), QPolynomial::from_ints(&[0, 2, 4, 1]));
        assert_eq!(closed_form(FamilyKind::CyclicLL, 2), QPolynomial::from_ints(&[0, 0, 3, 1]));
        assert_eq!(closed_form(FamilyKind::SymLL, 5), QPolynomial::from_ints(&[0, 5, 10, 1]));
        assert_eq!(euler_closed_form(FamilyKind::CyclicLL, 5), int(11));
    }

    #[test]
    fn euler_values() {
        assert_eq!(euler_characteristic(&QPolynomial::from_ints(&[0, 2, 4, 1])).unwrap(), 7);
        assert_eq!(euler_characteristic(&QPolynomial::from_ints(&[0, 0, 0, 1])).unwrap(), 1);
        assert_eq!(euler_characteristic(&QPolynomial::from_ints(&[0, 1, 6, 1])).unwrap(), 8);
        let half = QPolynomial::monomial(rat(1, 2), 2);
        assert!(matches!(euler_characteristic(&half), Err(Error::NonIntegerCoefficient(_))));
    }

    #[test]
    fn partition_numbers() {
        assert_eq!(partitions(4, 2), BigInt::from(2));
        assert_eq!(partitions(7, 3), BigInt::from(4));
        assert_eq!(partitions(3, 4), BigInt::zero());
        let m4 = mass_rhs_poly(4).unwrap();
        assert_eq!(m4, QPolynomial::from_terms([(0, int(1)), (-1, int(1)), (-2, int(2)), (-3, int(1))]));
    }

    #[test]
    fn quadratic_mass() {
        for (r, expected) in [(1, rat(4, 3)), (2, rat(10, 9)), (3, rat(28, 27))] {
            let f = build_field(r).unwrap();
            assert_eq!(mass_lhs_quadratic(&f), expected);
            let report = mass_report(2, Some(&f)).unwrap();
            assert_eq!(report.matches, Some(true));
        }
    }

    #[test]
    fn numeric_report() {
        let spec = FamilySpec::new(FamilyKind::CyclicLL, 2, 1).unwrap();
        let report = stringy_point_count(&spec, Mode::Numeric).unwrap();
        assert_eq!(report.numeric_value, Some(int(54)));
        assert_eq!(report.euler_characteristic, 4);
    }
}
