//! Exact Laurent polynomials and rational functions in one variable q.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::strata::{Count, Stratum};

/// "n/d", or "n" when the denominator is 1.
pub fn rational_to_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("not a rational: {s:?}"));
    let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(parse(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse(s)?)),
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Serde adapter for a single rational stored as a string.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for an optional rational.
pub mod opt_rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(
        x: &Option<BigRational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&rational_to_string(x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<BigRational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// A Laurent polynomial in q with rational coefficients. Zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct QPolynomial {
    coeffs: BTreeMap<i64, BigRational>,
}

impl QPolynomial {
    pub fn zero() -> QPolynomial {
        QPolynomial::default()
    }

    pub fn one() -> QPolynomial {
        QPolynomial::constant(BigRational::one())
    }

    /// The variable q.
    pub fn q() -> QPolynomial {
        QPolynomial::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> QPolynomial {
        QPolynomial::monomial(c, 0)
    }

    pub fn monomial(c: BigRational, exp: i64) -> QPolynomial {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        QPolynomial { coeffs }
    }

    /// From integer coefficients listed by increasing degree starting at q^0.
    pub fn from_ints(coeffs: &[i64]) -> QPolynomial {
        QPolynomial::from_terms(coeffs.iter().enumerate().map(|(e, &c)| (e as i64, int(c))))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigRational)>) -> QPolynomial {
        let mut p = QPolynomial::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.values().next_back()
    }

    /// No negative powers of q.
    pub fn is_polynomial(&self) -> bool {
        self.min_exponent().is_none_or(|e| e >= 0)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &BigRational) -> QPolynomial {
        if c.is_zero() {
            return QPolynomial::zero();
        }
        QPolynomial { coeffs: self.coeffs.iter().map(|(&e, x)| (e, x * c)).collect() }
    }

    /// Multiplies by q^k.
    pub fn shift(&self, k: i64) -> QPolynomial {
        QPolynomial { coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> QPolynomial {
        (0..n).fold(QPolynomial::one(), |acc, _| &acc * self)
    }

    /// Exact value at q = x. Negative exponents require x != 0.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        if x.is_zero() && !self.is_polynomial() {
            return Err(Error::Domain("negative power of q evaluated at 0".into()));
        }
        let mut total = BigRational::zero();
        for (&e, c) in &self.coeffs {
            let power = if e >= 0 {
                num_traits::pow(x.clone(), e as usize)
            } else {
                num_traits::pow(x.recip(), (-e) as usize)
            };
            total += c * power;
        }
        Ok(total)
    }

    pub fn eval_int(&self, q: u64) -> Result<BigRational> {
        self.eval(&BigRational::from_integer(q.into()))
    }

    /// Value at q = 1.
    pub fn coefficient_sum(&self) -> BigRational {
        self.coeffs.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    fn make_monic(&self) -> QPolynomial {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.recip()),
            None => QPolynomial::zero(),
        }
    }

    /// Euclidean division of genuine polynomials.
    pub fn div_rem(&self, divisor: &QPolynomial) -> Result<(QPolynomial, QPolynomial)> {
        if divisor.is_zero() {
            return Err(Error::Domain("division by the zero polynomial".into()));
        }
        if !self.is_polynomial() || !divisor.is_polynomial() {
            return Err(Error::Domain("division of Laurent polynomials".into()));
        }
        let d = divisor.degree().expect("nonzero");
        let lc = divisor.leading_coeff().expect("nonzero").clone();
        let mut quotient = QPolynomial::zero();
        let mut rest = self.clone();
        while let Some(e) = rest.degree().filter(|&e| e >= d) {
            let c = rest.coeff(e) / &lc;
            let term = QPolynomial::monomial(c, e - d);
            rest = &rest - &(&term * divisor);
            quotient = &quotient + &term;
        }
        Ok((quotient, rest))
    }

    /// Monic gcd of genuine polynomials; zero if both are zero.
    pub fn gcd(&self, other: &QPolynomial) -> Result<QPolynomial> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic())
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let coeff = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("({}/{})", abs.numer(), abs.denom())
            };
            match e {
                0 => f.write_str(&coeff)?,
                _ => {
                    if !abs.is_one() {
                        f.write_str(&coeff)?;
                        f.write_str("*")?;
                    }
                    if e == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial({self})")
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;

    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &rhs.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;

    fn neg(self) -> QPolynomial {
        QPolynomial { coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect() }
    }
}

impl Add for QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: QPolynomial) -> QPolynomial {
        &self + &rhs
    }
}

impl Sub for QPolynomial {
    type Output = QPolynomial;

    fn sub(self, rhs: QPolynomial) -> QPolynomial {
        &self - &rhs
    }
}

impl Mul for QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: QPolynomial) -> QPolynomial {
        &self * &rhs
    }
}

impl Neg for QPolynomial {
    type Output = QPolynomial;

    fn neg(self) -> QPolynomial {
        -&self
    }
}

impl AddAssign<&QPolynomial> for QPolynomial {
    fn add_assign(&mut self, rhs: &QPolynomial) {
        for (&e, c) in &rhs.coeffs {
            self.add_term(e, c.clone());
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    coeffs: BTreeMap<String, String>,
}

impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e.to_string(), rational_to_string(c)))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(repr.coeffs.len());
        for (e, c) in repr.coeffs {
            let e: i64 = e.parse().map_err(serde::de::Error::custom)?;
            terms.push((e, parse_rational(&c).map_err(serde::de::Error::custom)?));
        }
        Ok(QPolynomial::from_terms(terms))
    }
}

/// A rational function num/den in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QRational {
    numerator: QPolynomial,
    denominator: QPolynomial,
}

impl QRational {
    pub fn new(numerator: QPolynomial, denominator: QPolynomial) -> Result<QRational> {
        if denominator.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        QRational { numerator, denominator }.normalized()
    }

    pub fn from_poly(p: QPolynomial) -> QRational {
        QRational::new(p, QPolynomial::one()).expect("denominator is 1")
    }

    pub fn zero() -> QRational {
        QRational::from_poly(QPolynomial::zero())
    }

    pub fn numerator(&self) -> &QPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &QPolynomial {
        &self.denominator
    }

    /// Clears negative powers, cancels the gcd and makes the denominator monic.
    pub fn normalized(&self) -> Result<QRational> {
        let low = self
            .numerator
            .min_exponent()
            .unwrap_or(0)
            .min(self.denominator.min_exponent().unwrap_or(0))
            .min(0);
        let num = self.numerator.shift(-low);
        let den = self.denominator.shift(-low);
        if num.is_zero() {
            return Ok(QRational { numerator: num, denominator: QPolynomial::one() });
        }
        let g = num.gcd(&den)?;
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lc = den.leading_coeff().expect("nonzero").recip();
        Ok(QRational { numerator: num.scale(&lc), denominator: den.scale(&lc) })
    }

    pub fn add(&self, other: &QRational) -> Result<QRational> {
        if self.denominator == other.denominator {
            return QRational::new(&self.numerator + &other.numerator, self.denominator.clone());
        }
        QRational::new(
            &(&self.numerator * &other.denominator) + &(&other.numerator * &self.denominator),
            &self.denominator * &other.denominator,
        )
    }

    pub fn mul(&self, other: &QRational) -> Result<QRational> {
        QRational::new(
            &self.numerator * &other.numerator,
            &self.denominator * &other.denominator,
        )
    }

    /// The polynomial this equals, if the denominator is 1.
    pub fn as_polynomial(&self) -> Option<&QPolynomial> {
        (self.denominator == QPolynomial::one()).then_some(&self.numerator)
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.denominator.eval(x)?;
        if d.is_zero() {
            return Err(Error::Domain("pole".into()));
        }
        Ok(self.numerator.eval(x)? / d)
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_polynomial() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "({}) / ({})", self.numerator, self.denominator),
        }
    }
}

impl fmt::Debug for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRational({self})")
    }
}

/// sum_{r >= 0} coeff * q^base * q^{-ratio r} = coeff q^{base+ratio} / (q^ratio - 1).
pub fn sum_geometric(coeff: &QPolynomial, base_exp: i64, ratio_exp: i64) -> Result<QRational> {
    if ratio_exp < 1 {
        return Err(Error::Domain(format!("ratio exponent {ratio_exp} < 1")));
    }
    let den = &QPolynomial::monomial(BigRational::one(), ratio_exp) - &QPolynomial::one();
    QRational::new(coeff.shift(base_exp + ratio_exp), den)
}

/// Contribution of one stratum, count q^{3-v} / centralizer summed over the
/// stratum.
pub fn stratum_contribution(stratum: &Stratum) -> Result<QRational> {
    let v = stratum.v.to_integer()?;
    let weight = BigRational::new(BigInt::one(), BigInt::from(stratum.centralizer));
    match &stratum.count {
        Count::Poly(p) => Ok(QRational::from_poly(p.shift(3 - v).scale(&weight))),
        Count::Progression(pr) => {
            let ratio = stratum.v_step - pr.slope;
            if ratio < 1 {
                return Err(Error::DivergentSeries {
                    label: stratum.name(),
                    slope: -ratio,
                });
            }
            sum_geometric(&pr.coeff.scale(&weight), pr.intercept + 3 - v, ratio)
        }
    }
}

/// Sum of all stratum contributions, which must be a polynomial.
pub fn assemble_stratum_sum(strata: &[Stratum]) -> Result<QPolynomial> {
    let total = assemble_rational(strata)?;
    match total.as_polynomial() {
        Some(p) if p.is_polynomial() => Ok(p.clone()),
        _ => Err(Error::NonPolynomialResult { denominator: total.denominator().to_string() }),
    }
}

/// Sum of all stratum contributions as a rational function.
pub fn assemble_rational(strata: &[Stratum]) -> Result<QRational> {
    let mut total = QRational::zero();
    for s in strata {
        total = total.add(&stratum_contribution(s)?)?;
    }
    Ok(total)
}
