//! Stratification of the G-etale algebras over F_q((t)) for each family.
//!
//! Finite strata carry an exact count. Infinite strata are arithmetic
//! progressions in the conductor j = modulus * r + residue, with count
//! coeff(q) * q^{slope r + intercept} and v = v + v_step * r.

pub mod oracle;

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{FamilyDescriptor, FamilyKind, FamilySpec};
use crate::symq::{int, rat, QPolynomial};
use crate::vfun::{v_c3, v_s3, VValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    S8,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sublabel {
    /// S_{i,m}: the sub-stratum where v = m.
    Index(u32),
    /// Human-readable reindexing, e.g. "j = 3r + 1, r >= 0".
    Progression(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgressionCount {
    pub coeff: QPolynomial,
    pub slope: i64,
    pub intercept: i64,
    pub residue: u32,
    pub modulus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Count {
    Poly(QPolynomial),
    Progression(ProgressionCount),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub family: FamilyDescriptor,
    pub label: Label,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
    pub sublabel: Sublabel,
    /// v on the stratum, or at r = 0 for a progression.
    pub v: VValue,
    #[serde(default)]
    pub v_step: i64,
    pub centralizer: u64,
    /// Set on S7, whose counts enter the sum with denominator 1 rather than
    /// divided by the order of H_A.
    #[serde(default)]
    pub pre_weighted: bool,
    pub count: Count,
}

impl Stratum {
    pub fn name(&self) -> String {
        let tag = self.tag.as_deref().map(|t| format!("{t}, ")).unwrap_or_default();
        match &self.sublabel {
            Sublabel::Index(m) => format!("{}[{tag}m={m}]", self.label),
            Sublabel::Progression(d) => format!("{}[{tag}{d}]", self.label),
        }
    }

    pub fn is_progression(&self) -> bool {
        matches!(self.count, Count::Progression(_))
    }

    /// v at index r of a progression (r is ignored for finite strata).
    pub fn v_at(&self, r: i64) -> VValue {
        match self.count {
            Count::Poly(_) => self.v,
            Count::Progression(_) => VValue(self.v.0 + self.v_step * r),
        }
    }

    /// Conductor j at index r, for progressions.
    pub fn j_at(&self, r: i64) -> Option<i64> {
        match &self.count {
            Count::Poly(_) => None,
            Count::Progression(p) => Some(i64::from(p.modulus) * r + i64::from(p.residue)),
        }
    }

    /// The count as a polynomial in q; for progressions, the r-th term.
    pub fn count_at(&self, r: i64) -> QPolynomial {
        match &self.count {
            Count::Poly(p) => p.clone(),
            Count::Progression(p) => p.coeff.shift(p.slope * r + p.intercept),
        }
    }
}

fn exact(n: i64, d: i64, what: &str) -> Result<BigRational> {
    if d == 0 || n % d != 0 || n < 0 {
        return Err(Error::Internal(format!("{what}: {n}/{d} is not a nonnegative integer")));
    }
    Ok(int(n / d))
}

struct Builder {
    family: FamilyDescriptor,
    out: Vec<Stratum>,
}

impl Builder {
    fn fixed(&mut self, label: Label, tag: Option<&str>, v: u32, count: BigRational, c: u64) {
        if count.is_zero() {
            return;
        }
        self.out.push(Stratum {
            family: self.family.clone(),
            label,
            tag: tag.map(str::to_string),
            sublabel: Sublabel::Index(v),
            v: VValue::from_int(i64::from(v)),
            v_step: 0,
            centralizer: c,
            pre_weighted: false,
            count: Count::Poly(QPolynomial::constant(count)),
        });
    }

    /// A progression built from per-conductor exponent and v functions,
    /// whose affinity in r is checked rather than assumed.
    #[allow(clippy::too_many_arguments)]
    fn progression(
        &mut self,
        label: Label,
        tag: &str,
        residue: u32,
        modulus: u32,
        coeff: QPolynomial,
        exponent: impl Fn(i64) -> i64,
        v: impl Fn(i64) -> Result<VValue>,
        c: u64,
    ) -> Result<()> {
        let j = |r: i64| i64::from(modulus) * r + i64::from(residue);
        let e0 = exponent(j(0));
        let slope = exponent(j(1)) - e0;
        let v0 = v(j(0))?.to_integer()?;
        let v_step = v(j(1))?.to_integer()? - v0;
        for r in 0..24 {
            if exponent(j(r)) != e0 + slope * r || v(j(r))?.to_integer()? != v0 + v_step * r {
                return Err(Error::Internal(format!(
                    "{label} residue {residue} mod {modulus} is not affine in r"
                )));
            }
        }
        if slope < 0 {
            return Err(Error::Internal(format!("{label} has negative count slope")));
        }
        self.out.push(Stratum {
            family: self.family.clone(),
            label,
            tag: Some(tag.to_string()),
            sublabel: Sublabel::Progression(format!("j = {modulus}r + {residue}, r >= 0")),
            v: VValue::from_int(v0),
            v_step,
            centralizer: c,
            pre_weighted: label == Label::S7,
            count: Count::Progression(ProgressionCount {
                coeff,
                slope,
                intercept: e0,
                residue,
                modulus,
            }),
        });
        Ok(())
    }
}

fn q_minus_one() -> QPolynomial {
    QPolynomial::from_ints(&[-1, 1])
}

/// Exponent of q in the number of reduced Artin-Schreier classes with
/// leading pole j: j - floor(j/3) - 1.
pub fn artin_schreier_exponent(j: i64) -> i64 {
    j - j / 3 - 1
}

/// Exponent for the ramified quadratic case: j - floor(j/2) - floor(j/3) + floor(j/6) - 1.
pub fn coprime_six_exponent(j: i64) -> i64 {
    j - j / 2 - j / 3 + j / 6 - 1
}

fn c3_v(j: i64) -> Result<VValue> {
    v_c3(u32::try_from(j).map_err(|_| Error::Internal("conductor overflow".into()))?)
}

fn push_s2(b: &mut Builder, unramified: i64, coeff: QPolynomial) -> Result<()> {
    b.fixed(Label::S2, Some("unramified"), 0, int(unramified), 3);
    for residue in [1, 2] {
        b.progression(Label::S2, "ramified", residue, 3, coeff.clone(), artin_schreier_exponent, c3_v, 3)?;
    }
    Ok(())
}

fn push_s7(b: &mut Builder) -> Result<()> {
    let half = q_minus_one().scale(&rat(1, 2));
    for residue in [1, 2] {
        b.progression(Label::S7, "m=0", residue, 3, half.clone(), artin_schreier_exponent, |j| {
            v_s3(0, j as u32)
        }, 1)?;
    }
    for residue in [1, 5] {
        b.progression(Label::S7, "m=1", residue, 6, q_minus_one(), coprime_six_exponent, |j| {
            v_s3(1, j as u32)
        }, 1)?;
    }
    Ok(())
}

/// The complete list of strata for a validated family. Strata with count 0
/// are omitted.
pub fn enumerate_strata(spec: &FamilySpec) -> Result<Vec<Stratum>> {
    let l = i64::from(spec.l);
    let l2 = l * l;
    let order = spec.kind.group_order(spec.l) as u64;
    let mut b = Builder { family: spec.descriptor(), out: Vec::new() };
    b.fixed(Label::S1, None, 0, int(1), order);
    match spec.kind {
        FamilyKind::CyclicL => {
            push_s2(&mut b, 2, q_minus_one().scale(&int(3)))?;
            let c = l as u64;
            b.fixed(Label::S3, None, 0, exact(l - 1, 3, "S3")?, c);
            b.fixed(Label::S3, None, 1, exact(l * (l - 1), 6, "S3")?, c);
            b.fixed(Label::S3, None, 2, exact(l * (l - 1), 6, "S3")?, c);
        }
        FamilyKind::CyclicLL => {
            push_s2(&mut b, 2, q_minus_one().scale(&int(3)))?;
            let c = l2 as u64;
            b.fixed(Label::S3, None, 0, exact(l2 - 1, 3, "S3")?, c);
            b.fixed(Label::S3, None, 1, exact(l * (l - 1) * (l + 4), 6, "S3")?, c);
            b.fixed(Label::S3, None, 2, exact(l * (l - 1) * (l - 2), 6, "S3")?, c);
            b.fixed(Label::S4, None, 1, exact((l - 1) * (l + 4) * (l2 - l), 6, "S4")?, c);
            b.fixed(Label::S4, None, 2, exact((l - 1) * (l - 2) * (l2 - l), 6, "S4")?, c);
        }
        FamilyKind::Sym2 | FamilyKind::SymLL => {
            push_s2(&mut b, 1, q_minus_one().scale(&rat(3, 2)))?;
            let half = l / 2;
            let prime = (2 * l2) as u64;
            b.fixed(Label::S3, Some("prime"), 0, int(l - 1), prime);
            b.fixed(Label::S3, Some("prime"), 1, int(l * half), prime);
            b.fixed(Label::S3, Some("prime"), 2, int(l * (l - 1 - half)), prime);
            let free = l2 as u64;
            b.fixed(Label::S3, Some("free"), 0, exact((l - 1) * (l - 2), 6, "S3")?, free);
            let a1 = exact((l - 1) * (l + 4), 2, "S3")? - int(3 * half);
            let a2 = exact((l - 1) * (l - 2), 2, "S3")? - int(3 * (l - 1 - half));
            let scaled = |a: BigRational| -> Result<BigRational> {
                let n = a * int(l);
                exact(n.to_integer().try_into().unwrap_or(-1), 6, "S3 free")
            };
            b.fixed(Label::S3, Some("free"), 1, scaled(a1)?, free);
            b.fixed(Label::S3, Some("free"), 2, scaled(a2)?, free);
            b.fixed(Label::S4, None, 1, exact((l - 1) * (l + 4) * (l2 - l), 12, "S4")?, free);
            b.fixed(Label::S4, None, 2, exact((l - 1) * (l - 2) * (l2 - l), 12, "S4")?, free);
            let c2l = (2 * l) as u64;
            b.fixed(Label::S5, None, 0, int(1), c2l);
            b.fixed(Label::S5, None, 1, int(2), c2l);
            if spec.kind == FamilyKind::Sym2 {
                b.fixed(Label::S6, None, 0, int(1), 4);
                b.fixed(Label::S6, None, 1, int(5), 4);
            } else {
                b.fixed(Label::S6, None, 0, int(l - 1), c2l);
                b.fixed(Label::S6, None, 1, exact(3 * l * (l - 1) + 4 * (l - 1), 2, "S6")?, c2l);
                b.fixed(Label::S6, None, 2, exact(3 * l * (l - 1), 2, "S6")?, c2l);
            }
            push_s7(&mut b)?;
            if spec.kind == FamilyKind::Sym2 {
                b.fixed(Label::S8, None, 1, int(3), 4);
            }
        }
    }
    for s in &b.out {
        if !order.is_multiple_of(s.centralizer) {
            return Err(Error::Internal(format!(
                "{}: centralizer {} does not divide {order}",
                s.name(),
                s.centralizer
            )));
        }
    }
    Ok(b.out)
}
