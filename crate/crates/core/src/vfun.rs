//! The v-function on the strata that occur for the four families.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fq::Field;
use crate::grp::{age, GroupElem};

/// A nonnegative rational v-value. Every value realized by the four
/// families is an integer; integrality is checked, not assumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VValue(pub Ratio<i64>);

impl VValue {
    pub const ZERO: VValue = VValue(Ratio::new_raw(0, 1));

    pub fn from_int(v: i64) -> VValue {
        VValue(Ratio::from_integer(v))
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_integer(&self) -> Result<i64> {
        if self.0.is_integer() {
            Ok(self.0.to_integer())
        } else {
            Err(Error::FractionalExponent(self.to_string()))
        }
    }
}

impl fmt::Display for VValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for VValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<VValue> {
        let bad = || Error::InvalidArgument(format!("not a rational: {s:?}"));
        let value = match s.split_once('/') {
            Some((n, d)) => {
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Ratio::new(n.trim().parse().map_err(|_| bad())?, d)
            }
            None => Ratio::from_integer(s.trim().parse().map_err(|_| bad())?),
        };
        Ok(VValue(value))
    }
}

impl Serialize for VValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for VValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// v of a tamely ramified algebra whose inertia generator maps to `h`.
pub fn v_tame(field: &Arc<Field>, h: &GroupElem) -> Result<VValue> {
    age(field, h).map(VValue)
}

/// v of a C_3 Artin-Schreier algebra with reduced conductor j.
pub fn v_c3(j: u32) -> Result<VValue> {
    match j {
        0 => Ok(VValue::ZERO),
        j if j % 3 == 0 => Err(Error::Domain(format!("no reduced Artin-Schreier conductor {j}"))),
        j => Ok(VValue::from_int(i64::from(j) + 1)),
    }
}

/// v for the cyclic subgroup of order 2l, given v_K(alpha^{2l}) = `val` and
/// the residue r of the generator power mod l.
pub fn v_c2l(l: u32, val: u32, r: u32) -> Result<VValue> {
    if val == l {
        return Ok(VValue::from_int(1));
    }
    if val != 1 && val != 2 {
        return Err(Error::Domain(format!("valuation {val} not in {{1, 2, {l}}}")));
    }
    if r == 0 || r >= l {
        return Err(Error::Domain(format!("residue {r} outside [1, {}]", l - 1)));
    }
    Ok(VValue::from_int(if 2 * r >= l { 1 } else { 2 }))
}

/// v on the S_3 strata, m = 0 for unramified Q/K and m = 1 for ramified.
pub fn v_s3(m: u32, j: u32) -> Result<VValue> {
    let j = i64::from(j);
    match m {
        0 if j > 0 && j % 3 != 0 => Ok(VValue::from_int(Integer::div_ceil(&j, &3) + Integer::div_ceil(&(2 * j), &3))),
        1 if j > 0 && j.gcd(&6) == 1 => {
            Ok(VValue::from_int(1 + Integer::div_ceil(&j, &6) + Integer::div_ceil(&(2 * j - 3), &6)))
        }
        _ => Err(Error::Domain(format!("no S_3 stratum with m = {m}, j = {j}"))),
    }
}

/// Outcome of the determinant identity used for additivity of v on S_3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VandermondeCheck {
    /// Determinant over Z[beta], coefficients in increasing degree.
    pub determinant: Vec<i64>,
    /// The same polynomial reduced mod 3.
    pub determinant_mod3: Vec<i64>,
    /// True when the reduction is a nonzero constant.
    pub is_unit: bool,
}

type IntPoly = Vec<i64>;

fn ip_trim(mut p: IntPoly) -> IntPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn ip_add(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let n = a.len().max(b.len());
    ip_trim((0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect())
}

fn ip_neg(a: &IntPoly) -> IntPoly {
    a.iter().map(|c| -c).collect()
}

fn ip_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ip_trim(out)
}

fn det3(m: &[[IntPoly; 3]; 3]) -> IntPoly {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        ip_add(&ip_mul(&m[r1][c1], &m[r2][c2]), &ip_neg(&ip_mul(&m[r1][c2], &m[r2][c1])))
    };
    let t0 = ip_mul(&m[0][0], &minor(1, 2, 1, 2));
    let t1 = ip_neg(&ip_mul(&m[0][1], &minor(1, 2, 0, 2)));
    let t2 = ip_mul(&m[0][2], &minor(1, 2, 0, 1));
    ip_add(&ip_add(&t0, &t1), &t2)
}

/// Expands det [[1,1,1],[b+1,b,b-1],[(b+1)^2,b^2,(b-1)^2]] in Z[b] and
/// reduces it mod 3.
pub fn vandermonde_unit_check() -> VandermondeCheck {
    let one: IntPoly = vec![1];
    let nodes: [IntPoly; 3] = [vec![1, 1], vec![0, 1], vec![-1, 1]];
    let squares = nodes.clone().map(|n| ip_mul(&n, &n));
    let m = [[one.clone(), one.clone(), one], nodes, squares];
    let determinant = det3(&m);
    let determinant_mod3 = ip_trim(determinant.iter().map(|c| c.rem_euclid(3)).collect());
    let is_unit = determinant_mod3.len() == 1;
    VandermondeCheck { determinant, determinant_mod3, is_unit }
}

/// Evaluates an integer polynomial at `x`.
pub fn eval_int_poly(p: &[i64], x: i64) -> i64 {
    p.iter().rev().fold(0, |acc, c| acc * x + c)
}
