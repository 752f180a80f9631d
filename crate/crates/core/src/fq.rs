//! Arithmetic in the finite fields F_{3^r}.
//!
//! Elements are stored as their coefficient vector in the root of the field
//! modulus, packed little-endian into a base-3 integer (the "code"). The
//! modulus is the smallest primitive polynomial of degree `r` in that same
//! encoding, so multiplication runs through log/exp tables with respect to
//! the root and addition through digit-wise lookup tables.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CHARACTERISTIC: u32 = 3;

/// Largest field degree over F_3 that will be tabulated (q = 531441).
pub const MAX_DEGREE: u32 = 12;

/// An element of some [`Field`]; meaningless without the field it came from.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fq(u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    /// Base-3 packed coefficient vector.
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq({})", self.0)
    }
}

/// The field F_{3^r} = F_3[x]/(modulus).
pub struct Field {
    degree: u32,
    order: u32,
    modulus: Vec<u8>,
    generator: Fq,
    // powers of the root of the modulus (the root generates the unit group)
    exp: Vec<u32>,
    log: Vec<u32>,
    split: u32,
    add_table: Vec<u32>,
    sub_table: Vec<u32>,
    wp_image: Vec<bool>,
    coset_reps: [Fq; 3],
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("order", &self.order)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.modulus == other.modulus
    }
}

impl Eq for Field {}

/// Builds F_{3^r} with its deterministic primitive modulus.
pub fn build_field(r: u32) -> Result<Arc<Field>> {
    Field::new(r).map(Arc::new)
}

impl Field {
    pub fn new(r: u32) -> Result<Field> {
        if r == 0 {
            return Err(Error::InvalidArgument("field degree must be at least 1".into()));
        }
        if r > MAX_DEGREE {
            return Err(Error::FieldTooLarge { degree: r, max: MAX_DEGREE });
        }
        let order = 3u32.pow(r);
        let (modulus, exp) = if r == 1 {
            (vec![0, 1], vec![1, 2])
        } else {
            let modulus = smallest_primitive_modulus(r);
            let exp = root_powers(&modulus, order);
            (modulus, exp)
        };
        let mut log = vec![0u32; order as usize];
        for (i, &c) in exp.iter().enumerate() {
            log[c as usize] = i as u32;
        }

        let half = r.div_ceil(2);
        let split = 3u32.pow(half);
        let mut add_table = vec![0u32; (split * split) as usize];
        let mut sub_table = vec![0u32; (split * split) as usize];
        for a in 0..split {
            for b in 0..split {
                add_table[(a * split + b) as usize] = digitwise(a, b, half, |x, y| (x + y) % 3);
                sub_table[(a * split + b) as usize] = digitwise(a, b, half, |x, y| (x + 3 - y) % 3);
            }
        }

        let mut field = Field {
            degree: r,
            order,
            modulus,
            generator: Fq::ZERO,
            exp,
            log,
            split,
            add_table,
            sub_table,
            wp_image: Vec::new(),
            coset_reps: [Fq::ZERO; 3],
        };
        field.generator = (1..order)
            .map(Fq)
            .find(|&a| field.multiplicative_order(a) == u64::from(order - 1))
            .expect("unit group of a finite field is cyclic");

        let mut image = vec![false; order as usize];
        for x in field.elements() {
            image[field.wp(x).0 as usize] = true;
        }
        field.wp_image = image;
        let first = field
            .elements()
            .find(|&x| !field.in_wp_image(x))
            .expect("k/wp(k) has order 3");
        let second = field
            .elements()
            .find(|&x| !field.in_wp_image(x) && !field.in_wp_image(field.sub(x, first)))
            .expect("k/wp(k) has order 3");
        field.coset_reps = [Fq::ZERO, first, second];
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        CHARACTERISTIC
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// q = 3^r.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Monic modulus, little-endian, length r+1.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.order).map(Fq)
    }

    pub fn zero(&self) -> Fq {
        Fq::ZERO
    }

    pub fn one(&self) -> Fq {
        Fq::ONE
    }

    /// Image of an integer under Z -> F_3 -> F_q.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(3) as u32)
    }

    pub fn from_code(&self, code: u32) -> Result<Fq> {
        if code >= self.order {
            return Err(Error::InvalidArgument(format!("code {code} outside F_{}", self.order)));
        }
        Ok(Fq(code))
    }

    pub fn from_coeffs(&self, coeffs: &[u8]) -> Result<Fq> {
        if coeffs.len() > self.degree as usize || coeffs.iter().any(|&c| c > 2) {
            return Err(Error::InvalidArgument(format!("bad coefficient vector {coeffs:?}")));
        }
        Ok(Fq(coeffs.iter().rev().fold(0, |acc, &c| acc * 3 + u32::from(c))))
    }

    /// Coefficient vector (length r) of `a` in the root of the modulus.
    pub fn coeffs(&self, a: Fq) -> Vec<u8> {
        let mut code = a.0;
        (0..self.degree)
            .map(|_| {
                let c = (code % 3) as u8;
                code /= 3;
                c
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let s = self.split;
        let lo = self.add_table[((a.0 % s) * s + b.0 % s) as usize];
        let hi = self.add_table[((a.0 / s) * s + b.0 / s) as usize];
        Fq(lo + s * hi)
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        let s = self.split;
        let lo = self.sub_table[((a.0 % s) * s + b.0 % s) as usize];
        let hi = self.sub_table[((a.0 / s) * s + b.0 / s) as usize];
        Fq(lo + s * hi)
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        self.sub(Fq::ZERO, a)
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        let n = self.order - 1;
        let e = (self.log[a.0 as usize] + self.log[b.0 as usize]) % n;
        Fq(self.exp[e as usize])
    }

    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.0 == 0 {
            return None;
        }
        let n = self.order - 1;
        Some(Fq(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.0 == 0 {
            return Fq::ZERO;
        }
        let n = u64::from(self.order - 1);
        let idx = (u64::from(self.log[a.0 as usize]) * (e % n)) % n;
        Fq(self.exp[idx as usize])
    }

    /// Multiplicative order of a nonzero element (0 for zero).
    pub fn multiplicative_order(&self, a: Fq) -> u64 {
        if a.0 == 0 {
            return 0;
        }
        let n = u64::from(self.order - 1);
        n / u64::from(self.log[a.0 as usize]).gcd(&n)
    }

    /// The generator mu of k^x with the smallest code.
    pub fn primitive_generator(&self) -> Fq {
        self.generator
    }

    /// Artin-Schreier map x -> x^3 - x.
    pub fn wp(&self, x: Fq) -> Fq {
        self.sub(self.pow(x, 3), x)
    }

    pub fn in_wp_image(&self, x: Fq) -> bool {
        self.wp_image[x.0 as usize]
    }

    /// Representatives of k/wp(k): zero first, then the smallest codes of the
    /// two nonzero cosets.
    pub fn wp_coset_reps(&self) -> [Fq; 3] {
        self.coset_reps
    }

    /// Index into [`Field::wp_coset_reps`] of the coset containing `x`.
    pub fn wp_coset_index(&self, x: Fq) -> usize {
        self.coset_reps
            .iter()
            .position(|&r| self.in_wp_image(self.sub(x, r)))
            .expect("coset representatives cover k")
    }

    pub fn is_square(&self, a: Fq) -> bool {
        a.0 == 0 || self.log[a.0 as usize].is_multiple_of(2)
    }
}

/// Convenience wrapper for [`Field::wp`].
pub fn wp_map(field: &Field, x: Fq) -> Fq {
    field.wp(x)
}

/// Convenience wrapper for [`Field::wp_coset_reps`].
pub fn wp_coset_reps(field: &Field) -> [Fq; 3] {
    field.wp_coset_reps()
}

fn digitwise(a: u32, b: u32, digits: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..digits {
        out += place * op(a % 3, b % 3);
        a /= 3;
        b /= 3;
        place *= 3;
    }
    out
}

// --- polynomials over F_3, little-endian, used only to pick the modulus ---

fn trim(p: &mut Vec<u8>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

fn poly_rem(a: &[u8], m: &[u8]) -> Vec<u8> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = m[dm]; // 1 or 2, self-inverse mod 3
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = (r[dr] * lead_inv) % 3;
        if c != 0 {
            for (i, mi) in m.iter().enumerate() {
                let idx = dr - dm + i;
                r[idx] = (r[idx] + 3 * 3 - (c * mi) % 3) % 3;
            }
        }
        r.pop();
        if r.is_empty() {
            r.push(0);
        }
    }
    trim(&mut r);
    r
}

fn poly_mulmod(a: &[u8], b: &[u8], m: &[u8]) -> Vec<u8> {
    let mut prod = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % 3;
        }
    }
    poly_rem(&prod, m)
}

fn poly_powmod(base: &[u8], mut e: u64, m: &[u8]) -> Vec<u8> {
    let mut result = vec![1u8];
    let mut b = poly_rem(base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &b, m);
        }
        b = poly_mulmod(&b, &b, m);
        e >>= 1;
    }
    result
}

fn monic_from_code(degree: u32, code: u32) -> Vec<u8> {
    let mut p: Vec<u8> = (0..degree)
        .scan(code, |c, _| {
            let d = (*c % 3) as u8;
            *c /= 3;
            Some(d)
        })
        .collect();
    p.push(1);
    p
}

fn is_irreducible(f: &[u8]) -> bool {
    let deg = (f.len() - 1) as u32;
    (1..=deg / 2).all(|d| (0..3u32.pow(d)).all(|c| poly_rem(f, &monic_from_code(d, c)) != [0]))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn smallest_primitive_modulus(r: u32) -> Vec<u8> {
    let group_order = u64::from(3u32.pow(r) - 1);
    let factors = prime_factors(group_order);
    let x = [0u8, 1];
    (0..3u32.pow(r))
        .map(|code| monic_from_code(r, code))
        .filter(|f| f[0] != 0)
        .find(|f| {
            is_irreducible(f)
                && poly_powmod(&x, group_order, f) == [1]
                && factors
                    .iter()
                    .all(|p| poly_powmod(&x, group_order / p, f) != [1])
        })
        .expect("primitive polynomials exist in every degree")
}

fn encode(p: &[u8], r: u32) -> u32 {
    (0..r as usize)
        .rev()
        .fold(0, |acc, i| acc * 3 + u32::from(*p.get(i).unwrap_or(&0)))
}

fn root_powers(modulus: &[u8], order: u32) -> Vec<u32> {
    let r = (modulus.len() - 1) as u32;
    let x = [0u8, 1];
    let mut cur = vec![1u8];
    let mut exp = Vec::with_capacity(order as usize - 1);
    for _ in 0..order - 1 {
        exp.push(encode(&cur, r));
        cur = poly_mulmod(&cur, &x, modulus);
    }
    exp
}

/// A field embedding F_q -> F_{q^m}.
#[derive(Debug, Clone)]
enum Embedding {
    Identity,
    // images of 1, theta, theta^2, ... where theta is the root of the base modulus
    Powers(Vec<Fq>),
}

/// The deterministic primitive n-th root of unity over a base field, living in
/// the smallest extension F_{q^m} that contains mu_n.
#[derive(Debug, Clone)]
pub struct RootOfUnity {
    base: Arc<Field>,
    ext: Arc<Field>,
    n: u32,
    zeta: Fq,
    embedding: Embedding,
}

/// Finds zeta_n = g^{(q^m - 1)/n} with g the primitive generator of F_{q^m}.
pub fn root_of_unity(base: &Arc<Field>, n: u32) -> Result<RootOfUnity> {
    if n == 0 {
        return Err(Error::InvalidArgument("root of unity order must be positive".into()));
    }
    if n.is_multiple_of(CHARACTERISTIC) {
        return Err(Error::WildRootOfUnity { n });
    }
    let q = u64::from(base.order());
    let mut m = 1u32;
    let mut power = q % u64::from(n);
    while power != 1 % u64::from(n) {
        power = power * q % u64::from(n);
        m += 1;
    }
    let (ext, embedding) = if m == 1 {
        (base.clone(), Embedding::Identity)
    } else {
        let degree = base.degree().checked_mul(m).filter(|&d| d <= MAX_DEGREE).ok_or(
            Error::FieldTooLarge { degree: base.degree().saturating_mul(m), max: MAX_DEGREE },
        )?;
        let ext = build_field(degree)?;
        let modulus = base.modulus();
        let root = ext
            .elements()
            .find(|&y| {
                let value = modulus
                    .iter()
                    .rev()
                    .fold(Fq::ZERO, |acc, &c| ext.add(ext.mul(acc, y), ext.from_int(i64::from(c))));
                value.is_zero()
            })
            .ok_or_else(|| Error::Internal("base modulus has no root in extension".into()))?;
        let powers = (0..base.degree()).map(|i| ext.pow(root, u64::from(i))).collect();
        (ext, Embedding::Powers(powers))
    };
    let zeta = ext.pow(ext.primitive_generator(), u64::from(ext.order() - 1) / u64::from(n));
    Ok(RootOfUnity { base: base.clone(), ext, n, zeta, embedding })
}

impl RootOfUnity {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn zeta(&self) -> Fq {
        self.zeta
    }

    pub fn base(&self) -> &Arc<Field> {
        &self.base
    }

    /// The field F_{q^m} containing mu_n.
    pub fn extension(&self) -> &Arc<Field> {
        &self.ext
    }

    /// Extension degree m = ord_n(q).
    pub fn extension_degree(&self) -> u32 {
        self.ext.degree() / self.base.degree()
    }

    /// zeta_n^a.
    pub fn power(&self, a: u64) -> Fq {
        self.ext.pow(self.zeta, a)
    }

    /// Maps an element of the base field into the extension.
    pub fn embed(&self, x: Fq) -> Fq {
        match &self.embedding {
            Embedding::Identity => x,
            Embedding::Powers(powers) => self
                .base
                .coeffs(x)
                .iter()
                .zip(powers)
                .fold(Fq::ZERO, |acc, (&c, &p)| {
                    self.ext.add(acc, self.ext.mul(self.ext.from_int(i64::from(c)), p))
                }),
        }
    }

    /// The exponent a in [0, n) with y = zeta_n^a, by scanning.
    pub fn discrete_log(&self, y: Fq) -> Option<u32> {
        let mut cur = Fq::ONE;
        for a in 0..self.n {
            if cur == y {
                return Some(a);
            }
            cur = self.ext.mul(cur, self.zeta);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_mul(f: &Field, a: Fq, b: Fq) -> Fq {
        let prod = {
            let (ca, cb) = (f.coeffs(a), f.coeffs(b));
            let mut p = vec![0u8; ca.len() + cb.len()];
            for (i, &x) in ca.iter().enumerate() {
                for (j, &y) in cb.iter().enumerate() {
                    p[i + j] = (p[i + j] + x * y) % 3;
                }
            }
            poly_rem(&p, f.modulus())
        };
        f.from_coeffs(&prod[..prod.len().min(f.degree() as usize)]).unwrap()
    }

    #[test]
    fn orders_of_small_fields() {
        assert_eq!(build_field(1).unwrap().order(), 3);
        assert_eq!(build_field(3).unwrap().order(), 27);
        assert!(build_field(0).is_err());
        assert!(matches!(build_field(13), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn quadratic_modulus_is_smallest_irreducible_primitive() {
        // scan the nine monic quadratics by hand
        let irreducible: Vec<Vec<u8>> = (0..9)
            .map(|c| vec![(c % 3) as u8, (c / 3) as u8, 1])
            .filter(|f| (0..3u8).all(|x| (f[0] + f[1] * x + x * x) % 3 != 0))
            .collect();
        assert_eq!(irreducible.len(), 3);
        let f9 = build_field(2).unwrap();
        assert!(irreducible.contains(&f9.modulus().to_vec()));
        assert_eq!(f9.modulus(), &[2, 1, 1]);
    }

    #[test]
    fn table_multiplication_matches_polynomial_multiplication() {
        for r in 1..=4 {
            let f = build_field(r).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), brute_mul(&f, a, b), "r={r}");
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        let f = build_field(2).unwrap();
        for a in f.elements() {
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Fq::ONE);
            }
            assert_eq!(f.add(a, f.neg(a)), Fq::ZERO);
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.sub(f.add(a, b), b), a);
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn primitive_generators() {
        assert_eq!(build_field(1).unwrap().primitive_generator(), Fq(2));
        for (r, order) in [(2, 8u64), (3, 26)] {
            let f = build_field(r).unwrap();
            let mu = f.primitive_generator();
            let mut powers = Vec::new();
            let mut cur = Fq::ONE;
            loop {
                cur = f.mul(cur, mu);
                powers.push(cur);
                if cur == Fq::ONE {
                    break;
                }
            }
            assert_eq!(powers.len() as u64, order);
            assert_eq!(f.primitive_generator(), mu);
        }
    }

    #[test]
    fn artin_schreier_map() {
        let f3 = build_field(1).unwrap();
        assert!(f3.elements().all(|x| f3.wp(x).is_zero()));
        assert_eq!(f3.wp_coset_reps(), [Fq(0), Fq(1), Fq(2)]);

        let f9 = build_field(2).unwrap();
        let image: std::collections::BTreeSet<_> = f9.elements().map(|x| f9.wp(x)).collect();
        assert_eq!(image.len(), 3);
        let kernel: Vec<_> = f9.elements().filter(|&x| f9.wp(x).is_zero()).collect();
        assert_eq!(kernel, vec![Fq(0), Fq(1), Fq(2)]);

        for r in 1..=4 {
            let f = build_field(r).unwrap();
            let reps = f.wp_coset_reps();
            assert_eq!(reps[0], Fq::ZERO);
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        assert!(!f.in_wp_image(f.sub(reps[i], reps[j])));
                    }
                }
            }
            let classes: std::collections::BTreeSet<_> =
                f.elements().map(|x| f.wp_coset_index(x)).collect();
            assert_eq!(classes.len(), 3);
        }
    }

    #[test]
    fn wp_is_additive_exhaustively() {
        for r in 1..=4 {
            let f = build_field(r).unwrap();
            for x in f.elements() {
                for y in f.elements() {
                    assert_eq!(f.wp(f.add(x, y)), f.add(f.wp(x), f.wp(y)));
                }
            }
        }
    }

    #[test]
    fn roots_of_unity() {
        let f27 = build_field(3).unwrap();
        let z13 = root_of_unity(&f27, 13).unwrap();
        assert_eq!(z13.extension_degree(), 1);
        assert_eq!(f27.multiplicative_order(z13.zeta()), 13);

        let f3 = build_field(1).unwrap();
        assert_eq!(root_of_unity(&f3, 2).unwrap().zeta(), Fq(2));

        let f9 = build_field(2).unwrap();
        assert_eq!(root_of_unity(&f9, 4).unwrap().extension_degree(), 1);

        assert!(matches!(root_of_unity(&f9, 6), Err(Error::WildRootOfUnity { n: 6 })));

        // mu_4 over F_3 needs F_9; the embedding must be a ring map
        let z4 = root_of_unity(&f3, 4).unwrap();
        assert_eq!(z4.extension_degree(), 2);
        let ext = z4.extension();
        for a in f3.elements() {
            for b in f3.elements() {
                assert_eq!(z4.embed(f3.mul(a, b)), ext.mul(z4.embed(a), z4.embed(b)));
                assert_eq!(z4.embed(f3.add(a, b)), ext.add(z4.embed(a), z4.embed(b)));
            }
        }
        let powers: std::collections::BTreeSet<_> = (0..4).map(|a| z4.power(a)).collect();
        assert_eq!(powers.len(), 4);
        for a in 0..4 {
            assert_eq!(z4.discrete_log(z4.power(a)), Some(a as u32));
        }
    }

    #[test]
    fn embedding_into_larger_extension_is_a_ring_map() {
        let f9 = build_field(2).unwrap();
        let z = root_of_unity(&f9, 13).unwrap(); // ord_13(9) = 3, so F_729
        assert_eq!(z.extension().order(), 729);
        for a in f9.elements() {
            for b in f9.elements() {
                let ext = z.extension();
                assert_eq!(z.embed(f9.mul(a, b)), ext.mul(z.embed(a), z.embed(b)));
                assert_eq!(z.embed(f9.add(a, b)), ext.add(z.embed(a), z.embed(b)));
            }
        }
    }

    #[test]
    fn construction_is_deterministic() {
        for r in 1..=6 {
            let (a, b) = (build_field(r).unwrap(), build_field(r).unwrap());
            assert_eq!(a.modulus(), b.modulus());
            assert_eq!(a.primitive_generator(), b.primitive_generator());
            assert_eq!(a.wp_coset_reps(), b.wp_coset_reps());
        }
        let f = build_field(4).unwrap();
        let (x, y) = (root_of_unity(&f, 5).unwrap(), root_of_unity(&f, 5).unwrap());
        assert_eq!(x.zeta(), y.zeta());
    }
}
