//! Finite subgroups of SL_3(F_q): closure, conjugacy classes, centralizers,
//! pseudo-reflections and the age of tame elements.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::fq::{root_of_unity, Field, Fq};

/// Default cap on closure size.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// A 3x3 matrix over some F_q, row-major. Ordering compares entries in
/// row-major order by their codes, which is the "matrix encoding" used for
/// canonical representatives.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem(pub [[Fq; 3]; 3]);

impl fmt::Debug for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<u32>> =
            self.0.iter().map(|row| row.iter().map(|x| x.code()).collect()).collect();
        write!(f, "GroupElem({rows:?})")
    }
}

impl GroupElem {
    pub fn identity() -> GroupElem {
        let mut m = [[Fq::ZERO; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Fq::ONE;
        }
        GroupElem(m)
    }

    pub fn diag(a: Fq, b: Fq, c: Fq) -> GroupElem {
        let z = Fq::ZERO;
        GroupElem([[a, z, z], [z, b, z], [z, z, c]])
    }

    pub fn from_ints(field: &Field, rows: [[i64; 3]; 3]) -> GroupElem {
        GroupElem(rows.map(|row| row.map(|x| field.from_int(x))))
    }

    pub fn is_identity(&self) -> bool {
        *self == GroupElem::identity()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| i == j || self.0[i][j].is_zero()))
    }

    pub fn diagonal(&self) -> [Fq; 3] {
        [self.0[0][0], self.0[1][1], self.0[2][2]]
    }

    pub fn mul(&self, other: &GroupElem, f: &Field) -> GroupElem {
        let mut out = [[Fq::ZERO; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = Fq::ZERO;
                for k in 0..3 {
                    acc = f.add(acc, f.mul(self.0[i][k], other.0[k][j]));
                }
                *cell = acc;
            }
        }
        GroupElem(out)
    }

    pub fn det(&self, f: &Field) -> Fq {
        let m = &self.0;
        let minor = |a: Fq, b: Fq, c: Fq, d: Fq| f.sub(f.mul(a, d), f.mul(b, c));
        let t0 = f.mul(m[0][0], minor(m[1][1], m[1][2], m[2][1], m[2][2]));
        let t1 = f.mul(m[0][1], minor(m[1][0], m[1][2], m[2][0], m[2][2]));
        let t2 = f.mul(m[0][2], minor(m[1][0], m[1][1], m[2][0], m[2][1]));
        f.add(f.sub(t0, t1), t2)
    }

    pub fn trace(&self, f: &Field) -> Fq {
        f.add(f.add(self.0[0][0], self.0[1][1]), self.0[2][2])
    }

    /// Inverse via the adjugate; `None` for singular matrices.
    pub fn inverse(&self, f: &Field) -> Option<GroupElem> {
        let d_inv = f.inv(self.det(f))?;
        let m = &self.0;
        let mut out = [[Fq::ZERO; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                // cofactor of (j, i)
                let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
                let minor = f.sub(
                    f.mul(m[rows[0]][cols[0]], m[rows[1]][cols[1]]),
                    f.mul(m[rows[0]][cols[1]], m[rows[1]][cols[0]]),
                );
                let signed = if (i + j) % 2 == 0 { minor } else { f.neg(minor) };
                *cell = f.mul(signed, d_inv);
            }
        }
        Some(GroupElem(out))
    }

    pub fn pow(&self, mut e: u64, f: &Field) -> GroupElem {
        let mut result = GroupElem::identity();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        result
    }

    /// Multiplicative order, or `None` if it exceeds `cap`.
    pub fn order(&self, f: &Field, cap: u64) -> Option<u64> {
        let mut cur = *self;
        for n in 1..=cap {
            if cur.is_identity() {
                return Some(n);
            }
            cur = cur.mul(self, f);
        }
        None
    }

    /// Dimension of the fixed space ker(g - 1).
    pub fn fixed_space_dim(&self, f: &Field) -> usize {
        let mut m = self.0;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = f.sub(row[i], Fq::ONE);
        }
        3 - rank(m, f)
    }

    /// Coefficients [c0, c1, c2, 1] of det(x - g).
    pub fn char_poly(&self, f: &Field) -> [Fq; 4] {
        let m = &self.0;
        let tr = self.trace(f);
        let principal = |i: usize, j: usize| f.sub(f.mul(m[i][i], m[j][j]), f.mul(m[i][j], m[j][i]));
        let e2 = f.add(f.add(principal(0, 1), principal(0, 2)), principal(1, 2));
        [f.neg(self.det(f)), e2, f.neg(tr), Fq::ONE]
    }
}

fn rank(mut m: [[Fq; 3]; 3], f: &Field) -> usize {
    let mut rank = 0;
    for col in 0..3 {
        let Some(pivot) = (rank..3).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = f.inv(m[rank][col]).expect("pivot is nonzero");
        for r in 0..3 {
            if r != rank && !m[r][col].is_zero() {
                let factor = f.mul(m[r][col], inv);
                let pivot_row = m[rank];
                for (x, p) in m[r].iter_mut().zip(pivot_row) {
                    *x = f.sub(*x, f.mul(factor, p));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A finite matrix group with its full element list.
#[derive(Clone)]
pub struct MatrixGroup {
    field: Arc<Field>,
    generators: Vec<GroupElem>,
    elements: Vec<GroupElem>,
    index: HashMap<GroupElem, usize>,
}

impl fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixGroup")
            .field("q", &self.field.order())
            .field("order", &self.elements.len())
            .finish()
    }
}

/// One conjugacy class: smallest-encoding representative plus member indices.
#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    pub representative: GroupElem,
    pub size: usize,
    pub members: Vec<usize>,
}

/// Closure of `gens` under multiplication with the default cap.
pub fn generate_closure(field: &Arc<Field>, gens: &[GroupElem]) -> Result<MatrixGroup> {
    MatrixGroup::generate(field, gens, DEFAULT_CLOSURE_CAP)
}

impl MatrixGroup {
    /// Breadth-first closure; each layer is sorted by matrix encoding.
    pub fn generate(field: &Arc<Field>, gens: &[GroupElem], cap: usize) -> Result<MatrixGroup> {
        let f = field.as_ref();
        if gens.iter().any(|g| g.det(f) != Fq::ONE) {
            return Err(Error::NotSpecialLinear);
        }
        let mut elements = vec![GroupElem::identity()];
        let mut index = HashMap::from([(GroupElem::identity(), 0usize)]);
        let mut layer = vec![GroupElem::identity()];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for x in &layer {
                for g in gens {
                    let y = x.mul(g, f);
                    if let std::collections::hash_map::Entry::Vacant(e) = index.entry(y) {
                        e.insert(usize::MAX);
                        next.push(y);
                    }
                }
            }
            next.sort_unstable();
            for &y in &next {
                index.insert(y, elements.len());
                elements.push(y);
            }
            if elements.len() > cap {
                return Err(Error::ClosureTooLarge { cap });
            }
            layer = next;
        }
        Ok(MatrixGroup { field: field.clone(), generators: gens.to_vec(), elements, index })
    }

    fn from_elements(field: &Arc<Field>, generators: Vec<GroupElem>, elements: Vec<GroupElem>) -> Self {
        let index = elements.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        MatrixGroup { field: field.clone(), generators, elements, index }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn generators(&self) -> &[GroupElem] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &GroupElem) -> bool {
        self.index.contains_key(g)
    }

    pub fn index_of(&self, g: &GroupElem) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn mul(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        a.mul(b, &self.field)
    }

    pub fn inverse(&self, g: &GroupElem) -> GroupElem {
        g.inverse(&self.field).expect("group elements are invertible")
    }

    /// x g x^{-1}.
    pub fn conjugate(&self, x: &GroupElem, g: &GroupElem) -> GroupElem {
        self.mul(&self.mul(x, g), &self.inverse(x))
    }

    /// Element orders, indexed like [`MatrixGroup::elements`].
    pub fn element_orders(&self) -> Vec<u64> {
        let n = self.order() as u64;
        self.elements
            .iter()
            .map(|g| g.order(&self.field, n).expect("order divides |G|"))
            .collect()
    }

    /// Permutation of element indices induced by conjugation with `x`.
    pub fn conjugation_permutation(&self, x: &GroupElem) -> Vec<usize> {
        let x_inv = self.inverse(x);
        self.elements
            .iter()
            .map(|g| self.index[&self.mul(&self.mul(x, g), &x_inv)])
            .collect()
    }

    /// Conjugacy classes sorted by representative encoding.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let inverses: Vec<GroupElem> = self.elements.iter().map(|x| self.inverse(x)).collect();
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = Vec::new();
        let mut by_encoding: Vec<usize> = (0..self.order()).collect();
        by_encoding.sort_by_key(|&i| self.elements[i]);
        for &start in &by_encoding {
            if class_of[start] != usize::MAX {
                continue;
            }
            let g = self.elements[start];
            let id = classes.len();
            let mut members = Vec::new();
            for (x, x_inv) in self.elements.iter().zip(&inverses) {
                let c = self.index[&self.mul(&self.mul(x, &g), x_inv)];
                if class_of[c] == usize::MAX {
                    class_of[c] = id;
                    members.push(c);
                }
            }
            members.sort_by_key(|&i| self.elements[i]);
            classes.push(ConjugacyClass { representative: g, size: members.len(), members });
        }
        classes
    }

    /// {g in G : gh = hg for all h in H}.
    pub fn centralizer(&self, subset: &[GroupElem]) -> Result<MatrixGroup> {
        if subset.iter().any(|h| !self.contains(h)) {
            return Err(Error::NotInGroup);
        }
        let elements: Vec<GroupElem> = self
            .elements
            .iter()
            .filter(|g| subset.iter().all(|h| self.mul(g, h) == self.mul(h, g)))
            .copied()
            .collect();
        Ok(MatrixGroup::from_elements(&self.field, subset.to_vec(), elements))
    }

    /// Subgroup generated by `gens`, which must lie in this group.
    pub fn subgroup(&self, gens: &[GroupElem]) -> Result<MatrixGroup> {
        if gens.iter().any(|h| !self.contains(h)) {
            return Err(Error::NotInGroup);
        }
        MatrixGroup::generate(&self.field, gens, self.order())
    }

    /// No element fixes a plane.
    pub fn is_small(&self) -> bool {
        self.elements.iter().all(|g| g.fixed_space_dim(&self.field) != 2)
    }
}

/// Free-function form of [`MatrixGroup::conjugacy_classes`].
pub fn conjugacy_classes(group: &MatrixGroup) -> Vec<ConjugacyClass> {
    group.conjugacy_classes()
}

/// Free-function form of [`MatrixGroup::centralizer`].
pub fn centralizer(group: &MatrixGroup, subset: &[GroupElem]) -> Result<MatrixGroup> {
    group.centralizer(subset)
}

/// Free-function form of [`MatrixGroup::is_small`].
pub fn is_small(group: &MatrixGroup) -> bool {
    group.is_small()
}

/// Exponents a_i in [0, n) of the eigenvalues zeta_n^{a_i}, sorted, where n is
/// the order of `g` and zeta_n the deterministic primitive root.
pub fn eigen_exponents(field: &Arc<Field>, g: &GroupElem) -> Result<(u32, Vec<u32>)> {
    let n = g.order(field, 1 << 20).ok_or(Error::Internal("element order too large".into()))?;
    if n % 3 == 0 {
        return Err(Error::WildElement { order: n });
    }
    let n = n as u32;
    let rou = root_of_unity(field, n)?;
    let ext = rou.extension();
    let mut poly: Vec<Fq> = g.char_poly(field).iter().map(|&c| rou.embed(c)).collect();
    let mut exponents = Vec::with_capacity(3);
    for a in 0..n {
        let root = rou.power(u64::from(a));
        loop {
            if poly.len() < 2 {
                break;
            }
            // synthetic division by (x - root)
            let mut quotient = vec![Fq::ZERO; poly.len() - 1];
            let mut carry = Fq::ZERO;
            for i in (0..poly.len()).rev() {
                let value = ext.add(poly[i], ext.mul(carry, root));
                if i == 0 {
                    carry = value;
                } else {
                    quotient[i - 1] = value;
                    carry = value;
                }
            }
            if !carry.is_zero() {
                break;
            }
            exponents.push(a);
            poly = quotient;
        }
    }
    if exponents.len() != 3 {
        return Err(Error::NotDiagonalizable);
    }
    Ok((n, exponents))
}

/// age(g) = (sum a_i)/n for a tame element g.
pub fn age(field: &Arc<Field>, g: &GroupElem) -> Result<Ratio<i64>> {
    age_with_root_power(field, g, 1)
}

/// Age computed against the primitive root zeta_n^k instead of zeta_n
/// (k must be coprime to the order of g).
pub fn age_with_root_power(field: &Arc<Field>, g: &GroupElem, k: u32) -> Result<Ratio<i64>> {
    let (n, exps) = eigen_exponents(field, g)?;
    if num_integer::gcd(k, n) != 1 {
        return Err(Error::InvalidArgument(format!("{k} is not a unit mod {n}")));
    }
    // zeta^a = (zeta^k)^b  <=>  b = a k^{-1} mod n
    let k_inv = (1..n.max(2)).find(|&x| (u64::from(x) * u64::from(k)) % u64::from(n) == 1 % u64::from(n));
    let k_inv = k_inv.unwrap_or(1);
    let total: i64 = exps
        .iter()
        .map(|&a| ((u64::from(a) * u64::from(k_inv)) % u64::from(n)) as i64)
        .sum();
    Ok(Ratio::new(total, i64::from(n)))
}

/// Orbits of the conjugation action on ordered tuples of element indices,
/// as (representative tuple, orbit size). Uses precomputed permutations.
pub fn tuple_orbits(perms: &[Vec<usize>], tuples: &[Vec<usize>]) -> Vec<(Vec<usize>, usize)> {
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::with_capacity(tuples.len());
    let mut out = Vec::new();
    for t in tuples {
        if seen.contains_key(t) {
            continue;
        }
        let mut queue = VecDeque::from([t.clone()]);
        seen.insert(t.clone(), ());
        let mut size = 0;
        while let Some(cur) = queue.pop_front() {
            size += 1;
            for p in perms {
                let image: Vec<usize> = cur.iter().map(|&i| p[i]).collect();
                if !seen.contains_key(&image) {
                    seen.insert(image.clone(), ());
                    queue.push_back(image);
                }
            }
        }
        out.push((t.clone(), size));
    }
    out
}
