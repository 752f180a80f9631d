//! The four group families C_l x| C_3, C_l^2 x| C_3, C_2^2 x| S_3 and
//! C_l^2 x| S_3 realized inside SL_3(F_q).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fq::{build_field, root_of_unity, Field, Fq};
use crate::grp::{generate_closure, GroupElem, MatrixGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    /// C_l x| C_3
    #[serde(rename = "cyclic-l")]
    CyclicL,
    /// C_l^2 x| C_3
    #[serde(rename = "cyclic-ll")]
    CyclicLL,
    /// C_2^2 x| S_3
    #[serde(rename = "sym-2")]
    Sym2,
    /// C_l^2 x| S_3, l odd
    #[serde(rename = "sym-ll")]
    SymLL,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] =
        [FamilyKind::CyclicL, FamilyKind::CyclicLL, FamilyKind::Sym2, FamilyKind::SymLL];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::CyclicL => "cyclic-l",
            FamilyKind::CyclicLL => "cyclic-ll",
            FamilyKind::Sym2 => "sym-2",
            FamilyKind::SymLL => "sym-ll",
        }
    }

    pub fn is_symmetric(self) -> bool {
        matches!(self, FamilyKind::Sym2 | FamilyKind::SymLL)
    }

    /// q - 1 must be divisible by this.
    pub fn divisibility_modulus(self, l: u32) -> u32 {
        if self.is_symmetric() {
            2 * l
        } else {
            l
        }
    }

    pub fn group_order(self, l: u32) -> usize {
        let l = l as usize;
        match self {
            FamilyKind::CyclicL => 3 * l,
            FamilyKind::CyclicLL => 3 * l * l,
            FamilyKind::Sym2 => 24,
            FamilyKind::SymLL => 6 * l * l,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnsupportedFamily(s.to_string()))
    }
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Smallest e in {2, ..., l-1} with e^2 + e + 1 = 0 mod l.
pub fn find_twist(l: u32) -> Option<u32> {
    let l64 = u64::from(l);
    (2..l).find(|&e| {
        let e = u64::from(e);
        (e * e + e + 1) % l64 == 0
    })
}

/// Smallest r >= 1 with 3^r = 1 mod `modulus`, or `None` when 3 divides it.
pub fn minimal_degree(modulus: u32) -> Option<u32> {
    if modulus.is_multiple_of(3) || modulus == 0 {
        return None;
    }
    let mut power = 3 % modulus;
    let mut r = 1;
    while power != 1 % modulus {
        power = power * 3 % modulus;
        r += 1;
    }
    Some(r)
}

/// A validated family together with its base field F_{3^r}.
#[derive(Debug, Clone)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub l: u32,
    pub field: Arc<Field>,
    pub twist: Option<u32>,
}

/// Serializable projection of a [`FamilySpec`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub kind: FamilyKind,
    pub l: u32,
    pub r: u32,
    pub q: u32,
    pub twist: Option<u32>,
}

impl FamilySpec {
    /// Checks every hypothesis: l prime and different from 3, q - 1 divisible
    /// by l (cyclic) or 2l (symmetric), and a twist exponent for C_l x| C_3.
    pub fn new(kind: FamilyKind, l: u32, r: u32) -> Result<FamilySpec> {
        let field = build_field(r)?;
        FamilySpec::with_field(kind, l, field)
    }

    pub fn with_field(kind: FamilyKind, l: u32, field: Arc<Field>) -> Result<FamilySpec> {
        if !is_prime(l) || l == 3 {
            return Err(Error::BadPrime(l));
        }
        match kind {
            FamilyKind::Sym2 if l != 2 => {
                return Err(Error::InvalidArgument("sym-2 requires l = 2".into()))
            }
            FamilyKind::SymLL if l == 2 => {
                return Err(Error::InvalidArgument("sym-ll requires l != 2; use sym-2".into()))
            }
            _ => {}
        }
        let modulus = kind.divisibility_modulus(l);
        let q = field.order();
        if !(q - 1).is_multiple_of(modulus) {
            return Err(Error::Divisibility { q, modulus });
        }
        let twist = if kind == FamilyKind::CyclicL {
            Some(find_twist(l).ok_or(Error::NoTwist { l })?)
        } else {
            None
        };
        Ok(FamilySpec { kind, l, field, twist })
    }

    /// The smallest admissible field for (kind, l).
    pub fn smallest(kind: FamilyKind, l: u32) -> Result<FamilySpec> {
        let r = minimal_degree(kind.divisibility_modulus(l)).ok_or(Error::BadPrime(l))?;
        FamilySpec::new(kind, l, r)
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn descriptor(&self) -> FamilyDescriptor {
        FamilyDescriptor {
            kind: self.kind,
            l: self.l,
            r: self.field.degree(),
            q: self.q(),
            twist: self.twist,
        }
    }
}

/// The permutation matrices S (3-cycle) and T (signed transposition).
#[derive(Debug, Clone, Copy)]
pub struct StandardMatrices {
    pub s: GroupElem,
    pub t: GroupElem,
}

impl StandardMatrices {
    pub fn new(field: &Field) -> StandardMatrices {
        StandardMatrices {
            s: GroupElem::from_ints(field, [[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
            t: GroupElem::from_ints(field, [[0, 0, -1], [0, -1, 0], [-1, 0, 0]]),
        }
    }
}

/// A built family: the matrix group plus the data used to construct it.
#[derive(Debug, Clone)]
pub struct Family {
    pub spec: FamilySpec,
    pub group: MatrixGroup,
    pub zeta_l: Fq,
    pub matrices: StandardMatrices,
}

impl Family {
    pub fn field(&self) -> &Arc<Field> {
        &self.spec.field
    }

    /// diag(zeta^a, zeta^b, zeta^c) with zeta the primitive l-th root.
    pub fn diag_exponents(&self, a: u32, b: u32, c: u32) -> GroupElem {
        let f = self.field();
        let p = |e: u32| f.pow(self.zeta_l, u64::from(e));
        GroupElem::diag(p(a), p(b), p(c))
    }

    /// The l^2 diagonal elements diag(zeta^a, zeta^b, zeta^c), a+b+c = 0 mod l.
    pub fn diagonal_block(&self) -> Vec<GroupElem> {
        let l = self.spec.l;
        let mut out = Vec::with_capacity((l * l) as usize);
        for a in 0..l {
            for b in 0..l {
                let c = (2 * l - a - b) % l;
                out.push(self.diag_exponents(a, b, c));
            }
        }
        out
    }

    /// A generating set of at most four elements, for orbit computations.
    pub fn small_generators(&self) -> Vec<GroupElem> {
        let l = self.spec.l;
        let mut gens = vec![self.matrices.s];
        match self.spec.kind {
            FamilyKind::CyclicL => {
                let e = self.spec.twist.expect("validated");
                gens.push(self.diag_exponents(1, e % l, e * e % l));
            }
            kind => {
                if kind.is_symmetric() {
                    gens.push(self.matrices.t);
                }
                gens.push(self.diag_exponents(1, l - 1, 0));
                gens.push(self.diag_exponents(0, 1, l - 1));
            }
        }
        gens
    }

    /// Generator diag(1, zeta, zeta^{-1}) T of the cyclic subgroup of order 2l.
    pub fn c2l_generator(&self) -> GroupElem {
        let l = self.spec.l;
        self.diag_exponents(0, 1, l - 1).mul(&self.matrices.t, self.field())
    }
}

/// Builds the closure of the family generators and checks smallness and
/// the expected order.
pub fn build_family(spec: &FamilySpec) -> Result<Family> {
    let field = &spec.field;
    let f = field.as_ref();
    let l = spec.l;
    let zeta_l = {
        let rou = root_of_unity(field, l)?;
        if rou.extension_degree() != 1 {
            return Err(Error::Divisibility { q: f.order(), modulus: l });
        }
        rou.zeta()
    };
    let matrices = StandardMatrices::new(f);
    let p = |e: u64| f.pow(zeta_l, e);
    let diagonal_block = || {
        let mut out = Vec::new();
        for a in 0..l {
            for b in 0..l {
                let c = (2 * l - a - b) % l;
                out.push(GroupElem::diag(p(a.into()), p(b.into()), p(c.into())));
            }
        }
        out
    };
    let gens: Vec<GroupElem> = match spec.kind {
        FamilyKind::CyclicL => {
            let e = u64::from(spec.twist.ok_or(Error::NoTwist { l })?);
            let l64 = u64::from(l);
            vec![matrices.s, GroupElem::diag(p(1), p(e % l64), p(e * e % l64))]
        }
        FamilyKind::CyclicLL => std::iter::once(matrices.s).chain(diagonal_block()).collect(),
        FamilyKind::Sym2 | FamilyKind::SymLL => {
            [matrices.s, matrices.t].into_iter().chain(diagonal_block()).collect()
        }
    };
    let group = generate_closure(field, &gens)?;
    let expected = spec.kind.group_order(l);
    if group.order() != expected {
        return Err(Error::UnexpectedOrder { expected, actual: group.order() });
    }
    if !group.is_small() {
        return Err(Error::Smallness);
    }
    Ok(Family { spec: spec.clone(), group, zeta_l, matrices })
}
