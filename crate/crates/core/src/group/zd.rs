use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cone::ConeSolver;
use super::{GroupDescriptor, GroupKind, PreorderedGroup};
use crate::error::{Error, Result};
use crate::json;

/// A vector of `d` arbitrary-precision integers.
///
/// Rank-one vectors serialize as a bare integer, higher ranks as a list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ZdElement(Vec<BigInt>);

impl ZdElement {
    pub fn new(coords: Vec<BigInt>) -> Self {
        ZdElement(coords)
    }

    pub fn scalar(v: impl Into<BigInt>) -> Self {
        ZdElement(vec![v.into()])
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        ZdElement(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        ZdElement(vec![BigInt::zero(); rank])
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "rank mismatch in Z^d arithmetic");
        ZdElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub(crate) fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "rank mismatch in Z^d arithmetic");
        ZdElement(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub(crate) fn neg(&self) -> Self {
        ZdElement(self.0.iter().map(|a| -a).collect())
    }

    pub(crate) fn scale(&self, k: &BigInt) -> Self {
        ZdElement(self.0.iter().map(|a| a * k).collect())
    }

    /// Dot product with an integer functional.
    pub fn dot(&self, functional: &[BigInt]) -> BigInt {
        self.0.iter().zip(functional).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Display for ZdElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for ZdElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.len() == 1 {
            return json::serialize_int(&self.0[0], s);
        }
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            seq.serialize_element(&json::Wrapped(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ZdElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ElementVisitor;
        impl<'de> Visitor<'de> for ElementVisitor {
            type Value = ZdElement;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a list of integers")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ZdElement, E> {
                Ok(ZdElement::scalar(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ZdElement, E> {
                Ok(ZdElement::scalar(v))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<ZdElement, E> {
                json::IntVisitor.visit_str(v).map(|i| ZdElement(vec![i]))
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<ZdElement, A::Error> {
                let mut coords = Vec::new();
                while let Some(json::Owned(c)) = seq.next_element()? {
                    coords.push(c);
                }
                if coords.is_empty() {
                    return Err(de::Error::custom(
                        "an element needs at least one coordinate",
                    ));
                }
                Ok(ZdElement(coords))
            }
        }
        d.deserialize_any(ElementVisitor)
    }
}

/// `Z^d` preordered by a finitely generated monoid `P`: `a <= b` iff `b - a`
/// is a nonnegative integer combination of `P`. With no generators the
/// preorder is equality (the discrete order).
#[derive(Clone, Debug)]
pub struct ZdGroup {
    rank: usize,
    generators: Vec<ZdElement>,
    solver: Option<ConeSolver>,
}

impl ZdGroup {
    pub fn cone(rank: usize, generators: Vec<ZdElement>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Precondition("rank must be positive".into()));
        }
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        for p in &generators {
            if p.rank() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: p.rank(),
                });
            }
        }
        let solver = ConeSolver::new(rank, &generators);
        Ok(ZdGroup {
            rank,
            generators,
            solver: Some(solver),
        })
    }

    /// `Z` preordered by equality.
    pub fn discrete() -> Self {
        ZdGroup {
            rank: 1,
            generators: Vec::new(),
            solver: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[ZdElement] {
        &self.generators
    }

    pub fn is_discrete(&self) -> bool {
        self.solver.is_none()
    }

    pub fn element(&self, coords: &[i64]) -> Result<ZdElement> {
        let e = ZdElement::from_i64s(coords);
        self.validate(&e)?;
        Ok(e)
    }

    /// A rank-one element. Panics on groups of higher rank.
    pub fn int(&self, v: i64) -> ZdElement {
        assert_eq!(self.rank, 1, "int() needs a rank-one group");
        ZdElement::scalar(v)
    }

    /// Nonnegative integer coefficients `m` with `sum m_j p_j = v`, if any.
    pub fn cone_membership(&self, v: &ZdElement) -> Option<Vec<BigInt>> {
        match &self.solver {
            Some(solver) => solver.solve(&self.generators, v),
            None => v.is_zero().then(Vec::new),
        }
    }

    /// `sum n_i a_i` with integer coefficients.
    pub fn combination(&self, coeffs: &[BigInt], elements: &[ZdElement]) -> ZdElement {
        coeffs
            .iter()
            .zip(elements)
            .fold(ZdElement::zero(self.rank), |acc, (c, e)| {
                acc.add(&e.scale(c))
            })
    }

    /// Checks `v + sum m_j p_j = 0` exactly, with every `m_j >= 0`.
    pub fn replays_nonpositive(&self, v: &ZdElement, m: &[BigInt]) -> bool {
        m.len() == self.generators.len()
            && m.iter().all(|c| !c.is_negative())
            && v.add(&self.combination(m, &self.generators)).is_zero()
    }
}

impl PreorderedGroup for ZdGroup {
    type Element = ZdElement;

    fn zero(&self) -> ZdElement {
        ZdElement::zero(self.rank)
    }

    fn add(&self, a: &ZdElement, b: &ZdElement) -> ZdElement {
        a.add(b)
    }

    fn neg(&self, a: &ZdElement) -> ZdElement {
        a.neg()
    }

    fn sub(&self, a: &ZdElement, b: &ZdElement) -> ZdElement {
        a.sub(b)
    }

    fn times(&self, a: &ZdElement, n: u64) -> ZdElement {
        a.scale(&BigInt::from(n))
    }

    fn leq(&self, a: &ZdElement, b: &ZdElement) -> bool {
        match &self.solver {
            None => a == b,
            Some(solver) => solver.solve(&self.generators, &b.sub(a)).is_some(),
        }
    }

    fn validate(&self, a: &ZdElement) -> Result<()> {
        if a.rank() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: a.rank(),
            });
        }
        Ok(())
    }

    fn kind(&self) -> GroupKind {
        if self.is_discrete() {
            GroupKind::DiscreteZ
        } else {
            GroupKind::ConeZd
        }
    }

    fn descriptor(&self) -> GroupDescriptor {
        if self.is_discrete() {
            GroupDescriptor::DiscreteZ
        } else {
            GroupDescriptor::ConeZd {
                d: self.rank,
                generators: self.generators.clone(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exa1() -> ZdGroup {
        ZdGroup::cone(1, vec![ZdElement::scalar(60)]).unwrap()
    }

    #[test]
    fn addition_in_z() {
        let g = exa1();
        assert_eq!(g.add(&g.int(10), &g.int(24)), g.int(34));
        assert_eq!(g.add(&g.int(10), &g.zero()), g.int(10));
        assert_eq!(g.times(&g.int(-20), 3), g.int(-60));
    }

    #[test]
    fn numerical_semigroup_order() {
        let g = exa1();
        assert!(g.leq(&g.int(10), &g.int(130)));
        assert!(g.leq(&g.int(3), &g.int(3)));
        assert!(!g.leq(&g.int(3), &g.int(130)));
        assert!(!g.leq(&g.int(130), &g.int(10)));
    }

    #[test]
    fn discrete_order_is_equality() {
        let g = ZdGroup::discrete();
        assert!(g.leq(&g.int(4), &g.int(4)));
        assert!(!g.leq(&g.int(4), &g.int(5)));
        assert_eq!(g.kind(), GroupKind::DiscreteZ);
    }

    #[test]
    fn mixed_ranks_are_rejected() {
        let g = exa1();
        let plane = ZdElement::from_i64s(&[1, 2]);
        assert_eq!(
            g.try_add(&g.int(1), &plane),
            Err(Error::DimensionMismatch {
                expected: 1,
                found: 2
            })
        );
        assert!(g.try_leq(&plane, &g.int(0)).is_err());
        assert!(ZdGroup::cone(2, vec![ZdElement::scalar(1)]).is_err());
        assert_eq!(ZdGroup::cone(1, vec![]).unwrap_err(), Error::NoGenerators);
    }

    #[test]
    fn json_forms() {
        assert_eq!(serde_json::to_string(&ZdElement::scalar(-7)).unwrap(), "-7");
        assert_eq!(
            serde_json::to_string(&ZdElement::from_i64s(&[1, 2])).unwrap(),
            "[1,2]"
        );
        let big: ZdElement = serde_json::from_str("\"123456789012345678901234567890\"").unwrap();
        assert_eq!(
            serde_json::to_string(&big).unwrap(),
            "\"123456789012345678901234567890\""
        );
        let v: ZdElement = serde_json::from_str("[3, \"-4\"]").unwrap();
        assert_eq!(v, ZdElement::from_i64s(&[3, -4]));
        assert!(serde_json::from_str::<ZdElement>("[]").is_err());
    }
}
