use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PreorderedGroup;
use crate::error::{Error, Result};

/// A nonempty finite subset, stored sorted and without duplicates.
///
/// Written `A`, `B` in entailments; `A, x` is [`FinSubset::with`], `A + x` is
/// [`FinSubset::translate`], `A + B` is [`FinSubset::sum`] and `A - B` is
/// [`FinSubset::differences`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinSubset<E>(Vec<E>);

impl<E: Ord> FinSubset<E> {
    pub fn new(items: impl IntoIterator<Item = E>) -> Result<Self> {
        let mut items: Vec<E> = items.into_iter().collect();
        if items.is_empty() {
            return Err(Error::EmptySubset);
        }
        items.sort_unstable();
        items.dedup();
        Ok(FinSubset(items))
    }

    pub fn singleton(e: E) -> Self {
        FinSubset(vec![e])
    }

    pub fn elements(&self) -> &[E] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, E> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; present for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, e: &E) -> bool {
        self.0.binary_search(e).is_ok()
    }

    /// Least element in the total order of the representation.
    pub fn min(&self) -> &E {
        &self.0[0]
    }

    pub fn max(&self) -> &E {
        &self.0[self.0.len() - 1]
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.0.iter().all(|e| other.contains(e))
    }

    pub fn into_vec(self) -> Vec<E> {
        self.0
    }
}

impl<E: Ord + Clone> FinSubset<E> {
    pub fn union(&self, other: &Self) -> Self {
        let mut items = Vec::with_capacity(self.len() + other.len());
        items.extend_from_slice(&self.0);
        items.extend_from_slice(&other.0);
        items.sort_unstable();
        items.dedup();
        FinSubset(items)
    }

    /// `A, x`.
    pub fn with(&self, e: E) -> Self {
        match self.0.binary_search(&e) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut items = self.0.clone();
                items.insert(pos, e);
                FinSubset(items)
            }
        }
    }

    /// Image under `f`; nonemptiness is preserved.
    pub fn map(&self, f: impl FnMut(&E) -> E) -> Self {
        let mut items: Vec<E> = self.0.iter().map(f).collect();
        items.sort_unstable();
        items.dedup();
        FinSubset(items)
    }

    /// `A + x`.
    pub fn translate<G: PreorderedGroup<Element = E>>(&self, g: &G, x: &E) -> Self {
        self.map(|a| g.add(a, x))
    }

    /// Minkowski sum `A + B`.
    pub fn sum<G: PreorderedGroup<Element = E>>(&self, g: &G, other: &Self) -> Self {
        self.combine(other, |a, b| g.add(a, b))
    }

    /// `A - B = {a - b}`.
    pub fn differences<G: PreorderedGroup<Element = E>>(&self, g: &G, other: &Self) -> Self {
        self.combine(other, |a, b| g.sub(a, b))
    }

    /// `-A`.
    pub fn negate<G: PreorderedGroup<Element = E>>(&self, g: &G) -> Self {
        self.map(|a| g.neg(a))
    }

    fn combine(&self, other: &Self, mut f: impl FnMut(&E, &E) -> E) -> Self {
        let mut items = Vec::with_capacity(self.len() * other.len());
        for a in &self.0 {
            for b in &other.0 {
                items.push(f(a, b));
            }
        }
        items.sort_unstable();
        items.dedup();
        FinSubset(items)
    }
}

impl<'a, E> IntoIterator for &'a FinSubset<E> {
    type Item = &'a E;
    type IntoIter = std::slice::Iter<'a, E>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl<E: fmt::Display> fmt::Display for FinSubset<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl<E: fmt::Debug> fmt::Debug for FinSubset<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.0).finish()
    }
}

impl<E: Serialize> Serialize for FinSubset<E> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de, E: Deserialize<'de> + Ord> Deserialize<'de> for FinSubset<E> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let items = Vec::<E>::deserialize(d)?;
        FinSubset::new(items).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ZdGroup;

    #[test]
    fn construction_sorts_and_dedups() {
        let s = FinSubset::new([3, 1, 3, 2]).unwrap();
        assert_eq!(s.elements(), &[1, 2, 3]);
        assert_eq!(FinSubset::<i32>::new([]), Err(Error::EmptySubset));
    }

    #[test]
    fn with_and_union() {
        let s = FinSubset::new([1, 5]).unwrap();
        assert_eq!(s.with(3).elements(), &[1, 3, 5]);
        assert_eq!(s.with(5), s);
        let t = FinSubset::new([0, 5]).unwrap();
        assert_eq!(s.union(&t).elements(), &[0, 1, 5]);
        assert!(s.is_subset_of(&s.union(&t)));
    }

    #[test]
    fn minkowski_sum_and_differences() {
        let g = ZdGroup::discrete();
        let a = FinSubset::new([g.int(2), g.int(5)]).unwrap();
        let b = FinSubset::new([g.int(3)]).unwrap();
        assert_eq!(
            a.differences(&g, &b),
            FinSubset::new([g.int(-1), g.int(2)]).unwrap()
        );
        assert_eq!(
            a.sum(&g, &a),
            FinSubset::new([g.int(4), g.int(7), g.int(10)]).unwrap()
        );
        assert_eq!(
            a.negate(&g),
            FinSubset::new([g.int(-2), g.int(-5)]).unwrap()
        );
    }

    #[test]
    fn serde_rejects_empty() {
        assert!(serde_json::from_str::<FinSubset<i32>>("[]").is_err());
        let s: FinSubset<i32> = serde_json::from_str("[4, 2, 4]").unwrap();
        assert_eq!(s.elements(), &[2, 4]);
    }
}
