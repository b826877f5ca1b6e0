//! Decidable preordered commutative groups and finite subsets of them.

mod cone;
mod descriptor;
mod divisibility;
mod subset;
mod zd;

use std::fmt::{Debug, Display};
use std::hash::Hash;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::Result;

pub use cone::cone_membership;
pub use descriptor::{AnyGroup, GroupDescriptor, GroupKind};
pub use divisibility::DivisibilityGroup;
pub use subset::FinSubset;
pub use zd::{ZdElement, ZdGroup};

/// A commutative group `(G, 0, +, -)` with a decidable translation-invariant
/// preorder `<=`.
///
/// Arithmetic methods assume both arguments belong to `self`; values coming
/// from outside go through [`PreorderedGroup::validate`] (or the `try_*`
/// variants) first.
pub trait PreorderedGroup: Clone + Debug + Send + Sync {
    type Element: Clone + Ord + Hash + Debug + Display + Send + Sync + Serialize + DeserializeOwned;

    fn zero(&self) -> Self::Element;

    fn add(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;

    fn neg(&self, a: &Self::Element) -> Self::Element;

    fn leq(&self, a: &Self::Element, b: &Self::Element) -> bool;

    /// Rejects values that are not elements of this particular instance.
    fn validate(&self, a: &Self::Element) -> Result<()>;

    fn kind(&self) -> GroupKind;

    fn descriptor(&self) -> GroupDescriptor;

    fn sub(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        self.add(a, &self.neg(b))
    }

    /// `n * a` by double-and-add.
    fn times(&self, a: &Self::Element, mut n: u64) -> Self::Element {
        let mut acc = self.zero();
        let mut base = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    fn try_add(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.add(a, b))
    }

    fn try_leq(&self, a: &Self::Element, b: &Self::Element) -> Result<bool> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.leq(a, b))
    }

    /// Validates every element of an untrusted subset.
    fn validate_subset(&self, set: &FinSubset<Self::Element>) -> Result<()> {
        set.iter().try_for_each(|e| self.validate(e))
    }
}

/// Shorthand for the element type of a group.
pub type Elem<G> = <G as PreorderedGroup>::Element;
