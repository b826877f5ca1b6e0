use super::{GroupDescriptor, GroupKind, PreorderedGroup};
use crate::error::{Error, Result};
use crate::number_ring::{CubicField, FieldElement};

/// Nonzero elements of a cubic field under multiplication, preordered by
/// divisibility in the order `O`: `a <= b` iff `b / a` lies in `O`.
///
/// Associates (`a <= b <= a`) are not identified; the preorder is all that
/// matters downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityGroup {
    field: CubicField,
}

impl DivisibilityGroup {
    pub fn new(field: CubicField) -> Self {
        DivisibilityGroup { field }
    }

    pub fn shipped() -> Self {
        DivisibilityGroup::new(CubicField::shipped())
    }

    pub fn field(&self) -> &CubicField {
        &self.field
    }
}

impl PreorderedGroup for DivisibilityGroup {
    type Element = FieldElement;

    fn zero(&self) -> FieldElement {
        self.field.one()
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.field.mul(a, b)
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        self.field.inv(a).expect("group elements are nonzero")
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.field.div(a, b).expect("group elements are nonzero")
    }

    fn leq(&self, a: &FieldElement, b: &FieldElement) -> bool {
        self.sub(b, a).is_integral()
    }

    fn validate(&self, a: &FieldElement) -> Result<()> {
        if a.is_zero() {
            return Err(Error::ForeignElement(
                "0 is not in the divisibility group".into(),
            ));
        }
        Ok(())
    }

    fn kind(&self) -> GroupKind {
        GroupKind::Divisibility
    }

    fn descriptor(&self) -> GroupDescriptor {
        GroupDescriptor::Divisibility {
            poly: self.field.polynomial().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;

    #[test]
    fn group_operation_is_multiplication() {
        let g = DivisibilityGroup::shipped();
        let half = BigRational::new(1.into(), 2.into());
        let zero = BigRational::from_integer(0.into());
        let y = FieldElement::new([half.clone(), zero, half]);
        let z = g.neg(&y);
        assert_eq!(g.add(&z, &y), g.zero());
        assert_eq!(g.add(&y, &g.zero()), y);
    }

    #[test]
    fn divisibility_order() {
        let g = DivisibilityGroup::shipped();
        let t = g.field().t();
        let two = FieldElement::from_integers(&[2, 0, 0]);
        assert!(g.leq(&g.zero(), &t));
        assert!(g.leq(&two, &g.add(&two, &t)));
        assert!(!g.leq(&two, &g.zero()));
        // 7 = -t (t^2 - t + 1) in O.
        let seven = FieldElement::from_integers(&[7, 0, 0]);
        assert!(g.leq(&t, &seven));
        assert!(g.validate(&g.field().zero()).is_err());
    }
}
