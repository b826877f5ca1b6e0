//! The three worked instances.
//!
//! * `exa1`: `Z` preordered by `x <= y` iff `y - x` is in `60N`.
//! * `exa2`: the divisibility group of `Z[t]/(t^3 - t^2 + t + 7)`, with
//!   `y = (t^2 + 1) / 2` and `z = 1 / y`.
//! * `exa3`: `Z` preordered by equality.

use crate::group::{DivisibilityGroup, ZdElement, ZdGroup};
use crate::number_ring::{CubicField, FieldElement};
use crate::systems::{DedekindSystem, MinimalSystem};

pub const NAMES: [&str; 3] = ["exa1", "exa2", "exa3"];

pub fn exa1_group() -> ZdGroup {
    ZdGroup::cone(1, vec![ZdElement::scalar(60)]).expect("valid cone")
}

pub fn exa1_system() -> MinimalSystem<ZdGroup> {
    MinimalSystem::new(exa1_group())
}

pub fn exa2_group() -> DivisibilityGroup {
    DivisibilityGroup::shipped()
}

pub fn exa2_system() -> DedekindSystem {
    DedekindSystem::new(exa2_group())
}

/// `(t^2 + 1) / 2`, integral over `Z` but not in `Z[t]`.
pub fn exa2_y(field: &CubicField) -> FieldElement {
    let half = num_rational::BigRational::new(1.into(), 2.into());
    field.scale(
        &field.add(&field.mul(&field.t(), &field.t()), &field.one()),
        &half,
    )
}

pub fn exa2_z(field: &CubicField) -> FieldElement {
    field.inv(&exa2_y(field)).expect("y is nonzero")
}

pub fn exa3_group() -> ZdGroup {
    ZdGroup::discrete()
}

pub fn exa3_system() -> MinimalSystem<ZdGroup> {
    MinimalSystem::new(exa3_group())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PreorderedGroup;

    #[test]
    fn y_satisfies_its_cubic() {
        let f = CubicField::shipped();
        let y = exa2_y(&f);
        let y2 = f.mul(&y, &y);
        let y3 = f.mul(&y2, &y);
        // Minimal polynomial Y^3 - Y^2 + 4Y - 8, by a resultant computation.
        let four = FieldElement::from_integers(&[4, 0, 0]);
        let eight = FieldElement::from_integers(&[8, 0, 0]);
        let rhs = f.add(&f.sub(&y2, &f.mul(&four, &y)), &eight);
        assert_eq!(y3, rhs);
        assert!(!y.is_integral());
        assert_eq!(f.mul(&y, &exa2_z(&f)), f.one());
    }

    #[test]
    fn exa1_order() {
        let g = exa1_group();
        assert!(g.leq(&g.int(10), &g.int(130)));
        assert!(!g.leq(&g.int(3), &g.int(130)));
        assert!(exa3_group().leq(&g.int(4), &g.int(4)));
    }
}
