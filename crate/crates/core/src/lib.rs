//! Regular entailment relations on preordered commutative groups.
//!
//! The crate is layered:
//!
//! * [`group`]: decidable preordered groups (`Z^d` under a cone, `Z` under
//!   equality, the divisibility group of a cubic order) and finite subsets.
//! * [`number_ring`]: the cubic field, its order and fractional ideals.
//! * [`systems`]: equivariant systems of ideals `A |> b`.
//! * [`forcing`]: the operators `T_x` and `U_x` as bounded chain searches.
//! * [`regularisation`]: the regularisation `L(S)` (sign-vector search),
//!   Prüfer witnesses, and an exact decision procedure on cone groups.
//! * [`entailment`]: `A |- B := R(A - B)` over interchangeable backends.
//! * [`lgroup`]: formal meets and their Grothendieck l-group.
//! * [`certificate`]: serializable, independently replayable evidence.

pub mod certificate;
pub mod entailment;
pub mod error;
pub mod forcing;
pub mod group;
pub mod instances;
mod json;
pub mod lgroup;
pub mod lp;
pub mod number_ring;
pub mod regularisation;
pub mod report;
pub mod sampling;
pub mod systems;

pub use error::{Error, Result};
pub use forcing::{Budget, Verdict};
pub use group::{
    AnyGroup, DivisibilityGroup, Elem, FinSubset, GroupDescriptor, GroupKind, PreorderedGroup,
    ZdElement, ZdGroup,
};
pub use systems::{DedekindSystem, MinimalSystem, SystemOfIdeals};
