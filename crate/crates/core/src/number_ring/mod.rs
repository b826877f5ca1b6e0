//! Exact arithmetic in a cubic number field, its monogenic order
//! `O = Z[t]/(f)` and finitely generated fractional ideals of `O`.
//!
//! `O` is deliberately not replaced by its integral closure.

mod field;
pub mod hnf;
mod ideal;

pub use field::{CubicField, FieldElement};
pub use ideal::{membership_witness, replay_witness, FractionalIdeal, IdealSerial};
