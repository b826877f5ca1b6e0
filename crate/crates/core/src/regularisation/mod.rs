//! The regularisation `L(S)` of a system of ideals.
//!
//! Three routes: sign-vector expansion over forcing elements (semi-decision,
//! any system), witness sets `A + B <=_S B` (search over a candidate range),
//! and an exact linear-programming decision for the minimal system on
//! cone-preordered `Z^d`.

mod lcd;
mod lorenzen;
mod prufer;

pub use lcd::{
    lcd_decide, regular_entails_decidable, replay_positive, replay_separator, ConeDecision,
};
pub use lorenzen::{
    combinations, default_pool, l_holds, normalize_pool, sign_vectors, signed_steps, Regulariser,
};
pub use prufer::{
    cycle_extract, prufer_check, prufer_check_targets, prufer_closure, prufer_search, Cycle,
};
