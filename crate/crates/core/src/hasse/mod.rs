//! Lifting the mod-2 Hasse invariant `A₂` to a rational modular form.

mod character;
mod cyclotomic;
mod lift;

pub use character::{build_character, l_value, OddChar};
pub use cyclotomic::{basis_len, CycNumber};
pub use lift::{eisenstein_e, expected_v2_l_value, lift_f, verify_hasse_lift, HasseReport, QSeries};
