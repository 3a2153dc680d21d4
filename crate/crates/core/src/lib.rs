//! Exact character theory of finite permutation groups and the
//! Frobenius–Schur indicators of simple modules over their Drinfeld doubles.

// index loops mirror the matrix formulas they implement
#![allow(clippy::needless_range_loop)]

pub mod builtins;
pub mod chartab;
pub mod cli;
pub mod cyclo;
pub mod double;
pub mod error;
pub mod group;
pub mod indicators;
pub mod perm;
pub mod verify;

pub use chartab::{Character, CharacterTable, TableCache};
pub use cyclo::{Cyclotomic, Rational};
pub use error::{Error, Result};
pub use group::{ClassData, PermGroup};
pub use perm::Permutation;
