//! Exact quadratic-algebra engine for the Yang-Baxter (BEER) algebras of the
//! reflection groups of types A, B and D, their quadratic duals, PBW
//! rewriting systems and Hilbert series.

pub mod beerkit;
pub mod error;
pub mod exactla;
pub mod morphcheck;
pub mod reflgroups;
pub mod rewrite;
pub mod quadpres;
pub mod ydbraid;

pub use error::{Error, Result};
