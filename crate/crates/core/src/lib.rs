//! Exact-arithmetic engine for half lightlike Lie-subgroup submanifolds of
//! almost contact B-metric Lie groups.
//!
//! Pipeline: [`liegroup`] structure constants → [`bstructure`] structure
//! tensors and Levi-Civita connection → [`submanifold`] frame → [`forms`]
//! Gauss–Weingarten data of `(M, g)` → [`assoc`] the non-degenerate
//! submanifold `(M, g̃)` and the minimality equivalence. Everything is
//! computed over the rationals.

pub mod assoc;
pub mod bstructure;
pub mod cli;
pub mod error;
pub mod exactmath;
pub mod forms;
pub mod instances;
pub mod liegroup;
pub mod report;
pub mod submanifold;

pub use error::{Error, Result};
