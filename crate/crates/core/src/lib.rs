//! Exact q-series arithmetic over Q(ζ₂₄) for Ramanujan's third order mock
//! theta functions, together with floating-point evaluation of their
//! modular completions.

pub mod cyclotomic;
pub mod dissect;
pub mod error;
pub mod etatheta;
pub mod lerch;
pub mod mocktheta;
pub mod numeric;
pub mod qseries;
pub mod registry;

pub use cyclotomic::{Cyc24, Rational};
pub use error::{Error, Result};
pub use qseries::{EqReport, Mismatch, Monomial, QSeries, GRID};
