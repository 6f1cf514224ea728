//! Graded quasi-hereditary algebras from quiver presentations.
//!
//! The crate builds finite-dimensional positively graded algebras from
//! quiver-with-relations presentations, computes their structural modules
//! (simples, projectives, injectives, standards, costandards, tiltings),
//! minimal resolutions and tilting (co)resolutions, Ringel and Koszul duals,
//! and decides Koszulity, standard Koszulity and balancedness with explicit
//! witnesses. A report layer verifies that the two dualities commute on
//! balanced algebras.

pub mod algebra;
pub mod complex;
pub mod duality;
pub mod error;
pub mod homotopy;
pub mod iso;
pub mod linalg;
pub mod module;
pub mod presentation;
pub mod report;
pub mod resolve;
pub mod rng;
pub mod scalar;
pub mod structural;

pub use error::{QhaError, Result};
pub use scalar::{Field, Scalar};
