//! Exact computations in the Whittaker-coinvariant model of dynamical twists.

pub mod check;
pub mod extremal;
pub mod matrix;
pub mod reps;
pub mod scalar;
pub mod twist;
pub mod uea;
pub mod whittaker;

pub use check::CheckReport;
pub use matrix::ScalarMatrix;
pub use reps::Rep;
pub use scalar::{Param, Scalar};
pub use uea::{Algebra, Element, Generator, Monomial};
