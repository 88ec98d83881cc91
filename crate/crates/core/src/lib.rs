//! Regular Legendrian rational tangles: continued fractions, box-dot
//! diagrams, front projections, invariants, and flype classification.

pub mod boxdot;
pub mod classifier;
pub mod error;
pub mod invariants;
pub mod lattice;
pub mod rational;
pub mod subdivision;
pub mod tangle;
pub mod unknot;

pub use error::{Error, Result};
pub use lattice::{HalfInt, HalfPoint};
pub use rational::{FlypeVector, Fraction, TwistVector};
