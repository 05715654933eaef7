//! Unit-aware calculation engine for consumption kinematics, relativity
//! formulas, a three-grade perceptron, photometric flux and a pulse ledger.

pub mod error;
pub mod ledger;
pub mod neuromatrix;
pub mod photometry;
pub mod prekinematics;
pub mod quantity;
pub mod regression;
pub mod relativity;
pub mod simulate;

mod angle;

pub use angle::Angle;
pub use error::{Error, Result};
pub use quantity::{Dimension, EvalMode, Quantity};
