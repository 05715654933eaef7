//! Dimensioned magnitudes with checked arithmetic.

pub mod constants;
mod dimension;
mod mode;
pub mod units;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use dimension::{BaseDim, Dimension, MAX_EXPONENT};
pub use mode::{reconcile, DimensionWarning, EvalMode, Evaluated};
pub use units::{format_dimension, parse_dimension, parse_unit, Unit};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineOp {
    Multiply,
    Divide,
    Power(i32),
}

/// A finite real magnitude in SI base units paired with its [`Dimension`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    magnitude: f64,
    #[serde(rename = "unit")]
    dim: Dimension,
}

#[allow(clippy::should_implement_trait)]
impl Quantity {
    pub fn new(magnitude: f64, dim: Dimension) -> Result<Self> {
        if !magnitude.is_finite() {
            return Err(Error::NonFinite("quantity construction"));
        }
        Ok(Quantity { magnitude, dim })
    }

    pub fn dimensionless(x: f64) -> Result<Self> {
        Quantity::new(x, Dimension::DIMENSIONLESS)
    }

    /// `magnitude` expressed in `unit`, converted to SI base units.
    pub fn with_unit(magnitude: f64, unit: &str) -> Result<Self> {
        let u = parse_unit(unit)?;
        Quantity::new(magnitude * u.scale, u.dim)
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    /// Magnitude expressed in `unit`; the dimensions must agree.
    pub fn value_in(&self, unit: &str) -> Result<f64> {
        let u = parse_unit(unit)?;
        if u.dim != self.dim {
            return Err(Error::mismatch("unit conversion", self.dim, u.dim));
        }
        Ok(self.magnitude / u.scale)
    }

    /// Returns the magnitude if `self` has dimension `dim`.
    pub fn require(&self, dim: Dimension, context: &str) -> Result<f64> {
        if self.dim != dim {
            return Err(Error::mismatch(context, self.dim, dim));
        }
        Ok(self.magnitude)
    }

    pub fn combine(self, other: Quantity, op: CombineOp) -> Result<Quantity> {
        match op {
            CombineOp::Multiply => self.mul(other),
            CombineOp::Divide => self.div(other),
            CombineOp::Power(k) => self.powi(k),
        }
    }

    pub fn mul(self, other: Quantity) -> Result<Quantity> {
        let dim = self.dim.mul(other.dim)?;
        finite(self.magnitude * other.magnitude, dim, "multiply")
    }

    pub fn div(self, other: Quantity) -> Result<Quantity> {
        if other.magnitude == 0.0 {
            return Err(Error::DivisionByZero);
        }
        let dim = self.dim.div(other.dim)?;
        finite(self.magnitude / other.magnitude, dim, "divide")
    }

    pub fn powi(self, k: i32) -> Result<Quantity> {
        let dim = self.dim.powi(k)?;
        if self.magnitude == 0.0 && k < 0 {
            return Err(Error::DivisionByZero);
        }
        finite(self.magnitude.powi(k), dim, "power")
    }

    pub fn sqrt(self) -> Result<Quantity> {
        let dim = self.dim.sqrt()?;
        if self.magnitude < 0.0 {
            return Err(Error::Negative("radicand"));
        }
        finite(self.magnitude.sqrt(), dim, "sqrt")
    }

    pub fn add(self, other: Quantity) -> Result<Quantity> {
        if self.dim != other.dim {
            return Err(Error::mismatch("addition", self.dim, other.dim));
        }
        finite(self.magnitude + other.magnitude, self.dim, "add")
    }

    pub fn sub(self, other: Quantity) -> Result<Quantity> {
        self.add(other.neg())
    }

    pub fn neg(self) -> Quantity {
        Quantity {
            magnitude: -self.magnitude,
            dim: self.dim,
        }
    }

    pub fn scale(self, factor: f64) -> Result<Quantity> {
        finite(self.magnitude * factor, self.dim, "scale")
    }

    pub fn erase_steradian(self) -> Quantity {
        Quantity {
            magnitude: self.magnitude,
            dim: self.dim.erase_steradian(),
        }
    }

    /// Reinterprets the magnitude under another dimension. Only the lenient
    /// evaluation path uses this, and it always records a warning.
    pub(crate) fn retag(self, dim: Dimension) -> Quantity {
        Quantity {
            magnitude: self.magnitude,
            dim,
        }
    }
}

fn finite(magnitude: f64, dim: Dimension, context: &'static str) -> Result<Quantity> {
    if magnitude.is_finite() {
        Ok(Quantity { magnitude, dim })
    } else {
        Err(Error::NonFinite(context))
    }
}

/// Adds two quantities of equal dimension.
pub fn q_add(a: Quantity, b: Quantity) -> Result<Quantity> {
    a.add(b)
}

pub fn q_combine(a: Quantity, b: Quantity, op: CombineOp) -> Result<Quantity> {
    a.combine(b, op)
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim.is_dimensionless() {
            write!(f, "{}", self.magnitude)
        } else {
            write!(f, "{} {}", self.magnitude, self.dim)
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    /// Parses `<number> [unit-expr]`, e.g. `0.023 cm` or `-9.77e-3 m`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let lead = s.len() - s.trim_start().len();
        let (num, rest) = match trimmed.find([' ', '\t']) {
            Some(i) => (&trimmed[..i], trimmed[i..].trim_start()),
            None => (trimmed, ""),
        };
        let magnitude: f64 = num.parse().map_err(|_| Error::Parse {
            offset: lead,
            message: format!("invalid number `{num}`"),
        })?;
        if rest.is_empty() {
            return Quantity::dimensionless(magnitude);
        }
        let rest_offset = s.len() - s.trim_start().len() + (trimmed.len() - rest.len());
        let unit = parse_unit(rest).map_err(|e| shift_offset(e, rest_offset))?;
        Quantity::new(magnitude * unit.scale, unit.dim)
    }
}

fn shift_offset(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { offset, message } => Error::Parse {
            offset: offset + by,
            message,
        },
        Error::UnknownUnit { symbol, offset } => Error::UnknownUnit {
            symbol,
            offset: offset + by,
        },
        other => other,
    }
}
