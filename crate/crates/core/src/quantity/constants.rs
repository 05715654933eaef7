//! Physical constants at the precision the worked problems use.
//!
//! `c` is exact. `h` is the six-decimal value 6.626068e-34 J·s; `hbar` is
//! derived from it. Planck time and length are stored as central values only,
//! without their printed uncertainty digits. `G` is the CODATA 2006 value,
//! the release that matches the printed `h`.

use std::f64::consts::PI;

use super::{Dimension, Quantity};
use crate::error::{Error, Result};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const PLANCK: f64 = 6.626_068e-34;
pub const DIRAC: f64 = PLANCK / (2.0 * PI);
pub const PLANCK_TIME: f64 = 5.391_21e-44;
pub const PLANCK_LENGTH: f64 = 1.616_24e-35;
pub const GRAVITATIONAL: f64 = 6.674_28e-11;

/// Unit of time, u(t) = 1 s.
pub const UNIT_TIME: f64 = 1.0;

pub const NAMES: [&str; 6] = ["c", "h", "hbar", "t_P", "l_P", "G"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub c: Quantity,
    pub h: Quantity,
    pub hbar: Quantity,
    pub t_p: Quantity,
    pub l_p: Quantity,
    pub g: Quantity,
}

impl PhysicalConstants {
    pub fn get() -> Self {
        let q = |name| constant(name).expect("known constant");
        PhysicalConstants {
            c: q("c"),
            h: q("h"),
            hbar: q("hbar"),
            t_p: q("t_P"),
            l_p: q("l_P"),
            g: q("G"),
        }
    }
}

pub fn constant(name: &str) -> Result<Quantity> {
    let (value, dim) = match name {
        "c" => (SPEED_OF_LIGHT, Dimension::VELOCITY),
        "h" => (PLANCK, Dimension::ACTION),
        "hbar" => (DIRAC, Dimension::ACTION),
        "t_P" => (PLANCK_TIME, Dimension::TIME),
        "l_P" => (PLANCK_LENGTH, Dimension::LENGTH),
        // m^3 kg^-1 s^-2
        "G" => (
            GRAVITATIONAL,
            Dimension::from_exponents([-1, 3, -2, 0, 0, 0, 0, 0])?,
        ),
        other => return Err(Error::UnknownConstant(other.to_string())),
    };
    Quantity::new(value, dim)
}

pub fn c() -> Quantity {
    Quantity::new(SPEED_OF_LIGHT, Dimension::VELOCITY).expect("finite")
}

pub fn unit_time() -> Quantity {
    Quantity::new(UNIT_TIME, Dimension::TIME).expect("finite")
}
