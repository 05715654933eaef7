use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest absolute exponent a [`Dimension`] may carry.
pub const MAX_EXPONENT: i32 = 12;

/// Base dimensions, in canonical formatting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseDim {
    Kilogram,
    Meter,
    Second,
    Ampere,
    Kelvin,
    Mole,
    Candela,
    Steradian,
}

impl BaseDim {
    pub const ALL: [BaseDim; 8] = [
        BaseDim::Kilogram,
        BaseDim::Meter,
        BaseDim::Second,
        BaseDim::Ampere,
        BaseDim::Kelvin,
        BaseDim::Mole,
        BaseDim::Candela,
        BaseDim::Steradian,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            BaseDim::Kilogram => "kg",
            BaseDim::Meter => "m",
            BaseDim::Second => "s",
            BaseDim::Ampere => "A",
            BaseDim::Kelvin => "K",
            BaseDim::Mole => "mol",
            BaseDim::Candela => "cd",
            BaseDim::Steradian => "sr",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Integer exponents over the seven SI base dimensions plus the steradian.
///
/// The steradian is tracked as its own pseudo-dimension. It only disappears
/// through [`Dimension::erase_steradian`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Dimension {
    exps: [i8; 8],
}

#[allow(clippy::should_implement_trait)]
impl Dimension {
    pub const DIMENSIONLESS: Dimension = Dimension { exps: [0; 8] };

    pub const MASS: Dimension = Dimension::raw([1, 0, 0, 0, 0, 0, 0, 0]);
    pub const LENGTH: Dimension = Dimension::raw([0, 1, 0, 0, 0, 0, 0, 0]);
    pub const TIME: Dimension = Dimension::raw([0, 0, 1, 0, 0, 0, 0, 0]);
    pub const CURRENT: Dimension = Dimension::raw([0, 0, 0, 1, 0, 0, 0, 0]);
    pub const LUMINOUS_INTENSITY: Dimension = Dimension::raw([0, 0, 0, 0, 0, 0, 1, 0]);
    pub const SOLID_ANGLE: Dimension = Dimension::raw([0, 0, 0, 0, 0, 0, 0, 1]);

    pub const AREA: Dimension = Dimension::raw([0, 2, 0, 0, 0, 0, 0, 0]);
    pub const VOLUME: Dimension = Dimension::raw([0, 3, 0, 0, 0, 0, 0, 0]);
    pub const INVERSE_LENGTH: Dimension = Dimension::raw([0, -1, 0, 0, 0, 0, 0, 0]);
    pub const TIME_SQUARED: Dimension = Dimension::raw([0, 0, 2, 0, 0, 0, 0, 0]);
    pub const FREQUENCY: Dimension = Dimension::raw([0, 0, -1, 0, 0, 0, 0, 0]);
    pub const VELOCITY: Dimension = Dimension::raw([0, 1, -1, 0, 0, 0, 0, 0]);
    pub const DENSITY: Dimension = Dimension::raw([1, -3, 0, 0, 0, 0, 0, 0]);
    pub const FORCE: Dimension = Dimension::raw([1, 1, -2, 0, 0, 0, 0, 0]);
    pub const ENERGY: Dimension = Dimension::raw([1, 2, -2, 0, 0, 0, 0, 0]);
    pub const ACTION: Dimension = Dimension::raw([1, 2, -1, 0, 0, 0, 0, 0]);
    pub const POWER: Dimension = Dimension::raw([1, 2, -3, 0, 0, 0, 0, 0]);
    pub const CHARGE: Dimension = Dimension::raw([0, 0, 1, 1, 0, 0, 0, 0]);
    pub const VOLTAGE: Dimension = Dimension::raw([1, 2, -3, -1, 0, 0, 0, 0]);
    pub const ELECTRIC_FIELD: Dimension = Dimension::raw([1, 1, -3, -1, 0, 0, 0, 0]);
    pub const MAGNETIC_FIELD: Dimension = Dimension::raw([1, 0, -2, -1, 0, 0, 0, 0]);
    /// W·m⁻² = kg·s⁻³
    pub const IRRADIANCE: Dimension = Dimension::raw([1, 0, -3, 0, 0, 0, 0, 0]);
    /// J·m·s⁻¹ = kg·m³·s⁻³
    pub const ENERGY_FLUX_PRODUCT: Dimension = Dimension::raw([1, 3, -3, 0, 0, 0, 0, 0]);
    pub const LUMINOUS_FLUX: Dimension = Dimension::raw([0, 0, 0, 0, 0, 0, 1, 1]);
    pub const LUMINANCE: Dimension = Dimension::raw([0, -2, 0, 0, 0, 0, 1, 0]);
    pub const GAUSSIAN_CURVATURE: Dimension = Dimension::raw([0, -2, 0, 0, 0, 0, 0, 0]);

    const fn raw(exps: [i8; 8]) -> Self {
        Dimension { exps }
    }

    /// Builds a dimension from exponents in canonical order
    /// (kg, m, s, A, K, mol, cd, sr).
    pub fn from_exponents(exps: [i32; 8]) -> Result<Self> {
        let mut out = [0i8; 8];
        for (slot, e) in out.iter_mut().zip(exps) {
            *slot = bounded(e)?;
        }
        Ok(Dimension { exps: out })
    }

    pub fn of(base: BaseDim) -> Self {
        let mut exps = [0; 8];
        exps[base.index()] = 1;
        Dimension { exps }
    }

    pub fn exponent(&self, base: BaseDim) -> i8 {
        self.exps[base.index()]
    }

    pub fn exponents(&self) -> [i8; 8] {
        self.exps
    }

    pub fn is_dimensionless(&self) -> bool {
        self.exps == [0; 8]
    }

    pub fn mul(self, other: Dimension) -> Result<Dimension> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn div(self, other: Dimension) -> Result<Dimension> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn powi(self, k: i32) -> Result<Dimension> {
        let mut out = [0i8; 8];
        for (slot, e) in out.iter_mut().zip(self.exps) {
            let scaled = (e as i32)
                .checked_mul(k)
                .ok_or(Error::ExponentOverflow(i32::MAX))?;
            *slot = bounded(scaled)?;
        }
        Ok(Dimension { exps: out })
    }

    pub fn inv(self) -> Dimension {
        // negation stays inside [-12, 12]
        let mut exps = self.exps;
        for e in exps.iter_mut() {
            *e = -*e;
        }
        Dimension { exps }
    }

    pub fn sqrt(self) -> Result<Dimension> {
        if self.exps.iter().any(|e| e % 2 != 0) {
            return Err(Error::OddExponent(self));
        }
        let mut exps = self.exps;
        for e in exps.iter_mut() {
            *e /= 2;
        }
        Ok(Dimension { exps })
    }

    /// Drops the steradian exponent, leaving every other exponent unchanged.
    pub fn erase_steradian(self) -> Dimension {
        let mut exps = self.exps;
        exps[BaseDim::Steradian.index()] = 0;
        Dimension { exps }
    }

    fn zip_with(self, other: Dimension, f: impl Fn(i32, i32) -> i32) -> Result<Dimension> {
        let mut out = [0i8; 8];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = bounded(f(self.exps[i] as i32, other.exps[i] as i32))?;
        }
        Ok(Dimension { exps: out })
    }
}

fn bounded(e: i32) -> Result<i8> {
    if (-MAX_EXPONENT..=MAX_EXPONENT).contains(&e) {
        Ok(e as i8)
    } else {
        Err(Error::ExponentOverflow(e))
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::units::format_dimension(*self))
    }
}

impl fmt::Debug for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dimension({self})")
    }
}

impl From<Dimension> for String {
    fn from(d: Dimension) -> String {
        d.to_string()
    }
}

impl TryFrom<String> for Dimension {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        super::units::parse_dimension(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_bounds_are_enforced() {
        assert!(Dimension::from_exponents([12, -12, 0, 0, 0, 0, 0, 0]).is_ok());
        assert_eq!(
            Dimension::from_exponents([13, 0, 0, 0, 0, 0, 0, 0]),
            Err(Error::ExponentOverflow(13))
        );
        let big = Dimension::from_exponents([0, 7, 0, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(big.mul(big), Err(Error::ExponentOverflow(14)));
        assert_eq!(Dimension::LENGTH.powi(13), Err(Error::ExponentOverflow(13)));
    }

    #[test]
    fn sqrt_needs_even_exponents() {
        assert_eq!(Dimension::AREA.sqrt(), Ok(Dimension::LENGTH));
        assert!(matches!(
            Dimension::VOLUME.sqrt(),
            Err(Error::OddExponent(_))
        ));
    }

    #[test]
    fn steradian_erasure_is_explicit() {
        let flux = Dimension::LUMINOUS_FLUX;
        assert_ne!(flux, Dimension::LUMINOUS_INTENSITY);
        assert_eq!(flux.erase_steradian(), Dimension::LUMINOUS_INTENSITY);
    }

    #[test]
    fn derived_constants_agree_with_algebra() {
        assert_eq!(
            Dimension::VOLTAGE.mul(Dimension::CURRENT).unwrap(),
            Dimension::POWER
        );
        assert_eq!(
            Dimension::POWER.div(Dimension::AREA).unwrap(),
            Dimension::IRRADIANCE
        );
        assert_eq!(
            Dimension::ENERGY.mul(Dimension::VELOCITY).unwrap(),
            Dimension::ENERGY_FLUX_PRODUCT
        );
    }
}
