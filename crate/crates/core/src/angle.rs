use serde::{Deserialize, Serialize};

/// A plane angle, stored in radians.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    pub fn from_radians(rad: f64) -> Self {
        Angle(rad)
    }

    pub fn from_degrees(deg: f64) -> Self {
        Angle(deg.to_radians())
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    /// Cosine, with results inside the rounding error of the argument
    /// snapped to zero so that right angles give exactly 0.
    pub fn cos(self) -> f64 {
        snap(self.0.cos(), self.0)
    }

    pub fn sin(self) -> f64 {
        snap(self.0.sin(), self.0)
    }
}

fn snap(v: f64, rad: f64) -> f64 {
    if v.abs() <= 4.0 * f64::EPSILON * rad.abs().max(1.0) {
        0.0
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_conversion() {
        assert!((Angle::from_degrees(180.0).radians() - std::f64::consts::PI).abs() < 1e-15);
        assert!((Angle::from_degrees(60.0).cos() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn right_angles_are_exact() {
        assert_eq!(Angle::from_degrees(90.0).cos(), 0.0);
        assert_eq!(Angle::from_degrees(270.0).cos(), 0.0);
        assert_eq!(Angle::from_degrees(180.0).sin(), 0.0);
        assert!(Angle::from_degrees(95.0).cos() < 0.0);
    }
}
