//! Consumption kinematics: consumed distance, bendable wavelength,
//! anticipated phase velocity and motion-stretch lengths.

mod cross;
mod problems;

use std::f64::consts::PI;

use serde::Serialize;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::quantity::constants::{self, SPEED_OF_LIGHT};
use crate::quantity::{reconcile, Dimension, EvalMode, Evaluated, Quantity};

pub use cross::{default_basis, generalized_cross_matrix, GeneralizedCross};
pub use problems::{
    divergences, run_sample_problem, Divergence, NamedValue, ProblemMode, SampleProblemResult,
    PROBLEM_IDS,
};

/// Relative tolerance on |v - c| / c for a lightlike classification.
pub const LIGHTLIKE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    ConsumedZero,
    ConsumingPossible,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsumptionState {
    t: Quantity,
    t_cons: Quantity,
    epsilon: f64,
}

impl ConsumptionState {
    /// `epsilon` is the small increment in seconds and must lie strictly
    /// inside (0, 1).
    pub fn new(t: Quantity, t_cons: Quantity, epsilon: f64) -> Result<Self> {
        t.require(Dimension::TIME, "Newtonian time")?;
        t_cons.require(Dimension::TIME, "consumed time")?;
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidInput(format!(
                "epsilon {epsilon} is outside the open interval (0, 1)"
            )));
        }
        Ok(ConsumptionState { t, t_cons, epsilon })
    }

    pub fn t(&self) -> Quantity {
        self.t
    }

    pub fn t_cons(&self) -> Quantity {
        self.t_cons
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn regime(&self) -> Regime {
        if self.t_cons.magnitude() >= self.t.magnitude() {
            Regime::ConsumedZero
        } else {
            Regime::ConsumingPossible
        }
    }
}

pub fn consumed_distance(v_rgb: Quantity, state: &ConsumptionState) -> Result<Quantity> {
    let v = v_rgb.require(Dimension::VELOCITY, "pixel velocity")?;
    if v < 0.0 {
        return Err(Error::Negative("pixel velocity"));
    }
    match state.regime() {
        Regime::ConsumedZero => Quantity::new(0.0, Dimension::LENGTH),
        Regime::ConsumingPossible => v_rgb.mul(state.t_cons),
    }
}

/// `v_w t / (nu t_cons)`. Equals `v_w / nu` when `t == t_cons`.
pub fn bendable_wavelength(
    v_w: Quantity,
    t: Quantity,
    nu: Quantity,
    t_cons: Quantity,
) -> Result<Quantity> {
    v_w.require(Dimension::VELOCITY, "wave speed")?;
    t.require(Dimension::TIME, "time")?;
    if nu.require(Dimension::FREQUENCY, "frequency")? == 0.0 {
        return Err(Error::Zero("frequency"));
    }
    if t_cons.require(Dimension::TIME, "consumed time")? == 0.0 {
        return Err(Error::Zero("consumed time"));
    }
    v_w.div(nu)?.mul(t.div(t_cons)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseVelocity {
    pub abs_vp: Quantity,
    pub full_vp: Quantity,
    pub c_cons: Quantity,
}

pub fn anticipated_phase_velocity(v: Quantity) -> Result<PhaseVelocity> {
    let speed = v.require(Dimension::VELOCITY, "particle speed")?;
    if speed == 0.0 {
        return Err(Error::Zero("velocity"));
    }
    if speed < 0.0 {
        return Err(Error::Negative("velocity"));
    }
    let c = constants::c();
    let abs_vp = c.powi(2)?.div(v)?;
    Ok(PhaseVelocity {
        abs_vp,
        full_vp: abs_vp.add(c)?,
        c_cons: c.sub(v)?,
    })
}

/// Modulus `1/lambda` of the contour wavenumber.
pub fn wavenumber_modulus(lambda: Quantity) -> Result<Quantity> {
    let l = lambda.require(Dimension::LENGTH, "wavelength")?;
    if l == 0.0 {
        return Err(Error::Zero("wavelength"));
    }
    if l < 0.0 {
        return Err(Error::Negative("wavelength"));
    }
    lambda.powi(-1)
}

/// `v_k x y cos(theta) / (c^2 dt)`.
///
/// `x_mag` and `y_mag` may be signed; the worked example feeds a negative
/// displacement difference.
pub fn motion_stretch(
    v_k: Quantity,
    x_mag: Quantity,
    y_mag: Quantity,
    theta: Angle,
    dt: Quantity,
) -> Result<Quantity> {
    v_k.require(Dimension::VELOCITY, "velocity")?;
    x_mag.require(Dimension::LENGTH, "x magnitude")?;
    y_mag.require(Dimension::LENGTH, "y magnitude")?;
    if dt.require(Dimension::TIME, "time step")? == 0.0 {
        return Err(Error::Zero("time"));
    }
    let c2 = constants::c().powi(2)?;
    v_k.mul(x_mag)?
        .mul(y_mag)?
        .scale(theta.cos())?
        .div(c2.mul(dt)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum TimeMode {
    /// Denominator `c^2 * 1 s`.
    UnitTime,
    /// Denominator `c^2 * t * t_P`.
    PlanckProduct { t: Quantity, t_p: Quantity },
}

impl TimeMode {
    pub fn planck(t: Quantity) -> Self {
        TimeMode::PlanckProduct {
            t,
            t_p: Quantity::new(constants::PLANCK_TIME, Dimension::TIME).expect("finite"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Trig {
    Cos,
    /// Cross-product magnitude form.
    Sin,
}

/// `x_cons x y trig(theta) / (2 g D)` with `D` chosen by `time_mode`.
///
/// In `UnitTime` mode the result has dimension m·s; `Checked` rejects it and
/// `PaperFaithful` reports it as a length with a warning.
#[allow(clippy::too_many_arguments)]
pub fn motion_stretch_general(
    x_cons: Quantity,
    x_mag: Quantity,
    y_mag: Quantity,
    theta: Angle,
    g: f64,
    time_mode: TimeMode,
    trig: Trig,
    mode: EvalMode,
) -> Result<Evaluated> {
    x_cons.require(Dimension::LENGTH, "consumed distance")?;
    x_mag.require(Dimension::LENGTH, "x magnitude")?;
    y_mag.require(Dimension::LENGTH, "y magnitude")?;
    if g == 0.0 {
        return Err(Error::Zero("metric coefficient"));
    }
    let c2 = constants::c().powi(2)?;
    let denom = match time_mode {
        TimeMode::UnitTime => c2.mul(constants::unit_time())?,
        TimeMode::PlanckProduct { t, t_p } => {
            if t.require(Dimension::TIME, "time")? <= 0.0 {
                return Err(Error::Zero("time"));
            }
            if t_p.require(Dimension::TIME, "Planck time")? <= 0.0 {
                return Err(Error::Zero("Planck time"));
            }
            c2.mul(t)?.mul(t_p)?
        }
    };
    let factor = match trig {
        Trig::Cos => theta.cos(),
        Trig::Sin => theta.sin(),
    };
    let value = x_cons
        .mul(x_mag)?
        .mul(y_mag)?
        .scale(factor)?
        .div(denom.scale(2.0 * g)?)?;
    reconcile(mode, value, Dimension::LENGTH, "motion stretch")
}

/// Angle sum `pi + K A` of a geodesic triangle under constant curvature.
pub fn geodesic_triangle_sum(k: Quantity, area: Quantity) -> Result<Angle> {
    k.require(Dimension::GAUSSIAN_CURVATURE, "Gaussian curvature")?;
    area.require(Dimension::AREA, "area")?;
    let excess = k.mul(area)?;
    Ok(Angle::from_radians(PI + excess.magnitude()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WorldlineKind {
    Timelike,
    Spacelike,
    Lightlike,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WorldlineClass {
    pub kind: WorldlineKind,
    pub ds_squared: Option<Quantity>,
    /// `sqrt(|ds^2|)` when an interval was supplied.
    pub consumed_length: Option<Quantity>,
}

pub fn worldline_classify(v: Quantity, ds_sq_cons: Option<Quantity>) -> Result<WorldlineClass> {
    let speed = v.require(Dimension::VELOCITY, "speed")?;
    if speed < 0.0 {
        return Err(Error::Negative("speed"));
    }
    let kind = if ((speed - SPEED_OF_LIGHT) / SPEED_OF_LIGHT).abs() < LIGHTLIKE_TOLERANCE {
        WorldlineKind::Lightlike
    } else if speed < SPEED_OF_LIGHT {
        WorldlineKind::Timelike
    } else {
        WorldlineKind::Spacelike
    };
    let consumed_length = match ds_sq_cons {
        Some(ds) => {
            let m = ds.require(Dimension::AREA, "interval")?;
            Some(Quantity::new(m.abs().sqrt(), Dimension::LENGTH)?)
        }
        None => None,
    };
    Ok(WorldlineClass {
        kind,
        ds_squared: ds_sq_cons,
        consumed_length,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PostKinematic {
    pub nu_post: Quantity,
    pub delta_k: Option<Quantity>,
}

/// `nu_post = c^2 (1 s) / X^2`, and `nu_post - nu_pre` when given.
pub fn post_kinematic_frequency(
    chi_squared: Quantity,
    nu_pre: Option<Quantity>,
) -> Result<PostKinematic> {
    let a = chi_squared.require(Dimension::AREA, "effective area")?;
    if a == 0.0 {
        return Err(Error::Zero("area"));
    }
    if a < 0.0 {
        return Err(Error::Negative("area"));
    }
    let nu_post = constants::c()
        .powi(2)?
        .mul(constants::unit_time())?
        .div(chi_squared)?;
    let delta_k = match nu_pre {
        Some(nu) => {
            nu.require(Dimension::FREQUENCY, "pre-kinematic frequency")?;
            Some(nu_post.sub(nu)?)
        }
        None => None,
    };
    Ok(PostKinematic { nu_post, delta_k })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Quantity {
        s.parse().unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn consumed_distance_regimes() {
        let s = ConsumptionState::new(q("3 s"), q("2 s"), 0.5).unwrap();
        assert_eq!(s.regime(), Regime::ConsumingPossible);
        let x = consumed_distance(q("0.1 m s^-1"), &s).unwrap();
        assert!((x.magnitude() - 0.2).abs() < 1e-15);
        let s = ConsumptionState::new(q("1 s"), q("1 s"), 0.5).unwrap();
        assert_eq!(
            consumed_distance(q("0.1 m s^-1"), &s).unwrap().magnitude(),
            0.0
        );
        assert_eq!(
            consumed_distance(q("0 m s^-1"), &s).unwrap().magnitude(),
            0.0
        );
        assert!(consumed_distance(q("-1 m s^-1"), &s).is_err());
    }

    #[test]
    fn epsilon_boundaries_rejected() {
        for eps in [0.0, 1.0, -0.5, 2.0] {
            assert!(ConsumptionState::new(q("1 s"), q("0 s"), eps).is_err());
        }
    }

    #[test]
    fn bendable_wavelength_examples() {
        let c = constants::c();
        let l = bendable_wavelength(c, q("1 s"), q("1e15 Hz"), q("1 s")).unwrap();
        assert!(rel(l.magnitude(), 2.99792458e-7) < 1e-15);
        let l = bendable_wavelength(c, q("2 s"), q("1e15 Hz"), q("1 s")).unwrap();
        assert!(rel(l.magnitude(), 5.99584916e-7) < 1e-15);
        assert_eq!(l.dim(), Dimension::LENGTH);
        assert_eq!(
            bendable_wavelength(c, q("1 s"), q("0 Hz"), q("1 s")),
            Err(Error::Zero("frequency"))
        );
        assert_eq!(
            bendable_wavelength(c, q("1 s"), q("1 Hz"), q("0 s")),
            Err(Error::Zero("consumed time"))
        );
    }

    #[test]
    fn phase_velocity_examples() {
        let p = anticipated_phase_velocity(q("0.1 m s^-1")).unwrap();
        assert!(rel(p.abs_vp.magnitude(), 8.987_551_787_368_177e17) < 1e-15);
        assert!(rel(p.abs_vp.value_in("km s^-1").unwrap(), 8.98755179e14) < 1e-3);
        assert!(rel(p.full_vp.magnitude(), 8.987_551_790_366_1e17) < 1e-15);
        assert!((p.c_cons.magnitude() - 299_792_457.9).abs() < 1e-6);
        let p = anticipated_phase_velocity(constants::c()).unwrap();
        assert_eq!(p.abs_vp.magnitude(), SPEED_OF_LIGHT);
        assert_eq!(
            anticipated_phase_velocity(q("0 m s^-1")),
            Err(Error::Zero("velocity"))
        );
    }

    #[test]
    fn wavenumber_examples() {
        assert_eq!(wavenumber_modulus(q("2 m")).unwrap().magnitude(), 0.5);
        assert_eq!(wavenumber_modulus(q("1 m")).unwrap().magnitude(), 1.0);
        let k = wavenumber_modulus(q("2.1299e-27 m")).unwrap();
        assert!(rel(k.magnitude(), 4.695056105920466e26) < 1e-12);
        assert_eq!(k.dim(), Dimension::INVERSE_LENGTH);
        assert_eq!(wavenumber_modulus(q("0 m")), Err(Error::Zero("wavelength")));
    }

    #[test]
    fn motion_stretch_worked_value() {
        let x = q("0.023 cm").sub(q("0.01 m")).unwrap();
        let xk = motion_stretch(
            q("0.1 m s^-1"),
            x,
            q("0.4318 mm"),
            Angle::from_degrees(95.0),
            q("1 s"),
        )
        .unwrap();
        assert_eq!(xk.dim(), Dimension::LENGTH);
        assert!(rel(xk.magnitude(), 4.09102189837635e-25) < 1e-12);
        assert!(rel(xk.magnitude(), 4.09102e-25) < 1e-3);
    }

    #[test]
    fn motion_stretch_zero_at_right_angle() {
        let xk = motion_stretch(
            q("3 m s^-1"),
            q("2 m"),
            q("5 m"),
            Angle::from_degrees(90.0),
            q("1 s"),
        )
        .unwrap();
        assert_eq!(xk.magnitude(), 0.0);
        assert_eq!(
            motion_stretch(q("1 m s^-1"), q("1 m"), q("1 m"), Angle::ZERO, q("0 s")),
            Err(Error::Zero("time"))
        );
    }

    #[test]
    fn general_unit_time_needs_lenient_mode() {
        let one = q("1 m");
        let args = |mode| {
            motion_stretch_general(
                one,
                one,
                one,
                Angle::ZERO,
                1.0,
                TimeMode::UnitTime,
                Trig::Cos,
                mode,
            )
        };
        assert!(matches!(
            args(EvalMode::Checked),
            Err(Error::DimensionMismatch { .. })
        ));
        let e = args(EvalMode::PaperFaithful).unwrap();
        assert_eq!(e.warnings.len(), 1);
        let expected = 1.0 / (2.0 * SPEED_OF_LIGHT * SPEED_OF_LIGHT);
        assert!(rel(e.value.magnitude(), expected) < 1e-15);
    }

    #[test]
    fn general_planck_product_reproduces_cavity_length() {
        let vp = anticipated_phase_velocity(q("0.1 m s^-1")).unwrap().full_vp;
        let x_cons = vp.mul(constants::unit_time()).unwrap();
        let half_d = q("8.132e-36 m");
        let mode = TimeMode::PlanckProduct {
            t: q("1 s"),
            t_p: q("5.3912e-44 s"),
        };
        let e = motion_stretch_general(
            x_cons,
            half_d,
            half_d,
            Angle::from_degrees(10.0),
            0.5,
            mode,
            Trig::Sin,
            EvalMode::Checked,
        )
        .unwrap();
        assert!(e.warnings.is_empty());
        assert!(rel(e.value.magnitude(), 2.129999623756152e-27) < 1e-12);
        assert!(rel(e.value.value_in("km").unwrap(), 2.1299e-30) < 1e-3);
    }

    #[test]
    fn general_guards() {
        let one = q("1 m");
        assert_eq!(
            motion_stretch_general(
                one,
                one,
                one,
                Angle::ZERO,
                0.0,
                TimeMode::UnitTime,
                Trig::Cos,
                EvalMode::PaperFaithful
            ),
            Err(Error::Zero("metric coefficient"))
        );
        let e = motion_stretch_general(
            one,
            one,
            one,
            Angle::from_degrees(90.0),
            1.0,
            TimeMode::planck(q("1 s")),
            Trig::Cos,
            EvalMode::Checked,
        )
        .unwrap();
        assert_eq!(e.value.magnitude(), 0.0);
    }

    #[test]
    fn geodesic_sums() {
        assert_eq!(
            geodesic_triangle_sum(q("0 m^-2"), q("1 m^2"))
                .unwrap()
                .radians(),
            PI
        );
        let octant = Quantity::new(PI / 2.0, Dimension::AREA).unwrap();
        let s = geodesic_triangle_sum(q("1 m^-2"), octant).unwrap();
        assert!((s.radians() - 1.5 * PI).abs() < 1e-15);
        let s = geodesic_triangle_sum(q("-1 m^-2"), octant).unwrap();
        assert!((s.radians() - 0.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn worldline_examples() {
        let half_c = Quantity::new(0.5 * SPEED_OF_LIGHT, Dimension::VELOCITY).unwrap();
        assert_eq!(
            worldline_classify(half_c, None).unwrap().kind,
            WorldlineKind::Timelike
        );
        assert_eq!(
            worldline_classify(constants::c(), None).unwrap().kind,
            WorldlineKind::Lightlike
        );
        let fast = Quantity::new(2.0 * SPEED_OF_LIGHT, Dimension::VELOCITY).unwrap();
        assert_eq!(
            worldline_classify(fast, None).unwrap().kind,
            WorldlineKind::Spacelike
        );
        let w = worldline_classify(half_c, Some(q("-4 m^2"))).unwrap();
        assert_eq!(w.consumed_length.unwrap().magnitude(), 2.0);
        assert_eq!(
            worldline_classify(q("-1 m s^-1"), None),
            Err(Error::Negative("speed"))
        );
    }

    #[test]
    fn post_kinematic_examples() {
        let p = post_kinematic_frequency(q("3.77e-7 m^2"), Some(q("7.95205e13 Hz"))).unwrap();
        assert!(rel(p.nu_post.magnitude(), 2.38396599e23) < 1e-8);
        assert!(rel(p.delta_k.unwrap().magnitude(), 2.3839659905491e23) < 1e-12);
        let p = post_kinematic_frequency(q("3.77e-7 m^2"), None).unwrap();
        let same = post_kinematic_frequency(q("3.77e-7 m^2"), Some(p.nu_post)).unwrap();
        assert_eq!(same.delta_k.unwrap().magnitude(), 0.0);
        assert_eq!(
            post_kinematic_frequency(q("0 m^2"), None),
            Err(Error::Zero("area"))
        );
    }
}
