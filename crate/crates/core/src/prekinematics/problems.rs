//! Worked problems with their named results.
//!
//! `StrictPaper` substitutes the printed intermediates (the rounded Planck
//! time 5.3912e-44 s and the effective area 3.77e-7 m^2). `Recomputed`
//! derives every intermediate from the inputs and the stored constants.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use super::{
    anticipated_phase_velocity, motion_stretch, motion_stretch_general, post_kinematic_frequency,
};
use super::{TimeMode, Trig};
use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::photometry::{biovi_quantity, photon_energy};
use crate::quantity::constants::{self, PLANCK_TIME};
use crate::quantity::{DimensionWarning, EvalMode, Quantity};

pub const PROBLEM_IDS: [&str; 5] = ["2.1a", "2.1b", "2.2a", "2.2b", "2.2c"];

/// Planck time as substituted in the printed solutions.
pub const PRINTED_PLANCK_TIME: f64 = 5.3912e-44;
/// Effective area as substituted in the printed solutions, m^2.
pub const PRINTED_CHI_SQUARED: f64 = 3.77e-7;

/// Two values diverge when their relative difference exceeds this.
pub const DIVERGENCE_TOLERANCE: f64 = 1e-3;

const CAVITY_DIAMETER: f64 = 1.6264e-35;
const PIXEL_FRAME: f64 = 0.377e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemMode {
    #[default]
    StrictPaper,
    Recomputed,
}

impl fmt::Display for ProblemMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProblemMode::StrictPaper => "strict-paper",
            ProblemMode::Recomputed => "recomputed",
        })
    }
}

impl FromStr for ProblemMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict-paper" => Ok(ProblemMode::StrictPaper),
            "recomputed" => Ok(ProblemMode::Recomputed),
            other => Err(Error::InvalidInput(format!(
                "unknown problem mode `{other}` (expected strict-paper or recomputed)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedValue {
    pub label: String,
    pub value: Quantity,
    /// Unit the result is reported in, e.g. `km s^-1`.
    pub display_unit: String,
}

impl NamedValue {
    fn new(label: &str, value: Quantity, display_unit: &str) -> Self {
        NamedValue {
            label: label.to_string(),
            value,
            display_unit: display_unit.to_string(),
        }
    }

    pub fn display_magnitude(&self) -> f64 {
        self.value
            .value_in(&self.display_unit)
            .expect("display unit matches the value's dimension")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleProblemResult {
    pub problem_id: String,
    pub mode: ProblemMode,
    pub values: Vec<NamedValue>,
    pub warnings: Vec<DimensionWarning>,
}

impl SampleProblemResult {
    pub fn get(&self, label: &str) -> Option<&NamedValue> {
        self.values.iter().find(|v| v.label == label)
    }

    /// Writes `problem_id,label,magnitude,unit,mode` rows, optionally with
    /// the header line.
    pub fn write_csv<W: Write>(&self, out: &mut W, header: bool) -> std::io::Result<()> {
        if header {
            out.write_all(b"problem_id,label,magnitude,unit,mode\n")?;
        }
        for v in &self.values {
            writeln!(
                out,
                "{},{},{:e},{},{}",
                self.problem_id,
                v.label,
                v.display_magnitude(),
                v.display_unit,
                self.mode
            )?;
        }
        Ok(())
    }
}

struct Inputs {
    t_p: f64,
    chi_squared: f64,
}

impl Inputs {
    fn for_mode(mode: ProblemMode) -> Self {
        match mode {
            ProblemMode::StrictPaper => Inputs {
                t_p: PRINTED_PLANCK_TIME,
                chi_squared: PRINTED_CHI_SQUARED,
            },
            ProblemMode::Recomputed => {
                let half_d = CAVITY_DIAMETER / 2.0;
                Inputs {
                    t_p: PLANCK_TIME,
                    chi_squared: half_d * half_d + PIXEL_FRAME * PIXEL_FRAME,
                }
            }
        }
    }
}

fn q(m: f64, unit: &str) -> Result<Quantity> {
    Quantity::with_unit(m, unit)
}

fn pixel_speed() -> Result<Quantity> {
    q(0.1, "m s^-1")
}

/// `(0.023 cm) - (0.01 m)`.
fn pixel_offset() -> Result<Quantity> {
    q(0.023, "cm")?.sub(q(0.01, "m")?)
}

fn problem_2_1a() -> Result<Vec<NamedValue>> {
    let xk = motion_stretch(
        pixel_speed()?,
        pixel_offset()?,
        q(0.4318, "mm")?,
        Angle::from_degrees(95.0),
        constants::unit_time(),
    )?;
    Ok(vec![NamedValue::new("x_k", xk, "m")])
}

fn problem_2_1b() -> Result<Vec<NamedValue>> {
    let theta = Angle::from_degrees(95.0);
    let x = pixel_offset()?;
    let hyp = x.scale(1.0 / theta.cos())?;
    let xk = problem_2_1a()?.remove(0).value;
    let area = x.mul(q(0.4318, "mm")?)?.scale(theta.cos())?;
    Ok(vec![
        NamedValue::new("hypotenuse", hyp, "m"),
        NamedValue::new("total", hyp.add(xk)?, "m"),
        NamedValue::new("area", area, "m^2"),
    ])
}

fn problem_2_2a() -> Result<Vec<NamedValue>> {
    let p = anticipated_phase_velocity(pixel_speed()?)?;
    Ok(vec![
        NamedValue::new("abs_vp", p.abs_vp, "km s^-1"),
        NamedValue::new("full_vp", p.full_vp, "km s^-1"),
        NamedValue::new("c_cons", p.c_cons, "m s^-1"),
    ])
}

fn problem_2_2b(inp: &Inputs, warnings: &mut Vec<DimensionWarning>) -> Result<Vec<NamedValue>> {
    let vp = anticipated_phase_velocity(pixel_speed()?)?.full_vp;
    let half_d = q(CAVITY_DIAMETER / 2.0, "m")?;
    // (|v_p| + c) u(t) as the consumed length, g = 1/2, over c^2 (1 s) t_P
    let e = motion_stretch_general(
        vp.mul(constants::unit_time())?,
        half_d,
        half_d,
        Angle::from_degrees(10.0),
        0.5,
        TimeMode::PlanckProduct {
            t: constants::unit_time(),
            t_p: q(inp.t_p, "s")?,
        },
        Trig::Sin,
        EvalMode::Checked,
    )?;
    warnings.extend(e.warnings);
    let xk = e.value;
    let nu = constants::c().div(xk)?;
    Ok(vec![
        NamedValue::new("x_k", xk, "km"),
        NamedValue::new("nu", nu, "Hz"),
    ])
}

fn problem_2_2c(inp: &Inputs) -> Result<Vec<NamedValue>> {
    let c = constants::c();
    let vp = anticipated_phase_velocity(pixel_speed()?)?.full_vp;
    let d = q(CAVITY_DIAMETER, "m")?;
    let nu_cavity = c.powi(3)?.mul(q(inp.t_p, "s")?)?.div(vp.mul(d.powi(2)?)?)?;
    let energy = photon_energy(nu_cavity)?;
    let chi = q(inp.chi_squared, "m^2")?;
    let nu_obs = c.powi(3)?.mul(constants::unit_time())?.div(vp.mul(chi)?)?;
    let beta = biovi_quantity(nu_obs, pixel_speed()?, 1.0)?;
    let post = post_kinematic_frequency(chi, Some(nu_obs))?;
    Ok(vec![
        NamedValue::new("nu_cavity", nu_cavity, "Hz"),
        NamedValue::new("energy", energy, "J"),
        NamedValue::new("chi_squared", chi, "m^2"),
        NamedValue::new("nu_obs", nu_obs, "Hz"),
        NamedValue::new("beta", beta, "kg m^3 s^-3"),
        NamedValue::new("nu_post", post.nu_post, "Hz"),
        NamedValue::new("delta_k", post.delta_k.expect("nu_pre supplied"), "Hz"),
    ])
}

pub fn run_sample_problem(id: &str, mode: ProblemMode) -> Result<SampleProblemResult> {
    let inp = Inputs::for_mode(mode);
    let mut warnings = Vec::new();
    let values = match id {
        "2.1a" => problem_2_1a()?,
        "2.1b" => problem_2_1b()?,
        "2.2a" => problem_2_2a()?,
        "2.2b" => problem_2_2b(&inp, &mut warnings)?,
        "2.2c" => problem_2_2c(&inp)?,
        other => return Err(Error::UnknownProblem(other.to_string())),
    };
    debug_assert!(values
        .iter()
        .all(|v| v.value.value_in(&v.display_unit).is_ok()));
    Ok(SampleProblemResult {
        problem_id: id.to_string(),
        mode,
        values,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Divergence {
    pub problem_id: String,
    pub label: String,
    pub strict: Quantity,
    pub recomputed: Quantity,
    pub rel_diff: f64,
}

/// Values of problem `id` whose strict and recomputed results differ by
/// more than [`DIVERGENCE_TOLERANCE`].
pub fn divergences(id: &str) -> Result<Vec<Divergence>> {
    let strict = run_sample_problem(id, ProblemMode::StrictPaper)?;
    let recomputed = run_sample_problem(id, ProblemMode::Recomputed)?;
    let mut out = Vec::new();
    for (s, r) in strict.values.iter().zip(&recomputed.values) {
        debug_assert_eq!(s.label, r.label);
        let a = s.value.magnitude();
        let b = r.value.magnitude();
        let rel_diff = if a == b { 0.0 } else { ((a - b) / a).abs() };
        if rel_diff > DIVERGENCE_TOLERANCE || s.value.dim() != r.value.dim() {
            out.push(Divergence {
                problem_id: id.to_string(),
                label: s.label.clone(),
                strict: s.value,
                recomputed: r.value,
                rel_diff,
            });
        }
    }
    Ok(out)
}
