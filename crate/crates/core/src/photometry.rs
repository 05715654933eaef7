//! Photometric and biovielectroluminescence quantities, scene frame
//! accounting and the scene volume change.

use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::quantity::constants;
use crate::quantity::{reconcile, Dimension, EvalMode, Evaluated, Quantity};
use crate::relativity::energy_pixel_product;

/// `h nu`.
pub fn photon_energy(nu: Quantity) -> Result<Quantity> {
    if nu.require(Dimension::FREQUENCY, "frequency")? < 0.0 {
        return Err(Error::Negative("frequency"));
    }
    constants::constant("h")?.mul(nu)
}

/// `F / (A Omega cos(theta))`, in cd m^-2.
pub fn luminance(f: Quantity, area: Quantity, omega: Quantity, theta: Angle) -> Result<Quantity> {
    f.require(Dimension::LUMINOUS_FLUX, "luminous flux")?;
    let a = area.require(Dimension::AREA, "area")?;
    let o = omega.require(Dimension::SOLID_ANGLE, "solid angle")?;
    let cos = theta.cos();
    if cos <= 0.0 {
        return Err(Error::GrazingAngle(cos));
    }
    if a == 0.0 {
        return Err(Error::Zero("area"));
    }
    if o == 0.0 {
        return Err(Error::Zero("solid angle"));
    }
    f.div(area.mul(omega)?.scale(cos)?)
}

/// Luminance samples (cd m^-2), time samples (s) and the contrast `delta_l`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LuminanceSampleSet {
    pub l_samples: Vec<f64>,
    pub t_samples: Vec<f64>,
    pub delta_l: f64,
}

impl LuminanceSampleSet {
    /// Reads `L_cd_per_m2,t_s` rows. Without `delta_l` the contrast is the
    /// spread `max - min` of the luminance column.
    pub fn from_csv<R: Read>(reader: R, delta_l: Option<f64>) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(reader);
        let headers = rdr.headers().map_err(csv_error)?.clone();
        if headers.iter().collect::<Vec<_>>() != ["L_cd_per_m2", "t_s"] {
            return Err(Error::Format {
                line: 1,
                column: 1,
                message: "expected header `L_cd_per_m2,t_s`".into(),
            });
        }
        let mut l_samples = Vec::new();
        let mut t_samples = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(csv_error)?;
            let line = rec.position().map_or(0, |p| p.line());
            let l = parse_field(&rec, 0, line)?;
            let t = parse_field(&rec, 1, line)?;
            l_samples.push(l);
            t_samples.push(t);
        }
        let delta_l = match delta_l {
            Some(d) => d,
            None => {
                let max = l_samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let min = l_samples.iter().copied().fold(f64::INFINITY, f64::min);
                if l_samples.is_empty() {
                    0.0
                } else {
                    max - min
                }
            }
        };
        Ok(LuminanceSampleSet {
            l_samples,
            t_samples,
            delta_l,
        })
    }
}

fn parse_field(rec: &csv::StringRecord, idx: usize, line: u64) -> Result<f64> {
    let cell = rec.get(idx).ok_or(Error::Format {
        line,
        column: idx + 1,
        message: "missing field".into(),
    })?;
    let v: f64 = cell.trim().parse().map_err(|_| Error::Format {
        line,
        column: idx + 1,
        message: format!("`{cell}` is not a number"),
    })?;
    if !v.is_finite() {
        return Err(Error::Format {
            line,
            column: idx + 1,
            message: "non-finite value".into(),
        });
    }
    Ok(v)
}

pub(crate) fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    Error::Format {
        line,
        column: 0,
        message: e.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LuminanceFrequency {
    /// Contrast normalised by mean luminance, dimensionless.
    pub l_star: f64,
    pub mean_t: Quantity,
    pub nu_l: Quantity,
}

/// `delta_l / (mean(L) mean(t))`, equivalently `L* / <t>`.
pub fn luminance_frequency(set: &LuminanceSampleSet) -> Result<LuminanceFrequency> {
    if set.l_samples.is_empty() || set.t_samples.is_empty() {
        return Err(Error::InvalidInput(
            "empty luminance or time samples".into(),
        ));
    }
    let mean = |xs: &[f64]| xs.iter().sum::<f64>() / xs.len() as f64;
    let mean_l = mean(&set.l_samples);
    let mean_t = mean(&set.t_samples);
    if mean_l == 0.0 {
        return Err(Error::Zero("mean luminance"));
    }
    if mean_t == 0.0 {
        return Err(Error::Zero("mean time"));
    }
    let l_star = set.delta_l / mean_l;
    let mean_t = Quantity::new(mean_t, Dimension::TIME)?;
    let nu_l = Quantity::dimensionless(l_star)?.div(mean_t)?;
    Ok(LuminanceFrequency {
        l_star,
        mean_t,
        nu_l,
    })
}

/// Which equivalent form of the flux produced a number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FluxForm {
    LuminanceCharge,
    LuminanceCurrent,
    VoltageCurrent,
    PhotonEnergy,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum FluxInputs {
    /// `nu_L Q / A`
    LuminanceCharge {
        nu_l: Quantity,
        q: Quantity,
        a: Quantity,
    },
    /// `L* I / ((t + cons t) A)`, with `L*` dimensionless.
    LuminanceCurrent {
        l_star: f64,
        i: Quantity,
        t: Quantity,
        cons_t: Quantity,
        a: Quantity,
    },
    /// `V I / A`
    VoltageCurrent {
        v: Quantity,
        i: Quantity,
        a: Quantity,
    },
    /// `h nu / (tau A)`
    PhotonEnergy {
        e_photon: Quantity,
        tau: Quantity,
        a: Quantity,
    },
}

impl FluxInputs {
    pub fn form(&self) -> FluxForm {
        match self {
            FluxInputs::LuminanceCharge { .. } => FluxForm::LuminanceCharge,
            FluxInputs::LuminanceCurrent { .. } => FluxForm::LuminanceCurrent,
            FluxInputs::VoltageCurrent { .. } => FluxForm::VoltageCurrent,
            FluxInputs::PhotonEnergy { .. } => FluxForm::PhotonEnergy,
        }
    }

    fn area(&self) -> Quantity {
        match *self {
            FluxInputs::LuminanceCharge { a, .. }
            | FluxInputs::LuminanceCurrent { a, .. }
            | FluxInputs::VoltageCurrent { a, .. }
            | FluxInputs::PhotonEnergy { a, .. } => a,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FluxResult {
    pub form: FluxForm,
    pub value: Evaluated,
}

/// Evaluates one form of the flux in W m^-2 = kg s^-3.
///
/// The two luminance forms come out in A m^-2 and A m^-2 s^-1, so they only
/// evaluate in `PaperFaithful` mode, with a warning.
pub fn biovi_flux(inputs: FluxInputs, mode: EvalMode) -> Result<FluxResult> {
    let a = inputs.area();
    let am = a.require(Dimension::AREA, "area")?;
    if am == 0.0 {
        return Err(Error::Zero("area"));
    }
    let raw = match inputs {
        FluxInputs::LuminanceCharge { nu_l, q, .. } => {
            nu_l.require(Dimension::FREQUENCY, "luminance frequency")?;
            q.require(Dimension::CHARGE, "charge")?;
            nu_l.mul(q)?.div(a)?
        }
        FluxInputs::LuminanceCurrent {
            l_star,
            i,
            t,
            cons_t,
            ..
        } => {
            i.require(Dimension::CURRENT, "current")?;
            t.require(Dimension::TIME, "time")?;
            cons_t.require(Dimension::TIME, "consumed time")?;
            let span = t.add(cons_t)?;
            if span.magnitude() == 0.0 {
                return Err(Error::Zero("time span"));
            }
            i.scale(l_star)?.div(span.mul(a)?)?
        }
        FluxInputs::VoltageCurrent { v, i, .. } => {
            v.require(Dimension::VOLTAGE, "voltage")?;
            i.require(Dimension::CURRENT, "current")?;
            v.mul(i)?.div(a)?
        }
        FluxInputs::PhotonEnergy { e_photon, tau, .. } => {
            e_photon.require(Dimension::ENERGY, "photon energy")?;
            if tau.require(Dimension::TIME, "emission time")? == 0.0 {
                return Err(Error::Zero("time"));
            }
            e_photon.div(tau.mul(a)?)?
        }
    };
    let value = reconcile(mode, raw.erase_steradian(), Dimension::IRRADIANCE, "flux")?;
    Ok(FluxResult {
        form: inputs.form(),
        value,
    })
}

/// `h nu v_rgb` times the caller's `gamma_integral` multiplier (1 when the
/// integral is not evaluated).
pub fn biovi_quantity(nu: Quantity, v_rgb: Quantity, gamma_integral: f64) -> Result<Quantity> {
    let e = photon_energy(nu)?;
    energy_pixel_product(e, v_rgb)?.scale(gamma_integral)
}

/// Centre, left and right frame counts over a Newtonian and a consumed span.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SceneLedger {
    pub n_c: u64,
    pub n_l: u64,
    pub n_r: u64,
    pub t: Quantity,
    pub cons_t: Quantity,
}

impl SceneLedger {
    /// A ledger holding only centre frames; the side counts come from the
    /// expansion rule in [`scene_accounting`].
    pub fn centre(n_c: u64, t: Quantity, cons_t: Quantity) -> Result<Self> {
        t.require(Dimension::TIME, "time")?;
        if cons_t.require(Dimension::TIME, "consumed time")? < 0.0 {
            return Err(Error::Negative("consumed time"));
        }
        Ok(SceneLedger {
            n_c,
            n_l: 0,
            n_r: 0,
            t,
            cons_t,
        })
    }
}

/// Images per `(t + cons t)`, kept as the exact pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImageRate {
    pub images: u64,
    pub span: Quantity,
}

impl ImageRate {
    pub fn per_second(&self) -> f64 {
        self.images as f64 / self.span.magnitude()
    }

    /// Images accumulated over `span` at this rate. Exact when `span`
    /// equals the rate's own span.
    pub fn images_over(&self, span: Quantity) -> f64 {
        if span == self.span {
            self.images as f64
        } else {
            self.per_second() * span.magnitude()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SceneAccounting {
    pub n_c: u64,
    pub n_l: u64,
    pub n_r: u64,
    pub total_images: u64,
    pub rate: ImageRate,
}

pub fn scene_accounting(ledger: &SceneLedger) -> Result<SceneAccounting> {
    if !ledger.n_c.is_multiple_of(2) {
        return Err(Error::OddCenterCount(ledger.n_c));
    }
    let span = ledger.t.add(ledger.cons_t)?;
    if span.magnitude() <= 0.0 {
        return Err(Error::Zero("time span"));
    }
    let side = ledger.n_c / 2;
    let total = ledger
        .n_c
        .checked_mul(2)
        .ok_or_else(|| Error::InvalidInput("frame count overflow".into()))?;
    Ok(SceneAccounting {
        n_c: ledger.n_c,
        n_l: side,
        n_r: side,
        total_images: total,
        rate: ImageRate {
            images: total,
            span,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SceneVolumeChange {
    pub delta_v: Quantity,
    /// `(A_fly dlam_fly) / (A_man dlam_man)`.
    pub area_ratio: f64,
    /// Minimum-vision ratio `delta_v / V_man`.
    pub vision_ratio: f64,
}

#[allow(clippy::too_many_arguments)]
pub fn scene_volume_change(
    v_s: Quantity,
    v_fly: Quantity,
    v_man: Quantity,
    a_fly: Quantity,
    a_man: Quantity,
    dlam_fly: Quantity,
    dlam_man: Quantity,
) -> Result<SceneVolumeChange> {
    for (q, name) in [
        (v_s, "scene volume"),
        (v_fly, "fly volume"),
        (v_man, "man volume"),
    ] {
        q.require(Dimension::VOLUME, name)?;
    }
    a_fly.require(Dimension::AREA, "fly area")?;
    a_man.require(Dimension::AREA, "man area")?;
    dlam_fly.require(Dimension::LENGTH, "fly wavelength change")?;
    dlam_man.require(Dimension::LENGTH, "man wavelength change")?;
    let denom = a_man.mul(dlam_man)?;
    if denom.magnitude() == 0.0 {
        return Err(Error::Zero("denominator"));
    }
    let bodies = v_fly.add(v_man)?;
    if v_s.magnitude() <= bodies.magnitude() {
        return Err(Error::SceneTooSmall {
            scene: v_s.magnitude(),
            bodies: bodies.magnitude(),
        });
    }
    let ratio = a_fly.mul(dlam_fly)?.div(denom)?;
    let delta_v = v_s.sub(bodies)?.mul(ratio)?;
    let vision_ratio = delta_v.div(v_man)?.magnitude();
    Ok(SceneVolumeChange {
        delta_v,
        area_ratio: ratio.magnitude(),
        vision_ratio,
    })
}
