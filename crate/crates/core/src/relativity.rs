//! Lorentz factor, force and power, consumed proper time, intervals,
//! observation-scope products and body comparisons.

use std::f64::consts::PI;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::photometry::csv_error;
use crate::quantity::constants::{self, SPEED_OF_LIGHT};
use crate::quantity::{reconcile, Dimension, DimensionWarning, EvalMode, Evaluated, Quantity};

pub type Vec3 = [f64; 3];

/// `1 / sqrt(1 - v^2/c^2)` for `0 <= v < c`.
pub fn lorentz_factor(v: Quantity) -> Result<f64> {
    let speed = v.require(Dimension::VELOCITY, "speed")?;
    if speed < 0.0 {
        return Err(Error::Negative("speed"));
    }
    if speed >= SPEED_OF_LIGHT {
        return Err(Error::SuperluminalInput(speed));
    }
    let beta = speed / SPEED_OF_LIGHT;
    Ok(1.0 / ((1.0 - beta) * (1.0 + beta)).sqrt())
}

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ForcePower {
    /// Newtons.
    pub force: Vec3,
    pub power: Quantity,
}

/// `F = q (E + v x B)` and `P = q E . v`.
///
/// `e` in V m^-1, `b` in T, `v` in m s^-1.
pub fn lorentz_force_power(q: Quantity, e: Vec3, b: Vec3, v: Vec3) -> Result<ForcePower> {
    let charge = q.require(Dimension::CHARGE, "charge")?;
    let vxb = cross(v, b);
    let force = [
        charge * (e[0] + vxb[0]),
        charge * (e[1] + vxb[1]),
        charge * (e[2] + vxb[2]),
    ];
    if force.iter().any(|f| !f.is_finite()) {
        return Err(Error::NonFinite("Lorentz force"));
    }
    let e_dot_v = Quantity::new(
        dot(e, v),
        Dimension::ELECTRIC_FIELD.mul(Dimension::VELOCITY)?,
    )?;
    Ok(ForcePower {
        force,
        power: q.mul(e_dot_v)?,
    })
}

/// One sample along a consumption path, in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathSample {
    pub t_q: f64,
    pub x_q: f64,
    pub lambda: f64,
    pub t_hnu: f64,
    pub t_cons: f64,
    pub v_rgb: f64,
    pub weight: f64,
}

impl PathSample {
    /// A sample with only `t_q` set and weight 1.
    pub fn at_rest(t_q: f64) -> Self {
        PathSample {
            t_q,
            x_q: 0.0,
            lambda: 0.0,
            t_hnu: 0.0,
            t_cons: 1.0,
            v_rgb: 0.0,
            weight: 1.0,
        }
    }
}

const WEIGHT_TOLERANCE: f64 = 1e-12;

/// Weighted sum of `sqrt(t_q^2 - x_q^2/c^2 - lambda^2 t_hnu^2/(c^2 t_cons^2)
/// - t_q v_rgb^2/c^2)` over the path.
///
/// The last radicand term is in s, not s^2, so `Checked` mode refuses every
/// path; `PaperFaithful` adds it as if it were s^2 and warns once.
pub fn consumed_proper_time(path: &[PathSample], mode: EvalMode) -> Result<Evaluated> {
    if path.is_empty() {
        return Err(Error::InvalidInput("empty path".into()));
    }
    if path.iter().any(|p| p.weight < 0.0) {
        return Err(Error::Negative("weight"));
    }
    let total: f64 = path.iter().map(|p| p.weight).sum();
    if (total - 1.0).abs() > WEIGHT_TOLERANCE {
        return Err(Error::WeightSum(total));
    }
    let c2 = SPEED_OF_LIGHT * SPEED_OF_LIGHT;
    let drift = Quantity::new(1.0, Dimension::TIME)?;
    let mut warnings: Vec<DimensionWarning> =
        reconcile(mode, drift, Dimension::TIME_SQUARED, "proper-time radicand")?.warnings;
    let mut tau = 0.0;
    for (index, p) in path.iter().enumerate() {
        if p.t_cons == 0.0 {
            return Err(Error::Zero("consumed time"));
        }
        let radicand = p.t_q * p.t_q
            - p.x_q * p.x_q / c2
            - (p.lambda * p.t_hnu).powi(2) / (c2 * p.t_cons * p.t_cons)
            - p.t_q * p.v_rgb * p.v_rgb / c2;
        if !radicand.is_finite() {
            return Err(Error::NonFinite("proper-time radicand"));
        }
        if radicand < 0.0 {
            return Err(Error::NegativeRadicand {
                index,
                value: radicand,
            });
        }
        tau += p.weight * radicand.sqrt();
    }
    warnings.dedup();
    Ok(Evaluated {
        value: Quantity::new(tau, Dimension::TIME)?,
        warnings,
    })
}

/// `E v_rgb`, in J m s^-1 = kg m^3 s^-3.
pub fn energy_pixel_product(e: Quantity, v_rgb: Quantity) -> Result<Quantity> {
    e.require(Dimension::ENERGY, "energy")?;
    v_rgb.require(Dimension::VELOCITY, "pixel velocity")?;
    e.mul(v_rgb)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Signature {
    /// (+,-,-,-): `c^2 t^2 - r^2`.
    Paper,
    /// (-,+,+,+): `r^2 - c^2 t^2`.
    Eta,
}

/// Signed interval `s^2`. `offset` is an optional additive constant on `r^2`.
pub fn spacetime_interval(
    t: Quantity,
    r: Quantity,
    convention: Signature,
    offset: Option<Quantity>,
) -> Result<Quantity> {
    t.require(Dimension::TIME, "time")?;
    r.require(Dimension::LENGTH, "distance")?;
    let mut r2 = r.powi(2)?;
    if let Some(o) = offset {
        o.require(Dimension::AREA, "interval offset")?;
        r2 = r2.add(o)?;
    }
    let s2 = constants::c().mul(t)?.powi(2)?.sub(r2)?;
    Ok(match convention {
        Signature::Paper => s2,
        Signature::Eta => s2.neg(),
    })
}

/// `(4 pi r^2 / 2) * sum(s_i^2 dx_i)` over `(s_i, dx_i)` samples in metres.
pub fn scope_area(r: Quantity, samples: &[(f64, f64)]) -> Result<Quantity> {
    let radius = r.require(Dimension::LENGTH, "radius")?;
    if radius <= 0.0 {
        return Err(Error::Zero("radius"));
    }
    if samples.is_empty() {
        return Err(Error::InvalidInput("empty samples".into()));
    }
    let sum: f64 = samples.iter().map(|(s, dx)| s * s * dx).sum();
    let riemann = Quantity::new(sum, Dimension::VOLUME)?;
    r.powi(2)?.scale(2.0 * PI)?.mul(riemann)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScopeProduct {
    /// `V / s^2`
    pub left: Quantity,
    /// `V s^2`
    pub right: Quantity,
}

pub fn scope_product(v: Quantity, s: Quantity) -> Result<ScopeProduct> {
    v.require(Dimension::VOLUME, "volume")?;
    if s.require(Dimension::LENGTH, "interval")? == 0.0 {
        return Err(Error::Zero("interval"));
    }
    let s2 = s.powi(2)?;
    Ok(ScopeProduct {
        left: v.div(s2)?,
        right: v.mul(s2)?,
    })
}

/// The pair `(2 pi r, 2 n pi s^(2n-1))`.
pub fn scope_differential(r: Quantity, s: Quantity, n: u32) -> Result<(Quantity, Quantity)> {
    r.require(Dimension::LENGTH, "radius")?;
    if s.require(Dimension::LENGTH, "interval")? == 0.0 {
        return Err(Error::Zero("interval"));
    }
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let k = i32::try_from(2 * u64::from(n) - 1).map_err(|_| Error::ExponentOverflow(i32::MAX))?;
    Ok((
        r.scale(2.0 * PI)?,
        s.powi(k)?.scale(2.0 * f64::from(n) * PI)?,
    ))
}

/// `mass / volume`.
pub fn observation_density(mass: Quantity, volume: Quantity) -> Result<Quantity> {
    mass.require(Dimension::MASS, "mass")?;
    let v = volume.require(Dimension::VOLUME, "volume")?;
    if v == 0.0 {
        return Err(Error::Zero("volume"));
    }
    if v < 0.0 {
        return Err(Error::Negative("volume"));
    }
    mass.div(volume)
}

/// A single value or a closed range, compared through its midpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Measure {
    Value(Quantity),
    Range(Quantity, Quantity),
}

impl Measure {
    pub fn midpoint(&self) -> Result<Quantity> {
        match *self {
            Measure::Value(q) => Ok(q),
            Measure::Range(lo, hi) => lo.add(hi)?.scale(0.5),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioPercent {
    pub ratio_percent: f64,
    pub complement_percent: f64,
}

/// `small / mean(big) * 100` and its complement `100 - ratio`.
pub fn body_ratio_percent(small: Measure, big: Measure) -> Result<RatioPercent> {
    let s = small.midpoint()?;
    let b = big.midpoint()?;
    if s.dim() != b.dim() {
        return Err(Error::mismatch("body comparison", s.dim(), b.dim()));
    }
    if b.magnitude() <= 0.0 {
        return Err(Error::Zero("baseline"));
    }
    let ratio_percent = s.magnitude() / b.magnitude() * 100.0;
    Ok(RatioPercent {
        ratio_percent,
        complement_percent: 100.0 - ratio_percent,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BodyKind {
    Small,
    Giant,
}

/// A compared body, all physical fields in SI units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Body {
    pub label: String,
    pub kind: BodyKind,
    pub mass_kg: f64,
    pub size_m: f64,
    pub lifespan_s: f64,
    pub volume_m3: f64,
    pub visual: bool,
}

impl Body {
    pub fn validate(&self) -> Result<()> {
        for (v, name) in [
            (self.mass_kg, "mass"),
            (self.size_m, "size"),
            (self.lifespan_s, "lifespan"),
            (self.volume_m3, "volume"),
        ] {
            if !v.is_finite() {
                return Err(Error::NonFinite("body field"));
            }
            if v <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "body `{}`: {name} must be positive",
                    self.label
                )));
            }
        }
        Ok(())
    }
}

pub const BODY_HEADER: [&str; 7] = [
    "label",
    "kind",
    "mass_kg",
    "size_m",
    "lifespan_s",
    "volume_m3",
    "visual",
];

/// Reads bodies from `label,kind,mass_kg,size_m,lifespan_s,volume_m3,visual`.
pub fn load_bodies<R: Read>(reader: R) -> Result<Vec<Body>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let headers = rdr.headers().map_err(csv_error)?.clone();
    if headers.iter().collect::<Vec<_>>() != BODY_HEADER {
        return Err(Error::Format {
            line: 1,
            column: 1,
            message: format!("expected header `{}`", BODY_HEADER.join(",")),
        });
    }
    let mut bodies = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_error)?;
        let line = rec.position().map_or(0, |p| p.line());
        let bad = |column: usize, message: String| Error::Format {
            line,
            column,
            message,
        };
        let kind = match &rec[1] {
            "small" => BodyKind::Small,
            "giant" => BodyKind::Giant,
            other => return Err(bad(2, format!("unknown kind `{other}`"))),
        };
        let num = |i: usize| -> Result<f64> {
            rec[i]
                .trim()
                .parse::<f64>()
                .map_err(|_| bad(i + 1, format!("`{}` is not a number", &rec[i])))
        };
        let visual = match &rec[6] {
            "1" | "true" => true,
            "0" | "false" => false,
            other => return Err(bad(7, format!("`{other}` is not a boolean"))),
        };
        let body = Body {
            label: rec[0].to_string(),
            kind,
            mass_kg: num(2)?,
            size_m: num(3)?,
            lifespan_s: num(4)?,
            volume_m3: num(5)?,
            visual,
        };
        body.validate().map_err(|e| bad(0, e.to_string()))?;
        bodies.push(body);
    }
    Ok(bodies)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BodyComparison {
    pub small: String,
    pub giant: String,
    pub mass: RatioPercent,
    pub size: RatioPercent,
    pub lifespan: RatioPercent,
    pub volume: RatioPercent,
}

/// Size must differ by at least this factor between a small and a giant body.
pub const SCALE_SEPARATION: f64 = 100.0;

pub fn compare_bodies(small: &Body, giant: &Body) -> Result<BodyComparison> {
    small.validate()?;
    giant.validate()?;
    if small.kind != BodyKind::Small || giant.kind != BodyKind::Giant {
        return Err(Error::KindMismatch(format!(
            "expected a small and a giant body, got {:?} and {:?}",
            small.kind, giant.kind
        )));
    }
    if small.size_m * SCALE_SEPARATION > giant.size_m {
        return Err(Error::KindMismatch(format!(
            "`{}` ({} m) is not two orders of magnitude below `{}` ({} m)",
            small.label, small.size_m, giant.label, giant.size_m
        )));
    }
    let pct = |a: f64, b: f64, d: Dimension| -> Result<RatioPercent> {
        body_ratio_percent(
            Measure::Value(Quantity::new(a, d)?),
            Measure::Value(Quantity::new(b, d)?),
        )
    };
    Ok(BodyComparison {
        small: small.label.clone(),
        giant: giant.label.clone(),
        mass: pct(small.mass_kg, giant.mass_kg, Dimension::MASS)?,
        size: pct(small.size_m, giant.size_m, Dimension::LENGTH)?,
        lifespan: pct(small.lifespan_s, giant.lifespan_s, Dimension::TIME)?,
        volume: pct(small.volume_m3, giant.volume_m3, Dimension::VOLUME)?,
    })
}

/// One row of the housefly/human comparison table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub parameter: &'static str,
    pub computed: RatioPercent,
    pub printed_ratio: f64,
    pub printed_complement: f64,
    /// Whether the printed ratio and complement add up to 100 %.
    pub printed_consistent: bool,
}

const PRINTED_SUM_TOLERANCE: f64 = 1e-4;

fn row(
    parameter: &'static str,
    small: Measure,
    big: Measure,
    printed_ratio: f64,
    printed_complement: f64,
) -> Result<ComparisonRow> {
    Ok(ComparisonRow {
        parameter,
        computed: body_ratio_percent(small, big)?,
        printed_ratio,
        printed_complement,
        printed_consistent: (printed_ratio + printed_complement - 100.0).abs()
            <= PRINTED_SUM_TOLERANCE,
    })
}

/// Housefly against human: size, mass and lifespan.
pub fn fly_human_table() -> Result<Vec<ComparisonRow>> {
    let q = Quantity::with_unit;
    Ok(vec![
        row(
            "size",
            Measure::Range(q(5.0, "mm")?, q(7.0, "mm")?),
            Measure::Range(q(1.5, "m")?, q(1.8, "m")?),
            0.003636,
            99.636,
        )?,
        row(
            "mass",
            Measure::Value(q(12.0, "mg")?),
            Measure::Range(q(61.0, "kg")?, q(70.0, "kg")?),
            1.832061e-5,
            99.9999817,
        )?,
        row(
            "lifespan",
            Measure::Value(q(604_800.0, "s")?),
            Measure::Range(q(1.262277e9, "s")?, q(2.366769e9, "s")?),
            0.03333107,
            99.9666689,
        )?,
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProperTimeSplit {
    /// `t_giant - sum(increments)`, seconds.
    pub tau: f64,
    pub increments_sum: f64,
    /// Whole seconds of `tau`.
    pub n: f64,
    /// Remainder `tau - n`, the consumed part.
    pub cons: f64,
}

pub fn proper_time_split(t_giant: f64, increments: &[f64]) -> Result<ProperTimeSplit> {
    if !t_giant.is_finite() || increments.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("proper-time split"));
    }
    let increments_sum: f64 = increments.iter().sum();
    let tau = t_giant - increments_sum;
    let n = tau.trunc();
    Ok(ProperTimeSplit {
        tau,
        increments_sum,
        n,
        cons: tau - n,
    })
}

/// Congruent bodies leave no proper time: `|tau| <= 1e-9 t_giant`.
pub fn congruent(t_giant: f64, tau: f64) -> bool {
    tau.abs() <= 1e-9 * t_giant.abs()
}
