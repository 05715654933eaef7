use std::collections::BTreeMap;
use std::fs::File;

use biovi_core::neuromatrix::{
    activation, delta_update_with_rate, fire_check, kappa, load_truth_table, product_ratio_matrix,
    yield_efficiency, Activation, ClassSums, GaussianParams, Perceptron,
};
use biovi_core::photometry::{
    biovi_flux, biovi_quantity, luminance, luminance_frequency, photon_energy, scene_accounting,
    scene_volume_change, FluxInputs, LuminanceSampleSet, SceneLedger,
};
use biovi_core::prekinematics::{
    anticipated_phase_velocity, bendable_wavelength, consumed_distance, default_basis,
    generalized_cross_matrix, geodesic_triangle_sum, motion_stretch, post_kinematic_frequency,
    wavenumber_modulus, worldline_classify, ConsumptionState,
};
use biovi_core::quantity::constants;
use biovi_core::quantity::units::parse_unit;
use biovi_core::relativity::{
    body_ratio_percent, compare_bodies, consumed_proper_time, load_bodies, lorentz_factor,
    lorentz_force_power, observation_density, scope_area, scope_product, spacetime_interval,
    BodyKind, Measure, PathSample, Signature,
};
use biovi_core::{Angle, EvalMode, Quantity};
use serde_json::{json, Value};

use crate::CliError;

/// Name, flags, summary.
pub const OPS: &[(&str, &str, &str)] = &[
    ("unit", "--expr", "parse a unit expression"),
    ("constant", "--name", "look up a physical constant"),
    ("lorentz-factor", "--v", "gamma for a speed below c"),
    (
        "lorentz-force",
        "--q --e x,y,z --b x,y,z --v x,y,z",
        "force and power on a charge",
    ),
    (
        "proper-time",
        "--t-q [--x-q --lambda --t-hnu --t-cons --v]",
        "consumed proper time of one sample",
    ),
    (
        "interval",
        "--t --r [--signature paper|eta] [--offset]",
        "spacetime interval",
    ),
    (
        "scope-area",
        "--r --s-max --n",
        "midpoint Riemann observation-scope area",
    ),
    (
        "scope-product",
        "--volume --s",
        "observation-scope pair V/s^2, V s^2",
    ),
    ("density", "--mass --volume", "observation density"),
    (
        "body-ratio",
        "--small --big",
        "ratio and complement in percent",
    ),
    (
        "compare-bodies",
        "--file",
        "compare the first small and first giant body of a CSV",
    ),
    (
        "consumed-distance",
        "--v --t --t-cons [--epsilon]",
        "consumed distance",
    ),
    (
        "bendable-wavelength",
        "--v --t --nu --t-cons",
        "bendable wavelength",
    ),
    ("phase-velocity", "--v", "anticipated phase velocity"),
    ("wavenumber", "--lambda", "contour wavenumber modulus"),
    (
        "motion-stretch",
        "--v --x --y --theta --dt",
        "motion-stretch length",
    ),
    ("geodesic-sum", "--k --area", "geodesic triangle angle sum"),
    ("worldline", "--v [--ds2]", "worldline classification"),
    (
        "post-kinematic",
        "--chi2 [--nu-pre]",
        "post-kinematic frequency",
    ),
    (
        "cross",
        "--vectors a,b,c;d,e,f [--basis]",
        "generalized cross product",
    ),
    ("photon-energy", "--nu", "E = h nu"),
    ("luminance", "--flux --area --omega --theta", "luminance"),
    (
        "luminance-frequency",
        "--file [--delta-l]",
        "luminance frequency from samples",
    ),
    ("flux", "--form <form> ...", "flux in one of four forms"),
    (
        "biovi-quantity",
        "--nu --v [--gamma]",
        "energy-pixel-velocity product",
    ),
    ("scene", "--n-c --t --cons-t", "scene frame accounting"),
    (
        "scene-volume",
        "--v-s --v-fly --v-man --a-fly --a-man --dlam-fly --dlam-man",
        "scene volume change",
    ),
    (
        "activation",
        "--x [--kind sigmoid|step]",
        "activation function",
    ),
    ("fire", "--s1 --s2 --s3 --theta a,b,c", "per-grade firing"),
    (
        "delta",
        "--w --x --desired --actual [--rate]",
        "delta-rule update",
    ),
    (
        "train",
        "--file [--rate] [--epochs]",
        "train a threshold unit on a truth table",
    ),
    ("yield", "--s1 --s2 --s3", "yield efficiency"),
    (
        "product-ratio",
        "--s1 --s2 --s3",
        "product-ratio matrix and kappa",
    ),
    (
        "gaussian",
        "--mu --sigma [--x] [--mu2 --sigma2]",
        "density and convolution",
    ),
];

pub struct Params {
    values: BTreeMap<String, String>,
    used: std::cell::RefCell<Vec<String>>,
    radians: bool,
    pub json: bool,
}

impl Params {
    pub fn parse(raw: &[String]) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        let mut radians = false;
        let mut deg = false;
        let mut json = false;
        let mut it = raw.iter();
        while let Some(a) = it.next() {
            let name = a
                .strip_prefix("--")
                .ok_or_else(|| CliError::Usage(format!("unexpected argument `{a}`")))?;
            match name {
                "rad" => radians = true,
                "deg" => deg = true,
                "json" => json = true,
                _ => {
                    let (k, v) = match name.split_once('=') {
                        Some((k, v)) => (k.to_string(), v.to_string()),
                        None => {
                            let v = it.next().ok_or_else(|| {
                                CliError::Usage(format!("--{name} needs a value"))
                            })?;
                            (name.to_string(), v.clone())
                        }
                    };
                    if values.insert(k.clone(), v).is_some() {
                        return Err(CliError::Usage(format!("--{k} given twice")));
                    }
                }
            }
        }
        if radians && deg {
            return Err(CliError::Usage("--deg and --rad are exclusive".into()));
        }
        Ok(Params {
            values,
            used: Default::default(),
            radians,
            json,
        })
    }

    fn raw(&self, name: &str) -> Option<&str> {
        self.used.borrow_mut().push(name.to_string());
        self.values.get(name).map(String::as_str)
    }

    fn req(&self, name: &str) -> Result<&str, CliError> {
        self.raw(name)
            .ok_or_else(|| CliError::Usage(format!("missing --{name}")))
    }

    /// A bare number takes `unit`; otherwise the text is a full quantity.
    fn q(&self, name: &str, unit: &str) -> Result<Quantity, CliError> {
        parse_quantity(self.req(name)?, unit, name)
    }

    fn q_opt(&self, name: &str, unit: &str) -> Result<Option<Quantity>, CliError> {
        self.raw(name)
            .map(|s| parse_quantity(s, unit, name))
            .transpose()
    }

    fn f(&self, name: &str) -> Result<f64, CliError> {
        parse_f64(self.req(name)?, name)
    }

    fn f_or(&self, name: &str, default: f64) -> Result<f64, CliError> {
        self.raw(name).map_or(Ok(default), |s| parse_f64(s, name))
    }

    fn list(&self, name: &str) -> Result<Vec<f64>, CliError> {
        self.req(name)?
            .split(',')
            .map(|s| parse_f64(s.trim(), name))
            .collect()
    }

    fn vec3(&self, name: &str) -> Result<[f64; 3], CliError> {
        let v = self.list(name)?;
        v.try_into()
            .map_err(|_| CliError::Usage(format!("--{name} needs three comma-separated numbers")))
    }

    fn angle(&self, name: &str) -> Result<Angle, CliError> {
        let x = self.f(name)?;
        Ok(if self.radians {
            Angle::from_radians(x)
        } else {
            Angle::from_degrees(x)
        })
    }

    fn bool01(&self, name: &str) -> Result<bool, CliError> {
        match self.req(name)? {
            "1" | "true" => Ok(true),
            "0" | "false" => Ok(false),
            other => Err(CliError::Usage(format!(
                "--{name}: `{other}` is not 0 or 1"
            ))),
        }
    }

    fn file(&self, name: &str) -> Result<File, CliError> {
        let path = self.req(name)?;
        File::open(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
    }

    pub fn check_unused(&self) -> Result<(), CliError> {
        let used = self.used.borrow();
        match self.values.keys().find(|k| !used.contains(k)) {
            Some(k) => Err(CliError::Usage(format!("unknown flag --{k}"))),
            None => Ok(()),
        }
    }
}

fn parse_f64(s: &str, name: &str) -> Result<f64, CliError> {
    s.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::Usage(format!("--{name}: `{s}` is not a finite number")))
}

fn parse_quantity(s: &str, unit: &str, name: &str) -> Result<Quantity, CliError> {
    let r = match s.trim().parse::<f64>() {
        Ok(x) => Quantity::with_unit(x, unit),
        Err(_) => s.parse::<Quantity>(),
    };
    r.map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

/// An evaluated operation: named outputs plus dimension warnings.
#[derive(Default)]
pub struct Output {
    pub values: Vec<(String, Value)>,
    pub warnings: Vec<String>,
}

impl Output {
    fn q(&mut self, name: &str, q: Quantity) {
        self.values.push((name.into(), json!(q)));
    }

    fn v(&mut self, name: &str, v: impl serde::Serialize) {
        self.values.push((name.into(), json!(v)));
    }

    pub fn to_json(&self, op: &str) -> Value {
        let values: serde_json::Map<String, Value> = self.values.iter().cloned().collect();
        json!({ "op": op, "values": values, "warnings": self.warnings })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.values {
            out.push_str(&format!("{k} = {}\n", render(v)));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

/// Plain decimal in [1e-4, 1e6), scientific otherwise.
pub fn number(x: f64) -> String {
    if x == 0.0 || (1e-4..1e6).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::Object(m) if m.contains_key("magnitude") && m.contains_key("unit") => {
            let mag = m["magnitude"]
                .as_f64()
                .map_or_else(|| m["magnitude"].to_string(), number);
            let unit = m["unit"].as_str().unwrap_or("");
            if unit.is_empty() || unit == "1" {
                mag
            } else {
                format!("{mag} {unit}")
            }
        }
        Value::Number(n) if n.is_f64() => number(n.as_f64().unwrap_or(f64::NAN)),
        Value::Array(items) => format!(
            "[{}]",
            items.iter().map(render).collect::<Vec<_>>().join(", ")
        ),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn sums(p: &Params, thresholds: [f64; 3]) -> Result<ClassSums, CliError> {
    Ok(ClassSums::new(
        p.f("s1")?,
        p.f("s2")?,
        p.f("s3")?,
        thresholds,
    )?)
}

pub fn run(op: &str, p: &Params, mode: EvalMode) -> Result<Output, CliError> {
    let mut o = Output::default();
    match op {
        "unit" => {
            let u = parse_unit(p.req("expr")?)?;
            o.v("scale", u.scale);
            o.v("dimension", u.dim.to_string());
        }
        "constant" => o.q("value", constants::constant(p.req("name")?)?),
        "lorentz-factor" => o.v("gamma", lorentz_factor(p.q("v", "m s^-1")?)?),
        "lorentz-force" => {
            let r = lorentz_force_power(p.q("q", "C")?, p.vec3("e")?, p.vec3("b")?, p.vec3("v")?)?;
            o.v("force_N", r.force);
            o.q("power", r.power);
        }
        "proper-time" => {
            let sample = PathSample {
                t_q: p.f("t-q")?,
                x_q: p.f_or("x-q", 0.0)?,
                lambda: p.f_or("lambda", 0.0)?,
                t_hnu: p.f_or("t-hnu", 0.0)?,
                t_cons: p.f_or("t-cons", 1.0)?,
                v_rgb: p.f_or("v", 0.0)?,
                weight: 1.0,
            };
            let e = consumed_proper_time(&[sample], mode)?;
            o.q("tau", e.value);
            o.warnings = e.warnings.iter().map(ToString::to_string).collect();
        }
        "interval" => {
            let sig = match p.raw("signature").unwrap_or("paper") {
                "paper" => Signature::Paper,
                "eta" => Signature::Eta,
                other => return Err(CliError::Usage(format!("unknown signature `{other}`"))),
            };
            let s2 = spacetime_interval(
                p.q("t", "s")?,
                p.q("r", "m")?,
                sig,
                p.q_opt("offset", "m^2")?,
            )?;
            o.q("s_squared", s2);
        }
        "scope-area" => {
            let s_max = p.f("s-max")?;
            let n = p.f("n")?;
            if !(n >= 1.0 && n.fract() == 0.0) {
                return Err(CliError::Usage("--n must be a positive integer".into()));
            }
            let n = n as usize;
            let dx = s_max / n as f64;
            let samples: Vec<(f64, f64)> = (0..n).map(|i| ((i as f64 + 0.5) * dx, dx)).collect();
            o.q("area", scope_area(p.q("r", "m")?, &samples)?);
        }
        "scope-product" => {
            let s = scope_product(p.q("volume", "m^3")?, p.q("s", "m")?)?;
            o.q("left", s.left);
            o.q("right", s.right);
        }
        "density" => o.q(
            "density",
            observation_density(p.q("mass", "kg")?, p.q("volume", "m^3")?)?,
        ),
        "body-ratio" => {
            let parse = |s: &str| -> Result<Quantity, CliError> {
                s.parse::<Quantity>()
                    .map_err(|e| CliError::Usage(e.to_string()))
            };
            let r = body_ratio_percent(
                Measure::Value(parse(p.req("small")?)?),
                Measure::Value(parse(p.req("big")?)?),
            )?;
            o.v("ratio_percent", r.ratio_percent);
            o.v("complement_percent", r.complement_percent);
        }
        "compare-bodies" => {
            let bodies = load_bodies(p.file("file")?)?;
            let small = bodies.iter().find(|b| b.kind == BodyKind::Small);
            let giant = bodies.iter().find(|b| b.kind == BodyKind::Giant);
            let (Some(s), Some(g)) = (small, giant) else {
                return Err(CliError::Usage(
                    "file needs a small and a giant body".into(),
                ));
            };
            let c = compare_bodies(s, g)?;
            o.v("mass", c.mass);
            o.v("size", c.size);
            o.v("lifespan", c.lifespan);
            o.v("volume", c.volume);
        }
        "consumed-distance" => {
            let state = ConsumptionState::new(
                p.q("t", "s")?,
                p.q("t-cons", "s")?,
                p.f_or("epsilon", 1e-9)?,
            )?;
            o.q("x_cons", consumed_distance(p.q("v", "m s^-1")?, &state)?);
            o.v("regime", format!("{:?}", state.regime()));
        }
        "bendable-wavelength" => o.q(
            "lambda",
            bendable_wavelength(
                p.q("v", "m s^-1")?,
                p.q("t", "s")?,
                p.q("nu", "Hz")?,
                p.q("t-cons", "s")?,
            )?,
        ),
        "phase-velocity" => {
            let v = anticipated_phase_velocity(p.q("v", "m s^-1")?)?;
            o.q("abs_vp", v.abs_vp);
            o.q("full_vp", v.full_vp);
            o.q("c_cons", v.c_cons);
        }
        "wavenumber" => o.q("k", wavenumber_modulus(p.q("lambda", "m")?)?),
        "motion-stretch" => o.q(
            "x_k",
            motion_stretch(
                p.q("v", "m s^-1")?,
                p.q("x", "m")?,
                p.q("y", "m")?,
                p.angle("theta")?,
                p.q("dt", "s")?,
            )?,
        ),
        "geodesic-sum" => {
            let a = geodesic_triangle_sum(p.q("k", "m^-2")?, p.q("area", "m^2")?)?;
            o.v("radians", a.radians());
            o.v("degrees", a.degrees());
        }
        "worldline" => {
            let w = worldline_classify(p.q("v", "m s^-1")?, p.q_opt("ds2", "m^2")?)?;
            o.v("kind", format!("{:?}", w.kind).to_lowercase());
            if let Some(l) = w.consumed_length {
                o.q("consumed_length", l);
            }
        }
        "post-kinematic" => {
            let r = post_kinematic_frequency(p.q("chi2", "m^2")?, p.q_opt("nu-pre", "Hz")?)?;
            o.q("nu_post", r.nu_post);
            if let Some(d) = r.delta_k {
                o.q("delta_k", d);
            }
        }
        "cross" => {
            let vectors: Vec<Vec<f64>> = p
                .req("vectors")?
                .split(';')
                .map(|row| {
                    row.split(',')
                        .map(|s| parse_f64(s.trim(), "vectors"))
                        .collect()
                })
                .collect::<Result<_, _>>()?;
            let basis = match p.raw("basis") {
                Some(b) => b.split(',').map(|s| s.trim().to_string()).collect(),
                None => default_basis(vectors.len() + 1),
            };
            let g = generalized_cross_matrix(&vectors, &basis)?;
            o.v("rows", g.rows());
            o.v("components", &g.components);
        }
        "photon-energy" => o.q("energy", photon_energy(p.q("nu", "Hz")?)?),
        "luminance" => o.q(
            "luminance",
            luminance(
                p.q("flux", "cd sr")?,
                p.q("area", "m^2")?,
                p.q("omega", "sr")?,
                p.angle("theta")?,
            )?,
        ),
        "luminance-frequency" => {
            let delta = p
                .raw("delta-l")
                .map(|s| parse_f64(s, "delta-l"))
                .transpose()?;
            let set = LuminanceSampleSet::from_csv(p.file("file")?, delta)?;
            let r = luminance_frequency(&set)?;
            o.v("l_star", r.l_star);
            o.q("mean_t", r.mean_t);
            o.q("nu_l", r.nu_l);
        }
        "flux" => {
            let inputs = match p.req("form")? {
                "luminance-charge" => FluxInputs::LuminanceCharge {
                    nu_l: p.q("nu-l", "Hz")?,
                    q: p.q("q", "C")?,
                    a: p.q("area", "m^2")?,
                },
                "luminance-current" => FluxInputs::LuminanceCurrent {
                    l_star: p.f("l-star")?,
                    i: p.q("i", "A")?,
                    t: p.q("t", "s")?,
                    cons_t: p.q("cons-t", "s")?,
                    a: p.q("area", "m^2")?,
                },
                "voltage-current" => FluxInputs::VoltageCurrent {
                    v: p.q("voltage", "V")?,
                    i: p.q("i", "A")?,
                    a: p.q("area", "m^2")?,
                },
                "photon-energy" => FluxInputs::PhotonEnergy {
                    e_photon: p.q("energy", "J")?,
                    tau: p.q("tau", "s")?,
                    a: p.q("area", "m^2")?,
                },
                other => return Err(CliError::Usage(format!("unknown flux form `{other}`"))),
            };
            let r = biovi_flux(inputs, mode)?;
            o.q("flux", r.value.value);
            o.warnings = r.value.warnings.iter().map(ToString::to_string).collect();
        }
        "biovi-quantity" => o.q(
            "beta",
            biovi_quantity(p.q("nu", "Hz")?, p.q("v", "m s^-1")?, p.f_or("gamma", 1.0)?)?,
        ),
        "scene" => {
            let n_c = p.f("n-c")?;
            if !(n_c >= 0.0 && n_c.fract() == 0.0 && n_c <= u64::MAX as f64) {
                return Err(CliError::Usage(
                    "--n-c must be a non-negative integer".into(),
                ));
            }
            let scene = SceneLedger::centre(n_c as u64, p.q("t", "s")?, p.q("cons-t", "s")?)?;
            let a = scene_accounting(&scene)?;
            o.v("n_c", a.n_c);
            o.v("n_l", a.n_l);
            o.v("n_r", a.n_r);
            o.v("total_images", a.total_images);
            o.v("rate_per_s", a.rate.per_second());
        }
        "scene-volume" => {
            let r = scene_volume_change(
                p.q("v-s", "m^3")?,
                p.q("v-fly", "m^3")?,
                p.q("v-man", "m^3")?,
                p.q("a-fly", "m^2")?,
                p.q("a-man", "m^2")?,
                p.q("dlam-fly", "m")?,
                p.q("dlam-man", "m")?,
            )?;
            o.q("delta_v", r.delta_v);
            o.v("area_ratio", r.area_ratio);
            o.v("vision_ratio", r.vision_ratio);
        }
        "activation" => {
            let kind = match p.raw("kind").unwrap_or("sigmoid") {
                "sigmoid" => Activation::Sigmoid,
                "step" => Activation::Step,
                other => return Err(CliError::Usage(format!("unknown activation `{other}`"))),
            };
            o.v("y", activation(p.f("x")?, kind));
        }
        "fire" => {
            let th = p.vec3("theta")?;
            let f = fire_check(&sums(p, th)?);
            o.v("fires_grade_1_2_3", f);
        }
        "delta" => o.v(
            "w",
            delta_update_with_rate(
                p.f("w")?,
                p.f("x")?,
                p.bool01("desired")?,
                p.bool01("actual")?,
                p.f_or("rate", 1.0)?,
            ),
        ),
        "train" => {
            let rows = load_truth_table(p.file("file")?)?;
            let n = rows.first().map_or(0, |r| r.inputs.len());
            let mut unit = Perceptron::new(n, p.f_or("rate", 1.0)?)?;
            let epochs = p.f_or("epochs", 100.0)?;
            if !(epochs >= 1.0 && epochs.fract() == 0.0) {
                return Err(CliError::Usage(
                    "--epochs must be a positive integer".into(),
                ));
            }
            let out = unit.train(&rows, epochs as usize)?;
            o.v("converged", out.converged);
            o.v("epochs", out.epochs);
            o.v("errors", out.errors);
            o.v("weights", &unit.weights);
            o.v("bias", unit.bias);
        }
        "yield" => {
            let y = yield_efficiency(&sums(p, [0.0; 3])?)?;
            o.v("y2_percent", y.y2);
            o.v("y3_percent", y.y3);
        }
        "product-ratio" => {
            let s = sums(p, [0.0; 3])?;
            o.v("matrix", product_ratio_matrix(&s)?);
            o.v("kappa", kappa(&s)?);
        }
        "gaussian" => {
            let g = GaussianParams::new(p.f("mu")?, p.f("sigma")?)?;
            if let Some(x) = p.raw("x") {
                o.v("density", g.density(parse_f64(x, "x")?));
            }
            if let Some(mu2) = p.raw("mu2") {
                let other = GaussianParams::new(parse_f64(mu2, "mu2")?, p.f("sigma2")?)?;
                let c = g.convolve(&other);
                o.v("mu", c.mu());
                o.v("sigma", c.sigma());
            }
            if o.values.is_empty() {
                return Err(CliError::Usage(
                    "gaussian needs --x or --mu2/--sigma2".into(),
                ));
            }
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown operation `{other}`; run `biovi eval --list`"
            )))
        }
    }
    p.check_unused()?;
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(args: &[&str]) -> Result<Params, CliError> {
        Params::parse(&args.iter().map(|s| s.to_string()).collect::<Vec<_>>())
    }

    #[test]
    fn parses_both_flag_forms() {
        let p = params(&["--v", "3", "--t=2 ms", "--json"]).unwrap();
        assert!(p.json);
        assert_eq!(p.f("v").unwrap(), 3.0);
        assert_eq!(
            p.q("t", "s").unwrap(),
            Quantity::with_unit(2.0, "ms").unwrap()
        );
        p.check_unused().unwrap();
    }

    #[test]
    fn bare_number_takes_default_unit() {
        let p = params(&["--v", "5"]).unwrap();
        assert_eq!(p.q("v", "km s^-1").unwrap().magnitude(), 5000.0);
    }

    #[test]
    fn rejects_malformed_arguments() {
        assert!(matches!(params(&["v", "3"]), Err(CliError::Usage(_))));
        assert!(matches!(params(&["--v"]), Err(CliError::Usage(_))));
        assert!(matches!(
            params(&["--v", "1", "--v", "2"]),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            params(&["--deg", "--rad"]),
            Err(CliError::Usage(_))
        ));
        let p = params(&["--v", "inf"]).unwrap();
        assert!(matches!(p.f("v"), Err(CliError::Usage(_))));
    }

    #[test]
    fn unread_flag_is_reported() {
        let p = params(&["--v", "1", "--w", "2"]).unwrap();
        p.f("v").unwrap();
        let Err(CliError::Usage(msg)) = p.check_unused() else {
            panic!("expected usage error");
        };
        assert!(msg.contains("--w"));
    }

    #[test]
    fn angles_default_to_degrees() {
        let deg = params(&["--a", "180"]).unwrap().angle("a").unwrap();
        let rad = params(&["--a", "3.141592653589793", "--rad"])
            .unwrap()
            .angle("a")
            .unwrap();
        assert_eq!(deg.radians(), rad.radians());
    }

    #[test]
    fn number_switches_to_scientific() {
        assert_eq!(number(0.0), "0");
        assert_eq!(number(264.0), "264");
        assert_eq!(number(1.5e-5), "1.5e-5");
        assert_eq!(number(2.99792458e8), "2.99792458e8");
    }

    #[test]
    fn every_registered_op_runs_or_asks_for_input() {
        let p = params(&[]).unwrap();
        for (op, _, _) in OPS {
            match run(op, &p, EvalMode::Checked) {
                Ok(_) | Err(CliError::Usage(_)) => {}
                Err(e) => panic!("{op}: {e}"),
            }
        }
        assert!(matches!(
            run("nope", &p, EvalMode::Checked),
            Err(CliError::Usage(_))
        ));
    }
}
