//! Three-grade threshold perceptron, yields and the product-ratio matrix.

use std::f64::consts::PI;
use std::fmt;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::photometry::csv_error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Sigmoid,
    Step,
}

pub fn activation(x: f64, kind: Activation) -> f64 {
    match kind {
        Activation::Sigmoid => {
            if x >= 0.0 {
                1.0 / (1.0 + (-x).exp())
            } else {
                let e = x.exp();
                e / (1.0 + e)
            }
        }
        Activation::Step => {
            if x < 0.0 {
                0.0
            } else {
                1.0
            }
        }
    }
}

/// Pulse grade: 1 luminescent, 2 electrical, 3 chemical-electrical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Grade(u8);

impl Grade {
    pub const ONE: Grade = Grade(1);
    pub const TWO: Grade = Grade(2);
    pub const THREE: Grade = Grade(3);
    pub const ALL: [Grade; 3] = [Grade::ONE, Grade::TWO, Grade::THREE];

    pub fn new(g: u8) -> Result<Self> {
        if (1..=3).contains(&g) {
            Ok(Grade(g))
        } else {
            Err(Error::InvalidInput(format!("grade {g} is not 1, 2 or 3")))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        usize::from(self.0 - 1)
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Per-grade weighted sums and thresholds, indexed by grade - 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassSums {
    pub s: [f64; 3],
    pub thresholds: [f64; 3],
}

impl ClassSums {
    pub fn new(s1: f64, s2: f64, s3: f64, thresholds: [f64; 3]) -> Result<Self> {
        let s = [s1, s2, s3];
        if s.iter().chain(&thresholds).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("class sums"));
        }
        Ok(ClassSums { s, thresholds })
    }

    pub fn s1(&self) -> f64 {
        self.s[0]
    }
    pub fn s2(&self) -> f64 {
        self.s[1]
    }
    pub fn s3(&self) -> f64 {
        self.s[2]
    }

    pub fn sum(&self, g: Grade) -> f64 {
        self.s[g.index()]
    }
}

/// Grade g fires iff `s_g >= theta_g`. Indexed by grade - 1.
pub fn fire_check(sums: &ClassSums) -> [bool; 3] {
    [0, 1, 2].map(|i| sums.s[i] >= sums.thresholds[i])
}

pub fn delta_update(w: f64, x: f64, desired: bool, actual: bool) -> f64 {
    delta_update_with_rate(w, x, desired, actual, 1.0)
}

pub fn delta_update_with_rate(w: f64, x: f64, desired: bool, actual: bool, rate: f64) -> f64 {
    if desired == actual {
        return w;
    }
    let err = f64::from(u8::from(desired)) - f64::from(u8::from(actual));
    w + rate * x * err
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruthRow {
    pub inputs: Vec<f64>,
    pub desired: bool,
}

/// Reads `x1,...,xn,desired`. `desired` must be 0 or 1.
pub fn load_truth_table<R: Read>(reader: R) -> Result<Vec<TruthRow>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let headers = rdr.headers().map_err(csv_error)?.clone();
    let n = headers.len().saturating_sub(1);
    let expected: Vec<String> = (1..=n)
        .map(|i| format!("x{i}"))
        .chain(std::iter::once("desired".to_string()))
        .collect();
    if n == 0 || headers.iter().ne(expected.iter().map(String::as_str)) {
        return Err(Error::Format {
            line: 1,
            column: 1,
            message: "expected header `x1,...,xn,desired`".into(),
        });
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_error)?;
        let line = rec.position().map_or(0, |p| p.line());
        let mut inputs = Vec::with_capacity(n);
        for i in 0..n {
            let v = rec[i].trim().parse::<f64>().ok().filter(|v| v.is_finite());
            inputs.push(v.ok_or_else(|| Error::Format {
                line,
                column: i + 1,
                message: format!("`{}` is not a finite number", &rec[i]),
            })?);
        }
        let desired = match rec[n].trim() {
            "1" => true,
            "0" => false,
            other => {
                return Err(Error::Format {
                    line,
                    column: n + 1,
                    message: format!("`{other}` is not 0 or 1"),
                })
            }
        };
        rows.push(TruthRow { inputs, desired });
    }
    Ok(rows)
}

/// A single step-activated threshold unit with a bias weight.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Perceptron {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrainingOutcome {
    pub epochs: usize,
    pub converged: bool,
    /// Misclassified rows in the last epoch.
    pub errors: usize,
}

impl Perceptron {
    pub fn new(n_inputs: usize, rate: f64) -> Result<Self> {
        if n_inputs == 0 {
            return Err(Error::InvalidInput(
                "perceptron needs at least one input".into(),
            ));
        }
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::InvalidInput(format!(
                "learning rate {rate} must be positive"
            )));
        }
        Ok(Perceptron {
            weights: vec![0.0; n_inputs],
            bias: 0.0,
            rate,
        })
    }

    pub fn net(&self, x: &[f64]) -> f64 {
        self.bias + self.weights.iter().zip(x).map(|(w, x)| w * x).sum::<f64>()
    }

    pub fn predict(&self, x: &[f64]) -> bool {
        activation(self.net(x), Activation::Step) == 1.0
    }

    /// Runs delta-rule epochs until an error-free pass or `max_epochs`.
    pub fn train(&mut self, rows: &[TruthRow], max_epochs: usize) -> Result<TrainingOutcome> {
        if let Some(r) = rows.iter().find(|r| r.inputs.len() != self.weights.len()) {
            return Err(Error::ShapeMismatch(format!(
                "row has {} inputs, perceptron has {}",
                r.inputs.len(),
                self.weights.len()
            )));
        }
        let mut errors = 0;
        for epoch in 1..=max_epochs {
            errors = 0;
            for row in rows {
                let actual = self.predict(&row.inputs);
                if actual != row.desired {
                    errors += 1;
                    for (w, &x) in self.weights.iter_mut().zip(&row.inputs) {
                        *w = delta_update_with_rate(*w, x, row.desired, actual, self.rate);
                    }
                    self.bias =
                        delta_update_with_rate(self.bias, 1.0, row.desired, actual, self.rate);
                }
            }
            if errors == 0 {
                return Ok(TrainingOutcome {
                    epochs: epoch,
                    converged: true,
                    errors,
                });
            }
        }
        Ok(TrainingOutcome {
            epochs: max_epochs,
            converged: false,
            errors,
        })
    }
}

pub fn and_truth_table() -> Vec<TruthRow> {
    [
        (0.0, 0.0, false),
        (0.0, 1.0, false),
        (1.0, 0.0, false),
        (1.0, 1.0, true),
    ]
    .into_iter()
    .map(|(a, b, d)| TruthRow {
        inputs: vec![a, b],
        desired: d,
    })
    .collect()
}

/// Grades 2 and 3 as percentages of grade 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Yield {
    pub y2: f64,
    pub y3: f64,
}

pub fn yield_efficiency(sums: &ClassSums) -> Result<Yield> {
    let s1 = sums.s1();
    if s1 == 0.0 {
        return Err(Error::ZeroClassSum(1));
    }
    Ok(Yield {
        y2: sums.s2() * 100.0 / s1,
        y3: sums.s3() * 100.0 / s1,
    })
}

fn nonzero_sums(sums: &ClassSums) -> Result<(f64, f64, f64)> {
    for g in Grade::ALL {
        if sums.sum(g) == 0.0 {
            return Err(Error::ZeroClassSum(g.get()));
        }
    }
    Ok((sums.s3(), sums.s2(), sums.s1()))
}

/// `[[b, a, ab/c], [c, ac/b, a], [bc/a, c, b]]` with a = s3, b = s2, c = s1.
pub fn product_ratio_matrix(sums: &ClassSums) -> Result<[[f64; 3]; 3]> {
    let (a, b, c) = nonzero_sums(sums)?;
    Ok([[b, a, a * b / c], [c, a * c / b, a], [b * c / a, c, b]])
}

/// Row i holds pair product `[ab, ac, bc][i]`, column j divides by `[a, b, c][j]`.
pub fn product_ratio_unsimplified(sums: &ClassSums) -> Result<[[f64; 3]; 3]> {
    let (a, b, c) = nonzero_sums(sums)?;
    let products = [a * b, a * c, b * c];
    let divisors = [a, b, c];
    Ok(products.map(|p| divisors.map(|d| p / d)))
}

/// The three entries not equal to a bare class sum: `[ab/c, ac/b, bc/a]`.
pub fn kappa(sums: &ClassSums) -> Result<[f64; 3]> {
    let m = product_ratio_matrix(sums)?;
    Ok([m[0][2], m[1][1], m[2][0]])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianParams {
    mu: f64,
    sigma: f64,
}

impl GaussianParams {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() || !sigma.is_finite() {
            return Err(Error::NonFinite("Gaussian parameters"));
        }
        if sigma <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "sigma {sigma} must be positive"
            )));
        }
        Ok(GaussianParams { mu, sigma })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn density(&self, x: f64) -> f64 {
        let z = (x - self.mu) / self.sigma;
        (-0.5 * z * z).exp() / ((2.0 * PI).sqrt() * self.sigma)
    }

    /// Parameters of the sum of two independent normals.
    pub fn convolve(&self, other: &GaussianParams) -> GaussianParams {
        GaussianParams {
            mu: self.mu + other.mu,
            sigma: (self.sigma * self.sigma + other.sigma * other.sigma).sqrt(),
        }
    }
}

/// Composite Simpson integration of the density over `mu +- 8 sigma`.
pub fn density_quadrature(p: &GaussianParams, intervals: usize) -> f64 {
    let n = intervals.max(2) & !1;
    let a = p.mu - 8.0 * p.sigma;
    let h = 16.0 * p.sigma / n as f64;
    let mut acc = p.density(a) + p.density(a + h * n as f64);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * p.density(a + h * i as f64);
    }
    acc * h / 3.0
}
