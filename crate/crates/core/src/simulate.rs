//! Seeded pulse-stream simulation into a ledger.
//!
//! The generator is xoshiro256** seeded through SplitMix64 (`seed_from_u64`).
//! Normals come from the cosine branch of Box-Muller with
//! `u = (next_u64 >> 11) * 2^-53`; each normal consumes two words.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ledger::{summarize, Ledger, LedgerSummary, PulseRecord};
use crate::neuromatrix::GaussianParams;

#[derive(Debug, Clone)]
pub struct NormalStream {
    rng: Xoshiro256StarStar,
}

impl NormalStream {
    pub fn new(seed: u64) -> Self {
        NormalStream {
            rng: Xoshiro256StarStar::seed_from_u64(seed),
        }
    }

    /// Uniform on [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn standard_normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    pub fn sample(&mut self, p: &GaussianParams) -> f64 {
        p.mu() + p.sigma() * self.standard_normal()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Simulation {
    pub ledger: Ledger,
    pub summary: LedgerSummary,
    /// Grades 2 and 3 by yield against grade 1, best first.
    pub ranking: Vec<(u8, f64)>,
}

/// Draws `n` records. Per record the draws run grade 1, 2, 3; dirs are 1..=n.
/// `params` and `thresholds` are in grade order 1, 2, 3.
pub fn simulate_stream(
    n: u64,
    seed: u64,
    params: [GaussianParams; 3],
    thresholds: [f64; 3],
) -> Result<Simulation> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be positive".into()));
    }
    if thresholds.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidParams("thresholds must be finite".into()));
    }
    let mut stream = NormalStream::new(seed);
    let mut ledger = Ledger::new();
    for dir in 1..=n {
        let x = params.map(|p| stream.sample(&p));
        ledger.append(PulseRecord {
            dir,
            in3: x[2],
            in2: x[1],
            in1: x[0],
            out3: x[2] >= thresholds[2],
            out2: x[1] >= thresholds[1],
            out1: x[0] >= thresholds[0],
        })?;
    }
    let summary = summarize(&ledger, thresholds)?;
    let ranking = summary.ranking();
    Ok(Simulation {
        ledger,
        summary,
        ranking,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> [GaussianParams; 3] {
        [
            GaussianParams::new(1.0, 0.2).unwrap(),
            GaussianParams::new(2.0, 0.3).unwrap(),
            GaussianParams::new(3.0, 0.1).unwrap(),
        ]
    }

    #[test]
    fn same_seed_same_bytes() {
        let a = simulate_stream(200, 42, params(), [1.0; 3]).unwrap();
        let b = simulate_stream(200, 42, params(), [1.0; 3]).unwrap();
        assert_eq!(a.ledger.to_csv(), b.ledger.to_csv());
        let c = simulate_stream(200, 43, params(), [1.0; 3]).unwrap();
        assert_ne!(a.ledger.to_csv(), c.ledger.to_csv());
    }

    #[test]
    fn low_thresholds_almost_always_fire() {
        let p = params();
        let th = p.map(|g| g.mu() - 6.5 * g.sigma());
        let sim = simulate_stream(10_000, 7, p, th).unwrap();
        for g in 0..3 {
            let fired = sim
                .ledger
                .records()
                .iter()
                .filter(|r| r.outputs()[g])
                .count();
            assert!(fired as f64 / 10_000.0 > 0.999);
        }
        assert_eq!(sim.ranking[0].0, 3);
    }

    #[test]
    fn zero_records_rejected() {
        assert!(matches!(
            simulate_stream(0, 1, params(), [0.0; 3]),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn normals_look_standard() {
        let mut s = NormalStream::new(5);
        let n = 20_000;
        let xs: Vec<f64> = (0..n).map(|_| s.standard_normal()).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        assert!(mean.abs() < 0.05);
        assert!((var - 1.0).abs() < 0.05);
    }
}
