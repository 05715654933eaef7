//! Append-only pulse ledger with CSV persistence and a per-grade summary.

use std::fmt::Write as _;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::neuromatrix::{kappa, yield_efficiency, ClassSums, GaussianParams, Yield};
use crate::photometry::csv_error;

pub const HEADER: &str = "dir,in3,in2,in1,out3,out2,out1";

/// One row: weighted inputs and firing outputs for grades 3, 2, 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseRecord {
    pub dir: u64,
    pub in3: f64,
    pub in2: f64,
    pub in1: f64,
    pub out3: bool,
    pub out2: bool,
    pub out1: bool,
}

impl PulseRecord {
    /// Inputs in grade order 1, 2, 3.
    pub fn inputs(&self) -> [f64; 3] {
        [self.in1, self.in2, self.in3]
    }

    /// Outputs in grade order 1, 2, 3.
    pub fn outputs(&self) -> [bool; 3] {
        [self.out1, self.out2, self.out3]
    }

    fn csv_line(&self) -> String {
        let b = |x: bool| if x { '1' } else { '0' };
        format!(
            "{},{},{},{},{},{},{}",
            self.dir,
            self.in3,
            self.in2,
            self.in1,
            b(self.out3),
            b(self.out2),
            b(self.out1)
        )
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    c: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.c
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Ledger {
    records: Vec<PulseRecord>,
}

impl Ledger {
    pub fn new() -> Self {
        Ledger::default()
    }

    pub fn records(&self) -> &[PulseRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn last_dir(&self) -> Option<u64> {
        self.records.last().map(|r| r.dir)
    }

    pub fn append(&mut self, record: PulseRecord) -> Result<()> {
        if record.dir == 0 {
            return Err(Error::InvalidInput("dir must be positive".into()));
        }
        if let Some(last) = self.last_dir() {
            if record.dir <= last {
                return Err(Error::NonMonotonicDir {
                    last,
                    next: record.dir,
                });
            }
        }
        if record.inputs().iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("ledger input"));
        }
        self.records.push(record);
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(32 * (self.records.len() + 1));
        out.push_str(HEADER);
        out.push('\n');
        for r in &self.records {
            out.push_str(&r.csv_line());
            out.push('\n');
        }
        out
    }

    pub fn load_csv<R: Read>(reader: R) -> Result<Ledger> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(false)
            .from_reader(reader);
        let headers = rdr.headers().map_err(csv_error)?.clone();
        if headers.iter().collect::<Vec<_>>().join(",") != HEADER {
            return Err(Error::Format {
                line: 1,
                column: 1,
                message: format!("expected header `{HEADER}`"),
            });
        }
        let mut ledger = Ledger::new();
        for rec in rdr.records() {
            let rec = rec.map_err(csv_error)?;
            let line = rec.position().map_or(0, |p| p.line());
            let bad = |column: usize, message: String| Error::Format {
                line,
                column,
                message,
            };
            let dir = rec[0]
                .parse::<u64>()
                .map_err(|_| bad(1, format!("`{}` is not a positive integer", &rec[0])))?;
            let real = |i: usize| -> Result<f64> {
                rec[i]
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| bad(i + 1, format!("`{}` is not a finite number", &rec[i])))
            };
            let boolean = |i: usize| -> Result<bool> {
                match &rec[i] {
                    "1" => Ok(true),
                    "0" => Ok(false),
                    other => Err(bad(i + 1, format!("`{other}` is not 1 or 0"))),
                }
            };
            let record = PulseRecord {
                dir,
                in3: real(1)?,
                in2: real(2)?,
                in1: real(3)?,
                out3: boolean(4)?,
                out2: boolean(5)?,
                out1: boolean(6)?,
            };
            ledger.append(record).map_err(|e| bad(1, e.to_string()))?;
        }
        Ok(ledger)
    }

    /// Human-readable table, including the derived operation column `O = row * dir`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>6} {:>6} {:>14} {:>14} {:>14} {:>4} {:>4} {:>4}",
            "row", "dir", "in3", "in2", "in1", "o3", "o2", "o1"
        );
        for (i, r) in self.records.iter().enumerate() {
            let b = |x: bool| u8::from(x);
            let _ = writeln!(
                out,
                "{:>6} {:>6} {:>14} {:>14} {:>14} {:>4} {:>4} {:>4}   O={}",
                i + 1,
                r.dir,
                r.in3,
                r.in2,
                r.in1,
                b(r.out3),
                b(r.out2),
                b(r.out1),
                (i as u64 + 1) * r.dir
            );
        }
        out
    }
}

/// Fold of a ledger against per-grade thresholds. Arrays are in grade order 1, 2, 3.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LedgerSummary {
    pub count: usize,
    pub sums: [f64; 3],
    pub thresholds: [f64; 3],
    pub fires: [bool; 3],
    pub dir_sum: u128,
    pub mean_dir: f64,
    /// Per-record `[ab/c, ac/b, bc/a]` with a, b, c the record's grade 3, 2, 1 inputs.
    pub kappa: Vec<(u64, [f64; 3])>,
    pub kappa_sum: [f64; 3],
    pub kappa_mean: [f64; 3],
    pub yields: Yield,
    /// Cumulative fit over all records of each grade; absent below two records
    /// or when every value is equal.
    pub fits: [Option<GaussianParams>; 3],
}

fn fit(values: &[f64]) -> Option<GaussianParams> {
    let n = values.len();
    if n < 2 {
        return None;
    }
    let mean = values.iter().copied().collect::<CompensatedSum>().value() / n as f64;
    let ss = values
        .iter()
        .map(|v| (v - mean).powi(2))
        .collect::<CompensatedSum>()
        .value();
    GaussianParams::new(mean, (ss / (n as f64 - 1.0)).sqrt()).ok()
}

pub fn summarize(ledger: &Ledger, thresholds: [f64; 3]) -> Result<LedgerSummary> {
    let records = ledger.records();
    if records.is_empty() {
        return Err(Error::EmptyLedger);
    }
    let n = records.len();
    let sums = [0, 1, 2].map(|g| {
        records
            .iter()
            .map(|r| r.inputs()[g])
            .collect::<CompensatedSum>()
            .value()
    });
    let class = ClassSums::new(sums[0], sums[1], sums[2], thresholds)?;
    let fires = crate::neuromatrix::fire_check(&class);
    let dir_sum: u128 = records.iter().map(|r| u128::from(r.dir)).sum();
    let mut kappas = Vec::with_capacity(n);
    for r in records {
        let s = ClassSums::new(r.in1, r.in2, r.in3, thresholds)?;
        kappas.push((r.dir, kappa(&s)?));
    }
    let kappa_sum = [0, 1, 2].map(|k| {
        kappas
            .iter()
            .map(|(_, v)| v[k])
            .collect::<CompensatedSum>()
            .value()
    });
    let fits = [0, 1, 2].map(|g| fit(&records.iter().map(|r| r.inputs()[g]).collect::<Vec<_>>()));
    Ok(LedgerSummary {
        count: n,
        sums,
        thresholds,
        fires,
        dir_sum,
        mean_dir: dir_sum as f64 / n as f64,
        kappa: kappas,
        kappa_sum,
        kappa_mean: kappa_sum.map(|s| s / n as f64),
        yields: yield_efficiency(&class)?,
        fits,
    })
}

impl LedgerSummary {
    /// Per-record kappa rows, then the sum row, then the mean row, then the per-grade block.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>8} {:>24} {:>24} {:>24}",
            "dir", "kappa_ab/c", "kappa_ac/b", "kappa_bc/a"
        );
        for (dir, k) in &self.kappa {
            let _ = writeln!(out, "{:>8} {:>24e} {:>24e} {:>24e}", dir, k[0], k[1], k[2]);
        }
        let k = self.kappa_sum;
        let _ = writeln!(
            out,
            "{:>8} {:>24e} {:>24e} {:>24e}",
            "sum", k[0], k[1], k[2]
        );
        let k = self.kappa_mean;
        let _ = writeln!(
            out,
            "{:>8} {:>24e} {:>24e} {:>24e}",
            "mean", k[0], k[1], k[2]
        );
        let _ = writeln!(out);
        let _ = writeln!(out, "records {}", self.count);
        let _ = writeln!(out, "dir sum {}  mean {}", self.dir_sum, self.mean_dir);
        for g in (0..3).rev() {
            let fit = match self.fits[g] {
                Some(p) => format!("N(mu={:e}, sigma={:e}) cumulative", p.mu(), p.sigma()),
                None => "fit absent (fewer than 2 records)".to_string(),
            };
            let _ = writeln!(
                out,
                "grade {}: sum {:e}  theta {:e}  fires {}  {}",
                g + 1,
                self.sums[g],
                self.thresholds[g],
                u8::from(self.fires[g]),
                fit
            );
        }
        let _ = writeln!(out, "yield y2 {}%  y3 {}%", self.yields.y2, self.yields.y3);
        out
    }

    /// Grades 2 and 3 ordered by yield against grade 1, best first.
    pub fn ranking(&self) -> Vec<(u8, f64)> {
        let mut r = vec![(2u8, self.yields.y2), (3u8, self.yields.y3)];
        r.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        r
    }
}
