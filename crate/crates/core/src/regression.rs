//! Regression suite comparing solver output with the printed reference answers.

use serde::Serialize;

use crate::error::Result;
use crate::photometry::{scene_accounting, SceneLedger};
use crate::prekinematics::{run_sample_problem, ProblemMode, SampleProblemResult};
use crate::quantity::{Dimension, Quantity};
use crate::relativity::{fly_human_table, observation_density};

pub const DEFAULT_RELATIVE_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Tolerance {
    Relative(f64),
    Absolute(f64),
}

impl Tolerance {
    pub fn accepts(&self, rel_error: f64, abs_error: f64) -> bool {
        match *self {
            Tolerance::Relative(t) => rel_error <= t,
            Tolerance::Absolute(t) => abs_error <= t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionEntry {
    pub problem_id: String,
    pub label: String,
    pub expected: Quantity,
    pub actual: Quantity,
    pub rel_error: f64,
    pub abs_error: f64,
    pub tolerance: Tolerance,
    pub pass: bool,
    pub mode: ProblemMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionReport {
    pub mode: ProblemMode,
    pub entries: Vec<RegressionEntry>,
    /// Inconsistencies found in the reference values themselves.
    pub flags: Vec<String>,
}

impl RegressionReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RegressionEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("mode {}\n", self.mode);
        for e in &self.entries {
            out.push_str(&format!(
                "{:<4} {:<6} {:<28} expected {:>16e} actual {:>24e} {:<12} rel {:>10.3e} {}\n",
                if e.pass { "PASS" } else { "FAIL" },
                e.problem_id,
                e.label,
                e.expected.magnitude(),
                e.actual.magnitude(),
                e.expected.dim().to_string(),
                e.rel_error,
                e.note.as_deref().unwrap_or("")
            ));
        }
        for f in &self.flags {
            out.push_str(&format!("flag {f}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Selection {
    #[default]
    All,
    /// Keep only entries whose problem id is listed.
    Only(Vec<String>),
}

impl Selection {
    fn keeps(&self, id: &str) -> bool {
        match self {
            Selection::All => true,
            Selection::Only(ids) => ids.iter().any(|s| s == id),
        }
    }
}

pub const TARGET_IDS: [&str; 13] = [
    "I.1", "I.2", "I.3", "I.5", "I.6", "I.7", "I.8", "I.9", "I.10", "I.11", "T3.1", "T3.2", "scene",
];

struct Builder {
    mode: ProblemMode,
    selection: Selection,
    entries: Vec<RegressionEntry>,
}

impl Builder {
    fn push(
        &mut self,
        id: &str,
        label: &str,
        expected: Quantity,
        actual: Quantity,
        tolerance: Tolerance,
        note: Option<&str>,
    ) {
        if !self.selection.keeps(id) {
            return;
        }
        let abs_error = (actual.magnitude() - expected.magnitude()).abs();
        let rel_error = if expected.magnitude() == 0.0 {
            abs_error
        } else {
            abs_error / expected.magnitude().abs()
        };
        let pass = actual.dim() == expected.dim() && tolerance.accepts(rel_error, abs_error);
        self.entries.push(RegressionEntry {
            problem_id: id.to_string(),
            label: label.to_string(),
            expected,
            actual,
            rel_error,
            abs_error,
            tolerance,
            pass,
            mode: self.mode,
            note: if pass { None } else { note.map(str::to_string) },
        });
    }

    fn problem(
        &mut self,
        id: &str,
        result: &SampleProblemResult,
        label: &str,
        expected: f64,
        unit: &str,
        note: Option<&str>,
    ) -> Result<()> {
        let actual = result
            .get(label)
            .map(|v| v.value)
            .ok_or_else(|| crate::Error::InvalidInput(format!("missing value `{label}`")))?;
        let expected = Quantity::with_unit(expected, unit)?;
        self.push(
            id,
            label,
            expected,
            actual,
            Tolerance::Relative(DEFAULT_RELATIVE_TOLERANCE),
            note,
        );
        Ok(())
    }
}

const CHI_NOTE: &str =
    "diverges from the printed value: chi^2 recomputed from the cavity geometry is 1.42129e-7 m^2, not 3.77e-7 m^2";

/// Runs every reference target, or those picked by `selection`.
pub fn run_regression_suite(mode: ProblemMode, selection: &Selection) -> Result<RegressionReport> {
    let mut b = Builder {
        mode,
        selection: selection.clone(),
        entries: Vec::new(),
    };
    let p1a = run_sample_problem("2.1a", mode)?;
    let p1b = run_sample_problem("2.1b", mode)?;
    let p2a = run_sample_problem("2.2a", mode)?;
    let p2b = run_sample_problem("2.2b", mode)?;
    let p2c = run_sample_problem("2.2c", mode)?;

    b.problem("I.1", &p1a, "x_k", 4.09102e-25, "m", None)?;
    b.problem("I.2", &p1b, "hypotenuse", 0.11209, "m", None)?;
    b.problem("I.2", &p1b, "total", 0.11209, "m", None)?;
    b.problem("I.3", &p1b, "area", 3.67682e-7, "m^2", None)?;
    b.problem("I.5", &p2a, "full_vp", 8.98755179e14, "km s^-1", None)?;
    b.problem("I.6", &p2b, "x_k", 2.1299e-30, "km", None)?;
    b.problem("I.7", &p2b, "nu", 1.40747658e35, "Hz", None)?;
    b.problem("I.8", &p2c, "nu_cavity", 6.11014357e33, "Hz", None)?;
    b.problem("I.8", &p2c, "energy", 4.04862268, "J", None)?;
    b.problem("I.9", &p2c, "nu_obs", 7.95205e13, "Hz", Some(CHI_NOTE))?;
    b.problem(
        "I.10",
        &p2c,
        "beta",
        5.26908e-21,
        "kg m^3 s^-3",
        Some(CHI_NOTE),
    )?;
    b.problem("I.11", &p2c, "nu_post", 2.38396599e23, "Hz", Some(CHI_NOTE))?;

    let mut flags = Vec::new();
    let pct = |x: f64| Quantity::dimensionless(x);
    for row in fly_human_table()? {
        let (ratio_expected, complement_expected, tol) = match row.parameter {
            "size" => (0.3636, row.printed_complement, 5e-4),
            "mass" => (row.printed_ratio, row.printed_complement, 1e-6),
            _ => (row.printed_ratio, row.printed_complement, 1e-5),
        };
        if !row.printed_consistent {
            flags.push(format!(
                "T3.1 {}: printed ratio {}% and complement {}% do not sum to 100%; computed ratio is {:.4}%",
                row.parameter, row.printed_ratio, row.printed_complement, row.computed.ratio_percent
            ));
        }
        b.push(
            "T3.1",
            &format!("{}_ratio_percent", row.parameter),
            pct(ratio_expected)?,
            pct(row.computed.ratio_percent)?,
            Tolerance::Absolute(tol),
            None,
        );
        b.push(
            "T3.1",
            &format!("{}_complement_percent", row.parameter),
            pct(complement_expected)?,
            pct(row.computed.complement_percent)?,
            Tolerance::Absolute(tol),
            None,
        );
    }

    let rho = observation_density(
        Quantity::with_unit(70.0, "kg")?,
        Quantity::with_unit(1.5, "mm^3")?,
    )?;
    b.push(
        "T3.2",
        "density",
        Quantity::new(4.66666667e10, Dimension::DENSITY)?,
        rho,
        Tolerance::Relative(1e-8),
        None,
    );

    let scene = SceneLedger::centre(
        132,
        Quantity::with_unit(1.0, "s")?,
        Quantity::with_unit(0.5, "s")?,
    )?;
    let acc = scene_accounting(&scene)?;
    b.push(
        "scene",
        "total_images",
        pct(264.0)?,
        pct(acc.total_images as f64)?,
        Tolerance::Absolute(0.0),
        None,
    );
    b.push(
        "scene",
        "rate_times_span",
        pct(acc.total_images as f64)?,
        pct(acc.rate.images_over(scene.t.add(scene.cons_t)?))?,
        Tolerance::Absolute(0.0),
        None,
    );

    if let Selection::Only(ids) = selection {
        flags.retain(|f| ids.iter().any(|id| f.starts_with(id.as_str())));
    }
    Ok(RegressionReport {
        mode,
        entries: b.entries,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_mode_passes_everything() {
        let r = run_regression_suite(ProblemMode::StrictPaper, &Selection::All).unwrap();
        let failing: Vec<_> = r.failures().map(|e| (&e.problem_id, &e.label)).collect();
        assert!(r.all_pass(), "{failing:?}");
        for id in TARGET_IDS {
            assert!(r.entries.iter().any(|e| e.problem_id == id), "{id}");
        }
        assert_eq!(r.flags.len(), 1);
        assert!(r.flags[0].contains("size"));
    }

    #[test]
    fn recomputed_mode_fails_exactly_the_chi_targets() {
        let r = run_regression_suite(ProblemMode::Recomputed, &Selection::All).unwrap();
        let mut failing: Vec<&str> = r.failures().map(|e| e.problem_id.as_str()).collect();
        failing.sort_unstable();
        assert_eq!(failing, ["I.10", "I.11", "I.9"]);
        assert!(r.failures().all(|e| e.note.as_deref() == Some(CHI_NOTE)));
    }

    #[test]
    fn empty_selection_is_empty_and_passes() {
        let r = run_regression_suite(ProblemMode::StrictPaper, &Selection::Only(vec![])).unwrap();
        assert!(r.entries.is_empty());
        assert!(r.all_pass());
        let r = run_regression_suite(
            ProblemMode::StrictPaper,
            &Selection::Only(vec!["I.8".into()]),
        )
        .unwrap();
        assert_eq!(r.entries.len(), 2);
    }

    #[test]
    fn scene_total_is_exact() {
        let r = run_regression_suite(
            ProblemMode::StrictPaper,
            &Selection::Only(vec!["scene".into()]),
        )
        .unwrap();
        assert_eq!(r.entries[0].actual.magnitude(), 264.0);
        assert_eq!(r.entries[1].abs_error, 0.0);
    }
}
