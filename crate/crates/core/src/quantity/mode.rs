use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Dimension, Quantity};
use crate::error::{Error, Result};

/// How dimension mismatches inside a formula are treated.
///
/// Several of the source formulas are not dimensionally consistent as
/// printed. `Checked` refuses them; `PaperFaithful` evaluates the magnitude
/// anyway, stamps the declared result dimension and records a warning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvalMode {
    #[default]
    Checked,
    PaperFaithful,
}

impl fmt::Display for EvalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvalMode::Checked => "checked",
            EvalMode::PaperFaithful => "paper-faithful",
        })
    }
}

impl FromStr for EvalMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "checked" => Ok(EvalMode::Checked),
            "paper-faithful" => Ok(EvalMode::PaperFaithful),
            other => Err(Error::InvalidInput(format!(
                "unknown evaluation mode `{other}` (expected checked or paper-faithful)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionWarning {
    pub context: String,
    pub computed: Dimension,
    pub declared: Dimension,
}

impl fmt::Display for DimensionWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: computed {} but declared {}",
            self.context, self.computed, self.declared
        )
    }
}

/// A result that may carry dimension warnings from the lenient mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evaluated {
    pub value: Quantity,
    pub warnings: Vec<DimensionWarning>,
}

impl Evaluated {
    pub fn clean(value: Quantity) -> Self {
        Evaluated {
            value,
            warnings: Vec::new(),
        }
    }
}

/// Checks `computed` against the `declared` result dimension.
pub fn reconcile(
    mode: EvalMode,
    computed: Quantity,
    declared: Dimension,
    context: &str,
) -> Result<Evaluated> {
    if computed.dim() == declared {
        return Ok(Evaluated::clean(computed));
    }
    match mode {
        EvalMode::Checked => Err(Error::mismatch(context, computed.dim(), declared)),
        EvalMode::PaperFaithful => Ok(Evaluated {
            value: computed.retag(declared),
            warnings: vec![DimensionWarning {
                context: context.to_string(),
                computed: computed.dim(),
                declared,
            }],
        }),
    }
}
