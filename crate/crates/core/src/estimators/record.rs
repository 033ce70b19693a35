use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{dp_mlp, fastclock, EstimationInput};
use crate::clockwork::Clock;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorKind {
    #[serde(rename = "fastclock")]
    FastClock,
    Dp,
}

impl EstimatorKind {
    pub fn name(self) -> &'static str {
        match self {
            EstimatorKind::FastClock => "fastclock",
            EstimatorKind::Dp => "dp",
        }
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fastclock" => Ok(EstimatorKind::FastClock),
            "dp" => Ok(EstimatorKind::Dp),
            other => Err(Error::param(format!(
                "unknown estimator `{other}` (expected fastclock or dp)"
            ))),
        }
    }
}

/// Estimated clock plus run metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRecord {
    pub estimator: EstimatorKind,
    pub clock: Clock,
    pub wall_clock_ns: u64,
    /// Only reported by the likelihood estimator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log_likelihood: Option<f64>,
    #[serde(default)]
    pub degenerate: bool,
}

/// Runs one estimator, timing only the estimator call.
pub fn run_estimator<T: Scalar>(
    kind: EstimatorKind,
    input: &EstimationInput<'_, T>,
) -> Result<EstimateRecord> {
    let started = Instant::now();
    let (clock, log_likelihood, degenerate) = match kind {
        EstimatorKind::FastClock => (fastclock(input)?, None, false),
        EstimatorKind::Dp => {
            let outcome = dp_mlp(input)?;
            (outcome.clock, outcome.log_likelihood.to_f64(), outcome.degenerate)
        }
    };
    let elapsed = started.elapsed();
    Ok(EstimateRecord {
        estimator: kind,
        clock,
        wall_clock_ns: u64::try_from(elapsed.as_nanos()).unwrap_or(u64::MAX).max(1),
        log_likelihood,
        degenerate,
    })
}
