use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::EstimatorKind;
use crate::graph::{check_probability, Graph};

/// Random graph family and its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum GraphSpec {
    /// `G(n, p)` with `p = n^{-1/alpha}` unless `p` is given.
    Er {
        n: usize,
        #[serde(default = "default_alpha")]
        alpha: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<f64>,
    },
    /// Stochastic block model. Without explicit sizes, two blocks of
    /// `round(√n)` and `n − round(√n)` vertices.
    Sbm {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        block_sizes: Option<Vec<usize>>,
        #[serde(default = "default_p_intra")]
        p_intra: f64,
        #[serde(default = "default_p_inter")]
        p_inter: f64,
    },
}

fn default_alpha() -> f64 {
    3.0
}
fn default_p_intra() -> f64 {
    0.2
}
fn default_p_inter() -> f64 {
    0.01
}

impl Default for GraphSpec {
    fn default() -> Self {
        GraphSpec::Er {
            n: 3000,
            alpha: default_alpha(),
            p: None,
        }
    }
}

impl GraphSpec {
    pub fn vertex_count(&self) -> usize {
        match self {
            GraphSpec::Er { n, .. } => *n,
            GraphSpec::Sbm { n, block_sizes, .. } => {
                block_sizes.as_ref().map_or(*n, |sizes| sizes.iter().sum())
            }
        }
    }

    /// Edge probability of an ER spec.
    pub fn er_probability(n: usize, alpha: f64, p: Option<f64>) -> f64 {
        p.unwrap_or_else(|| (n as f64).powf(-1.0 / alpha))
    }

    pub fn block_sizes(&self) -> Option<Vec<usize>> {
        match self {
            GraphSpec::Er { .. } => None,
            GraphSpec::Sbm { n, block_sizes, .. } => Some(block_sizes.clone().unwrap_or_else(|| {
                let small = ((*n as f64).sqrt().round() as usize).clamp(1, n.saturating_sub(1).max(1));
                if small >= *n {
                    vec![*n]
                } else {
                    vec![small, n - small]
                }
            })),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            GraphSpec::Er { n, alpha, p } => {
                if *n == 0 {
                    return Err(Error::Config("graph needs at least one vertex".into()));
                }
                if p.is_none() && (alpha.is_nan() || *alpha <= 0.0) {
                    return Err(Error::Config(format!("density exponent alpha must be positive, got {alpha}")));
                }
                check_probability("p", Self::er_probability(*n, *alpha, *p))
                    .map_err(|e| Error::Config(e.to_string()))
            }
            GraphSpec::Sbm { n, p_intra, p_inter, .. } => {
                if *n == 0 {
                    return Err(Error::Config("graph needs at least one vertex".into()));
                }
                let sizes = self.block_sizes().expect("sbm");
                if sizes.is_empty() || sizes.contains(&0) {
                    return Err(Error::Config("block sizes must be positive".into()));
                }
                check_probability("p_intra", *p_intra)
                    .and_then(|_| check_probability("p_inter", *p_inter))
                    .map_err(|e| Error::Config(e.to_string()))
            }
        }
    }

    pub fn build(&self, seed: u64) -> Result<Graph> {
        self.validate()?;
        match self {
            GraphSpec::Er { n, alpha, p } => {
                Graph::generate_er(*n, Self::er_probability(*n, *alpha, *p), seed)
            }
            GraphSpec::Sbm { p_intra, p_inter, .. } => {
                Graph::generate_sbm(&self.block_sizes().expect("sbm"), *p_intra, *p_inter, seed)
            }
        }
    }
}

/// How the initially infected set is chosen.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialSetRule {
    /// `s0_size` distinct vertices drawn uniformly at random.
    #[default]
    UniformRandom,
    /// These exact vertices; `s0_size` must match.
    Fixed(Vec<usize>),
}

/// One end-to-end trial. Defaults reproduce the Erdős–Rényi baseline setting:
/// `n = 3000`, `p = n^{-1/3}`, `p_n = 0.1`, `p_e = 1e-7`, stretch 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    #[serde(default)]
    pub graph: GraphSpec,
    #[serde(default = "default_p_n")]
    pub p_n: f64,
    #[serde(default = "default_p_e")]
    pub p_e: f64,
    #[serde(default = "default_s0_size")]
    pub s0_size: usize,
    #[serde(default)]
    pub s0_rule: InitialSetRule,
    #[serde(default = "default_stretch")]
    pub stretch: usize,
    #[serde(default = "default_estimators")]
    pub estimators: Vec<EstimatorKind>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_max_steps")]
    pub max_steps: usize,
    /// The likelihood DP only runs when the observed timeline has at most this many steps.
    #[serde(default = "default_dp_cap")]
    pub dp_cap: usize,
}

fn default_p_n() -> f64 {
    0.1
}
fn default_p_e() -> f64 {
    1e-7
}
fn default_s0_size() -> usize {
    1
}
fn default_stretch() -> usize {
    2
}
fn default_estimators() -> Vec<EstimatorKind> {
    vec![EstimatorKind::FastClock, EstimatorKind::Dp]
}
fn default_max_steps() -> usize {
    100
}
fn default_dp_cap() -> usize {
    60
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            graph: GraphSpec::default(),
            p_n: default_p_n(),
            p_e: default_p_e(),
            s0_size: default_s0_size(),
            s0_rule: InitialSetRule::default(),
            stretch: default_stretch(),
            estimators: default_estimators(),
            seed: 0,
            max_steps: default_max_steps(),
            dp_cap: default_dp_cap(),
        }
    }
}

impl TrialConfig {
    /// Stochastic block model baseline: `n = 5000` in blocks of `round(√n)`
    /// and the rest, `p_intra = 0.2`, `p_inter = 0.01`, `p_n = 0.1`.
    pub fn sbm_default() -> Self {
        TrialConfig {
            graph: GraphSpec::Sbm {
                n: 5000,
                block_sizes: None,
                p_intra: default_p_intra(),
                p_inter: default_p_inter(),
            },
            ..TrialConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.graph.validate()?;
        let config_err = |e: Error| Error::Config(e.to_string());
        check_probability("p_n", self.p_n).map_err(config_err)?;
        check_probability("p_e", self.p_e).map_err(config_err)?;
        let n = self.graph.vertex_count();
        if self.s0_size == 0 || self.s0_size > n {
            return Err(Error::Config(format!(
                "initial set size {} must lie in 1..={n}",
                self.s0_size
            )));
        }
        if let InitialSetRule::Fixed(vertices) = &self.s0_rule {
            let mut sorted = vertices.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != vertices.len() || sorted.len() != self.s0_size || sorted.iter().any(|&v| v >= n) {
                return Err(Error::Config(format!(
                    "fixed initial set must hold {} distinct vertices below {n}",
                    self.s0_size
                )));
            }
        }
        if self.stretch == 0 {
            return Err(Error::Config("stretch must be at least 1".into()));
        }
        if self.estimators.is_empty() {
            return Err(Error::Config("at least one estimator is required".into()));
        }
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}
