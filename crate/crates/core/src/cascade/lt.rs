use rand::Rng;

use super::ic::initial_step;
use super::InfectionSequence;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;

/// Per-vertex activation thresholds of the linear threshold process.
#[derive(Debug, Clone, PartialEq)]
pub enum Thresholds {
    /// One threshold in `[0, 1]` per vertex.
    Explicit(Vec<f64>),
    /// Independent uniform `[0, 1)` thresholds drawn from the seed.
    Uniform { seed: u64 },
}

impl Thresholds {
    fn resolve(&self, n: usize) -> Result<Vec<f64>> {
        match self {
            Thresholds::Explicit(values) => {
                if values.len() != n {
                    return Err(Error::param(format!(
                        "expected {n} thresholds, got {}",
                        values.len()
                    )));
                }
                if let Some((v, t)) = values
                    .iter()
                    .enumerate()
                    .find(|(_, t)| !(0.0..=1.0).contains(*t))
                {
                    return Err(Error::param(format!(
                        "threshold of vertex {v} must lie in [0, 1], got {t}"
                    )));
                }
                Ok(values.clone())
            }
            Thresholds::Uniform { seed } => {
                let mut rng = rng::seeded(*seed);
                Ok((0..n).map(|_| rng.random::<f64>()).collect())
            }
        }
    }
}

/// Runs the linear threshold process from `s0`.
///
/// A vertex joins at the first step where the fraction of its neighbors already
/// infected strictly exceeds its threshold. Isolated vertices never join.
pub fn simulate_lt(
    g: &Graph,
    thresholds: &Thresholds,
    s0: &[usize],
    max_steps: usize,
) -> Result<InfectionSequence> {
    let n = g.vertex_count();
    let theta = thresholds.resolve(n)?;
    let initial = initial_step(g, s0)?;

    let mut infected = vec![false; n];
    let mut infected_neighbors = vec![0usize; n];
    let mut infected_count = 0;
    let mut steps: Vec<Vec<usize>> = Vec::new();
    let mut latest = initial;

    loop {
        for &v in &latest {
            infected[v] = true;
        }
        infected_count += latest.len();
        let mut candidates = Vec::new();
        for &v in &latest {
            for &w in g.neighbors(v) {
                if !infected[w] {
                    candidates.push(w);
                    infected_neighbors[w] += 1;
                }
            }
        }
        steps.push(latest);
        if steps.len() > max_steps || infected_count == n {
            break;
        }

        // Fractions only grow when a neighbor joins, so only touched vertices can cross.
        candidates.sort_unstable();
        candidates.dedup();
        let mut next: Vec<usize> = Vec::new();
        for w in candidates {
            let fraction = infected_neighbors[w] as f64 / g.degree(w) as f64;
            if fraction > theta[w] {
                next.push(w);
            }
        }
        if next.is_empty() {
            break;
        }
        latest = next;
    }
    InfectionSequence::new(steps)
}
