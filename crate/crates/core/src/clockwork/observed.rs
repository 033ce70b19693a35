use std::fs;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Clock;
use crate::cascade::{normalize_steps, InfectionSequence};
use crate::error::{Error, Result};
use crate::rng;

/// Observed infection sequence `Ŝ_0, ..., Ŝ_N`. Steps are pairwise disjoint and
/// may be empty. Same JSON format as [`InfectionSequence`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct ObservedSequence {
    steps: Vec<Vec<usize>>,
}

impl ObservedSequence {
    pub fn new(steps: Vec<Vec<usize>>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::param("observed sequence needs at least one step"));
        }
        Ok(ObservedSequence {
            steps: normalize_steps(steps)?,
        })
    }

    pub fn steps(&self) -> &[Vec<usize>] {
        &self.steps
    }

    pub fn step(&self, j: usize) -> &[usize] {
        &self.steps[j]
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Index of the last observation, `N`.
    pub fn last_index(&self) -> usize {
        self.steps.len() - 1
    }

    /// `|Ŝ_j|` for every observation.
    pub fn sizes(&self) -> Vec<usize> {
        self.steps.iter().map(Vec::len).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.steps).expect("integer arrays serialize")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json() + "\n").map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

impl TryFrom<Vec<Vec<usize>>> for ObservedSequence {
    type Error = Error;

    fn try_from(steps: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(steps)
    }
}

impl From<ObservedSequence> for Vec<Vec<usize>> {
    fn from(obs: ObservedSequence) -> Self {
        obs.steps
    }
}

impl From<InfectionSequence> for ObservedSequence {
    fn from(seq: InfectionSequence) -> Self {
        ObservedSequence { steps: seq.into() }
    }
}

/// Spreads every ground-truth step over `stretch` consecutive observations,
/// placing each vertex in one of them uniformly at random.
///
/// Returns the observed sequence and the clock that generated it (every
/// interval has width `stretch`).
pub fn stretch_distort(
    seq: &InfectionSequence,
    stretch: usize,
    seed: u64,
) -> Result<(ObservedSequence, Clock)> {
    if stretch < 1 {
        return Err(Error::param("stretch factor must be at least 1"));
    }
    let mut rng = rng::seeded(seed);
    let mut observed = vec![Vec::new(); seq.len() * stretch];
    for (j, step) in seq.steps().iter().enumerate() {
        for &v in step {
            let slot = if stretch == 1 {
                0
            } else {
                rng.random_range(0..stretch)
            };
            observed[j * stretch + slot].push(v);
        }
    }
    let clock = Clock::from_counts(&vec![stretch; seq.len()])?;
    Ok((ObservedSequence::new(observed)?, clock))
}

/// Merges the observations of each clock interval into one step.
pub fn aggregate(obs: &ObservedSequence, clock: &Clock) -> Result<InfectionSequence> {
    if clock.last() != obs.last_index() {
        return Err(Error::param(format!(
            "clock ends at {} but the observed sequence ends at {}",
            clock.last(),
            obs.last_index()
        )));
    }
    let steps = clock
        .intervals()
        .map(|(a, b)| {
            obs.steps()[a..=b]
                .iter()
                .flatten()
                .copied()
                .collect::<Vec<_>>()
        })
        .collect();
    InfectionSequence::new(steps)
}

/// Whether `obs` aggregates to exactly `seq` under `clock`.
pub fn is_consistent(seq: &InfectionSequence, obs: &ObservedSequence, clock: &Clock) -> bool {
    clock.interval_count() == seq.len()
        && aggregate(obs, clock).is_ok_and(|aggregated| &aggregated == seq)
}
