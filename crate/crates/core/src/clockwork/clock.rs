use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Oversampling clock: a partition of the observation timeline `0..=N` into
/// consecutive nonempty intervals, one per ground-truth step.
///
/// Stored as the strictly increasing right endpoints `t_0 < t_1 < ... < t_K = N`;
/// interval `k` is `[t_{k-1} + 1, t_k]` with `t_{-1} = -1`. Serialized as that
/// JSON array, e.g. `[2,3,5]` for `{[0,2],[3,3],[4,5]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Clock {
    boundaries: Vec<usize>,
}

impl Clock {
    pub fn from_boundaries(boundaries: Vec<usize>) -> Result<Self> {
        if boundaries.is_empty() {
            return Err(Error::param("clock needs at least one interval"));
        }
        if let Some(w) = boundaries.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::param(format!(
                "clock boundaries must be strictly increasing, found {} then {}",
                w[0], w[1]
            )));
        }
        Ok(Clock { boundaries })
    }

    /// Builds a clock from its count form `(C(0), ..., C(K))`, the number of
    /// observations falling in each ground-truth step. Every count must be positive.
    pub fn from_counts(counts: &[usize]) -> Result<Self> {
        if counts.contains(&0) {
            return Err(Error::param(
                "oversampling clocks need at least one observation per step",
            ));
        }
        let boundaries = counts
            .iter()
            .scan(0usize, |end, &c| {
                *end += c;
                Some(*end - 1)
            })
            .collect();
        Self::from_boundaries(boundaries)
    }

    /// One observation per step on `0..=last`.
    pub fn identity(last: usize) -> Self {
        Clock {
            boundaries: (0..=last).collect(),
        }
    }

    /// A single interval covering `0..=last`.
    pub fn single(last: usize) -> Self {
        Clock {
            boundaries: vec![last],
        }
    }

    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    /// The last observation index `N`.
    pub fn last(&self) -> usize {
        *self.boundaries.last().expect("nonempty")
    }

    pub fn interval_count(&self) -> usize {
        self.boundaries.len()
    }

    /// Inclusive `(start, end)` observation indices of each interval.
    pub fn intervals(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.boundaries.iter().scan(0usize, |start, &end| {
            let interval = (*start, end);
            *start = end + 1;
            Some(interval)
        })
    }

    pub fn to_counts(&self) -> Vec<usize> {
        self.intervals().map(|(a, b)| b - a + 1).collect()
    }

    /// Interval index of every observation index `0..=N`.
    pub fn assignment(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.last() + 1);
        for (k, (a, b)) in self.intervals().enumerate() {
            out.extend(std::iter::repeat_n(k, b - a + 1));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.boundaries).expect("integer array serializes")
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

impl TryFrom<Vec<usize>> for Clock {
    type Error = Error;

    fn try_from(boundaries: Vec<usize>) -> Result<Self> {
        Self::from_boundaries(boundaries)
    }
}

impl From<Clock> for Vec<usize> {
    fn from(clock: Clock) -> Self {
        clock.boundaries
    }
}
