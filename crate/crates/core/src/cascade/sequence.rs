use std::collections::HashSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Sorts every step and checks that no vertex appears twice across steps.
pub(crate) fn normalize_steps(mut steps: Vec<Vec<usize>>) -> Result<Vec<Vec<usize>>> {
    let mut seen = HashSet::new();
    for (j, step) in steps.iter_mut().enumerate() {
        step.sort_unstable();
        for &v in step.iter() {
            if !seen.insert(v) {
                return Err(Error::param(format!(
                    "vertex {v} appears more than once (again in step {j})"
                )));
            }
        }
    }
    Ok(steps)
}

/// Ordered, pairwise-disjoint sets of newly infected vertices `S_0, ..., S_T`.
///
/// Serialized as a JSON array of arrays, e.g. `[[2,8,10],[1,3,4,7,9],[6]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct InfectionSequence {
    steps: Vec<Vec<usize>>,
}

impl InfectionSequence {
    pub fn new(steps: Vec<Vec<usize>>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::param("infection sequence needs at least one step"));
        }
        Ok(InfectionSequence {
            steps: normalize_steps(steps)?,
        })
    }

    pub fn steps(&self) -> &[Vec<usize>] {
        &self.steps
    }

    pub fn step(&self, j: usize) -> &[usize] {
        &self.steps[j]
    }

    /// Number of steps, `T + 1`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Index of the last step, `T`.
    pub fn last_index(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn infected_count(&self) -> usize {
        self.steps.iter().map(Vec::len).sum()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.steps.iter().map(Vec::len).collect()
    }

    /// Drops trailing empty steps, keeping at least `S_0`.
    pub fn trim_trailing_empty(&mut self) {
        while self.steps.len() > 1 && self.steps.last().is_some_and(Vec::is_empty) {
            self.steps.pop();
        }
    }

    pub fn check_in_graph(&self, g: &Graph) -> Result<()> {
        self.steps.iter().flatten().try_for_each(|&v| g.check_vertex(v))
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

impl TryFrom<Vec<Vec<usize>>> for InfectionSequence {
    type Error = Error;

    fn try_from(steps: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(steps)
    }
}

impl From<InfectionSequence> for Vec<Vec<usize>> {
    fn from(seq: InfectionSequence) -> Self {
        seq.steps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_matches_documented_format() {
        let seq: InfectionSequence = serde_json::from_str("[[2,8,10],[1,3,4,7,9],[6]]").unwrap();
        assert_eq!(seq.len(), 3);
        assert_eq!(seq.sizes(), vec![3, 5, 1]);
        assert_eq!(seq.to_json(), "[[2,8,10],[1,3,4,7,9],[6]]");
    }

    #[test]
    fn rejects_overlapping_steps() {
        assert!(InfectionSequence::new(vec![vec![0, 1], vec![1]]).is_err());
        assert!(serde_json::from_str::<InfectionSequence>("[[0],[0]]").is_err());
        assert!(InfectionSequence::new(vec![]).is_err());
    }

    #[test]
    fn steps_are_sorted() {
        let seq = InfectionSequence::new(vec![vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(seq.steps(), &[vec![1, 3], vec![0, 2]]);
    }

    #[test]
    fn trims_trailing_empties() {
        let mut seq = InfectionSequence::new(vec![vec![0], vec![1], vec![], vec![]]).unwrap();
        seq.trim_trailing_empty();
        assert_eq!(seq.len(), 2);
        let mut lone = InfectionSequence::new(vec![vec![0], vec![]]).unwrap();
        lone.trim_trailing_empty();
        assert_eq!(lone.len(), 1);
    }
}
