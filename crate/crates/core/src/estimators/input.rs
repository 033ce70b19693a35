use crate::cascade::CascadeParams;
use crate::clockwork::ObservedSequence;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// Everything an estimator sees: the graph, the known cascade parameters, the
/// observed sequence and the size of the initially infected set.
#[derive(Debug, Clone, Copy)]
pub struct EstimationInput<'a, T> {
    pub graph: &'a Graph,
    pub params: CascadeParams<T>,
    pub observed: &'a ObservedSequence,
    pub s0_size: usize,
}

impl<'a, T: Scalar> EstimationInput<'a, T> {
    pub fn new(
        graph: &'a Graph,
        params: CascadeParams<T>,
        observed: &'a ObservedSequence,
        s0_size: usize,
    ) -> Result<Self> {
        params.validate()?;
        if s0_size == 0 {
            return Err(Error::param("initial set size must be at least 1"));
        }
        for &v in observed.steps().iter().flatten() {
            graph.check_vertex(v)?;
        }
        Ok(EstimationInput {
            graph,
            params,
            observed,
            s0_size,
        })
    }

    /// Smallest `j` such that `Ŝ_0 ∪ ... ∪ Ŝ_j` has exactly `s0_size` vertices.
    pub fn initial_boundary(&self) -> Result<usize> {
        let mut cumulative = 0;
        for (j, step) in self.observed.steps().iter().enumerate() {
            cumulative += step.len();
            if cumulative == self.s0_size {
                return Ok(j);
            }
            if cumulative > self.s0_size {
                break;
            }
        }
        Err(Error::InitialSetMismatch {
            s0_size: self.s0_size,
        })
    }

    /// Index of the last observation, `N`.
    pub fn last_index(&self) -> usize {
        self.observed.last_index()
    }
}
