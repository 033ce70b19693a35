use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Parameters of the independent cascade process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CascadeParams<T> {
    /// Probability that an active vertex infects a given uninfected neighbor in one step.
    pub p_n: T,
    /// Probability that an uninfected vertex is infected from outside the graph in one step.
    pub p_e: T,
}

impl<T: Scalar> CascadeParams<T> {
    pub fn new(p_n: T, p_e: T) -> Result<Self> {
        let params = CascadeParams { p_n, p_e };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let unit = T::zero()..=T::one();
        if !unit.contains(&self.p_n) {
            return Err(Error::param(format!("p_n must lie in [0, 1], got {}", self.p_n)));
        }
        if !unit.contains(&self.p_e) {
            return Err(Error::param(format!("p_e must lie in [0, 1], got {}", self.p_e)));
        }
        Ok(())
    }

    /// Converts to another scalar type.
    pub fn cast<U: Scalar>(&self) -> CascadeParams<U> {
        CascadeParams {
            p_n: U::from(self.p_n).expect("probability representable"),
            p_e: U::from(self.p_e).expect("probability representable"),
        }
    }
}
