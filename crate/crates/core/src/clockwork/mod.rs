//! Clocks on an observation timeline, stretch distortion of infection
//! sequences, and the pairwise clock distance.

mod clock;
mod distance;
mod observed;

pub use clock::Clock;
pub use distance::{
    distance, distance_bruteforce, distance_bruteforce_counts, distance_counts, distance_ratio,
    PairDisagreement,
};
pub use observed::{aggregate, is_consistent, stretch_distort, ObservedSequence};
