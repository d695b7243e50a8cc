//! Iteration counts of iterative decoders on the binary erasure channel.
//!
//! The crate computes density evolution for LDPC, IRA and ARA ensembles,
//! evaluates closed-form lower bounds on the number of iterations needed to
//! reach a target bit erasure probability, checks the bounds against measured
//! counts, and validates the infinite-length analysis with a finite-length
//! peeling simulator.

pub mod bounds;
pub mod cli;
pub mod degree_dist;
pub mod density_evolution;
pub mod error;
pub mod numeric;
pub mod peeling_sim;

pub use error::{Error, Result};
