//! Statistical learning of melodic interval chunks with recursive
//! autoencoders and a simple recurrent network.

pub mod analysis;
pub mod cli;
pub mod corpus;
pub mod encoding;
pub mod error;
pub mod experiments;
pub mod nets;
pub mod rng;

pub use error::{Error, Result};
