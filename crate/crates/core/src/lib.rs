//! Rates, cut-set bounds and minimum energy-per-bit for Gaussian parallel
//! relay networks.

pub mod asymptotic;
pub mod bounds;
pub mod cli;
pub mod energy;
pub mod error;
pub mod gaussmix;
pub mod network;
pub mod optimizer;
pub mod quad;
pub mod schemes;
pub mod sweep;

pub use error::{RelayError, Result};
pub use network::{normalize, NetworkConfig, NormalizedNetwork};
