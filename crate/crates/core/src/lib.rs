//! Transverse spatial correlations of SPDC photon pairs pumped by a partially
//! coherent Gaussian Schell-model beam.

pub mod config;
pub mod entanglement;
pub mod error;
pub mod exec;
pub mod joint;
pub mod numerics;
pub mod params;
pub mod phasematch;
pub mod pump;
pub mod validation;

pub use error::{Error, Result};
