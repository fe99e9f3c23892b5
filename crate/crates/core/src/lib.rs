//! Grid-based dependency measures for paired samples.
//!
//! The centerpiece is the maximal information coefficient (MIC), computed
//! exactly by a dynamic program over clump boundaries, together with its fast
//! uniform-grid approximation (U-MIC). Around those sit k-nearest-neighbor
//! noise smoothing, Pearson/Spearman baselines, seeded synthetic dataset
//! generators, and an experiment harness that regenerates the score and
//! runtime tables the two measures are usually compared on.
//!
//! All scoring code is generic over the floating-point scalar through the
//! [`Scalar`] trait; the type aliases at the crate root fix `f64`, which is
//! what the CLI and the experiment harness use.

pub mod baselines;
pub mod data;
pub mod datagen;
pub mod denoise;
pub mod error;
pub mod experiments;
pub mod histogram;
pub mod io;
pub mod mic;
pub mod partition;
mod scalar;
pub mod umic;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// `f64` dataset, the concrete type used by the CLI and harness.
pub type Dataset = data::Dataset<f64>;
pub type AxisPartition = partition::AxisPartition<f64>;
pub type DiscreteDistribution = histogram::DiscreteDistribution<f64>;
pub type MicResult = mic::MicResult<f64>;
pub type UmicResult = umic::UmicResult<f64>;
