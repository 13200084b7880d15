//! Generalized beta prime (GB2) distribution family and its inequality
//! indices.
//!
//! The crate covers seven positive-support distributions (GB2, beta prime,
//! generalized/inverse gamma and lognormal), closed-form Gini, Hoover,
//! Theil T/L and DMMS indices with a quadrature oracle for each, the
//! mean-reverting SDEs whose steady states are BP/GB2, and a fitting
//! pipeline built on maximum likelihood, the Kolmogorov-Smirnov distance and
//! log-log survival regression.

pub mod dist;
pub mod error;
pub mod fit;
pub mod ineq;
pub mod parallel;
pub mod quadrature;
mod quantity;
pub mod sample;
pub mod sde;
pub mod specfun;

pub use dist::{DistributionSpec, Family, TailExponents};
pub use error::{Error, Result};
pub use fit::{FitReport, FitResult, ReportRow};
pub use ineq::{IndexMethod, IndexReport};
pub use quantity::Quantity;
pub use sample::Sample;
pub use sde::{SdeConfig, Simulation};
