//! Variance-minimising experimental designs for estimating the ratio of a
//! regression slope to its intercept, as in phase-ratio-variation
//! measurements of Henry's law constants, with interval estimation and
//! Monte Carlo design comparison.
//!
//! ```
//! use ratio_oed::design::optimal_design_homo;
//! use ratio_oed::model::ExperimentDomain;
//!
//! let domain = ExperimentDomain::new(1.0 / 3.0, 19.0, 10).unwrap();
//! let design = optimal_design_homo(&domain, 0.053).unwrap();
//! assert_eq!(design.count_at(1.0 / 3.0), 7);
//! assert_eq!(design.count_at(19.0), 3);
//! ```

pub mod cli;
pub mod design;
pub mod error;
pub mod inference;
pub mod model;
pub mod rng;
pub mod sim;
pub mod stats;

pub use error::{Error, Result};
