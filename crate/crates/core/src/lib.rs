//! Coverage probability and area spectral efficiency of downlink cellular
//! networks whose base stations form a Poisson point process, under bounded
//! and unbounded pathloss.
//!
//! * [`specfun`]: `erfc` and the `2F1(1, b; b+1; -x)` families.
//! * [`model`]: configuration, pathloss models, interference constants.
//! * [`analytic`]: exact coverage, bounds, ASE, optimal density and scaling checks.
//! * [`mc`]: Monte Carlo simulator used to cross-check every analytical value.
//! * [`cli`]: CSV sweeps and validation reports behind the `cellscale` binary.

pub mod analytic;
pub mod cli;
pub mod error;
pub mod mc;
pub mod model;
pub mod specfun;

pub use error::{Error, Result};
pub use model::{DerivedConstants, NetworkConfig, PathlossModel, ServingDistanceDist};
