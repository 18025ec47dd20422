use thiserror::Error;

use crate::model::PathlossModel;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function or configuration.
    #[error("invalid {name} = {value}: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("quadrature did not converge: estimate {estimate:e}, error estimate {error:e} after {evaluations} evaluations")]
    NonConvergence {
        estimate: f64,
        error: f64,
        evaluations: usize,
    },

    /// The closed-form coverage expression disagrees with its integral form.
    #[error("closed form {closed:e} disagrees with quadrature {quadrature:e} at lambda = {lambda:e} (|diff| = {diff:e})")]
    ClosedFormMismatch {
        lambda: f64,
        closed: f64,
        quadrature: f64,
        diff: f64,
    },

    #[error("no analytical coverage expression for the {0} pathloss model")]
    NoAnalyticModel(PathlossModel),

    /// The objective is monotone over the search bracket.
    #[error("no interior maximum in [{lo:e}, {hi:e}]; best value at {at:e}")]
    NoInteriorMaximum { lo: f64, hi: f64, at: f64 },

    #[error("window held no base station after {attempts} attempts (expected count {expected_count:e})")]
    ResampleLimit { attempts: usize, expected_count: f64 },
}
