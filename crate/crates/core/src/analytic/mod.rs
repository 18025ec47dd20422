//! Analytical coverage probability and area spectral efficiency.

mod ase;
mod coverage;
mod optimize;
pub mod quadrature;
mod scaling;

pub use ase::{
    ase, ase_exact, ase_lower, ase_lower_rate_ratio, ase_upper, ase_upper_rate_ratio,
    lower_tail_q_ratio, AseValue,
};
pub use coverage::{
    cp_exact, cp_g1_closed, cp_g1_closed_check, cp_g1_lower, cp_g1_quadrature, cp_g1_upper,
    cp_g2, cp_g2_lower, cp_g2_upper, cp_upm, ClosedFormCheck, CLOSED_FORM_TOLERANCE,
};
pub use optimize::{
    golden_section_max, optimal_density_closed, optimal_density_numeric, AseObjective,
    DensitySearch,
};
pub use quadrature::{QuadratureRule, QuadratureSpec};
pub use scaling::{scaling_envelope_check, ScalingEntry, ScalingReport};

/// How a coverage value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpMethod {
    ClosedForm,
    Quadrature,
}

/// A coverage probability.
///
/// `value` is clamped to `[0, 1]`; `raw` keeps the unclamped number so that
/// cancellation artefacts stay visible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpValue {
    pub value: f64,
    pub raw: f64,
    pub method: CpMethod,
}

impl CpValue {
    pub fn new(raw: f64, method: CpMethod) -> Self {
        Self {
            value: raw.clamp(0.0, 1.0),
            raw,
            method,
        }
    }
}
