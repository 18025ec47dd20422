use std::f64::consts::PI;

use super::coverage::cp_exact;
use super::quadrature::QuadratureSpec;
use super::CpValue;
use crate::error::Result;
use crate::model::{DerivedConstants, NetworkConfig, PathlossModel};
use crate::specfun::{erfc, erfcx};

/// Area spectral efficiency in bits/(s Hz m^2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AseValue {
    pub value: f64,
    pub lambda_bs: f64,
}

/// `lambda * cp * log2(1 + tau)`.
pub fn ase(cfg: &NetworkConfig, cp: CpValue) -> AseValue {
    AseValue {
        value: cfg.lambda_bs * cp.value * cfg.rate(),
        lambda_bs: cfg.lambda_bs,
    }
}

pub fn ase_exact(
    cfg: &NetworkConfig,
    model: PathlossModel,
    quad: &QuadratureSpec,
) -> Result<AseValue> {
    Ok(ase(cfg, cp_exact(cfg, model, quad)?))
}

/// Upper bound `lambda log2(1+tau) exp(-pi lambda 2^-a c_hat) / (1 + 2^-a c_hat)`.
pub fn ase_upper(cfg: &NetworkConfig) -> Result<AseValue> {
    cfg.validate()?;
    let k = DerivedConstants::for_config(cfg)?;
    let lambda = cfg.lambda_bs;
    Ok(AseValue {
        value: lambda * (-k.kappa_upper * lambda).exp() * ase_upper_rate_ratio(&k),
        lambda_bs: lambda,
    })
}

/// `A^U(lambda) / (lambda exp(-kappa_U lambda))`, which does not depend on lambda.
pub fn ase_upper_rate_ratio(k: &DerivedConstants) -> f64 {
    rate(k.tau) / (1.0 + k.c_hat * 2f64.powf(-k.alpha))
}

fn rate(tau: f64) -> f64 {
    tau.ln_1p() / std::f64::consts::LN_2
}

/// Lower bound on the ASE, evaluated term by term as
///
/// ```text
/// lambda log2(1+tau) [ exp(-pi lambda (1 + 2^a c1)) / (1 + k)
///     - k pi sqrt(lambda) exp(-pi lambda k / (1 + k))
///       erfc(sqrt(pi lambda) (1 + 2k) / sqrt(1 + k)) / (1 + k)^(3/2) ]
/// ```
///
/// with `k = 2^(a-2) c1`.
pub fn ase_lower(cfg: &NetworkConfig) -> Result<AseValue> {
    cfg.validate()?;
    let k = DerivedConstants::for_config(cfg)?;
    let lambda = cfg.lambda_bs;
    let pl = PI * lambda;
    let kk = 2f64.powf(cfg.alpha - 2.0) * k.c1;
    let a = 1.0 + kk;
    let z = pl.sqrt() * (1.0 + 2.0 * kk) / a.sqrt();
    let bracket = (-k.kappa_lower * lambda).exp() / a
        - kk * PI * lambda.sqrt() * (-pl * kk / a).exp() * erfc(z) / a.powf(1.5);
    Ok(AseValue {
        value: lambda * cfg.rate() * bracket,
        lambda_bs: lambda,
    })
}

/// `Q2 / Q1` for the lower bound, where
/// `A^L = lambda log2(1+tau) (Q1 - Q2) / (1 + k)`. Always in `(0, 1/2)`.
pub fn lower_tail_q_ratio(lambda: f64, k: &DerivedConstants) -> f64 {
    let kk = 2f64.powf(k.alpha - 2.0) * k.c1;
    let a = 1.0 + kk;
    let z = (PI * lambda).sqrt() * (1.0 + 2.0 * kk) / a.sqrt();
    PI.sqrt() * z * erfcx(z) * kk / (1.0 + 2.0 * kk)
}

/// `A^L(lambda) / (lambda exp(-kappa_L lambda))`, evaluated with the
/// exponential factor cancelled analytically so it stays finite for any lambda.
pub fn ase_lower_rate_ratio(lambda: f64, k: &DerivedConstants) -> f64 {
    let kk = 2f64.powf(k.alpha - 2.0) * k.c1;
    rate(k.tau) * (1.0 - lower_tail_q_ratio(lambda, k)) / (1.0 + kk)
}
