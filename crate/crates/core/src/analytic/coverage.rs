use std::f64::consts::PI;

use super::quadrature::{expect_serving, QuadratureSpec};
use super::{CpMethod, CpValue};
use crate::error::{Error, Result};
use crate::model::{DerivedConstants, NetworkConfig, PathlossModel};
use crate::specfun::{erfc, hyp2f1_unit_scaled};

/// Largest accepted gap between the closed-form g1 coverage and its integral form.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-6;

fn constants(cfg: &NetworkConfig) -> Result<DerivedConstants> {
    cfg.validate()?;
    DerivedConstants::for_config(cfg)
}

/// Coverage under unbounded pathloss, `1 / (1 + c1)`; independent of density.
pub fn cp_upm(cfg: &NetworkConfig) -> Result<CpValue> {
    let k = constants(cfg)?;
    Ok(CpValue::new(1.0 / (1.0 + k.c1), CpMethod::ClosedForm))
}

/// `E[exp(-pi lambda c (1 + d0)^2)]` in closed form.
fn g1_family_closed(lambda: f64, c: f64) -> f64 {
    let a = 1.0 + c;
    let pl = PI * lambda;
    (-pl * c).exp() / a
        - (-pl * c / a).exp() * PI * lambda.sqrt() * c / a.powf(1.5) * erfc(pl.sqrt() * c / a.sqrt())
}

/// Coverage under `g1 = (1 + d)^-alpha` by quadrature of
/// `E[exp(-pi lambda (1 + d0)(c1 (1 + d0) - c2))]`.
///
/// This is the reference value for g1; the closed form is checked against it.
pub fn cp_g1_quadrature(cfg: &NetworkConfig, quad: &QuadratureSpec) -> Result<CpValue> {
    let k = constants(cfg)?;
    let pl = PI * cfg.lambda_bs;
    // (1+x)(c1(1+x) - c2) = c_hat + (c1 + c_hat) x + c1 x^2
    let lin = k.c1 + k.c_hat;
    let inner = expect_serving(cfg.lambda_bs, 0.0, quad, |x| {
        (-pl * x * (lin + k.c1 * x)).exp()
    })?;
    Ok(CpValue::new(
        (-pl * k.c_hat).exp() * inner,
        CpMethod::Quadrature,
    ))
}

/// The printed closed form of the g1 coverage, evaluated term by term.
fn g1_closed_raw(cfg: &NetworkConfig, k: &DerivedConstants) -> f64 {
    let lambda = cfg.lambda_bs;
    let pl = PI * lambda;
    let a = 1.0 + k.c1;
    let b = k.c1 + k.c_hat;
    let first = (-pl * k.c_hat).exp() / a;
    let prefactor = PI * lambda.sqrt() * b * (pl * (k.c2 * k.c2 - 4.0 * k.c_hat) / (4.0 * a)).exp()
        / (2.0 * a.powf(1.5));
    let z = -pl.sqrt() * b / (2.0 * a.sqrt());
    first + prefactor * (erfc(z) - 2.0)
}

/// Closed form against quadrature for one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormCheck {
    pub lambda: f64,
    pub closed: f64,
    pub quadrature: f64,
    pub diff: f64,
}

impl ClosedFormCheck {
    pub fn passes(&self) -> bool {
        self.diff <= CLOSED_FORM_TOLERANCE
    }
}

pub fn cp_g1_closed_check(cfg: &NetworkConfig, quad: &QuadratureSpec) -> Result<ClosedFormCheck> {
    let k = constants(cfg)?;
    let closed = g1_closed_raw(cfg, &k);
    let quadrature = cp_g1_quadrature(cfg, quad)?.raw;
    Ok(ClosedFormCheck {
        lambda: cfg.lambda_bs,
        closed,
        quadrature,
        diff: (closed - quadrature).abs(),
    })
}

/// Closed-form g1 coverage, accepted only when it agrees with the
/// quadrature value to [`CLOSED_FORM_TOLERANCE`].
pub fn cp_g1_closed(cfg: &NetworkConfig, quad: &QuadratureSpec) -> Result<CpValue> {
    let check = cp_g1_closed_check(cfg, quad)?;
    if !check.passes() || !check.closed.is_finite() {
        return Err(Error::ClosedFormMismatch {
            lambda: check.lambda,
            closed: check.closed,
            quadrature: check.quadrature,
            diff: check.diff,
        });
    }
    Ok(CpValue::new(check.closed, CpMethod::ClosedForm))
}

/// Lower bound of the g1 coverage, obtained by dropping `c2`.
pub fn cp_g1_lower(cfg: &NetworkConfig) -> Result<CpValue> {
    let k = constants(cfg)?;
    Ok(CpValue::new(
        g1_family_closed(cfg.lambda_bs, k.c1),
        CpMethod::ClosedForm,
    ))
}

/// Upper bound of the g1 coverage, `c_hat` in place of `c1`.
pub fn cp_g1_upper(cfg: &NetworkConfig) -> Result<CpValue> {
    let k = constants(cfg)?;
    Ok(CpValue::new(
        g1_family_closed(cfg.lambda_bs, k.c_hat),
        CpMethod::ClosedForm,
    ))
}

/// Coverage under `g2 = (1 + d^alpha)^-1`.
///
/// The exponent `2 pi lambda tau (1+x^a) x^(2-a) HyF1(K / x^a) / (a-2)`, with
/// `K = 1 + tau (1 + x^a)`, is rewritten as
/// `2 pi lambda tau (1+x^a) K^-b S(K / x^a) / (a-2)` where
/// `S(y) = y^b HyF1(y)` and `b = 1 - 2/a`. `S` is bounded, so the integrand is
/// evaluated without cancellation all the way down to `x = 0`.
pub fn cp_g2(cfg: &NetworkConfig, quad: &QuadratureSpec) -> Result<CpValue> {
    cfg.validate()?;
    let alpha = cfg.alpha;
    let tau = cfg.tau;
    let b = 1.0 - 2.0 / alpha;
    let scale = 2.0 * PI * cfg.lambda_bs * tau / (alpha - 2.0);
    let value = expect_serving(cfg.lambda_bs, 0.0, quad, |x| {
        let xa = x.powf(alpha);
        let big_k = 1.0 + tau * (1.0 + xa);
        let y = if xa == 0.0 { f64::INFINITY } else { big_k / xa };
        let exponent = scale * (1.0 + xa) * big_k.powf(-b) * hyp2f1_unit_scaled(b, y);
        (-exponent).exp()
    })?;
    Ok(CpValue::new(value, CpMethod::Quadrature))
}

/// Lower bound of the g2 coverage: the expectation of
/// `exp(-pi lambda c1 2^(alpha-2) (1 + d0)^2)` over the serving-distance
/// density restricted to `d0 >= 1`.
pub fn cp_g2_lower(cfg: &NetworkConfig, quad: &QuadratureSpec) -> Result<CpValue> {
    let k = constants(cfg)?;
    let rate = PI * cfg.lambda_bs * k.c1 * 2f64.powf(cfg.alpha - 2.0);
    let value = expect_serving(cfg.lambda_bs, 1.0, quad, |x| {
        (-rate * (1.0 + x) * (1.0 + x)).exp()
    })?;
    Ok(CpValue::new(value, CpMethod::Quadrature))
}

/// Upper bound of the g2 coverage, `exp(-pi lambda c_hat 2^-a) / (1 + c_hat 2^-a)`.
pub fn cp_g2_upper(cfg: &NetworkConfig) -> Result<CpValue> {
    let k = constants(cfg)?;
    let c = k.c_hat * 2f64.powf(-cfg.alpha);
    Ok(CpValue::new(
        (-PI * cfg.lambda_bs * c).exp() / (1.0 + c),
        CpMethod::ClosedForm,
    ))
}

/// Exact coverage for a pathloss model, using quadrature for g1.
pub fn cp_exact(
    cfg: &NetworkConfig,
    model: PathlossModel,
    quad: &QuadratureSpec,
) -> Result<CpValue> {
    match model {
        PathlossModel::Unbounded => cp_upm(cfg),
        PathlossModel::BoundedG1 => cp_g1_quadrature(cfg, quad),
        PathlossModel::BoundedG2 => cp_g2(cfg, quad),
        PathlossModel::MinBounded => Err(Error::NoAnalyticModel(model)),
    }
}
