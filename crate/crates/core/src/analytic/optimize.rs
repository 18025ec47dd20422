//! Density that maximizes the area spectral efficiency.

use super::ase::{ase_exact, ase_upper};
use super::quadrature::QuadratureSpec;
use crate::error::{Error, Result};
use crate::model::{DerivedConstants, NetworkConfig, PathlossModel};

/// Maximizer of the ASE upper bound, `2^alpha / (pi c_hat)`.
pub fn optimal_density_closed(alpha: f64, tau: f64) -> Result<f64> {
    let k = DerivedConstants::new(alpha, tau)?;
    Ok(1.0 / k.kappa_upper)
}

/// Curve whose maximizer is sought.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AseObjective {
    Exact(PathlossModel),
    UpperBound,
}

/// Search bracket in BS/m^2 and relative tolerance on the maximizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensitySearch {
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    pub rel_tol: f64,
}

impl Default for DensitySearch {
    fn default() -> Self {
        Self {
            lambda_lo: 1e-4,
            lambda_hi: 10.0,
            rel_tol: 1e-6,
        }
    }
}

const SCAN_POINTS: usize = 48;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
/// Returns `(argmax, max)`.
pub fn golden_section_max<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while (b - a) > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x)?;
    Ok((x, fx))
}

/// Numerical maximizer of the chosen ASE curve over the search bracket.
///
/// A coarse log-spaced scan locates the peak; golden-section search in
/// `ln(lambda)` then refines it, so the tolerance is relative. Fails with
/// [`Error::NoInteriorMaximum`] when the best scan point is a bracket edge.
pub fn optimal_density_numeric(
    template: &NetworkConfig,
    objective: AseObjective,
    search: &DensitySearch,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let DensitySearch {
        lambda_lo,
        lambda_hi,
        rel_tol,
    } = *search;
    if !(lambda_lo > 0.0 && lambda_hi > lambda_lo) {
        return Err(Error::Domain {
            name: "lambda_lo",
            value: lambda_lo,
            reason: "bracket needs 0 < lambda_lo < lambda_hi",
        });
    }
    let eval = |ln_lambda: f64| -> Result<f64> {
        let cfg = template.with_lambda(ln_lambda.exp());
        match objective {
            AseObjective::Exact(model) => ase_exact(&cfg, model, quad).map(|a| a.value),
            AseObjective::UpperBound => ase_upper(&cfg).map(|a| a.value),
        }
    };
    let (l0, l1) = (lambda_lo.ln(), lambda_hi.ln());
    let step = (l1 - l0) / (SCAN_POINTS - 1) as f64;
    let mut best = (0, f64::NEG_INFINITY);
    for i in 0..SCAN_POINTS {
        let v = eval(l0 + step * i as f64)?;
        if v > best.1 {
            best = (i, v);
        }
    }
    if best.0 == 0 || best.0 == SCAN_POINTS - 1 {
        return Err(Error::NoInteriorMaximum {
            lo: lambda_lo,
            hi: lambda_hi,
            at: (l0 + step * best.0 as f64).exp(),
        });
    }
    let lo = l0 + step * (best.0 - 1) as f64;
    let hi = l0 + step * (best.0 + 1) as f64;
    let (ln_star, _) = golden_section_max(eval, lo, hi, rel_tol)?;
    Ok(ln_star.exp())
}
