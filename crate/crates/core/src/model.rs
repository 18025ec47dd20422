//! Network configuration, pathloss models and the interference constants
//! that every coverage expression is written in terms of.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::specfun::{hyf1, hyf2, HypParams};

/// Converts a dB quantity to linear scale.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Downlink network parameters.
///
/// `p_bs` never influences an SIR; it is carried so that the invariance can
/// be checked instead of assumed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkConfig {
    /// Base-station density in BS/m^2.
    pub lambda_bs: f64,
    /// Pathloss exponent, > 2.
    pub alpha: f64,
    /// SIR threshold, linear.
    pub tau: f64,
    /// Transmit power in mW.
    pub p_bs: f64,
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            reason: "must be finite and > 0",
        })
    }
}

impl NetworkConfig {
    pub fn new(lambda_bs: f64, alpha: f64, tau: f64, p_bs: f64) -> Result<Self> {
        let cfg = Self {
            lambda_bs,
            alpha,
            tau,
            p_bs,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        positive("lambda_bs", self.lambda_bs)?;
        if !(self.alpha > 2.0 && self.alpha.is_finite()) {
            return Err(Error::Domain {
                name: "alpha",
                value: self.alpha,
                reason: "pathloss exponent must be finite and > 2",
            });
        }
        positive("tau", self.tau)?;
        positive("p_bs", self.p_bs)
    }

    /// Same configuration at another density.
    pub fn with_lambda(&self, lambda_bs: f64) -> Self {
        Self { lambda_bs, ..*self }
    }

    pub fn with_p_bs(&self, p_bs: f64) -> Self {
        Self { p_bs, ..*self }
    }

    /// Spectral efficiency of a covered link, `log2(1 + tau)`.
    pub fn rate(&self) -> f64 {
        self.tau.ln_1p() / std::f64::consts::LN_2
    }
}

/// Distance-dependent power gain `g(d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathlossModel {
    /// `d^-alpha`, singular at the origin.
    Unbounded,
    /// `(1 + d)^-alpha`.
    BoundedG1,
    /// `(1 + d^alpha)^-1`.
    BoundedG2,
    /// `min(1, d^-alpha)`.
    MinBounded,
}

impl PathlossModel {
    pub const ALL: [PathlossModel; 4] = [
        PathlossModel::Unbounded,
        PathlossModel::BoundedG1,
        PathlossModel::BoundedG2,
        PathlossModel::MinBounded,
    ];

    /// Short tag used on the command line and in CSV output.
    pub fn tag(&self) -> &'static str {
        match self {
            PathlossModel::Unbounded => "upm",
            PathlossModel::BoundedG1 => "g1",
            PathlossModel::BoundedG2 => "g2",
            PathlossModel::MinBounded => "minb",
        }
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self, PathlossModel::Unbounded)
    }

    /// Gain without domain checks. `Unbounded` returns `inf` at `d = 0`.
    #[inline]
    pub(crate) fn gain_unchecked(&self, alpha: f64, d: f64) -> f64 {
        match self {
            PathlossModel::Unbounded => d.powf(-alpha),
            PathlossModel::BoundedG1 => (1.0 + d).powf(-alpha),
            PathlossModel::BoundedG2 => 1.0 / (1.0 + d.powf(alpha)),
            PathlossModel::MinBounded => {
                if d <= 1.0 {
                    1.0
                } else {
                    d.powf(-alpha)
                }
            }
        }
    }

    /// Pathloss gain at distance `d` metres.
    pub fn gain(&self, alpha: f64, d: f64) -> Result<f64> {
        if !(d >= 0.0) {
            return Err(Error::Domain {
                name: "d",
                value: d,
                reason: "distance must be >= 0",
            });
        }
        if *self == PathlossModel::Unbounded && d == 0.0 {
            return Err(Error::Domain {
                name: "d",
                value: d,
                reason: "unbounded pathloss is singular at d = 0",
            });
        }
        Ok(self.gain_unchecked(alpha, d))
    }
}

impl fmt::Display for PathlossModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for PathlossModel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        PathlossModel::ALL
            .iter()
            .copied()
            .find(|m| m.tag().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown pathloss model '{s}' (expected upm, g1, g2 or minb)"))
    }
}

/// Pathloss gain; see [`PathlossModel::gain`].
pub fn pathloss_gain(model: PathlossModel, alpha: f64, d: f64) -> Result<f64> {
    model.gain(alpha, d)
}

/// Constants derived from `(alpha, tau)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    pub alpha: f64,
    pub tau: f64,
    pub delta: f64,
    /// `2 tau HyF1(tau) / (alpha - 2)`
    pub c1: f64,
    /// `2 tau HyF2(tau) / (alpha - 1)`
    pub c2: f64,
    /// `c1 - c2`
    pub c_hat: f64,
    /// Decay rate of the upper envelope, `pi 2^-alpha c_hat`.
    pub kappa_upper: f64,
    /// Decay rate of the lower envelope, `pi (1 + 2^alpha c1)`.
    pub kappa_lower: f64,
}

impl DerivedConstants {
    pub fn new(alpha: f64, tau: f64) -> Result<Self> {
        positive("tau", tau)?;
        let p = HypParams::from_alpha(alpha)?;
        let c1 = 2.0 * tau * hyf1(tau, p)? / (alpha - 2.0);
        let c2 = 2.0 * tau * hyf2(tau, p)? / (alpha - 1.0);
        let c_hat = c1 - c2;
        let two_alpha = 2f64.powf(alpha);
        Ok(Self {
            alpha,
            tau,
            delta: p.delta(),
            c1,
            c2,
            c_hat,
            kappa_upper: PI * c_hat / two_alpha,
            kappa_lower: PI * (1.0 + two_alpha * c1),
        })
    }

    pub fn for_config(cfg: &NetworkConfig) -> Result<Self> {
        Self::new(cfg.alpha, cfg.tau)
    }
}

/// Derived constants for `(alpha, tau)`; see [`DerivedConstants::new`].
pub fn derived_constants(alpha: f64, tau: f64) -> Result<DerivedConstants> {
    DerivedConstants::new(alpha, tau)
}

/// Distribution of the distance to the nearest base station,
/// `f(x) = 2 pi lambda x exp(-pi lambda x^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ServingDistanceDist {
    pub lambda_bs: f64,
}

impl ServingDistanceDist {
    pub fn new(lambda_bs: f64) -> Result<Self> {
        positive("lambda_bs", lambda_bs)?;
        Ok(Self { lambda_bs })
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let pl = PI * self.lambda_bs;
        2.0 * pl * x * (-pl * x * x).exp()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        -(-PI * self.lambda_bs * x * x).exp_m1()
    }

    pub fn mean(&self) -> f64 {
        0.5 / self.lambda_bs.sqrt()
    }
}
