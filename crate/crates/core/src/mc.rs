//! Monte Carlo simulation of the downlink: base stations from a Poisson point
//! process on a disk around a typical user at the origin, nearest-BS
//! association, Rayleigh fading.
//!
//! Points are generated in order of distance: the values `pi lambda r_i^2`
//! of a homogeneous Poisson process are the arrival times of a unit-rate
//! Poisson process, so cumulative `Exp(1)` draws give the radii, and an
//! independent uniform angle gives the position. The number of points that
//! land inside radius `R` is Poisson(`lambda pi R^2`) and their positions are
//! uniform on the disk. The nearest BS is always the first point, and
//! enlarging the window with the same random stream keeps every inner point,
//! only appending points further out.
//!
//! Every trial owns a ChaCha substream selected by its index, so results do
//! not depend on how trials are scheduled across threads.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{NetworkConfig, PathlossModel};

/// Default number of typical cell radii spanned by the window.
pub const DEFAULT_WINDOW_K: f64 = 24.0;
pub const DEFAULT_TRUNCATION_EPS: f64 = 1e-3;
pub const DEFAULT_TRIALS: usize = 100_000;
const MAX_RESAMPLES: usize = 64;

/// Simulation settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimParams {
    /// Radius of the simulated disk in metres.
    pub window_radius: f64,
    pub trials: usize,
    pub seed: u64,
    pub truncation_eps: f64,
}

/// Window radius `max(k / sqrt(pi lambda), eps^(-1/(alpha-2)))`.
///
/// The first term holds `k^2` base stations on average and drops a fraction
/// of order `k^(2-alpha)` of the interference. For bounded models the
/// second term bounds the far-field interference lost outside the window,
/// which scales as `R^(2-alpha)` against a density-independent near field,
/// to the order of `eps`.
pub fn window_radius(
    lambda: f64,
    alpha: f64,
    model: PathlossModel,
    k: f64,
    truncation_eps: f64,
) -> f64 {
    let cells = k / (PI * lambda).sqrt();
    if model.is_bounded() {
        cells.max(truncation_eps.powf(-1.0 / (alpha - 2.0)))
    } else {
        cells
    }
}

impl SimParams {
    pub fn new(window_radius: f64, trials: usize, seed: u64, truncation_eps: f64) -> Result<Self> {
        let p = Self {
            window_radius,
            trials,
            seed,
            truncation_eps,
        };
        p.validate()?;
        Ok(p)
    }

    /// Settings with the window sized by [`window_radius`].
    pub fn for_config(
        cfg: &NetworkConfig,
        model: PathlossModel,
        window_k: f64,
        trials: usize,
        seed: u64,
    ) -> Result<Self> {
        if !(window_k > 0.0) {
            return Err(Error::Domain {
                name: "window_k",
                value: window_k,
                reason: "must be > 0",
            });
        }
        let r = window_radius(cfg.lambda_bs, cfg.alpha, model, window_k, DEFAULT_TRUNCATION_EPS);
        Self::new(r, trials, seed, DEFAULT_TRUNCATION_EPS)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::Domain {
                name: "trials",
                value: self.trials as f64,
                reason: "at least one trial is required",
            });
        }
        if !(self.window_radius > 0.0 && self.window_radius.is_finite()) {
            return Err(Error::Domain {
                name: "window_radius",
                value: self.window_radius,
                reason: "must be finite and > 0",
            });
        }
        if !(self.truncation_eps > 0.0 && self.truncation_eps <= 1e-2) {
            return Err(Error::Domain {
                name: "truncation_eps",
                value: self.truncation_eps,
                reason: "must lie in (0, 1e-2]",
            });
        }
        Ok(())
    }

    pub fn with_window_radius(&self, window_radius: f64) -> Self {
        Self {
            window_radius,
            ..*self
        }
    }
}

/// Random stream of trial `index` under `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// One snapshot of the network seen from the typical user.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    /// Base-station positions in metres, sorted by distance to the origin.
    pub bs_points: Vec<(f64, f64)>,
    pub serving_index: usize,
    pub serving_distance: f64,
    /// Fading power gain from each base station, `Exp(1)`.
    pub fading: Vec<f64>,
    distances: Vec<f64>,
}

impl Realization {
    pub fn len(&self) -> usize {
        self.bs_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bs_points.is_empty()
    }

    /// Builds a realization from explicit positions and fading gains; the
    /// serving BS is the one nearest to the origin.
    pub fn from_points(bs_points: Vec<(f64, f64)>, fading: Vec<f64>) -> Result<Self> {
        if bs_points.is_empty() || bs_points.len() != fading.len() {
            return Err(Error::Domain {
                name: "bs_points",
                value: bs_points.len() as f64,
                reason: "need a non-empty point list with one fading gain per point",
            });
        }
        if let Some(&h) = fading.iter().find(|h| !(**h > 0.0)) {
            return Err(Error::Domain {
                name: "fading",
                value: h,
                reason: "fading gains must be > 0",
            });
        }
        let distances: Vec<f64> = bs_points.iter().map(|&(x, y)| x.hypot(y)).collect();
        let (serving_index, &serving_distance) = distances
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("non-empty");
        Ok(Self {
            bs_points,
            serving_index,
            serving_distance,
            fading,
            distances,
        })
    }

    pub fn distances(&self) -> &[f64] {
        &self.distances
    }

    /// Received signal and summed interference, both per unit transmit power.
    pub fn signal_interference(&self, model: PathlossModel, alpha: f64) -> Result<(f64, f64)> {
        let signal = model.gain(alpha, self.serving_distance)? * self.fading[self.serving_index];
        let mut interference = 0.0;
        for (i, (&d, &h)) in self.distances.iter().zip(&self.fading).enumerate() {
            if i != self.serving_index {
                interference += model.gain(alpha, d)? * h;
            }
        }
        Ok((signal, interference))
    }
}

/// Samples base stations on the window disk, resampling when it is empty.
pub fn sample_network<R: Rng + ?Sized>(
    cfg: &NetworkConfig,
    params: &SimParams,
    rng: &mut R,
) -> Result<Realization> {
    let pl = PI * cfg.lambda_bs;
    let area = pl * params.window_radius * params.window_radius;
    for _ in 0..MAX_RESAMPLES {
        let mut points = Vec::new();
        let mut fading = Vec::new();
        let mut distances = Vec::new();
        let mut cum = 0.0;
        loop {
            let e: f64 = Exp1.sample(rng);
            cum += e;
            if cum > area {
                break;
            }
            let r = (cum / pl).sqrt();
            let theta = 2.0 * PI * rng.random::<f64>();
            let h: f64 = Exp1.sample(rng);
            points.push((r * theta.cos(), r * theta.sin()));
            fading.push(h);
            distances.push(r);
        }
        if !points.is_empty() {
            let serving_distance = distances[0];
            debug_assert!(distances.iter().all(|&d| d >= serving_distance));
            return Ok(Realization {
                bs_points: points,
                serving_index: 0,
                serving_distance,
                fading,
                distances,
            });
        }
    }
    Err(Error::ResampleLimit {
        attempts: MAX_RESAMPLES,
        expected_count: area,
    })
}

/// SIR of the typical user; `+inf` when there is no interferer.
///
/// Transmit power is common to every term and never enters the computation.
pub fn sir_sample(r: &Realization, model: PathlossModel, alpha: f64) -> Result<f64> {
    let (s, i) = r.signal_interference(model, alpha)?;
    Ok(if i == 0.0 { f64::INFINITY } else { s / i })
}

/// Coverage event `signal > tau * interference`; true for an empty
/// interferer set and any finite threshold.
#[inline]
fn covered(signal: f64, interference: f64, tau: f64) -> bool {
    signal > tau * interference
}

/// Draws exactly the same sequence as [`sample_network`] but stops as soon
/// as the accumulated interference rules out coverage.
fn trial_covered<R: Rng + ?Sized>(
    cfg: &NetworkConfig,
    model: PathlossModel,
    params: &SimParams,
    rng: &mut R,
) -> Result<bool> {
    let pl = PI * cfg.lambda_bs;
    let area = pl * params.window_radius * params.window_radius;
    let alpha = cfg.alpha;
    for _ in 0..MAX_RESAMPLES {
        let e: f64 = Exp1.sample(rng);
        let mut cum = e;
        if cum > area {
            continue;
        }
        let r0 = (cum / pl).sqrt();
        let _theta = rng.random::<f64>();
        let h0: f64 = Exp1.sample(rng);
        let signal = model.gain(alpha, r0)? * h0;
        let mut interference = 0.0;
        loop {
            let e: f64 = Exp1.sample(rng);
            cum += e;
            if cum > area {
                return Ok(covered(signal, interference, cfg.tau));
            }
            let r = (cum / pl).sqrt();
            let _theta = rng.random::<f64>();
            let h: f64 = Exp1.sample(rng);
            interference += model.gain_unchecked(alpha, r) * h;
            if !covered(signal, interference, cfg.tau) {
                return Ok(false);
            }
        }
    }
    Err(Error::ResampleLimit {
        attempts: MAX_RESAMPLES,
        expected_count: area,
    })
}

/// Whether trial `index` is covered, via the full realization.
pub fn trial_covered_full(
    cfg: &NetworkConfig,
    model: PathlossModel,
    params: &SimParams,
    index: u64,
) -> Result<bool> {
    let mut rng = trial_rng(params.seed, index);
    let r = sample_network(cfg, params, &mut rng)?;
    let (s, i) = r.signal_interference(model, cfg.alpha)?;
    Ok(covered(s, i, cfg.tau))
}

/// Whether trial `index` is covered, via the early-exit path used by
/// [`estimate_cp`].
pub fn trial_covered_fast(
    cfg: &NetworkConfig,
    model: PathlossModel,
    params: &SimParams,
    index: u64,
) -> Result<bool> {
    let mut rng = trial_rng(params.seed, index);
    trial_covered(cfg, model, params, &mut rng)
}

/// Monte Carlo estimate with its Bernoulli or scaled-Bernoulli uncertainty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub ci95: (f64, f64),
    pub trials: usize,
}

impl SimEstimate {
    pub fn bernoulli(successes: u64, trials: usize) -> Self {
        let n = trials as f64;
        let mean = successes as f64 / n;
        let stderr = (mean * (1.0 - mean) / n).sqrt();
        Self {
            mean,
            stderr,
            ci95: (
                (mean - 1.96 * stderr).max(0.0),
                (mean + 1.96 * stderr).min(1.0),
            ),
            trials,
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            mean: self.mean * factor,
            stderr: self.stderr * factor,
            ci95: (self.ci95.0 * factor, self.ci95.1 * factor),
            trials: self.trials,
        }
    }

    /// Standardized gap to a predicted coverage probability. The standard
    /// error is the larger of the empirical one and the one implied by the
    /// prediction, so an all-miss sample still gets a meaningful score.
    pub fn z_score(&self, predicted: f64) -> f64 {
        let diff = self.mean - predicted;
        if diff == 0.0 {
            return 0.0;
        }
        let model_se = (predicted * (1.0 - predicted) / self.trials as f64).max(0.0).sqrt();
        diff / self.stderr.max(model_se)
    }

    pub fn agrees_with(&self, predicted: f64, sigmas: f64) -> bool {
        self.z_score(predicted).abs() <= sigmas
    }
}

/// Fraction of trials with `SIR > tau`.
pub fn estimate_cp(
    cfg: &NetworkConfig,
    model: PathlossModel,
    params: &SimParams,
) -> Result<SimEstimate> {
    cfg.validate()?;
    params.validate()?;
    let successes = (0..params.trials as u64)
        .into_par_iter()
        .map(|i| trial_covered_fast(cfg, model, params, i).map(u64::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(SimEstimate::bernoulli(successes, params.trials))
}

/// `lambda log2(1 + tau)` times the coverage estimate.
pub fn estimate_ase(
    cfg: &NetworkConfig,
    model: PathlossModel,
    params: &SimParams,
) -> Result<SimEstimate> {
    Ok(estimate_cp(cfg, model, params)?.scaled(cfg.lambda_bs * cfg.rate()))
}
