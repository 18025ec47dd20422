//! Empirical check of the `lambda exp(-kappa lambda)` envelopes of the ASE bounds.

use super::ase::{ase_lower_rate_ratio, ase_upper_rate_ratio, lower_tail_q_ratio};
use super::optimize::optimal_density_closed;
use crate::error::Result;
use crate::model::DerivedConstants;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingEntry {
    pub lambda: f64,
    /// `lambda >= lambda0`.
    pub in_tail: bool,
    /// `A^U / (lambda exp(-kappa_U lambda))`
    pub upper_ratio: f64,
    /// `A^L / (lambda exp(-kappa_L lambda))`
    pub lower_ratio: f64,
    /// `Q2 / Q1` of the lower bound.
    pub q_ratio: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    pub kappa_upper: f64,
    pub kappa_lower: f64,
    /// Start of the tail, the closed-form optimal density.
    pub lambda0: f64,
    /// Largest `m` with `m lambda exp(-kappa_L lambda) <= A^L` on the tail.
    pub m: f64,
    /// Smallest `M` with `A^U <= M lambda exp(-kappa_U lambda)` on the tail.
    pub big_m: f64,
    pub entries: Vec<ScalingEntry>,
}

impl ScalingReport {
    pub fn all_pass(&self) -> bool {
        self.m > 0.0 && self.entries.iter().all(|e| e.pass)
    }
}

/// Extracts the envelope constants on the tail `lambda >= lambda0` of the grid.
/// When no grid point reaches the tail, the whole grid is used.
pub fn scaling_envelope_check(alpha: f64, tau: f64, lambda_grid: &[f64]) -> Result<ScalingReport> {
    let k = DerivedConstants::new(alpha, tau)?;
    let lambda0 = optimal_density_closed(alpha, tau)?;
    let upper_ratio = ase_upper_rate_ratio(&k);
    let mut entries: Vec<ScalingEntry> = lambda_grid
        .iter()
        .map(|&lambda| ScalingEntry {
            lambda,
            in_tail: lambda >= lambda0,
            upper_ratio,
            lower_ratio: ase_lower_rate_ratio(lambda, &k),
            q_ratio: lower_tail_q_ratio(lambda, &k),
            pass: false,
        })
        .collect();
    let any_tail = entries.iter().any(|e| e.in_tail);
    let tail = || entries.iter().filter(move |e| e.in_tail || !any_tail);
    let m = tail().map(|e| e.lower_ratio).fold(f64::INFINITY, f64::min);
    let big_m = tail().map(|e| e.upper_ratio).fold(f64::NEG_INFINITY, f64::max);
    for e in &mut entries {
        let envelope_ok = !(e.in_tail || !any_tail) || (e.lower_ratio >= m && e.upper_ratio <= big_m);
        e.pass = envelope_ok && e.lower_ratio > 0.0 && e.q_ratio > 0.0 && e.q_ratio < 0.5;
    }
    Ok(ScalingReport {
        kappa_upper: k.kappa_upper,
        kappa_lower: k.kappa_lower,
        lambda0,
        m,
        big_m,
        entries,
    })
}
