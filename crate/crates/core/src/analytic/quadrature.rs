//! Quadrature engine for expectations over the serving distance.
//!
//! Every expectation `E[h(d0); d0 >= x_min]` with
//! `d0 ~ 2 pi lambda x exp(-pi lambda x^2)` is rewritten with
//! `u = pi lambda (x^2 - x_min^2)` as
//!
//! ```text
//! exp(-pi lambda x_min^2) * int_0^inf exp(-u) h(sqrt(x_min^2 + u/(pi lambda))) du
//! ```
//!
//! so the density enters only through the integrand. Two rules are offered:
//! Gauss-Laguerre in `u` with order doubling, and adaptive Gauss-Kronrod in
//! `v = sqrt(u)` on a truncated range. The adaptive rule is the default since
//! integrands that depend on `sqrt(u)` make Laguerre converge slowly.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

use nalgebra::{DMatrix, SymmetricEigen};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureRule {
    GaussLaguerreTransformed,
    Adaptive,
}

/// Quadrature settings.
///
/// For [`QuadratureRule::GaussLaguerreTransformed`], `nodes` is the starting
/// order, doubled until two successive orders agree to `rel_tol`. For
/// [`QuadratureRule::Adaptive`], `nodes` is the number of initial panels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rule: QuadratureRule,
    pub nodes: usize,
    pub rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rule: QuadratureRule::Adaptive,
            nodes: 16,
            rel_tol: 1e-11,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rule: QuadratureRule, nodes: usize, rel_tol: f64) -> Result<Self> {
        if nodes < 16 {
            return Err(Error::Domain {
                name: "nodes",
                value: nodes as f64,
                reason: "at least 16 nodes are required",
            });
        }
        if !(rel_tol > 0.0 && rel_tol <= 1e-7) {
            return Err(Error::Domain {
                name: "rel_tol",
                value: rel_tol,
                reason: "relative tolerance must lie in (0, 1e-7]",
            });
        }
        Ok(Self {
            rule,
            nodes,
            rel_tol,
        })
    }

    pub fn adaptive(rel_tol: f64) -> Result<Self> {
        Self::new(QuadratureRule::Adaptive, 16, rel_tol)
    }

    pub fn laguerre(nodes: usize, rel_tol: f64) -> Result<Self> {
        Self::new(QuadratureRule::GaussLaguerreTransformed, nodes, rel_tol)
    }
}

const MAX_LAGUERRE_ORDER: usize = 256;
const MAX_PANELS: usize = 4000;
/// Upper limit of `v`; the neglected weight is `exp(-V_MAX^2)` ~ 1e-111.
const V_MAX: f64 = 16.0;
const ABS_FLOOR: f64 = 1e-300;

/// `E[h(d0) * 1{d0 >= x_min}]` for the nearest-BS distance at density `lambda`.
pub fn expect_serving<F>(lambda: f64, x_min: f64, spec: &QuadratureSpec, h: F) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let pl = PI * lambda;
    let x2 = x_min * x_min;
    let prefactor = (-pl * x2).exp();
    if prefactor == 0.0 {
        return Ok(0.0);
    }
    let inner = match spec.rule {
        QuadratureRule::GaussLaguerreTransformed => {
            laguerre_escalating(spec.nodes, spec.rel_tol, |u| h((x2 + u / pl).sqrt()))?
        }
        QuadratureRule::Adaptive => {
            let g = |v: f64| 2.0 * v * (-v * v).exp() * h((x2 + v * v / pl).sqrt());
            gauss_kronrod(g, 0.0, V_MAX, spec.nodes, spec.rel_tol, ABS_FLOOR)?.0
        }
    };
    Ok(prefactor * inner)
}

// ---------------------------------------------------------------------------
// Gauss-Laguerre

static LAGUERRE_CACHE: Lazy<Mutex<HashMap<usize, Arc<(Vec<f64>, Vec<f64>)>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Nodes and weights of the `n`-point Gauss-Laguerre rule (weight `e^-x`),
/// from the eigen-decomposition of the Jacobi matrix.
pub fn laguerre_rule(n: usize) -> Arc<(Vec<f64>, Vec<f64>)> {
    if let Some(rule) = LAGUERRE_CACHE.lock().unwrap().get(&n) {
        return Arc::clone(rule);
    }
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        jacobi[(i, i)] = (2 * i + 1) as f64;
        if i + 1 < n {
            jacobi[(i, i + 1)] = (i + 1) as f64;
            jacobi[(i + 1, i)] = (i + 1) as f64;
        }
    }
    let eig = SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| (eig.eigenvalues[k], eig.eigenvectors[(0, k)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let rule = Arc::new(pairs.into_iter().unzip());
    LAGUERRE_CACHE
        .lock()
        .unwrap()
        .insert(n, Arc::clone(&rule));
    rule
}

fn laguerre_sum<F: Fn(f64) -> f64>(n: usize, f: &F) -> f64 {
    let rule = laguerre_rule(n);
    rule.0.iter().zip(&rule.1).map(|(&x, &w)| w * f(x)).sum()
}

fn laguerre_escalating<F: Fn(f64) -> f64>(start: usize, rel_tol: f64, f: F) -> Result<f64> {
    let mut n = start;
    let mut prev = laguerre_sum(n, &f);
    let mut evaluations = n;
    let mut last_diff = f64::INFINITY;
    loop {
        let next_n = 2 * n;
        if next_n > MAX_LAGUERRE_ORDER {
            return Err(Error::NonConvergence {
                estimate: prev,
                error: last_diff,
                evaluations,
            });
        }
        let next = laguerre_sum(next_n, &f);
        evaluations += next_n;
        let diff = (next - prev).abs();
        if diff <= rel_tol * next.abs() || diff <= ABS_FLOOR {
            return Ok(next);
        }
        last_diff = diff;
        n = next_n;
        prev = next;
    }
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod (7/15)

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One 15-point Kronrod panel with the QUADPACK error estimate.
fn kronrod_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = kronrod * half;
    let asc = asc * half.abs();
    let abs_sum = abs_sum * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    if abs_sum > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * abs_sum);
    }
    Panel {
        a,
        b,
        value,
        error,
    }
}

/// Globally adaptive Gauss-Kronrod integration of `f` over `[a, b]`.
///
/// Returns `(value, error_estimate)`; stops when the summed error estimate is
/// below `max(abs_tol, rel_tol * |value|)`.
pub fn gauss_kronrod<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    initial_panels: usize,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<(f64, f64)> {
    let n0 = initial_panels.max(1);
    let width = (b - a) / n0 as f64;
    let mut heap: BinaryHeap<Panel> = (0..n0)
        .map(|i| {
            let lo = a + width * i as f64;
            let hi = if i + 1 == n0 { b } else { lo + width };
            kronrod_panel(&f, lo, hi)
        })
        .collect();
    loop {
        let (value, error) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok((value, error));
        }
        if heap.len() >= MAX_PANELS {
            return Err(Error::NonConvergence {
                estimate: value,
                error,
                evaluations: heap.len() * 15,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel cannot be split further in floating point.
            return Err(Error::NonConvergence {
                estimate: value,
                error,
                evaluations: heap.len() * 15,
            });
        }
        heap.push(kronrod_panel(&f, worst.a, mid));
        heap.push(kronrod_panel(&f, mid, worst.b));
    }
}
