//! Independent numerical oracles shared by the integration tests.
#![allow(dead_code)]

/// Adaptive Simpson quadrature of `f` on `[a, b]` to relative tolerance `rel`.
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel: f64) -> f64 {
    // A 64-panel composite rule sets the scale for the absolute tolerance.
    let n = 64;
    let h = (b - a) / n as f64;
    let coarse: f64 = (0..n)
        .map(|i| {
            let x = a + h * i as f64;
            h / 6.0 * (f(x) + 4.0 * f(x + 0.5 * h) + f(x + h))
        })
        .sum();
    let tol = rel * coarse.abs().max(1e-300);
    (0..n)
        .map(|i| {
            let (lo, hi) = (a + h * i as f64, a + h * (i + 1) as f64);
            let m = 0.5 * (lo + hi);
            let (fa, fm, fb) = (f(lo), f(m), f(hi));
            let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
            simpson_rec(f, lo, hi, fa, fm, fb, whole, tol / n as f64, 40)
        })
        .sum()
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// `b * int_0^1 t^(b-1) / (1 + x t) dt`, integrated in `s = t^b`.
pub fn euler_hyp(b: f64, x: f64) -> f64 {
    let f = |s: f64| 1.0 / (1.0 + x * s.powf(1.0 / b));
    // Split where x t = 1 so the knee is resolved on both sides.
    let knee = if x > 1.0 { x.powf(-b) } else { 1.0 };
    let mut total = simpson(&f, 0.0, knee, 1e-13);
    if knee < 1.0 {
        total += simpson(&f, knee, 1.0, 1e-13);
    }
    total
}

/// `(2 / sqrt(pi)) int_x^inf exp(-t^2) dt`.
pub fn erfc_oracle(x: f64) -> f64 {
    let f = |t: f64| (-t * t).exp();
    let c = 2.0 / std::f64::consts::PI.sqrt();
    if x >= 0.0 {
        let upper = x + 40.0 / (1.0 + x);
        c * simpson(&f, x, upper.max(x + 8.0), 1e-14)
    } else {
        2.0 - erfc_oracle(-x)
    }
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Single-peaked along the sequence: no rise after the first fall beyond `tol`.
pub fn single_peaked(v: &[f64], tol: f64) -> bool {
    let mut falling = false;
    for w in v.windows(2) {
        if w[1] < w[0] - tol {
            falling = true;
        } else if falling && w[1] > w[0] + tol {
            return false;
        }
    }
    true
}
