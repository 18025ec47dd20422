//! Special functions used by the coverage formulas.
//!
//! * [`erfc`] and [`erfcx`] use W. J. Cody's rational Chebyshev
//!   approximations, with the Gaussian factor split into two exponentials so
//!   the `exp(-x^2)` term keeps full relative precision.
//! * The hypergeometric families needed here all have the form
//!   `2F1(1, b; b+1; -x)` with `b` in `(0, 1)`. For `x <= 1` they are summed
//!   after a Pfaff transformation (argument `x/(1+x) <= 1/2`, so the series
//!   converges geometrically); for `x > 1` the exact connection formula
//!
//!   ```text
//!   2F1(1, b; b+1; -x) = b*pi/sin(b*pi) * x^(-b) - b/(1-b) * x^(-1) * 2F1(1, 1-b; 2-b; -1/x)
//!   ```
//!
//!   maps the argument back into the unit interval. The same identity gives
//!   the scaled form `x^b * 2F1(...)`, which stays finite as `x -> inf`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const ONE_OVER_SQRT_PI: f64 = 0.564_189_583_547_756_3;
const ERF_THRESHOLD: f64 = 0.46875;

const A: [f64; 5] = [
    3.161_123_743_870_565_6,
    1.138_641_541_510_501_6e2,
    3.774_852_376_853_020_2e2,
    3.209_377_589_138_469_5e3,
    1.857_777_061_846_031_5e-1,
];
const B: [f64; 4] = [
    2.360_129_095_234_412_1e1,
    2.440_246_379_344_441_7e2,
    1.282_616_526_077_372_3e3,
    2.844_236_833_439_170_6e3,
];
const C: [f64; 9] = [
    5.641_884_969_886_700_9e-1,
    8.883_149_794_388_375_9,
    6.611_919_063_714_163e1,
    2.986_351_381_974_001_3e2,
    8.819_522_212_417_691e2,
    1.712_047_612_634_070_6e3,
    2.051_078_377_826_071_5e3,
    1.230_339_354_797_997_2e3,
    2.153_115_354_744_038_5e-8,
];
const D: [f64; 8] = [
    1.574_492_611_070_983_5e1,
    1.176_939_508_913_125e2,
    5.371_811_018_620_098_6e2,
    1.621_389_574_566_690_2e3,
    3.290_799_235_733_459_6e3,
    4.362_619_090_143_247e3,
    3.439_367_674_143_721_6e3,
    1.230_339_354_803_749_4e3,
];
const P: [f64; 6] = [
    3.053_266_349_612_323_4e-1,
    3.603_448_999_498_044_4e-1,
    1.257_817_261_112_292_5e-1,
    1.608_378_514_874_227_7e-2,
    6.587_491_615_298_378e-4,
    1.631_538_713_730_209_8e-2,
];
const Q: [f64; 5] = [
    2.568_520_192_289_822_4,
    1.872_952_849_923_460_5,
    5.279_051_029_514_284e-1,
    6.051_834_131_244_132e-2,
    2.335_204_976_268_691_8e-3,
];

/// `erf(x) / x` for `|x| <= 0.46875`, as a function of `z = x^2`.
fn erf_small(z: f64) -> f64 {
    let mut num = A[4] * z;
    let mut den = z;
    for i in 0..3 {
        num = (num + A[i]) * z;
        den = (den + B[i]) * z;
    }
    (num + A[3]) / (den + B[3])
}

/// `exp(y^2) * erfc(y)` for `0.46875 < y`.
fn erfcx_tail(y: f64) -> f64 {
    if y <= 4.0 {
        let mut num = C[8] * y;
        let mut den = y;
        for i in 0..7 {
            num = (num + C[i]) * y;
            den = (den + D[i]) * y;
        }
        (num + C[7]) / (den + D[7])
    } else if y < 1e8 {
        let z = 1.0 / (y * y);
        let mut num = P[5] * z;
        let mut den = z;
        for i in 0..4 {
            num = (num + P[i]) * z;
            den = (den + Q[i]) * z;
        }
        let r = z * (num + P[4]) / (den + Q[4]);
        (ONE_OVER_SQRT_PI - r) / y
    } else {
        ONE_OVER_SQRT_PI / y
    }
}

/// `exp(-y^2)` evaluated as a product of two exponentials so that the
/// rounding error of `y*y` does not get amplified.
fn exp_neg_sq(y: f64) -> f64 {
    let head = (y * 16.0).trunc() / 16.0;
    let del = (y - head) * (y + head);
    (-head * head).exp() * (-del).exp()
}

fn exp_pos_sq(y: f64) -> f64 {
    let head = (y * 16.0).trunc() / 16.0;
    let del = (y - head) * (y + head);
    (head * head).exp() * del.exp()
}

/// Error function.
pub fn erf(x: f64) -> f64 {
    let y = x.abs();
    if y <= ERF_THRESHOLD {
        return x * erf_small(y * y);
    }
    let e = if y >= 26.6 {
        0.0
    } else {
        erfcx_tail(y) * exp_neg_sq(y)
    };
    if x < 0.0 {
        e - 1.0
    } else {
        1.0 - e
    }
}

/// Complementary error function `(2/sqrt(pi)) * int_x^inf exp(-t^2) dt`.
pub fn erfc(x: f64) -> f64 {
    let y = x.abs();
    if y <= ERF_THRESHOLD {
        return 1.0 - x * erf_small(y * y);
    }
    let e = if y >= 26.6 {
        0.0
    } else {
        erfcx_tail(y) * exp_neg_sq(y)
    };
    if x < 0.0 {
        2.0 - e
    } else {
        e
    }
}

/// Scaled complementary error function `exp(x^2) * erfc(x)`.
///
/// Finite for every `x >= -26.6`; overflows to `+inf` below that.
pub fn erfcx(x: f64) -> f64 {
    let y = x.abs();
    if y <= ERF_THRESHOLD {
        let z = y * y;
        return z.exp() * (1.0 - x * erf_small(z));
    }
    if x >= 0.0 {
        return erfcx_tail(y);
    }
    if x < -26.6 {
        return f64::INFINITY;
    }
    2.0 * exp_pos_sq(y) - erfcx_tail(y)
}

/// Parameter `delta = 2/alpha` shared by both hypergeometric families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams {
    delta: f64,
}

impl HypParams {
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::Domain {
                name: "delta",
                value: delta,
                reason: "must lie in (0, 1)",
            });
        }
        Ok(Self { delta })
    }

    pub fn from_alpha(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Self::new(2.0 / alpha)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Second parameter of `HyF1`, i.e. `1 - delta`.
    pub fn b1(&self) -> f64 {
        1.0 - self.delta
    }

    /// Second parameter of `HyF2`, i.e. `1 - delta/2`.
    pub fn b2(&self) -> f64 {
        1.0 - 0.5 * self.delta
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 2.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "alpha",
            value: alpha,
            reason: "pathloss exponent must be finite and > 2",
        })
    }
}

fn check_arg(x: f64) -> Result<()> {
    if x >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "x",
            value: x,
            reason: "hypergeometric argument must be >= 0",
        })
    }
}

/// Pfaff-transformed series for `2F1(1, b; b+1; -x)`, `0 <= x <= 1`:
/// `(1+x)^-1 * sum_k k!/(b+1)_k * w^k` with `w = x/(1+x)`.
fn pfaff_series(b: f64, x: f64) -> f64 {
    let w = x / (1.0 + x);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    while term > 1e-17 * sum {
        term *= (k + 1.0) / (b + 1.0 + k) * w;
        sum += term;
        k += 1.0;
    }
    sum / (1.0 + x)
}

/// Leading coefficient `b*pi/sin(b*pi)` of the large-argument expansion.
fn reflection_coeff(b: f64) -> f64 {
    b * PI / (b * PI).sin()
}

/// `2F1(1, b; b+1; -x)` for `b` in `(0, 1)` and `x >= 0`.
///
/// Decreases from 1 at `x = 0` towards `b*pi/sin(b*pi) * x^-b`.
pub fn hyp2f1_unit(b: f64, x: f64) -> f64 {
    debug_assert!(b > 0.0 && b < 1.0 && x >= 0.0);
    if x <= 1.0 {
        pfaff_series(b, x)
    } else if x.is_infinite() {
        0.0
    } else {
        reflection_coeff(b) * x.powf(-b) - b / (1.0 - b) / x * pfaff_series(1.0 - b, 1.0 / x)
    }
}

/// `x^b * 2F1(1, b; b+1; -x)`, finite on `[0, inf]` with limit
/// `b*pi/sin(b*pi)` at infinity.
pub fn hyp2f1_unit_scaled(b: f64, x: f64) -> f64 {
    debug_assert!(b > 0.0 && b < 1.0 && x >= 0.0);
    if x <= 1.0 {
        x.powf(b) * pfaff_series(b, x)
    } else {
        let inv = 1.0 / x;
        reflection_coeff(b) - b / (1.0 - b) * inv.powf(1.0 - b) * pfaff_series(1.0 - b, inv)
    }
}

/// `HyF1(x) = 2F1(1, 1-delta; 2-delta; -x)`.
pub fn hyf1(x: f64, p: HypParams) -> Result<f64> {
    check_arg(x)?;
    Ok(hyp2f1_unit(p.b1(), x))
}

/// `HyF2(x) = 2F1(1, 1-delta/2; 2-delta/2; -x)`.
pub fn hyf2(x: f64, p: HypParams) -> Result<f64> {
    check_arg(x)?;
    Ok(hyp2f1_unit(p.b2(), x))
}

/// `F1(x) = HyF1(x)`, a decreasing function of `x`.
pub fn f1(x: f64, alpha: f64) -> Result<f64> {
    hyf1(x, HypParams::from_alpha(alpha)?)
}

/// `F2(x) = HyF1(x)/(alpha-2) - HyF2(x)/(alpha-1)`, a decreasing function of `x`.
pub fn f2(x: f64, alpha: f64) -> Result<f64> {
    let p = HypParams::from_alpha(alpha)?;
    Ok(hyf1(x, p)? / (alpha - 2.0) - hyf2(x, p)? / (alpha - 1.0))
}

/// `F3(x) = HyF2(x)/HyF1(x)`, decreasing from 1 at `x = 0`.
pub fn f3(x: f64, alpha: f64) -> Result<f64> {
    let p = HypParams::from_alpha(alpha)?;
    Ok(hyf2(x, p)? / hyf1(x, p)?)
}
