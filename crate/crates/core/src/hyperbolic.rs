//! Bounded ratios of hyperbolic functions.
//!
//! Every dispersion quantity is a ratio of products of `cosh`/`sinh` whose
//! arguments can reach several hundred. Evaluating the factors separately
//! overflows near `x ≈ 710`, so each ratio here is rewritten in terms of
//! `exp(-2x)` factors that stay in `[0, 2]`.

/// `1 - exp(-2x)` without cancellation for small `x`.
#[inline]
pub fn one_minus_exp_neg2(x: f64) -> f64 {
    -(-2.0 * x).exp_m1()
}

/// `1 + exp(-2x)`.
#[inline]
pub fn one_plus_exp_neg2(x: f64) -> f64 {
    1.0 + (-2.0 * x).exp()
}

/// `cosh(a) sinh(b) / cosh(a + b)` for `a, b >= 0`.
#[inline]
pub fn cosh_sinh_over_cosh_sum(a: f64, b: f64) -> f64 {
    one_plus_exp_neg2(a) * one_minus_exp_neg2(b) / (2.0 * one_plus_exp_neg2(a + b))
}

/// `sinh(a) sinh(b) / cosh(a + b)` for `a, b >= 0`; bounded by 1/2.
#[inline]
pub fn sinh_sinh_over_cosh_sum(a: f64, b: f64) -> f64 {
    one_minus_exp_neg2(a) * one_minus_exp_neg2(b) / (2.0 * one_plus_exp_neg2(a + b))
}

/// `sinh(x) / cosh(y)` for `y >= 0`. Finite whenever `|x| - y` is.
#[inline]
pub fn sinh_over_cosh(x: f64, y: f64) -> f64 {
    let ax = x.abs();
    let r = (ax - y).exp() * one_minus_exp_neg2(ax) / one_plus_exp_neg2(y);
    r.copysign(x)
}

/// `cosh(x) / cosh(y)` for `y >= 0`.
#[inline]
pub fn cosh_over_cosh(x: f64, y: f64) -> f64 {
    let ax = x.abs();
    (ax - y).exp() * one_plus_exp_neg2(ax) / one_plus_exp_neg2(y)
}

/// `tanh(y) - tanh(x)` for `0 <= x <= y`, computed as
/// `sinh(y - x) / (cosh(y) cosh(x))`.
#[inline]
pub fn tanh_gap(x: f64, y: f64) -> f64 {
    let s = y - x;
    // sinh(s) / (cosh(x) cosh(y)) with s = y - x >= 0
    2.0 * (-2.0 * x).exp() * one_minus_exp_neg2(s) / (one_plus_exp_neg2(x) * one_plus_exp_neg2(y))
}

/// `ln(sinh(x))` for `x > 0`.
#[inline]
pub fn ln_sinh(x: f64) -> f64 {
    x + one_minus_exp_neg2(x).ln() - std::f64::consts::LN_2
}

/// `ln(cosh(x))`.
#[inline]
pub fn ln_cosh(x: f64) -> f64 {
    let ax = x.abs();
    ax + (-2.0 * ax).exp().ln_1p() - std::f64::consts::LN_2
}
