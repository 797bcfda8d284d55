//! The fundamental solution `G_m` of
//! `d^2m/dx^2m + 2ω² d^(2m-2)/dx^(2m-2) + ω⁴ d^(2m-4)/dx^(2m-4)` and its derivatives.
//!
//! `G_m(x) = (-1)^m sign(x) / (4 ω^(2m-1)) · B(ωx)` with the odd bracket
//! `B(y) = (2m-3) sin y - y cos y + 2 Σ_{k=1}^{m-2} (-1)^k (m-k-1) y^(2k-1)/(2k-1)!`.
//! Near zero `B` is `O(y^(2m-1))` and the direct form cancels; there the
//! Taylor form `B(y) = Σ_{i>=m-1} (-1)^i (2m-4-2i) y^(2i+1)/(2i+1)!` is used.
//! The choice is made per call by comparing the sums of absolute terms.

use crate::error::{Error, Result};
use crate::operator::DiscreteOperator;
use crate::real::Real;

fn falling_over_factorial_f64(y: f64, e: i64) -> f64 {
    // y^e / e!
    let mut t = 1.0;
    for i in 1..=e {
        t *= y / i as f64;
    }
    t
}

fn direct_abs_sum(m: usize, y: f64, j: usize, s: f64, c: f64) -> f64 {
    let mut sum = (2 * m - 3) as f64 * s.abs().max(c.abs()) + y * c.abs().max(s.abs()) + j as f64;
    for k in 1..m.saturating_sub(1) {
        let e = 2 * k as i64 - 1 - j as i64;
        if e >= 0 {
            sum += 2.0 * (m - k - 1) as f64 * falling_over_factorial_f64(y, e);
        }
    }
    sum
}

fn series_start(m: usize, j: usize) -> usize {
    (m - 1).max(j / 2)
}

fn series_abs_sum(m: usize, y: f64, j: usize) -> f64 {
    let mut i = series_start(m, j);
    let mut e = 2 * i as i64 + 1 - j as i64;
    let mut t = falling_over_factorial_f64(y, e);
    let mut sum = 0.0;
    loop {
        let term = (2 * i + 4 - 2 * m) as f64 * t;
        sum += term;
        if (e as f64 > y && term <= 1e-17 * sum) || i > 400 {
            return sum;
        }
        t *= y * y / ((e + 1) * (e + 2)) as f64;
        e += 2;
        i += 1;
    }
}

fn bracket_series<T: Real>(m: usize, y: T, j: usize) -> T {
    let yf = y.to_f64();
    let mut i = series_start(m, j);
    let mut e = 2 * i as i64 + 1 - j as i64;
    let mut t = T::one();
    for q in 1..=e {
        t = t * y / T::from_i64(q);
    }
    let y2 = y * y;
    let mut sum = T::zero();
    loop {
        let w = (2 * m as i64 - 4 - 2 * i as i64) * if i.is_multiple_of(2) { 1 } else { -1 };
        let term = t * T::from_i64(w);
        sum += term;
        let tf = term.to_f64().abs();
        if (e as f64 > yf.abs() && tf <= 0.01 * T::EPSILON * sum.to_f64().abs().max(1e-300))
            || tf == 0.0
            || i > 400
        {
            return sum;
        }
        t = t * y2 / T::from_i64((e + 1) * (e + 2));
        e += 2;
        i += 1;
    }
}

fn bracket_direct<T: Real>(m: usize, y: T, j: usize, s: T, c: T) -> T {
    // j-th derivatives of sin and cos at y.
    let dsin = |k: usize| match k % 4 {
        0 => s,
        1 => c,
        2 => -s,
        _ => -c,
    };
    let dcos = |k: usize| match k % 4 {
        0 => c,
        1 => -s,
        2 => -c,
        _ => s,
    };
    let mut v = T::from_usize(2 * m - 3) * dsin(j) - y * dcos(j);
    if j > 0 {
        v -= T::from_usize(j) * dcos(j - 1);
    }
    for k in 1..m - 1 {
        let e = 2 * k as i64 - 1 - j as i64;
        if e < 0 {
            continue;
        }
        let mut t = T::one();
        for q in 1..=e {
            t = t * y / T::from_i64(q);
        }
        let w = 2 * (m - k - 1) as i64 * if k % 2 == 0 { 1 } else { -1 };
        v += T::from_i64(w) * t;
    }
    v
}

/// `B^(j)(y)`, the `j`-th derivative of the bracket, for `y >= 0`.
pub(crate) fn bracket<T: Real>(m: usize, y: T, j: usize) -> T {
    let yf = y.to_f64();
    let (sf, cf) = yf.sin_cos();
    if series_abs_sum(m, yf, j) < direct_abs_sum(m, yf, j, sf, cf) {
        bracket_series(m, y, j)
    } else {
        let (s, c) = y.sin_cos();
        bracket_direct(m, y, j, s, c)
    }
}

fn prefactor<T: Real>(m: usize, omega: T) -> T {
    let v = T::one() / (T::from_f64(4.0) * omega.powi(2 * m as i32 - 1));
    if m.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// `G_m(x)`; `G_m(0) = 0` and `G_m(-x) = G_m(x)` bit for bit.
///
/// ```
/// use k2pm::kernel::g;
/// let x: f64 = 0.3;
/// let expect = (x.sin() - x * x.cos()) / 4.0;
/// assert!((g(2, 1.0, x) - expect).abs() < 1e-16);
/// ```
pub fn g<T: Real>(m: usize, omega: T, x: T) -> T {
    assert!(m >= 2, "order must be at least 2");
    if x == T::zero() {
        return T::zero();
    }
    prefactor(m, omega) * bracket(m, omega * x.abs(), 0)
}

/// `d^j G_m / dx^j` at `x`, by term-wise differentiation.
///
/// Fails for `j > 2m`, and at `x = 0` for `j >= 2m - 4`.
pub fn g_derivative<T: Real>(m: usize, omega: T, j: usize, x: T) -> Result<T> {
    assert!(m >= 2, "order must be at least 2");
    if j > 2 * m {
        return Err(Error::DerivativeOrder { j, max: 2 * m });
    }
    if x == T::zero() {
        if j + 4 >= 2 * m {
            return Err(Error::DerivativeAtOrigin { j, m });
        }
        return Ok(T::zero());
    }
    let v = prefactor(m, omega) * omega.powi(j as i32) * bracket(m, omega * x.abs(), j);
    Ok(if x < T::zero() && j % 2 == 1 { -v } else { v })
}

/// Upper bound of `|G_m(x)|` from the triangle inequality on the direct form.
pub fn g_bound(m: usize, omega: f64, x: f64) -> f64 {
    let y = (omega * x).abs();
    let mut b = (2 * m - 3) as f64 + y;
    for k in 1..m - 1 {
        b += 2.0 * (m - k - 1) as f64 * falling_over_factorial_f64(y, 2 * k as i64 - 1);
    }
    b / (4.0 * omega.powi(2 * m as i32 - 1))
}

/// `|Σ_{γ=-W}^{W} D_m(hγ) G_m(h(β-γ)) - δ_β|` with `W = window`.
///
/// `window` must be at least [`DiscreteOperator::truncation_window`];
/// [`delta_window`] gives one that also bounds the truncated tail.
pub fn delta_residual<T: Real>(op: &DiscreteOperator<T>, beta: i64, window: usize) -> Result<T> {
    let required = op.truncation_window();
    if window < required {
        return Err(Error::WindowTooSmall { window, required });
    }
    let cfg = op.config();
    let m = cfg.m();
    let omega = T::from_f64(cfg.omega());
    let n = T::from_usize(cfg.n());
    let d = op.values(window);
    let w = window as i64;
    let mut sum = T::zero();
    for gamma in -w..=w {
        let x = T::from_i64(beta - gamma) / n;
        sum += d[gamma.unsigned_abs() as usize] * g(m, omega, x);
    }
    if beta == 0 {
        sum -= T::one();
    }
    Ok(sum.abs())
}

/// Window for [`delta_residual`] at lag `beta` whose neglected tail is below `tol`.
pub fn delta_window<T: Real>(op: &DiscreteOperator<T>, beta: i64, tol: f64) -> usize {
    let cfg = *op.config();
    let h = cfg.h();
    op.tail_window(tol, |gamma| {
        2.0 * g_bound(cfg.m(), cfg.omega(), h * (beta.unsigned_abs() as f64 + gamma as f64))
    })
}
