//! The discrete analogue `D_m(hβ)` of
//! `d^2m/dx^2m + 2ω² d^(2m-2)/dx^(2m-2) + ω⁴ d^(2m-4)/dx^(2m-4)`.
//!
//! `D_m(hβ) = p Σ_k A_k λ_k^(|β|-1)` for `|β| >= 2`, `p (1 + Σ_k A_k)` for
//! `|β| = 1` and `p (C + Σ_k A_k/λ_k)` at `β = 0`, where `λ_k` are the roots
//! of the characteristic polynomial inside the unit disk.

use num_complex::Complex;

use crate::config::SplineConfig;
use crate::error::{Error, Result};
use crate::kernel::bracket;
use crate::poly::{euler_frobenius_coeffs, poly_roots, Polynomial};
use crate::real::{cabs, Real};

/// Tail tolerance of the default truncation window.
pub const TOL_TAIL: f64 = 1e-14;
/// Minimum distance of a characteristic root from the unit circle.
pub const TOL_CIRCLE: f64 = 1e-9;

/// Extra Taylor orders kept beyond the lowest surviving one (`2m-1`).
const SERIES_EXTRA: usize = 64;

/// Test signals annihilated by `D_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signal {
    /// `sin(ωx)`
    Sin,
    /// `cos(ωx)`
    Cos,
    /// `ωx sin(ωx)`
    TSin,
    /// `ωx cos(ωx)`
    TCos,
    /// `x^α`, `0 <= α <= 2m-5`
    Power(u32),
}

impl Signal {
    fn eval<T: Real>(self, omega: T, x: T) -> T {
        match self {
            Signal::Sin => (omega * x).sin(),
            Signal::Cos => (omega * x).cos(),
            Signal::TSin => omega * x * (omega * x).sin(),
            Signal::TCos => omega * x * (omega * x).cos(),
            Signal::Power(a) => x.powi(a as i32),
        }
    }
}

type Series<T> = Vec<T>;

fn ser_mul<T: Real>(a: &Series<T>, b: &Series<T>) -> Series<T> {
    let len = a.len();
    let mut out = vec![T::zero(); len];
    for (i, &x) in a.iter().enumerate() {
        if x == T::zero() {
            continue;
        }
        for (j, &y) in b.iter().take(len - i).enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn ser_add<T: Real>(a: &Series<T>, b: &Series<T>) -> Series<T> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

fn ser_scale<T: Real>(a: &Series<T>, k: T) -> Series<T> {
    a.iter().map(|&x| x * k).collect()
}

// Polynomial in x whose coefficients are truncated series in y.
fn xpoly_mul<T: Real>(a: &[Series<T>], b: &[Series<T>]) -> Vec<Series<T>> {
    let len = a[0].len();
    let mut out = vec![vec![T::zero(); len]; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ser_add(&out[i + j], &ser_mul(x, y));
        }
    }
    out
}

fn int_poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn one_minus_x_pow(e: usize) -> Vec<i128> {
    (0..e).fold(vec![1i128], |acc, _| int_poly_mul(&acc, &[1, -1]))
}

/// Characteristic polynomial divided by `(hω)^(2m-1)`, as coefficients
/// (ascending in `x`) that are evaluated from their Taylor series in `y = hω`.
///
/// Every coefficient of the characteristic polynomial is `O(y^(2m-1))`; the
/// lower orders cancel identically and are dropped.
fn normalized_char_coeffs<T: Real>(m: usize, y: T) -> Vec<T> {
    let low = 2 * m - 1;
    let len = low + SERIES_EXTRA;
    let mut inv_fact = vec![T::one(); len + 1];
    for n in 1..=len {
        inv_fact[n] = inv_fact[n - 1] / T::from_usize(n);
    }
    let sign = |j: usize| if j.is_multiple_of(2) { T::one() } else { -T::one() };
    let zero = vec![T::zero(); len];
    let mut sin_y = zero.clone();
    let mut y_cos_y = zero.clone();
    let mut sin_2y = zero.clone();
    let mut cos_y = zero.clone();
    let mut two_pow = T::one();
    for n in 0..len {
        if n > 0 {
            two_pow = two_pow + two_pow;
        }
        if n % 2 == 1 {
            let j = (n - 1) / 2;
            sin_y[n] = sign(j) * inv_fact[n];
            y_cos_y[n] = sign(j) * inv_fact[n - 1];
            sin_2y[n] = sign(j) * two_pow * inv_fact[n];
        } else {
            cos_y[n] = sign(n / 2) * inv_fact[n];
        }
    }
    let k23 = T::from_usize(2 * m - 3);
    let a = ser_add(&ser_scale(&sin_y, k23), &ser_scale(&y_cos_y, -T::one()));
    let mut b = ser_scale(&sin_2y, -k23);
    b[1] += T::from_f64(2.0);

    let constant = |c: i128| {
        let mut s = zero.clone();
        s[0] = crate::poly::int_to_real(c);
        s
    };
    let lift = |p: &[i128]| -> Vec<Series<T>> { p.iter().map(|&c| constant(c)).collect() };

    let mut total = xpoly_mul(&lift(&one_minus_x_pow(2 * m - 4)), &[a.clone(), b, a]);
    let quad = vec![constant(1), ser_scale(&cos_y, T::from_f64(-2.0)), constant(1)];
    let quad2 = xpoly_mul(&quad, &quad);
    for k in 1..m - 1 {
        let mut scalar = zero.clone();
        let w = 2 * (m - k - 1) as i64 * if k % 2 == 0 { 1 } else { -1 };
        scalar[2 * k - 1] = T::from_i64(w) * inv_fact[2 * k - 1];
        let ip = int_poly_mul(
            &one_minus_x_pow(2 * m - 2 * k - 4),
            &euler_frobenius_coeffs(2 * k as u32 - 2),
        );
        let part: Vec<Series<T>> = lift(&ip).iter().map(|s| ser_mul(s, &scalar)).collect();
        let part = xpoly_mul(&quad2, &part);
        for (s, ser) in part.iter().enumerate() {
            total[s] = ser_add(&total[s], ser);
        }
    }
    total
        .iter()
        .map(|ser| {
            ser[low..]
                .iter()
                .rev()
                .fold(T::zero(), |acc, &c| acc * y + c)
        })
        .collect()
}

fn h_omega<T: Real>(config: &SplineConfig) -> T {
    T::from_f64(config.omega()) / T::from_usize(config.n())
}

/// The characteristic polynomial of degree `2m-2` for `config`.
///
/// It is palindromic, and its roots come in reciprocal pairs.
pub fn characteristic_poly<T: Real>(config: &SplineConfig) -> Polynomial<T> {
    let y: T = h_omega(config);
    let scale = y.powi(2 * config.m() as i32 - 1);
    Polynomial::new(
        normalized_char_coeffs(config.m(), y)
            .into_iter()
            .map(|c| c * scale)
            .collect(),
    )
}

/// Leading coefficient `(2m-3) sin hω - hω cos hω + 2 Σ_k (-1)^k (m-k-1) (hω)^(2k-1)/(2k-1)!`.
///
/// ```
/// use k2pm::{operator::leading_coeff, SplineConfig};
/// let cfg = SplineConfig::new(2, 1.0, 1).unwrap();
/// let a: f64 = leading_coeff(&cfg).unwrap();
/// assert!((a - (1f64.sin() - 1f64.cos())).abs() < 1e-15);
/// ```
pub fn leading_coeff<T: Real>(config: &SplineConfig) -> Result<T> {
    let y: T = h_omega(config);
    let v = bracket(config.m(), y, 0);
    let rel = (v / y.powi(2 * config.m() as i32 - 1)).to_f64().abs();
    if !(rel > 1e-300) || !v.is_finite() {
        return Err(Error::DegenerateLeadingCoefficient { value: v.to_f64() });
    }
    Ok(v)
}

/// The `m-1` roots of a characteristic polynomial of degree `2m-2` that lie
/// strictly inside the unit disk.
pub fn stable_roots<T: Real>(p: &Polynomial<T>) -> Result<Vec<Complex<T>>> {
    let roots = poly_roots(p)?;
    let expected = p.degree() / 2;
    let mut inside = Vec::with_capacity(expected);
    for z in roots {
        let r = cabs(z).to_f64();
        if (r - 1.0).abs() < TOL_CIRCLE {
            return Err(Error::RootOnUnitCircle {
                modulus: r,
                tol: TOL_CIRCLE,
            });
        }
        if r < 1.0 {
            inside.push(z);
        }
    }
    if inside.len() != expected {
        return Err(Error::StableRootCount {
            expected,
            found: inside.len(),
        });
    }
    Ok(inside)
}

/// Data generating `D_m(hβ)`.
#[derive(Debug, Clone)]
pub struct DiscreteOperator<T> {
    config: SplineConfig,
    p: T,
    c: T,
    a: Vec<Complex<T>>,
    lambda: Vec<Complex<T>>,
    char_poly: Polynomial<T>,
    d0: T,
    d1: T,
    rho: f64,
}

/// Builds the operator for `config`.
///
/// ```
/// use k2pm::{build_operator, SplineConfig};
/// let cfg = SplineConfig::new(2, 1.0, 1).unwrap();
/// let op = build_operator::<f64>(&cfg).unwrap();
/// let lambda = op.lambda()[0].re;
/// assert!((lambda - (1f64.cos() - 1f64.sin())).abs() < 1e-14);
/// assert_eq!(op.eval_d(5), op.eval_d(-5));
/// ```
pub fn build_operator<T: Real>(config: &SplineConfig) -> Result<DiscreteOperator<T>> {
    let m = config.m();
    let y: T = h_omega(config);
    let top = leading_coeff::<T>(config)?;
    let char_poly = characteristic_poly::<T>(config);
    let lambda = stable_roots(&char_poly)?;
    let dp = char_poly.derivative();
    let (_, cos_y) = y.sin_cos();
    let one = Complex::new(T::one(), T::zero());
    let mut a = Vec::with_capacity(m - 1);
    for &l in &lambda {
        let dpl = dp.eval_complex(l);
        if (cabs(dpl) / top.abs()).to_f64() < 1e-14 {
            return Err(Error::RepeatedRoot { root: l.re.to_f64() });
        }
        let quad = l * l - l * (cos_y + cos_y) + one;
        let mut num = quad * quad * top;
        for _ in 0..2 * m - 4 {
            num = num * (one - l);
        }
        a.push(num / (l * dpl));
    }
    let coeffs = char_poly.coeffs();
    let c = T::from_f64(4.0) - T::from_f64(4.0) * cos_y
        - T::from_usize(2 * m)
        - coeffs[2 * m - 3] / coeffs[2 * m - 2];
    let omega = T::from_f64(config.omega());
    let sign = if m.is_multiple_of(2) { T::one() } else { -T::one() };
    let p = T::from_f64(2.0) * omega.powi(2 * m as i32 - 1) / (sign * coeffs[2 * m - 2]);
    let s0: Complex<T> = a.iter().zip(&lambda).map(|(&ak, &l)| ak / l).fold(
        Complex::new(T::zero(), T::zero()),
        |x, v| x + v,
    );
    let s1: Complex<T> = a
        .iter()
        .fold(Complex::new(T::zero(), T::zero()), |x, &v| x + v);
    let rho = lambda
        .iter()
        .map(|z| cabs(*z).to_f64())
        .fold(0.0, f64::max);
    Ok(DiscreteOperator {
        config: *config,
        d0: p * (c + s0.re),
        d1: p * (T::one() + s1.re),
        p,
        c,
        a,
        lambda,
        char_poly,
        rho,
    })
}

impl<T: Real> DiscreteOperator<T> {
    pub fn config(&self) -> &SplineConfig {
        &self.config
    }

    pub fn p(&self) -> T {
        self.p
    }

    /// Centre correction `C`.
    pub fn c(&self) -> T {
        self.c
    }

    pub fn a(&self) -> &[Complex<T>] {
        &self.a
    }

    pub fn lambda(&self) -> &[Complex<T>] {
        &self.lambda
    }

    pub fn char_poly(&self) -> &Polynomial<T> {
        &self.char_poly
    }

    /// Largest modulus of the stable roots; the decay rate of `D_m`.
    pub fn decay_rate(&self) -> f64 {
        self.rho
    }

    /// `D_m(hβ)` together with the discarded imaginary part.
    pub fn eval_d_checked(&self, beta: i64) -> (T, T) {
        let b = beta.unsigned_abs();
        let zero = Complex::new(T::zero(), T::zero());
        let s = match b {
            0 => return (self.d0, T::zero()),
            1 => return (self.d1, T::zero()),
            _ => self
                .a
                .iter()
                .zip(&self.lambda)
                .fold(zero, |acc, (&ak, &l)| acc + ak * crate::real::cpowi(l, (b - 1) as u32)),
        };
        (self.p * s.re, self.p * s.im)
    }

    /// `D_m(hβ)`; symmetric in `β`.
    pub fn eval_d(&self, beta: i64) -> T {
        self.eval_d_checked(beta).0
    }

    /// `D_m(hβ)` for `β = 0..=w`.
    pub fn values(&self, w: usize) -> Vec<T> {
        let mut out = Vec::with_capacity(w + 1);
        out.push(self.d0);
        if w >= 1 {
            out.push(self.d1);
        }
        let mut pw: Vec<Complex<T>> = self.lambda.clone();
        for _ in 2..=w {
            let s = self
                .a
                .iter()
                .zip(&pw)
                .fold(T::zero(), |acc, (&ak, &l)| acc + (ak * l).re);
            out.push(self.p * s);
            for (x, &l) in pw.iter_mut().zip(&self.lambda) {
                *x = *x * l;
            }
        }
        out
    }

    /// `Γ = ceil(ln(1e-14) / ln max|λ_k|)`, at least 10.
    pub fn truncation_window(&self) -> usize {
        if self.rho <= 0.0 {
            return 10;
        }
        ((TOL_TAIL.ln() / self.rho.ln()).ceil() as usize).max(10)
    }

    /// Smallest window `W >= Γ` with
    /// `Σ_{γ>W} |p| Σ_k |A_k| ρ^(γ-1) envelope(γ) <= tol`.
    ///
    /// `envelope(γ)` bounds the magnitude of the sequence convolved with `D_m`
    /// at offset `γ` and may grow at most polynomially.
    pub fn tail_window(&self, tol: f64, envelope: impl Fn(usize) -> f64) -> usize {
        let gamma0 = self.truncation_window();
        let amp = self.p.abs().to_f64() * self.a.iter().map(|z| cabs(*z).to_f64()).sum::<f64>();
        let mut terms = Vec::new();
        let mut prev = f64::INFINITY;
        let mut g = 1usize;
        loop {
            let t = amp * self.rho.powi(g as i32 - 1) * envelope(g);
            terms.push(t);
            if (g > gamma0 && t < 1e-6 * tol && t <= prev) || g > 1_000_000 {
                break;
            }
            prev = t;
            g += 1;
        }
        // terms[i] is the bound at γ = i + 1; the tail beyond W starts at index W.
        let mut suffix = 0.0;
        let mut w = terms.len();
        while w > gamma0 {
            if suffix + terms[w - 1] > tol {
                break;
            }
            suffix += terms[w - 1];
            w -= 1;
        }
        w.max(gamma0)
    }

    /// `max_{|β|<=10} |Σ_{γ=-W}^{W} D_m(hγ) f(h(β-γ))|` for a signal `f` that
    /// `D_m` annihilates.
    pub fn annihilation_residual(&self, signal: Signal, window: usize) -> Result<T> {
        let required = self.truncation_window();
        if window < required {
            return Err(Error::WindowTooSmall { window, required });
        }
        if let Signal::Power(alpha) = signal {
            let max = 2 * self.config.m() as i64 - 5;
            if alpha as i64 > max {
                return Err(Error::ExponentOutOfRange {
                    alpha: alpha as usize,
                    max,
                });
            }
        }
        let d = self.values(window);
        let omega = T::from_f64(self.config.omega());
        let n = T::from_usize(self.config.n());
        let w = window as i64;
        let mut worst = T::zero();
        for beta in -ANNIHILATION_RANGE..=ANNIHILATION_RANGE {
            let mut s = T::zero();
            for gamma in -w..=w {
                let x = T::from_i64(beta - gamma) / n;
                s += d[gamma.unsigned_abs() as usize] * signal.eval(omega, x);
            }
            worst = worst.max(s.abs());
        }
        Ok(worst)
    }

    /// Window for [`annihilation_residual`](Self::annihilation_residual) whose
    /// neglected tail is below `tol`.
    pub fn annihilation_window(&self, signal: Signal, tol: f64) -> usize {
        let h = self.config.h();
        let w = self.config.omega();
        let r = ANNIHILATION_RANGE as f64;
        self.tail_window(tol, |g| {
            let x = h * (g as f64 + r);
            2.0 * match signal {
                Signal::Sin | Signal::Cos => 1.0,
                Signal::TSin | Signal::TCos => w * x,
                Signal::Power(a) => x.powi(a as i32),
            }
        })
    }
}

/// Half-width of the lag range checked by `annihilation_residual`.
pub const ANNIHILATION_RANGE: i64 = 10;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::euler_frobenius;
    use crate::Dd;

    fn cfg(m: usize, w: f64, n: usize) -> SplineConfig {
        SplineConfig::new(m, w, n).unwrap()
    }

    // Literal assembly of the characteristic polynomial from sin/cos values.
    fn char_poly_literal(m: usize, y: Dd) -> Polynomial<Dd> {
        let (s, c) = y.sin_cos();
        let (s2, _) = (y + y).sin_cos();
        let k23 = Dd::from((2 * m - 3) as f64);
        let a = k23 * s - y * c;
        let b = Dd::from(2.0) * y - k23 * s2;
        let omx = Polynomial::new(vec![Dd::from(1.0), Dd::from(-1.0)]);
        let mut p = omx.pow(2 * m as u32 - 4).mul(&Polynomial::new(vec![a, b, a]));
        let q = Polynomial::new(vec![Dd::from(1.0), Dd::from(-2.0) * c, Dd::from(1.0)]);
        let q2 = q.mul(&q);
        let mut fact = Dd::from(1.0);
        for k in 1..m - 1 {
            if k > 1 {
                fact *= Dd::from(((2 * k - 2) * (2 * k - 1)) as f64);
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let t = Dd::from(2.0 * sign * (m - k - 1) as f64) * y.powi(2 * k as i32 - 1) / fact;
            let term = q2
                .mul(&omx.pow((2 * m - 2 * k - 4) as u32))
                .mul(&euler_frobenius(2 * k as u32 - 2))
                .scale(t);
            p = p.add(&term);
        }
        p
    }

    #[test]
    fn m2_closed_form() {
        let c = cfg(2, 1.0, 1);
        let p: Polynomial<f64> = characteristic_poly(&c);
        let a = 1f64.sin() - 1f64.cos();
        let b = 2.0 - 2f64.sin();
        assert!((p.coeffs()[0] - a).abs() < 1e-15);
        assert!((p.coeffs()[1] - b).abs() < 1e-15);
        assert!((p.coeffs()[2] - a).abs() < 1e-15);
        assert!((a - 0.3011686789).abs() < 1e-10 && (b - 1.0907025732).abs() < 1e-10);
        assert!((b - (a * a + 1.0)).abs() < 1e-15);
    }

    #[test]
    fn series_matches_literal_assembly() {
        for m in 2..=6 {
            for &(w, n) in &[(1.0, 1usize), (1.0, 2), (0.5, 5), (1.0, 10)] {
                if n + 1 < m {
                    continue;
                }
                let c = cfg(m, w, n);
                let y = Dd::from(w) / Dd::from(n as f64);
                let lit = char_poly_literal(m, y);
                let ser: Polynomial<Dd> = characteristic_poly(&c);
                let top = ser.leading().abs();
                for (a, b) in lit.coeffs().iter().zip(ser.coeffs()) {
                    // The literal form cancels down to the size of the top coefficient.
                    assert!(((*a - *b).abs() / top).to_f64() < 1e-27 / top.to_f64(), "m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn reference_coefficients() {
        // 60-digit reference values.
        let p: Polynomial<Dd> = characteristic_poly(&cfg(3, 1.0, 2));
        let expect = [
            -0.00051466513257735723828,
            -0.013053376597043941016,
            -0.032808033154055109363,
        ];
        for (s, e) in expect.iter().enumerate() {
            assert!((p.coeffs()[s].to_f64() - e).abs() < 1e-17 * e.abs());
            assert_eq!(p.coeffs()[s], p.coeffs()[4 - s]);
        }
        let top: f64 = leading_coeff(&cfg(3, 1.0, 2)).unwrap();
        assert!((top - (-0.0005146651326)).abs() < 1e-13);
        let p: Polynomial<Dd> = characteristic_poly(&cfg(5, 1.0, 10));
        assert!((p.coeffs()[4].to_f64() / -8.5930801297694790654e-10 - 1.0).abs() < 1e-15);
        assert!((p.coeffs()[0].to_f64() / -5.5104618568099060328e-15 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn leading_matches_top_coefficient() {
        for m in 2..=6 {
            for &(w, n) in &[(1.0, 10usize), (0.5, 5), (1.0, 1), (2.0, 200)] {
                if n + 1 < m {
                    continue;
                }
                let c = cfg(m, w, n);
                let top: f64 = leading_coeff(&c).unwrap();
                let p: Polynomial<f64> = characteristic_poly(&c);
                assert!((p.leading() - top).abs() <= 1e-12 * top.abs(), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn reference_roots_and_values() {
        let op = build_operator::<Dd>(&cfg(4, 2.0, 4)).unwrap();
        let expect = [-0.53942164943198604981, -0.12484270680439824348, -0.0093185978285757190875];
        let mut got: Vec<f64> = op.lambda().iter().map(|z| z.re.to_f64()).collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (g, e) in got.iter().zip(expect) {
            assert!((g - e).abs() < 1e-16);
        }
        let d = [12341019.611860343234, -11096041.848623039808, 8168284.0092597118027];
        for (b, e) in d.iter().enumerate() {
            assert!((op.eval_d(b as i64).to_f64() / e - 1.0).abs() < 1e-15);
        }
        assert!((op.eval_d(5).to_f64() / -1587246.5037671994758 - 1.0).abs() < 1e-15);

        let op = build_operator::<f64>(&cfg(2, 1.0, 1)).unwrap();
        let d = [10.229630898619608922, -8.0056002286032160502, 4.4110360449682455312];
        for (b, e) in d.iter().enumerate() {
            assert!((op.eval_d(b as i64) / e - 1.0).abs() < 1e-13);
        }
        assert!((op.p() - 2.0 / (1f64.sin() - 1f64.cos())).abs() < 1e-13);
    }

    #[test]
    fn roots_inside_and_reciprocal() {
        for m in 2..=5 {
            for &hw in &[0.1, 0.5, 1.0] {
                let n = 10;
                let c = cfg(m, hw * n as f64, n);
                let p: Polynomial<f64> = characteristic_poly(&c);
                let inside = stable_roots(&p).unwrap();
                assert_eq!(inside.len(), m - 1);
                for l in inside {
                    let r = Complex::new(1.0, 0.0) / l;
                    let v = cabs(p.eval_complex(r)) / p.magnitude_at(cabs(r));
                    assert!(v < 1e-9);
                }
            }
        }
    }

    #[test]
    fn window_rule() {
        let op = build_operator::<f64>(&cfg(3, 1.0, 10)).unwrap();
        let rho = op.decay_rate();
        let g = op.truncation_window();
        assert_eq!(g, ((1e-14f64).ln() / rho.ln()).ceil() as usize);
        assert!(op.tail_window(1e-12, |_| 1.0) >= g);
        assert!(op.tail_window(1e-20, |x| (x * x) as f64) > op.tail_window(1e-12, |_| 1.0));
    }

    #[test]
    fn power_signal_range() {
        let op = build_operator::<f64>(&cfg(2, 1.0, 10)).unwrap();
        let w = op.truncation_window();
        assert!(matches!(
            op.annihilation_residual(Signal::Power(0), w),
            Err(Error::ExponentOutOfRange { .. })
        ));
        assert!(matches!(
            op.annihilation_residual(Signal::Sin, w - 1),
            Err(Error::WindowTooSmall { .. })
        ));
    }
}
