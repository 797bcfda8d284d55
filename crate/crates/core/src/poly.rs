//! Dense polynomials, Euler–Frobenius polynomials, finite differences of
//! powers at zero, geometric tail sums and a complex root finder.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::real::{cabs, cast_complex, Real};

/// Dense polynomial with ascending coefficients: `coeffs[s]` multiplies `x^s`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

/// Double precision polynomial.
pub type RealPolynomial = Polynomial<f64>;

impl<T: Real> Polynomial<T> {
    /// Builds a polynomial, dropping trailing zero coefficients.
    pub fn new(mut coeffs: Vec<T>) -> Polynomial<T> {
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == T::zero() {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(T::zero());
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Polynomial<T> {
        Polynomial::new(vec![T::zero()])
    }

    pub fn constant(c: T) -> Polynomial<T> {
        Polynomial::new(vec![c])
    }

    /// `(x - root)`.
    pub fn linear_factor(root: T) -> Polynomial<T> {
        Polynomial::new(vec![-root, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == T::zero()
    }

    pub fn leading(&self) -> T {
        self.coeffs[self.coeffs.len() - 1]
    }

    /// Horner evaluation.
    pub fn eval(&self, x: T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(T::zero(), T::zero()), |acc, &c| {
                acc * z + Complex::new(c, T::zero())
            })
    }

    /// `sum |c_s| |x|^s`, the natural scale for residuals at `x`.
    pub fn magnitude_at(&self, x: T) -> T {
        let ax = x.abs();
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * ax + c.abs())
    }

    pub fn derivative(&self) -> Polynomial<T> {
        if self.coeffs.len() == 1 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(s, &c)| c * T::from_usize(s))
                .collect(),
        )
    }

    pub fn scale(&self, k: T) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|&c| c * k).collect())
    }

    pub fn add(&self, other: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Polynomial<T>, i: usize| p.coeffs.get(i).copied().unwrap_or_else(T::zero);
        Polynomial::new((0..n).map(|i| get(self, i) + get(other, i)).collect())
    }

    pub fn sub(&self, other: &Polynomial<T>) -> Polynomial<T> {
        self.add(&other.scale(-T::one()))
    }

    pub fn mul(&self, other: &Polynomial<T>) -> Polynomial<T> {
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn pow(&self, e: u32) -> Polynomial<T> {
        (0..e).fold(Polynomial::constant(T::one()), |acc, _| acc.mul(self))
    }

    /// Converts every coefficient to another scalar type.
    pub fn cast<U: Real>(&self) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(|c| U::from_f64(c.to_f64())).collect())
    }

    /// Exact conversion from integer coefficients.
    pub fn from_integers(coeffs: &[i128]) -> Polynomial<T> {
        Polynomial::new(coeffs.iter().map(|&c| int_to_real(c)).collect())
    }
}

pub(crate) fn int_to_real<T: Real>(v: i128) -> T {
    let hi = v as f64;
    let lo = (v - hi as i128) as f64;
    T::from_f64(hi) + T::from_f64(lo)
}

/// Finite difference of powers at zero, `Δ^i 0^k = Σ_{l=1}^{i} (-1)^{i-l} C(i,l) l^k`,
/// with `Δ^0 0^0 = 1`.
///
/// For `k >= 1` this is computed through
/// `Δ^i 0^k = i (Δ^{i-1} 0^{k-1} + Δ^i 0^{k-1})`, which has no cancellation.
/// For `k = 0`, `i >= 1` the defining sum (which omits `l = 0`) equals `(-1)^(i+1)`.
///
/// # Panics
/// When the value does not fit in `i128` (only for arguments far beyond the
/// orders used by the splines, roughly `k > 30`).
///
/// ```
/// use k2pm::poly::finite_diff_zero;
/// assert_eq!(finite_diff_zero(2, 2), 2);
/// assert_eq!(finite_diff_zero(3, 2), 0);
/// assert_eq!(finite_diff_zero(0, 0), 1);
/// ```
pub fn finite_diff_zero(i: u32, k: u32) -> i128 {
    if k == 0 {
        return match i {
            0 => 1,
            _ if i % 2 == 1 => 1,
            _ => -1,
        };
    }
    let i = i as usize;
    if i > k as usize {
        return 0;
    }
    let mut row = vec![0i128; i + 1];
    row[0] = 1;
    for _ in 0..k {
        for j in (1..=i).rev() {
            row[j] = (row[j - 1] + row[j])
                .checked_mul(j as i128)
                .expect("finite difference overflows i128");
        }
        row[0] = 0;
    }
    row[i]
}

fn binomial(n: u32, k: u32) -> i128 {
    (0..k).fold(1i128, |acc, j| acc * (n - j) as i128 / (j + 1) as i128)
}

/// Integer coefficients (ascending) of the Euler–Frobenius polynomial `E_k`,
/// obtained by expanding `Σ_{i=0}^{k+1} Δ^i 0^{k+1} (x-1)^{k+1-i}`.
pub fn euler_frobenius_coeffs(k: u32) -> Vec<i128> {
    let mut out = vec![0i128; k as usize + 2];
    for i in 0..=k + 1 {
        let d = finite_diff_zero(i, k + 1);
        if d == 0 {
            continue;
        }
        let n = k + 1 - i;
        for s in 0..=n {
            let sign = if (n - s).is_multiple_of(2) { 1 } else { -1 };
            out[s as usize] += d * sign * binomial(n, s);
        }
    }
    debug_assert_eq!(out[k as usize + 1], 0);
    out.truncate(k as usize + 1);
    out
}

/// Euler–Frobenius polynomial `E_k` of degree `k`.
///
/// ```
/// use k2pm::poly::euler_frobenius;
/// let e2 = euler_frobenius::<f64>(2);
/// assert_eq!(e2.coeffs(), &[1.0, 4.0, 1.0]);
/// ```
pub fn euler_frobenius<T: Real>(k: u32) -> Polynomial<T> {
    Polynomial::from_integers(&euler_frobenius_coeffs(k))
}

/// `Σ_{γ>=1} q^γ γ^k` for complex `q` with `|q| < 1`.
pub(crate) fn power_tail_from_one<T: Real>(q: Complex<T>, k: u32) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    let inv = one / (one - q);
    let ratio = q * inv;
    let mut acc = Complex::new(T::zero(), T::zero());
    let mut rp = one;
    for i in 0..=k {
        if i > 0 {
            rp = rp * ratio;
        }
        // Δ^i 0^0 enters only through i = 0.
        let d = if k == 0 { 1 } else { finite_diff_zero(i, k) };
        if d != 0 {
            acc = acc + rp * int_to_real::<T>(d);
        }
    }
    let total = acc * inv;
    if k == 0 {
        total - one
    } else {
        total
    }
}

/// `Σ_{γ>=0} q^γ γ^k` in closed form, `(1/(1-q)) Σ_{i=0}^{k} (q/(1-q))^i Δ^i 0^k`.
///
/// ```
/// use k2pm::poly::geom_power_tail;
/// assert!((geom_power_tail(1.0 / 3.0, 2).unwrap() - 1.5).abs() < 1e-15);
/// ```
pub fn geom_power_tail<T: Real>(q: T, k: u32) -> Result<T> {
    if !(q.abs() < T::one()) {
        return Err(Error::NotContracting {
            modulus: q.abs().to_f64(),
        });
    }
    let z = Complex::new(q, T::zero());
    let from_one = power_tail_from_one(z, k).re;
    Ok(if k == 0 { from_one + T::one() } else { from_one })
}

/// `(Σ_{γ>=1} λ^γ sin(θγ + φ), Σ_{γ>=1} λ^γ cos(θγ + φ))` for complex `λ`.
pub(crate) fn trig_tail_complex<T: Real>(
    lambda: Complex<T>,
    theta: T,
    phase: T,
) -> (Complex<T>, Complex<T>) {
    let one = Complex::new(T::one(), T::zero());
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let den = one - lambda * (ct + ct) + lambda * lambda;
    let ssin = lambda * st / den;
    let scos = (lambda * ct - lambda * lambda) / den;
    (ssin * cp + scos * sp, scos * cp - ssin * sp)
}

/// `(s, c)` with `s = Σ_{γ>=1} λ^γ sin(θγ + phase)` and
/// `c = Σ_{γ>=1} λ^γ cos(θγ + phase)`.
///
/// ```
/// use k2pm::poly::geom_trig_tail;
/// let (s, c) = geom_trig_tail(0.5, 0.0, 0.0).unwrap();
/// assert_eq!((s, c), (0.0, 1.0));
/// ```
pub fn geom_trig_tail<T: Real>(lambda: T, theta: T, phase: T) -> Result<(T, T)> {
    if !(lambda.abs() < T::one()) {
        return Err(Error::NotContracting {
            modulus: lambda.abs().to_f64(),
        });
    }
    let (s, c) = trig_tail_complex(Complex::new(lambda, T::zero()), theta, phase);
    Ok((s.re, c.re))
}

const ABERTH_MAX_ITER: usize = 2000;
const ROOT_TOL: f64 = 1e-12;

fn aberth(coeffs: &[f64]) -> Result<Vec<Complex<f64>>> {
    let n = coeffs.len() - 1;
    let p = Polynomial::new(coeffs.to_vec());
    let dp = p.derivative();
    let lead = coeffs[n].abs();
    let radius = (coeffs[0].abs() / lead).powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex<f64>> = (0..n)
        .map(|k| {
            let a = 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            Complex::from_polar(radius, a)
        })
        .collect();
    let eps = f64::EPSILON;
    for _ in 0..ABERTH_MAX_ITER {
        let mut done = true;
        for i in 0..n {
            let pz = p.eval_complex(z[i]);
            let scale = p.magnitude_at(z[i].norm());
            if pz.norm() <= 4.0 * eps * scale {
                continue;
            }
            let ratio = pz / dp.eval_complex(z[i]);
            let mut s = Complex::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += Complex::new(1.0, 0.0) / (z[i] - z[j]);
                }
            }
            let w = ratio / (Complex::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            if w.norm() > 4.0 * eps * z[i].norm() {
                done = false;
            }
        }
        if done {
            return Ok(z);
        }
    }
    Err(Error::RootsNotConverged {
        iterations: ABERTH_MAX_ITER,
    })
}

fn newton_polish<T: Real>(p: &Polynomial<T>, dp: &Polynomial<T>, z0: Complex<T>) -> Complex<T> {
    let steps = if T::EPSILON < f64::EPSILON { 8 } else { 1 };
    let real = z0.im == T::zero();
    let mut z = z0;
    let mut res = cabs(p.eval_complex(z));
    for _ in 0..steps {
        let cand = if real {
            let x = z.re;
            Complex::new(x - p.eval(x) / dp.eval(x), T::zero())
        } else {
            z - p.eval_complex(z) / dp.eval_complex(z)
        };
        let r = cabs(p.eval_complex(cand));
        if !(r < res) {
            break;
        }
        z = cand;
        res = r;
    }
    z
}

/// All complex roots of `p` with multiplicity, sorted by modulus then argument.
///
/// Aberth–Ehrlich iteration in double precision followed by Newton polishing
/// in the working precision. Roots whose imaginary part is below `1e-10`
/// of their modulus are treated as real.
///
/// ```
/// use k2pm::poly::{poly_roots, Polynomial};
/// let roots = poly_roots(&Polynomial::new(vec![-1.0, 0.0, 1.0])).unwrap();
/// assert!((roots[0].re.abs() - 1.0).abs() < 1e-14);
/// ```
pub fn poly_roots<T: Real>(p: &Polynomial<T>) -> Result<Vec<Complex<T>>> {
    if p.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let zeros = p.coeffs().iter().take_while(|c| **c == T::zero()).count();
    let reduced = Polynomial::new(p.coeffs()[zeros..].to_vec());
    let mut roots: Vec<Complex<T>> = vec![Complex::new(T::zero(), T::zero()); zeros];
    if reduced.degree() > 0 {
        let f: Vec<f64> = reduced.coeffs().iter().map(|c| c.to_f64()).collect();
        let approx = aberth(&f)?;
        let dp = reduced.derivative();
        for z in approx {
            let z = if z.im.abs() <= 1e-10 * z.norm() {
                Complex::new(z.re, 0.0)
            } else {
                z
            };
            roots.push(newton_polish(&reduced, &dp, cast_complex(z)));
        }
    }
    for (index, z) in roots.iter().enumerate() {
        let scale = p.magnitude_at(cabs(*z));
        let residual = cabs(p.eval_complex(*z));
        if !(residual <= T::from_f64(ROOT_TOL) * scale) {
            return Err(Error::RootResidual {
                index,
                residual: (residual / scale).to_f64(),
            });
        }
    }
    roots.sort_by(|a, b| {
        let ka = (cabs(*a).to_f64(), a.im.to_f64().atan2(a.re.to_f64()));
        let kb = (cabs(*b).to_f64(), b.im.to_f64().atan2(b.re.to_f64()));
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Dd;

    fn defining_sum(i: u32, k: u32) -> i128 {
        if i == 0 && k == 0 {
            return 1;
        }
        (1..=i)
            .map(|l| {
                let sign = if (i - l).is_multiple_of(2) { 1 } else { -1 };
                sign * binomial(i, l) * (l as i128).pow(k)
            })
            .sum()
    }

    #[test]
    fn finite_differences_match_defining_sum() {
        for k in 0..=14 {
            for i in 0..=16 {
                assert_eq!(finite_diff_zero(i, k), defining_sum(i, k), "i={i} k={k}");
            }
        }
        assert_eq!(finite_diff_zero(1, 1), 1);
        assert_eq!(finite_diff_zero(0, 3), 0);
    }

    // E_k from (1-x)^{k+2}/x * (x d/dx)^k [x/(1-x)^2], tracked as N(x)/(1-x)^j.
    fn euler_frobenius_by_derivation(k: u32) -> Vec<i128> {
        let mut num: Vec<i128> = vec![0, 1];
        for j in (2i128..).take(k as usize) {
            let len = num.len() + 1;
            let mut out = vec![0i128; len];
            for (s, &c) in num.iter().enumerate() {
                // x N' (1 - x)
                if s > 0 {
                    out[s] += s as i128 * c;
                    out[s + 1] -= s as i128 * c;
                }
                // j x N
                out[s + 1] += j * c;
            }
            num = out;
        }
        while num.last() == Some(&0) {
            num.pop();
        }
        num.remove(0);
        num
    }

    #[test]
    fn euler_frobenius_known_values() {
        assert_eq!(euler_frobenius_coeffs(0), vec![1]);
        assert_eq!(euler_frobenius_coeffs(1), vec![1, 1]);
        assert_eq!(euler_frobenius_coeffs(2), vec![1, 4, 1]);
        assert_eq!(euler_frobenius_coeffs(3), vec![1, 11, 11, 1]);
        assert_eq!(euler_frobenius_coeffs(4), vec![1, 26, 66, 26, 1]);
        for k in 0..=14 {
            assert_eq!(euler_frobenius_coeffs(k), euler_frobenius_by_derivation(k), "k={k}");
        }
    }

    #[test]
    fn euler_frobenius_symmetric_and_factorial_at_one() {
        let mut fact: i128 = 1;
        for k in 0..=8u32 {
            fact *= k as i128 + 1;
            let c = euler_frobenius_coeffs(k);
            assert_eq!(c.len(), k as usize + 1);
            let rev: Vec<i128> = c.iter().rev().copied().collect();
            assert_eq!(c, rev);
            assert_eq!(c.iter().sum::<i128>(), fact);
        }
    }

    fn brute_power(q: f64, k: u32) -> f64 {
        let mut s = 0.0;
        for g in 0..20000 {
            let t = q.powi(g) * (g as f64).powi(k as i32);
            s += t;
            if g > 50 && t.abs() < 1e-300 {
                break;
            }
        }
        s
    }

    #[test]
    fn power_tail_examples_and_brute_force() {
        assert_eq!(geom_power_tail(0.5, 0).unwrap(), 2.0);
        assert!((geom_power_tail(0.5, 1).unwrap() - 2.0).abs() < 1e-15);
        assert!(geom_power_tail(1.0, 1).is_err());
        for &q in &[0.1, -0.1, 0.5, -0.5, 0.9] {
            for k in 0..=6 {
                let a = geom_power_tail(q, k).unwrap();
                let b = brute_power(q, k);
                assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "q={q} k={k} {a} {b}");
            }
        }
    }

    #[test]
    fn trig_tail_brute_force() {
        assert_eq!(geom_trig_tail(0.0, 0.3, 0.0).unwrap(), (0.0, 0.0));
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..50 {
            let l = 1.9 * next() - 0.95;
            let th = 6.0 * next() - 3.0;
            let ph = 6.0 * next() - 3.0;
            let (s, c) = geom_trig_tail(l, th, ph).unwrap();
            let (mut bs, mut bc) = (0.0, 0.0);
            let mut lp = 1.0;
            for g in 1..4000 {
                lp *= l;
                bs += lp * (th * g as f64 + ph).sin();
                bc += lp * (th * g as f64 + ph).cos();
            }
            assert!((s - bs).abs() < 1e-12 && (c - bc).abs() < 1e-12);
        }
        assert!(geom_trig_tail(-1.0, 0.1, 0.1).is_err());
    }

    #[test]
    fn roots_simple() {
        let r = poly_roots(&Polynomial::new(vec![1.0, 0.0, 1.0])).unwrap();
        assert!((r[0].re.abs() < 1e-15) && (r[0].im.abs() - 1.0).abs() < 1e-15);
        assert!((r[0].im + r[1].im).abs() < 1e-15);
        let r = poly_roots(&Polynomial::new(vec![0.0, 0.0, -2.0, 1.0])).unwrap();
        assert_eq!(r[0].re, 0.0);
        assert!((r[2].re - 2.0).abs() < 1e-15);
        assert!(poly_roots(&Polynomial::new(vec![3.0])).is_err());
    }

    #[test]
    fn roots_product_and_dd_polish() {
        let p = Polynomial::<f64>::new(vec![2.0, -3.0, 0.5, 7.0, 1.0, -0.25]);
        let r = poly_roots(&p).unwrap();
        let prod = r
            .iter()
            .fold(Complex::new(1.0, 0.0), |a, z| a * z);
        let expect = -(2.0 / -0.25);
        assert!((prod.re - expect).abs() < 1e-10 * expect.abs() && prod.im.abs() < 1e-10);

        let pd: Polynomial<Dd> = Polynomial::from_integers(&euler_frobenius_coeffs(8));
        for z in poly_roots(&pd).unwrap() {
            let res = cabs(pd.eval_complex(z)) / pd.magnitude_at(cabs(z));
            assert!(res.to_f64() < 1e-28);
            assert!(z.im == Dd::from(0.0) && z.re < Dd::from(0.0));
        }
    }
}
