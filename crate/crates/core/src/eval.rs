//! Point evaluation and the seminorm `sqrt(∫ (S^(m) + ω² S^(m-2))² dx)`.

use crate::builder::{BoundarySolution, SplineCoefficients};
use crate::config::SplineConfig;
use crate::error::{Error, Result};
use crate::kernel::{g, g_derivative};
use crate::real::Real;

/// A constructed spline: configuration, coefficients and (when built
/// through the operator) the boundary branches.
#[derive(Debug, Clone, PartialEq)]
pub struct Spline<T> {
    config: SplineConfig,
    coeffs: SplineCoefficients<T>,
    boundary: Option<BoundarySolution<T>>,
}

impl<T: Real> Spline<T> {
    pub fn new(config: SplineConfig, coeffs: SplineCoefficients<T>) -> Spline<T> {
        Spline {
            config,
            coeffs,
            boundary: None,
        }
    }

    pub fn with_boundary(mut self, bs: BoundarySolution<T>) -> Spline<T> {
        self.boundary = Some(bs);
        self
    }

    pub fn config(&self) -> &SplineConfig {
        &self.config
    }

    pub fn coefficients(&self) -> &SplineCoefficients<T> {
        &self.coeffs
    }

    pub fn boundary(&self) -> Option<&BoundarySolution<T>> {
        self.boundary.as_ref()
    }

    /// `S(x)` for `x` in `[0, 1]`.
    pub fn eval(&self, x: T) -> Result<T> {
        evaluate(&self.config, &self.coeffs, x, false)
    }

    /// `S(x)` for any real `x`.
    pub fn eval_extrapolated(&self, x: T) -> T {
        eval_unchecked(&self.config, &self.coeffs, x)
    }

    pub fn seminorm(&self, quad_points: usize) -> Result<T> {
        seminorm(&self.config, &self.coeffs, quad_points)
    }
}

fn eval_unchecked<T: Real>(config: &SplineConfig, coeffs: &SplineCoefficients<T>, x: T) -> T {
    let m = config.m();
    let omega = T::from_f64(config.omega());
    let n = T::from_usize(config.n());
    let mut s = T::zero();
    for (b, &c) in coeffs.c.iter().enumerate() {
        s += c * g(m, omega, x - T::from_usize(b) / n);
    }
    let (sn, cs) = (omega * x).sin_cos();
    s += coeffs.d1 * sn + coeffs.d2 * cs;
    let mut xp = T::one();
    for &r in &coeffs.r {
        s += r * xp;
        xp *= x;
    }
    s
}

/// `Σ C_γ G_m(x - x_γ) + d₁ sin ωx + d₂ cos ωx + Σ r_α x^α`.
///
/// Points outside `[0, 1]` are rejected unless `allow_extrapolation` is set.
pub fn evaluate<T: Real>(
    config: &SplineConfig,
    coeffs: &SplineCoefficients<T>,
    x: T,
    allow_extrapolation: bool,
) -> Result<T> {
    check_shape(config, coeffs)?;
    let xf = x.to_f64();
    if !xf.is_finite() || (!allow_extrapolation && !(0.0..=1.0).contains(&xf)) {
        return Err(Error::OutsideDomain { x: xf });
    }
    Ok(eval_unchecked(config, coeffs, x))
}

pub(crate) fn check_shape<T>(config: &SplineConfig, coeffs: &SplineCoefficients<T>) -> Result<()> {
    if coeffs.c.len() != config.n() + 1 || coeffs.r.len() != config.poly_terms() {
        return Err(Error::ShapeMismatch {
            what: format!(
                "coefficients have {} C and {} r entries, config needs {} and {}",
                coeffs.c.len(),
                coeffs.r.len(),
                config.n() + 1,
                config.poly_terms()
            ),
        });
    }
    Ok(())
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre<T: Real>(order: usize) -> (Vec<T>, Vec<T>) {
    let mut nodes = vec![T::zero(); order];
    let mut weights = vec![T::zero(); order];
    let nf = order as f64;
    // Legendre P_n and P_n' at x by the three-term recurrence
    let legendre = |x: T| {
        let mut p0 = T::one();
        let mut p1 = x;
        for k in 2..=order {
            let kf = T::from_usize(k);
            let p2 = ((kf + kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        if order == 0 {
            return (T::one(), T::zero());
        }
        let dp = T::from_usize(order) * (x * p1 - p0) / (x * x - T::one());
        (p1, dp)
    };
    for i in 0..order.div_ceil(2) {
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut x = T::from_f64(guess);
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre(x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs().to_f64() <= T::EPSILON * 4.0 {
                dp = legendre(x).1;
                break;
            }
        }
        let w = T::from_f64(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    if order % 2 == 1 {
        nodes[order / 2] = T::zero();
    }
    (nodes, weights)
}

/// Points per cell used by the composite rule for `quad_points` total.
pub fn cell_order(config: &SplineConfig, quad_points: usize) -> usize {
    quad_points.div_ceil(config.n()).max(8)
}

/// Composite Gauss–Legendre points on `[0, 1]` with breaks at the nodes,
/// together with `S^(m) + ω² S^(m-2)` at each point.
#[derive(Debug, Clone)]
pub struct SeminormQuadrature<T> {
    m: usize,
    omega: T,
    points: Vec<T>,
    weights: Vec<T>,
    values: Vec<T>,
}

impl<T: Real> SeminormQuadrature<T> {
    /// Requires `quad_points >= 10(N+1)`.
    pub fn new(
        config: &SplineConfig,
        coeffs: &SplineCoefficients<T>,
        quad_points: usize,
    ) -> Result<SeminormQuadrature<T>> {
        check_shape(config, coeffs)?;
        let required = 10 * (config.n() + 1);
        if quad_points < required {
            return Err(Error::TooFewQuadraturePoints {
                required,
                got: quad_points,
            });
        }
        let m = config.m();
        let n = config.n();
        let omega = T::from_f64(config.omega());
        let omega2 = omega * omega;
        let (gx, gw) = gauss_legendre::<T>(cell_order(config, quad_points));
        let nt = T::from_usize(n);
        let half_h = T::from_f64(0.5) / nt;
        let mut points = Vec::with_capacity(n * gx.len());
        let mut weights = Vec::with_capacity(n * gx.len());
        for cell in 0..n {
            let mid = (T::from_usize(2 * cell + 1)) * half_h;
            for (&x, &w) in gx.iter().zip(&gw) {
                points.push(mid + half_h * x);
                weights.push(half_h * w);
            }
        }
        // The null-space part of S contributes nothing.
        let mut values = Vec::with_capacity(points.len());
        for &x in &points {
            let mut v = T::zero();
            for (b, &c) in coeffs.c.iter().enumerate() {
                let t = x - T::from_usize(b) / nt;
                let top = g_derivative(m, omega, m, t)?;
                let low = g_derivative(m, omega, m - 2, t)?;
                v += c * (top + omega2 * low);
            }
            values.push(v);
        }
        Ok(SeminormQuadrature {
            m,
            omega,
            points,
            weights,
            values,
        })
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    /// `S^(m) + ω² S^(m-2)` at every quadrature point.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn seminorm(&self) -> T {
        self.seminorm_with(|_| T::zero())
    }

    /// Seminorm of `S + η`, given `extra(x) = η^(m)(x) + ω² η^(m-2)(x)`.
    pub fn seminorm_with(&self, extra: impl Fn(T) -> T) -> T {
        let mut acc = T::zero();
        for ((&x, &w), &v) in self.points.iter().zip(&self.weights).zip(&self.values) {
            let f = v + extra(x);
            acc += w * f * f;
        }
        acc.sqrt()
    }

    /// Seminorm of `S + η` for a cosine-sum perturbation.
    pub fn seminorm_perturbed(&self, eta: &CosineSum<T>) -> T {
        self.seminorm_with(|x| eta.apply_operator(self.m, self.omega, x))
    }
}

/// `sqrt(∫₀¹ (S^(m) + ω² S^(m-2))² dx)` by composite Gauss–Legendre.
pub fn seminorm<T: Real>(
    config: &SplineConfig,
    coeffs: &SplineCoefficients<T>,
    quad_points: usize,
) -> Result<T> {
    Ok(SeminormQuadrature::new(config, coeffs, quad_points)?.seminorm())
}

/// `η(x) = Σ a_i cos(f_i x + φ_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CosineSum<T> {
    terms: Vec<(T, T, T)>,
}

impl<T: Real> CosineSum<T> {
    pub fn new() -> CosineSum<T> {
        CosineSum { terms: Vec::new() }
    }

    pub fn push(&mut self, amplitude: T, frequency: T, phase: T) {
        self.terms.push((amplitude, frequency, phase));
    }

    /// Adds `ε sin(πNx) sin(bx + c)`, which vanishes at every node `β/N`.
    pub fn add_node_bump(&mut self, n: usize, eps: T, b: T, c: T) {
        let k = T::pi() * T::from_usize(n);
        let half = eps * T::from_f64(0.5);
        self.push(half, k - b, -c);
        self.push(-half, k + b, c);
    }

    pub fn eval(&self, x: T) -> T {
        self.terms.iter().map(|&(a, f, p)| a * (f * x + p).cos()).sum()
    }

    /// `η^(j)(x)`.
    pub fn derivative(&self, j: usize, x: T) -> T {
        self.terms
            .iter()
            .map(|&(a, f, p)| a * f.powi(j as i32) * cos_derivative(j, f * x + p))
            .sum()
    }

    /// `η^(m)(x) + ω² η^(m-2)(x)`.
    pub fn apply_operator(&self, m: usize, omega: T, x: T) -> T {
        self.derivative(m, x) + omega * omega * self.derivative(m - 2, x)
    }
}

impl<T: Real> Default for CosineSum<T> {
    fn default() -> Self {
        CosineSum::new()
    }
}

// d^j/dθ^j cos θ
fn cos_derivative<T: Real>(j: usize, theta: T) -> T {
    let (s, c) = theta.sin_cos();
    match j % 4 {
        0 => c,
        1 => -s,
        2 => -c,
        _ => s,
    }
}
