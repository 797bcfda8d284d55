//! Spline construction through the discrete operator.
//!
//! The data are extended beyond `[0, 1]` by two null-space branches
//! `u⁻(x) = d₁⁻ sin ωx + d₂⁻ cos ωx + Σ r_α⁻ x^α` (for `x <= 0`) and `u⁺`
//! (for `x >= 1`). Their `2m-2` free parameters make `D_m * u` vanish at the
//! `m-1` grid points on either side of the interval. The spline coefficients
//! are then `C_β = (D_m * u)(hβ)`, and `d₁, d₂, r_α` are the branch averages.

use std::borrow::Cow;

use num_complex::Complex;

use crate::config::{SampleSet, SplineConfig};
use crate::error::Result;
use crate::linalg::{Lu, Matrix};
use crate::operator::{build_operator, DiscreteOperator};
use crate::poly::{power_tail_from_one, trig_tail_complex};
use crate::real::{cpowi, Real};

/// Sample values the builder accepts: a validated [`SampleSet`], or values
/// already held in `T` (so that data known to higher precision than `f64`
/// keep it).
pub trait Samples<T: Real> {
    fn sample_values(&self) -> Cow<'_, [T]>;
}

impl<T: Real> Samples<T> for SampleSet {
    fn sample_values(&self) -> Cow<'_, [T]> {
        Cow::Owned(self.values().iter().map(|&v| T::from_f64(v)).collect())
    }
}

impl<T: Real> Samples<T> for [T] {
    fn sample_values(&self) -> Cow<'_, [T]> {
        Cow::Borrowed(self)
    }
}

impl<T: Real> Samples<T> for Vec<T> {
    fn sample_values(&self) -> Cow<'_, [T]> {
        Cow::Borrowed(self)
    }
}

/// Condition number above which the boundary solve logs a warning.
pub const CONDITION_WARN: f64 = 1e10;

/// Parameters of the two extension branches and their combinations.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySolution<T> {
    pub d1_minus: T,
    pub d1_plus: T,
    pub d2_minus: T,
    pub d2_plus: T,
    pub r_minus: Vec<T>,
    pub r_plus: Vec<T>,
    /// Estimated 1-norm condition number of the boundary matrix.
    pub condition: f64,
}

impl<T: Real> BoundarySolution<T> {
    fn half() -> T {
        T::from_f64(0.5)
    }

    pub fn d1(&self) -> T {
        (self.d1_plus + self.d1_minus) * Self::half()
    }

    pub fn d2(&self) -> T {
        (self.d2_plus + self.d2_minus) * Self::half()
    }

    pub fn r(&self) -> Vec<T> {
        self.r_plus
            .iter()
            .zip(&self.r_minus)
            .map(|(&a, &b)| (a + b) * Self::half())
            .collect()
    }

    /// `(d₁⁺ - d₁⁻)/2`.
    pub fn big_d1(&self) -> T {
        (self.d1_plus - self.d1_minus) * Self::half()
    }

    /// `(d₂⁺ - d₂⁻)/2`.
    pub fn big_d2(&self) -> T {
        (self.d2_plus - self.d2_minus) * Self::half()
    }

    /// Coefficients of the half-difference polynomial `(r⁺ - r⁻)/2`.
    pub fn q_coeffs(&self) -> Vec<T> {
        self.r_plus
            .iter()
            .zip(&self.r_minus)
            .map(|(&a, &b)| (a - b) * Self::half())
            .collect()
    }
}

/// Coefficients of `S(x) = Σ C_β G_m(x - x_β) + d₁ sin ωx + d₂ cos ωx + Σ r_α x^α`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineCoefficients<T> {
    pub c: Vec<T>,
    pub d1: T,
    pub d2: T,
    pub r: Vec<T>,
}

impl<T: Real> SplineCoefficients<T> {
    pub fn zeros(config: &SplineConfig) -> SplineCoefficients<T> {
        SplineCoefficients {
            c: vec![T::zero(); config.n() + 1],
            d1: T::zero(),
            d2: T::zero(),
            r: vec![T::zero(); config.poly_terms()],
        }
    }

    pub fn max_abs_c(&self) -> f64 {
        self.c.iter().fold(0.0, |a, v| a.max(v.abs().to_f64()))
    }

    pub fn to_f64(&self) -> SplineCoefficients<f64> {
        SplineCoefficients {
            c: self.c.iter().map(|v| v.to_f64()).collect(),
            d1: self.d1.to_f64(),
            d2: self.d2.to_f64(),
            r: self.r.iter().map(|v| v.to_f64()).collect(),
        }
    }

    /// Residuals of `Σ C_β sin ωx_β = 0`, `Σ C_β cos ωx_β = 0` and
    /// `Σ C_β x_β^α = 0` for `α = 0..m-3`.
    pub fn side_conditions(&self, config: &SplineConfig) -> SideConditions {
        let omega = T::from_f64(config.omega());
        let n = T::from_usize(config.n());
        let mut sin = T::zero();
        let mut cos = T::zero();
        let mut poly = vec![T::zero(); config.poly_terms()];
        for (b, &c) in self.c.iter().enumerate() {
            let x = T::from_usize(b) / n;
            let (s, co) = (omega * x).sin_cos();
            sin += c * s;
            cos += c * co;
            let mut xp = T::one();
            for p in poly.iter_mut() {
                *p += c * xp;
                xp *= x;
            }
        }
        SideConditions {
            sin: sin.abs().to_f64(),
            cos: cos.abs().to_f64(),
            poly: poly.iter().map(|v| v.abs().to_f64()).collect(),
        }
    }
}

/// Absolute residuals of the orthogonality conditions on `C`.
#[derive(Debug, Clone, PartialEq)]
pub struct SideConditions {
    pub sin: f64,
    pub cos: f64,
    pub poly: Vec<f64>,
}

impl SideConditions {
    pub fn max(&self) -> f64 {
        self.poly.iter().fold(self.sin.max(self.cos), |a, &b| a.max(b))
    }
}

/// The `(2m-2)`-dimensional linear system for the branch parameters, with
/// unknowns ordered `[d₁⁻, r₀⁻..r_{m-3}⁻, d₁⁺, r₀⁺..r_{m-3}⁺]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySystem<T> {
    pub matrix: Matrix<T>,
    pub rhs: Vec<T>,
}

// Affine form in the unknowns with complex weights.
#[derive(Clone)]
struct Affine<T> {
    coef: Vec<Complex<T>>,
    cst: Complex<T>,
}

impl<T: Real> Affine<T> {
    fn zero(n: usize) -> Affine<T> {
        let z = Complex::new(T::zero(), T::zero());
        Affine {
            coef: vec![z; n],
            cst: z,
        }
    }

    fn axpy(&mut self, k: Complex<T>, other: &Affine<T>) {
        for (a, &b) in self.coef.iter_mut().zip(&other.coef) {
            *a = *a + k * b;
        }
        self.cst = self.cst + k * other.cst;
    }
}

// Σ_{t>=1} λ^t f(c + σ h t) for f = sin ω·, cos ω· and x^α, α = 0..m-3.
struct BranchWeights<T> {
    sin: Complex<T>,
    cos: Complex<T>,
    pow: Vec<Complex<T>>,
}

fn binomial<T: Real>(n: usize, k: usize) -> T {
    (0..k).fold(T::one(), |acc, j| acc * T::from_usize(n - j) / T::from_usize(j + 1))
}

fn branch_weights<T: Real>(
    config: &SplineConfig,
    lambda: Complex<T>,
    at_one: bool,
    forward: bool,
) -> BranchWeights<T> {
    let omega = T::from_f64(config.omega());
    let h = T::one() / T::from_usize(config.n());
    let sigma_h = if forward { h } else { -h };
    let theta = sigma_h * omega;
    let phase = if at_one { omega } else { T::zero() };
    let (sin, cos) = trig_tail_complex(lambda, theta, phase);
    let q = config.poly_terms();
    let tails: Vec<Complex<T>> = (0..q).map(|j| power_tail_from_one(lambda, j as u32)).collect();
    let mut pow = Vec::with_capacity(q);
    for alpha in 0..q {
        let w = if at_one {
            (0..=alpha).fold(Complex::new(T::zero(), T::zero()), |acc, j| {
                acc + tails[j] * (binomial::<T>(alpha, j) * sigma_h.powi(j as i32))
            })
        } else {
            tails[alpha] * sigma_h.powi(alpha as i32)
        };
        pow.push(w);
    }
    BranchWeights { sin, cos, pow }
}

struct Layout {
    m: usize,
}

impl Layout {
    fn size(&self) -> usize {
        2 * self.m - 2
    }
    fn d1_minus(&self) -> usize {
        0
    }
    fn r_minus(&self, alpha: usize) -> usize {
        1 + alpha
    }
    fn d1_plus(&self) -> usize {
        self.m - 1
    }
    fn r_plus(&self, alpha: usize) -> usize {
        self.m + alpha
    }
}

struct Trig<T> {
    cos_omega: T,
    tan_omega: T,
}

fn trig<T: Real>(config: &SplineConfig) -> Trig<T> {
    let (s, c) = T::from_f64(config.omega()).sin_cos();
    Trig {
        cos_omega: c,
        tan_omega: s / c,
    }
}

fn cplx<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

// The branch tail as an affine form, with d₂ eliminated through continuity.
fn minus_form<T: Real>(lay: &Layout, w: &BranchWeights<T>, phi0: T) -> Affine<T> {
    let mut f = Affine::zero(lay.size());
    f.coef[lay.d1_minus()] = w.sin;
    // d₂⁻ = φ₀ - r₀⁻
    f.cst = w.cos * phi0;
    for (alpha, &pw) in w.pow.iter().enumerate() {
        f.coef[lay.r_minus(alpha)] = pw;
    }
    if !w.pow.is_empty() {
        f.coef[lay.r_minus(0)] = f.coef[lay.r_minus(0)] - w.cos;
    }
    f
}

fn plus_form<T: Real>(lay: &Layout, w: &BranchWeights<T>, phi_n: T, tr: &Trig<T>) -> Affine<T> {
    let mut f = Affine::zero(lay.size());
    // d₂⁺ = φ_N / cos ω - d₁⁺ tan ω - Σ r_α⁺ / cos ω
    f.coef[lay.d1_plus()] = w.sin - w.cos * tr.tan_omega;
    f.cst = w.cos * (phi_n / tr.cos_omega);
    for (alpha, &pw) in w.pow.iter().enumerate() {
        f.coef[lay.r_plus(alpha)] = pw - w.cos / tr.cos_omega;
    }
    f
}

/// Assembles the boundary system `(D_m * u)(hβ) = 0` for
/// `β = -1..-(m-1)` (first `m-1` rows) and `β = N+1..N+m-1` (last `m-1` rows).
///
/// All infinite sums are evaluated in closed form.
pub fn assemble_boundary_system<T: Real>(
    op: &DiscreteOperator<T>,
    samples: &(impl Samples<T> + ?Sized),
) -> Result<BoundarySystem<T>> {
    let config = op.config();
    config.check_cosine()?;
    let phi = checked_values(config, samples)?;
    let m = config.m();
    let n = config.n();
    let lay = Layout { m };
    let tr = trig::<T>(config);
    let (phi0, phi_n) = (phi[0], phi[n]);
    let size = lay.size();
    let mut rows: Vec<Affine<T>> = vec![Affine::zero(size); size];
    for (&a, &l) in op.a().iter().zip(op.lambda()) {
        let lam_n = cpowi(l, n as u32);
        // Σ_γ λ^γ φ_γ and Σ_γ λ^(N-γ) φ_γ
        let mut fwd = cplx(T::zero());
        let mut bwd = cplx(T::zero());
        for &v in phi.iter().rev() {
            fwd = fwd * l + cplx(v);
        }
        for &v in phi.iter() {
            bwd = bwd * l + cplx(v);
        }
        let left_tail = branch_weights(config, l, false, true); // Σ λ^t u⁻(ht)
        let right_out = branch_weights(config, l, true, true); // Σ λ^t u⁺(1+ht)
        let left_out = branch_weights(config, l, false, false); // Σ λ^t u⁻(-ht)
        let right_tail = branch_weights(config, l, true, false); // Σ λ^t u⁺(1-ht)

        // Left rows: P - φ₀ + λ^N N_k - E_k
        let mut left = Affine::zero(size);
        left.cst = fwd - cplx(phi0);
        left.axpy(lam_n, &plus_form(&lay, &right_out, phi_n, &tr));
        left.axpy(cplx(-T::one()), &minus_form(&lay, &left_tail, phi0));
        // Right rows: P' - φ_N + λ^N M_k - F_k
        let mut right = Affine::zero(size);
        right.cst = bwd - cplx(phi_n);
        right.axpy(lam_n, &minus_form(&lay, &left_out, phi0));
        right.axpy(cplx(-T::one()), &plus_form(&lay, &right_tail, phi_n, &tr));

        let mut weight = a * op.p();
        for b in 0..m - 1 {
            rows[b].axpy(weight, &left);
            rows[m - 1 + b].axpy(weight, &right);
            weight = weight * l;
        }
    }
    let mut matrix = Matrix::zeros(size);
    let mut rhs = vec![T::zero(); size];
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row.coef.iter().enumerate() {
            matrix.set(i, j, c.re);
        }
        rhs[i] = -row.cst.re;
    }
    Ok(BoundarySystem { matrix, rhs })
}

fn checked_values<'a, T: Real>(
    config: &SplineConfig,
    samples: &'a (impl Samples<T> + ?Sized),
) -> Result<Cow<'a, [T]>> {
    let phi = samples.sample_values();
    if phi.len() != config.n() + 1 {
        return Err(crate::Error::SampleCount {
            expected: config.n() + 1,
            got: phi.len(),
        });
    }
    if let Some(index) = phi.iter().position(|v| !v.is_finite()) {
        return Err(crate::Error::NonFiniteSample { index });
    }
    Ok(phi)
}

/// Solves the boundary system by LU with partial pivoting and recovers
/// `d₂^±` from continuity at both ends.
pub fn solve_boundary<T: Real>(
    op: &DiscreteOperator<T>,
    samples: &(impl Samples<T> + ?Sized),
) -> Result<BoundarySolution<T>> {
    let sys = assemble_boundary_system(op, samples)?;
    let lu = Lu::factor(&sys.matrix, "boundary system")?;
    let x = lu.solve(&sys.rhs);
    let condition = lu.condition_estimate();
    if condition > CONDITION_WARN {
        log::warn!("boundary system condition number {condition:.3e}");
    }
    Ok(boundary_from_unknowns(op.config(), &x, samples, condition))
}

// Recovers d₂^± by continuity and splits the unknown vector into branches.
pub(crate) fn boundary_from_unknowns<T: Real>(
    config: &SplineConfig,
    x: &[T],
    samples: &(impl Samples<T> + ?Sized),
    condition: f64,
) -> BoundarySolution<T> {
    let lay = Layout { m: config.m() };
    let q = config.poly_terms();
    let tr = trig::<T>(config);
    let phi = samples.sample_values();
    let phi0 = phi[0];
    let phi_n = phi[config.n()];
    let r_minus: Vec<T> = (0..q).map(|a| x[lay.r_minus(a)]).collect();
    let r_plus: Vec<T> = (0..q).map(|a| x[lay.r_plus(a)]).collect();
    let d1_minus = x[lay.d1_minus()];
    let d1_plus = x[lay.d1_plus()];
    let d2_minus = phi0 - r_minus.first().copied().unwrap_or_else(T::zero);
    let sum_r: T = r_plus.iter().copied().sum();
    let d2_plus = phi_n / tr.cos_omega - d1_plus * tr.tan_omega - sum_r / tr.cos_omega;
    BoundarySolution {
        d1_minus,
        d1_plus,
        d2_minus,
        d2_plus,
        r_minus,
        r_plus,
        condition,
    }
}

fn branch_tail<T: Real>(w: &BranchWeights<T>, d1: T, d2: T, r: &[T]) -> Complex<T> {
    let mut s = w.sin * d1 + w.cos * d2;
    for (&pw, &ra) in w.pow.iter().zip(r) {
        s = s + pw * ra;
    }
    s
}

/// `M_k = Σ_{t>=1} λ_k^t u⁻(-ht)` and `N_k = Σ_{t>=1} λ_k^t u⁺(1+ht)`.
pub fn compute_mn<T: Real>(
    op: &DiscreteOperator<T>,
    bs: &BoundarySolution<T>,
) -> (Vec<Complex<T>>, Vec<Complex<T>>) {
    let config = op.config();
    op.lambda()
        .iter()
        .map(|&l| {
            let wm = branch_weights(config, l, false, false);
            let wp = branch_weights(config, l, true, true);
            (
                branch_tail(&wm, bs.d1_minus, bs.d2_minus, &bs.r_minus),
                branch_tail(&wp, bs.d1_plus, bs.d2_plus, &bs.r_plus),
            )
        })
        .unzip()
}

fn branch_value<T: Real>(config: &SplineConfig, d1: T, d2: T, r: &[T], x: T) -> T {
    let (s, c) = (T::from_f64(config.omega()) * x).sin_cos();
    let mut v = d1 * s + d2 * c;
    let mut xp = T::one();
    for &ra in r {
        v += ra * xp;
        xp *= x;
    }
    v
}

/// The extended data `u(hβ)`: `u⁻` for `β < 0`, the samples on `0..=N`,
/// `u⁺` for `β > N`.
pub fn u_extension<T: Real>(
    config: &SplineConfig,
    bs: &BoundarySolution<T>,
    samples: &(impl Samples<T> + ?Sized),
    beta: i64,
) -> T {
    let n = config.n() as i64;
    let x = T::from_i64(beta) / T::from_i64(n);
    if beta < 0 {
        branch_value(config, bs.d1_minus, bs.d2_minus, &bs.r_minus, x)
    } else if beta > n {
        branch_value(config, bs.d1_plus, bs.d2_plus, &bs.r_plus, x)
    } else {
        samples.sample_values()[beta as usize]
    }
}

/// `Σ_{|β-γ|<=W} D_m(h(β-γ)) u(hγ)`, the truncated convolution of the
/// operator with the extended data.
///
/// Outside `[0, N]` this vanishes up to truncation and rounding; on the grid it
/// reproduces `C_β`. A window of a few multiples of
/// [`DiscreteOperator::truncation_window`] makes the neglected tail negligible.
pub fn convolve_extension<T: Real>(
    op: &DiscreteOperator<T>,
    bs: &BoundarySolution<T>,
    samples: &(impl Samples<T> + ?Sized),
    beta: i64,
    window: usize,
) -> T {
    let phi = samples.sample_values();
    let phi: &[T] = &phi;
    let w = window as i64;
    (beta - w..=beta + w)
        .map(|g| op.eval_d(beta - g) * u_extension(op.config(), bs, phi, g))
        .sum()
}

/// All spline coefficients in `O(N)`:
/// `C_β = p[u(β-1) + C u(β) + u(β+1)] + p Σ_k (A_k/λ_k)[Σ_γ λ_k^|β-γ| φ_γ + λ_k^β M_k + λ_k^(N-β) N_k]`.
///
/// The inner sums over the samples come from one forward and one backward
/// geometric recursion per root.
pub fn compute_coefficients<T: Real>(
    op: &DiscreteOperator<T>,
    bs: &BoundarySolution<T>,
    samples: &(impl Samples<T> + ?Sized),
) -> Result<SplineCoefficients<T>> {
    let config = op.config();
    let phi = checked_values(config, samples)?;
    let phi: &[T] = &phi;
    let n = config.n();
    let p = op.p();
    let u = |b: i64| u_extension(config, bs, phi, b);

    let mut c = vec![T::zero(); n + 1];
    for b in 0..=n {
        let prev = if b == 0 { u(-1) } else { phi[b - 1] };
        let next = if b == n { u(n as i64 + 1) } else { phi[b + 1] };
        c[b] = p * (prev + op.c() * phi[b] + next);
    }

    let (mk, nk) = compute_mn(op, bs);
    let zero = cplx(T::zero());
    let mut fwd = vec![zero; n + 1];
    for (k, (&a, &l)) in op.a().iter().zip(op.lambda()).enumerate() {
        let w = a / l * p;
        let mut acc = zero;
        let mut lam_b = cplx(T::one());
        for b in 0..=n {
            acc = acc * l + cplx(phi[b]);
            // L_β + λ^β M_k
            fwd[b] = acc + lam_b * mk[k];
            lam_b = lam_b * l;
        }
        let mut acc = zero;
        let mut lam_nb = cplx(T::one());
        for b in (0..=n).rev() {
            acc = acc * l + cplx(phi[b]);
            // R_β - φ_β + λ^(N-β) N_k
            let total = fwd[b] + acc - cplx(phi[b]) + lam_nb * nk[k];
            c[b] += (w * total).re;
            lam_nb = lam_nb * l;
        }
    }
    Ok(SplineCoefficients {
        c,
        d1: bs.d1(),
        d2: bs.d2(),
        r: bs.r(),
    })
}

/// Operator for a fixed configuration, reusable across data sets.
#[derive(Debug, Clone)]
pub struct SplineBuilder<T> {
    op: DiscreteOperator<T>,
}

impl<T: Real> SplineBuilder<T> {
    pub fn new(config: &SplineConfig) -> Result<SplineBuilder<T>> {
        config.check_cosine()?;
        Ok(SplineBuilder {
            op: build_operator(config)?,
        })
    }

    pub fn from_operator(op: DiscreteOperator<T>) -> SplineBuilder<T> {
        SplineBuilder { op }
    }

    pub fn operator(&self) -> &DiscreteOperator<T> {
        &self.op
    }

    pub fn config(&self) -> &SplineConfig {
        self.op.config()
    }

    /// Boundary solve followed by the coefficient recursion.
    pub fn build(&self, samples: &(impl Samples<T> + ?Sized)) -> Result<crate::Spline<T>> {
        let bs = solve_boundary(&self.op, samples)?;
        let coeffs = compute_coefficients(&self.op, &bs, samples)?;
        Ok(crate::Spline::new(*self.config(), coeffs).with_boundary(bs))
    }
}

/// Builds the interpolating spline of `samples`.
///
/// ```
/// use k2pm::{build_spline, Dd, Real, SampleSet, SplineConfig};
/// let cfg = SplineConfig::new(3, 1.0, 10).unwrap();
/// let samples = SampleSet::from_fn(&cfg, |x| x.sin()).unwrap();
/// let spline = build_spline::<Dd>(&cfg, &samples).unwrap();
/// assert!((spline.coefficients().d1.to_f64() - 1.0).abs() < 1e-12);
/// ```
pub fn build_spline<T: Real>(
    config: &SplineConfig,
    samples: &(impl Samples<T> + ?Sized),
) -> Result<crate::Spline<T>> {
    SplineBuilder::new(config)?.build(samples)
}
