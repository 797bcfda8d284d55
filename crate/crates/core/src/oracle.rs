//! Dense reference solver for the interpolation system, and coefficient
//! comparison.
//!
//! The `N+m+1` unknowns `[C₀..C_N, d₁, d₂, r₀..r_{m-3}]` satisfy the
//! interpolation conditions at every node plus the orthogonality of `C` to
//! `sin ωx`, `cos ωx` and `x^α`. This costs `O(N³)` and exists to check the
//! operator-based construction.

use crate::builder::SplineCoefficients;
use crate::config::SplineConfig;
use crate::error::{Error, Result};
use crate::kernel::g;
use crate::linalg::{Lu, Matrix};
use crate::real::Real;

/// `x_β = β/N` computed in `T`.
pub fn uniform_nodes<T: Real>(config: &SplineConfig) -> Vec<T> {
    let n = T::from_usize(config.n());
    (0..=config.n()).map(|b| T::from_usize(b) / n).collect()
}

fn check_nodes<T: Real>(config: &SplineConfig, nodes: &[T], samples: &[f64]) -> Result<()> {
    let expected = config.n() + 1;
    if nodes.len() != expected {
        return Err(Error::ShapeMismatch {
            what: format!("{} nodes for N = {}", nodes.len(), config.n()),
        });
    }
    if samples.len() != expected {
        return Err(Error::SampleCount {
            expected,
            got: samples.len(),
        });
    }
    if let Some(index) = samples.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteSample { index });
    }
    for (i, x) in nodes.iter().enumerate() {
        let xf = x.to_f64();
        if !(0.0..=1.0).contains(&xf) {
            return Err(Error::NodeOutsideDomain { index: i });
        }
        if i > 0 && !(nodes[i - 1] < *x) {
            return Err(Error::NodesNotIncreasing { index: i });
        }
    }
    Ok(())
}

/// The `(N+m+1)`-square system and its right-hand side.
pub fn dense_system<T: Real>(
    config: &SplineConfig,
    nodes: &[T],
    samples: &[f64],
) -> Result<(Matrix<T>, Vec<T>)> {
    check_nodes(config, nodes, samples)?;
    let m = config.m();
    let n1 = nodes.len();
    let q = config.poly_terms();
    let size = n1 + 2 + q;
    let omega = T::from_f64(config.omega());
    let mut a = Matrix::zeros(size);
    let mut rhs = vec![T::zero(); size];
    for (b, &xb) in nodes.iter().enumerate() {
        for (c, &xc) in nodes.iter().enumerate() {
            a.set(b, c, g(m, omega, xb - xc));
        }
        let (s, co) = (omega * xb).sin_cos();
        a.set(b, n1, s);
        a.set(b, n1 + 1, co);
        a.set(n1, b, s);
        a.set(n1 + 1, b, co);
        let mut xp = T::one();
        for alpha in 0..q {
            a.set(b, n1 + 2 + alpha, xp);
            a.set(n1 + 2 + alpha, b, xp);
            xp *= xb;
        }
        rhs[b] = T::from_f64(samples[b]);
    }
    Ok((a, rhs))
}

/// Dense solution with its diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSolution<T> {
    pub coeffs: SplineCoefficients<T>,
    /// Estimated 1-norm condition number.
    pub condition: f64,
    /// `‖Ax - b‖∞ / max(‖b‖∞, tiny)`.
    pub relative_residual: f64,
}

/// LU with partial pivoting on [`dense_system`].
pub fn dense_solve<T: Real>(
    config: &SplineConfig,
    nodes: &[T],
    samples: &[f64],
) -> Result<DenseSolution<T>> {
    let (a, rhs) = dense_system(config, nodes, samples)?;
    let lu = Lu::factor(&a, "dense interpolation system")?;
    let x = lu.solve(&rhs);
    let condition = lu.condition_estimate();
    let ax = a.mul_vec(&x);
    let res = ax
        .iter()
        .zip(&rhs)
        .fold(0.0f64, |acc, (&u, &v)| acc.max((u - v).abs().to_f64()));
    let bnorm = rhs.iter().fold(0.0f64, |acc, v| acc.max(v.abs().to_f64()));
    let n1 = nodes.len();
    let coeffs = SplineCoefficients {
        c: x[..n1].to_vec(),
        d1: x[n1],
        d2: x[n1 + 1],
        r: x[n1 + 2..].to_vec(),
    };
    Ok(DenseSolution {
        coeffs,
        condition,
        relative_residual: res / bnorm.max(f64::MIN_POSITIVE),
    })
}

/// Dense solve on the uniform grid of `config`.
pub fn dense_solve_uniform<T: Real>(config: &SplineConfig, samples: &[f64]) -> Result<DenseSolution<T>> {
    dense_solve(config, &uniform_nodes::<T>(config), samples)
}

/// Deviation of one coefficient family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deviation {
    pub max_abs: f64,
    /// `max_abs / max(1, max |reference|)`.
    pub max_rel: f64,
}

impl Deviation {
    fn of<T: Real>(a: &[T], b: &[T]) -> Deviation {
        let max_abs = a
            .iter()
            .zip(b)
            .fold(0.0f64, |acc, (&x, &y)| acc.max((x - y).abs().to_f64()));
        let scale = b.iter().fold(1.0f64, |acc, y| acc.max(y.abs().to_f64()));
        Deviation {
            max_abs,
            max_rel: max_abs / scale,
        }
    }
}

/// Per-family deviations of `a` from the reference `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub c: Deviation,
    pub d1: Deviation,
    pub d2: Deviation,
    pub r: Deviation,
    pub tolerance: f64,
    pub pass: bool,
}

impl CompareReport {
    /// Largest scaled deviation over all families.
    pub fn max_rel(&self) -> f64 {
        [self.c, self.d1, self.d2, self.r]
            .iter()
            .fold(0.0, |acc, d| acc.max(d.max_rel))
    }

    pub fn max_abs(&self) -> f64 {
        [self.c, self.d1, self.d2, self.r]
            .iter()
            .fold(0.0, |acc, d| acc.max(d.max_abs))
    }
}

/// Compares `a` against the reference `b`; passes when every scaled
/// deviation is at most `tolerance`.
pub fn compare<T: Real>(
    a: &SplineCoefficients<T>,
    b: &SplineCoefficients<T>,
    tolerance: f64,
) -> Result<CompareReport> {
    if a.c.len() != b.c.len() || a.r.len() != b.r.len() {
        return Err(Error::ShapeMismatch {
            what: format!(
                "C lengths {} and {}, r lengths {} and {}",
                a.c.len(),
                b.c.len(),
                a.r.len(),
                b.r.len()
            ),
        });
    }
    let c = Deviation::of(&a.c, &b.c);
    let d1 = Deviation::of(&[a.d1], &[b.d1]);
    let d2 = Deviation::of(&[a.d2], &[b.d2]);
    let r = Deviation::of(&a.r, &b.r);
    let mut report = CompareReport {
        c,
        d1,
        d2,
        r,
        tolerance,
        pass: false,
    };
    report.pass = report.max_rel() <= tolerance;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_and_symmetry() {
        let cfg = SplineConfig::new(3, 1.0, 6).unwrap();
        let nodes = uniform_nodes::<f64>(&cfg);
        let (a, _) = dense_system(&cfg, &nodes, &[0.0; 7]).unwrap();
        assert_eq!(a.size(), 6 + 3 + 1);
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(a.get(i, j), a.get(j, i));
            }
        }
        let cfg2 = SplineConfig::new(2, 1.0, 6).unwrap();
        let (a2, _) = dense_system(&cfg2, &nodes, &[0.0; 7]).unwrap();
        assert_eq!(a2.size(), 6 + 3);
    }

    #[test]
    fn node_validation() {
        let cfg = SplineConfig::new(3, 1.0, 3).unwrap();
        assert_eq!(
            dense_system(&cfg, &[0.0, 0.5, 0.5, 1.0], &[0.0; 4]).unwrap_err(),
            Error::NodesNotIncreasing { index: 2 }
        );
        assert_eq!(
            dense_system(&cfg, &[0.0, 0.5, 0.7, 1.2], &[0.0; 4]).unwrap_err(),
            Error::NodeOutsideDomain { index: 3 }
        );
        // non-uniform nodes are fine
        let sol = dense_solve(&cfg, &[0.0, 0.2, 0.7, 1.0], &[1.0, 0.0, 2.0, 1.0]).unwrap();
        assert!(sol.relative_residual < 1e-12);
    }

    #[test]
    fn zero_and_sine_data() {
        let cfg = SplineConfig::new(3, 1.0, 10).unwrap();
        let z = dense_solve_uniform::<f64>(&cfg, &[0.0; 11]).unwrap();
        assert!(z.coeffs.c.iter().all(|&c| c == 0.0));
        let s: Vec<f64> = (0..=10).map(|b| (b as f64 / 10.0).sin()).collect();
        let sol = dense_solve_uniform::<crate::Dd>(&cfg, &s).unwrap();
        let co = sol.coeffs.to_f64();
        assert!(co.max_abs_c() < 1e-8);
        assert!((co.d1 - 1.0).abs() < 1e-8 && co.d2.abs() < 1e-8 && co.r[0].abs() < 1e-8);
    }

    #[test]
    fn compare_reports_deviation() {
        let cfg = SplineConfig::new(3, 1.0, 4).unwrap();
        let mut a = SplineCoefficients::<f64>::zeros(&cfg);
        a.c[2] = 0.5;
        let rep = compare(&a, &a, 0.0).unwrap();
        assert_eq!(rep.max_abs(), 0.0);
        assert!(rep.pass);
        let mut b = a.clone();
        b.c[2] += 1e-3;
        let rep = compare(&b, &a, 1e-6).unwrap();
        assert!((rep.c.max_abs - 1e-3).abs() < 1e-15);
        assert!(!rep.pass);
        let other = SplineCoefficients::<f64>::zeros(&SplineConfig::new(3, 1.0, 5).unwrap());
        assert!(compare(&a, &other, 1.0).is_err());
    }
}
