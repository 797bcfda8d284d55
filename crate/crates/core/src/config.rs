use crate::error::{Error, Result};

/// Problem parameters: order `m`, frequency `omega`, and `n` cells of width `h = 1/n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplineConfig {
    m: usize,
    omega: f64,
    n: usize,
}

impl SplineConfig {
    /// Validates `m >= 2`, `omega > 0`, `n + 1 >= m`, `n >= 1` and `h*omega <= 1`.
    pub fn new(m: usize, omega: f64, n: usize) -> Result<SplineConfig> {
        if m < 2 {
            return Err(Error::OrderTooSmall { m });
        }
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::InvalidOmega { omega });
        }
        if n == 0 || n + 1 < m {
            return Err(Error::TooFewNodes { n, m });
        }
        let h_omega = omega / n as f64;
        if h_omega > 1.0 {
            return Err(Error::StepTooLarge { h_omega });
        }
        Ok(SplineConfig { m, omega, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Number of cells; there are `n + 1` nodes.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn h_omega(&self) -> f64 {
        self.omega / self.n as f64
    }

    /// Number of polynomial terms in the null space, `m - 2`.
    pub fn poly_terms(&self) -> usize {
        self.m - 2
    }

    /// Node `x_beta = beta / n` as an `f64`.
    pub fn node(&self, beta: usize) -> f64 {
        beta as f64 / self.n as f64
    }

    /// Rejects frequencies whose cosine is too close to zero for the
    /// boundary elimination.
    pub fn check_cosine(&self) -> Result<()> {
        let c = self.omega.cos();
        if c.abs() < 1e-8 {
            return Err(Error::DegenerateCosine {
                omega: self.omega,
                cos_omega: c,
            });
        }
        Ok(())
    }
}

/// Sampled data `values[beta] = phi(beta h)`, `beta = 0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    values: Vec<f64>,
}

impl SampleSet {
    pub fn new(config: &SplineConfig, values: Vec<f64>) -> Result<SampleSet> {
        if values.len() != config.n() + 1 {
            return Err(Error::SampleCount {
                expected: config.n() + 1,
                got: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample { index });
        }
        Ok(SampleSet { values })
    }

    /// Samples `f` at every node.
    pub fn from_fn(config: &SplineConfig, f: impl Fn(f64) -> f64) -> Result<SampleSet> {
        let values = (0..=config.n()).map(|b| f(config.node(b))).collect();
        SampleSet::new(config, values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest absolute sample.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |a, v| a.max(v.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SplineConfig::new(3, 1.0, 20).is_ok());
        assert_eq!(SplineConfig::new(1, 1.0, 20), Err(Error::OrderTooSmall { m: 1 }));
        assert!(matches!(
            SplineConfig::new(2, 2.0, 1),
            Err(Error::StepTooLarge { .. })
        ));
        assert!(matches!(
            SplineConfig::new(5, 1.0, 3),
            Err(Error::TooFewNodes { .. })
        ));
        assert!(SplineConfig::new(5, 1.0, 4).is_ok());
        assert!(matches!(
            SplineConfig::new(3, -1.0, 4),
            Err(Error::InvalidOmega { .. })
        ));
        let c = SplineConfig::new(3, 1.57079632, 10).unwrap();
        assert!(matches!(c.check_cosine(), Err(Error::DegenerateCosine { .. })));
        assert!(SplineConfig::new(3, 1.6, 10).unwrap().check_cosine().is_ok());
    }

    #[test]
    fn samples() {
        let c = SplineConfig::new(2, 1.0, 4).unwrap();
        assert!(SampleSet::new(&c, vec![0.0; 4]).is_err());
        assert_eq!(
            SampleSet::new(&c, vec![0.0, 1.0, f64::NAN, 0.0, 0.0]),
            Err(Error::NonFiniteSample { index: 2 })
        );
        let s = SampleSet::from_fn(&c, |x| x).unwrap();
        assert_eq!(s.values(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
    }
}
