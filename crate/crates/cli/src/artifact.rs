//! JSON spline artifact.
//!
//! Double-double quantities are stored as a leading `f64` plus a `_lo`
//! correction so that evaluation from the file keeps full precision.

use k2pm::builder::SideConditions;
use k2pm::real::complex_to_f64;
use k2pm::{Dd, DiscreteOperator, Real, Spline, SplineCoefficients, SplineConfig};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const FORMAT: &str = "k2pm-spline";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ConfigJson {
    pub m: usize,
    pub omega: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CoefficientsJson {
    pub c: Vec<f64>,
    pub c_lo: Vec<f64>,
    pub d1: f64,
    pub d1_lo: f64,
    pub d2: f64,
    pub d2_lo: f64,
    pub r: Vec<f64>,
    pub r_lo: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BoundaryJson {
    pub d1_minus: f64,
    pub d1_plus: f64,
    pub d2_minus: f64,
    pub d2_plus: f64,
    pub r_minus: Vec<f64>,
    pub r_plus: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SideJson {
    pub sin: f64,
    pub cos: f64,
    pub poly: Vec<f64>,
}

impl From<SideConditions> for SideJson {
    fn from(s: SideConditions) -> SideJson {
        SideJson {
            sin: s.sin,
            cos: s.cos,
            poly: s.poly,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DiagnosticsJson {
    pub boundary_condition: f64,
    pub side_conditions: SideJson,
    pub max_abs_c: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Artifact {
    pub format: String,
    pub version: u32,
    pub config: ConfigJson,
    pub source: String,
    pub samples: Vec<f64>,
    pub coefficients: CoefficientsJson,
    pub boundary: Option<BoundaryJson>,
    /// Stable characteristic roots as `[re, im]`.
    pub lambda: Vec<[f64; 2]>,
    pub diagnostics: DiagnosticsJson,
}

fn split(v: &[Dd]) -> (Vec<f64>, Vec<f64>) {
    v.iter().map(|x| (x.hi(), x.lo())).unzip()
}

fn join(hi: &[f64], lo: &[f64], what: &str) -> Result<Vec<Dd>, CliError> {
    if hi.len() != lo.len() {
        return Err(CliError::validation("artifact", format!("{what} and {what}_lo differ in length")));
    }
    Ok(hi.iter().zip(lo).map(|(&h, &l)| Dd::new(h, l)).collect())
}

impl Artifact {
    pub fn new(spline: &Spline<Dd>, op: &DiscreteOperator<Dd>, samples: &[f64], source: String) -> Artifact {
        let cfg = spline.config();
        let co = spline.coefficients();
        let (c, c_lo) = split(&co.c);
        let (r, r_lo) = split(&co.r);
        let boundary = spline.boundary().map(|b| BoundaryJson {
            d1_minus: b.d1_minus.to_f64(),
            d1_plus: b.d1_plus.to_f64(),
            d2_minus: b.d2_minus.to_f64(),
            d2_plus: b.d2_plus.to_f64(),
            r_minus: b.r_minus.iter().map(|v| v.to_f64()).collect(),
            r_plus: b.r_plus.iter().map(|v| v.to_f64()).collect(),
        });
        Artifact {
            format: FORMAT.into(),
            version: VERSION,
            config: ConfigJson {
                m: cfg.m(),
                omega: cfg.omega(),
                n: cfg.n(),
            },
            source,
            samples: samples.to_vec(),
            coefficients: CoefficientsJson {
                c,
                c_lo,
                d1: co.d1.hi(),
                d1_lo: co.d1.lo(),
                d2: co.d2.hi(),
                d2_lo: co.d2.lo(),
                r,
                r_lo,
            },
            lambda: op
                .lambda()
                .iter()
                .map(|z| {
                    let z = complex_to_f64(*z);
                    [z.re, z.im]
                })
                .collect(),
            diagnostics: DiagnosticsJson {
                boundary_condition: spline.boundary().map_or(f64::NAN, |b| b.condition),
                side_conditions: co.side_conditions(cfg).into(),
                max_abs_c: co.max_abs_c(),
            },
            boundary,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("artifact serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Artifact, CliError> {
        let a: Artifact = serde_json::from_str(text)
            .map_err(|e| CliError::validation("artifact", format!("unreadable artifact: {e}")))?;
        if a.format != FORMAT || a.version != VERSION {
            return Err(CliError::validation(
                "artifact",
                format!("unsupported artifact {} v{}", a.format, a.version),
            ));
        }
        Ok(a)
    }

    /// Rebuilds the spline, validating the configuration and shapes.
    pub fn spline(&self) -> Result<Spline<Dd>, CliError> {
        let cfg = SplineConfig::new(self.config.m, self.config.omega, self.config.n)?;
        let co = &self.coefficients;
        let coeffs = SplineCoefficients {
            c: join(&co.c, &co.c_lo, "c")?,
            d1: Dd::new(co.d1, co.d1_lo),
            d2: Dd::new(co.d2, co.d2_lo),
            r: join(&co.r, &co.r_lo, "r")?,
        };
        if coeffs.c.len() != cfg.n() + 1 || coeffs.r.len() != cfg.poly_terms() {
            return Err(CliError::validation("artifact", "coefficient arrays do not match the configuration"));
        }
        Ok(Spline::new(cfg, coeffs))
    }
}
