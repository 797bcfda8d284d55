//! Sample ingestion: named presets and CSV files.

use std::path::Path;

use k2pm::{Dd, Real, SampleSet, SplineConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::CliError;

/// Grid tolerance for x-coordinate rows.
pub const GRID_TOL: f64 = 1e-12;

/// Samples in both `f64` and double-double form.
///
/// Presets are generated in double-double so that null-space data stay in the
/// null space beyond `f64` rounding.
pub struct Data {
    pub set: SampleSet,
    pub values: Vec<Dd>,
    pub source: String,
}

impl Data {
    fn from_dd(cfg: &SplineConfig, values: Vec<Dd>, source: String) -> Result<Data, CliError> {
        let set = SampleSet::new(cfg, values.iter().map(|v| v.to_f64()).collect())?;
        Ok(Data { set, values, source })
    }

    fn from_f64(cfg: &SplineConfig, values: Vec<f64>, source: String) -> Result<Data, CliError> {
        let set = SampleSet::new(cfg, values)?;
        let values = set.values().iter().map(|&v| Dd::from_f64(v)).collect();
        Ok(Data { set, values, source })
    }
}

/// Samples from `--preset` or `--input`.
pub fn load(
    cfg: &SplineConfig,
    preset: Option<&str>,
    input: Option<&Path>,
    seed: u64,
) -> Result<Data, CliError> {
    match (preset, input) {
        (Some(p), None) => preset_data(cfg, p, seed),
        (None, Some(path)) => csv_data(cfg, path),
        _ => Err(CliError::validation(
            "data_source",
            "exactly one of --preset and --input is required",
        )),
    }
}

fn preset_data(cfg: &SplineConfig, name: &str, seed: u64) -> Result<Data, CliError> {
    let n = cfg.n();
    let nodes: Vec<Dd> = (0..=n).map(|b| Dd::from_usize(b) / Dd::from_usize(n)).collect();
    let w = Dd::from_f64(cfg.omega());
    let map = |f: &dyn Fn(Dd) -> Dd| nodes.iter().map(|&x| f(x)).collect::<Vec<Dd>>();
    let source = format!("preset:{name}");
    let (kind, arg) = match name.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (name, None),
    };
    match (kind, arg) {
        ("sin", None) => Data::from_dd(cfg, map(&|x| (w * x).sin()), source),
        ("cos", None) => Data::from_dd(cfg, map(&|x| (w * x).cos()), source),
        ("runge", None) => {
            let one = Dd::ONE;
            let v = map(&|x| {
                let t = x + x - one;
                one / (one + Dd::from_f64(25.0) * t * t)
            });
            Data::from_dd(cfg, v, source)
        }
        ("poly", Some(a)) => {
            let alpha: u32 = a
                .parse()
                .map_err(|_| CliError::validation("preset", format!("bad exponent in preset {name:?}")))?;
            Data::from_dd(cfg, map(&|x| x.powi(alpha as i32)), source)
        }
        ("random", arg) => {
            let seed = match arg {
                Some(s) => s
                    .parse()
                    .map_err(|_| CliError::validation("preset", format!("bad seed in preset {name:?}")))?,
                None => seed,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v = (0..=n).map(|_| StandardNormal.sample(&mut rng)).collect();
            Data::from_f64(cfg, v, format!("preset:random:{seed}"))
        }
        _ => Err(CliError::validation(
            "preset",
            format!("unknown preset {name:?}; expected sin, cos, poly:<alpha>, runge or random:<seed>"),
        )),
    }
}

/// Rows `beta,value` (integer index) or `x,value` (grid coordinate). A
/// non-numeric first row is treated as a header. A file whose keys are all
/// integers is read by index; otherwise every key is a coordinate, so `1`
/// next to `0.5` means x = 1.
pub fn csv_data(cfg: &SplineConfig, path: &Path) -> Result<Data, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    let n = cfg.n();
    let mut rows: Vec<(usize, String, f64)> = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let row = i + 1;
        let rec = rec.map_err(|e| CliError::validation("csv_row", format!("row {row}: {e}")))?;
        if rec.len() != 2 {
            return Err(CliError::validation(
                "csv_row",
                format!("row {row}: expected 2 fields, found {}", rec.len()),
            ));
        }
        let (key, val) = (&rec[0], &rec[1]);
        match (key.parse::<f64>(), val.parse::<f64>()) {
            (Ok(_), Ok(v)) => rows.push((row, key.to_string(), v)),
            _ if i == 0 => continue,
            (Err(_), _) => return Err(CliError::validation("csv_row", format!("row {row}: bad key {key:?}"))),
            (_, Err(_)) => return Err(CliError::validation("csv_row", format!("row {row}: bad value {val:?}"))),
        }
    }
    let by_index = rows.iter().all(|(_, k, _)| k.parse::<usize>().is_ok());
    let mut values: Vec<Option<f64>> = vec![None; n + 1];
    for (row, key, value) in rows {
        let beta = if by_index {
            key.parse::<usize>().unwrap()
        } else {
            let x: f64 = key.parse().unwrap();
            let b = (x * n as f64).round();
            if !x.is_finite() || b < 0.0 || (x - b / n as f64).abs() > GRID_TOL {
                return Err(CliError::validation(
                    "csv_grid",
                    format!("row {row}: x = {x} is not on the grid of N = {n}"),
                ));
            }
            b as usize
        };
        if beta > n {
            return Err(CliError::validation(
                "csv_grid",
                format!("row {row}: index {beta} beyond N = {n}"),
            ));
        }
        if values[beta].replace(value).is_some() {
            return Err(CliError::validation("csv_duplicate", format!("node {beta} given twice")));
        }
    }
    let missing: Vec<usize> = (0..=n).filter(|&b| values[b].is_none()).collect();
    if let Some(&first) = missing.first() {
        return Err(CliError::validation(
            "csv_missing",
            format!("{} nodes without a value, first {first}", missing.len()),
        ));
    }
    let v = values.into_iter().map(|v| v.unwrap()).collect();
    Data::from_f64(cfg, v, format!("csv:{}", path.display()))
}
