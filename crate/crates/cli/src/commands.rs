use std::time::Instant;

use k2pm::builder::{compute_coefficients, convolve_extension, solve_boundary};
use k2pm::eval::{CosineSum, SeminormQuadrature};
use k2pm::kernel::{delta_residual, delta_window};
use k2pm::operator::Signal;
use k2pm::oracle::{compare, dense_solve_uniform, CompareReport, Deviation};
use k2pm::{build_operator, Dd, Real, SplineBuilder, SplineConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::artifact::Artifact;
use crate::data::Data;
use crate::{BenchArgs, BuildArgs, CliError, CompareArgs, EvalArgs, Format, Outcome, ProblemArgs, VerifyArgs};

type Member = Box<dyn Fn(Dd) -> Dd>;

fn problem(args: &ProblemArgs) -> Result<(SplineConfig, Data), CliError> {
    let cfg = SplineConfig::new(args.m, args.omega, args.n)?;
    cfg.check_cosine()?;
    let data = crate::data::load(&cfg, args.preset.as_deref(), args.input.as_deref(), args.seed)?;
    Ok((cfg, data))
}

pub fn build(args: &BuildArgs) -> Result<Outcome, CliError> {
    let (cfg, data) = problem(&args.problem)?;
    let builder = SplineBuilder::<Dd>::new(&cfg)?;
    let spline = builder.build(&data.values)?;
    log::info!(
        "built m={} omega={} N={} from {}",
        cfg.m(),
        cfg.omega(),
        cfg.n(),
        data.source
    );
    let art = Artifact::new(&spline, builder.operator(), data.set.values(), data.source);
    let text = match args.format {
        Format::Json => art.to_json(),
        Format::Csv => coefficients_csv(&art)?,
    };
    Ok(Outcome::ok(text))
}

fn coefficients_csv(art: &Artifact) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let co = &art.coefficients;
    let mut rows: Vec<(&str, usize, f64)> = co.c.iter().enumerate().map(|(i, &v)| ("c", i, v)).collect();
    rows.push(("d1", 0, co.d1));
    rows.push(("d2", 0, co.d2));
    rows.extend(co.r.iter().enumerate().map(|(i, &v)| ("r", i, v)));
    w.write_record(["kind", "index", "value"]).map_err(CliError::csv)?;
    for (k, i, v) in rows {
        w.serialize((k, i, v)).map_err(CliError::csv)?;
    }
    String::from_utf8(w.into_inner().map_err(|e| CliError::io(e.to_string()))?)
        .map_err(|e| CliError::io(e.to_string()))
}

pub fn eval(args: &EvalArgs) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError::io(format!("{}: {e}", args.input.display())))?;
    let spline = Artifact::from_json(&text)?.spline()?;
    let xs: Vec<f64> = match &args.at {
        Some(list) => list.clone(),
        None => {
            if args.points == 0 {
                return Err(CliError::validation("points", "--points must be at least 1"));
            }
            let p = args.points;
            (0..p)
                .map(|i| if p == 1 { 0.0 } else { i as f64 / (p - 1) as f64 })
                .collect()
        }
    };
    let mut out = Vec::with_capacity(xs.len());
    for (i, &x) in xs.iter().enumerate() {
        // Equispaced points are formed in Dd so that nodes land exactly.
        let xd = if args.at.is_none() && xs.len() > 1 {
            Dd::from_usize(i) / Dd::from_usize(xs.len() - 1)
        } else {
            Dd::from_f64(x)
        };
        let v = k2pm::eval::evaluate(spline.config(), spline.coefficients(), xd, args.allow_extrapolation)?;
        out.push((x, v.to_f64()));
    }
    let text = match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["x", "S(x)"]).map_err(CliError::csv)?;
            for row in &out {
                w.serialize(row).map_err(CliError::csv)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::io(e.to_string()))?)
                .map_err(|e| CliError::io(e.to_string()))?
        }
        Format::Json => {
            let pts: Vec<_> = out.iter().map(|(x, s)| json!({"x": x, "s": s})).collect();
            let mut s = serde_json::to_string_pretty(&json!({ "points": pts })).unwrap();
            s.push('\n');
            s
        }
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct Check {
    name: String,
    value: f64,
    tolerance: f64,
    pass: bool,
}

impl Check {
    fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Check {
        Check {
            name: name.into(),
            value,
            tolerance,
            pass: value <= tolerance,
        }
    }
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let (cfg, data) = problem(&args.problem)?;
    let builder = SplineBuilder::<Dd>::new(&cfg)?;
    let op = builder.operator();
    let spline = builder.build(&data.values)?;
    let co = spline.coefficients();
    let c_scale = co.max_abs_c().max(1.0);
    let mut checks = Vec::new();

    checks.push(Check::at_most(
        "side_conditions",
        co.side_conditions(&cfg).max() / c_scale,
        1e-8,
    ));
    let nodes = k2pm::oracle::uniform_nodes::<Dd>(&cfg);
    let node_res = max_of(
        nodes
            .iter()
            .zip(&data.values)
            .map(|(&x, &v)| spline.eval(x).map(|s| (s - v).abs().to_f64()).unwrap_or(f64::INFINITY)),
    );
    checks.push(Check::at_most(
        "interpolation",
        node_res / data.set.max_abs().max(1.0),
        1e-8,
    ));

    // Exactness on the null space, data generated in Dd.
    let w = Dd::from_f64(cfg.omega());
    let mut members: Vec<(String, Member)> = vec![
        ("sin".into(), Box::new(move |x: Dd| (w * x).sin())),
        ("cos".into(), Box::new(move |x: Dd| (w * x).cos())),
    ];
    for a in 0..cfg.poly_terms() {
        members.push((format!("x^{a}"), Box::new(move |x: Dd| x.powi(a as i32))));
    }
    let grid: Vec<Dd> = (0..1000).map(|i| Dd::from_usize(i) / Dd::from_usize(999)).collect();
    let quad_points = 10 * (cfg.n() + 1);
    for (name, f) in &members {
        let values: Vec<Dd> = nodes.iter().map(|&x| f(x)).collect();
        let sp = builder.build(&values)?;
        let mut err = 0.0f64;
        let mut sup = 0.0f64;
        for &x in &grid {
            let fx = f(x);
            sup = sup.max(fx.abs().to_f64());
            err = err.max((sp.eval(x)? - fx).abs().to_f64());
        }
        checks.push(Check::at_most(format!("exactness_{name}"), err / sup.max(1.0), 1e-7));
        checks.push(Check::at_most(
            format!("seminorm_{name}"),
            sp.seminorm(quad_points)?.to_f64(),
            1e-7,
        ));
    }

    // Extension consistency and reconstruction by truncated convolution.
    let bs = spline.boundary().expect("built splines carry their boundary");
    let window = 3 * op.truncation_window() + 20;
    let n = cfg.n() as i64;
    let mi = cfg.m() as i64;
    let ext = max_of(
        (-(mi + 3)..=-1)
            .chain(n + 1..=n + mi + 3)
            .map(|b| convolve_extension(op, bs, &data.values, b, window).abs().to_f64()),
    );
    checks.push(Check::at_most("extension_consistency", ext / c_scale, 1e-8));
    let rec = max_of(
        (0..=n).map(|b| (convolve_extension(op, bs, &data.values, b, window) - co.c[b as usize]).abs().to_f64()),
    );
    checks.push(Check::at_most("reconstruction", rec / c_scale, 1e-8));

    // Operator properties.
    let delta = max_of((-20..=20).map(|b| {
        let w = delta_window(op, b, 1e-12);
        delta_residual(op, b, w).map(|v| v.to_f64()).unwrap_or(f64::INFINITY)
    }));
    checks.push(Check::at_most("discrete_delta", delta, 1e-8));
    let mut signals = vec![Signal::Sin, Signal::Cos, Signal::TSin, Signal::TCos];
    signals.extend((0..=(2 * mi - 5)).map(|a| Signal::Power(a as u32)));
    let ann = max_of(signals.into_iter().map(|s| {
        let w = op.annihilation_window(s, 1e-12);
        op.annihilation_residual(s, w).map(|v| v.to_f64()).unwrap_or(f64::INFINITY)
    }));
    checks.push(Check::at_most("annihilation", ann, 1e-8));

    // Oracle and minimality.
    let dense = dense_solve_uniform::<Dd>(&cfg, data.set.values())?;
    // The oracle sees f64 samples, so the fast path does too.
    let fast = builder.build(&data.set)?;
    let rep = compare(fast.coefficients(), &dense.coeffs, args.tolerance)?;
    checks.push(Check::at_most("oracle_equivalence", rep.max_rel(), args.tolerance));
    let quad = SeminormQuadrature::new(&cfg, co, quad_points)?;
    let base = quad.seminorm();
    let mut rng = ChaCha8Rng::seed_from_u64(args.problem.seed);
    let mut worst = f64::INFINITY;
    for _ in 0..20 {
        let mut eta = CosineSum::new();
        for _ in 0..rng.random_range(1..=3) {
            eta.add_node_bump(
                cfg.n(),
                Dd::from_f64(10f64.powf(rng.random_range(-6.0..0.0))),
                Dd::from_f64(rng.random_range(0.0..20.0)),
                Dd::from_f64(rng.random_range(0.0..std::f64::consts::TAU)),
            );
        }
        worst = worst.min((quad.seminorm_perturbed(&eta) - base).to_f64());
    }
    checks.push(Check {
        name: "minimality".into(),
        value: worst,
        tolerance: -1e-9,
        pass: worst >= -1e-9,
    });

    let pass = checks.iter().all(|c| c.pass);
    let body = json!({
        "config": {"m": cfg.m(), "omega": cfg.omega(), "n": cfg.n()},
        "source": data.source,
        "checks": checks,
        "pass": pass,
    });
    Ok(Outcome::with_status(pretty(&body), pass))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap();
    s.push('\n');
    s
}

fn deviation(d: &Deviation) -> serde_json::Value {
    json!({"max_abs": d.max_abs, "max_rel": d.max_rel})
}

fn report_json(rep: &CompareReport) -> serde_json::Value {
    json!({
        "c": deviation(&rep.c),
        "d1": deviation(&rep.d1),
        "d2": deviation(&rep.d2),
        "r": deviation(&rep.r),
        "max_abs": rep.max_abs(),
        "max_rel": rep.max_rel(),
        "tolerance": rep.tolerance,
        "pass": rep.pass,
    })
}

pub fn compare_cmd(args: &CompareArgs) -> Result<Outcome, CliError> {
    let (cfg, data) = problem(&args.problem)?;
    // Both sides see the same f64 samples.
    let fast = SplineBuilder::<Dd>::new(&cfg)?.build(&data.set)?;
    let dense = dense_solve_uniform::<Dd>(&cfg, data.set.values())?;
    let rep = compare(fast.coefficients(), &dense.coeffs, args.tolerance)?;
    let body = json!({
        "config": {"m": cfg.m(), "omega": cfg.omega(), "n": cfg.n()},
        "source": data.source,
        "report": report_json(&rep),
        "boundary_condition": fast.boundary().map(|b| b.condition),
        "dense_condition": dense.condition,
        "dense_relative_residual": dense.relative_residual,
    });
    Ok(Outcome::with_status(pretty(&body), rep.pass))
}

fn secs(t: Instant) -> f64 {
    t.elapsed().as_secs_f64()
}

pub fn bench(args: &BenchArgs) -> Result<Outcome, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "operator_s", "boundary_s", "coefficients_s", "dense_s"])
        .map_err(CliError::csv)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for &n in &args.sizes {
        let cfg = SplineConfig::new(args.m, args.omega, n)?;
        cfg.check_cosine()?;
        let values: Vec<f64> = (0..=n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let set = k2pm::SampleSet::new(&cfg, values)?;
        let reps = args.repeats.max(1);
        let (mut t_op, mut t_bs, mut t_co) = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
        for _ in 0..reps {
            let t = Instant::now();
            let op = build_operator::<Dd>(&cfg)?;
            t_op = t_op.min(secs(t));
            let t = Instant::now();
            let bs = solve_boundary(&op, &set)?;
            t_bs = t_bs.min(secs(t));
            let t = Instant::now();
            std::hint::black_box(compute_coefficients(&op, &bs, &set)?);
            t_co = t_co.min(secs(t));
        }
        let dense = if n <= args.dense_max {
            let t = Instant::now();
            std::hint::black_box(dense_solve_uniform::<Dd>(&cfg, set.values())?);
            Some(secs(t))
        } else {
            None
        };
        log::info!("N = {n}: coefficients {t_co:.3e} s");
        w.serialize((n, t_op, t_bs, t_co, dense)).map_err(CliError::csv)?;
    }
    let text = String::from_utf8(w.into_inner().map_err(|e| CliError::io(e.to_string()))?)
        .map_err(|e| CliError::io(e.to_string()))?;
    Ok(Outcome::ok(text))
}
