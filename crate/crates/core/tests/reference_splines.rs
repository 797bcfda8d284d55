// Reference digits are kept as printed by the high-precision solve.
#![allow(clippy::excessive_precision)]

//! Spline coefficients frozen from a 60-digit dense solve.

use k2pm::{build_spline, Dd, Real, SampleSet, SplineConfig};

struct Reference {
    m: usize,
    omega: f64,
    samples: &'static [f64],
    c: &'static [f64],
    d1: f64,
    d2: f64,
    r: &'static [f64],
    s_at_03: f64,
}

const CASES: [Reference; 2] = [
    Reference {
        m: 3,
        omega: 1.0,
        samples: &[0.0, 0.5, -0.25, 1.0, 0.125],
        c: &[
            10715.82406710829997644,
            -43336.61139519895373131,
            66310.29468215998151598,
            -45544.90458718575375505,
            11855.39723311642599394,
        ],
        d1: 31.87833921604086988633,
        d2: 52.83832538425305429385,
        r: &[-64.44685320954952901671],
        s_at_03: 0.2907529462034221586054,
    },
    Reference {
        m: 4,
        omega: 2.0,
        samples: &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        c: &[
            843936.5111365497424403,
            -3806926.199053731603224,
            7133130.691763648290524,
            -7154810.263265947099141,
            4134924.897970685605106,
            -1366929.844748763513405,
            216674.2061975585777001,
        ],
        d1: 20.78738436427250211954,
        d2: -9.451475505231830348579,
        r: &[8.47579469797522411995, -42.86557477116623738503],
        s_at_03: -0.01445915514028950918655,
    },
];

fn close(a: Dd, b: f64, rel: f64) -> bool {
    (a.to_f64() - b).abs() <= rel * b.abs().max(1.0)
}

#[test]
fn coefficients_match_reference() {
    for case in &CASES {
        let cfg = SplineConfig::new(case.m, case.omega, case.samples.len() - 1).unwrap();
        let s = SampleSet::new(&cfg, case.samples.to_vec()).unwrap();
        let sp = build_spline::<Dd>(&cfg, &s).unwrap();
        let co = sp.coefficients();
        for (a, &b) in co.c.iter().zip(case.c) {
            assert!(close(*a, b, 1e-14), "m={}: C {} vs {b}", case.m, a.to_f64());
        }
        assert!(close(co.d1, case.d1, 1e-14));
        assert!(close(co.d2, case.d2, 1e-14));
        for (a, &b) in co.r.iter().zip(case.r) {
            assert!(close(*a, b, 1e-14));
        }
        let x = Dd::from_f64(3.0) / Dd::from_f64(10.0);
        assert!(close(sp.eval(x).unwrap(), case.s_at_03, 1e-14));
    }
}
