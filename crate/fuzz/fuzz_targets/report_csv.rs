#![no_main]

use elastica::curves::CurveSpec;
use elastica::inscribe::Scheme;
use elastica::lab::{ExperimentConfig, ExperimentReport, Reference, Tolerances};
use libfuzzer_sys::fuzz_target;

fn wrap(rows: Vec<elastica::lab::ReportRow>) -> ExperimentReport {
    ExperimentReport {
        rows,
        rate_estimate: f64::NAN,
        modulus_decreasing: true,
        metadata: ExperimentConfig {
            curve: CurveSpec::Line { length: 1.0 },
            scheme: Scheme::Uniform,
            p: 1.0,
            alpha: 0.0,
            counts: vec![2],
            reference: Reference::Quadrature,
            tolerances: Tolerances::default(),
            seed: 0,
            output: None,
        },
    }
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(rows) = ExperimentReport::rows_from_csv(text) else {
        return;
    };
    // Emission is a fixed point (CSV -> rows -> CSV -> rows -> CSV).
    let emitted = wrap(rows).to_csv();
    let rows2 = ExperimentReport::rows_from_csv(&emitted).unwrap();
    assert_eq!(wrap(rows2).to_csv(), emitted);
});
