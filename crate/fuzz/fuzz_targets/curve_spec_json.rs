#![no_main]

use elastica::curves::{make_curve, CurveSpec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(spec) = serde_json::from_str::<CurveSpec>(text) else {
        return;
    };
    let Ok(curve) = make_curve(&spec) else {
        return;
    };
    // Accepted specs must evaluate without panicking across the domain.
    let (a, b) = curve.domain();
    for k in 0..=16 {
        let t = a + (b - a) * (k as f64) / 16.0;
        let pos = curve.position(t);
        assert_eq!(pos.len(), curve.dim());
        let _ = curve.velocity(t);
        let _ = curve.acceleration(t);
    }
});
