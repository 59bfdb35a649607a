#![no_main]

use elastica::Polygonal;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(poly) = Polygonal::from_json(text) else {
        return;
    };
    // Accepted polygonals must survive the whole first-order pipeline.
    let angles = poly.turning_angles();
    assert!(angles.angles.iter().all(|t| (0.0..=std::f64::consts::PI).contains(t)));
    let _ = poly.rotation();
    assert!(poly.length() >= 0.0);
    // Emission round-trips to the same polygonal.
    let again = Polygonal::from_json(&poly.to_json()).unwrap();
    assert_eq!(poly, again);
});
