#![no_main]

use elastica::lab::ExperimentConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(cfg) = ExperimentConfig::from_json(text) else {
        return;
    };
    // Validated configs re-serialize and parse back to the same value.
    let json = serde_json::to_string(&cfg).unwrap();
    let again = ExperimentConfig::from_json(&json).unwrap();
    assert_eq!(cfg, again);
});
