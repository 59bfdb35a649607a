#![no_main]

use elastica::inscribe::Inscription;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(sidecar) = Inscription::sidecar_from_json(text) else {
        return;
    };
    let json = serde_json::to_string(&sidecar).unwrap();
    let again = Inscription::sidecar_from_json(&json).unwrap();
    assert_eq!(serde_json::to_string(&again).unwrap(), json);
});
