#![no_main]

use fockcorr_cli::parse_scenario;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(s) = parse_scenario(text) {
            let back = parse_scenario(&s.to_toml()).expect("serialized scenario must parse");
            assert_eq!(back, s);
        }
    }
});
