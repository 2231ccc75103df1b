#![no_main]

use fockcorr::DensityMatrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(rho) = text.parse::<DensityMatrix>() {
            let back: DensityMatrix = rho.to_string().parse().expect("display output must parse");
            assert_eq!(back, rho);
        }
    }
});
