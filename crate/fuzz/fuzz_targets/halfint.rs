#![no_main]

use gmrk_core::coupling::HalfInt;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(h) = s.parse::<HalfInt>() {
        // display form parses back to the same value
        let again: HalfInt = h.to_string().parse().expect("display form must parse");
        assert_eq!(h, again);
    }
});
