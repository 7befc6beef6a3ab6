#![no_main]

use gmrk_core::coupling::{IrrepLabel, MagneticIndex};
use gmrk_core::repspace::SpaceMode;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(l) = s.parse::<IrrepLabel>() {
        assert_eq!(l.to_string().parse::<IrrepLabel>().ok(), Some(l));
    }
    if let Ok(m) = s.parse::<MagneticIndex>() {
        assert_eq!(m.to_string().parse::<MagneticIndex>().ok(), Some(m));
    }
    if let Ok(mode) = s.parse::<SpaceMode>() {
        assert_eq!(mode.to_string().parse::<SpaceMode>().ok(), Some(mode));
    }
});
