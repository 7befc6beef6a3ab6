#![no_main]

use gmrk_cli::{Parsed, RunConfig};
use libfuzzer_sys::fuzz_target;

// arguments are NUL-separated; only parsing and validation run, never a command
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let args = std::iter::once("gmrk").chain(s.split('\0'));
    if let Parsed::Run(cfg) = RunConfig::parse_from(args) {
        let _ = cfg.validate();
    }
});
