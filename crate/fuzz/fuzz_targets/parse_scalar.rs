#![no_main]

use curvlab_cli::parse::parse_scalar;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(v) = parse_scalar(s) {
            assert!(v.is_finite());
        }
    }
});
