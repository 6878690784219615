#![no_main]

use curvlab_cli::parse::parse_range;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok((a, b)) = parse_range(s) {
            assert!(a.is_finite() && b.is_finite());
        }
    }
});
