#![no_main]

use curvlab_cli::parse::parse_list;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(values) = parse_list(s) {
            assert_eq!(values.len(), s.split(',').count());
        }
    }
});
