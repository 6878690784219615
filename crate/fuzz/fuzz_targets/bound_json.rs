#![no_main]

use curvlab::table::BoundDocument;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = BoundDocument::from_json(text) {
        assert!(doc.table().validate().is_ok());
        let _ = doc.to_json();
    }
});
