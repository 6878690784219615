#![no_main]

use curvlab::table::BoundTable;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(table) = BoundTable::from_csv(text) {
        // tables already at printed precision survive a round trip unchanged
        if table == table.rounded() {
            let again = BoundTable::from_csv(&table.to_csv()).expect("re-encoded table decodes");
            assert_eq!(again, table);
        }
    }
});
