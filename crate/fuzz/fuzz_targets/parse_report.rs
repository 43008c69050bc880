#![no_main]

use libfuzzer_sys::fuzz_target;
use neron_core::document::parse_report;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(report) = parse_report(text) {
        let again = parse_report(&report.to_json()).expect("re-encoded report parses");
        assert_eq!(again, report);
    }
});
