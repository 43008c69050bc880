#![no_main]

use libfuzzer_sys::fuzz_target;
use neron_core::document::{analyze_document, parse_input, parse_report};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = parse_input(text) else { return };
    // keep the regular model and circuit search small
    let weight: u64 = doc.edges.iter().map(|e| e.thickness.min(1 << 20)).sum();
    if doc.edges.len() > 12 || weight > 48 || doc.vertices.len() > 12 {
        let _ = doc.to_reduction_data(None);
        return;
    }
    if let Ok(report) = analyze_document(&doc, None) {
        let back = parse_report(&report.to_json()).expect("own output parses");
        assert_eq!(back, report);
    }
});
