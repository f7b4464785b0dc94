#![no_main]
use arborslope_cli::ReportDocument;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(doc) = ReportDocument::from_json(s) {
            let again = ReportDocument::from_json(&doc.to_json()).expect("encoded report decodes");
            assert_eq!(again, doc);
        }
    }
});
