#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(e) = arborslope::parse(s) {
            // canonical text must parse back to the same tree
            let again = arborslope::parse(&e.to_string()).expect("canonical form parses");
            assert_eq!(again, e);
        }
    }
});
