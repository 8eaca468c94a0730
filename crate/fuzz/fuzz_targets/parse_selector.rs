#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(sel) = fvh::expr::parse_selector(s) {
            assert_eq!(fvh::expr::parse_selector(&sel.to_string()).unwrap(), sel);
        }
    }
});
