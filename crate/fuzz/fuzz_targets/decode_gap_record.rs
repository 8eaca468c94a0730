#![no_main]
use fvh::gap::GapRecord;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(rec) = GapRecord::from_json(s) {
        let again = GapRecord::from_json(&rec.to_json()).expect("re-encoded record decodes");
        assert_eq!(rec, again);
    }
});
