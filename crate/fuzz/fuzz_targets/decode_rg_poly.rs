#![no_main]
use fvh::gap::RgPolynomial;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = RgPolynomial::from_json(s) {
        let again = RgPolynomial::from_json(&p.to_json()).expect("re-encoded polynomial decodes");
        assert_eq!(p, again);
    }
});
