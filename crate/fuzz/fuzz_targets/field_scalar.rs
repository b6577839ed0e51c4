#![no_main]

use hopfcross::{Field, Scalar};
use libfuzzer_sys::fuzz_target;

// first line is the field, the rest a scalar literal
fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    let (field, literal) = text.split_once('\n').unwrap_or((&text, "1"));
    let Ok(field) = Field::parse(field) else { return };
    if let Ok(s) = Scalar::parse(literal, field) {
        let back = Scalar::parse(&s.canonical(), field).expect("canonical form parses");
        assert_eq!(back, s);
    }
});
