#![no_main]

use hopfcross::catalog::resolve;
use hopfcross::Field;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    // skips doubles of doubles (256-dimensional)
    if text.matches("double:").count() > 1 {
        return;
    }
    let _ = resolve(&text, Field::Rational);
});
