#![no_main]

use hopfcross::expr::parse;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(e) = parse(&text) {
        let printed = e.to_string();
        let back = parse(&printed).expect("printed expression parses");
        assert_eq!(back, e, "{printed}");
    }
});
