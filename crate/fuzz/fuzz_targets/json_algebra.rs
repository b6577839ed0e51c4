#![no_main]

use hopfcross::catalog::{dump_json, from_json_str};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(h) = from_json_str(&text, "fuzz") {
        let dumped = dump_json(&h);
        let back = from_json_str(&dumped, "fuzz").expect("dumped algebra loads");
        assert_eq!(dump_json(&back), dumped);
    }
});
