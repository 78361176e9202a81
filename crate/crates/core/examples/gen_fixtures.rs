//! Regenerates the JSON fixture files under `fixtures/` from the built-in
//! problem and machine constructors.  Run from the workspace root:
//!
//! ```text
//! cargo run -p lcl-core --example gen_fixtures
//! ```

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use lcl_core::fixtures;
use lcl_core::lba::{binary_counter, unary_counter};
use lcl_core::normalize::PredecessorLcl;

/// Two inputs, two outputs; each output must differ from its predecessor's.
fn alternation() -> PredecessorLcl {
    let mut allowed = HashSet::new();
    for pi in 0..2u16 {
        for i in 0..2u16 {
            for po in 0..2u16 {
                for o in 0..2u16 {
                    if po != o {
                        allowed.insert((pi, po, i, o));
                    }
                }
            }
        }
    }
    PredecessorLcl { name: "alternation".into(), alpha: 2, beta: 2, allowed }
}

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    for p in fixtures::classifier_fixtures().unwrap() {
        let path = root.join(format!("{}.lcl.json", p.name));
        fs::write(&path, p.to_json()).unwrap();
        println!("wrote {}", path.display());
    }
    for b in [2usize, 3, 4] {
        for (tag, m) in [("unary", unary_counter(b)), ("binary", binary_counter(b))] {
            let path = root.join(format!("lba/{tag}_counter_b{b}.json"));
            fs::write(&path, m.to_json().unwrap()).unwrap();
            println!("wrote {}", path.display());
        }
    }
    let p = alternation();
    let path = root.join(format!("{}.pred.json", p.name));
    fs::write(&path, p.to_json()).unwrap();
    println!("wrote {}", path.display());
}
