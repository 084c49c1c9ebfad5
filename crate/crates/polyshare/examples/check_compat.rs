//! Compatibility checking: the exhaustive two-condition test, its violation
//! witnesses, and the closed-form shortcuts for special family shapes.
//!
//! Run with: cargo run --example check_compat

use polyshare::compat::{shortcut_eta_two, shortcut_k_uniform, shortcut_single_min};
use polyshare::error::Error;
use polyshare::{check_compatibility, DeltaFamily, UniformPolymatroid};

fn main() {
    let cases = [
        ("2,1,0,0", "{1};{2,3};{2,4};{3,4}"),
        ("1,0,0,0", "{1}"),
        ("3,2,1,1", "{1}"),
        ("2,2,1,1", "{1};{2}"),
        ("1,1,1,1", "{1,2}"),
        ("4,3,2,1", "{1,2};{1,3};{2,3,4}"),
    ];

    for (g_text, delta_text) in cases {
        let g: Vec<u32> = g_text.split(',').map(|v| v.parse().unwrap()).collect();
        let z = UniformPolymatroid::from_increments(g).unwrap();
        let d = DeltaFamily::parse(delta_text, z.m()).unwrap();
        print!("g = ({g_text}), min delta = {d}: ");
        match check_compatibility(&z, &d) {
            Ok(()) => println!("compatible"),
            Err(Error::Incompatible(witness)) => println!("incompatible ({witness})"),
            Err(e) => println!("error: {e}"),
        }

        if d.min_sets().len() == 1 {
            println!("  single-minimal-set shortcut: {}", shortcut_single_min(&z, &d).unwrap());
        }
        if d.uniform_min_cardinality().is_some() {
            println!("  k-uniform shortcut:          {}", shortcut_k_uniform(&z, &d).unwrap());
        }
        if z.eta() == 2 {
            println!("  eta=2 shortcut:              {}", shortcut_eta_two(&z, &d).unwrap());
        }
    }
}
