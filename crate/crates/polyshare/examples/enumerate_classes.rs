//! Enumeration up to block relabeling: monotone-family orbits and the
//! minimal representatives of every increment signature.
//!
//! Run with: cargo run --example enumerate_classes

use polyshare::enumerate::{enumerate_deltas, enumerate_signatures};

fn main() {
    for m in 2..=4usize {
        let classes = enumerate_deltas(m).unwrap();
        println!("m = {m}: {} family classes", classes.len());
        for (i, c) in classes.iter().enumerate() {
            println!("  {:>2}: {:<40} orbit size {}", i + 1, c.representative.to_string(), c.orbit_size);
        }
        let total: usize = classes.iter().map(|c| c.orbit_size).sum();
        println!("  ({total} labeled families in total)");

        let signatures = enumerate_signatures(m).unwrap();
        println!("m = {m}: {} signature classes", signatures.len());
        for s in &signatures {
            let pattern: String = s.signature.iter().map(|&b| if b { '>' } else { '=' }).collect();
            println!("  {pattern}  minimal g = {:?}", s.representative.increments());
        }
        println!();
    }
}
