//! Empirical scan: the hierarchical preorder appears to depend only on the
//! sign pattern of the increment sequence, not on its values. The scan
//! compares relations across sign-preserving transforms and reports any
//! mismatch verbatim.
//!
//! Run with: cargo run --example conjecture_scan

use polyshare::enumerate::{conjecture_scan, GTransform};

fn main() {
    let transforms = [GTransform::AddToNonzero(1), GTransform::ScaleNonzero(2)];
    for m in 2..=4usize {
        let report = conjecture_scan(m, &transforms).unwrap();
        println!(
            "m = {m}: {} (signature, family, transform) relation comparisons",
            report.pairs_compared
        );
        println!("  compatibility disagreements: {}", report.compatibility_disagreements.len());
        println!("  preorder mismatches:         {}", report.mismatches.len());
        if !report.mismatches.is_empty() {
            // a mismatch would be a genuine counterexample; keep it verbatim
            let path = std::env::temp_dir().join(format!("sign_pattern_mismatches_m{m}.json"));
            std::fs::write(&path, serde_json::to_string_pretty(&report).unwrap()).unwrap();
            println!("  archived mismatch details at {}", path.display());
        }
    }
}
