//! Building an access structure: minimal authorized vectors, membership
//! queries, support family, redundancy and connectivity.
//!
//! Run with: cargo run --example min_gamma

use polyshare::{AccessStructure, DeltaFamily, PointVector, UniformPolymatroid};

fn show(g: &[u32], delta_text: &str) {
    let z = UniformPolymatroid::from_increments(g.to_vec()).unwrap();
    let d = DeltaFamily::parse(delta_text, z.m()).unwrap();
    let gamma = AccessStructure::build(&z, &d, None).unwrap();

    println!("g = {:?}, min delta = {d}", z.increments());
    println!("  block sizes (default): {:?}", gamma.block_sizes().sizes());
    print!("  minimal authorized vectors:");
    for v in gamma.min_vectors() {
        print!(" {v}");
    }
    println!();
    println!("  support family: {}", gamma.support_family());
    println!("  redundant blocks: {}", gamma.redundant_blocks());
    println!("  connected: {}", gamma.is_connected());
    println!();
}

fn main() {
    // authorized iff participants come from at least two different blocks
    show(&[1, 1, 0], "{1,2};{1,3};{2,3}");

    // plain threshold: any two participants suffice
    show(&[2, 0, 0], "{1};{2};{3}");

    // one compartment pair carries everything; blocks 3 and 4 are redundant
    show(&[1, 1, 1, 1], "{1,2}");

    // membership queries on the first structure
    let z = UniformPolymatroid::from_increments(vec![1, 1, 0]).unwrap();
    let d = DeltaFamily::parse("{1,2};{1,3};{2,3}", 3).unwrap();
    let gamma = AccessStructure::build(&z, &d, None).unwrap();
    for w in ["(1,1,0)", "(1,0,0)", "(0,1,1)", "(2,0,0)"] {
        let v = PointVector::parse(w).unwrap();
        println!("is_authorized{w} = {:?}", gamma.is_authorized(&v).unwrap());
    }
}
