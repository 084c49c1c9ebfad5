//! Hierarchy classification: the block preorder induced by an access
//! structure and its order type.
//!
//! Run with: cargo run --example classify_hierarchy

use polyshare::{classify_instance, DeltaFamily, UniformPolymatroid};

fn show(g: &[u32], delta_text: &str, comment: &str) {
    let z = UniformPolymatroid::from_increments(g.to_vec()).unwrap();
    let d = DeltaFamily::parse(delta_text, z.m()).unwrap();
    println!("g = {:?}, min delta = {d}   ({comment})", z.increments());
    match classify_instance(&z, &d, None) {
        Ok(report) => {
            for row in report.relation.rows() {
                let line: String = row.iter().map(|&b| if b { '1' } else { '.' }).collect();
                println!("    {line}");
            }
            print!("  type: {}", report.order_type.name());
            if let Some((x, y)) = report.order_type.layers() {
                print!("  superior X = {x}, inferior Y = {y}");
            }
            if let Ok(code) = report.order_type.table_code(z.m()) {
                print!("  [code {code}]");
            }
            println!("  max chain: {}", report.max_chain);
        }
        Err(e) => println!("  {e}"),
    }
    println!();
}

fn main() {
    show(&[2, 0, 0, 0], "{1};{2};{3};{4}", "threshold: all blocks equivalent");
    show(&[4, 3, 2, 1], "{1,2};{3,4}", "compartmented: all blocks independent");
    show(&[3, 2, 1, 1], "{1}", "one superior department head");
    show(&[1, 1, 1, 1], "{1,2}", "two superiors over an equivalent pair");
    show(&[2, 1, 0, 0], "{1};{2};{3,4}", "two superiors over an independent pair");
    show(&[3, 2, 1, 0], "{1};{2,3}", "a single strict pair");
    show(&[2, 1, 1, 1], "{1,2,3}", "three superiors over one block");
}
