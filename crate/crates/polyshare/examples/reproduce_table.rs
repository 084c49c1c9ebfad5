//! The complete 4-block classification grid: 28 family classes against 15
//! increment-signature classes.
//!
//! Run with: cargo run --example reproduce_table

use polyshare::enumerate::build_table;

fn main() {
    let table = build_table(4).unwrap();
    let label_width = table
        .rows
        .iter()
        .map(|d| d.to_string().len())
        .max()
        .unwrap();

    for gi in 0..4 {
        let cells: Vec<String> = table
            .columns
            .iter()
            .map(|z| format!("{:>2}", z.increment(gi)))
            .collect();
        println!("    {:<label_width$} {}", format!("g{gi}"), cells.join(" "));
    }
    println!();
    for (i, (d, cells)) in table.rows.iter().zip(&table.cells).enumerate() {
        let symbols: Vec<String> = cells.iter().map(|c| format!("{:>2}", c.symbol(4))).collect();
        println!("{:>3} {:<label_width$} {}", i + 1, d.to_string(), symbols.join(" "));
    }

    let compatible = table
        .cells
        .iter()
        .flatten()
        .filter(|c| !matches!(c, polyshare::enumerate::TableCell::Incompatible))
        .count();
    println!();
    println!("{compatible} of {} cells are compatible", 28 * 15);
}
