// Solvability surveys: for each exponent `n`, which `k` admit any
// positive solution, and which admit one with both coordinates odd. The
// scans run complete solvers per cell (in parallel), so the tables are
// exact over their range — these are the grids the verification checks
// are built on.
//
// Run with: `cargo run --example solvability_tables`

use nagell::harness::build_tables;
use nagell::report::{table_output, OutputFormat};
use nagell::{solvable_k_set, FormSign};

fn main() {
    // negative side: thresholds sit at 2^n + 2, and the sharp k = 2^n + 2
    // column is solvable at every odd n
    let table = build_tables(5, FormSign::Minus, 8);
    print!("{}", table_output(&table, OutputFormat::Text));
    assert_eq!(table.rows[3].solvable_ks(), vec![4, 6, 10]);
    assert_eq!(table.rows[5].solvable_ks(), vec![4, 6, 10, 14, 34]);

    // positive side: nothing at n = 1, everything at n = 0 and even n —
    // the contrast that makes the odd exponents interesting
    println!();
    let table = build_tables(3, FormSign::Plus, 8);
    print!("{}", table_output(&table, OutputFormat::Text));
    assert!(table.rows[1].solvable_ks().is_empty());
    assert_eq!(table.rows[3].solvable_ks(), vec![6]);

    // a single row with its witnesses, straight from the scanner
    println!();
    let scan = solvable_k_set(3, FormSign::Minus, 18);
    for row in &scan.rows {
        if let Some((x, y)) = &row.min_witness {
            println!(
                "n = 3, k = {:2}: least witness ({x}, {y}){}",
                row.k,
                if row.odd_solution { ", has an all-odd solution" } else { "" }
            );
        }
    }
}
