//! The strictness diagonalization: every claimed witness for
//! `A^b ≤_bT A` is refuted by a concrete fixed point.
//!
//! ```bash
//! cargo run --example diagonalization
//! ```

use bjump::construction::diag::{diagonalize_strinc, stock_claimants};
use bjump::oracle::FiniteSetOracle;

fn main() {
    let evens = FiniteSetOracle::from_u64((0..40).filter(|n| n % 2 == 0));
    for (name, gamma, g) in stock_claimants() {
        let report = diagonalize_strinc(&gamma, &g, &evens, 100_000).unwrap();
        println!(
            "claimant {name}: m has {} bits, fixed point checked: {}",
            report.m.bits(),
            report.fixed_point_checked
        );
        println!("  branch: {}", serde_json::to_string(&report.branch).unwrap());
    }
}
