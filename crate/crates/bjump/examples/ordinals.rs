//! Cantor normal form below ω^ω: parsing, comparison, the natural sum, and
//! the rank formula driving the jump step.
//!
//! ```bash
//! cargo run --example ordinals
//! ```

use bjump::ordinal::{natural_sum, rank_r, OrdinalCNF};

fn main() {
    let a: OrdinalCNF = "w*2 + 1".parse().unwrap();
    let b: OrdinalCNF = "w + 3".parse().unwrap();
    println!("({a}) +c ({b}) = {}", a.natural_add(&b));

    let big: OrdinalCNF = "w^2".parse().unwrap();
    let small: OrdinalCNF = "w*5 + 9".parse().unwrap();
    println!("{big} > {small}: {}", big > small);
    println!("w > 1000000: {}", OrdinalCNF::omega() > OrdinalCNF::from_nat(1_000_000));

    let terms: Vec<OrdinalCNF> =
        ["w^2 + w", "w*2 + 5", "7"].iter().map(|s| s.parse().unwrap()).collect();
    println!("natural sum of three terms: {}", natural_sum(&terms));

    // u(β), the units digit.
    let beta: OrdinalCNF = "w^2*3 + w*2 + 5".parse().unwrap();
    println!("u({beta}) = {}", beta.units());

    // The rank: r(l, α…) = ω^k·l +c Σα +c u(Σα).
    let r = rank_r(1, 2, &[OrdinalCNF::from_nat(3), OrdinalCNF::from_nat(1)]).unwrap();
    println!("r(2, 3, 1) at k = 1: {r}");
    let r = rank_r(2, 1, &["w + 1".parse().unwrap(), "2".parse().unwrap()]).unwrap();
    println!("r(1, w+1, 2) at k = 2: {r}");

    // The step property that makes the jump construction's writes descend.
    let hi = rank_r(1, 2, &[OrdinalCNF::from_nat(3)]).unwrap();
    let lo = rank_r(1, 1, &[OrdinalCNF::from_nat(3)]).unwrap();
    println!(
        "r(1,3)+2 = {} < r(2,3)+1 = {}",
        lo.natural_add(&OrdinalCNF::from_nat(2)),
        hi.natural_add(&OrdinalCNF::from_nat(1)),
    );
    assert!(lo.natural_add(&OrdinalCNF::from_nat(2)) < hi.natural_add(&OrdinalCNF::from_nat(1)));
}
