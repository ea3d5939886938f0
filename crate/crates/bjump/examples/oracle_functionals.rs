//! Oracle computations with use tracking: finite sets as total oracles,
//! blocking prefix strings, and bounded-Turing witness verification.
//!
//! ```bash
//! cargo run --example oracle_functionals
//! ```

use bjump::machine::{asm, encode, Instruction, Program};
use bjump::nat::Nat;
use bjump::oracle::{apply_bounded, apply_prefix, verify_bt, BTWitness, FiniteSetOracle};

fn main() {
    // A program answering "is 3 in the oracle?".
    let probe = encode(&asm::singleton_query_program(&Nat::from(3u64)));
    let with = apply_bounded(&probe, &FiniteSetOracle::from_u64([3]), &Nat::ZERO, 10_000);
    let without = apply_bounded(&probe, &FiniteSetOracle::empty(), &Nat::ZERO, 10_000);
    println!("D = {{3}}: {:?}, use {}", with.outcome, with.use_bound);
    println!("D = ∅:   {:?}, use {}", without.outcome, without.use_bound);

    // Prefix semantics blocks beyond the string.
    let sigma = vec![false, true, false];
    let blocked = apply_prefix(&probe, &sigma, &Nat::ZERO, 10_000);
    println!("|σ| = 3 blocks the query at 3: {:?}", blocked.outcome);

    // Verify a bounded-Turing reduction: A(x) = B(2x) with the doubling
    // functional and the bound g(x) = 2x + 1.
    let functional = encode(&Program::new(vec![
        Instruction::DecJz(0, 4),
        Instruction::Inc(4),
        Instruction::Inc(4),
        Instruction::DecJz(10, 0),
        Instruction::Qry(4, 1),
        Instruction::Halt,
    ]));
    let bound = {
        let mut a = asm::Asm::new(3);
        let top = a.here();
        let end = a.label();
        a.decjz(0, end);
        a.inc(1);
        a.inc(1);
        a.jmp(top);
        a.place(end);
        a.inc(1);
        a.halt();
        encode(&a.assemble())
    };
    let primes: Vec<u64> = (2u64..=100).filter(|n| (2..*n).all(|d| n % d != 0)).collect();
    let b = FiniteSetOracle::from_u64(primes.iter().copied());
    let domain: Vec<Nat> = (0..=50u64).map(Nat::from).collect();
    let report = verify_bt(
        &BTWitness { functional, bound },
        &|x| primes.contains(&(x.to_u64().unwrap() * 2)),
        &b,
        &domain,
        100_000,
    );
    println!(
        "A(x) = B(2x) over primes: {} checked, {} failures",
        report.passed.len() + report.failures.len(),
        report.failures.len()
    );
    assert!(report.all_passed());
}
