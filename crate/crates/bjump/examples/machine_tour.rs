//! A first walk through the register machine: programs, the total Gödel
//! numbering, step-bounded runs, and Cantor pairing.
//!
//! ```bash
//! cargo run --example machine_tour
//! ```

use bjump::machine::{asm, decode, encode, run, Program, StepOutcome};
use bjump::nat::Nat;

fn main() {
    // Programs are plain text, one instruction per line.
    let source = "\
DECJZ r0 3
INC r1
DECJZ r3 0
HALT
";
    let program: Program = source.parse().unwrap();
    let index = encode(&program);
    println!("program:\n{program}");
    println!("index: {index} ({} bits)", index.0.bits());
    assert_eq!(decode(&index), program, "decode is inverse to encode");

    // This program moves r0 into r1: the identity function.
    for x in [0u64, 5, 41] {
        let r = run(&index, &Nat::from(x), 10_000);
        println!("run({x}) -> {:?} in {} steps", r.outcome, r.steps);
    }

    // Every natural decodes to some program; garbage decodes to a diverger.
    let garbage = bjump::machine::ProgramIndex::from_u64(2);
    println!("decode(2) = {:?}", decode(&garbage));
    assert_eq!(run(&garbage, &Nat::ZERO, 100_000).outcome, StepOutcome::StillRunning);

    // The library ships arithmetic programs; the Cantor pairing is the glue
    // for multi-argument functions.
    let adder = encode(&asm::cantor_sum_program());
    let paired = Nat::pair(&Nat::from(3u64), &Nat::from(4u64));
    let r = run(&adder, &paired, 100_000);
    println!("cantor-sum(pair(3,4) = {paired}) -> {:?}", r.outcome.value().unwrap());
    assert_eq!(r.outcome, StepOutcome::Halted(Nat::from(7u64)));

    println!("pair(1,2) = {}", Nat::pair(&Nat::from(1u64), &Nat::from(2u64)));
    let (a, b) = Nat::unpair(&Nat::from(8u64));
    println!("unpair(8) = ({a}, {b})");
}
