//! The two Ershov-level transformations: downward closure along a
//! bounded-Turing reduction, and the jump step that lifts an ω^k-c.e.
//! witness for A to an ω^{k+1}-c.e. witness for A^b.
//!
//! ```bash
//! cargo run --example level_transforms
//! ```

use bjump::ershov::script::WitnessScript;
use bjump::ershov::transform::{downward_transform, empty_set_witness, jump_transform};
use bjump::jump::{b_member, MemberStatus, StagePolicy};
use bjump::machine::{asm, encode, Instruction, Program};
use bjump::nat::Nat;
use bjump::oracle::FiniteSetOracle;

fn main() {
    // Downward: A ≤_bT B via the identity reduction, B the scripted evens.
    let phi = encode(&Program::new(vec![Instruction::Qry(0, 1), Instruction::Halt]));
    let f = encode(&asm::successor_program());
    let wb = WitnessScript::omega_ce_evens(16).compile();
    let down = downward_transform(&phi, &f, &wb, 1, 12, 30_000).unwrap();
    println!("downward transform (identity reduction):");
    for n in 0..12u64 {
        let v = down.witness.limit_value(&Nat::from(n), 60_000);
        println!("  χ-limit({n}) = {v:?}");
        assert_eq!(v, Some(n % 2 == 0));
    }
    let trace = &down.traces[&5];
    println!("  defines at n = 5: {} (strictly decreasing)", trace.defines.len());
    assert!(trace.ordinals_strictly_decrease());

    // Jump step: A = ∅ via the trivial witness; χ's limit must match the
    // enumerated ∅^b point for point.
    let wa = empty_set_witness(64, 1).compile();
    let up = jump_transform(&wa, 1, 10, 30_000).unwrap();
    let empty = FiniteSetOracle::empty();
    println!("\njump transform over the trivial witness:");
    for n in 0..10u64 {
        let truth =
            b_member(&empty, &Nat::from(n), &StagePolicy::at(30_000)).status == MemberStatus::In;
        let got = up.witness.limit_value(&Nat::from(n), 60_000);
        println!("  χ-limit({n}) = {got:?}, enumerated ∅^b({n}) = {truth}");
        assert_eq!(got, Some(truth));
        let t = &up.traces[&n];
        assert_eq!(t.defines[0].ordinal, bjump::ordinal::OrdinalCNF::omega_term(1, n));
        assert!(t.l_decrements <= n);
    }
    println!("first writes sit at ω·n and l never drops more than n times");
}
