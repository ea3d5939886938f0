//! Stage views of the bounded jump and its variants, and the two-way
//! translation between ∅^b and the halting set.
//!
//! ```bash
//! cargo run --example jump_enumeration
//! ```

use bjump::jump::reduce::check_empty_jump_vs_halting;
use bjump::jump::{enum_b, enum_b1, enum_i, gerla_tt_jump, iterate_jump, StagePolicy};
use bjump::machine::{encode, pad, Instruction, Program};
use bjump::nat::Nat;
use bjump::oracle::FiniteSetOracle;

fn main() {
    let empty = FiniteSetOracle::empty();
    let domain: Vec<Nat> = (0..12u64).map(Nat::from).collect();

    let view = enum_b(&empty, &domain, &StagePolicy::at(20_000));
    println!("∅^b over 0..12 at stage 20000:");
    for p in &view.points {
        println!("  {}", serde_json::to_string(p).unwrap());
    }

    // A padded halter lands in ∅^b with a small witness.
    let halter = pad(&encode(&Program::new(vec![Instruction::Halt])), &Nat::from(9u64));
    let v = enum_b(&empty, &[halter.0.clone()], &StagePolicy::at(5_000));
    println!("\npadded halter ({} bits): {:?}", halter.0.bits(), v.points[0].status);

    // The simpler jump A^i and the diagonal A^{b1}.
    let vi = enum_i(&empty, &domain, 20_000);
    println!("\n∅^i members below 12: {:?}",
        vi.members().map(|p| p.x.to_string()).collect::<Vec<_>>());
    let id = enum_b1(&empty, &domain, 20_000, &|x| x.clone());
    let shifted = enum_b1(&empty, &domain, 20_000, &|x| x.add_u64(1));
    println!(
        "∅^b1 depends on the enumeration: identity {:?} vs shifted {:?}",
        id.members().map(|p| p.x.to_string()).collect::<Vec<_>>(),
        shifted.members().map(|p| p.x.to_string()).collect::<Vec<_>>()
    );

    // Gerla's truth-table jump over the evens.
    let evens = |n: &Nat| Some(n.rem_u64(2) == 0);
    let tt = gerla_tt_jump(&evens, &domain, 20_000);
    println!("\nevens_tt members below 12: {:?}",
        tt.members().map(|p| p.x.to_string()).collect::<Vec<_>>());

    // Nested jumps with per-level budgets.
    let pts = iterate_jump(2, &[(Nat::from(7u64), vec![]), (Nat::from(9u64), vec![])], &[4_000, 20_000]);
    println!("\n∅^2b sample: {:?}",
        pts.iter().map(|p| (p.x.to_string(), p.member, p.fragile)).collect::<Vec<_>>());

    // ∅^b ≡₁ ∅′ on fifteen probes, both directions.
    let report = check_empty_jump_vs_halting(&(0..15u64).map(Nat::from).collect::<Vec<_>>(), 50_000);
    println!("\n∅^b vs ∅′ translations: {} outcomes, disagreements: {}",
        report.outcomes.len(),
        report.outcomes.len() - report.count(bjump::jump::reduce::PointOutcome::Agree));
    assert!(report.no_disagreement());
}
