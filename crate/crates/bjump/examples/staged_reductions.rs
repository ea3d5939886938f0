//! The 1-reductions into iterated jumps of ∅: the ω²-c.e. base case, its
//! membership checks against a nested brute-force enumeration, and the
//! ω-c.e. ⟺ reducible-to-∅′ bridge.
//!
//! ```bash
//! cargo run --example staged_reductions
//! ```

use bjump::ershov::reduce::{bt_reduction_from_omega_ce, erbase_reduce, omega_ce_witness_from_bt};
use bjump::ershov::script::WitnessScript;
use bjump::jump::{iterate_jump, StagePolicy};
use bjump::nat::Nat;

fn main() {
    // Reduce a scripted ω²-c.e. set into ∅^{2b}.
    let script = WitnessScript::omega2_demo(6);
    let witness = script.compile();
    let red = erbase_reduce(&witness, 6, 40_000).unwrap();
    println!("erbase reduction over 6 points ({} planted spots):", red.spots.len());
    for spot in red.spots.iter().take(6) {
        println!("  spot {}: `{}` -> {}", spot.index, spot.question, spot.truth);
    }
    println!("f injective: {}", red.f_is_injective());

    // Membership in ∅^{2b} through the real nested enumerator, hints
    // supplied the way the proof names its witnesses.
    let domain: Vec<(Nat, Vec<bjump::machine::ProgramIndex>)> = (0..6u64)
        .map(|n| (red.f[&n].0.clone(), vec![red.hints[&n].clone()]))
        .collect();
    let points = iterate_jump(2, &domain, &[20_000, 8_000_000]);
    for (n, p) in points.iter().enumerate() {
        let expected = script.limit(n as u64).unwrap();
        println!("  f({n}) ∈ ∅^2b: {} (limit says {expected})", p.member);
        assert_eq!(p.member, expected);
    }

    // The classical bridge at level one: an ω-c.e. witness turns into a
    // reduction to ∅′ and back, preserving limits.
    let evens = WitnessScript::omega_ce_evens(12);
    let bridge = bt_reduction_from_omega_ce(&evens.compile(), 12, 30_000).unwrap();
    println!("\nbridge functional: {} bits, {} spots",
        bridge.witness.functional.0.bits(), bridge.spots.len());
    let back = omega_ce_witness_from_bt(&bridge.witness, 12, 4_000_000).unwrap();
    for n in 0..12u64 {
        assert_eq!(back.limit(n), Some(n % 2 == 0));
    }
    println!("round trip preserves limits on 12 points");

    let _ = StagePolicy::at(0);
}
