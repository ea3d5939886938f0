//! α-c.e. witnesses: script a guessing function, compile it to a machine
//! program, and watch its least-ordinal evaluation and mind-change
//! histories.
//!
//! ```bash
//! cargo run --example ershov_witnesses
//! ```

use bjump::ershov::script::WitnessScript;
use bjump::ershov::EvalOutcome;
use bjump::nat::Nat;

fn main() {
    // The stock ω-c.e. witness for the even numbers: first guess 1, odd
    // points correct themselves to 0 at a smaller ordinal later.
    let script = WitnessScript::omega_ce_evens(10);
    println!("script JSON:\n{}\n", script.to_json());
    let witness = script.compile();
    println!("compiled ψ index: {} bits", witness.psi.0.bits());

    for n in 0..10u64 {
        let early = witness.eval(&Nat::from(n), 2_000);
        let late = witness.eval(&Nat::from(n), 40_000);
        let describe = |o: &EvalOutcome| match o {
            EvalOutcome::Resolved { ordinal, value } => format!("({ordinal}, {})", *value as u8),
            EvalOutcome::Unresolved => "unresolved".into(),
        };
        println!(
            "n = {n}: early {} -> late {} (script limit: {:?})",
            describe(&early),
            describe(&late),
            script.limit(n)
        );
        assert_eq!(witness.limit_value(&Nat::from(n), 40_000), Some(n % 2 == 0));
    }

    // Histories are strictly ordinal-decreasing.
    let st = witness.state(&Nat::from(7u64), 40_000);
    println!("\nmind changes at n = 7:");
    for (stage, ordinal, value) in &st.history {
        println!("  stage {stage}: ψ(7, {ordinal}) = {}", *value as u8);
    }
    assert!(st.is_strictly_decreasing());

    // An ω²-c.e. script moves between ω-blocks.
    let w2 = WitnessScript::omega2_demo(6).compile();
    let st = w2.state(&Nat::from(2u64), 40_000);
    println!("\nω²-c.e. history at n = 2:");
    for (stage, ordinal, value) in &st.history {
        println!("  stage {stage}: ({ordinal}, {})", *value as u8);
    }
}
