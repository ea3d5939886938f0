//! The c.e. set whose bounded jump escapes its truth-table jump: movable
//! markers, restraints, and requirements that are never verified to agree.
//!
//! ```bash
//! cargo run --example tt_separation
//! ```

use bjump::construction::replay;
use bjump::construction::ttsep::{tt_separation, TtSepConfig};
use bjump::machine::{asm, encode, Instruction, Program};
use bjump::nat::Nat;

fn main() {
    // The standard run: requirements from the Cantor projections.
    let run = tt_separation(&TtSepConfig::standard(3, 10_000));
    println!("standard run: enumerated {:?}", run.enumerated);
    println!("attention counts: {:?}", run.attention_counts);
    for (n, v) in run.final_verdicts(200_000).iter().enumerate() {
        println!("  R_{n}: {v:?}");
    }
    println!("double actions backed by convergences: {}", run.double_actions_backed());
    replay(&run.trace).unwrap();
    println!("trace replays identically ({} stage records)", run.trace.stages.len());

    // A live opponent: claims A^b(x) = 0 everywhere with a constant bound.
    let functional = encode(&Program::new(vec![Instruction::Halt]));
    let bound = encode(&asm::const_loader(&Nat::from(40u64)));
    let config = TtSepConfig {
        requirement_count: 1,
        stages: 10_000,
        pairs: Some(vec![(functional.0, bound.0)]),
        diagonal_horizon: 2048,
    };
    let live = tt_separation(&config);
    println!("\nlive opponent: attention {:?}, verdicts {:?}",
        live.attention_counts,
        live.final_verdicts(4_000_000));
    println!("enumerated into A: {:?}", live.enumerated);
}
