//! The acceptability package: s-m-n currying, the padding lemma, and
//! verified Kleene fixed points — including a program that outputs its own
//! index.
//!
//! ```bash
//! cargo run --example acceptable_numbering
//! ```

use bjump::machine::acceptable::quine_transformer;
use bjump::machine::{asm, encode, fixed_point, pad, run, smn, FixedPointPolicy, StepOutcome};
use bjump::nat::Nat;

fn main() {
    // s-m-n: φ_{smn(e, y)}(x) = φ_e(pair(y, x)).
    let adder = encode(&asm::cantor_sum_program());
    let add3 = smn(&adder, &Nat::from(3u64));
    let r = run(&add3, &Nat::from(4u64), 1_000_000);
    println!("smn(adder, 3) applied to 4 -> {:?}", r.outcome.value().unwrap());
    assert_eq!(r.outcome, StepOutcome::Halted(Nat::from(7u64)));

    // Padding: infinitely many strictly increasing equivalent indices.
    let id = encode(&asm::identity_program());
    let mut prev = id.0.clone();
    for k in 0..5u64 {
        let p = pad(&id, &Nat::from(k));
        assert!(p.0 > prev);
        assert_eq!(run(&p, &Nat::from(9u64), 100_000).outcome, StepOutcome::Halted(Nat::from(9u64)));
        println!("pad(identity, {k}) = {} bits, still the identity", p.0.bits());
        prev = p.0;
    }

    // The recursion theorem at work: a transformer mapping e to an index of
    // the constant-e function has a fixed point m with φ_m = const m — a
    // quine.
    let t = quine_transformer();
    let m = fixed_point(&t, &FixedPointPolicy::default()).unwrap();
    let out = run(&m, &Nat::from(0u64), 2_000_000).outcome;
    println!("quine fixed point m = {}; φ_m(0) = {:?}", m.0, out.value().unwrap());
    assert_eq!(out, StepOutcome::Halted(m.0.clone()));

    // Distinct padding offsets give distinct fixed points.
    let m2 = fixed_point(&t, &FixedPointPolicy { offset: 2, ..Default::default() }).unwrap();
    println!("another fixed point: {}", m2.0);
    assert_ne!(m.0, m2.0);
}
