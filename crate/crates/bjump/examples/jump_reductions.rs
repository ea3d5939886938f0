//! The explicit inter-jump reductions: `A^{b0} ≤_1 A^b`, the truth-table
//! style converse, order preservation along a bT reduction, and Gerla's
//! `A_tt ≤_1 A^{b0}`.
//!
//! ```bash
//! cargo run --example jump_reductions
//! ```

use bjump::jump::reduce::{AttToBZero, BToBZero, BZeroToB, OrderPreserving};
use bjump::machine::{asm, encode, Instruction, Program};
use bjump::nat::Nat;
use bjump::oracle::{BTWitness, FiniteSetOracle, TTCondition};

fn main() {
    let evens = FiniteSetOracle::from_u64((0..=40).filter(|n| n % 2 == 0));
    let quer2 = encode(&asm::singleton_query_program(&Nat::from(2u64)));
    let quer3 = encode(&asm::singleton_query_program(&Nat::from(3u64)));
    let halt = encode(&Program::new(vec![Instruction::Halt]));
    let succ = encode(&asm::successor_program());
    let diverger = encode(&Program::diverger());

    // A^{b0} ≤_1 A^b on scripted probe triples with known truth.
    let probes = vec![
        (halt.clone(), succ.clone(), Nat::from(5u64), Some(true)),
        (halt.clone(), diverger.clone(), Nat::from(5u64), Some(false)),
        (quer2.clone(), succ.clone(), Nat::from(5u64), Some(true)),
        (quer3.clone(), succ.clone(), Nat::from(5u64), Some(false)),
    ];
    let report = BZeroToB::check(&evens, &probes, 60_000);
    println!("b0 -> b: {:?}", report.outcomes);
    assert!(report.no_disagreement());
    // The proof's domination g(⟨e,i,j⟩) ≥ k(i,j).
    let g = BZeroToB::g_index(&quer2, &succ, &Nat::from(5u64));
    let k = BZeroToB::k_index(&succ, &Nat::from(5u64));
    println!("g ≥ k: {} ({} vs {} bits)", g.0 >= k.0, g.0.bits(), k.0.bits());

    // The converse via the OR table: x ∈ A^b ⟺ some ⟨x,i,x⟩ ∈ A^{b0}.
    let domain: Vec<Nat> = (0..10u64).map(Nat::from).collect();
    let back = BToBZero::check(&evens, &domain, 20_000);
    println!("b -> b0 projection: {} outcomes, no disagreement: {}",
        back.outcomes.len(), back.no_disagreement());
    println!("query count at x = 7: {}", BToBZero::queries(&Nat::from(7u64)).len());

    // Order preservation along the identity reduction A = B = evens.
    let psi = encode(&Program::new(vec![Instruction::Qry(0, 1), Instruction::Halt]));
    let op = OrderPreserving::new(psi, succ.clone(), 20);
    println!("h strictly increasing on [0, 20]: {}", op.h_strictly_increasing());
    let probes = vec![
        (halt.clone(), 1u64, Nat::from(4u64), Some(true)),
        (quer2.clone(), 7u64, Nat::from(9u64), Some(true)),
        (quer3.clone(), 7u64, Nat::from(9u64), Some(false)),
    ];
    let rep = op.check(&evens, &evens, &probes, 120_000);
    println!("order-preserving probes: {:?}", rep.outcomes);
    assert!(rep.no_disagreement());

    // Gerla: A_tt ≤_1 A^{b0}, with the genuine machine tt-evaluator as the
    // canonical A^{tt} ≤_bT A witness.
    let att = AttToBZero {
        ktt: BTWitness {
            functional: encode(&asm::tt_evaluator_program()),
            bound: encode(&asm::successor_program()),
        },
    };
    let a_fn = |n: &Nat| Some(n.rem_u64(2) == 0);
    // Direct-constant indices double as diagonal condition codes.
    let mut sat = None;
    let mut unsat = None;
    for k in 0..4000u64 {
        let x = 8 * k + 7;
        let cond = TTCondition::from_code(&Nat::from(x));
        match bjump::oracle::tt_eval(&cond, &a_fn) {
            Ok(true) if sat.is_none() => sat = Some(x),
            Ok(false) if unsat.is_none() => unsat = Some(x),
            _ => {}
        }
        if sat.is_some() && unsat.is_some() {
            break;
        }
    }
    let probes = vec![Nat::ZERO, Nat::from(sat.unwrap()), Nat::from(unsat.unwrap())];
    let rep = att.check(&a_fn, &evens, &probes, 4_000_000);
    println!("A_tt -> A^b0 probes: {:?}", rep.outcomes);
    assert!(rep.no_disagreement());
}
