//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line with its runtime (visible under `--nocapture`). Budgets and
//! tolerances are pinned in code.

use bjump::ershov::reduce::{erbase_reduce, inductive_level3};
use bjump::ershov::script::WitnessScript;
use bjump::ershov::transform::{downward_transform, empty_set_witness, jump_transform};
use bjump::jump::reduce::{check_empty_jump_vs_halting, BToBZero, BZeroToB, PointOutcome};
use bjump::jump::{b_member, iterate_jump, MemberStatus, StagePolicy};
use bjump::machine::{asm, encode, Instruction, Program, ProgramIndex};
use bjump::nat::Nat;
use bjump::oracle::FiniteSetOracle;
use bjump::verify;
use std::time::Instant;

struct Criterion {
    name: &'static str,
    limit_s: f64,
    start: Instant,
}

impl Criterion {
    fn new(name: &'static str, limit_s: f64) -> Criterion {
        Criterion { name, limit_s, start: Instant::now() }
    }

    fn finish(self, passed: bool, detail: &str) {
        let elapsed = self.start.elapsed().as_secs_f64();
        let verdict = if passed && elapsed < self.limit_s { "PASS" } else { "FAIL" };
        println!(
            "[{verdict}] {}: {detail} ({elapsed:.1}s / limit {}s)",
            self.name, self.limit_s
        );
        assert!(passed, "{}: {detail}", self.name);
        assert!(
            elapsed < self.limit_s,
            "{}: runtime {elapsed:.1}s exceeded {}s",
            self.name,
            self.limit_s
        );
    }
}

#[test]
fn criterion_1_acceptable_system() {
    let c = Criterion::new("criterion 1 (acceptable system)", 10.0);
    let (smn_ok, smn_detail) = verify::smn_grid_exact(10, 400_000);
    let (pad_ok, pad_detail) = verify::padding_grid(10, 200_000);
    let (fix_ok, fix_detail) = verify::fixed_point_contract(20, 300_000);
    c.finish(
        smn_ok && pad_ok && fix_ok,
        &format!("smn[{smn_detail}] padding[{pad_detail}] fixed-point[{fix_detail}]"),
    );
}

#[test]
fn criterion_2_ordinal_suite() {
    let c = Criterion::new("criterion 2 (ordinal suite)", 5.0);
    let report = verify::run_suite("ordinals").unwrap();
    let failures: Vec<&str> = report
        .properties
        .iter()
        .filter(|p| !p.passed)
        .map(|p| p.name.as_str())
        .collect();
    c.finish(
        failures.is_empty(),
        &format!("{} properties, failures: {failures:?}", report.properties.len()),
    );
}

#[test]
fn criterion_3_jump_cross_checks() {
    let c = Criterion::new("criterion 3 (jump definition cross-checks)", 60.0);
    let budget = 100_000u64;
    // ∅^b ≡ ∅′ on 15 probes, both directions.
    let empty_vs_halting =
        check_empty_jump_vs_halting(&(0..15u64).map(Nat::from).collect::<Vec<_>>(), budget);
    // b0 → b on scripted probes over a decidable base.
    let base = FiniteSetOracle::from_u64((0..=40).filter(|n| n % 2 == 0));
    let quer2 = encode(&asm::singleton_query_program(&Nat::from(2u64)));
    let quer3 = encode(&asm::singleton_query_program(&Nat::from(3u64)));
    let halt = encode(&Program::new(vec![Instruction::Halt]));
    let succ = encode(&asm::successor_program());
    let id = encode(&asm::identity_program());
    let diverger = encode(&Program::diverger());
    let probes = vec![
        (halt.clone(), succ.clone(), Nat::from(5u64), Some(true)),
        (halt.clone(), diverger.clone(), Nat::from(5u64), Some(false)),
        (quer2.clone(), succ.clone(), Nat::from(5u64), Some(true)),
        (quer3.clone(), succ.clone(), Nat::from(5u64), Some(false)),
        (quer2.clone(), id.clone(), Nat::from(1u64), Some(false)),
        (diverger.clone(), succ.clone(), Nat::from(0u64), Some(false)),
        (quer2, halt.clone(), Nat::from(9u64), Some(true)),
        (quer3, halt.clone(), Nat::from(9u64), Some(false)),
        (halt, id, Nat::from(7u64), Some(true)),
        (diverger, succ, Nat::from(3u64), Some(false)),
    ];
    let b0_to_b = BZeroToB::check(&base, &probes, budget);
    // b → b0 projection.
    let b_to_b0 = BToBZero::check(&base, &(0..15u64).map(Nat::from).collect::<Vec<_>>(), 20_000);

    let all = [&empty_vs_halting, &b0_to_b, &b_to_b0];
    let disagreements: usize = all.iter().map(|r| r.count(PointOutcome::Disagree)).sum();
    let unresolved_ok = all.iter().all(|r| r.unresolved_fraction() < 0.2);
    let total: usize = all.iter().map(|r| r.outcomes.len()).sum();
    c.finish(
        disagreements == 0 && unresolved_ok,
        &format!("{total} probe outcomes, {disagreements} disagreements, unresolved < 20% everywhere"),
    );
}

#[test]
fn criterion_4_ershov_suite() {
    let c = Criterion::new("criterion 4 (Ershov transforms)", 120.0);
    let mut ok = true;
    let mut notes = Vec::new();

    // Downward transform on n < 20, identity and doubling reductions over
    // the scripted ω-c.e. evens, against the script's own limits.
    let phi_id = encode(&Program::new(vec![Instruction::Qry(0, 1), Instruction::Halt]));
    let f_succ = encode(&asm::successor_program());
    let evens_script = WitnessScript::omega_ce_evens(44);
    let wb = evens_script.compile();
    match downward_transform(&phi_id, &f_succ, &wb, 1, 20, 30_000) {
        Err(e) => {
            ok = false;
            notes.push(format!("downward/identity: {e}"));
        }
        Ok(t) => {
            for n in 0..20u64 {
                ok &= t.witness.limit_value(&Nat::from(n), 80_000) == Some(n % 2 == 0);
                ok &= t.traces[&n].ordinals_strictly_decrease();
            }
            notes.push("downward identity ok".into());
        }
    }
    let phi_dbl = encode(&Program::new(vec![
        Instruction::DecJz(0, 4),
        Instruction::Inc(4),
        Instruction::Inc(4),
        Instruction::DecJz(10, 0),
        Instruction::Qry(4, 1),
        Instruction::Halt,
    ]));
    let f_dbl = {
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
    match downward_transform(&phi_dbl, &f_dbl, &wb, 1, 20, 30_000) {
        Err(e) => {
            ok = false;
            notes.push(format!("downward/double: {e}"));
        }
        Ok(t) => {
            for n in 0..20u64 {
                let expected = evens_script.limit(2 * n).unwrap();
                ok &= t.witness.limit_value(&Nat::from(n), 80_000) == Some(expected);
            }
            notes.push("downward double ok".into());
        }
    }

    // Jump transform on n < 10, k = 1, trivial and evens witnesses, against
    // a test-local brute force straight from the definition.
    let brute_b = |base: &FiniteSetOracle, x: u64, budget: u64| -> bool {
        (0..=x).any(|i| {
            let b = bjump::machine::run(&ProgramIndex::from_u64(i), &Nat::from(x), budget);
            match b.outcome {
                bjump::machine::StepOutcome::Halted(v) => {
                    let restricted = base.restrict(&v);
                    bjump::machine::run_oracle(
                        &ProgramIndex::from_u64(x),
                        &Nat::from(x),
                        &restricted,
                        budget,
                    )
                    .outcome
                    .halted()
                }
                _ => false,
            }
        })
    };
    for (name, script) in [("trivial", empty_set_witness(64, 1)), ("evens", WitnessScript::omega_ce_evens(64))] {
        let wa = script.compile();
        match jump_transform(&wa, 1, 10, 30_000) {
            Err(e) => {
                ok = false;
                notes.push(format!("jump/{name}: {e}"));
            }
            Ok(t) => {
                let base = FiniteSetOracle::from_u64(
                    (0..64u64).filter(|&n| script.limit(n) == Some(true)),
                );
                for n in 0..10u64 {
                    let truth = brute_b(&base, n, 30_000);
                    ok &= t.witness.limit_value(&Nat::from(n), 80_000) == Some(truth);
                    let tr = &t.traces[&n];
                    ok &= tr.defines[0].ordinal == bjump::ordinal::OrdinalCNF::omega_term(1, n);
                    ok &= !tr.defines[0].value;
                    ok &= tr.l_decrements <= n;
                    ok &= tr.defines[1..].windows(2).all(|w| w[1].ordinal < w[0].ordinal);
                }
                notes.push(format!("jump {name} ok"));
            }
        }
    }
    c.finish(ok, &notes.join("; "));
}

#[test]
fn criterion_5_erbase_inductive() {
    let c = Criterion::new("criterion 5 (erbase and induction)", 600.0);
    let mut ok = true;
    let mut notes = Vec::new();
    // k = 2 on n < 8: zero disagreements against the script limits.
    let script = WitnessScript::omega2_demo(8);
    let w = script.compile();
    match erbase_reduce(&w, 8, 40_000) {
        Err(e) => {
            ok = false;
            notes.push(format!("erbase: {e}"));
        }
        Ok(red) => {
            ok &= red.f_is_injective();
            let domain: Vec<(Nat, Vec<ProgramIndex>)> =
                (0..8u64).map(|n| (red.f[&n].0.clone(), vec![red.hints[&n].clone()])).collect();
            let points = iterate_jump(2, &domain, &[20_000, 8_000_000]);
            let mut disagreements = 0;
            for (n, p) in points.iter().enumerate() {
                if p.member != script.limit(n as u64).unwrap() {
                    disagreements += 1;
                }
                ok &= red.f[&(n as u64)].0 > red.u[&(n as u64)];
            }
            ok &= disagreements == 0;
            notes.push(format!("k=2: 8 points, {disagreements} disagreements"));
        }
    }
    // k = 3 spot check on n < 5.
    let script3 = WitnessScript::omega3_demo(5);
    let w3 = script3.compile();
    match inductive_level3(&w3, 5, 40_000) {
        Err(e) => {
            ok = false;
            notes.push(format!("inductive: {e}"));
        }
        Ok(out) => {
            let red = &out.reduction;
            let domain: Vec<(Nat, Vec<ProgramIndex>)> =
                (0..5u64).map(|n| (red.f[&n].0.clone(), vec![red.hints[&n].clone()])).collect();
            let points = iterate_jump(3, &domain, &[10_000, 40_000, 8_000_000]);
            let mut disagreements = 0;
            for (n, p) in points.iter().enumerate() {
                if p.member != script3.limit(n as u64).unwrap() {
                    disagreements += 1;
                }
            }
            ok &= disagreements == 0;
            // The induction hypothesis is genuinely exercised: every slice
            // index agrees with its slice limit at level 2.
            let (n, plans) = out.slices.iter().next_back().unwrap();
            for plan in plans {
                let member = iterate_jump(
                    2,
                    &[(plan.e_index.0.clone(), vec![plan.e_hint.clone()])],
                    &[20_000, 8_000_000],
                )[0]
                .member;
                ok &= member == plan.limit;
            }
            notes.push(format!(
                "k=3: 5 points, {disagreements} disagreements; {} slices checked at n={n}",
                plans.len()
            ));
        }
    }
    c.finish(ok, &notes.join("; "));
}

#[test]
fn criterion_6_shoenfield() {
    use bjump::construction::shoenfield::{shoenfield_inversion, ShoenfieldConfig};
    use bjump::construction::{replay, ConstructionTrace};
    let c = Criterion::new("criterion 6 (inversion construction)", 300.0);
    let config = ShoenfieldConfig::standard(WitnessScript::shoenfield_demo(6), 6, 20_000);
    let run = match shoenfield_inversion(&config) {
        Ok(r) => r,
        Err(e) => {
            c.finish(false, &format!("construction failed: {e}"));
            return;
        }
    };
    // (a) ω-c.e. via x + 1.
    let change_ok = (0..=run.config.stages)
        .all(|x| run.final_set.change_count(&Nat::from(x)) <= x + 1);
    // (b) marker definitions ≤ h(n), h(0) = i_0.
    let count_ok = (0..6usize)
        .all(|n| Nat::from(run.definition_counts[n]) <= *run.plan.h(n as u64))
        && *run.plan.h(0) == Nat::from(run.i_table[0])
        && run.plan.h_recurrence_ok();
    // (c) n ∈ B ⟺ g(n) ∈ A^b, zero disagreements.
    let reduction = run.check_b_reduction(4_000_000);
    let disagreements =
        reduction.iter().filter(|(_, b, member)| *b != Some(*member)).count();
    // (d) replay bit for bit.
    let jsonl = run.trace.to_jsonl();
    let replay_ok = ConstructionTrace::from_jsonl(&jsonl)
        .map(|t| replay(&t).is_ok())
        .unwrap_or(false);
    c.finish(
        change_ok && count_ok && disagreements == 0 && replay_ok,
        &format!(
            "changes ≤ x+1: {change_ok}; counts ≤ h: {count_ok}; b-reduction disagreements: {disagreements}; replay: {replay_ok}"
        ),
    );
}

#[test]
fn criterion_7_diagonalization() {
    use bjump::construction::diag::{diagonalize_strinc, stock_claimants, RefutationBranch};
    let c = Criterion::new("criterion 7 (diagonalization)", 60.0);
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, gamma, g) in stock_claimants() {
        match diagonalize_strinc(&gamma, &g, &FiniteSetOracle::empty(), 100_000) {
            Ok(report) => {
                let concrete = !matches!(report.branch, RefutationBranch::BudgetUnresolved);
                ok &= concrete && report.fixed_point_checked;
                notes.push(format!(
                    "{name}: {}",
                    serde_json::to_string(&report.branch).unwrap()
                ));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("{name}: error {e}"));
            }
        }
    }
    c.finish(ok, &notes.join("; "));
}

#[test]
fn criterion_8_tt_separation() {
    use bjump::construction::ttsep::{tt_separation, RequirementVerdict, TtSepConfig};
    let c = Criterion::new("criterion 8 (tt separation)", 300.0);
    let run = tt_separation(&TtSepConfig::standard(3, 10_000));
    // Monotone enumeration is structural; double-check no duplicates.
    let unique: std::collections::BTreeSet<u64> = run.enumerated.iter().copied().collect();
    let monotone = unique.len() == run.enumerated.len();
    let verdicts = run.final_verdicts(200_000);
    let unfalsified =
        verdicts.iter().all(|v| *v != RequirementVerdict::VerifiedAgreement);
    let backed = run.double_actions_backed();
    c.finish(
        monotone && unfalsified && backed,
        &format!(
            "monotone: {monotone}; verdicts: {verdicts:?}; double actions backed: {backed}"
        ),
    );
}
