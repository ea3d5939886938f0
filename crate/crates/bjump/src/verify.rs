//! Named property suites.
//!
//! Each suite covers one module's invariants at desk scale with pinned
//! budgets; `bjump verify --suite <name>` runs one and reports a
//! machine-readable record per property. The acceptance tests drive the
//! same functions with their pinned budgets.

use crate::ershov::script::WitnessScript;
use crate::ershov::transform::{downward_transform, empty_set_witness, jump_transform};
use crate::jump::reduce::{check_empty_jump_vs_halting, BToBZero, BZeroToB, PointOutcome};
use crate::jump::{b_member, enum_b1, MemberStatus, StagePolicy};
use crate::machine::asm;
use crate::machine::{
    encode, fixed_point, pad, run, smn, Exec, FixedPointPolicy, Program, ProgramIndex,
    StepOutcome,
};
use crate::nat::Nat;
use crate::oracle::FiniteSetOracle;
use crate::ordinal::{natural_sum, rank_r, small_ordinal_grid, OrdinalCNF};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub properties: Vec<PropertyResult>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }
}

pub fn suite_names() -> &'static [&'static str] {
    &["machine", "oracle", "ordinals", "ershov", "jump", "constructions"]
}

pub fn run_suite(name: &str) -> Option<SuiteReport> {
    let start = std::time::Instant::now();
    let properties = match name {
        "machine" => machine_suite(),
        "oracle" => oracle_suite(),
        "ordinals" => ordinal_suite(),
        "ershov" => ershov_suite(),
        "jump" => jump_suite(),
        "constructions" => construction_suite(),
        _ => return None,
    };
    Some(SuiteReport {
        suite: name.to_string(),
        properties,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn prop(name: &str, passed: bool, detail: impl Into<String>) -> PropertyResult {
    PropertyResult { name: name.to_string(), passed, detail: detail.into() }
}

/// Ten hand-built programs exercising arithmetic, oracles, and divergence.
pub fn program_corpus() -> Vec<(&'static str, ProgramIndex)> {
    let doubler = {
        let mut a = asm::Asm::new(3);
        let top = a.here();
        let end = a.label();
        a.decjz(0, end);
        a.inc(1);
        a.inc(1);
        a.jmp(top);
        a.place(end);
        a.halt();
        a.assemble()
    };
    let add3 = {
        let mut a = asm::Asm::new(3);
        a.mv(0, &[1]);
        a.add_small(1, 3);
        a.halt();
        a.assemble()
    };
    vec![
        ("identity", encode(&asm::identity_program())),
        ("successor", encode(&asm::successor_program())),
        ("const-0", encode(&Program::new(vec![crate::machine::Instruction::Halt]))),
        ("const-7", encode(&asm::const_loader(&Nat::from(7u64)))),
        ("cantor-sum", encode(&asm::cantor_sum_program())),
        ("cantor-left", encode(&asm::cantor_left_program())),
        ("cantor-right", encode(&asm::cantor_right_program())),
        ("doubler", encode(&doubler)),
        ("add-3", encode(&add3)),
        ("diverger", encode(&Program::diverger())),
    ]
}

/// The five transformers of the fixed-point contract.
pub fn transformer_corpus() -> Vec<(&'static str, ProgramIndex)> {
    use crate::machine::acceptable::{
        constant_transformer, identity_transformer, padding_transformer, quine_transformer,
    };
    let halt = encode(&Program::new(vec![crate::machine::Instruction::Halt]));
    let one = encode(&Program::new(vec![
        crate::machine::Instruction::Inc(1),
        crate::machine::Instruction::Halt,
    ]));
    vec![
        ("const-to-halt", constant_transformer(&halt)),
        ("const-to-one", constant_transformer(&one)),
        ("identity", identity_transformer()),
        ("quine-builder", quine_transformer()),
        ("padder", padding_transformer()),
    ]
}

/// s-m-n contract, exactly, on the corpus × a `y, x < reach` grid.
pub fn smn_grid_exact(reach: u64, budget: u64) -> (bool, String) {
    for (name, e) in program_corpus() {
        let exec = Exec::new(e.clone());
        for y in 0..reach {
            let s = smn(&e, &Nat::from(y));
            let s_exec = Exec::new(s);
            for x in 0..reach {
                let direct = exec.run(&Nat::pair(&Nat::from(y), &Nat::from(x)), budget).outcome;
                let curried = s_exec.run(&Nat::from(x), budget).outcome;
                let ok = match (&direct, &curried) {
                    (StepOutcome::Halted(a), StepOutcome::Halted(b)) => a == b,
                    (StepOutcome::Halted(_), _) | (_, StepOutcome::Halted(_)) => false,
                    _ => true,
                };
                if !ok {
                    return (false, format!("{name} at y={y} x={x}: {direct:?} vs {curried:?}"));
                }
            }
        }
    }
    (true, format!("{} programs × {reach}×{reach} grid exact", program_corpus().len()))
}

/// Padding preserves semantics on the corpus grid and grows strictly.
pub fn padding_grid(reach: u64, budget: u64) -> (bool, String) {
    for (name, e) in program_corpus() {
        let exec = Exec::new(e.clone());
        let mut prev = e.0.clone();
        for k in 0..reach {
            let p = pad(&e, &Nat::from(k));
            if p.0 <= prev && k > 0 {
                return (false, format!("{name}: pad not strictly increasing at k={k}"));
            }
            if p.0 <= e.0 || p.0 < Nat::from(k) {
                return (false, format!("{name}: pad below its arguments at k={k}"));
            }
            prev = p.0.clone();
            let p_exec = Exec::new(p);
            for x in 0..reach {
                let a = exec.run(&Nat::from(x), budget).outcome;
                let b = p_exec.run(&Nat::from(x), budget).outcome;
                let ok = match (&a, &b) {
                    (StepOutcome::Halted(u), StepOutcome::Halted(v)) => u == v,
                    (StepOutcome::Halted(_), _) | (_, StepOutcome::Halted(_)) => false,
                    _ => true,
                };
                if !ok {
                    return (false, format!("{name}: padding changed semantics at k={k} x={x}"));
                }
            }
        }
    }
    (true, "semantics preserved, codes strictly increasing".into())
}

/// Fixed-point contract: φ_m(x) = φ_{φ_t(m)}(x) for x < reach — both halt
/// with equal values or both exceed the budget.
pub fn fixed_point_contract(reach: u64, budget: u64) -> (bool, String) {
    let policy = FixedPointPolicy {
        grid: (0..reach).map(Nat::from).collect(),
        check_budget: budget,
        ..Default::default()
    };
    for (name, t) in transformer_corpus() {
        let m = match fixed_point(&t, &policy) {
            Ok(m) => m,
            Err(e) => return (false, format!("{name}: {e}")),
        };
        let image = match run(&t, &m.0, policy.transformer_budget).outcome {
            StepOutcome::Halted(v) => ProgramIndex(v),
            _ => return (false, format!("{name}: transformer diverged on its fixed point")),
        };
        if !crate::machine::acceptable::extensionally_equal(&m, &image, &policy.grid, budget) {
            return (false, format!("{name}: contract failed on the grid"));
        }
    }
    (true, format!("{} transformers × {reach} inputs", transformer_corpus().len()))
}

fn machine_suite() -> Vec<PropertyResult> {
    let mut out = Vec::new();
    // Permanence: halts persist with the same value as budgets grow.
    let mut permanence = true;
    for (_, e) in program_corpus() {
        let exec = Exec::new(e);
        for x in 0..5u64 {
            let mut seen: Option<Nat> = None;
            for s in [10u64, 100, 1_000, 100_000] {
                match exec.run(&Nat::from(x), s).outcome {
                    StepOutcome::Halted(v) => match &seen {
                        None => seen = Some(v),
                        Some(u) => permanence &= *u == v,
                    },
                    _ => permanence &= seen.is_none(),
                }
            }
        }
    }
    out.push(prop("permanence", permanence, "halts persist with equal values"));
    let (ok, detail) = smn_grid_exact(10, 400_000);
    out.push(prop("acceptability-grid", ok, detail));
    let (ok, detail) = padding_grid(10, 200_000);
    out.push(prop("padding", ok, detail));
    let (ok, detail) = fixed_point_contract(20, 300_000);
    out.push(prop("fixed-point-contract", ok, detail));
    // Determinism: identical inputs give identical outcomes and step counts.
    let e = encode(&asm::cantor_sum_program());
    let a = run(&e, &Nat::from(32u64), 100_000);
    let b = run(&e, &Nat::from(32u64), 100_000);
    out.push(prop(
        "determinism",
        a.outcome == b.outcome && a.steps == b.steps,
        "identical runs identical",
    ));
    out
}

fn oracle_suite() -> Vec<PropertyResult> {
    use crate::oracle::{apply_bounded, verify_bt, BTWitness, TTCondition};
    let mut out = Vec::new();
    // Use correctness: masking outside [0, use) never changes the outcome.
    let evens = FiniteSetOracle::from_u64((0..60).filter(|n| n % 2 == 0));
    let mut ok = true;
    for pos in 0..8u64 {
        let e = encode(&asm::singleton_query_program(&Nat::from(pos)));
        let r = apply_bounded(&e, &evens, &Nat::ZERO, 50_000);
        let masked = evens.restrict(&r.use_bound.sub_sat(&Nat::ONE));
        let r2 = apply_bounded(&e, &masked, &Nat::ZERO, 50_000);
        ok &= r.outcome == r2.outcome;
    }
    out.push(prop("use-correctness", ok, "masking outside the use is invisible"));
    // Identity bT witness passes on every decidable set tried.
    let identity_witness = BTWitness {
        functional: encode(&Program::new(vec![
            crate::machine::Instruction::Qry(0, 1),
            crate::machine::Instruction::Halt,
        ])),
        bound: encode(&asm::successor_program()),
    };
    let mut ok = true;
    for set in [&evens, &FiniteSetOracle::from_u64([1, 4, 9, 16, 25])] {
        let domain: Vec<Nat> = (0..30u64).map(Nat::from).collect();
        let report = verify_bt(&identity_witness, &|x| set.contains(x), set, &domain, 50_000);
        ok &= report.all_passed();
    }
    out.push(prop("identity-bt-witness", ok, "verify_bT(identity, A, A) passes"));
    // A ≤_1 A^{tt} by singleton conditions on a 50-point domain.
    let a_fn = |n: &Nat| Some(evens.contains(n));
    let mut ok = true;
    let mut codes = std::collections::HashSet::new();
    for x in 0..50u64 {
        let c = TTCondition::singleton(Nat::from(x));
        ok &= crate::oracle::tt_eval(&c, &a_fn).unwrap() == (x % 2 == 0);
        ok &= codes.insert(c.code());
    }
    out.push(prop("a-embeds-into-att", ok, "singleton map injective and faithful on 50 points"));
    out
}

fn ordinal_suite() -> Vec<PropertyResult> {
    let mut out = Vec::new();
    let grid = small_ordinal_grid(3, 3);
    let mut comm = true;
    let mut assoc = true;
    for a in &grid {
        for b in &grid {
            comm &= a.natural_add(b) == b.natural_add(a);
            for c in grid.iter().take(8) {
                assoc &= a.natural_add(b).natural_add(c) == a.natural_add(&b.natural_add(c));
            }
        }
    }
    out.push(prop("natural-sum-commutative", comm, format!("grid of {}", grid.len())));
    out.push(prop("natural-sum-associative", assoc, "triples sampled across the grid"));
    // Strict monotonicity.
    let mut strict = true;
    'outer: for a1 in &grid {
        for b1 in grid.iter().filter(|b| *b <= a1) {
            for a2 in &grid {
                for b2 in grid.iter().filter(|b| *b <= a2) {
                    if b1 == a1 && b2 == a2 {
                        continue;
                    }
                    if b1.natural_add(b2) >= a1.natural_add(a2) {
                        strict = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    out.push(prop("strict-monotonicity", strict, "pointwise ≤ with one strict ⇒ sums strict"));
    // Closure below ω^d.
    let mut closure = true;
    for d in 1..=3usize {
        let below: Vec<&OrdinalCNF> = grid.iter().filter(|o| o.below_omega_power(d)).collect();
        for a in &below {
            for b in &below {
                closure &= a.natural_add(b).below_omega_power(d);
            }
        }
    }
    out.push(prop("closure-below-powers", closure, "sums stay below ω^d for d ≤ 3"));
    // Rank step property.
    let grid2 = small_ordinal_grid(2, 3);
    let two = OrdinalCNF::from_nat(2);
    let one = OrdinalCNF::from_nat(1);
    let mut rank_ok = true;
    'rank: for l in 0u64..3 {
        for lp in 0..=l {
            for a0 in &grid {
                for b0 in grid.iter().filter(|b| *b <= a0) {
                    for a1 in &grid2 {
                        for b1 in grid2.iter().filter(|b| *b <= a1) {
                            if !(lp < l || b0 < a0 || b1 < a1) {
                                continue;
                            }
                            let hi = rank_r(3, l, &[a0.clone(), a1.clone()]).unwrap();
                            let lo = rank_r(3, lp, &[b0.clone(), b1.clone()]).unwrap();
                            if lo.natural_add(&two) >= hi.natural_add(&one) {
                                rank_ok = false;
                                break 'rank;
                            }
                        }
                    }
                }
            }
        }
    }
    out.push(prop("rank-step", rank_ok, "r(l′,β…)+2 < r(l,α…)+1 on the grid"));
    // Desk-scale descent.
    let mut current = natural_sum(&[
        OrdinalCNF::omega_term(2, 2),
        OrdinalCNF::omega(),
        OrdinalCNF::from_nat(30),
    ]);
    let mut steps = 0u64;
    while !current.is_zero() && steps < 100_000 {
        let mut c = current.coeffs().to_vec();
        if c[0] > 0 {
            c[0] -= 1;
        } else {
            let i = (0..c.len()).find(|&i| c[i] > 0).unwrap();
            c[i] -= 1;
            for slot in c.iter_mut().take(i) {
                *slot = 3;
            }
        }
        current = OrdinalCNF::new(c);
        steps += 1;
    }
    out.push(prop("no-infinite-descent", current.is_zero(), format!("terminated in {steps} steps")));
    out
}

fn ershov_suite() -> Vec<PropertyResult> {
    let mut out = Vec::new();
    // Histories strictly decrease.
    let script = WitnessScript::omega2_demo(8);
    let w = script.compile();
    let mut ok = true;
    for n in 0..8u64 {
        let st = w.state(&Nat::from(n), 40_000);
        ok &= st.is_strictly_decreasing();
        ok &= st.flips() + 1 == st.history.len();
    }
    out.push(prop("mind-change-descent", ok, "ω²-c.e. histories strictly decrease"));
    // Downward transform preserves limits (identity reduction).
    let phi = encode(&Program::new(vec![
        crate::machine::Instruction::Qry(0, 1),
        crate::machine::Instruction::Halt,
    ]));
    let f = encode(&asm::successor_program());
    let base_script = WitnessScript::omega_ce_evens(24);
    let wb = base_script.compile();
    let down = downward_transform(&phi, &f, &wb, 1, 20, 30_000);
    let ok = down.as_ref().map_or(false, |t| {
        (0..20u64).all(|n| {
            t.witness.limit_value(&Nat::from(n), 60_000) == Some(n % 2 == 0)
                && t.traces[&n].ordinals_strictly_decrease()
        })
    });
    out.push(prop("downward-preserves-limits", ok, "χ limit = Φ/f image of ψ limit, n < 20"));
    // Jump transform vs the direct enumeration (trivial witness).
    let wa = empty_set_witness(64, 1).compile();
    let jump = jump_transform(&wa, 1, 10, 30_000);
    let ok = jump.as_ref().map_or(false, |t| {
        let empty = FiniteSetOracle::empty();
        (0..10u64).all(|n| {
            let truth = b_member(&empty, &Nat::from(n), &StagePolicy::at(30_000)).status
                == MemberStatus::In;
            t.witness.limit_value(&Nat::from(n), 60_000) == Some(truth)
        })
    });
    out.push(prop("jump-transform-limits", ok, "χ limit = A^b on n < 10 (A = ∅)"));
    let ok = jump.as_ref().map_or(false, |t| {
        (0..10u64).all(|n| {
            let tr = &t.traces[&n];
            tr.defines[0].ordinal == OrdinalCNF::omega_term(1, n)
                && !tr.defines[0].value
                && tr.l_decrements <= n
        })
    });
    out.push(prop("jump-transform-bookkeeping", ok, "first write at ω·n; l drops ≤ n"));
    out
}

fn jump_suite() -> Vec<PropertyResult> {
    let mut out = Vec::new();
    // A ≤_1 A^b realized by the singleton-query map on two decidable sets.
    let mut ok = true;
    for set in [
        FiniteSetOracle::from_u64((0..40).filter(|n| n % 2 == 0)),
        FiniteSetOracle::from_u64([2, 3, 5, 7, 11, 13, 17, 19, 23, 29]),
    ] {
        for x in 0..24u64 {
            let probe = encode(&asm::singleton_query_program(&Nat::from(x)));
            // Constant bound x+1, spelled in unary so its text stays shorter
            // than the probe's.
            let mut ins = vec![crate::machine::Instruction::Inc(1); (x + 1) as usize];
            ins.push(crate::machine::Instruction::Halt);
            let bound = encode(&Program::new(ins));
            ok &= bound.0 < probe.0; // the witness must sit below the probe index
            let policy = StagePolicy::with_scan(60_000, 64).hint(probe.0.clone(), vec![bound]);
            let member = b_member(&set, &probe.0, &policy).status == MemberStatus::In;
            ok &= member == set.contains(&Nat::from(x));
        }
    }
    out.push(prop("a-embeds-into-ab", ok, "x ↦ (query-x, bound x+1) embeds A into A^b"));
    // ∅^b ≡₁ ∅′ on 15 probes.
    let report = check_empty_jump_vs_halting(&(0..15u64).map(Nat::from).collect::<Vec<_>>(), 50_000);
    out.push(prop(
        "empty-jump-vs-halting",
        report.no_disagreement() && report.count(PointOutcome::Unresolved) == 0,
        format!("{} outcomes, all agree", report.outcomes.len()),
    ));
    // Monotone views.
    let empty = FiniteSetOracle::empty();
    let domain: Vec<Nat> = (0..30u64).map(Nat::from).collect();
    let mut prev: Option<Vec<bool>> = None;
    let mut ok = true;
    for stage in [100u64, 1_000, 10_000, 50_000] {
        let v = crate::jump::enum_b(&empty, &domain, &StagePolicy::at(stage));
        let members: Vec<bool> = v.points.iter().map(|p| p.status == MemberStatus::In).collect();
        if let Some(p) = &prev {
            ok &= p.iter().zip(&members).all(|(a, b)| !a || *b);
        }
        prev = Some(members);
    }
    out.push(prop("views-monotone", ok, "members persist as the stage grows"));
    // Enumeration dependence of A^{b1}.
    let id = enum_b1(&empty, &domain, 20_000, &|x| x.clone());
    let sh = enum_b1(&empty, &domain, 20_000, &|x| x.add_u64(1));
    let a: Vec<bool> = id.points.iter().map(|p| p.status == MemberStatus::In).collect();
    let b: Vec<bool> = sh.points.iter().map(|p| p.status == MemberStatus::In).collect();
    out.push(prop("b1-enumeration-dependence", a != b, "two re-enumerations differ extensionally"));
    // The two b0/b reductions agree at matched budgets (scripted probes).
    let base = FiniteSetOracle::from_u64((0..=40).filter(|n| n % 2 == 0));
    let quer2 = encode(&asm::singleton_query_program(&Nat::from(2u64)));
    let quer3 = encode(&asm::singleton_query_program(&Nat::from(3u64)));
    let halt = encode(&Program::new(vec![crate::machine::Instruction::Halt]));
    let succ = encode(&asm::successor_program());
    let diverger = encode(&Program::diverger());
    let probes = vec![
        (halt.clone(), succ.clone(), Nat::from(5u64), Some(true)),
        (halt.clone(), diverger.clone(), Nat::from(5u64), Some(false)),
        (quer2, succ.clone(), Nat::from(5u64), Some(true)),
        (quer3, succ, Nat::from(5u64), Some(false)),
        (diverger, halt, Nat::from(0u64), Some(false)),
    ];
    let report = BZeroToB::check(&base, &probes, 60_000);
    out.push(prop(
        "b0-to-b",
        report.no_disagreement() && report.unresolved_fraction() < 0.2,
        format!("{} probes", report.outcomes.len()),
    ));
    let report = BToBZero::check(&base, &(0..15u64).map(Nat::from).collect::<Vec<_>>(), 20_000);
    out.push(prop(
        "b-to-b0",
        report.no_disagreement() && report.unresolved_fraction() < 0.2,
        "projection with OR table on x < 15",
    ));
    out
}

fn construction_suite() -> Vec<PropertyResult> {
    use crate::construction::diag::{diagonalize_strinc, stock_claimants, RefutationBranch};
    use crate::construction::shoenfield::{shoenfield_inversion, ShoenfieldConfig};
    use crate::construction::ttsep::{tt_separation, RequirementVerdict, TtSepConfig};
    let mut out = Vec::new();
    // Shoenfield at a reduced desk scale.
    let config = ShoenfieldConfig::standard(WitnessScript::shoenfield_demo(4), 4, 12_000);
    match shoenfield_inversion(&config) {
        Err(e) => out.push(prop("shoenfield", false, e.to_string())),
        Ok(run) => {
            let marker_ok = (0..4usize).all(|n| {
                run.final_markers[n].map(|(i, _)| i) == Some(run.least_observed_block[n])
            });
            out.push(prop("shoenfield-marker-limits", marker_ok, "final index = least observed"));
            let counts_ok = (0..4usize)
                .all(|n| Nat::from(run.definition_counts[n]) <= *run.plan.h(n as u64));
            out.push(prop("shoenfield-marker-counts", counts_ok, "definitions ≤ h(n)"));
            let b_ok = run
                .check_b_reduction(3_000_000)
                .into_iter()
                .all(|(_, b, member)| b == Some(member));
            out.push(prop("shoenfield-b-reduction", b_ok, "n ∈ B ⟺ g(n) ∈ A^b at final stage"));
            let replay_ok = crate::construction::replay(&run.trace).is_ok();
            out.push(prop("shoenfield-replay", replay_ok, "trace replays bit for bit"));
        }
    }
    // tt separation.
    let run = tt_separation(&TtSepConfig::standard(3, 6_000));
    let verdicts = run.final_verdicts(200_000);
    let ok = verdicts.iter().all(|v| *v != RequirementVerdict::VerifiedAgreement);
    out.push(prop("ttsep-unfalsified", ok, format!("verdicts: {verdicts:?}")));
    out.push(prop("ttsep-double-actions", run.double_actions_backed(), "convergences back actions"));
    // Diagonalization.
    let mut ok = true;
    let mut detail = String::new();
    for (name, gamma, g) in stock_claimants() {
        match diagonalize_strinc(&gamma, &g, &FiniteSetOracle::empty(), 100_000) {
            Ok(report) => {
                let concrete = !matches!(report.branch, RefutationBranch::BudgetUnresolved);
                ok &= concrete && report.fixed_point_checked;
                detail.push_str(&format!("{name}: refuted; "));
            }
            Err(e) => {
                ok = false;
                detail.push_str(&format!("{name}: {e}; "));
            }
        }
    }
    out.push(prop("diagonalization", ok, detail));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        for name in suite_names() {
            let report = run_suite(name).unwrap();
            for p in &report.properties {
                assert!(p.passed, "suite {name}, property {}: {}", p.name, p.detail);
            }
        }
    }
}
