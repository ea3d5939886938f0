//! Level transformations: downward closure under bounded-Turing reduction
//! and the jump step `ω^k-c.e. ⟹ (·)^b is ω^{k+1}-c.e.`.
//!
//! Both run the stage constructions at desk scale over an explicit domain
//! and horizon, record every definition `χ(n, β) = v` with its stage, and
//! compile the table into a genuine witness program. The per-point define
//! histories come back with the witness so callers can assert ordinal
//! descent and the bookkeeping bounds.

use super::script::{ScriptEntry, WitnessScript};
use super::{AlphaCEWitness, Convergence, ErshovError};
use crate::machine::{Exec, OracleReply, OracleSource, ProgramIndex, StepOutcome};
use crate::nat::Nat;
use crate::ordinal::{natural_sum, rank_r, OrdinalCNF};
use std::collections::BTreeMap;

/// Oracle backed by the construction's current per-position estimates;
/// positions without a defined estimate block the run.
struct EstimateOracle<'a> {
    values: &'a BTreeMap<u64, bool>,
}

impl OracleSource for EstimateOracle<'_> {
    fn answer(&self, pos: &Nat) -> OracleReply {
        match pos.to_u64().and_then(|p| self.values.get(&p)) {
            Some(&b) => OracleReply::Bit(b),
            None => OracleReply::Blocked,
        }
    }
}

/// How far beyond the nominal use bound estimates are tracked. Restrictions
/// are total sets here, so a functional may legitimately look a little past
/// its bound and read zeros; the window keeps that affordable.
const ESTIMATE_WINDOW: u64 = 64;

#[derive(Clone, Debug)]
pub struct DefineEvent {
    pub stage: u64,
    pub ordinal: OrdinalCNF,
    pub value: bool,
}

#[derive(Clone, Debug, Default)]
pub struct PointTrace {
    pub defines: Vec<DefineEvent>,
    /// Stages at which a Φ-estimate run was skipped (blocked or divergent).
    pub skipped_checks: u64,
    /// For the jump transform: how many times `l` was decremented.
    pub l_decrements: u64,
    /// Set when a trigger arrived with `l` already at zero.
    pub l_underflow: bool,
    /// Points where some needed least ordinal never materialized.
    pub incomplete: bool,
}

impl PointTrace {
    pub fn ordinals_strictly_decrease(&self) -> bool {
        self.defines.windows(2).all(|w| w[1].ordinal < w[0].ordinal)
    }
}

#[derive(Debug)]
pub struct TransformOutput {
    pub witness: AlphaCEWitness,
    pub script: WitnessScript,
    pub traces: BTreeMap<u64, PointTrace>,
}

/// Per-position least-ordinal state assembled from a witness's observable
/// convergences.
struct PositionEvents {
    /// Sorted by observation stage.
    events: Vec<Convergence>,
}

fn position_events(w: &AlphaCEWitness, pos: u64, horizon: u64) -> PositionEvents {
    PositionEvents { events: w.convergences(&Nat::from(pos), horizon) }
}

/// Merge per-position events into a stage-ordered list of
/// `(stage, position, ordinal, value)` least-ordinal *improvements*.
fn improvement_stream(per_pos: &BTreeMap<u64, PositionEvents>) -> Vec<(u64, u64, OrdinalCNF, bool)> {
    let mut all: Vec<(u64, u64, OrdinalCNF, bool)> = Vec::new();
    for (&pos, pe) in per_pos {
        let mut least: Option<OrdinalCNF> = None;
        for c in &pe.events {
            let better = least.as_ref().map_or(true, |o| c.ordinal < *o);
            if better {
                least = Some(c.ordinal.clone());
                all.push((c.observed_at, pos, c.ordinal.clone(), c.value));
            }
        }
    }
    all.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    all
}

/// Downward closure: from `Φ, f` witnessing `A ≤_bT B` and `ψ` witnessing
/// that `B` is ω^k-c.e., build `χ` witnessing that `A` is ω^k-c.e.
///
/// At the first stage where every `α_i` (i ≤ f(n)) is defined, and at every
/// later stage where one of them drops, `χ(n, α_0 +c … +c α_{f(n)})` is set
/// to `Φ` run on the current estimate string.
pub fn downward_transform(
    phi: &ProgramIndex,
    f: &ProgramIndex,
    wb: &AlphaCEWitness,
    k: usize,
    domain: u64,
    horizon: u64,
) -> Result<TransformOutput, ErshovError> {
    if !wb.bound.below_omega_power(k + 1) || wb.bound != OrdinalCNF::omega_term(k, 1) {
        return Err(ErshovError::WrongBound { bound: wb.bound.to_string(), expected: k });
    }
    let phi_exec = Exec::new(phi.clone());
    let f_exec = Exec::new(f.clone());
    let mut entries: Vec<ScriptEntry> = Vec::new();
    let mut traces: BTreeMap<u64, PointTrace> = BTreeMap::new();

    for n in 0..domain {
        let mut trace = PointTrace::default();
        let fv = match f_exec.run(&Nat::from(n), horizon).outcome {
            StepOutcome::Halted(v) => v.to_u64().ok_or(ErshovError::NonTotalBound { n })?,
            _ => return Err(ErshovError::NonTotalBound { n }),
        };
        let mut per_pos = BTreeMap::new();
        for pos in 0..=(fv + ESTIMATE_WINDOW) {
            per_pos.insert(pos, position_events(wb, pos, horizon));
        }
        let stream = improvement_stream(&per_pos);

        let mut alpha: BTreeMap<u64, OrdinalCNF> = BTreeMap::new();
        let mut estimates: BTreeMap<u64, bool> = BTreeMap::new();
        let mut last_sum: Option<OrdinalCNF> = None;

        let mut idx = 0;
        while idx < stream.len() {
            let stage = stream[idx].0;
            let mut core_changed = false;
            while idx < stream.len() && stream[idx].0 == stage {
                let (_, pos, ord, val) = &stream[idx];
                if *pos <= fv {
                    core_changed = true;
                }
                alpha.insert(*pos, ord.clone());
                estimates.insert(*pos, *val);
                idx += 1;
            }
            if !core_changed {
                continue;
            }
            if (0..=fv).all(|i| alpha.contains_key(&i)) {
                let sum = natural_sum(
                    &(0..=fv).map(|i| alpha[&i].clone()).collect::<Vec<_>>(),
                );
                let strictly_smaller = last_sum.as_ref().map_or(true, |s| sum < *s);
                if !strictly_smaller {
                    continue;
                }
                let run = phi_exec.run_oracle(
                    &Nat::from(n),
                    &EstimateOracle { values: &estimates },
                    horizon,
                );
                match run.outcome {
                    StepOutcome::Halted(v) => {
                        let value = !v.is_zero();
                        trace.defines.push(DefineEvent {
                            stage,
                            ordinal: sum.clone(),
                            value,
                        });
                        entries.push(ScriptEntry {
                            n,
                            ordinal: sum.clone(),
                            value: value as u8,
                            time: stage,
                        });
                        last_sum = Some(sum);
                    }
                    _ => trace.skipped_checks += 1,
                }
            }
        }
        if !(0..=fv).all(|i| alpha.contains_key(&i)) {
            trace.incomplete = true;
        }
        traces.insert(n, trace);
    }

    let script = WitnessScript { bound: OrdinalCNF::omega_term(k, 1), entries };
    let witness = script.compile();
    Ok(TransformOutput { witness, script, traces })
}

/// The jump step: from `ψ` witnessing `A` is ω^k-c.e., build `χ` witnessing
/// that `A^b` is ω^{k+1}-c.e.
///
/// Bookkeeping per the construction: `χ(n, ω^k·n) = 0` first; `l` starts at
/// `n` and drops each time a new, longer `φ_i(n)` convergence appears
/// (i ≤ n); rank writes `r(l, α_0…α_m)+2 ↦ 0` on drops and
/// `r(l, α_0…α_m)+1 ↦ 1` when `Φ_n` converges on the current estimates.
pub fn jump_transform(
    wa: &AlphaCEWitness,
    k: usize,
    domain: u64,
    horizon: u64,
) -> Result<TransformOutput, ErshovError> {
    assert!(k >= 1, "jump_transform needs k ≥ 1");
    if wa.bound != OrdinalCNF::omega_term(k, 1) {
        return Err(ErshovError::WrongBound { bound: wa.bound.to_string(), expected: k });
    }
    let mut entries: Vec<ScriptEntry> = Vec::new();
    let mut traces: BTreeMap<u64, PointTrace> = BTreeMap::new();

    for n in 0..domain {
        let mut trace = PointTrace::default();
        let first = OrdinalCNF::omega_term(k, n);
        trace.defines.push(DefineEvent { stage: 2, ordinal: first.clone(), value: false });
        entries.push(ScriptEntry { n, ordinal: first, value: 0, time: 2 });

        // φ-side events: converging φ_i(n) for i ≤ n, by halting stage.
        let mut phi_events: Vec<(u64, u64)> = Vec::new(); // (stage, value)
        for i in 0..=n {
            let r = crate::machine::run(&ProgramIndex::from_u64(i), &Nat::from(n), horizon);
            if let StepOutcome::Halted(v) = r.outcome {
                if let Some(v) = v.to_u64() {
                    phi_events.push((r.steps.max(1), v));
                }
            }
        }
        phi_events.sort();

        let max_bound = phi_events.iter().map(|&(_, v)| v).max().unwrap_or(0);
        let mut per_pos = BTreeMap::new();
        for pos in 0..=(max_bound + ESTIMATE_WINDOW) {
            per_pos.insert(pos, position_events(wa, pos, horizon));
        }
        let psi_stream = improvement_stream(&per_pos);

        // Merge the two event sources by stage.
        #[derive(Debug)]
        enum Ev {
            Phi { value: u64 },
            Psi { pos: u64, ordinal: OrdinalCNF, value: bool },
        }
        let mut events: Vec<(u64, Ev)> = Vec::new();
        for (s, v) in &phi_events {
            events.push((*s, Ev::Phi { value: *v }));
        }
        for (s, pos, o, v) in &psi_stream {
            events.push((*s, Ev::Psi { pos: *pos, ordinal: o.clone(), value: *v }));
        }
        events.sort_by(|a, b| a.0.cmp(&b.0));

        let mut l = n;
        let mut m: Option<u64> = None;
        let mut alpha: BTreeMap<u64, OrdinalCNF> = BTreeMap::new();
        let mut estimates: BTreeMap<u64, bool> = BTreeMap::new();
        let n_exec = Exec::new(ProgramIndex::from_u64(n));
        // Everything after the ω^k·n default must sit strictly below it.
        let mut last_written: Option<OrdinalCNF> = Some(OrdinalCNF::omega_term(k, n));
        let mut phi_payoff_written = false;

        let write = |trace: &mut PointTrace,
                         entries: &mut Vec<ScriptEntry>,
                         last_written: &mut Option<OrdinalCNF>,
                         ordinal: OrdinalCNF,
                         value: bool,
                         stage: u64|
         -> bool {
            if let Some(prev) = last_written.as_ref() {
                if ordinal >= *prev {
                    return false;
                }
            }
            trace.defines.push(DefineEvent { stage, ordinal: ordinal.clone(), value });
            entries.push(ScriptEntry { n, ordinal: ordinal.clone(), value: value as u8, time: stage });
            *last_written = Some(ordinal);
            true
        };

        let mut idx = 0;
        while idx < events.len() {
            let stage = events[idx].0;
            let mut l_dropped = false;
            let mut alpha_dropped = false;
            while idx < events.len() && events[idx].0 == stage {
                match &events[idx].1 {
                    Ev::Phi { value } => {
                        let triggers = match m {
                            None => true,
                            Some(mv) => *value > mv,
                        };
                        if triggers {
                            if l == 0 {
                                trace.l_underflow = true;
                            } else {
                                l -= 1;
                                trace.l_decrements += 1;
                                l_dropped = true;
                            }
                            m = Some(m.map_or(*value, |mv| mv.max(*value)));
                        }
                    }
                    Ev::Psi { pos, ordinal, value } => {
                        let was = alpha.get(pos).cloned();
                        if was.map_or(true, |o| *ordinal < o) {
                            if m.map_or(false, |mv| *pos <= mv) && alpha.contains_key(pos) {
                                alpha_dropped = true;
                            }
                            alpha.insert(*pos, ordinal.clone());
                            estimates.insert(*pos, *value);
                        }
                    }
                }
                idx += 1;
            }
            let Some(mv) = m else { continue };
            if !(0..=mv).all(|i| alpha.contains_key(&i)) {
                continue;
            }
            let alphas: Vec<OrdinalCNF> = (0..=mv).map(|i| alpha[&i].clone()).collect();
            let rank = match rank_r(k, l, &alphas) {
                Ok(r) => r,
                Err(_) => {
                    trace.incomplete = true;
                    continue;
                }
            };
            if l_dropped || alpha_dropped {
                if write(
                    &mut trace,
                    &mut entries,
                    &mut last_written,
                    rank.succ().succ(),
                    false,
                    stage,
                ) {
                    phi_payoff_written = false;
                }
            }
            if !phi_payoff_written {
                let r = n_exec.run_oracle(
                    &Nat::from(n),
                    &EstimateOracle { values: &estimates },
                    horizon,
                );
                match r.outcome {
                    StepOutcome::Halted(_) => {
                        if write(
                            &mut trace,
                            &mut entries,
                            &mut last_written,
                            rank.succ(),
                            true,
                            stage,
                        ) {
                            phi_payoff_written = true;
                        }
                    }
                    StepOutcome::OracleBlocked(_) => trace.skipped_checks += 1,
                    StepOutcome::StillRunning => trace.skipped_checks += 1,
                }
            }
        }
        traces.insert(n, trace);
    }

    let script = WitnessScript { bound: OrdinalCNF::omega_term(k + 1, 1), entries };
    let witness = script.compile();
    Ok(TransformOutput { witness, script, traces })
}

/// The trivial witness for the empty set: `ψ(n, 0) = 0` immediately.
pub fn empty_set_witness(domain: u64, k: usize) -> WitnessScript {
    WitnessScript {
        bound: OrdinalCNF::omega_term(k, 1),
        entries: (0..domain)
            .map(|n| ScriptEntry { n, ordinal: OrdinalCNF::ZERO, value: 0, time: 1 })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{asm, encode};

    /// Test-side brute force: `x ∈ A^b` by the definition, scanning i ≤ x
    /// exhaustively with a flat budget. Independent of the jump module.
    fn brute_force_b(a: &crate::oracle::FiniteSetOracle, x: u64, budget: u64) -> bool {
        for i in 0..=x {
            let bound = crate::machine::run(&ProgramIndex::from_u64(i), &Nat::from(x), budget);
            let StepOutcome::Halted(v) = bound.outcome else { continue };
            let restricted = a.restrict(&v);
            let r = crate::machine::run_oracle(
                &ProgramIndex::from_u64(x),
                &Nat::from(x),
                &restricted,
                budget,
            );
            if r.outcome.halted() {
                return true;
            }
        }
        false
    }

    #[test]
    fn downward_identity_reduction_preserves_limits() {
        // Φ queries position n, bound f(n) = n + 1: the identity reduction.
        let phi = encode(&crate::machine::Program::new(vec![
            crate::machine::Instruction::Qry(0, 1),
            crate::machine::Instruction::Halt,
        ]));
        let f = encode(&asm::successor_program());
        let script = super::super::script::WitnessScript::omega_ce_evens(24);
        let wb = script.compile();
        let out = downward_transform(&phi, &f, &wb, 1, 20, 30_000).unwrap();
        for n in 0..20u64 {
            assert_eq!(
                out.witness.limit_value(&Nat::from(n), 60_000),
                Some(n % 2 == 0),
                "n = {n}"
            );
            assert!(out.traces[&n].ordinals_strictly_decrease());
        }
    }

    #[test]
    fn downward_double_reduction_matches_brute_force() {
        // A(n) = B(2n) over the scripted ω-c.e. B.
        use crate::machine::isa::Instruction as I;
        let phi = encode(&crate::machine::Program::new(vec![
            I::DecJz(0, 4),
            I::Inc(4),
            I::Inc(4),
            I::DecJz(10, 0),
            I::Qry(4, 1),
            I::Halt,
        ]));
        let f = {
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
        let script = super::super::script::WitnessScript::omega_ce_evens(44);
        let wb = script.compile();
        let out = downward_transform(&phi, &f, &wb, 1, 20, 30_000).unwrap();
        // Brute-forced A from the script limit: A(n) = B(2n) = (2n even) = true.
        for n in 0..20u64 {
            let expected = script.limit(2 * n).unwrap();
            assert_eq!(out.witness.limit_value(&Nat::from(n), 60_000), Some(expected), "n = {n}");
        }
    }

    #[test]
    fn downward_rejects_divergent_bound() {
        let phi = encode(&asm::identity_program());
        let f = encode(&crate::machine::Program::diverger());
        let wb = super::super::script::WitnessScript::omega_ce_evens(4).compile();
        assert!(matches!(
            downward_transform(&phi, &f, &wb, 1, 2, 20_000),
            Err(ErshovError::NonTotalBound { .. })
        ));
    }

    #[test]
    fn jump_transform_of_empty_set_matches_brute_force() {
        let wa = empty_set_witness(64, 1).compile();
        let out = jump_transform(&wa, 1, 10, 30_000).unwrap();
        let empty = crate::oracle::FiniteSetOracle::empty();
        for n in 0..10u64 {
            let truth = brute_force_b(&empty, n, 30_000);
            let got = out.witness.limit_value(&Nat::from(n), 60_000);
            assert_eq!(got, Some(truth), "n = {n}");
        }
    }

    #[test]
    fn jump_transform_first_write_and_l_bound() {
        let wa = empty_set_witness(64, 1).compile();
        let out = jump_transform(&wa, 1, 10, 30_000).unwrap();
        for n in 0..10u64 {
            let t = &out.traces[&n];
            let first = &t.defines[0];
            assert_eq!(first.ordinal, OrdinalCNF::omega_term(1, n), "first write at ω·n");
            assert!(!first.value);
            assert!(t.l_decrements <= n, "l decremented {} > n = {n}", t.l_decrements);
            assert!(!t.l_underflow);
        }
    }

    #[test]
    fn jump_transform_histories_strictly_decrease_after_first() {
        let wa = super::super::script::WitnessScript::omega_ce_evens(40).compile();
        let out = jump_transform(&wa, 1, 8, 30_000).unwrap();
        for n in 0..8u64 {
            let t = &out.traces[&n];
            // All writes after the initial ω·n default strictly decrease.
            let tail = &t.defines[1..];
            assert!(
                tail.windows(2).all(|w| w[1].ordinal < w[0].ordinal),
                "n = {n}: {:?}",
                t.defines
            );
        }
    }
}
