//! The c.e. set separating `A^b` from Gerla's `A_tt`: a movable-marker
//! construction meeting `R_n: ¬∀x [φ_{π₂(n)}(x)↓ ∧
//! Φ_{π₁(n)}^{A_tt↾φ_{π₂(n)}(x)}(x) = A^b(x)]`.
//!
//! Markers `x_n` are controlled slot indices. Declaring
//! `φ_{x_n}(x_n) = v` fixes the requirement's oracle-use bookkeeping;
//! declaring `Φ_{x_n}^{A_s↾v}(x_n)↓` records the exact membership pattern
//! `A_s↾v`, and the compiled slot program halts precisely on oracles
//! matching a declared pattern — so enumerating a small number into `A`
//! below `v` flips `A^b(x_n)` back off, which is the construction's whole
//! trick. In this numbering `φ_e` and `Φ_e` are the same column read with
//! and without an oracle, so the declared diagonal value lives in the
//! bookkeeping (and the trace), not in the slot's empty-oracle behavior.

use super::{ConstructionTrace, TraceEvent};
use crate::machine::code::nibbles;
use crate::machine::{encode, run, Instruction, Program, ProgramIndex, StepOutcome};
use crate::nat::Nat;
use crate::oracle::{tt_eval, TTCondition};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TtSepConfig {
    /// Requirements R_0 … R_{count−1}; the pair (Φ, φ) for R_n comes from
    /// the Cantor projections of n unless `pairs` overrides it.
    pub requirement_count: u64,
    pub stages: u64,
    /// Optional explicit (functional index, bound index) per requirement.
    pub pairs: Option<Vec<(Nat, Nat)>>,
    /// Diagonal halts `φ_y(y)↓` are tracked for y up to this horizon.
    pub diagonal_horizon: u64,
}

impl TtSepConfig {
    pub fn standard(requirement_count: u64, stages: u64) -> TtSepConfig {
        TtSepConfig { requirement_count, stages, pairs: None, diagonal_horizon: 2048 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RequirementVerdict {
    /// The opponent bound or functional never settled: unfalsified.
    UnresolvedConvergence,
    /// Settled on a disagreement with `A^b`: unfalsified.
    Disagreement,
    /// Settled agreeing with `A^b` — would mean the requirement failed.
    VerifiedAgreement,
}

#[derive(Clone, Debug, Default)]
pub struct SlotState {
    pub bound: Option<u64>,
    pub patterns: Vec<Vec<(u64, bool)>>,
}

#[derive(Debug)]
pub struct TtSepRun {
    pub config: TtSepConfig,
    pub trace: ConstructionTrace,
    /// Enumeration order of A (monotone: elements are never removed).
    pub enumerated: Vec<u64>,
    pub attention_counts: Vec<u64>,
    pub final_markers: Vec<Option<usize>>,
    pub slots: Vec<SlotState>,
    /// Action stages per requirement, with the marker slot acting.
    pub actions: Vec<Vec<(u64, usize)>>,
    /// Diagonal convergence events (stage, y, value).
    pub diagonal_events: Vec<(u64, u64, u64)>,
}

fn pair_for(config: &TtSepConfig, n: u64) -> (ProgramIndex, ProgramIndex) {
    match &config.pairs {
        Some(pairs) => {
            let (f, b) = &pairs[n as usize];
            (ProgramIndex(f.clone()), ProgramIndex(b.clone()))
        }
        None => {
            let (p1, p2) = Nat::unpair(&Nat::from(n));
            (ProgramIndex(p1), ProgramIndex(p2))
        }
    }
}

struct ASet {
    members: BTreeSet<u64>,
    order: Vec<u64>,
}

impl ASet {
    fn contains(&self, x: u64) -> bool {
        self.members.contains(&x)
    }
    fn insert(&mut self, x: u64) {
        assert!(self.members.insert(x), "A is c.e.: elements enter once");
        self.order.push(x);
    }
    fn max(&self) -> u64 {
        self.members.iter().next_back().copied().unwrap_or(0)
    }
}

pub fn tt_separation(config: &TtSepConfig) -> TtSepRun {
    let count = config.requirement_count as usize;
    let stages = config.stages;

    // Diagonal halting table: (first stage, value) per y under the horizon.
    let mut diag: Vec<Option<(u64, u64)>> = Vec::new();
    for y in 0..=config.diagonal_horizon {
        let r = run(&ProgramIndex::from_u64(y), &Nat::from(y), stages);
        diag.push(match r.outcome {
            StepOutcome::Halted(v) => v.to_u64().map(|v| (r.steps.max(1), v)),
            _ => None,
        });
    }
    let diag_at = |y: u64, s: u64| -> Option<u64> {
        diag.get(y as usize)
            .copied()
            .flatten()
            .filter(|(t, _)| *t <= s)
            .map(|(_, v)| v)
    };

    // Opponent programs, decoded once. They are run on a placeholder input:
    // marker codes exist only after compilation, and the stock opponents
    // ignore their argument.
    let pairs: Vec<(crate::machine::Exec, crate::machine::Exec)> = (0..count as u64)
        .map(|n| {
            let (f, b) = pair_for(config, n);
            (crate::machine::Exec::new(f), crate::machine::Exec::new(b))
        })
        .collect();

    let mut trace = ConstructionTrace::new(
        "ttsep",
        serde_json::to_value(config).expect("config serializes"),
    );
    let mut a = ASet { members: BTreeSet::new(), order: Vec::new() };
    let mut slots: Vec<SlotState> = Vec::new();
    let mut next_slot = 0usize;
    let mut markers: Vec<Option<usize>> = vec![None; count];
    let mut restraint = vec![0u64; count + 1];
    let mut attention_counts = vec![0u64; count];
    let mut actions: Vec<Vec<(u64, usize)>> = vec![Vec::new(); count];
    let mut diagonal_events: Vec<(u64, u64, u64)> = Vec::new();
    let mut logged_diag = BTreeSet::new();

    // A_tt at stage s restricted below a bound, from the diagonal table and
    // the current A.
    let att_member = |a: &ASet, s: u64, y: u64| -> bool {
        match diag_at(y, s) {
            Some(code) => {
                let cond = TTCondition::from_code(&Nat::from(code));
                tt_eval(&cond, &|p: &Nat| Some(p.to_u64().map_or(false, |p| a.contains(p))))
                    .unwrap_or(false)
            }
            None => false,
        }
    };
    // A^b(x_n)[s] per the declared behavior: some declared pattern matches
    // the current A at the declared bound.
    let ab_member = |a: &ASet, slot: &SlotState| -> bool {
        slot.bound.is_some()
            && slot
                .patterns
                .iter()
                .any(|pat| pat.iter().all(|(p, b)| a.contains(*p) == *b))
    };

    for s in 1..=stages {
        let mut events: Vec<TraceEvent> = Vec::new();
        for y in 0..=config.diagonal_horizon {
            if let Some((t, v)) = diag[y as usize] {
                if t == s && logged_diag.insert(y) {
                    events.push(TraceEvent::DiagonalConvergence { y });
                    let _ = v;
                    diagonal_events.push((s, y, v));
                }
            }
        }

        // Restraints: r(m)[s+1] = max φ_y(y)[s+1] over y ≤ φ_l(x_l) for l < m.
        let mut least_dropped = count; // k in the construction
        for m in 1..=count {
            let mut bound_reach = 0u64;
            for l in 0..m.min(count) {
                if markers[l].is_some() {
                    if let StepOutcome::Halted(v) =
                        pairs[l].1.run(&Nat::ZERO, s).outcome
                    {
                        bound_reach = bound_reach.max(v.to_u64().unwrap_or(0));
                    }
                }
            }
            let mut r_new = 0u64;
            for y in 0..=bound_reach.min(config.diagonal_horizon) {
                if let Some(v) = diag_at(y, s) {
                    r_new = r_new.max(v);
                }
            }
            if r_new > restraint[m] {
                restraint[m] = r_new;
                events.push(TraceEvent::Restraint { requirement: m as u64, value: r_new });
                if m < least_dropped {
                    least_dropped = m;
                }
            }
        }
        let k = least_dropped;
        for (m, marker) in markers.iter_mut().enumerate().skip(k) {
            if let Some(slot) = marker.take() {
                events.push(TraceEvent::MarkerUndefined {
                    family: m as u64,
                    index: slot as u64,
                    extracted: false,
                });
            }
        }

        // Which requirement (below k) can act?
        let mut acting: Option<usize> = None;
        for (n, marker) in markers.iter().enumerate().take(k.min(count)) {
            let Some(slot_id) = *marker else { continue };
            let Some(bound_v) = (match pairs[n].1.run(&Nat::ZERO, s).outcome {
                StepOutcome::Halted(v) => v.to_u64(),
                _ => None,
            }) else {
                continue;
            };
            // Opponent over A_tt ↾ bound.
            let att: Vec<u64> =
                (0..=bound_v).filter(|&y| att_member(&a, s, y)).collect();
            let att_oracle = crate::oracle::FiniteSetOracle::from_u64(att);
            let opp = pairs[n].0.run_oracle(&Nat::ZERO, &att_oracle, s);
            let StepOutcome::Halted(ov) = opp.outcome else { continue };
            let claims = !ov.is_zero();
            if claims == ab_member(&a, &slots[slot_id]) {
                acting = Some(n);
                break;
            }
        }

        match acting {
            None => {
                // Case 1: extend the marker line.
                if let Some(m) = markers.iter().position(|x| x.is_none()) {
                    let slot_id = next_slot;
                    next_slot += 1;
                    slots.push(SlotState::default());
                    markers[m] = Some(slot_id);
                    events.push(TraceEvent::MarkerDefined {
                        family: m as u64,
                        index: slot_id as u64,
                        value: s,
                    });
                }
            }
            Some(n) => {
                // Case 2.
                attention_counts[n] += 1;
                let slot_id = markers[n].unwrap();
                actions[n].push((s, slot_id));
                events.push(TraceEvent::Attention { requirement: n as u64, case: "2".into() });
                for (m, marker) in markers.iter_mut().enumerate().skip(n + 1) {
                    if let Some(sl) = marker.take() {
                        events.push(TraceEvent::MarkerUndefined {
                            family: m as u64,
                            index: sl as u64,
                            extracted: false,
                        });
                    }
                }
                let bound_v = pairs[n]
                    .1
                    .run(&Nat::ZERO, s)
                    .outcome
                    .value()
                    .and_then(Nat::to_u64)
                    .expect("bound settled: the requirement acted");
                if slots[slot_id].bound.is_none() {
                    let v = restraint[n] + a.max() + bound_v;
                    slots[slot_id].bound = Some(v);
                    events.push(TraceEvent::DeclaredValue {
                        family: n as u64,
                        slot: slot_id as u64,
                        value: v,
                    });
                }
                let declared_bound = slots[slot_id].bound.unwrap();
                if !ab_member(&a, &slots[slot_id]) {
                    // 2A: declare the current pattern convergent.
                    let pattern: Vec<(u64, bool)> =
                        (0..=declared_bound).map(|p| (p, a.contains(p))).collect();
                    slots[slot_id].patterns.push(pattern);
                    events.push(TraceEvent::DeclaredScan {
                        family: n as u64,
                        position: declared_bound,
                    });
                } else {
                    // 2B: enumerate the least fresh number above the
                    // restraint; it lands under the declared bound.
                    let mut x = restraint[n] + 1;
                    while a.contains(x) {
                        x += 1;
                    }
                    debug_assert!(x <= declared_bound, "room to enumerate must remain");
                    a.insert(x);
                    events.push(TraceEvent::SetChanged { position: x, member: true });
                }
            }
        }
        trace.record(s, events);
    }

    TtSepRun {
        config: config.clone(),
        trace,
        enumerated: a.order,
        attention_counts,
        final_markers: markers,
        slots,
        actions,
        diagonal_events,
    }
}

impl TtSepRun {
    /// Compile the controlled slots: pattern matchers ordered by slot rank.
    pub fn compiled_slots(&self) -> Vec<ProgramIndex> {
        let bodies: Vec<Program> = self.slots.iter().map(matcher_body).collect();
        let max_body = bodies.iter().map(|b| nibbles(b).len()).max().unwrap_or(1);
        bodies
            .iter()
            .enumerate()
            .map(|(rank, body)| {
                let mut instructions: Vec<Instruction> = Vec::new();
                for d in digits8_fixed(rank as u64, 6) {
                    instructions.push(Instruction::Inc(8 + d as u32));
                }
                let prefix = instructions.len() as u32;
                let mut body = body.clone();
                let mut len = nibbles(&body).len();
                while max_body + 3 - len >= 3 {
                    body.instructions.push(Instruction::Inc(8));
                    len += 3;
                }
                while len < max_body + 3 {
                    body.instructions.push(Instruction::Halt);
                    len += 1;
                }
                let shifted: Vec<Instruction> = body
                    .instructions
                    .iter()
                    .map(|ins| match *ins {
                        Instruction::DecJz(r, t) => {
                            Instruction::DecJz(r, t.min(body.len() as u32) + prefix)
                        }
                        other => other,
                    })
                    .collect();
                instructions.extend(shifted);
                encode(&Program::new(instructions))
            })
            .collect()
    }

    /// Final-stage verdict for each requirement, evaluated with the real
    /// machinery over the compiled slots.
    pub fn final_verdicts(&self, budget: u64) -> Vec<RequirementVerdict> {
        let compiled = self.compiled_slots();
        let a_set =
            crate::oracle::FiniteSetOracle::from_u64(self.enumerated.iter().copied());
        (0..self.config.requirement_count as usize)
            .map(|n| {
                let Some(slot_id) = self.final_markers[n] else {
                    return RequirementVerdict::UnresolvedConvergence;
                };
                let x_n = &compiled[slot_id];
                let (f, b) = pair_for(&self.config, n as u64);
                let StepOutcome::Halted(bound) =
                    run(&b, &x_n.0, budget).outcome
                else {
                    return RequirementVerdict::UnresolvedConvergence;
                };
                let bound = bound.to_u64().unwrap_or(0);
                let att: Vec<u64> = (0..=bound)
                    .filter(|&y| {
                        run(&ProgramIndex::from_u64(y), &Nat::from(y), budget)
                            .outcome
                            .value()
                            .map_or(false, |code| {
                                let cond = TTCondition::from_code(code);
                                tt_eval(&cond, &|p: &Nat| {
                                    Some(p.to_u64().map_or(false, |p| {
                                        self.enumerated.contains(&p)
                                    }))
                                })
                                .unwrap_or(false)
                            })
                    })
                    .collect();
                let att_oracle = crate::oracle::FiniteSetOracle::from_u64(att);
                let opp = crate::machine::run_oracle(
                    &f,
                    &x_n.0,
                    &att_oracle,
                    budget,
                );
                let StepOutcome::Halted(ov) = opp.outcome else {
                    return RequirementVerdict::UnresolvedConvergence;
                };
                // A^b(x_n) with a constant-family hint covering the bound.
                let hint_base = self.slots[slot_id]
                    .bound
                    .map(|v| Nat::from(v + 1))
                    .unwrap_or(Nat::ONE);
                let hint = crate::machine::code::const_self_index_at_least(&hint_base);
                let policy = crate::jump::StagePolicy::with_scan(budget, 64)
                    .hint(x_n.0.clone(), vec![hint]);
                let member =
                    crate::jump::b_member(&a_set, &x_n.0, &policy).status
                        == crate::jump::MemberStatus::In;
                if !ov.is_zero() == member {
                    RequirementVerdict::VerifiedAgreement
                } else {
                    RequirementVerdict::Disagreement
                }
            })
            .collect()
    }

    /// The attention-count bound: between even-indexed consecutive actions
    /// of R_n on the same marker (with no higher-priority attention in
    /// between), a new diagonal convergence below the requirement's bound
    /// must be logged.
    pub fn double_actions_backed(&self) -> bool {
        for (n, acts) in self.actions.iter().enumerate() {
            let runs = same_marker_runs(acts);
            for run_acts in runs {
                for w in run_acts.chunks(2) {
                    if w.len() < 2 {
                        continue;
                    }
                    let (s0, slot) = w[0];
                    let (s1, _) = w[1];
                    if self
                        .actions
                        .iter()
                        .take(n)
                        .any(|higher| higher.iter().any(|&(t, _)| s0 < t && t <= s1))
                    {
                        continue;
                    }
                    let bound = self.slots[slot].bound.unwrap_or(u64::MAX);
                    let backed = self
                        .diagonal_events
                        .iter()
                        .any(|&(t, y, _)| s0 < t && t <= s1 && y <= bound);
                    if !backed {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn same_marker_runs(acts: &[(u64, usize)]) -> Vec<Vec<(u64, usize)>> {
    let mut out: Vec<Vec<(u64, usize)>> = Vec::new();
    for &(s, slot) in acts {
        match out.last_mut() {
            Some(last) if last[0].1 == slot => last.push((s, slot)),
            _ => out.push(vec![(s, slot)]),
        }
    }
    out
}

fn digits8_fixed(v: u64, width: usize) -> Vec<u8> {
    let mut out = vec![0u8; width];
    let mut v = v;
    for slot in out.iter_mut().rev() {
        *slot = (v % 8) as u8;
        v /= 8;
    }
    assert_eq!(v, 0, "rank exceeds fixed width");
    out
}

/// Halt iff the oracle matches one of the declared patterns exactly.
fn matcher_body(slot: &SlotState) -> Program {
    use crate::machine::asm::Asm;
    let mut a = Asm::new(24);
    for pattern in &slot.patterns {
        let next_pattern = a.label();
        for &(pos, bit) in pattern {
            let preg = a.fresh();
            let ans = a.fresh();
            a.load_const(preg, &Nat::from(pos));
            a.qry(preg, ans);
            if bit {
                // expect 1: zero answer misses
                a.decjz(ans, next_pattern);
            } else {
                // expect 0: nonzero answer misses
                let ok = a.label();
                a.decjz(ans, ok);
                a.jmp(next_pattern);
                a.place(ok);
            }
        }
        a.halt();
        a.place(next_pattern);
    }
    a.diverge();
    a.assemble()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::replay;

    #[test]
    fn standard_run_is_ce_and_replayable() {
        let run = tt_separation(&TtSepConfig::standard(3, 10_000));
        // Monotone enumeration is enforced structurally; the order list is
        // duplicate-free.
        let set: BTreeSet<u64> = run.enumerated.iter().copied().collect();
        assert_eq!(set.len(), run.enumerated.len());
        let jsonl = run.trace.to_jsonl();
        let parsed = ConstructionTrace::from_jsonl(&jsonl).unwrap();
        replay(&parsed).unwrap();
    }

    #[test]
    fn standard_requirements_stay_unfalsified() {
        let run = tt_separation(&TtSepConfig::standard(3, 10_000));
        for (n, v) in run.final_verdicts(200_000).iter().enumerate() {
            assert_ne!(*v, RequirementVerdict::VerifiedAgreement, "R_{n} failed");
        }
        assert!(run.double_actions_backed());
    }

    #[test]
    fn live_opponents_get_attention_and_lose() {
        // A responsive opponent pair: the functional claims A^b(x) = 0
        // always (constant 0, total), the bound is a constant 40.
        let functional = encode(&Program::new(vec![Instruction::Halt]));
        let bound = encode(&crate::machine::asm::const_loader(&Nat::from(40u64)));
        let config = TtSepConfig {
            requirement_count: 1,
            stages: 10_000,
            pairs: Some(vec![(functional.0, bound.0)]),
            diagonal_horizon: 2048,
        };
        let run = tt_separation(&config);
        assert!(run.attention_counts[0] >= 1, "the live requirement must act");
        let verdicts = run.final_verdicts(4_000_000);
        assert_eq!(verdicts[0], RequirementVerdict::Disagreement);
        assert!(run.double_actions_backed());
    }
}
