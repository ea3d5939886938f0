//! Explicit reductions between the jump variants, with matched-budget
//! equivalence checking.
//!
//! Both sides of an equivalence like `⟨e,i,j⟩ ∈ A^{b0} ⟺ g(⟨e,i,j⟩) ∈ A^b`
//! are c.e.-style, so neither is co-verifiable at a finite stage. Checks
//! therefore search both sides up to a shared budget and report
//! three-valued outcomes: where scripted ground truth is available, a
//! member that the truth says is out is a genuine `Disagree` (stage views
//! are sound); a truth-in point one side has not yet seen is `Unresolved`.

use super::{b0_member, b_member, JumpBase, MemberStatus, StagePolicy};
use crate::machine::asm::{self, Asm, InnerQry, QryMode};
use crate::machine::isa::REG_SCRATCH0;
use crate::machine::{decode, encode, pad, run, ProgramIndex};
use crate::nat::Nat;
use crate::oracle::BTWitness;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointOutcome {
    Agree,
    Disagree,
    Unresolved,
}

/// Judge one point at matched budgets, optionally against ground truth.
pub fn judge(left_in: bool, right_in: bool, truth: Option<bool>) -> PointOutcome {
    match truth {
        Some(true) => {
            if left_in && right_in {
                PointOutcome::Agree
            } else {
                PointOutcome::Unresolved
            }
        }
        Some(false) => {
            if left_in || right_in {
                PointOutcome::Disagree
            } else {
                PointOutcome::Agree
            }
        }
        None => {
            if left_in == right_in {
                PointOutcome::Agree
            } else {
                PointOutcome::Unresolved
            }
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct EquivalenceReport {
    pub outcomes: Vec<(String, PointOutcome)>,
}

impl EquivalenceReport {
    pub fn count(&self, o: PointOutcome) -> usize {
        self.outcomes.iter().filter(|(_, x)| *x == o).count()
    }

    pub fn no_disagreement(&self) -> bool {
        self.count(PointOutcome::Disagree) == 0
    }

    pub fn unresolved_fraction(&self) -> f64 {
        if self.outcomes.is_empty() {
            0.0
        } else {
            self.count(PointOutcome::Unresolved) as f64 / self.outcomes.len() as f64
        }
    }
}

// ---------------------------------------------------------------------------
// A^{b0} ≤_1 A^b
// ---------------------------------------------------------------------------

/// The theorem's pair of maps: `k(i, j)` with `φ_{k(i,j)}(x) = φ_i(j)`, and
/// the injective `g` with `⟨e,i,j⟩ ∈ A^{b0} ⟺ g(⟨e,i,j⟩) ∈ A^b`, arranged
/// so that `g(⟨e,i,j⟩) ≥ k(i,j)` (the witness the forward direction uses).
pub struct BZeroToB;

impl BZeroToB {
    pub fn k_index(i: &ProgramIndex, j: &Nat) -> ProgramIndex {
        crate::machine::const_apply_index(i, j)
    }

    /// `Φ^C_{g(⟨e,i,j⟩)}(x) = Φ_e^{C↾φ_{k(i,j)}(x)}(j)` when `φ_i(j)↓`,
    /// divergent otherwise. The bound `φ_{k(i,j)}(x) = φ_i(j)` is
    /// recomputed in-program from the literal `j`, so the text never touches
    /// its own (huge) input.
    pub fn g_index(e: &ProgramIndex, i: &ProgramIndex, j: &Nat) -> ProgramIndex {
        let mut a = Asm::new(REG_SCRATCH0);
        let arg = a.fresh();
        let bound = a.fresh();
        a.load_const(arg, j);
        a.inline(&decode(i), arg, bound, QryMode::Plain);
        let arg2 = a.fresh();
        let out = a.fresh();
        a.load_const(arg2, j);
        a.inline(&decode(e), arg2, out, QryMode::Restricted { bound_reg: bound });
        a.halt();
        let raw = encode(&a.assemble());
        let keyed = pad(&raw, &Nat::triple(&e.0, &i.0, j));
        // Ensure g ≥ k(i, j); padding grants that freely.
        let k = Self::k_index(i, j);
        if keyed.0 >= k.0 {
            keyed
        } else {
            pad(&keyed, &k.0)
        }
    }

    /// Check the contract on scripted probes at matched budgets.
    pub fn check(
        base: &dyn JumpBase,
        probes: &[(ProgramIndex, ProgramIndex, Nat, Option<bool>)],
        stage: u64,
    ) -> EquivalenceReport {
        let mut report = EquivalenceReport::default();
        for (e, i, j, truth) in probes {
            let left = b0_member(base, &e.0, &i.0, j, stage).status == MemberStatus::In;
            let g = Self::g_index(e, i, j);
            let k = Self::k_index(i, j);
            let policy = StagePolicy::with_scan(stage, 64).hint(g.0.clone(), vec![k]);
            let right = b_member(base, &g.0, &policy).status == MemberStatus::In;
            report
                .outcomes
                .push((format!("triple(e={e:?}, i={i:?}, j={j})"), judge(left, right, *truth)));
        }
        report
    }
}

// ---------------------------------------------------------------------------
// A^b ≤_tt A^{b0}
// ---------------------------------------------------------------------------

/// The truth-table style reduction `x ∈ A^b ⟺ ∃ i ≤ x [⟨x,i,x⟩ ∈ A^{b0}]`:
/// query set `{⟨x,i,x⟩ : i ≤ x}` with the OR table.
pub struct BToBZero;

impl BToBZero {
    pub fn queries(x: &Nat) -> Vec<(Nat, Nat, Nat)> {
        let mut out = Vec::new();
        let cap = x.to_u64_saturating();
        for i in 0..=cap.min(1 << 16) {
            out.push((x.clone(), Nat::from(i), x.clone()));
        }
        out
    }

    /// OR of the query answers.
    pub fn evaluate(answers: &[bool]) -> bool {
        answers.iter().any(|&b| b)
    }

    pub fn check(base: &dyn JumpBase, domain: &[Nat], stage: u64) -> EquivalenceReport {
        let mut report = EquivalenceReport::default();
        for x in domain {
            let left = b_member(base, x, &StagePolicy::at(stage)).status == MemberStatus::In;
            let answers: Vec<bool> = Self::queries(x)
                .iter()
                .map(|(e, i, j)| b0_member(base, e, i, j, stage).status == MemberStatus::In)
                .collect();
            let right = Self::evaluate(&answers);
            report.outcomes.push((format!("x={x}"), judge(left, right, None)));
        }
        report
    }
}

// ---------------------------------------------------------------------------
// order preservation: A ≤_bT B ⟹ A^{b0} ≤_1 B^{b0}
// ---------------------------------------------------------------------------

/// From a bT witness `(Ψ, f)` for `A ≤_bT B`, the strictly increasing `h`
/// with `φ_{h(i)}(x) = f(φ_i(x))` and the map `g` with
/// `⟨e,i,j⟩ ∈ A^{b0} ⟺ ⟨g(⟨e,h(i),j⟩), h(i), j⟩ ∈ B^{b0}`.
pub struct OrderPreserving {
    pub psi: ProgramIndex,
    pub f: ProgramIndex,
    h_table: Vec<ProgramIndex>,
}

impl OrderPreserving {
    pub fn new(psi: ProgramIndex, f: ProgramIndex, max_i: u64) -> OrderPreserving {
        let f_text = decode(&f);
        let mut h_table: Vec<ProgramIndex> = Vec::new();
        let mut min_nibbles = 0usize;
        for i in 0..=max_i {
            let text = asm::compose_programs(&f_text, &decode(&ProgramIndex::from_u64(i)));
            // Strictly increasing by construction: each text strictly longer
            // than the previous one, so the codes order themselves.
            let text = asm::pad_text_to_nibbles(&text, min_nibbles);
            min_nibbles = crate::machine::code::nibbles(&text).len() + 1;
            let h = encode(&text);
            debug_assert!(h_table.last().map_or(true, |p| p.0 < h.0));
            h_table.push(h);
        }
        OrderPreserving { psi, f, h_table }
    }

    pub fn h(&self, i: u64) -> &ProgramIndex {
        &self.h_table[i as usize]
    }

    /// `Φ^C_{g(⟨e,k,j⟩)}(x) = Φ_e^{(Ψ^{C↾φ_{h(i)}(j)})↾φ_i(j)}(j)` for
    /// `k = h(i)` (the only indices it is applied to).
    pub fn g_index(&self, e: &ProgramIndex, i: u64, j: &Nat) -> ProgramIndex {
        let mut a = Asm::new(REG_SCRATCH0);
        // inner bound φ_i(j)
        let arg = a.fresh();
        let inner_bound = a.fresh();
        a.load_const(arg, j);
        a.inline(&decode(&ProgramIndex::from_u64(i)), arg, inner_bound, QryMode::Plain);
        // outer bound φ_{h(i)}(j) = f(φ_i(j))
        let arg2 = a.fresh();
        let outer_bound = a.fresh();
        a.load_const(arg2, j);
        a.inline(&decode(self.h(i)), arg2, outer_bound, QryMode::Plain);
        // Φ_e on j, its oracle computed by Ψ under the outer restriction,
        // the whole thing cut at the inner bound.
        let arg3 = a.fresh();
        let out = a.fresh();
        a.load_const(arg3, j);
        let psi_text = decode(&self.psi);
        a.inline(
            &decode(e),
            arg3,
            out,
            QryMode::RestrictedVia {
                bound_reg: inner_bound,
                psi: &psi_text,
                psi_mode: Box::new(InnerQry::Restricted { bound_reg: outer_bound }),
            },
        );
        a.halt();
        pad(&encode(&a.assemble()), &Nat::triple(&e.0, &Nat::from(i), j))
    }

    pub fn check(
        &self,
        a_base: &dyn JumpBase,
        b_base: &dyn JumpBase,
        probes: &[(ProgramIndex, u64, Nat, Option<bool>)],
        stage: u64,
    ) -> EquivalenceReport {
        let mut report = EquivalenceReport::default();
        for (e, i, j, truth) in probes {
            let left =
                b0_member(a_base, &e.0, &ProgramIndex::from_u64(*i).0, j, stage).status
                    == MemberStatus::In;
            let g = self.g_index(e, *i, j);
            let right =
                b0_member(b_base, &g.0, &self.h(*i).0, j, stage).status == MemberStatus::In;
            report
                .outcomes
                .push((format!("triple(e={e:?}, i={i}, j={j})"), judge(left, right, *truth)));
        }
        report
    }

    pub fn h_strictly_increasing(&self) -> bool {
        self.h_table.windows(2).all(|w| w[0].0 < w[1].0)
    }
}

// ---------------------------------------------------------------------------
// Gerla: A_tt ≤_1 A^{b0}
// ---------------------------------------------------------------------------

/// From the canonical witness `(Φ_k, f)` for `A^{tt} ≤_bT A`, the maps `h`
/// and `j` with `x ∈ A_tt ⟺ ⟨j(x), h(x), z⟩ ∈ A^{b0}` (z a dummy).
pub struct AttToBZero {
    pub ktt: BTWitness,
}

impl AttToBZero {
    /// `φ_{h(x)}(z) = f(φ_x(x))` for every z.
    pub fn h_index(&self, x: &Nat) -> ProgramIndex {
        let text = asm::compose_programs(&decode(&self.ktt.bound), &decode(&ProgramIndex(x.clone())));
        let applied = asm::ignore_input_apply(&text, x);
        pad(&encode(&applied), &Nat::pair(x, &Nat::from(1u64)))
    }

    /// `Φ^C_{j(x)}(z)↓ iff φ_x(x)↓ ∧ φ_x(x) ∈ Φ_k^C`: runs `φ_x(x)`
    /// genuinely, then evaluates the settled condition code against the
    /// oracle through the machine tt evaluator.
    pub fn j_index(&self, x: &Nat) -> ProgramIndex {
        let mut a = Asm::new(REG_SCRATCH0);
        let arg = a.fresh();
        let v = a.fresh();
        a.load_const(arg, x);
        a.inline(&decode(&ProgramIndex(x.clone())), arg, v, QryMode::Plain);
        // v now holds φ_x(x); evaluate it as a condition with the genuine
        // evaluator and halt iff satisfied.
        let ans = a.fresh();
        a.inline(&asm::tt_evaluator_program(), v, ans, QryMode::Plain);
        let no = a.label();
        a.decjz(ans, no);
        a.halt();
        a.place(no);
        a.diverge();
        pad(&encode(&a.assemble()), &Nat::pair(x, &Nat::from(2u64)))
    }

    pub fn check(
        &self,
        a_fn: &dyn Fn(&Nat) -> Option<bool>,
        base: &dyn JumpBase,
        domain: &[Nat],
        stage: u64,
    ) -> EquivalenceReport {
        let mut report = EquivalenceReport::default();
        let z = Nat::ZERO;
        let tt_view = super::gerla_tt_jump(a_fn, domain, stage);
        for (x, p) in domain.iter().zip(tt_view.points.iter()) {
            let left = p.status == MemberStatus::In;
            let right = b0_member(base, &self.j_index(x).0, &self.h_index(x).0, &z, stage)
                .status
                == MemberStatus::In;
            report.outcomes.push((format!("x={x}"), judge(left, right, None)));
        }
        report
    }
}

// ---------------------------------------------------------------------------
// ∅^b ≡₁ ∅′
// ---------------------------------------------------------------------------

/// The genuine direction: `x ∈ ∅′ ⟺ g(x) ∈ ∅^b`, where `Φ_{g(x)}` ignores
/// its oracle and input and runs `φ_x(x)` literally.
pub fn halting_to_empty_jump(x: &Nat) -> ProgramIndex {
    let text = asm::ignore_input_apply(&decode(&ProgramIndex(x.clone())), x);
    pad(&encode(&text), &Nat::pair(x, &Nat::from(3u64)))
}

/// The c.e.-completeness direction at a budget: `x ∈ ∅^b[budget] ⟺
/// f(x) ∈ ∅′`, with `f(x)` compiled from the budgeted enumeration (a halter
/// when the membership has been seen, a diverger otherwise). Injective via
/// the padding key.
pub fn empty_jump_to_halting(x: &Nat, budget: u64) -> ProgramIndex {
    let empty = crate::oracle::FiniteSetOracle::empty();
    let member = b_member(&empty, x, &StagePolicy::at(budget)).status == MemberStatus::In;
    let text = if member {
        crate::machine::Program::new(vec![crate::machine::Instruction::Halt])
    } else {
        crate::machine::Program::diverger()
    };
    pad(&encode(&text), &Nat::pair(x, &Nat::from(4u64)))
}

/// Check both translations on a probe range at matched budgets.
pub fn check_empty_jump_vs_halting(probes: &[Nat], stage: u64) -> EquivalenceReport {
    let empty = crate::oracle::FiniteSetOracle::empty();
    let mut report = EquivalenceReport::default();
    for x in probes {
        // ∅^b → ∅′
        let left = b_member(&empty, x, &StagePolicy::at(stage)).status == MemberStatus::In;
        let f = empty_jump_to_halting(x, stage);
        let right = run(&f, &f.0, stage).halted();
        report.outcomes.push((format!("jump-to-halting x={x}"), judge(left, right, None)));
        // ∅′ → ∅^b
        let left2 = run(&ProgramIndex(x.clone()), x, stage).halted();
        let g = halting_to_empty_jump(x);
        let right2 =
            b_member(&empty, &g.0, &StagePolicy::with_scan(stage, 64)).status == MemberStatus::In;
        report.outcomes.push((format!("halting-to-jump x={x}"), judge(left2, right2, None)));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::asm::{identity_program, successor_program};
    use crate::machine::Instruction as I;
    use crate::oracle::FiniteSetOracle;

    fn evens(hi: u64) -> FiniteSetOracle {
        FiniteSetOracle::from_u64((0..=hi).filter(|n| n % 2 == 0))
    }

    /// Scripted probe triples with known ground truth over a decidable base.
    fn b0_probes(base_desc: &str) -> Vec<(ProgramIndex, ProgramIndex, Nat, Option<bool>)> {
        let _ = base_desc;
        let quer3 = encode(&asm::singleton_query_program(&Nat::from(3u64))); // halts iff C(3)=1
        let quer2 = encode(&asm::singleton_query_program(&Nat::from(2u64)));
        let halt = encode(&crate::machine::Program::new(vec![I::Halt]));
        let diverger = encode(&crate::machine::Program::diverger());
        let id = encode(&identity_program());
        let succ = encode(&successor_program());
        vec![
            // φ_i(j) converges (succ), Φ_e oracle-free halt: in.
            (halt.clone(), succ.clone(), Nat::from(5u64), Some(true)),
            // divergent bound: out for every A.
            (halt.clone(), diverger.clone(), Nat::from(5u64), Some(false)),
            // Φ_e queries 2 with bound succ(5) = 6 ≥ 2: 2 ∈ evens → in.
            (quer2.clone(), succ.clone(), Nat::from(5u64), Some(true)),
            // Φ_e queries 3: 3 ∉ evens → diverges → out.
            (quer3.clone(), succ.clone(), Nat::from(5u64), Some(false)),
            // Bound id(1) = 1 < 2: the query at 2 is masked to 0 → out.
            (quer2.clone(), id.clone(), Nat::from(1u64), Some(false)),
            // Divergent functional: out.
            (diverger.clone(), succ.clone(), Nat::from(0u64), Some(false)),
        ]
    }

    #[test]
    fn b0_to_b_contract_on_probes() {
        let base = evens(40);
        let report = BZeroToB::check(&base, &b0_probes("evens"), 60_000);
        assert!(report.no_disagreement(), "{:?}", report.outcomes);
        assert_eq!(report.count(PointOutcome::Unresolved), 0, "{:?}", report.outcomes);
    }

    #[test]
    fn g_dominates_k_on_triples() {
        let succ = encode(&successor_program());
        let halt = encode(&crate::machine::Program::new(vec![I::Halt]));
        for j in 0..10u64 {
            for salt in 0..10u64 {
                let e = pad(&halt, &Nat::from(salt));
                let g = BZeroToB::g_index(&e, &succ, &Nat::from(j));
                let k = BZeroToB::k_index(&succ, &Nat::from(j));
                assert!(g.0 >= k.0, "g must dominate k at j={j} salt={salt}");
            }
        }
    }

    #[test]
    fn b_to_b0_projection_small_domain() {
        let base = evens(40);
        let domain: Vec<Nat> = (0..15u64).map(Nat::from).collect();
        let report = BToBZero::check(&base, &domain, 20_000);
        assert!(report.no_disagreement(), "{:?}", report.outcomes);
        // Query count is x + 1.
        assert_eq!(BToBZero::queries(&Nat::from(0u64)).len(), 1);
        assert_eq!(BToBZero::queries(&Nat::from(7u64)).len(), 8);
    }

    #[test]
    fn order_preserving_identity_reduction() {
        // A = B = evens, Ψ queries its input position, f = successor.
        let psi = encode(&crate::machine::Program::new(vec![I::Qry(0, 1), I::Halt]));
        let f = encode(&successor_program());
        let op = OrderPreserving::new(psi, f, 50);
        assert!(op.h_strictly_increasing());
        let base = evens(60);
        let quer2 = encode(&asm::singleton_query_program(&Nat::from(2u64)));
        let quer3 = encode(&asm::singleton_query_program(&Nat::from(3u64)));
        let halt = encode(&crate::machine::Program::new(vec![I::Halt]));
        let succ_i = {
            // index of the successor function within the small scan range:
            // just use the identity program's index for a total bound.
            encode(&identity_program())
        };
        let _ = succ_i;
        let probes = vec![
            (halt.clone(), 1u64, Nat::from(4u64), Some(true)), // φ_1 = const 0 total
            (quer2.clone(), 7u64, Nat::from(9u64), Some(true)), // φ_7 = const 7 ≥ 2
            (quer3.clone(), 7u64, Nat::from(9u64), Some(false)), // 3 odd
            (halt.clone(), 0u64, Nat::from(2u64), Some(false)), // φ_0 diverges
        ];
        let report = op.check(&base, &base, &probes, 120_000);
        assert!(report.no_disagreement(), "{:?}", report.outcomes);
        assert_eq!(report.count(PointOutcome::Unresolved), 0, "{:?}", report.outcomes);
    }

    #[test]
    fn order_preserving_doubling_reduction() {
        // A(n) = B(2n) with B the primes: Ψ queries 2·input, f(x) = 2x + 1,
        // so A = {1} on the probe range. Ground truths recomputed from B.
        let psi = encode(&crate::machine::Program::new(vec![
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
        let primes = FiniteSetOracle::from_u64(
            (2u64..=100).filter(|n| (2..*n).all(|d| n % d != 0)),
        );
        let a_set = FiniteSetOracle::from_u64(
            (0u64..=50).filter(|n| {
                let v = 2 * n;
                v >= 2 && (2..v).all(|d| v % d != 0)
            }),
        );
        let op = OrderPreserving::new(psi, f, 12);
        assert!(op.h_strictly_increasing());
        let quer1 = encode(&asm::singleton_query_program(&Nat::from(1u64)));
        let quer2 = encode(&asm::singleton_query_program(&Nat::from(2u64)));
        let halt = encode(&crate::machine::Program::new(vec![I::Halt]));
        // truths recomputed from A = {1}: query-1 halts, query-2 does not.
        let probes = vec![
            (halt, 1u64, Nat::from(6u64), Some(true)),
            (quer1, 7u64, Nat::from(6u64), Some(true)),
            (quer2, 7u64, Nat::from(6u64), Some(false)),
        ];
        let report = op.check(&a_set, &primes, &probes, 200_000);
        assert!(report.no_disagreement(), "{:?}", report.outcomes);
        assert_eq!(report.count(PointOutcome::Unresolved), 0, "{:?}", report.outcomes);
    }

    #[test]
    fn att_to_b0_on_evens() {
        let base = evens(60);
        let att = AttToBZero {
            ktt: BTWitness {
                functional: encode(&asm::tt_evaluator_program()),
                bound: encode(&successor_program()),
            },
        };
        let a_fn = |n: &Nat| Some(n.rem_u64(2) == 0);
        // Probes must have small index values: φ_{h(x)} loads the literal
        // x, which costs O(x) on this machine. The direct-constant family
        // provides diagonal values cheaply (φ_x(x) = x), so scan it for
        // codes that happen to be satisfied / unsatisfied conditions.
        let a_opt = |n: &Nat| Some(n.rem_u64(2) == 0);
        let mut sat = None;
        let mut unsat = None;
        for k in 0..4000u64 {
            let x = 8 * k + 7;
            let cond = crate::oracle::TTCondition::from_code(&Nat::from(x));
            if cond.positions.iter().any(|p| p.to_u64().is_none()) {
                continue;
            }
            match crate::oracle::tt_eval(&cond, &a_opt) {
                Ok(true) if sat.is_none() => sat = Some(x),
                Ok(false) if unsat.is_none() => unsat = Some(x),
                _ => {}
            }
            if sat.is_some() && unsat.is_some() {
                break;
            }
        }
        let probes: Vec<Nat> = vec![
            Nat::ZERO, // divergent diagonal: out on both sides
            Nat::from(sat.expect("a satisfied condition code in the family")),
            Nat::from(unsat.expect("an unsatisfied condition code in the family")),
        ];
        let report = att.check(&a_fn, &base, &probes, 4_000_000);
        assert!(report.no_disagreement(), "{:?}", report.outcomes);
        assert_eq!(report.count(PointOutcome::Unresolved), 0, "{:?}", report.outcomes);
        // Injectivity of the maps on [0, 100].
        let mut seen = std::collections::HashSet::new();
        for x in 0..=100u64 {
            assert!(seen.insert(att.j_index(&Nat::from(x)).0));
            assert!(seen.insert(att.h_index(&Nat::from(x)).0));
        }
    }

    #[test]
    fn empty_jump_translations_agree() {
        let probes: Vec<Nat> = (0..15u64).map(Nat::from).collect();
        let report = check_empty_jump_vs_halting(&probes, 50_000);
        assert!(report.no_disagreement(), "{:?}", report.outcomes);
        assert_eq!(report.count(PointOutcome::Unresolved), 0, "{:?}", report.outcomes);
        // Injectivity of both maps.
        let mut seen = std::collections::HashSet::new();
        for x in &probes {
            assert!(seen.insert(empty_jump_to_halting(x, 10_000).0));
            assert!(seen.insert(halting_to_empty_jump(x).0));
        }
    }
}
