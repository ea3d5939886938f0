//! The acceptability package: s-m-n, padding, and fixed points.
//!
//! `smn` and `pad` are pure index arithmetic (the numbering reserves residue
//! classes for them, see `code`), so both are total, injective, and strictly
//! monotone by construction. Fixed points are found by a verified search
//! over padding orbits and the direct-constant family rather than by
//! Kleene's self-application: on a unary machine, an index that simulates
//! its own transformer is uncomputable within any desk budget, while the
//! search returns indices whose fixed-point equation is then *checked* by
//! running both sides.

use super::asm;
use super::code::{const_self_index_at_least, decode, encode, pad_index, smn_index, ProgramIndex};
use super::interp::{run, Exec, StepOutcome};
use crate::nat::Nat;

/// `φ_{smn(e, y)}(x) = φ_e(pair(y, x))`; total, injective, strictly
/// monotone in both arguments.
pub fn smn(e: &ProgramIndex, y: &Nat) -> ProgramIndex {
    smn_index(e, y)
}

/// `pad(e, k)`: the k-th member of a strictly increasing sequence of
/// equivalent indices, with `pad(e, k) > max(e, k)`.
pub fn pad(e: &ProgramIndex, k: &Nat) -> ProgramIndex {
    pad_index(e, k)
}

/// `φ_{const_apply_index(e, j)}(x) = φ_e(j)` for every `x`; the map the
/// order-preservation proofs call `k(i, j)`. Injective in `(e, j)` via a
/// final padding step keyed by the argument pair.
pub fn const_apply_index(e: &ProgramIndex, j: &Nat) -> ProgramIndex {
    let text = asm::ignore_input_apply(&decode(e), j);
    pad(&encode(&text), &Nat::pair(&e.0, j))
}

/// `φ_{compose_index(f, e)}(x) = φ_f(φ_e(x))`; used for the `h` of the
/// order-preservation theorem. Strict monotonicity in `e` comes from the
/// padding key.
pub fn compose_index(f: &ProgramIndex, e: &ProgramIndex) -> ProgramIndex {
    let text = asm::compose_programs(&decode(f), &decode(e));
    pad(&encode(&text), &Nat::pair(&f.0, &e.0))
}

#[derive(Debug, thiserror::Error)]
pub enum FixedPointError {
    #[error("transformer diverged on every candidate within budget {budget}")]
    NonTotalTransformer { budget: u64 },
    #[error("no verified fixed point among {tried} candidates")]
    NotFound { tried: usize },
}

/// Search policy for [`fixed_point`]. The offset selects a padding orbit, so
/// distinct offsets yield distinct fixed points of the same transformer.
#[derive(Clone, Debug)]
pub struct FixedPointPolicy {
    pub offset: u64,
    pub lower_bound: Nat,
    pub transformer_budget: u64,
    pub check_budget: u64,
    pub grid: Vec<Nat>,
    pub max_candidates: usize,
}

impl Default for FixedPointPolicy {
    fn default() -> Self {
        FixedPointPolicy {
            offset: 0,
            lower_bound: Nat::ZERO,
            transformer_budget: 2_000_000,
            check_budget: 200_000,
            grid: (0u64..20).map(Nat::from).collect(),
            max_candidates: 64,
        }
    }
}

/// Outcome-level equality on the test grid: both halt with the same value,
/// or both exceed the budget.
pub fn extensionally_equal(a: &ProgramIndex, b: &ProgramIndex, grid: &[Nat], budget: u64) -> bool {
    let ea = Exec::new(a.clone());
    let eb = Exec::new(b.clone());
    grid.iter().all(|x| {
        let ra = ea.run(x, budget).outcome;
        let rb = eb.run(x, budget).outcome;
        match (&ra, &rb) {
            (StepOutcome::Halted(u), StepOutcome::Halted(v)) => u == v,
            (StepOutcome::Halted(_), _) | (_, StepOutcome::Halted(_)) => false,
            _ => true,
        }
    })
}

/// Candidate indices for the fixed-point search, generated lazily. The
/// direct-constant orbit comes first (it closes any transformer that fixes
/// those codes), then a padding chase that feeds the transformer's own
/// outputs back through pad orbits.
struct CandidateStream<'a> {
    t: &'a ProgramIndex,
    policy: &'a FixedPointPolicy,
    step: usize,
    self_next: Nat,
    chase_seed: ProgramIndex,
    transformer_halted: bool,
    restarts: u64,
}

impl<'a> CandidateStream<'a> {
    fn new(t: &'a ProgramIndex, policy: &'a FixedPointPolicy) -> Self {
        let selfc = const_self_index_at_least(&policy.lower_bound.add_u64(1));
        CandidateStream {
            t,
            policy,
            step: 0,
            self_next: selfc.0.add_u64(8 * policy.offset),
            chase_seed: pad(
                &encode(&super::isa::Program::empty()),
                &Nat::from(policy.offset),
            ),
            transformer_halted: false,
            restarts: 0,
        }
    }
}

impl Iterator for CandidateStream<'_> {
    /// Candidate plus the transformer's outcome on it, when already run.
    type Item = (ProgramIndex, Option<StepOutcome>);

    fn next(&mut self) -> Option<Self::Item> {
        let i = self.step;
        self.step += 1;
        if i % 2 == 0 {
            let m = ProgramIndex(self.self_next.clone());
            self.self_next = self.self_next.add_u64(8);
            Some((m, None))
        } else {
            let off = Nat::from(self.policy.offset);
            let mut cand = pad(&self.chase_seed, &off);
            while cand.0 <= self.policy.lower_bound {
                cand = pad(&cand, &off);
            }
            let outcome = run(self.t, &cand.0, self.policy.transformer_budget).outcome;
            match &outcome {
                StepOutcome::Halted(next) => {
                    self.transformer_halted = true;
                    self.chase_seed = ProgramIndex(next.clone());
                }
                _ => self.chase_seed = pad(&self.chase_seed, &Nat::ONE),
            }
            // Padding squares code magnitude, so a long fruitless chase
            // doubles bit-length every round; restart it before that blows
            // up memory.
            if self.chase_seed.0.bits() > 4096 {
                self.restarts += 1;
                self.chase_seed = pad(
                    &encode(&super::isa::Program::empty()),
                    &Nat::from(self.policy.offset + self.restarts),
                );
            }
            Some((cand, Some(outcome)))
        }
    }
}

/// A verified Kleene fixed point: returns `m` with `φ_m = φ_{φ_t(m)}`,
/// checked extensionally on the policy grid.
pub fn fixed_point(t: &ProgramIndex, policy: &FixedPointPolicy) -> Result<ProgramIndex, FixedPointError> {
    Ok(fixed_point_stream(t, policy, 1)?.remove(0))
}

/// `count` distinct, strictly increasing verified fixed points; all exceed
/// `policy.lower_bound`.
pub fn fixed_point_set(
    t: &ProgramIndex,
    count: usize,
    policy: &FixedPointPolicy,
) -> Result<Vec<ProgramIndex>, FixedPointError> {
    fixed_point_stream(t, policy, count)
}

fn fixed_point_stream(
    t: &ProgramIndex,
    policy: &FixedPointPolicy,
    count: usize,
) -> Result<Vec<ProgramIndex>, FixedPointError> {
    let mut found: Vec<ProgramIndex> = Vec::new();
    let mut transformer_ever_halted = false;
    let mut tried = 0usize;
    let budget_cap = policy.max_candidates * (count + 1);
    let mut stream = CandidateStream::new(t, policy);
    while let Some((m, pre_run)) = stream.next() {
        if tried >= budget_cap {
            break;
        }
        tried += 1;
        if m.0 <= policy.lower_bound || found.iter().any(|f| f.0 >= m.0) {
            continue;
        }
        let outcome = pre_run.unwrap_or_else(|| run(t, &m.0, policy.transformer_budget).outcome);
        let image = match outcome {
            StepOutcome::Halted(v) => {
                transformer_ever_halted = true;
                ProgramIndex(v)
            }
            _ => continue,
        };
        if extensionally_equal(&m, &image, &policy.grid, policy.check_budget) {
            found.push(m);
            if found.len() == count {
                return Ok(found);
            }
        }
    }
    transformer_ever_halted |= stream.transformer_halted;
    if !transformer_ever_halted {
        Err(FixedPointError::NonTotalTransformer { budget: policy.transformer_budget })
    } else {
        Err(FixedPointError::NotFound { tried })
    }
}

// ---------------------------------------------------------------------------
// transformer corpus used by tests and the verification suites
// ---------------------------------------------------------------------------

/// `e ↦ c` as a program (ignores its input).
pub fn constant_transformer(c: &ProgramIndex) -> ProgramIndex {
    encode(&asm::const_loader(&c.0))
}

/// The identity transformer `e ↦ e`.
pub fn identity_transformer() -> ProgramIndex {
    encode(&asm::identity_program())
}

/// `e ↦ pad(e, 5)`: computes `8 · pair(e, 5) + 3` in unary.
pub fn padding_transformer() -> ProgramIndex {
    use super::isa::{REG_IN, REG_SCRATCH0};
    let mut a = asm::Asm::new(REG_SCRATCH0);
    // pair(e, 5) = T(e + 5) + 5, then ×8 + 3.
    let sum = a.fresh();
    let acc = a.fresh();
    a.mv(REG_IN, &[sum]);
    a.add_small(sum, 5);
    // acc := T(sum)
    let e = a.fresh();
    let outer = a.here();
    let done = a.label();
    a.decjz(sum, done);
    a.inc(acc);
    let inner1 = a.here();
    let inner2 = a.label();
    a.decjz(sum, inner2);
    a.inc(e);
    a.inc(acc);
    a.jmp(inner1);
    a.place(inner2);
    let back = a.here();
    a.decjz(e, outer);
    a.inc(sum);
    a.jmp(back);
    a.place(done);
    a.add_small(acc, 5);
    // out := 8·acc + 3
    let top = a.here();
    let end = a.label();
    a.decjz(acc, end);
    for _ in 0..8 {
        a.inc(super::isa::REG_OUT);
    }
    a.jmp(top);
    a.place(end);
    a.add_small(super::isa::REG_OUT, 3);
    a.halt();
    encode(&a.assemble())
}

/// `e ↦ (an index of the constant-e function)`: on the direct-constant
/// residue class this is the identity, elsewhere it diverges. Total on the
/// candidates the fixed-point search applies it to.
pub fn quine_transformer() -> ProgramIndex {
    use super::isa::{REG_IN, REG_OUT, REG_SCRATCH0};
    let mut a = asm::Asm::new(REG_SCRATCH0);
    let aa = a.fresh();
    a.mv(REG_IN, &[REG_OUT, aa]);
    let diverge = a.label();
    let res7 = a.label();
    let top = a.here();
    for r in 0..8u64 {
        let hit = if r == 7 { res7 } else { diverge };
        a.decjz(aa, hit);
    }
    a.jmp(top);
    a.place(res7);
    a.halt();
    a.place(diverge);
    a.diverge();
    encode(&a.assemble())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::asm::{cantor_sum_program, identity_program, successor_program};
    use crate::machine::isa::Program;

    fn value(e: &ProgramIndex, x: u64, budget: u64) -> Option<u64> {
        run(e, &Nat::from(x), budget).outcome.value().and_then(Nat::to_u64)
    }

    #[test]
    fn smn_on_the_cantor_sum_program() {
        // Independent oracle: pair(3, 4) decodes back to (3, 4), so the
        // program summing the halves of its input must return 7.
        let e = encode(&cantor_sum_program());
        let s = smn(&e, &Nat::from(3u64));
        assert_eq!(value(&s, 4, 1_000_000), Some(7));
        // Equality with the direct call on the paired input.
        let paired = Nat::pair(&Nat::from(3u64), &Nat::from(4u64));
        assert_eq!(value(&e, paired.to_u64().unwrap(), 1_000_000), Some(7));
    }

    #[test]
    fn smn_preserves_divergence() {
        let e = encode(&Program::diverger());
        let s = smn(&e, &Nat::from(9u64));
        assert!(!run(&s, &Nat::from(0u64), 100_000).halted());
    }

    #[test]
    fn smn_injective_grid() {
        let e = encode(&identity_program());
        let mut seen = std::collections::HashSet::new();
        for y in 0u64..50 {
            assert!(seen.insert(smn(&e, &Nat::from(y)).0));
        }
    }

    #[test]
    fn pad_preserves_semantics_and_grows() {
        let id = encode(&identity_program());
        let mut prev = id.0.clone();
        for k in 0u64..50 {
            let p = pad(&id, &Nat::from(k));
            assert!(p.0 > prev || k == 0, "strict growth at k={k}");
            assert!(p.0 > id.0);
            assert!(p.0 >= Nat::from(k));
            if k < 8 {
                assert_eq!(value(&p, 5, 100_000), Some(5), "padding broke semantics at k={k}");
            }
            prev = p.0;
        }
    }

    #[test]
    fn const_apply_index_behaves_like_k() {
        // φ_{k(succ, 6)}(x) = succ(6) = 7 for every x, even huge ones.
        let succ = encode(&successor_program());
        let k = const_apply_index(&succ, &Nat::from(6u64));
        assert_eq!(value(&k, 0, 100_000), Some(7));
        let huge: Nat = "123456789012345678901234567890123456789".parse().unwrap();
        let r = run(&k, &huge, 100_000);
        assert_eq!(r.outcome.value().and_then(Nat::to_u64), Some(7));
    }

    #[test]
    fn fixed_point_of_constant_transformer() {
        // The target must have a small code: the transformer builds the
        // value in unary. `[INC r1, HALT]` is the constant-1 function.
        let target = encode(&Program::new(vec![
            crate::machine::isa::Instruction::Inc(1),
            crate::machine::isa::Instruction::Halt,
        ]));
        let t = constant_transformer(&target);
        let m = fixed_point(&t, &FixedPointPolicy::default()).unwrap();
        // φ_m must equal φ_target = const 1 on the grid.
        for x in 0u64..20 {
            assert_eq!(value(&m, x, 500_000), Some(1));
        }
    }

    #[test]
    fn fixed_point_of_quine_transformer_is_a_quine() {
        let t = quine_transformer();
        let m = fixed_point(&t, &FixedPointPolicy::default()).unwrap();
        for x in 0u64..10 {
            let out = run(&m, &Nat::from(x), 2_000_000).outcome;
            assert_eq!(out, StepOutcome::Halted(m.0.clone()), "quine must output its own index");
        }
    }

    #[test]
    fn distinct_offsets_distinct_fixed_points() {
        let t = quine_transformer();
        let p1 = FixedPointPolicy::default();
        let p2 = FixedPointPolicy { offset: 3, ..FixedPointPolicy::default() };
        let m1 = fixed_point(&t, &p1).unwrap();
        let m2 = fixed_point(&t, &p2).unwrap();
        assert_ne!(m1.0, m2.0);
    }

    #[test]
    fn fixed_point_set_increasing_and_consistent() {
        let t = identity_transformer();
        let policy = FixedPointPolicy { lower_bound: Nat::from(1000u64), ..Default::default() };
        let set = fixed_point_set(&t, 3, &policy).unwrap();
        assert_eq!(set.len(), 3);
        assert!(set.windows(2).all(|w| w[0].0 < w[1].0));
        assert!(set.iter().all(|m| m.0 > Nat::from(1000u64)));
        let single = fixed_point(&t, &policy).unwrap();
        assert_eq!(single.0, set[0].0);
    }

    #[test]
    fn fixed_point_set_of_constant_transformer() {
        // Three distinct indices, all extensionally the constant target.
        let target = encode(&Program::new(vec![
            crate::machine::isa::Instruction::Inc(1),
            crate::machine::isa::Instruction::Halt,
        ]));
        let t = constant_transformer(&target);
        let set = fixed_point_set(&t, 3, &FixedPointPolicy::default()).unwrap();
        assert_eq!(set.len(), 3);
        assert!(set.windows(2).all(|w| w[0].0 < w[1].0));
        let grid: Vec<Nat> = (0u64..20).map(Nat::from).collect();
        for m in &set {
            assert!(extensionally_equal(m, &target, &grid, 300_000));
        }
    }

    #[test]
    fn non_total_transformer_reported() {
        let t = encode(&Program::diverger());
        let policy = FixedPointPolicy { transformer_budget: 10_000, max_candidates: 8, ..Default::default() };
        match fixed_point(&t, &policy) {
            Err(FixedPointError::NonTotalTransformer { .. }) => {}
            other => panic!("expected NonTotalTransformer, got {other:?}"),
        }
    }
}
