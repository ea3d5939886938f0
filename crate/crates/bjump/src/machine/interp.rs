//! Step-bounded universal interpreter.
//!
//! Conventions: the input is placed in `r0`, the output is read from `r1`
//! when the machine halts (by `HALT`, by falling off the end, or by jumping
//! past the end), and `r2` holds the program's own index. One instruction is
//! consumed per step, so outcomes are deterministic and permanent: a halt
//! seen at budget `s` is seen at every budget `t ≥ s` with the same value.

use super::code::{decode, ProgramIndex};
use super::isa::{Instruction, Program, REG_OUT, REG_SELF};
use crate::nat::Nat;

/// Answer to a single oracle query.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleReply {
    Bit(bool),
    /// Only prefix oracles block; set oracles are total.
    Blocked,
}

/// Source of oracle answers during a run.
pub trait OracleSource {
    fn answer(&self, pos: &Nat) -> OracleReply;
}

/// The empty set as an oracle: every position answers 0. Running a program
/// against it realizes the base enumeration `φ_e = Φ_e^∅`.
pub struct EmptyOracle;

impl OracleSource for EmptyOracle {
    fn answer(&self, _pos: &Nat) -> OracleReply {
        OracleReply::Bit(false)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StepOutcome {
    Halted(Nat),
    StillRunning,
    /// A query landed beyond a prefix oracle's domain (position recorded).
    OracleBlocked(Nat),
}

impl StepOutcome {
    pub fn halted(&self) -> bool {
        matches!(self, StepOutcome::Halted(_))
    }

    pub fn value(&self) -> Option<&Nat> {
        match self {
            StepOutcome::Halted(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub outcome: StepOutcome,
    /// Instructions actually executed.
    pub steps: u64,
    /// 1 + the largest queried position, 0 if the run never queried.
    pub use_bound: Nat,
}

impl RunResult {
    pub fn halted(&self) -> bool {
        self.outcome.halted()
    }
}

struct Registers {
    regs: Vec<Nat>,
}

impl Registers {
    fn new() -> Registers {
        Registers { regs: Vec::with_capacity(16) }
    }

    fn slot(&mut self, r: u32) -> &mut Nat {
        let i = r as usize;
        if i >= self.regs.len() {
            self.regs.resize_with(i + 1, Nat::default);
        }
        &mut self.regs[i]
    }

    fn get(&self, r: u32) -> Nat {
        self.regs.get(r as usize).cloned().unwrap_or(Nat::ZERO)
    }
}

/// Run a decoded program under the standard conventions.
///
/// `inputs` go to `r0`, `r1`, ... in order (one-argument functions use just
/// `r0`; witness functions ψ(n, β) take `r0 = n`, `r1 = β`).
pub fn run_program(
    program: &Program,
    self_index: &Nat,
    inputs: &[&Nat],
    oracle: &dyn OracleSource,
    budget: u64,
) -> RunResult {
    let mut regs = Registers::new();
    for (i, v) in inputs.iter().enumerate() {
        *regs.slot(i as u32) = (*v).clone();
    }
    *regs.slot(REG_SELF) = self_index.clone();

    let code = &program.instructions;
    let len = code.len();
    let mut pc: usize = 0;
    let mut steps: u64 = 0;
    let mut max_queried: Option<Nat> = None;

    let use_bound = |max_queried: Option<Nat>| match max_queried {
        None => Nat::ZERO,
        Some(m) => m.add_u64(1),
    };

    loop {
        if pc >= len {
            return RunResult {
                outcome: StepOutcome::Halted(regs.get(REG_OUT)),
                steps,
                use_bound: use_bound(max_queried),
            };
        }
        if steps >= budget {
            return RunResult {
                outcome: StepOutcome::StillRunning,
                steps,
                use_bound: use_bound(max_queried),
            };
        }
        steps += 1;
        match code[pc] {
            Instruction::Inc(r) => {
                regs.slot(r).inc();
                pc += 1;
            }
            Instruction::DecJz(r, t) => {
                let slot = regs.slot(r);
                if slot.is_zero() {
                    // A zero-register jump to itself can never make progress
                    // again; the outcome is StillRunning at every budget from
                    // here on, so stop stepping it.
                    if t as usize == pc {
                        return RunResult {
                            outcome: StepOutcome::StillRunning,
                            steps,
                            use_bound: use_bound(max_queried),
                        };
                    }
                    pc = t as usize;
                } else {
                    slot.dec();
                    pc += 1;
                }
            }
            Instruction::Qry(a, d) => {
                let pos = regs.get(a);
                match oracle.answer(&pos) {
                    OracleReply::Bit(b) => {
                        if max_queried.as_ref().map_or(true, |m| pos > *m) {
                            max_queried = Some(pos);
                        }
                        *regs.slot(d) = Nat::from(b);
                        pc += 1;
                    }
                    OracleReply::Blocked => {
                        return RunResult {
                            outcome: StepOutcome::OracleBlocked(pos),
                            steps,
                            use_bound: use_bound(max_queried),
                        };
                    }
                }
            }
            Instruction::Halt => {
                return RunResult {
                    outcome: StepOutcome::Halted(regs.get(REG_OUT)),
                    steps,
                    use_bound: use_bound(max_queried),
                };
            }
        }
    }
}

/// `φ_e(x)` in the oracle-free sense: `Φ_e^∅(x)` run for `budget` steps.
pub fn run(e: &ProgramIndex, x: &Nat, budget: u64) -> RunResult {
    run_program(&decode(e), &e.0, &[x], &EmptyOracle, budget)
}

/// `Φ_e^O(x)` for an arbitrary oracle.
pub fn run_oracle(e: &ProgramIndex, x: &Nat, oracle: &dyn OracleSource, budget: u64) -> RunResult {
    run_program(&decode(e), &e.0, &[x], oracle, budget)
}

/// Two-argument convention used by Ershov witnesses: `ψ(n, β)` with `r0 = n`
/// and `r1 = β` (the output still reads from `r1`).
pub fn run2(e: &ProgramIndex, a: &Nat, b: &Nat, budget: u64) -> RunResult {
    run_program(&decode(e), &e.0, &[a, b], &EmptyOracle, budget)
}

/// A decoded index, for call sites that run the same program repeatedly.
pub struct Exec {
    pub index: ProgramIndex,
    pub program: Program,
}

impl Exec {
    pub fn new(index: ProgramIndex) -> Exec {
        let program = decode(&index);
        Exec { index, program }
    }

    pub fn run(&self, x: &Nat, budget: u64) -> RunResult {
        run_program(&self.program, &self.index.0, &[x], &EmptyOracle, budget)
    }

    pub fn run_oracle(&self, x: &Nat, oracle: &dyn OracleSource, budget: u64) -> RunResult {
        run_program(&self.program, &self.index.0, &[x], oracle, budget)
    }

    pub fn run2(&self, a: &Nat, b: &Nat, budget: u64) -> RunResult {
        run_program(&self.program, &self.index.0, &[a, b], &EmptyOracle, budget)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::code::encode;
    use crate::machine::isa::Instruction as I;

    #[test]
    fn empty_program_is_const_zero() {
        let e = encode(&Program::empty());
        let r = run(&e, &Nat::from(41u64), 10);
        assert_eq!(r.outcome, StepOutcome::Halted(Nat::ZERO));
        assert_eq!(r.steps, 0);
    }

    #[test]
    fn tight_self_jump_never_halts() {
        let e = encode(&Program::diverger());
        let r = run(&e, &Nat::ZERO, 1_000_000);
        assert_eq!(r.outcome, StepOutcome::StillRunning);
        // The self-loop is recognized without burning the whole budget.
        assert!(r.steps < 1_000_000);
    }

    #[test]
    fn zero_budget_nonempty_still_running() {
        let e = encode(&Program::new(vec![I::Halt]));
        let r = run(&e, &Nat::ZERO, 0);
        assert_eq!(r.outcome, StepOutcome::StillRunning);
    }

    #[test]
    fn jump_past_end_halts() {
        let p = Program::new(vec![I::DecJz(5, 99), I::Inc(1)]);
        let e = encode(&p);
        // r5 = 0, so the jump goes past the end and halts with r1 = 0.
        let r = run(&e, &Nat::ZERO, 10);
        assert_eq!(r.outcome, StepOutcome::Halted(Nat::ZERO));
    }

    #[test]
    fn permanence_of_halts() {
        let p = Program::new(vec![I::Inc(1), I::Inc(1), I::Halt]);
        let e = encode(&p);
        let first = (0..10)
            .map(|s| run(&e, &Nat::ZERO, s))
            .find(|r| r.halted())
            .unwrap();
        for s in 3..20 {
            let r = run(&e, &Nat::ZERO, s);
            assert_eq!(r.outcome, first.outcome);
        }
    }

    #[test]
    fn self_index_visible_in_r2() {
        // QRY r2 r1 against the empty oracle answers 0; instead move one unit
        // of r2 into r1 to witness that r2 carries the index.
        let p = Program::new(vec![I::DecJz(REG_SELF, 2), I::Inc(1), I::Halt]);
        let e = encode(&p);
        let r = run(&e, &Nat::ZERO, 10);
        // e > 0, so the DECJZ decrements and we halt with r1 = 1.
        assert_eq!(r.outcome, StepOutcome::Halted(Nat::ONE));
    }
}
