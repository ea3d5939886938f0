//! α-c.e. witnesses and their evaluation semantics.
//!
//! A witness is a partial computable guessing function `ψ(n, β) → {0,1}`
//! indexed by ordinals `β` below a bound `α < ω^ω`, together with that
//! bound. The approximated set's value at `n` is `ψ(n, γ)` for the least
//! converged `γ`. Witness programs use the two-register convention
//! (`r0 = n`, `r1 = ordinal code`).
//!
//! Stage conventions, applied uniformly:
//! * `ψ_s(n, β)↓` means the program halts within `s − code(β)` steps (codes
//!   are dovetailed against step budgets), **and** `s > u(β) + 1` where `u`
//!   is the units digit — convergences are observed late enough for the
//!   constructions that count on it.
//! * "least ordinal converged so far" is tracked under ordinal comparison,
//!   never code order.

pub mod reduce;
pub mod script;
pub mod transform;

use crate::machine::{Exec, ProgramIndex};
use crate::nat::Nat;
use crate::ordinal::OrdinalCNF;
use serde::Serialize;

/// An index of a two-argument partial computable ψ plus an ordinal bound.
pub struct AlphaCEWitness {
    pub psi: ProgramIndex,
    pub bound: OrdinalCNF,
    /// Observed-convergence memo per point: (horizon, table). Tables filter
    /// down exactly: a convergence observable at `h` is one observable at
    /// `H ≥ h` with `observed_at ≤ h`.
    cache: std::cell::RefCell<std::collections::HashMap<Nat, (u64, std::rc::Rc<Vec<Convergence>>)>>,
}

impl Clone for AlphaCEWitness {
    fn clone(&self) -> Self {
        AlphaCEWitness::new(self.psi.clone(), self.bound.clone())
    }
}

impl std::fmt::Debug for AlphaCEWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AlphaCEWitness(psi={:?}, bound={})", self.psi, self.bound)
    }
}

/// One observed convergence of ψ at `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergence {
    pub ordinal: OrdinalCNF,
    pub value: bool,
    /// First stage at which the convergence is observed.
    pub observed_at: u64,
}

/// Largest ordinal code the evaluator will scan. Codes are dovetailed
/// against budgets anyway; this only guards against quadratic blowup when
/// budgets are huge.
const CODE_HORIZON: u64 = 200_000;

impl AlphaCEWitness {
    pub fn new(psi: ProgramIndex, bound: OrdinalCNF) -> AlphaCEWitness {
        AlphaCEWitness { psi, bound, cache: Default::default() }
    }

    /// All convergences of ψ(n, ·) observable within `budget` stages,
    /// sorted by observation stage. The scan walks canonical ordinal codes
    /// below the bound, dovetailed against step budgets.
    pub fn convergences(&self, n: &Nat, budget: u64) -> Vec<Convergence> {
        if let Some((h, table)) = self.cache.borrow().get(n) {
            if *h >= budget {
                return table.iter().filter(|c| c.observed_at <= budget).cloned().collect();
            }
        }
        let exec = Exec::new(self.psi.clone());
        let mut seen: Vec<Convergence> = Vec::new();
        for (code, ordinal) in
            crate::ordinal::ordinal_codes_below(&self.bound, budget.min(CODE_HORIZON))
        {
            if code > budget {
                continue;
            }
            let per_code_budget = budget - code;
            let r = exec.run2(n, &Nat::from(code), per_code_budget);
            if !r.halted() {
                continue;
            }
            let value = !r.outcome.value().unwrap().is_zero();
            // Observation stage: runtime dovetailed with the code, delayed
            // past the units digit.
            let observed_at = (r.steps + code).max(ordinal.units() + 2);
            if observed_at > budget {
                continue;
            }
            seen.push(Convergence { ordinal, value, observed_at });
        }
        seen.sort_by_key(|c| c.observed_at);
        self.cache
            .borrow_mut()
            .insert(n.clone(), (budget, std::rc::Rc::new(seen.clone())));
        seen
    }

    /// Least converged ordinal at stage `s`, with its value.
    pub fn eval(&self, n: &Nat, s: u64) -> EvalOutcome {
        let mut best: Option<(OrdinalCNF, bool)> = None;
        for c in self.convergences(n, s) {
            match &best {
                Some((o, _)) if *o <= c.ordinal => {}
                _ => best = Some((c.ordinal, c.value)),
            }
        }
        match best {
            Some((ordinal, value)) => EvalOutcome::Resolved { ordinal, value },
            None => EvalOutcome::Unresolved,
        }
    }

    /// The desk-scale stand-in for the approximated set's value at `n`.
    pub fn limit_value(&self, n: &Nat, budget: u64) -> Option<bool> {
        match self.eval(n, budget) {
            EvalOutcome::Resolved { value, .. } => Some(value),
            EvalOutcome::Unresolved => None,
        }
    }

    /// Stage-by-stage mind-change history at `n`: the succession of
    /// least-converged ordinals with their values.
    pub fn state(&self, n: &Nat, budget: u64) -> WitnessState {
        let mut history: Vec<(u64, OrdinalCNF, bool)> = Vec::new();
        for c in self.convergences(n, budget) {
            let better = match history.last() {
                None => true,
                Some((_, o, _)) => c.ordinal < *o,
            };
            if better {
                history.push((c.observed_at, c.ordinal, c.value));
            }
        }
        WitnessState { history }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalOutcome {
    Resolved { ordinal: OrdinalCNF, value: bool },
    Unresolved,
}

impl EvalOutcome {
    pub fn value(&self) -> Option<bool> {
        match self {
            EvalOutcome::Resolved { value, .. } => Some(*value),
            EvalOutcome::Unresolved => None,
        }
    }
}

/// Mind-change history: recorded ordinals strictly decrease.
#[derive(Clone, Debug, Default)]
pub struct WitnessState {
    pub history: Vec<(u64, OrdinalCNF, bool)>,
}

impl WitnessState {
    pub fn is_strictly_decreasing(&self) -> bool {
        self.history.windows(2).all(|w| w[1].1 < w[0].1)
    }

    pub fn flips(&self) -> usize {
        self.history.len().saturating_sub(1)
    }
}

/// Point-wise comparison report between a witness limit and a reference
/// function, quantified only over points resolved within budget.
#[derive(Clone, Debug, Default, Serialize)]
pub struct LimitReport {
    pub resolved: Vec<u64>,
    pub unresolved: Vec<u64>,
    pub mismatched: Vec<u64>,
}

impl LimitReport {
    pub fn ok(&self) -> bool {
        self.mismatched.is_empty()
    }
}

/// Compare `limit_value` against `reference` on `0..domain`.
pub fn compare_limits(
    w: &AlphaCEWitness,
    reference: &dyn Fn(u64) -> bool,
    domain: u64,
    budget: u64,
) -> LimitReport {
    let mut report = LimitReport::default();
    for n in 0..domain {
        match w.limit_value(&Nat::from(n), budget) {
            None => report.unresolved.push(n),
            Some(v) => {
                if v == reference(n) {
                    report.resolved.push(n);
                } else {
                    report.mismatched.push(n);
                }
            }
        }
    }
    report
}

#[derive(Debug, thiserror::Error)]
pub enum ErshovError {
    #[error("bound function diverged at n = {n} within budget")]
    NonTotalBound { n: u64 },
    #[error("witness unresolved at n = {n} within budget {budget}")]
    UnresolvedPoint { n: u64, budget: u64 },
    #[error("witness bound {bound} is not ω^{expected}")]
    WrongBound { bound: String, expected: usize },
}
