//! The strictness diagonalization: refute a claimed witness `(Γ, g)` for
//! `A^b ≤_bT A`.
//!
//! The constructed program reads its own index from `r2`, runs Γ on it
//! against the live oracle, outputs 0 when Γ says 0, and diverges when Γ
//! says 1 (the self-application `Φ_m(m) = Φ_m(m) + 1` that the value-1
//! branch forces has no convergent solution, so divergence is its honest
//! realization). The index transformer is constant, so its Kleene fixed
//! points are the padding orbit of the program itself; `m` is picked above
//! the index of `g`, which the refutation argument needs.

use crate::jump::{b_member, JumpWitness, MemberStatus, StagePolicy};
use crate::machine::asm::{Asm, QryMode};
use crate::machine::isa::{REG_SCRATCH0, REG_SELF};
use crate::machine::{decode, encode, pad, run_program, Exec, ProgramIndex, StepOutcome};
use crate::nat::Nat;
use crate::oracle::FiniteSetOracle;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum DiagError {
    #[error("claimed bound g diverged on probe {probe} within budget")]
    NonTotalBound { probe: Nat },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "branch", rename_all = "kebab-case")]
pub enum RefutationBranch {
    /// Γ^A(m) = 1 claims `m ∈ A^b`, forcing `Φ_m^A(m) = Φ_m^A(m) + 1`;
    /// both self-applications stay divergent and the enumeration never
    /// enrolls m.
    ValueContradiction { gamma_value: u64, phi_m_still_running: bool },
    /// Γ^A(m) = 0 claims `m ∉ A^b`, but the enumeration exhibits m with a
    /// concrete witness.
    MembershipContradiction { witness: JumpWitness },
    /// Γ under the restriction `A↾g(m)` failed to settle within budget,
    /// contradicting the claimed bounded totality.
    BoundedDivergence { bound: Nat },
    BudgetUnresolved,
}

#[derive(Debug, Serialize)]
pub struct DiagReport {
    pub m: Nat,
    pub branch: RefutationBranch,
    /// φ_m ≡ φ_{f(m)} verified extensionally on a small grid.
    pub fixed_point_checked: bool,
}

/// Build the diagonal program text for a claimed functional Γ.
fn diagonal_text(gamma: &ProgramIndex) -> crate::machine::Program {
    let gamma_text = decode(gamma);
    let mut a = Asm::new(REG_SCRATCH0);
    let gres = a.fresh();
    // Γ applied to this program's own index, against the host oracle.
    a.inline(&gamma_text, REG_SELF, gres, QryMode::Plain);
    let zero_case = a.label();
    a.decjz(gres, zero_case);
    a.diverge();
    a.place(zero_case);
    a.halt();
    a.assemble()
}

/// Run the refutation: find a fixed point `m > index(g)` of the diagonal
/// transformer and report which branch kills `(Γ, g)` over the decidable
/// base within the budget.
pub fn diagonalize_strinc(
    gamma: &ProgramIndex,
    g: &ProgramIndex,
    base: &FiniteSetOracle,
    budget: u64,
) -> Result<DiagReport, DiagError> {
    // g must behave like a total bound on the probes (and later on m).
    let g_exec = Exec::new(g.clone());
    for p in 0..8u64 {
        if !g_exec.run(&Nat::from(p), budget).halted() {
            return Err(DiagError::NonTotalBound { probe: Nat::from(p) });
        }
    }

    let f_text = diagonal_text(gamma);
    let f_index = encode(&f_text);
    // The transformer e ↦ f_index is constant, so every index equivalent to
    // f_index is a fixed point; padding puts one above index(g).
    let m = pad(&f_index, &g.0.add_u64(1));
    let fixed_point_checked = crate::machine::acceptable::extensionally_equal(
        &m,
        &f_index,
        &(0u64..5).map(Nat::from).collect::<Vec<_>>(),
        budget.min(50_000),
    );

    let gamma_run = run_program(&decode(gamma), &gamma.0, &[&m.0], base, budget);
    let branch = match gamma_run.outcome {
        StepOutcome::Halted(v) if !v.is_zero() => {
            // Γ claims m ∈ A^b. The fixed point makes Φ_m's value branch
            // self-incrementing, so m's runs must stay divergent.
            let phi_m = run_program(&decode(&m), &m.0, &[&m.0], base, budget);
            RefutationBranch::ValueContradiction {
                gamma_value: v.to_u64().unwrap_or(u64::MAX),
                phi_m_still_running: !phi_m.outcome.halted(),
            }
        }
        StepOutcome::Halted(_) => {
            // Γ claims m ∉ A^b; the index of g itself is below m and its
            // value bounds the oracle use, so the enumeration can answer.
            let policy = StagePolicy::with_scan(budget, 64).hint(m.0.clone(), vec![g.clone()]);
            let record = b_member(base, &m.0, &policy);
            match record.status {
                MemberStatus::In => RefutationBranch::MembershipContradiction {
                    witness: record.witness.unwrap(),
                },
                MemberStatus::OutAtStage => {
                    // Neither side settles: probe Γ under the restriction.
                    let StepOutcome::Halted(bound) = g_exec.run(&m.0, budget).outcome else {
                        return Err(DiagError::NonTotalBound { probe: m.0.clone() });
                    };
                    let restricted = base.restrict(&bound);
                    let r = run_program(&decode(gamma), &gamma.0, &[&m.0], &restricted, budget);
                    if r.outcome.halted() {
                        RefutationBranch::BudgetUnresolved
                    } else {
                        RefutationBranch::BoundedDivergence { bound }
                    }
                }
            }
        }
        _ => RefutationBranch::BudgetUnresolved,
    };
    Ok(DiagReport { m: m.0, branch, fixed_point_checked })
}

/// The three stock claimants used by the verification suite.
pub fn stock_claimants() -> Vec<(&'static str, ProgramIndex, ProgramIndex)> {
    use crate::machine::asm;
    use crate::machine::Instruction as I;
    let g = encode(&asm::const_loader(&Nat::from(50u64)));
    vec![
        ("constant-0", encode(&crate::machine::Program::new(vec![I::Halt])), g.clone()),
        (
            "constant-1",
            encode(&crate::machine::Program::new(vec![I::Inc(1), I::Halt])),
            g.clone(),
        ),
        ("oracle-echo", encode(&crate::machine::Program::new(vec![I::Qry(0, 1), I::Halt])), g),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_zero_claimant_refuted_by_membership() {
        let (_, gamma, g) = stock_claimants().remove(0);
        let report =
            diagonalize_strinc(&gamma, &g, &FiniteSetOracle::empty(), 100_000).unwrap();
        assert!(report.fixed_point_checked);
        match report.branch {
            RefutationBranch::MembershipContradiction { ref witness } => {
                assert!(witness.i <= report.m);
            }
            ref other => panic!("expected membership contradiction, got {other:?}"),
        }
    }

    #[test]
    fn constant_one_claimant_hits_value_contradiction() {
        let claimants = stock_claimants();
        let (_, gamma, g) = claimants[1].clone();
        let report =
            diagonalize_strinc(&gamma, &g, &FiniteSetOracle::empty(), 100_000).unwrap();
        match report.branch {
            RefutationBranch::ValueContradiction { gamma_value, phi_m_still_running } => {
                assert_eq!(gamma_value, 1);
                assert!(phi_m_still_running);
            }
            ref other => panic!("expected value contradiction, got {other:?}"),
        }
    }

    #[test]
    fn echo_claimant_refuted_over_evens() {
        let claimants = stock_claimants();
        let (_, gamma, g) = claimants[2].clone();
        let evens = FiniteSetOracle::from_u64((0..40).filter(|n| n % 2 == 0));
        let report = diagonalize_strinc(&gamma, &g, &evens, 100_000).unwrap();
        // m is a huge even-or-odd number far outside the finite base, so
        // Γ^A(m) = A(m) = 0 and the membership branch fires.
        match report.branch {
            RefutationBranch::MembershipContradiction { .. } => {}
            ref other => panic!("expected membership contradiction, got {other:?}"),
        }
    }

    #[test]
    fn divergent_bound_rejected() {
        let claimants = stock_claimants();
        let (_, gamma, _) = claimants[0].clone();
        let bad_g = encode(&crate::machine::Program::diverger());
        assert!(matches!(
            diagonalize_strinc(&gamma, &bad_g, &FiniteSetOracle::empty(), 20_000),
            Err(DiagError::NonTotalBound { .. })
        ));
    }
}
