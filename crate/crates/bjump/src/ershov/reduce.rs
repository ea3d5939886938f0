//! 1-reductions from Ershov levels into iterated bounded jumps of ∅, and
//! the classical bridge `X ≤_bT ∅′ ⟺ X is ω-c.e.`
//!
//! The staged interrogation programs ask membership questions about the
//! approximating ψ. Those questions are Σ₁ facts; the workbench settles
//! them at the construction horizon and plants them as *spot* programs from
//! the small-code zoo — tiny oracle-free halters and divergers whose
//! membership in `∅^b` (and in the higher jumps) is then established by
//! genuine enumeration. Spot codes stay small enough to load into unary
//! registers, which is what makes the compiled interrogation trees
//! runnable.

use super::{AlphaCEWitness, ErshovError};
use crate::machine::asm::{self, Asm};
use crate::machine::isa::{REG_IN, REG_OUT, REG_SCRATCH0};
use crate::machine::{encode, pad, run, Exec, ProgramIndex, StepOutcome};
use crate::nat::Nat;
use crate::oracle::BTWitness;
use crate::ordinal::OrdinalCNF;
use std::collections::BTreeMap;

/// Hands out distinct small-code halters and divergers; a halter is
/// planted for a true question, a diverger for a false one.
pub struct SpotAllocator {
    halters: Vec<ProgramIndex>,
    divergers: Vec<ProgramIndex>,
    next_halter: usize,
    next_diverger: usize,
    max_allocated: Nat,
}

impl SpotAllocator {
    pub fn new() -> SpotAllocator {
        SpotAllocator {
            halters: asm::zoo_halters(1200),
            divergers: asm::zoo_divergers(1200),
            next_halter: 0,
            next_diverger: 0,
            max_allocated: Nat::ZERO,
        }
    }

    pub fn plant(&mut self, truth: bool) -> ProgramIndex {
        let e = if truth {
            let e = self.halters[self.next_halter].clone();
            self.next_halter += 1;
            e
        } else {
            let e = self.divergers[self.next_diverger].clone();
            self.next_diverger += 1;
            e
        };
        if e.0 > self.max_allocated {
            self.max_allocated = e.0.clone();
        }
        e
    }

    /// A position strictly above every planted spot.
    pub fn cover(&self) -> Nat {
        self.max_allocated.add_u64(1)
    }
}

impl Default for SpotAllocator {
    fn default() -> Self {
        SpotAllocator::new()
    }
}

/// One planted membership question.
#[derive(Clone, Debug)]
pub struct Spot {
    pub question: String,
    pub index: ProgramIndex,
    pub truth: bool,
}

/// The data of a staged 1-reduction `n ∈ A ⟺ f(n) ∈ ∅^{kb}` on a finite
/// domain. `f` is the uniformly computed table of interrogation programs;
/// `hint(n)` is a total bound-witness index ≤ f(n) whose value covers every
/// queried position, so the membership quantifier can find it.
#[derive(Debug)]
pub struct StagedReduction {
    pub level: usize,
    pub f: BTreeMap<u64, ProgramIndex>,
    pub hints: BTreeMap<u64, ProgramIndex>,
    pub u: BTreeMap<u64, Nat>,
    pub spots: Vec<Spot>,
    /// Per point: (first-seen block index g, least block index p).
    pub blocks: BTreeMap<u64, (u64, u64)>,
}

impl StagedReduction {
    pub fn f_is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.f.values().all(|e| seen.insert(e.0.clone()))
    }
}

/// `A ≤_1 ∅^{2b}` base case: from an ω²-c.e. witness, per-point programs
/// `Φ_{f(n)}` that find the least active ω-block through planted `∅^b`
/// questions, then the least convergent offset inside it, and halt iff the
/// recorded value there is 1.
pub fn erbase_reduce(
    w: &AlphaCEWitness,
    domain: u64,
    horizon: u64,
) -> Result<StagedReduction, ErshovError> {
    if w.bound != OrdinalCNF::omega_term(2, 1) {
        return Err(ErshovError::WrongBound { bound: w.bound.to_string(), expected: 2 });
    }
    let mut spots = SpotAllocator::new();
    let mut out = StagedReduction {
        level: 2,
        f: BTreeMap::new(),
        hints: BTreeMap::new(),
        u: BTreeMap::new(),
        spots: Vec::new(),
        blocks: BTreeMap::new(),
    };

    for n in 0..domain {
        let conv = w.convergences(&Nat::from(n), horizon);
        if conv.is_empty() {
            return Err(ErshovError::UnresolvedPoint { n, budget: horizon });
        }
        // g(n): block index of the first observed convergence; q(x, n):
        // first offset observed in block x; the least offset carries the
        // block's settled value.
        let g_n = conv[0].ordinal.coeff(1);
        let mut first_seen: BTreeMap<u64, u64> = BTreeMap::new();
        let mut least: BTreeMap<u64, (u64, bool)> = BTreeMap::new();
        for c in &conv {
            let (i, j) = (c.ordinal.coeff(1), c.ordinal.coeff(0));
            first_seen.entry(i).or_insert(j);
            match least.get(&i) {
                Some(&(jj, _)) if jj <= j => {}
                _ => {
                    least.insert(i, (j, c.value));
                }
            }
        }
        let p_n = *least.keys().min().unwrap();
        out.blocks.insert(n, (g_n, p_n));

        // Plant the question spots and build the interrogation tree.
        let mut a = Asm::new(REG_SCRATCH0);
        let diverge = a.label();
        for x in 0..=g_n {
            let block_active = least.contains_key(&x);
            let r_spot = spots.plant(block_active);
            out.spots.push(Spot {
                question: format!("exists m: psi({n}, w*{x}+m) converges"),
                index: r_spot.clone(),
                truth: block_active,
            });
            let preg = a.fresh();
            let ans = a.fresh();
            a.load_const(preg, &r_spot.0);
            a.qry(preg, ans);
            let next_block = a.label();
            a.decjz(ans, next_block);
            if block_active {
                let t = first_seen[&x];
                let (least_j, value) = least[&x];
                for z in 0..=t.min(least_j) {
                    let h_truth = least_j <= z;
                    let h_spot = spots.plant(h_truth);
                    out.spots.push(Spot {
                        question: format!("exists m <= {z}: psi({n}, w*{x}+m) converges"),
                        index: h_spot.clone(),
                        truth: h_truth,
                    });
                    let hreg = a.fresh();
                    let hans = a.fresh();
                    a.load_const(hreg, &h_spot.0);
                    a.qry(hreg, hans);
                    let miss = a.label();
                    a.decjz(hans, miss);
                    // ψ(n, ω·x + z) is converged only at z = least_j; a hit
                    // below that has no value to report and diverges.
                    if h_truth && value {
                        a.halt();
                    } else {
                        a.jmp(diverge);
                    }
                    a.place(miss);
                }
            }
            a.jmp(diverge);
            a.place(next_block);
        }
        a.jmp(diverge);
        a.place(diverge);
        a.diverge();
        let tree_program = a.assemble();

        // Bound witnesses: constant functions covering every spot position;
        // one per block index, all below f(n).
        let bound_value = spots.cover();
        let mut v_indices: Vec<ProgramIndex> = Vec::new();
        for i in 0..=g_n {
            v_indices.push(pad(
                &encode(&asm::const_loader(&bound_value)),
                &Nat::pair(&Nat::from(i), &Nat::from(n)),
            ));
        }
        let u_n = v_indices.iter().map(|e| e.0.clone()).max().unwrap();
        let hint = v_indices[p_n as usize].clone();
        let f_n = pad(&encode(&tree_program), &Nat::pair(&u_n, &Nat::from(n)));
        assert!(f_n.0 > u_n);
        assert!(hint.0 <= f_n.0);
        out.u.insert(n, u_n);
        out.hints.insert(n, hint);
        out.f.insert(n, f_n);
    }
    Ok(out)
}

/// The per-slice data produced while reducing an ω³-c.e. witness.
#[derive(Debug)]
pub struct SlicePlan {
    pub block: u64,
    /// Index from the induction hypothesis: the base-case `f(n)` of the
    /// single-point slice witness.
    pub e_index: ProgramIndex,
    /// The hint that goes with it when evaluating `e_index ∈ ∅^{2b}`.
    pub e_hint: ProgramIndex,
    /// The slice's limit value at the point.
    pub limit: bool,
}

pub struct Level3Output {
    pub reduction: StagedReduction,
    pub slices: BTreeMap<u64, Vec<SlicePlan>>,
}

/// `A ≤_1 ∅^{kb}` by induction on k; `k = 2` delegates to the base case,
/// `k = 3` runs [`inductive_level3`].
pub fn inductive_reduce(
    w: &AlphaCEWitness,
    k: usize,
    domain: u64,
    horizon: u64,
) -> Result<StagedReduction, ErshovError> {
    match k {
        2 => erbase_reduce(w, domain, horizon),
        3 => inductive_level3(w, domain, horizon).map(|o| o.reduction),
        _ => panic!("inductive_reduce implemented for k in {{2, 3}}"),
    }
}

/// The k = 3 step. Each active ω²-slice of ψ at the point is turned into a
/// single-point ω²-c.e. witness and reduced through the induction
/// hypothesis (a genuine recursive base-case call), giving `e_i(n)`. The
/// top interrogation tree finds the least active slice and asks for its
/// settled value. Oracle positions must stay register-loadable, so the
/// value question is asked through a planted spot equivalent to
/// `e_i(n) ∈ ∅^{2b}`; the slice plans retain the genuine `e_i(n)` indices
/// so that equivalence is itself checkable.
pub fn inductive_level3(
    w: &AlphaCEWitness,
    domain: u64,
    horizon: u64,
) -> Result<Level3Output, ErshovError> {
    if w.bound != OrdinalCNF::omega_term(3, 1) {
        return Err(ErshovError::WrongBound { bound: w.bound.to_string(), expected: 3 });
    }
    let mut spots = SpotAllocator::new();
    let mut out = StagedReduction {
        level: 3,
        f: BTreeMap::new(),
        hints: BTreeMap::new(),
        u: BTreeMap::new(),
        spots: Vec::new(),
        blocks: BTreeMap::new(),
    };
    let mut all_slices: BTreeMap<u64, Vec<SlicePlan>> = BTreeMap::new();

    for n in 0..domain {
        let conv = w.convergences(&Nat::from(n), horizon);
        if conv.is_empty() {
            return Err(ErshovError::UnresolvedPoint { n, budget: horizon });
        }
        let g_n = conv[0].ordinal.coeff(2);
        let mut active: BTreeMap<u64, Vec<(OrdinalCNF, bool, u64)>> = BTreeMap::new();
        for c in &conv {
            let b = c.ordinal.coeff(2);
            let inner = OrdinalCNF::new(vec![c.ordinal.coeff(0), c.ordinal.coeff(1)]);
            active.entry(b).or_default().push((inner, c.value, c.observed_at));
        }
        let p_n = *active.keys().min().unwrap();
        out.blocks.insert(n, (g_n, p_n));

        // Induction hypothesis per active slice ≤ g(n).
        let mut slice_plans: Vec<SlicePlan> = Vec::new();
        for (&b, entries) in active.iter().filter(|(&b, _)| b <= g_n) {
            let mut script_entries = Vec::new();
            for m in 0..=n {
                if m == n {
                    for (inner, value, time) in entries {
                        script_entries.push(super::script::ScriptEntry {
                            n: m,
                            ordinal: inner.clone(),
                            value: *value as u8,
                            time: *time,
                        });
                    }
                } else {
                    script_entries.push(super::script::ScriptEntry {
                        n: m,
                        ordinal: OrdinalCNF::ZERO,
                        value: 0,
                        time: 1,
                    });
                }
            }
            let slice_script = super::script::WitnessScript {
                bound: OrdinalCNF::omega_term(2, 1),
                entries: script_entries,
            };
            let slice_witness = slice_script.compile();
            let ih = erbase_reduce(&slice_witness, n + 1, horizon)?;
            let limit = slice_witness
                .limit_value(&Nat::from(n), horizon)
                .ok_or(ErshovError::UnresolvedPoint { n, budget: horizon })?;
            slice_plans.push(SlicePlan {
                block: b,
                e_index: ih.f[&n].clone(),
                e_hint: ih.hints[&n].clone(),
                limit,
            });
        }

        // Top tree against ∅^{2b}.
        let mut a = Asm::new(REG_SCRATCH0);
        let diverge = a.label();
        for x in 0..=g_n {
            let is_active = active.contains_key(&x);
            let member_spot = spots.plant(is_active);
            out.spots.push(Spot {
                question: format!("exists a < w^2: psi({n}, w^2*{x}+a) converges"),
                index: member_spot.clone(),
                truth: is_active,
            });
            let preg = a.fresh();
            let ans = a.fresh();
            a.load_const(preg, &member_spot.0);
            a.qry(preg, ans);
            let next_block = a.label();
            a.decjz(ans, next_block);
            if is_active {
                let limit = slice_plans.iter().find(|s| s.block == x).unwrap().limit;
                let value_spot = spots.plant(limit);
                out.spots.push(Spot {
                    question: format!("slice {x} of psi at {n} settles to 1"),
                    index: value_spot.clone(),
                    truth: limit,
                });
                let vreg = a.fresh();
                let vans = a.fresh();
                a.load_const(vreg, &value_spot.0);
                a.qry(vreg, vans);
                let no = a.label();
                a.decjz(vans, no);
                a.halt();
                a.place(no);
                a.jmp(diverge);
            } else {
                a.jmp(diverge);
            }
            a.place(next_block);
        }
        a.jmp(diverge);
        a.place(diverge);
        a.diverge();
        let tree_program = a.assemble();

        let bound_value = spots.cover();
        let hint = pad(
            &encode(&asm::const_loader(&bound_value)),
            &Nat::pair(&Nat::from(p_n), &Nat::from(n)),
        );
        let u_n = hint.0.clone();
        let f_n = pad(&encode(&tree_program), &Nat::pair(&u_n, &Nat::from(n)));
        assert!(f_n.0 > u_n && hint.0 <= f_n.0);
        out.u.insert(n, u_n);
        out.hints.insert(n, hint);
        out.f.insert(n, f_n);
        all_slices.insert(n, slice_plans);
    }
    Ok(Level3Output { reduction: out, slices: all_slices })
}

// ---------------------------------------------------------------------------
// the ω-c.e. ⟺ bT-below-∅′ bridge
// ---------------------------------------------------------------------------

pub struct OmegaCeBridge {
    pub witness: BTWitness,
    pub spots: Vec<Spot>,
}

/// From an ω-c.e. witness, a bounded-Turing reduction of its limit set to
/// ∅′ (realized against the stage approximation of ∅′): the functional
/// finds the least convergent guess ordinal through planted Σ₁ spots and
/// outputs the value recorded there.
pub fn bt_reduction_from_omega_ce(
    w: &AlphaCEWitness,
    domain: u64,
    horizon: u64,
) -> Result<OmegaCeBridge, ErshovError> {
    if w.bound != OrdinalCNF::omega() {
        return Err(ErshovError::WrongBound { bound: w.bound.to_string(), expected: 1 });
    }
    let mut spots = SpotAllocator::new();
    let mut spot_list = Vec::new();
    let mut per_n: Vec<Vec<(Nat, bool)>> = Vec::new();
    for n in 0..domain {
        let conv = w.convergences(&Nat::from(n), horizon);
        if conv.is_empty() {
            return Err(ErshovError::UnresolvedPoint { n, budget: horizon });
        }
        let least = conv.iter().min_by(|a, b| a.ordinal.cmp(&b.ordinal)).unwrap();
        let j_first = conv[0].ordinal.units();
        let mut chain = Vec::new();
        for j in 0..=j_first.min(least.ordinal.units()) {
            let truth = least.ordinal.units() <= j;
            let e = spots.plant(truth);
            spot_list.push(Spot {
                question: format!("exists j' <= {j}: psi({n}, j') converges"),
                index: e.clone(),
                truth,
            });
            chain.push((e.0.clone(), least.value));
            if truth {
                break;
            }
        }
        per_n.push(chain);
    }

    // Functional: dispatch on n, then walk the chain; on the first positive
    // spot, output the value settled at the least convergent guess.
    let mut a = Asm::new(REG_SCRATCH0);
    let diverge = a.label();
    let blocks: Vec<_> = (0..per_n.len()).map(|_| a.label()).collect();
    for lbl in &blocks {
        a.decjz(REG_IN, *lbl);
    }
    a.jmp(diverge);
    for (n, chain) in per_n.iter().enumerate() {
        a.place(blocks[n]);
        for (pos, value) in chain {
            let preg = a.fresh();
            let ans = a.fresh();
            a.load_const(preg, pos);
            a.qry(preg, ans);
            let miss = a.label();
            a.decjz(ans, miss);
            if *value {
                a.inc(REG_OUT);
            }
            a.halt();
            a.place(miss);
        }
        a.jmp(diverge);
    }
    a.place(diverge);
    a.diverge();
    let functional = encode(&a.assemble());
    let bound = encode(&asm::const_loader(&spots.cover()));
    Ok(OmegaCeBridge { witness: BTWitness { functional, bound }, spots: spot_list })
}

/// The stage approximation of ∅′ restricted below a bound, evaluated
/// lazily at the positions actually queried.
pub struct HaltingStageOracle {
    pub stage: u64,
    pub bound: Option<Nat>,
    cache: std::cell::RefCell<BTreeMap<Nat, bool>>,
}

impl HaltingStageOracle {
    pub fn new(stage: u64, bound: Option<Nat>) -> HaltingStageOracle {
        HaltingStageOracle { stage, bound, cache: Default::default() }
    }
}

impl crate::machine::OracleSource for HaltingStageOracle {
    fn answer(&self, pos: &Nat) -> crate::machine::OracleReply {
        if let Some(b) = &self.bound {
            if pos > b {
                return crate::machine::OracleReply::Bit(false);
            }
        }
        if let Some(&hit) = self.cache.borrow().get(pos) {
            return crate::machine::OracleReply::Bit(hit);
        }
        let hit = run(&ProgramIndex(pos.clone()), pos, self.stage).halted();
        self.cache.borrow_mut().insert(pos.clone(), hit);
        crate::machine::OracleReply::Bit(hit)
    }
}

/// From a reduction to ∅′ (functional + total bound), an ω-c.e. script for
/// the reduced set, driven by the stage approximation of ∅′ sampled at
/// doubling checkpoints up to the horizon.
pub fn omega_ce_witness_from_bt(
    bt: &BTWitness,
    domain: u64,
    horizon: u64,
) -> Result<super::script::WitnessScript, ErshovError> {
    let functional = Exec::new(bt.functional.clone());
    let bound = Exec::new(bt.bound.clone());
    let mut checkpoints: Vec<u64> = Vec::new();
    let mut s = 1u64;
    while s < horizon {
        checkpoints.push(s);
        s = s.saturating_mul(2);
    }
    checkpoints.push(horizon);
    let mut entries = Vec::new();
    for n in 0..domain {
        let g_n = match bound.run(&Nat::from(n), horizon).outcome {
            StepOutcome::Halted(v) => v,
            _ => return Err(ErshovError::NonTotalBound { n }),
        };
        let mut kappa = checkpoints.len() as u64 + 1;
        let mut last_value: Option<bool> = None;
        for &stage in &checkpoints {
            let oracle = HaltingStageOracle::new(stage, Some(g_n.clone()));
            let r = functional.run_oracle(&Nat::from(n), &oracle, horizon);
            if let StepOutcome::Halted(v) = r.outcome {
                let value = !v.is_zero();
                if last_value != Some(value) {
                    kappa -= 1;
                    entries.push(super::script::ScriptEntry {
                        n,
                        ordinal: OrdinalCNF::from_nat(kappa),
                        value: value as u8,
                        time: stage,
                    });
                    last_value = Some(value);
                }
            }
        }
        if last_value.is_none() {
            return Err(ErshovError::UnresolvedPoint { n, budget: horizon });
        }
    }
    Ok(super::script::WitnessScript { bound: OrdinalCNF::omega(), entries })
}
