//! Controlled index plans: the `g`, `h`, `k` tables.
//!
//! A plan reserves, for each point `n`, a block of `h(n)` slot indices
//! `k(n, 0) < … < k(n, h(n)−1)` strictly between `g(n−1)` and `g(n)`, where
//! `h` satisfies the recurrence `h(n) = Σ_{t<n} h(t) + Σ_{t=1}^{g(n−1)}
//! (t²−t)/2 + i_n` — a number that dwarfs everything materializable past
//! level one. The slots actually declared by a construction (always a
//! short prefix) are ordinary program texts, ordered among themselves and
//! above `g(n−1)` by text length. The unreachable tail lives in the
//! numbering's padding family: `k(n, r) = pad(d_n, r)` for a level diverger
//! `d_n`, and `g(n) = pad(s_n, h(n))` for the level's scanner — Cantor
//! pairing makes those codes strictly monotone, so the whole chain holds
//! with nothing astronomic ever written out.
//!
//! The recursion-theorem closure is realized at the table level: a plan is
//! a fixed point of the procedure in the sense that rebuilding it from its
//! own recorded declarations reproduces it bit for bit, which
//! [`ControlledIndexPlan::verify_closure`] checks.

use crate::machine::asm::{pad_text_to_nibbles, Asm};
use crate::machine::code::{nibbles, pad_index};
use crate::machine::{encode, Instruction, Program, ProgramIndex};
use crate::nat::Nat;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

/// Controlled bodies allocate scratch from here; the dead tag alphabet
/// stays below.
const BODY_REG_BASE: u32 = 24;
const DIVERGER_REG: u32 = 23;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlanLevel {
    pub n: u64,
    pub i_n: u64,
    /// The slot budget h(n).
    pub h: Nat,
    /// Declared values of the used k-slots, in slot order.
    pub declared: Vec<u64>,
    /// Positions the controlled functional scans (halts on reading a 1).
    pub scan_positions: Vec<u64>,
    #[serde(skip)]
    pub used_slots: Vec<ProgramIndex>,
    #[serde(skip)]
    pub diverger_base: ProgramIndex,
    #[serde(skip)]
    pub g: ProgramIndex,
}

#[derive(Clone, Debug)]
pub struct ControlledIndexPlan {
    pub q: u64,
    pub i_table: Vec<u64>,
    pub levels: Vec<PlanLevel>,
}

fn tri_sum(m: &Nat) -> Nat {
    // Σ_{t=1}^{m} (t²−t)/2 = (m³ − m)/6
    let m = m.to_big();
    let cube = &m * &m * &m;
    Nat::from_big((cube - m) / BigUint::from(6u32))
}

/// Dead tag spelling `q` (base 8 over registers 8..=15); purely textual.
fn q_tag(q: u64) -> Vec<Instruction> {
    let mut digits = Vec::new();
    let mut v = q;
    for _ in 0..4 {
        digits.push((v % 8) as u8);
        v /= 8;
    }
    assert_eq!(v, 0, "q exceeds the tag width");
    digits.into_iter().rev().map(|d| Instruction::Inc(8 + d as u32)).collect()
}

fn const_body(q: u64, v: u64) -> Program {
    let mut a = Asm::new(BODY_REG_BASE);
    a.load_const(crate::machine::isa::REG_OUT, &Nat::from(v));
    a.halt();
    let mut instructions = q_tag(q);
    let body = a.assemble();
    let shift = instructions.len() as u32;
    instructions.extend(body.instructions.iter().map(|ins| match *ins {
        Instruction::DecJz(r, t) => Instruction::DecJz(r, t.min(body.len() as u32) + shift),
        other => other,
    }));
    Program::new(instructions)
}

fn diverger_text(q: u64) -> Program {
    let mut instructions = q_tag(q);
    let at = instructions.len() as u32;
    instructions.push(Instruction::DecJz(DIVERGER_REG, at));
    Program::new(instructions)
}

fn scanner_text(q: u64, positions: &[u64]) -> Program {
    let mut a = Asm::new(BODY_REG_BASE);
    for &pos in positions {
        let preg = a.fresh();
        let ans = a.fresh();
        a.load_const(preg, &Nat::from(pos));
        a.qry(preg, ans);
        let next = a.label();
        a.decjz(ans, next);
        a.halt();
        a.place(next);
    }
    a.diverge();
    let body = a.assemble();
    let mut instructions = q_tag(q);
    let shift = instructions.len() as u32;
    instructions.extend(body.instructions.iter().map(|ins| match *ins {
        Instruction::DecJz(r, t) => Instruction::DecJz(r, t.min(body.len() as u32) + shift),
        other => other,
    }));
    Program::new(instructions)
}

impl ControlledIndexPlan {
    /// `k(n, r)`: a declared slot's text code, or a padding-family code of
    /// the level diverger for the unreachable tail.
    pub fn k_slot(&self, n: u64, r: &Nat) -> ProgramIndex {
        let level = &self.levels[n as usize];
        assert!(*r < level.h, "slot rank beyond h(n)");
        match r.to_u64() {
            Some(small) if (small as usize) < level.used_slots.len() => {
                level.used_slots[small as usize].clone()
            }
            _ => pad_index(&level.diverger_base, r),
        }
    }

    pub fn g(&self, n: u64) -> &ProgramIndex {
        &self.levels[n as usize].g
    }

    pub fn h(&self, n: u64) -> &Nat {
        &self.levels[n as usize].h
    }

    /// `g(n−1) < k(n,0) < … < k(n, h(n)−1) < g(n)`, sampled at every used
    /// slot plus the extremes of the unused tail.
    pub fn ordering_chain_ok(&self, n: u64) -> bool {
        let level = &self.levels[n as usize];
        let mut samples: Vec<Nat> = (0..level.used_slots.len() as u64).map(Nat::from).collect();
        samples.push(Nat::ZERO);
        samples.push(Nat::from(level.used_slots.len() as u64));
        samples.push(level.h.sub_sat(&Nat::ONE));
        if level.h > Nat::from(2u64) {
            samples.push(level.h.sub_sat(&Nat::from(2u64)));
        }
        samples.sort();
        samples.dedup();
        samples.retain(|r| *r < level.h);
        let mut prev = if n == 0 {
            Nat::ZERO
        } else {
            self.levels[n as usize - 1].g.0.clone()
        };
        for r in &samples {
            let code = self.k_slot(n, r).0;
            if code <= prev {
                return false;
            }
            prev = code;
        }
        prev < level.g.0
    }

    /// The h recurrence against its closed evaluation.
    pub fn h_recurrence_ok(&self) -> bool {
        let mut sum_h = Nat::ZERO;
        for (idx, level) in self.levels.iter().enumerate() {
            let expected = if idx == 0 {
                Nat::from(level.i_n)
            } else {
                let g_prev = &self.levels[idx - 1].g.0;
                sum_h.add(&tri_sum(g_prev)).add(&Nat::from(level.i_n))
            };
            if level.h != expected {
                return false;
            }
            sum_h = sum_h.add(&level.h);
        }
        true
    }

    /// Rebuild the plan from its own recorded tables and compare: the
    /// table-level fixed point of the Θ procedure.
    pub fn verify_closure(&self) -> bool {
        let declared: Vec<Vec<u64>> = self.levels.iter().map(|l| l.declared.clone()).collect();
        let scans: Vec<Vec<u64>> = self.levels.iter().map(|l| l.scan_positions.clone()).collect();
        let rebuilt = build_theta_plan_declared(&self.i_table, self.q, &declared, &scans);
        rebuilt.levels.len() == self.levels.len()
            && rebuilt.levels.iter().zip(self.levels.iter()).all(|(a, b)| {
                a.g.0 == b.g.0
                    && a.h == b.h
                    && a.used_slots.iter().zip(b.used_slots.iter()).all(|(x, y)| x.0 == y.0)
            })
    }
}

/// The Θ procedure over recorded declarations: used k-slots carry constant
/// loaders for the declared values, `g(n)` scans the declared positions.
pub fn build_theta_plan_declared(
    i_table: &[u64],
    q: u64,
    declared: &[Vec<u64>],
    scans: &[Vec<u64>],
) -> ControlledIndexPlan {
    assert_eq!(i_table.len(), declared.len());
    assert_eq!(i_table.len(), scans.len());
    let mut plan = ControlledIndexPlan { q, i_table: i_table.to_vec(), levels: Vec::new() };
    let mut sum_h = Nat::ZERO;
    for (n, &i_n) in i_table.iter().enumerate() {
        let h = if n == 0 {
            Nat::from(i_n)
        } else {
            let g_prev = &plan.levels[n - 1].g.0;
            sum_h.add(&tri_sum(g_prev)).add(&Nat::from(i_n))
        };
        assert!(
            Nat::from(declared[n].len()) <= h,
            "level {n} declared more slots than h(n) reserves"
        );
        // Everything at this level must exceed g(n−1) as a number, which a
        // text does once it outgrows g(n−1)'s digit count.
        let floor_nibbles = if n == 0 {
            1
        } else {
            (plan.levels[n - 1].g.0.bits() as usize) / 4 + 2
        };
        let mut min_nibbles = floor_nibbles;
        let mut used_slots = Vec::new();
        for &v in &declared[n] {
            let text = pad_text_to_nibbles(&const_body(q, v), min_nibbles);
            min_nibbles = nibbles(&text).len() + 1;
            used_slots.push(encode(&text));
        }
        let div_text = pad_text_to_nibbles(&diverger_text(q), min_nibbles);
        min_nibbles = nibbles(&div_text).len() + 1;
        let diverger_base = encode(&div_text);
        let scan_text = pad_text_to_nibbles(&scanner_text(q, &scans[n]), min_nibbles);
        let scanner_base = encode(&scan_text);
        let g = pad_index(&scanner_base, &h);
        plan.levels.push(PlanLevel {
            n: n as u64,
            i_n,
            h: h.clone(),
            declared: declared[n].clone(),
            scan_positions: scans[n].clone(),
            used_slots,
            diverger_base,
            g,
        });
        sum_h = sum_h.add(&h);
    }
    plan
}

/// A bare plan with reserved but undeclared slots
/// (every controlled program still a diverger).
pub fn build_theta_plan(i_table: &[u64], q: u64) -> ControlledIndexPlan {
    let empty: Vec<Vec<u64>> = i_table.iter().map(|_| Vec::new()).collect();
    build_theta_plan_declared(i_table, q, &empty, &empty)
}
