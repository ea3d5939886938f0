//! Program construction toolkit.
//!
//! Everything the reduction theorems need to do to program *text* lives
//! here: constant loaders, destructive moves, comparisons, inlining one
//! program inside another (with register renaming and halt rewiring), and
//! rewriting oracle queries to respect a use bound. All arithmetic is unary,
//! so runtimes are linear in the values moved; compiled programs keep the
//! values they touch at desk scale.

use super::isa::{Instruction, Program, REG_IN, REG_OUT, REG_SCRATCH0, REG_SELF};
use crate::nat::Nat;

/// A forward-referenceable jump target.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Label(usize);

enum Op {
    Fixed(Instruction),
    DecJz(u32, Label),
}

/// Label-based assembler over the four-instruction ISA.
pub struct Asm {
    ops: Vec<Op>,
    labels: Vec<Option<usize>>,
    next_reg: u32,
    zero_reg: Option<u32>,
}

impl Asm {
    /// `base_reg` is the first register handed out as scratch; it must be
    /// above every register the caller wires in manually.
    pub fn new(base_reg: u32) -> Asm {
        Asm {
            ops: Vec::new(),
            labels: Vec::new(),
            next_reg: base_reg.max(REG_SCRATCH0),
            zero_reg: None,
        }
    }

    pub fn fresh(&mut self) -> u32 {
        let r = self.next_reg;
        self.next_reg += 1;
        r
    }

    /// A register that is never incremented, so `DECJZ` on it is an
    /// unconditional jump.
    pub fn zero(&mut self) -> u32 {
        match self.zero_reg {
            Some(z) => z,
            None => {
                let z = self.fresh();
                self.zero_reg = Some(z);
                z
            }
        }
    }

    pub fn label(&mut self) -> Label {
        self.labels.push(None);
        Label(self.labels.len() - 1)
    }

    pub fn place(&mut self, l: Label) {
        debug_assert!(self.labels[l.0].is_none(), "label placed twice");
        self.labels[l.0] = Some(self.ops.len());
    }

    pub fn here(&mut self) -> Label {
        let l = self.label();
        self.place(l);
        l
    }

    pub fn inc(&mut self, r: u32) {
        self.ops.push(Op::Fixed(Instruction::Inc(r)));
    }

    pub fn decjz(&mut self, r: u32, l: Label) {
        self.ops.push(Op::DecJz(r, l));
    }

    pub fn qry(&mut self, a: u32, d: u32) {
        self.ops.push(Op::Fixed(Instruction::Qry(a, d)));
    }

    pub fn halt(&mut self) {
        self.ops.push(Op::Fixed(Instruction::Halt));
    }

    pub fn jmp(&mut self, l: Label) {
        let z = self.zero();
        self.decjz(z, l);
    }

    /// Loop forever.
    pub fn diverge(&mut self) {
        let l = self.here();
        self.jmp(l);
    }

    /// Destructive move: add `src` into each of `dsts`, leaving `src` zero.
    pub fn mv(&mut self, src: u32, dsts: &[u32]) {
        let top = self.here();
        let end = self.label();
        self.decjz(src, end);
        for &d in dsts {
            self.inc(d);
        }
        self.jmp(top);
        self.place(end);
    }

    /// Set `r` to zero by draining it.
    pub fn clear(&mut self, r: u32) {
        self.mv(r, &[]);
    }

    /// Copy `src` into `dst` (adding), preserving `src`; uses one temp.
    pub fn copy(&mut self, src: u32, dst: u32) {
        let t = self.fresh();
        self.mv(src, &[dst, t]);
        self.mv(t, &[src]);
    }

    /// `r += k` by unary increments; text length `k`.
    pub fn add_small(&mut self, r: u32, k: u64) {
        for _ in 0..k {
            self.inc(r);
        }
    }

    /// Write the constant `v` into `r` (which must currently be zero) by
    /// binary doubling; text O(bits), runtime O(v).
    pub fn load_const(&mut self, r: u32, v: &Nat) {
        if let Some(small) = v.to_u64() {
            if small <= 16 {
                self.add_small(r, small);
                return;
            }
        }
        let t = self.fresh();
        let bits = v.to_big().to_radix_be(2);
        let mut first = true;
        for &bit in &bits {
            if !first {
                // r := 2r via t
                self.mv(r, &[t]);
                let top = self.here();
                let end = self.label();
                self.decjz(t, end);
                self.inc(r);
                self.inc(r);
                self.jmp(top);
                self.place(end);
            }
            if bit == 1 {
                self.inc(r);
            }
            first = false;
        }
    }

    /// Branch on `a ≤ b` without destroying either; two temps.
    pub fn branch_le(&mut self, a: u32, b: u32, if_le: Label, if_gt: Label) {
        let ta = self.fresh();
        let tb = self.fresh();
        self.copy(a, ta);
        self.copy(b, tb);
        let cmp = self.here();
        let le_drain = self.label();
        let gt_drain = self.label();
        self.decjz(ta, le_drain);
        self.decjz(tb, gt_drain);
        self.jmp(cmp);
        // a ≤ b: drain leftover tb
        self.place(le_drain);
        let le_loop = self.here();
        let le_done = self.label();
        self.decjz(tb, le_done);
        self.jmp(le_loop);
        self.place(le_done);
        self.jmp(if_le);
        // a > b: drain leftover ta
        self.place(gt_drain);
        let gt_loop = self.here();
        let gt_done = self.label();
        self.decjz(ta, gt_done);
        self.jmp(gt_loop);
        self.place(gt_done);
        self.jmp(if_gt);
    }

    /// Halt with a small constant output (assumes `r1` is still zero).
    pub fn halt_with(&mut self, v: u64) {
        self.add_small(REG_OUT, v);
        self.halt();
    }

    /// Burn roughly `steps` instructions doing nothing. The countdown loop
    /// costs 2 per unit and its doubling loader about 6 per unit, so the
    /// counter is an eighth of the target.
    pub fn burn(&mut self, steps: u64) {
        if steps <= 32 {
            let junk = self.fresh();
            self.add_small(junk, steps);
            return;
        }
        let c = self.fresh();
        self.load_const(c, &Nat::from(steps / 8));
        let top = self.here();
        let end = self.label();
        self.decjz(c, end);
        self.jmp(top);
        self.place(end);
    }

    /// Inline `body` so that it consumes the value in `in_reg` as its input
    /// and leaves its output in `out_reg`; its scratch registers are renamed
    /// to fresh ones (zeroed first, so the inline is re-entrant), and every
    /// halt exits to the end of the fragment. `r2` is left shared: an inlined
    /// body reading its own index sees the host's.
    pub fn inline(&mut self, body: &Program, in_reg: u32, out_reg: u32, mode: QryMode<'_>) {
        let body = compact_registers(body);
        let max = body.max_register();
        let base = self.next_reg;
        let map = |r: u32| -> u32 {
            match r {
                REG_IN => in_reg,
                REG_OUT => out_reg,
                REG_SELF => REG_SELF,
                other => base + (other - REG_SCRATCH0),
            }
        };
        if max >= REG_SCRATCH0 {
            self.next_reg = base + (max - REG_SCRATCH0) + 1;
        }
        // Re-entrancy: scratch and output start at zero.
        self.clear(out_reg);
        for r in REG_SCRATCH0..=max {
            self.clear(map(r));
        }
        let len = body.len();
        let marks: Vec<Label> = (0..=len).map(|_| self.label()).collect();
        for (i, ins) in body.instructions.iter().enumerate() {
            self.place(marks[i]);
            match *ins {
                Instruction::Inc(r) => self.inc(map(r)),
                Instruction::DecJz(r, t) => {
                    let t = (t as usize).min(len);
                    self.decjz(map(r), marks[t]);
                }
                Instruction::Halt => self.jmp(marks[len]),
                Instruction::Qry(a, d) => self.emit_qry(map(a), map(d), &mode),
            }
        }
        self.place(marks[len]);
    }

    fn emit_qry(&mut self, a: u32, d: u32, mode: &QryMode<'_>) {
        match mode {
            QryMode::Plain => self.qry(a, d),
            QryMode::Restricted { bound_reg } => {
                let do_qry = self.label();
                let zero_ans = self.label();
                let end = self.label();
                self.branch_le(a, *bound_reg, do_qry, zero_ans);
                self.place(do_qry);
                self.qry(a, d);
                self.jmp(end);
                self.place(zero_ans);
                self.clear(d);
                self.jmp(end);
                self.place(end);
            }
            QryMode::ViaFunctional { psi, psi_mode } => {
                self.emit_qry_via(a, d, psi, psi_mode);
            }
            QryMode::RestrictedVia { bound_reg, psi, psi_mode } => {
                // (Ψ^{…})↾bound: positions beyond the bound answer 0,
                // positions within are answered by running ψ.
                let do_via = self.label();
                let zero_ans = self.label();
                let end = self.label();
                self.branch_le(a, *bound_reg, do_via, zero_ans);
                self.place(do_via);
                self.emit_qry_via(a, d, psi, psi_mode);
                self.jmp(end);
                self.place(zero_ans);
                self.clear(d);
                self.jmp(end);
                self.place(end);
            }
        }
    }

    /// The "oracle" answer is computed by running ψ on the queried
    /// position; ψ's own queries go to the real oracle under `psi_mode`.
    /// Divergence of ψ diverges the whole run, which is the right reading
    /// of a functional-composed oracle.
    fn emit_qry_via(&mut self, a: u32, d: u32, psi: &Program, psi_mode: &InnerQry) {
        let arg = self.fresh();
        let ans = self.fresh();
        self.clear(arg);
        self.copy(a, arg);
        let inner = match *psi_mode {
            InnerQry::Plain => QryMode::Plain,
            InnerQry::Restricted { bound_reg } => QryMode::Restricted { bound_reg },
        };
        self.inline(psi, arg, ans, inner);
        self.clear(d);
        self.mv(ans, &[d]);
    }

    pub fn assemble(self) -> Program {
        let resolve = |l: Label, here: usize| -> u32 {
            match self.labels[l.0] {
                Some(p) => p as u32,
                None => {
                    debug_assert!(false, "unplaced label {l:?} at op {here}");
                    u32::MAX >> 8
                }
            }
        };
        let instructions = self
            .ops
            .iter()
            .enumerate()
            .map(|(i, op)| match op {
                Op::Fixed(ins) => *ins,
                Op::DecJz(r, l) => Instruction::DecJz(*r, resolve(*l, i)),
            })
            .collect();
        Program::new(instructions)
    }
}

/// Oracle treatment for inlined bodies.
pub enum QryMode<'a> {
    /// Queries go straight to the host oracle.
    Plain,
    /// Queries at positions beyond the value of `bound_reg` answer 0,
    /// realizing the finite-set restriction `C ↾ bound`.
    Restricted { bound_reg: u32 },
    /// Each query is answered by running `psi` on the position, with ψ's own
    /// queries handled per `psi_mode`.
    ViaFunctional { psi: &'a Program, psi_mode: Box<InnerQry> },
    /// The restriction of a functional-composed oracle:
    /// `(Ψ^{…})↾bound`.
    RestrictedVia { bound_reg: u32, psi: &'a Program, psi_mode: Box<InnerQry> },
}

pub enum InnerQry {
    Plain,
    Restricted { bound_reg: u32 },
}

/// Rename scratch registers to a dense range so synthesized wrappers never
/// run past the register cap. Reserved registers are fixed points.
pub fn compact_registers(p: &Program) -> Program {
    let max = p.max_register();
    if max < 1 << 12 {
        return p.clone();
    }
    let mut used: Vec<u32> = p
        .instructions
        .iter()
        .flat_map(|i| match *i {
            Instruction::Inc(r) => vec![r],
            Instruction::DecJz(r, _) => vec![r],
            Instruction::Qry(a, d) => vec![a, d],
            Instruction::Halt => vec![],
        })
        .filter(|&r| r > REG_SELF)
        .collect();
    used.sort_unstable();
    used.dedup();
    let map: std::collections::HashMap<u32, u32> = used
        .iter()
        .enumerate()
        .map(|(i, &r)| (r, REG_SCRATCH0 + i as u32))
        .collect();
    let f = |r: u32| -> u32 {
        if r <= REG_SELF {
            r
        } else {
            map[&r]
        }
    };
    Program::new(
        p.instructions
            .iter()
            .map(|i| match *i {
                Instruction::Inc(r) => Instruction::Inc(f(r)),
                Instruction::DecJz(r, t) => Instruction::DecJz(f(r), t),
                Instruction::Qry(a, d) => Instruction::Qry(f(a), f(d)),
                Instruction::Halt => Instruction::Halt,
            })
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// texts used by the numbering itself
// ---------------------------------------------------------------------------

/// Text of the direct-constant program: write `c` into the output register
/// and halt, never reading the input. Runtime O(c) regardless of input size.
pub fn const_loader(c: &Nat) -> Program {
    let mut a = Asm::new(REG_SCRATCH0);
    a.load_const(REG_OUT, c);
    a.halt();
    a.assemble()
}

/// Text realizing the s-m-n loader: replace the input `x` by `pair(y, x)`,
/// then fall into `body`.
pub fn smn_text(body: &Program, y: &Nat) -> Program {
    let body = compact_registers(body);
    let mut a = Asm::new(body.max_register().max(REG_SELF) + 1);
    // pair(y, x) = T(x + y) + x where T is the triangular number.
    let xcopy = a.fresh();
    let sum = a.fresh();
    let acc = a.fresh();
    a.mv(REG_IN, &[xcopy, sum]);
    let yreg = a.fresh();
    a.load_const(yreg, y);
    a.mv(yreg, &[sum]);
    // acc := T(sum), destroying sum.
    let outer = a.here();
    let done = a.label();
    a.decjz(sum, done);
    a.inc(acc);
    let e = a.fresh();
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
    a.mv(xcopy, &[acc]);
    a.mv(acc, &[REG_IN]);
    let loader = a.assemble();

    let shift = loader.len() as u32;
    let blen = body.len() as u32;
    let mut instructions = loader.instructions;
    instructions.extend(body.instructions.iter().map(|ins| match *ins {
        Instruction::DecJz(r, t) => Instruction::DecJz(r, t.min(blen) + shift),
        other => other,
    }));
    Program::new(instructions)
}

/// Append dead increments until the program's digit stream has at least
/// `min_nibbles` nibbles. Codes grow strictly with the nibble count, so
/// this orders equivalent programs by construction without the quadratic
/// blowup of arithmetic padding chains.
pub fn pad_text_to_nibbles(body: &Program, min_nibbles: usize) -> Program {
    let dead = body.max_register().max(REG_SELF) + 1;
    let mut p = body.clone();
    let base = super::code::nibbles(&p).len();
    if base >= min_nibbles {
        return p;
    }
    // Each dead increment adds a fixed number of nibbles.
    let per = {
        let mut probe = Vec::new();
        super::code::push_instruction_nibbles(&mut probe, &Instruction::Inc(dead));
        probe.len()
    };
    let count = (min_nibbles - base).div_ceil(per);
    p.instructions.reserve(count);
    for _ in 0..count {
        p.instructions.push(Instruction::Inc(dead));
    }
    p
}

/// Text realizing padding: the body followed by dead increments. Appended
/// code only runs when the body falls off its end, and touches nothing the
/// outcome depends on.
pub fn pad_text(body: &Program, k: &Nat) -> Program {
    let body = compact_registers(body);
    let dead = body.max_register().max(REG_SELF) + 1;
    let mut instructions = body.instructions.clone();
    // A short tag distinguishing pad levels in the text itself.
    let tag = (k.rem_u64(8) + 1) as usize;
    for _ in 0..tag {
        instructions.push(Instruction::Inc(dead));
    }
    Program::new(instructions)
}

// ---------------------------------------------------------------------------
// common whole programs
// ---------------------------------------------------------------------------

/// `[move r0 → r1]`: the identity function.
pub fn identity_program() -> Program {
    let mut a = Asm::new(REG_SCRATCH0);
    a.mv(REG_IN, &[REG_OUT]);
    a.halt();
    a.assemble()
}

/// The successor function.
pub fn successor_program() -> Program {
    let mut a = Asm::new(REG_SCRATCH0);
    a.mv(REG_IN, &[REG_OUT]);
    a.inc(REG_OUT);
    a.halt();
    a.assemble()
}

/// Halt iff the oracle answers 1 at `pos`; the classic membership probe.
pub fn singleton_query_program(pos: &Nat) -> Program {
    let mut a = Asm::new(REG_SCRATCH0);
    let p = a.fresh();
    let ans = a.fresh();
    a.load_const(p, pos);
    a.qry(p, ans);
    let div = a.label();
    a.decjz(ans, div);
    a.halt();
    a.place(div);
    a.diverge();
    a.assemble()
}

/// Halt iff the oracle answers 1 at any of `positions` (scanned in order).
pub fn scanner_program(positions: &[Nat]) -> Program {
    let mut a = Asm::new(REG_SCRATCH0);
    for pos in positions {
        let p = a.fresh();
        let ans = a.fresh();
        a.load_const(p, pos);
        a.qry(p, ans);
        let next = a.label();
        a.decjz(ans, next);
        a.halt();
        a.place(next);
    }
    a.diverge();
    a.assemble()
}

/// Ignore the input and halt with value `v` after roughly `delay` steps.
pub fn delayed_const_program(v: &Nat, delay: u64) -> Program {
    let mut a = Asm::new(REG_SCRATCH0);
    a.burn(delay);
    a.load_const(REG_OUT, v);
    a.halt();
    a.assemble()
}

/// `φ(x) = φ_body(j)` for every `x`: the input is ignored (never even read,
/// so huge inputs cost nothing) and the body runs on the literal `j`.
pub fn ignore_input_apply(body: &Program, j: &Nat) -> Program {
    let mut a = Asm::new(REG_SCRATCH0);
    let arg = a.fresh();
    let out = a.fresh();
    a.load_const(arg, j);
    a.inline(body, arg, out, QryMode::Plain);
    a.mv(out, &[REG_OUT]);
    a.halt();
    a.assemble()
}

/// Shared skeleton for programs that strip the Cantor coding off their
/// input: repeatedly subtract 1, 2, 3, … from `r0` while possible, counting
/// rounds in `rounds`. Afterwards `rounds = x + y` and `r0 = y` for
/// `input = pair(x, y)`.
fn cantor_strip(a: &mut Asm, rounds: u32) {
    let step = a.fresh();
    let c = a.fresh();
    a.inc(step);
    let top = a.here();
    let sub = a.label();
    let done = a.label();
    a.branch_le(step, REG_IN, sub, done);
    a.place(sub);
    a.copy(step, c);
    let csub = a.here();
    let after = a.label();
    a.decjz(c, after);
    let dead = a.label();
    a.decjz(REG_IN, dead);
    a.jmp(csub);
    a.place(after);
    a.inc(step);
    a.inc(rounds);
    a.jmp(top);
    a.place(dead);
    a.diverge();
    a.place(done);
}

/// `pair(x, y) ↦ x + y`.
pub fn cantor_sum_program() -> Program {
    let mut a = Asm::new(REG_SCRATCH0);
    cantor_strip(&mut a, REG_OUT);
    a.halt();
    a.assemble()
}

/// `pair(x, y) ↦ y`.
pub fn cantor_right_program() -> Program {
    let mut a = Asm::new(REG_SCRATCH0);
    let rounds = a.fresh();
    cantor_strip(&mut a, rounds);
    a.mv(REG_IN, &[REG_OUT]);
    a.halt();
    a.assemble()
}

/// `pair(x, y) ↦ x`.
pub fn cantor_left_program() -> Program {
    let mut a = Asm::new(REG_SCRATCH0);
    let rounds = a.fresh();
    cantor_strip(&mut a, rounds);
    // x = rounds − y with y left in r0.
    let top = a.here();
    let end = a.label();
    a.decjz(REG_IN, end);
    let dead = a.label();
    a.decjz(rounds, dead);
    a.jmp(top);
    a.place(end);
    a.mv(rounds, &[REG_OUT]);
    a.halt();
    a.place(dead);
    a.diverge();
    a.assemble()
}

/// Emit an in-place Cantor unpair: destroys `src`, leaves the pair halves
/// in `x_out` and `y_out` (both assumed zero). Runtime O(value).
fn emit_unpair(a: &mut Asm, src: u32, x_out: u32, y_out: u32) {
    let step = a.fresh();
    let c = a.fresh();
    a.clear(step);
    a.clear(c);
    a.inc(step);
    let top = a.here();
    let sub = a.label();
    let done = a.label();
    a.branch_le(step, src, sub, done);
    a.place(sub);
    a.copy(step, c);
    let csub = a.here();
    let after = a.label();
    a.decjz(c, after);
    let dead = a.label();
    a.decjz(src, dead);
    a.jmp(csub);
    a.place(after);
    a.inc(step);
    a.inc(x_out);
    a.jmp(top);
    a.place(dead);
    a.diverge();
    a.place(done);
    // rounds t are in x_out, leftover y in src: want x = t − y, y.
    let tmp = a.fresh();
    a.mv(src, &[y_out, tmp]);
    let fix = a.here();
    let fixed = a.label();
    a.decjz(tmp, fixed);
    let dead2 = a.label();
    a.decjz(x_out, dead2); // y ≤ t, so this never bottoms out first
    a.jmp(fix);
    a.place(dead2);
    a.diverge();
    a.place(fixed);
}

/// A genuine truth-table evaluator functional: on input a condition code
/// `⟨positions-list, table-bits⟩`, query the oracle at each position,
/// assemble the row index, and output that bit of the table. Total on all
/// oracles — the witness that `A^{tt} ≤_bT A`.
pub fn tt_evaluator_program() -> Program {
    let mut a = Asm::new(REG_SCRATCH0);
    let list = a.fresh();
    let bits = a.fresh();
    emit_unpair(&mut a, REG_IN, list, bits);
    let weight = a.fresh();
    let row = a.fresh();
    a.inc(weight);
    // Walk the cons list of positions.
    let walk = a.here();
    let walked = a.label();
    let p = a.fresh();
    let rest = a.fresh();
    let ans = a.fresh();
    a.decjz(list, walked);
    // list held code+1; after the decrement it holds the pair itself.
    a.clear(p);
    a.clear(rest);
    emit_unpair(&mut a, list, p, rest);
    a.clear(ans);
    a.qry(p, ans);
    let skip = a.label();
    a.decjz(ans, skip);
    // row += weight, preserving weight.
    let t = a.fresh();
    a.mv(weight, &[row, t]);
    a.mv(t, &[weight]);
    a.place(skip);
    // weight := 2 · weight
    let t2 = a.fresh();
    a.mv(weight, &[t2]);
    let dbl = a.here();
    let dbl_done = a.label();
    a.decjz(t2, dbl_done);
    a.inc(weight);
    a.inc(weight);
    a.jmp(dbl);
    a.place(dbl_done);
    a.clear(list);
    a.mv(rest, &[list]);
    a.jmp(walk);
    a.place(walked);
    // Extract bit `row` of `bits`: halve row times, then take parity.
    let h = a.fresh();
    let shift = a.here();
    let shifted = a.label();
    a.decjz(row, shifted);
    a.clear(h);
    let halve = a.here();
    let even = a.label();
    let odd = a.label();
    a.decjz(bits, even);
    a.decjz(bits, odd);
    a.inc(h);
    a.jmp(halve);
    a.place(odd);
    a.place(even);
    a.clear(bits);
    a.mv(h, &[bits]);
    a.jmp(shift);
    a.place(shifted);
    // parity of bits → r1
    let fin = a.here();
    let zero = a.label();
    let one = a.label();
    a.decjz(bits, zero);
    a.decjz(bits, one);
    a.jmp(fin);
    a.place(one);
    a.inc(REG_OUT);
    a.place(zero);
    a.halt();
    a.assemble()
}

/// `φ(x) = f(g(x))`: run `g` on the input, then `f` on its output.
pub fn compose_programs(f: &Program, g: &Program) -> Program {
    let mut a = Asm::new(REG_SCRATCH0);
    let mid = a.fresh();
    let out = a.fresh();
    a.inline(g, REG_IN, mid, QryMode::Plain);
    a.inline(f, mid, out, QryMode::Plain);
    a.mv(out, &[REG_OUT]);
    a.halt();
    a.assemble()
}

// ---------------------------------------------------------------------------
// the small-code zoo
// ---------------------------------------------------------------------------

/// Deterministic stream of tiny total programs (constant 0, oracle-free)
/// with pairwise distinct small indices. These serve as positions whose
/// membership questions the workbench can afford to load into registers,
/// so code growth per program must stay minimal: one dead increment with a
/// varying register index.
pub fn zoo_halters(count: usize) -> Vec<super::code::ProgramIndex> {
    let mut out = Vec::with_capacity(count);
    out.push(super::code::encode(&Program::new(vec![Instruction::Halt])));
    for k in 0..count.saturating_sub(1) {
        let p = Program::new(vec![Instruction::Inc(REG_SCRATCH0 + k as u32), Instruction::Halt]);
        out.push(super::code::encode(&p));
    }
    out.truncate(count);
    out
}

/// Tiny programs that diverge everywhere, same code range. The looping
/// register starts at zero and is never incremented, so the loop is
/// immediate on every input under every oracle.
pub fn zoo_divergers(count: usize) -> Vec<super::code::ProgramIndex> {
    (0..count)
        .map(|k| {
            let p = Program::new(vec![Instruction::DecJz(REG_SCRATCH0 + k as u32, 0)]);
            super::code::encode(&p)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::code::encode;
    use crate::machine::interp::{run, run_oracle, OracleReply, OracleSource, StepOutcome};

    fn run_value(p: &Program, x: u64, budget: u64) -> Option<u64> {
        let e = encode(p);
        match run(&e, &Nat::from(x), budget).outcome {
            StepOutcome::Halted(v) => v.to_u64(),
            _ => None,
        }
    }

    #[test]
    fn identity_and_successor() {
        assert_eq!(run_value(&identity_program(), 5, 1000), Some(5));
        assert_eq!(run_value(&successor_program(), 7, 1000), Some(8));
    }

    #[test]
    fn const_loader_values() {
        for v in [0u64, 1, 2, 16, 17, 100, 12345] {
            let p = const_loader(&Nat::from(v));
            assert_eq!(run_value(&p, 99, 20 * v + 200), Some(v), "v={v}");
        }
    }

    #[test]
    fn const_loader_ignores_huge_input() {
        let p = const_loader(&Nat::from(40u64));
        let e = encode(&p);
        let huge: Nat = "340282366920938463463374607431768211456".parse().unwrap();
        let r = run(&e, &huge, 2_000);
        assert_eq!(r.outcome, StepOutcome::Halted(Nat::from(40u64)));
    }

    #[test]
    fn compose_runs_inner_then_outer() {
        let p = compose_programs(&successor_program(), &successor_program());
        assert_eq!(run_value(&p, 3, 10_000), Some(5));
    }

    #[test]
    fn ignore_input_apply_is_constant() {
        let p = ignore_input_apply(&successor_program(), &Nat::from(9u64));
        assert_eq!(run_value(&p, 0, 10_000), Some(10));
        assert_eq!(run_value(&p, 77, 10_000), Some(10));
    }

    struct SetOracle(Vec<u64>);
    impl OracleSource for SetOracle {
        fn answer(&self, pos: &Nat) -> OracleReply {
            OracleReply::Bit(pos.to_u64().map_or(false, |p| self.0.contains(&p)))
        }
    }

    #[test]
    fn singleton_query_halts_iff_member() {
        let p = singleton_query_program(&Nat::from(3u64));
        let e = encode(&p);
        let yes = run_oracle(&e, &Nat::ZERO, &SetOracle(vec![3]), 10_000);
        let no = run_oracle(&e, &Nat::ZERO, &SetOracle(vec![4]), 10_000);
        assert!(yes.halted());
        assert!(!no.halted());
        assert_eq!(yes.use_bound, Nat::from(4u64));
    }

    #[test]
    fn restricted_inline_masks_high_positions() {
        // Body returns oracle(3); restricted to bound 2 it must see 0.
        let body = singleton_query_program(&Nat::from(3u64));
        let mut a = Asm::new(REG_SCRATCH0);
        let arg = a.fresh();
        let out = a.fresh();
        let bound = a.fresh();
        a.add_small(bound, 2);
        a.inline(&body, arg, out, QryMode::Restricted { bound_reg: bound });
        a.halt();
        let p = a.assemble();
        let e = encode(&p);
        let r = run_oracle(&e, &Nat::ZERO, &SetOracle(vec![3]), 100_000);
        // Masked: the body sees 0 at position 3 and diverges.
        assert_eq!(r.outcome, StepOutcome::StillRunning);
        // With bound 3 the same body sees the member and halts.
        let mut a = Asm::new(REG_SCRATCH0);
        let arg = a.fresh();
        let out = a.fresh();
        let bound = a.fresh();
        a.add_small(bound, 3);
        a.inline(&body, arg, out, QryMode::Restricted { bound_reg: bound });
        a.halt();
        let p = a.assemble();
        let r = run_oracle(&encode(&p), &Nat::ZERO, &SetOracle(vec![3]), 100_000);
        assert!(r.halted());
    }

    #[test]
    fn inline_is_reentrant() {
        // Run successor twice through a loop: scratch zeroing must make the
        // second pass behave like the first.
        let succ = successor_program();
        let mut a = Asm::new(REG_SCRATCH0);
        let arg = a.fresh();
        let out = a.fresh();
        let twice = a.fresh();
        a.add_small(twice, 2);
        a.add_small(arg, 10);
        let top = a.here();
        let end = a.label();
        a.decjz(twice, end);
        a.inline(&succ, arg, out, QryMode::Plain);
        a.clear(arg);
        a.mv(out, &[arg]);
        a.jmp(top);
        a.place(end);
        a.mv(arg, &[REG_OUT]);
        a.halt();
        let p = a.assemble();
        assert_eq!(run_value(&p, 0, 100_000), Some(12));
    }

    #[test]
    fn tt_evaluator_is_a_genuine_functional() {
        use crate::oracle::TTCondition;
        let eval = tt_evaluator_program();
        let e = encode(&eval);
        let oracle = SetOracle(vec![1, 4]);
        let cases = vec![
            (TTCondition::truth(), true),
            (TTCondition::singleton(Nat::from(4u64)), true),
            (TTCondition::singleton(Nat::from(3u64)), false),
            (
                // XOR on (1, 2): 1 ∈, 2 ∉ → true.
                TTCondition::new(
                    vec![Nat::from(1u64), Nat::from(2u64)],
                    vec![false, true, true, false],
                ),
                true,
            ),
            (
                TTCondition::new(
                    vec![Nat::from(1u64), Nat::from(4u64)],
                    vec![false, true, true, false],
                ),
                false,
            ),
        ];
        for (cond, expected) in cases {
            let r = run_oracle(&e, &cond.code(), &oracle, 4_000_000);
            let StepOutcome::Halted(v) = r.outcome else {
                panic!("evaluator diverged on {cond:?}")
            };
            assert_eq!(!v.is_zero(), expected, "cond {cond:?}");
        }
    }

    #[test]
    fn zoo_programs_behave() {
        for e in zoo_halters(40) {
            let r = run(&e, &Nat::from(5u64), 100);
            assert_eq!(r.outcome, StepOutcome::Halted(Nat::ZERO));
        }
        for e in zoo_divergers(40) {
            let r = run(&e, &Nat::from(5u64), 1000);
            assert_eq!(r.outcome, StepOutcome::StillRunning);
        }
        let mut all = zoo_halters(40);
        all.extend(zoo_divergers(40));
        let set: std::collections::HashSet<_> = all.iter().map(|e| e.0.clone()).collect();
        assert_eq!(set.len(), all.len(), "zoo indices must be distinct");
    }
}
