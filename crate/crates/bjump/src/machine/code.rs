//! Gödel numbering of programs.
//!
//! Decoding is total: every natural names a program, and garbage names the
//! canonical diverger. The code space is stratified by residue mod 8 so that
//! three operations on indices are plain arithmetic rather than text surgery:
//!
//! * residue 7 — *direct constants*: `φ_c` is the constant function with
//!   value `c` itself. This gives the numbering cheap self-referential
//!   indices (a quine at every such `c`).
//! * residue 5 — *s-m-n applications*: the payload is `pair(e, y)` and the
//!   program prefixes `decode(e)` with a loader that replaces the input `x`
//!   by `pair(y, x)`.
//! * residue 3 — *padding*: the payload is `pair(e, k)` and the program is
//!   `decode(e)` followed by dead code, so `pad(e, k)` is strictly monotone
//!   in both arguments by construction.
//! * residues 0, 1, 2, 4, 6 — ordinary programs, carried as a base-16 digit
//!   stream (one sentinel digit, then nibbles: an opcode nibble 0..3 followed
//!   by its operand numerals in 3-bit groups with a continuation flag).
//!
//! Instruction lists therefore have codes whose bit-length is linear in the
//! program text, which keeps indices of compiled reduction programs
//! materializable.

use super::asm;
use super::isa::{Instruction, Program, REG_CAP, TGT_CAP};
use crate::nat::Nat;
use num_bigint::BigUint;
use num_traits::Zero;

/// Index into the program enumeration.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProgramIndex(pub Nat);

impl ProgramIndex {
    pub fn from_u64(v: u64) -> ProgramIndex {
        ProgramIndex(Nat::Small(v))
    }
    pub fn nat(&self) -> &Nat {
        &self.0
    }
}

impl std::fmt::Display for ProgramIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::fmt::Debug for ProgramIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.bits() > 128 {
            write!(f, "e(~2^{})", self.0.bits())
        } else {
            write!(f, "e({})", self.0)
        }
    }
}

impl From<Nat> for ProgramIndex {
    fn from(n: Nat) -> Self {
        ProgramIndex(n)
    }
}

const RES_CONST: u64 = 7;
const RES_SMN: u64 = 5;
const RES_PAD: u64 = 3;
const ORDINARY_RESIDUES: [u64; 5] = [0, 1, 2, 4, 6];

fn ordinary_rank(residue: u64) -> Option<u64> {
    ORDINARY_RESIDUES.iter().position(|&r| r == residue).map(|i| i as u64)
}

// ---------------------------------------------------------------------------
// digit stream
// ---------------------------------------------------------------------------

/// Append the numeral for `v` (3-bit groups, least significant first, high
/// nibble bit = continuation).
fn push_numeral(out: &mut Vec<u8>, mut v: u64) {
    loop {
        let group = (v & 7) as u8;
        v >>= 3;
        if v > 0 {
            out.push(group | 0x8);
        } else {
            out.push(group);
            return;
        }
    }
}

fn push_instruction(out: &mut Vec<u8>, ins: &Instruction) {
    match *ins {
        Instruction::Inc(r) => {
            out.push(0);
            push_numeral(out, r as u64);
        }
        Instruction::DecJz(r, t) => {
            out.push(1);
            push_numeral(out, r as u64);
            push_numeral(out, t as u64);
        }
        Instruction::Qry(a, d) => {
            out.push(2);
            push_numeral(out, a as u64);
            push_numeral(out, d as u64);
        }
        Instruction::Halt => out.push(3),
    }
}

/// Append one instruction's nibbles (for length accounting by builders).
pub fn push_instruction_nibbles(out: &mut Vec<u8>, ins: &Instruction) {
    push_instruction(out, ins);
}

/// Nibble stream of a program, most significant digit first, without the
/// sentinel.
pub fn nibbles(p: &Program) -> Vec<u8> {
    let mut out = Vec::with_capacity(p.len() * 3);
    for ins in &p.instructions {
        push_instruction(&mut out, ins);
    }
    out
}

fn digits_to_value(digits: &[u8]) -> Nat {
    // Radix 16 is a power of two, so this packs bits in linear time.
    Nat::from_big(BigUint::from_radix_be(digits, 16).unwrap_or_else(BigUint::zero))
}

fn value_to_digits(v: &Nat) -> Vec<u8> {
    let b = v.to_big();
    if b.is_zero() {
        return Vec::new();
    }
    let raw = b.to_radix_be(16);
    raw
}

struct NibbleReader<'a> {
    digits: &'a [u8],
    pos: usize,
}

impl<'a> NibbleReader<'a> {
    fn next(&mut self) -> Option<u8> {
        let d = self.digits.get(self.pos).copied()?;
        self.pos += 1;
        Some(d)
    }

    fn numeral(&mut self, cap: u64) -> Option<u64> {
        let mut v: u64 = 0;
        let mut shift = 0u32;
        loop {
            let d = self.next()?;
            if shift >= 63 {
                return None;
            }
            v |= ((d & 7) as u64) << shift;
            shift += 3;
            if d & 0x8 == 0 {
                break;
            }
        }
        if v >= cap {
            None
        } else {
            Some(v)
        }
    }

    fn done(&self) -> bool {
        self.pos == self.digits.len()
    }
}

fn parse_digit_stream(digits: &[u8]) -> Option<Program> {
    let mut r = NibbleReader { digits, pos: 0 };
    let mut instructions = Vec::new();
    while !r.done() {
        let op = r.next()?;
        let ins = match op {
            0 => Instruction::Inc(r.numeral(REG_CAP as u64)? as u32),
            1 => {
                let reg = r.numeral(REG_CAP as u64)? as u32;
                let tgt = r.numeral(TGT_CAP as u64)? as u32;
                Instruction::DecJz(reg, tgt)
            }
            2 => {
                let a = r.numeral(REG_CAP as u64)? as u32;
                let d = r.numeral(REG_CAP as u64)? as u32;
                Instruction::Qry(a, d)
            }
            3 => Instruction::Halt,
            _ => return None,
        };
        instructions.push(ins);
    }
    Some(Program::new(instructions))
}

// ---------------------------------------------------------------------------
// encode / decode
// ---------------------------------------------------------------------------

/// Canonical index of a program: injective, and `decode(encode(p)) = p`.
pub fn encode(p: &Program) -> ProgramIndex {
    let mut digits = vec![1u8]; // sentinel keeps leading zeros of the stream
    digits.extend(nibbles(p));
    let d = digits_to_value(&digits);
    // Map the payload into the ordinary residue classes.
    let (q, r) = d.div_rem_u64(5);
    ProgramIndex(q.mul_u64(8).add_u64(ORDINARY_RESIDUES[r as usize]))
}

/// Total decoding; garbage payloads yield the canonical diverger.
pub fn decode(e: &ProgramIndex) -> Program {
    let (q, res) = e.0.div_rem_u64(8);
    match res {
        RES_CONST => asm::const_loader(&e.0),
        RES_SMN => {
            let (inner, y) = Nat::unpair(&q);
            let body = decode(&ProgramIndex(inner));
            asm::smn_text(&body, &y)
        }
        RES_PAD => {
            let (inner, k) = Nat::unpair(&q);
            let body = decode(&ProgramIndex(inner));
            asm::pad_text(&body, &k)
        }
        r => {
            let d = q.mul_u64(5).add_u64(ordinary_rank(r).unwrap());
            let digits = value_to_digits(&d);
            match digits.split_first() {
                None => Program::diverger(),
                Some((1, rest)) => parse_digit_stream(rest).unwrap_or_else(Program::diverger),
                Some(_) => Program::diverger(),
            }
        }
    }
}

/// Arithmetic s-m-n index: `φ_{smn(e, y)}(x) = φ_e(pair(y, x))`.
/// Strictly monotone and injective in `(e, y)` because Cantor pairing is.
pub fn smn_index(e: &ProgramIndex, y: &Nat) -> ProgramIndex {
    ProgramIndex(Nat::pair(&e.0, y).mul_u64(8).add_u64(RES_SMN))
}

/// Arithmetic padding index: same behavior as `e`, code strictly monotone in
/// both arguments and above both.
pub fn pad_index(e: &ProgramIndex, k: &Nat) -> ProgramIndex {
    ProgramIndex(Nat::pair(&e.0, k).mul_u64(8).add_u64(RES_PAD))
}

/// Smallest direct-constant index ≥ `lo`; `φ_c = const c` for every such `c`.
pub fn const_self_index_at_least(lo: &Nat) -> ProgramIndex {
    let (q, r) = lo.div_rem_u64(8);
    let q = if r > RES_CONST { q.add_u64(1) } else { q };
    ProgramIndex(q.mul_u64(8).add_u64(RES_CONST))
}

pub fn is_const_self(e: &ProgramIndex) -> bool {
    e.0.rem_u64(8) == RES_CONST
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::isa::Instruction as I;

    #[test]
    fn round_trip_simple_programs() {
        let programs = vec![
            Program::empty(),
            Program::new(vec![I::Halt]),
            Program::diverger(),
            Program::new(vec![I::Inc(0), I::Inc(700), I::DecJz(3, 12), I::Qry(0, 5), I::Halt]),
            Program::new(vec![I::DecJz(0, 3), I::Inc(1), I::DecJz(4, 0), I::Halt]),
        ];
        for p in programs {
            let e = encode(&p);
            assert_eq!(decode(&e), p, "round trip failed for {p}");
        }
    }

    #[test]
    fn encode_injective_on_distinct_programs() {
        let mut seen = std::collections::HashSet::new();
        for r in 0u32..20 {
            for t in 0u32..20 {
                let p = Program::new(vec![I::DecJz(r, t), I::Halt]);
                assert!(seen.insert(encode(&p).0), "collision at r={r} t={t}");
            }
        }
    }

    #[test]
    fn decode_total_on_initial_segment() {
        for c in 0u64..4000 {
            let p = decode(&ProgramIndex::from_u64(c));
            assert!(p.instructions.iter().all(|i| i.is_well_formed()));
        }
    }

    #[test]
    fn decode_zero_is_the_diverger() {
        assert_eq!(decode(&ProgramIndex::from_u64(0)), Program::diverger());
    }

    #[test]
    fn smn_and_pad_indices_are_monotone() {
        let e1 = ProgramIndex::from_u64(10);
        let e2 = ProgramIndex::from_u64(11);
        let y1 = Nat::from(4u64);
        let y2 = Nat::from(5u64);
        assert!(smn_index(&e1, &y1).0 < smn_index(&e2, &y1).0);
        assert!(smn_index(&e1, &y1).0 < smn_index(&e1, &y2).0);
        assert!(pad_index(&e1, &y1).0 < pad_index(&e2, &y1).0);
        assert!(pad_index(&e1, &y1).0 < pad_index(&e1, &y2).0);
        // pad exceeds both arguments
        assert!(pad_index(&e2, &y2).0 > e2.0);
        assert!(pad_index(&e2, &y2).0 > y2);
    }
}
