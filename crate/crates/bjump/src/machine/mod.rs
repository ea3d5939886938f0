//! A concrete acceptable programming system.
//!
//! The machine is a register machine over naturals with four opcodes
//! (`INC`, `DECJZ`, `QRY`, `HALT`). Programs are Gödel-numbered totally:
//! every natural decodes to a program and garbage decodes to a canonical
//! diverger. The enumeration is acceptable — a step-bounded universal
//! interpreter ([`interp::run`]), arithmetic s-m-n and padding
//! ([`acceptable`]), and verified fixed points — and `φ_e` is by definition
//! `Φ_e` run against the empty-set oracle, so the two readings of `∅′`
//! coincide outright.
//!
//! Index values from different builds of this workbench (or from any other
//! numbering) are not comparable; traces should be compared extensionally.

pub mod acceptable;
pub mod asm;
pub mod code;
pub mod interp;
pub mod isa;

pub use acceptable::{
    compose_index, const_apply_index, fixed_point, fixed_point_set, pad, smn, FixedPointError,
    FixedPointPolicy,
};
pub use code::{decode, encode, ProgramIndex};
pub use interp::{run, run2, run_oracle, run_program, Exec, OracleReply, OracleSource, RunResult, StepOutcome};
pub use isa::{Instruction, Program};
