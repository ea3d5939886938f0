//! Desk-scale workbench for the bounded jump on the bounded Turing degrees.
//!
//! The pieces, bottom up:
//!
//! * [`machine`] — a concrete acceptable numbering of the partial computable
//!   functions and oracle functionals: register machine, total Gödel coding,
//!   step-bounded interpreter, s-m-n, padding, fixed points.
//! * [`oracle`] — finite sets as total oracles, stage-indexed approximations,
//!   bounded-Turing reduction witnesses, truth-table conditions.
//! * [`ordinal`] — ordinals below ω^ω in Cantor normal form with natural
//!   (commutative) addition and the rank formula used by the jump lemma.
//! * [`ershov`] — α-c.e. witnesses, their evaluation semantics, and the
//!   transformations between Ershov levels and iterated bounded jumps.
//! * [`jump`] — stage-bounded enumerators for the bounded-jump variants and
//!   the explicit reductions between them.
//! * [`construction`] — replayable stage-by-stage simulators for the
//!   diagonalization, the Shoenfield-style inversion, and the c.e. set
//!   separating the bounded jump from the truth-table jump.
//! * [`verify`] — named property suites behind `bjump verify`.
//!
//! Everything is budgeted: "diverges" always means "within the given step
//! or stage budget", and enumeration-style facts are reported three-valued
//! (agree / disagree / unresolved) at matched budgets.

pub mod nat;

pub mod machine;
pub mod cli;
pub mod construction;
pub mod ershov;
pub mod jump;
pub mod oracle;
pub mod ordinal;
pub mod verify;

pub use nat::Nat;
