//! Instruction set and textual program format.
//!
//! Four opcodes suffice for an acceptable numbering: `INC` and `DECJZ` give
//! counter-machine universality, `QRY` is the single oracle-touching opcode,
//! and `HALT` stops with the output register. The textual form is one
//! instruction per line: `INC r3`, `DECJZ r1 7`, `QRY r0 r2`, `HALT`.

use std::fmt;
use std::str::FromStr;

/// Register indices past this decode to the canonical diverger rather than
/// letting garbage codes demand absurd register files.
pub const REG_CAP: u32 = 1 << 16;
/// Jump targets past this likewise mark a code as garbage.
pub const TGT_CAP: u32 = 1 << 28;

/// Run conventions: input arrives in `r0`, output is read from `r1` at halt,
/// and `r2` holds the running program's own index. All other registers start
/// at zero.
pub const REG_IN: u32 = 0;
pub const REG_OUT: u32 = 1;
pub const REG_SELF: u32 = 2;
/// First register the assembler hands out as scratch.
pub const REG_SCRATCH0: u32 = 3;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Instruction {
    /// `INC r`: r += 1.
    Inc(u32),
    /// `DECJZ r t`: if r == 0 jump to instruction offset t, else r -= 1.
    DecJz(u32, u32),
    /// `QRY ra rd`: rd := oracle answer at position (value of ra).
    Qry(u32, u32),
    /// `HALT`: stop; the outcome value is the output register.
    Halt,
}

impl Instruction {
    pub fn max_register(&self) -> u32 {
        match *self {
            Instruction::Inc(r) => r,
            Instruction::DecJz(r, _) => r,
            Instruction::Qry(a, d) => a.max(d),
            Instruction::Halt => 0,
        }
    }

    pub fn is_well_formed(&self) -> bool {
        match *self {
            Instruction::Inc(r) => r < REG_CAP,
            Instruction::DecJz(r, t) => r < REG_CAP && t < TGT_CAP,
            Instruction::Qry(a, d) => a < REG_CAP && d < REG_CAP,
            Instruction::Halt => true,
        }
    }
}

/// An ordered instruction list. Execution falls off the end as a `HALT`;
/// a jump past the end likewise halts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Program {
    pub instructions: Vec<Instruction>,
}

impl Program {
    pub fn new(instructions: Vec<Instruction>) -> Program {
        debug_assert!(instructions.iter().all(Instruction::is_well_formed));
        Program { instructions }
    }

    pub fn empty() -> Program {
        Program::new(Vec::new())
    }

    /// The canonical diverger: `r3` is never incremented, so `DECJZ r3 0`
    /// self-loops forever on every input under every oracle.
    pub fn diverger() -> Program {
        Program::new(vec![Instruction::DecJz(REG_SCRATCH0, 0)])
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    pub fn max_register(&self) -> u32 {
        self.instructions
            .iter()
            .map(Instruction::max_register)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Instruction::Inc(r) => write!(f, "INC r{r}"),
            Instruction::DecJz(r, t) => write!(f, "DECJZ r{r} {t}"),
            Instruction::Qry(a, d) => write!(f, "QRY r{a} r{d}"),
            Instruction::Halt => write!(f, "HALT"),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ins in &self.instructions {
            writeln!(f, "{ins}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Program[{} instr]", self.len())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseProgramError {
    pub line: usize,
    pub msg: String,
}

fn parse_reg(tok: &str, line: usize) -> Result<u32, ParseProgramError> {
    let body = tok.strip_prefix('r').ok_or_else(|| ParseProgramError {
        line,
        msg: format!("expected register like `r3`, got `{tok}`"),
    })?;
    let r: u32 = body.parse().map_err(|_| ParseProgramError {
        line,
        msg: format!("bad register index `{tok}`"),
    })?;
    if r >= REG_CAP {
        return Err(ParseProgramError {
            line,
            msg: format!("register index {r} exceeds cap {REG_CAP}"),
        });
    }
    Ok(r)
}

impl FromStr for Program {
    type Err = ParseProgramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut instructions = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line = i + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let toks: Vec<&str> = text.split_whitespace().collect();
            let bad_arity = |n: usize| ParseProgramError {
                line,
                msg: format!("`{}` takes {} operand(s)", toks[0], n),
            };
            let ins = match toks[0].to_ascii_uppercase().as_str() {
                "INC" => {
                    if toks.len() != 2 {
                        return Err(bad_arity(1));
                    }
                    Instruction::Inc(parse_reg(toks[1], line)?)
                }
                "DECJZ" => {
                    if toks.len() != 3 {
                        return Err(bad_arity(2));
                    }
                    let r = parse_reg(toks[1], line)?;
                    let t: u32 = toks[2].parse().map_err(|_| ParseProgramError {
                        line,
                        msg: format!("bad jump target `{}`", toks[2]),
                    })?;
                    if t >= TGT_CAP {
                        return Err(ParseProgramError {
                            line,
                            msg: format!("jump target {t} exceeds cap {TGT_CAP}"),
                        });
                    }
                    Instruction::DecJz(r, t)
                }
                "QRY" => {
                    if toks.len() != 3 {
                        return Err(bad_arity(2));
                    }
                    Instruction::Qry(parse_reg(toks[1], line)?, parse_reg(toks[2], line)?)
                }
                "HALT" => {
                    if toks.len() != 1 {
                        return Err(bad_arity(0));
                    }
                    Instruction::Halt
                }
                other => {
                    return Err(ParseProgramError {
                        line,
                        msg: format!("unknown opcode `{other}`"),
                    })
                }
            };
            instructions.push(ins);
        }
        Ok(Program::new(instructions))
    }
}
