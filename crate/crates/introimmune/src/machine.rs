//! A minimal register machine with step-exact fuel semantics.
//!
//! This is the interpreted substrate backend. Conventions:
//! - registers hold naturals and default to 0; the input is placed in
//!   register 0 and the output is read from register 0;
//! - one executed instruction costs exactly one step, including `halt`
//!   and oracle queries;
//! - running off the end of the program halts (at the cost of one step);
//! - `dec` on a zero register leaves it at zero;
//! - `query` outside an oracle-carrying evaluation never halts (the
//!   machine enters a stuck state), and `emit` outside a set-enumeration
//!   evaluation is a one-step no-op.
//!
//! Every natural number decodes to a program (`decode_program`), giving a
//! fixed effective numbering of the language; `encode_program` is a right
//! inverse of decoding.

use crate::pairing::{pair, unpair};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Instr {
    /// Increment register.
    Inc(u64),
    /// Decrement register, saturating at zero.
    Dec(u64),
    /// Jump to address if register is zero.
    Jz(u64, u64),
    /// Unconditional jump.
    Jmp(u64),
    /// Ask the oracle about the position held in the first register and
    /// store the answered bit in the second.
    Query(u64, u64),
    /// Emit the value of a register (set enumeration only).
    Emit(u64),
    Halt,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Program(pub Vec<Instr>);

/// Registers are kept sparse-ish: a small vector grown on demand.
#[derive(Clone, Debug, Default)]
struct Registers(Vec<u64>);

impl Registers {
    fn get(&self, r: u64) -> u64 {
        self.0.get(r as usize).copied().unwrap_or(0)
    }

    fn set(&mut self, r: u64, v: u64) {
        let idx = r as usize;
        if idx >= self.0.len() {
            self.0.resize(idx + 1, 0);
        }
        self.0[idx] = v;
    }
}

/// Outcome of running a machine for a bounded number of steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MachineOutcome {
    /// Halted within the budget: output value, steps consumed, values
    /// emitted along the way, and the oracle interaction transcript.
    Halted { value: u64, steps: u64 },
    /// Budget exhausted (or the machine is stuck on a query with no
    /// oracle attached).
    Running,
}

/// One oracle interaction: the queried position and the answered bit.
pub type QueryEvent = (u64, bool);

/// Callback answering oracle queries during a run. Returning `None`
/// means the answer source is exhausted and the run cannot continue
/// (used by answer-feeding simulations).
pub trait QueryAnswerer {
    fn answer(&mut self, pos: u64) -> Option<bool>;
}

/// Runs `program` on `input` for at most `budget` steps.
///
/// `oracle`: answer source for `query` instructions, or `None` to make
/// queries stuck. `emitted`: sink for `emit` instructions, or `None` to
/// make them no-ops. `log`: sink for the oracle transcript.
pub fn run_program(
    program: &Program,
    input: u64,
    budget: u64,
    mut oracle: Option<&mut dyn QueryAnswerer>,
    mut emitted: Option<&mut Vec<u64>>,
    mut log: Option<&mut Vec<QueryEvent>>,
) -> MachineOutcome {
    let mut regs = Registers::default();
    regs.set(0, input);
    let mut pc: u64 = 0;
    let mut steps: u64 = 0;
    loop {
        if steps >= budget {
            return MachineOutcome::Running;
        }
        steps += 1;
        let instr = match program.0.get(pc as usize) {
            Some(i) => *i,
            // Off the end: implicit halt costing this step.
            None => return MachineOutcome::Halted { value: regs.get(0), steps },
        };
        pc += 1;
        match instr {
            Instr::Inc(r) => regs.set(r, regs.get(r).saturating_add(1)),
            Instr::Dec(r) => regs.set(r, regs.get(r).saturating_sub(1)),
            Instr::Jz(r, target) => {
                if regs.get(r) == 0 {
                    pc = target;
                }
            }
            Instr::Jmp(target) => pc = target,
            Instr::Query(rp, rd) => match oracle.as_deref_mut() {
                Some(src) => match src.answer(regs.get(rp)) {
                    Some(bit) => {
                        if let Some(l) = log.as_deref_mut() {
                            l.push((regs.get(rp), bit));
                        }
                        regs.set(rd, bit as u64);
                    }
                    // Answer source exhausted: the computation does not
                    // halt under this source.
                    None => return MachineOutcome::Running,
                },
                // No oracle in this evaluation mode: stuck forever.
                None => return MachineOutcome::Running,
            },
            Instr::Emit(r) => {
                if let Some(sink) = emitted.as_deref_mut() {
                    sink.push(regs.get(r));
                }
            }
            Instr::Halt => return MachineOutcome::Halted { value: regs.get(0), steps },
        }
    }
}

// --- textual assembly ---

impl fmt::Display for Instr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instr::Inc(r) => write!(f, "inc {r}"),
            Instr::Dec(r) => write!(f, "dec {r}"),
            Instr::Jz(r, t) => write!(f, "jz {r} {t}"),
            Instr::Jmp(t) => write!(f, "jmp {t}"),
            Instr::Query(p, d) => write!(f, "query {p} {d}"),
            Instr::Emit(r) => write!(f, "emit {r}"),
            Instr::Halt => write!(f, "halt"),
        }
    }
}

impl fmt::Display for Program {
    fmt::Result::fmt_program!();
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct AsmError {
    pub line: usize,
    pub message: String,
}

/// Parses the textual form: one instruction per line, `#` comments,
/// blank lines ignored.
pub fn parse_program(text: &str) -> Result<Program, AsmError> {
    let mut instrs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: &str| AsmError { line: idx + 1, message: message.to_string() };
        let mut parts = line.split_whitespace();
        let op = parts.next().unwrap();
        let mut arg = |name: &str| -> Result<u64, AsmError> {
            parts
                .next()
                .ok_or_else(|| err(&format!("missing {name} operand")))?
                .parse::<u64>()
                .map_err(|_| err(&format!("bad {name} operand")))
        };
        let instr = match op {
            "inc" => Instr::Inc(arg("register")?),
            "dec" => Instr::Dec(arg("register")?),
            "jz" => Instr::Jz(arg("register")?, arg("target")?),
            "jmp" => Instr::Jmp(arg("target")?),
            "query" => Instr::Query(arg("position register")?, arg("destination register")?),
            "emit" => Instr::Emit(arg("register")?),
            "halt" => Instr::Halt,
            other => return Err(err(&format!("unknown instruction `{other}`"))),
        };
        if parts.next().is_some() {
            return Err(err("trailing operands"));
        }
        instrs.push(instr);
    }
    Ok(Program(instrs))
}

// --- numbering ---

const OPCODES: u64 = 7;

fn encode_instr(i: Instr) -> u64 {
    match i {
        Instr::Inc(r) => r * OPCODES,
        Instr::Dec(r) => r * OPCODES + 1,
        Instr::Jz(r, t) => pair(r, t) * OPCODES + 2,
        Instr::Jmp(t) => t * OPCODES + 3,
        Instr::Query(p, d) => pair(p, d) * OPCODES + 4,
        Instr::Emit(r) => r * OPCODES + 5,
        Instr::Halt => 6,
    }
}

fn decode_instr(n: u64) -> Instr {
    let (payload, op) = (n / OPCODES, n % OPCODES);
    match op {
        0 => Instr::Inc(payload),
        1 => Instr::Dec(payload),
        2 => {
            let (r, t) = unpair(payload);
            Instr::Jz(r, t)
        }
        3 => Instr::Jmp(payload),
        4 => {
            let (p, d) = unpair(payload);
            Instr::Query(p, d)
        }
        5 => Instr::Emit(payload),
        _ => Instr::Halt,
    }
}

/// Numbering of programs: 0 is the empty program; `n+1` decodes as
/// `pair(instruction, rest)`. Total on all naturals.
pub fn decode_program(mut code: u64) -> Program {
    let mut instrs = Vec::new();
    while code > 0 {
        let (head, rest) = unpair(code - 1);
        instrs.push(decode_instr(head));
        code = rest;
        // Keep adversarial codes from materializing absurd programs.
        if instrs.len() > 4096 {
            break;
        }
    }
    Program(instrs)
}

/// Right inverse of [`decode_program`]: `decode(encode(p)) == p`.
pub fn encode_program(program: &Program) -> u64 {
    let mut code = 0u64;
    for &i in program.0.iter().rev() {
        code = pair(encode_instr(i), code) + 1;
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    struct NoOracle;
    impl QueryAnswerer for NoOracle {
        fn answer(&mut self, _pos: u64) -> Option<bool> {
            None
        }
    }

    fn run_plain(p: &Program, input: u64, budget: u64) -> MachineOutcome {
        run_program(p, input, budget, None, None, None)
    }

    #[test]
    fn add_three_program_step_counts() {
        // Derived by single-stepping: three increments plus the halt
        // cost 4 steps in total.
        let p = parse_program("inc 0\ninc 0\ninc 0\nhalt").unwrap();
        assert_eq!(run_plain(&p, 0, 2), MachineOutcome::Running);
        assert_eq!(run_plain(&p, 0, 3), MachineOutcome::Running);
        assert_eq!(run_plain(&p, 0, 4), MachineOutcome::Halted { value: 3, steps: 4 });
        assert_eq!(run_plain(&p, 0, 10), MachineOutcome::Halted { value: 3, steps: 4 });
    }

    #[test]
    fn budget_monotonicity_on_loop() {
        // Busy loop decrementing the input to zero.
        let p = parse_program("jz 0 4\ndec 0\njmp 0\nhalt\nhalt").unwrap();
        let full = match run_plain(&p, 5, 1_000) {
            MachineOutcome::Halted { value, steps } => (value, steps),
            MachineOutcome::Running => panic!("should halt"),
        };
        assert_eq!(full.0, 0);
        for b in 0..full.1 {
            assert_eq!(run_plain(&p, 5, b), MachineOutcome::Running);
        }
        for b in full.1..full.1 + 5 {
            assert_eq!(
                run_plain(&p, 5, b),
                MachineOutcome::Halted { value: full.0, steps: full.1 }
            );
        }
    }

    #[test]
    fn query_without_oracle_is_stuck() {
        let p = parse_program("query 0 1\nhalt").unwrap();
        assert_eq!(run_plain(&p, 0, 1_000_000), MachineOutcome::Running);
        assert_eq!(
            run_program(&p, 0, 1_000_000, Some(&mut NoOracle), None, None),
            MachineOutcome::Running
        );
    }

    #[test]
    fn numbering_round_trip() {
        let p = parse_program("inc 3\ndec 0\njz 2 7\njmp 1\nquery 4 5\nemit 2\nhalt").unwrap();
        assert_eq!(decode_program(encode_program(&p)), p);
        // Totality: every small code decodes to something.
        for code in 0..5_000u64 {
            let _ = decode_program(code);
        }
    }
}
