//! Circuit text format.
//!
//! ```text
//! qubits 4
//! reg M 0 2
//! reg F 3 3
//! init F
//! CX 3 0
//! CSPL 1 0 7.0710678118654757e-1 0.0000000000000000e0 1.0000000000000000e0 3
//! ```
//!
//! `init NAME` marks a register that starts in `|1...1>`; all others start at zero.

use std::fmt::Write as _;

use num_complex::Complex64;

use super::{Circuit, Gate, Register};
use crate::error::{Error, Result};
use crate::text::{format_float, Line, Lines};

impl Circuit {
    pub fn to_text(&self) -> String {
        let mut out = format!("qubits {}\n", self.width);
        for r in &self.registers {
            let _ = writeln!(out, "reg {} {} {}", r.name, r.lo, r.hi);
        }
        for r in self.registers.iter().filter(|r| r.starts_one) {
            let _ = writeln!(out, "init {}", r.name);
        }
        for g in &self.gates {
            write_gate(&mut out, g);
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Circuit> {
        let mut lines = Lines::new(text);
        let mut first = lines.next_line().ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: "empty circuit file".into(),
        })?;
        first.keyword("qubits")?;
        let width: usize = first.parse("qubit count")?;
        first.finish()?;

        let mut registers: Vec<Register> = Vec::new();
        let mut gates = Vec::new();
        while let Some(mut line) = lines.next_line() {
            let (col, op) = line.token("keyword")?;
            match op {
                "reg" => {
                    if !gates.is_empty() {
                        return Err(line.error_at(col, "register declared after gates"));
                    }
                    let (_, name) = line.token("register name")?;
                    let name = name.to_string();
                    let lo: usize = line.parse("register start")?;
                    let hi: usize = line.parse("register end")?;
                    if lo > hi {
                        return Err(line.error_at(col, format!("register {name} has lo > hi")));
                    }
                    line.finish()?;
                    registers.push(Register {
                        name,
                        lo,
                        hi,
                        starts_one: false,
                    });
                }
                "init" => {
                    let (ncol, name) = line.token("register name")?;
                    let reg = registers
                        .iter_mut()
                        .find(|r| r.name == name)
                        .ok_or_else(|| line.error_at(ncol, format!("unknown register {name:?}")))?;
                    reg.starts_one = true;
                    line.finish()?;
                }
                _ => {
                    let number = line.number();
                    let gate = parse_gate(&mut line, col, op)?;
                    line.finish()?;
                    gate.validate(width).map_err(|e| Error::Parse {
                        line: number,
                        column: col,
                        message: e.to_string(),
                    })?;
                    gates.push(gate);
                }
            }
        }
        let mut circuit = Circuit::new(width, registers)?;
        circuit.gates = gates;
        Ok(circuit)
    }
}

fn write_gate(out: &mut String, g: &Gate) {
    let list = |v: &[usize]| {
        v.iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = match g {
        Gate::X(t) => write!(out, "X {t}"),
        Gate::Cnot { control, target } => write!(out, "CX {control} {target}"),
        Gate::Toffoli { c1, c2, target } => write!(out, "CCX {c1} {c2} {target}"),
        Gate::Mcx { controls, target } => {
            write!(out, "MCX {} {} {target}", controls.len(), list(controls))
        }
        Gate::Spl {
            alpha,
            beta,
            target,
        } => write!(
            out,
            "SPL {} {} {} {target}",
            format_float(alpha.re),
            format_float(alpha.im),
            format_float(*beta)
        ),
        Gate::Cspl {
            controls,
            alpha,
            beta,
            target,
        } => write!(
            out,
            "CSPL {} {} {} {} {} {target}",
            controls.len(),
            list(controls),
            format_float(alpha.re),
            format_float(alpha.im),
            format_float(*beta)
        ),
    };
}

fn parse_controls(line: &mut Line<'_>) -> Result<Vec<usize>> {
    let k: usize = line.parse("control count")?;
    (0..k).map(|_| line.parse("control qubit")).collect()
}

fn parse_gate(line: &mut Line<'_>, col: usize, op: &str) -> Result<Gate> {
    Ok(match op {
        "X" => Gate::X(line.parse("target")?),
        "CX" => Gate::Cnot {
            control: line.parse("control")?,
            target: line.parse("target")?,
        },
        "CCX" => Gate::Toffoli {
            c1: line.parse("control")?,
            c2: line.parse("control")?,
            target: line.parse("target")?,
        },
        "MCX" => {
            let controls = parse_controls(line)?;
            Gate::Mcx {
                controls,
                target: line.parse("target")?,
            }
        }
        "SPL" => {
            let alpha = Complex64::new(line.parse("real part")?, line.parse("imaginary part")?);
            Gate::Spl {
                alpha,
                beta: line.parse("beta")?,
                target: line.parse("target")?,
            }
        }
        "CSPL" => {
            let controls = parse_controls(line)?;
            let alpha = Complex64::new(line.parse("real part")?, line.parse("imaginary part")?);
            Gate::Cspl {
                controls,
                alpha,
                beta: line.parse("beta")?,
                target: line.parse("target")?,
            }
        }
        other => return Err(line.error_at(col, format!("unknown gate {other:?}"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Circuit {
        let mut m = Register::new("M", 0, 4);
        m.starts_one = false;
        let mut f = Register::new("F", 4, 1);
        f.starts_one = true;
        let mut c = Circuit::new(5, vec![m, f]).unwrap();
        c.extend([
            Gate::X(0),
            Gate::Cnot {
                control: 4,
                target: 1,
            },
            Gate::Toffoli {
                c1: 0,
                c2: 1,
                target: 2,
            },
            Gate::mcx(&[0, 1, 2], 3),
            Gate::Spl {
                alpha: Complex64::new(0.6, -0.1),
                beta: 1.0,
                target: 4,
            },
            Gate::cspl(&[0, 3], Complex64::new(0.1, 0.2), 0.7, 4).unwrap(),
        ])
        .unwrap();
        c
    }

    #[test]
    fn round_trip_is_byte_exact() {
        let c = sample();
        let text = c.to_text();
        let back = Circuit::parse(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn comments_are_skipped() {
        let text = "# header\nqubits 2\nreg M 0 1\n# gate\nCX 0 1\n";
        assert_eq!(Circuit::parse(text).unwrap().len(), 1);
    }

    #[test]
    fn diagnostics() {
        let err = Circuit::parse("qubits 2\nreg M 0 1\nFOO 1\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 3,
                    column: 1,
                    ..
                }
            ),
            "{err:?}"
        );
        let err = Circuit::parse("qubits 2\nreg M 0 1\nCX 0 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = Circuit::parse("qubits 2\nreg M 0 1\nMCX 3 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = Circuit::parse("qubits 2\nreg M 0 1\ninit Q\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 3,
                    column: 6,
                    ..
                }
            ),
            "{err:?}"
        );
    }
}
