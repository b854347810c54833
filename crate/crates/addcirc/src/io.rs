//! Plain-text serialization of both circuit kinds.
//!
//! Additive files:
//!
//! ```text
//! dims N
//! phase θ          # optional, omitted when zero
//! ry i j θ
//! rz k θ
//! swap i j
//! ```
//!
//! Qubit circuit files:
//!
//! ```text
//! qubits n
//! phase θ
//! ry q θ | rz q θ | x q | cx c t
//! mcx c1,c2,... t | mcry c1,... t θ | cphase c1,... θ
//! ```
//!
//! `#` starts a comment, blank lines are skipped, and `-` stands for an
//! empty control list. Angles parse as decimals or as pi fractions
//! (`pi`, `-pi/2`, `3pi/4`, `0.5pi`); they are emitted as the shortest
//! decimal that reparses to the identical value, so `parse(emit(c))`
//! reproduces `c` exactly.

use std::fmt;

use crate::ir::IrError;
use crate::{AdditiveCircuit, AdditiveGate, Angle, MultCircuit, MultGate};

/// A parse failure with its 1-based source line.
#[derive(Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Either kind of circuit, as found in a file.
#[derive(Clone, Debug, PartialEq)]
pub enum CircuitFile {
    Additive(AdditiveCircuit),
    Mult(MultCircuit),
}

/// Parses an angle literal: a decimal or a pi fraction like `pi`, `-pi/2`,
/// `3pi/4`, `0.5pi`.
pub fn parse_angle_literal(text: &str) -> Option<f64> {
    let s = text.trim();
    if let Ok(v) = s.parse::<f64>() {
        return v.is_finite().then_some(v);
    }
    let (sign, s) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, s),
    };
    let pi_at = s.find("pi")?;
    let (coef_text, rest) = (&s[..pi_at], &s[pi_at + 2..]);
    let coef = if coef_text.is_empty() { 1.0 } else { coef_text.parse::<f64>().ok()? };
    let div = match rest.strip_prefix('/') {
        Some(d) => d.parse::<f64>().ok()?,
        None if rest.is_empty() => 1.0,
        None => return None,
    };
    if div == 0.0 {
        return None;
    }
    let v = sign * coef * std::f64::consts::PI / div;
    v.is_finite().then_some(v)
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

struct Lines<'a> {
    items: Vec<(usize, Vec<&'a str>)>,
}

impl<'a> Lines<'a> {
    fn scan(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .map(|(idx, raw)| {
                let content = raw.split('#').next().unwrap_or("");
                (idx + 1, content.split_whitespace().collect::<Vec<_>>())
            })
            .filter(|(_, tokens)| !tokens.is_empty())
            .collect();
        Lines { items }
    }
}

fn parse_index(token: &str, line: usize) -> Result<usize, ParseError> {
    match token.parse::<usize>() {
        Ok(v) => Ok(v),
        Err(_) => fail(line, format!("malformed index `{token}`")),
    }
}

fn parse_angle(token: &str, line: usize) -> Result<f64, ParseError> {
    match parse_angle_literal(token) {
        Some(v) => Ok(v),
        None => fail(line, format!("malformed number `{token}`")),
    }
}

fn parse_controls(token: &str, line: usize) -> Result<Vec<usize>, ParseError> {
    if token == "-" {
        return Ok(Vec::new());
    }
    token.split(',').map(|t| parse_index(t, line)).collect()
}

fn arity(tokens: &[&str], expected: usize, line: usize) -> Result<(), ParseError> {
    if tokens.len() == expected + 1 {
        Ok(())
    } else {
        fail(line, format!("`{}` takes {} argument(s)", tokens[0], expected))
    }
}

fn ir_error(err: IrError, line: usize) -> ParseError {
    ParseError { line, message: err.to_string() }
}

/// Parses an additive circuit file.
pub fn parse_additive(text: &str) -> Result<AdditiveCircuit, ParseError> {
    let lines = Lines::scan(text);
    let mut iter = lines.items.into_iter();
    let (line, header) = match iter.next() {
        Some(item) => item,
        None => return fail(1, "empty file; expected `dims N`"),
    };
    if header[0] != "dims" {
        return fail(line, format!("expected `dims N`, found `{}`", header[0]));
    }
    arity(&header, 1, line)?;
    let dim = parse_index(header[1], line)?;
    let mut circuit = AdditiveCircuit::new(dim).map_err(|e| ir_error(e, line))?;
    for (line, tokens) in iter {
        match tokens[0] {
            "phase" => {
                arity(&tokens, 1, line)?;
                circuit.add_global_phase(Angle::new(parse_angle(tokens[1], line)?));
            }
            "ry" => {
                arity(&tokens, 3, line)?;
                let i = parse_index(tokens[1], line)?;
                let j = parse_index(tokens[2], line)?;
                let theta = parse_angle(tokens[3], line)?;
                circuit
                    .append(AdditiveGate::ry(i, j, theta))
                    .map_err(|e| ir_error(e, line))?;
            }
            "rz" => {
                arity(&tokens, 2, line)?;
                let k = parse_index(tokens[1], line)?;
                let theta = parse_angle(tokens[2], line)?;
                circuit.append(AdditiveGate::rz(k, theta)).map_err(|e| ir_error(e, line))?;
            }
            "swap" => {
                arity(&tokens, 2, line)?;
                let i = parse_index(tokens[1], line)?;
                let j = parse_index(tokens[2], line)?;
                circuit.append(AdditiveGate::swap(i, j)).map_err(|e| ir_error(e, line))?;
            }
            other => return fail(line, format!("unknown keyword `{other}`")),
        }
    }
    Ok(circuit)
}

/// Parses a qubit circuit file.
pub fn parse_mult(text: &str) -> Result<MultCircuit, ParseError> {
    let lines = Lines::scan(text);
    let mut iter = lines.items.into_iter();
    let (line, header) = match iter.next() {
        Some(item) => item,
        None => return fail(1, "empty file; expected `qubits n`"),
    };
    if header[0] != "qubits" {
        return fail(line, format!("expected `qubits n`, found `{}`", header[0]));
    }
    arity(&header, 1, line)?;
    let n = parse_index(header[1], line)?;
    let mut circuit = MultCircuit::new(n).map_err(|e| ir_error(e, line))?;
    for (line, tokens) in iter {
        let gate = match tokens[0] {
            "phase" => {
                arity(&tokens, 1, line)?;
                circuit.add_global_phase(Angle::new(parse_angle(tokens[1], line)?));
                continue;
            }
            "ry" => {
                arity(&tokens, 2, line)?;
                MultGate::ry(parse_index(tokens[1], line)?, parse_angle(tokens[2], line)?)
            }
            "rz" => {
                arity(&tokens, 2, line)?;
                MultGate::rz(parse_index(tokens[1], line)?, parse_angle(tokens[2], line)?)
            }
            "x" => {
                arity(&tokens, 1, line)?;
                MultGate::X { qubit: parse_index(tokens[1], line)? }
            }
            "cx" => {
                arity(&tokens, 2, line)?;
                MultGate::Cx {
                    control: parse_index(tokens[1], line)?,
                    target: parse_index(tokens[2], line)?,
                }
            }
            "mcx" => {
                arity(&tokens, 2, line)?;
                MultGate::mcx(parse_controls(tokens[1], line)?, parse_index(tokens[2], line)?)
            }
            "mcry" => {
                arity(&tokens, 3, line)?;
                MultGate::mcry(
                    parse_controls(tokens[1], line)?,
                    parse_index(tokens[2], line)?,
                    parse_angle(tokens[3], line)?,
                )
            }
            "cphase" => {
                arity(&tokens, 2, line)?;
                MultGate::cphase(parse_controls(tokens[1], line)?, parse_angle(tokens[2], line)?)
            }
            other => return fail(line, format!("unknown keyword `{other}`")),
        };
        circuit.append(gate).map_err(|e| ir_error(e, line))?;
    }
    Ok(circuit)
}

/// Parses either kind of file, keyed on the header line.
pub fn parse_any(text: &str) -> Result<CircuitFile, ParseError> {
    let first = Lines::scan(text).items.into_iter().next();
    match first {
        Some((_, tokens)) if tokens[0] == "qubits" => Ok(CircuitFile::Mult(parse_mult(text)?)),
        Some((_, tokens)) if tokens[0] == "dims" => {
            Ok(CircuitFile::Additive(parse_additive(text)?))
        }
        Some((line, tokens)) => {
            fail(line, format!("expected `dims N` or `qubits n`, found `{}`", tokens[0]))
        }
        None => fail(1, "empty file"),
    }
}

fn fmt_angle(theta: Angle) -> String {
    format!("{}", theta.radians())
}

fn fmt_controls(controls: &[usize]) -> String {
    if controls.is_empty() {
        "-".to_string()
    } else {
        controls.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Serializes an additive circuit.
pub fn emit_additive(circuit: &AdditiveCircuit) -> String {
    let mut out = format!("dims {}\n", circuit.dim());
    if circuit.global_phase().radians() != 0.0 {
        out.push_str(&format!("phase {}\n", fmt_angle(circuit.global_phase())));
    }
    for gate in circuit.gates() {
        let line = match *gate {
            AdditiveGate::RyPlus { i, j, theta } => format!("ry {i} {j} {}", fmt_angle(theta)),
            AdditiveGate::RzPlus { k, theta } => format!("rz {k} {}", fmt_angle(theta)),
            AdditiveGate::XPlus { i, j } => format!("swap {i} {j}"),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Serializes a qubit circuit.
pub fn emit_mult(circuit: &MultCircuit) -> String {
    let mut out = format!("qubits {}\n", circuit.n_qubits());
    if circuit.global_phase().radians() != 0.0 {
        out.push_str(&format!("phase {}\n", fmt_angle(circuit.global_phase())));
    }
    for gate in circuit.gates() {
        let line = match gate {
            MultGate::Ry { qubit, theta } => format!("ry {qubit} {}", fmt_angle(*theta)),
            MultGate::Rz { qubit, theta } => format!("rz {qubit} {}", fmt_angle(*theta)),
            MultGate::X { qubit } => format!("x {qubit}"),
            MultGate::Cx { control, target } => format!("cx {control} {target}"),
            MultGate::Mcx { controls, target } => {
                format!("mcx {} {target}", fmt_controls(controls))
            }
            MultGate::McRy { controls, target, theta } => {
                format!("mcry {} {target} {}", fmt_controls(controls), fmt_angle(*theta))
            }
            MultGate::CPhase { controls, theta } => {
                format!("cphase {} {}", fmt_controls(controls), fmt_angle(*theta))
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}
