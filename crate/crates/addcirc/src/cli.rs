//! Batch command-line front end.
//!
//! One subcommand per pipeline stage: `translate` (qubit → additive),
//! `simplify` (canonicalization), `synth` (additive → qubit), `verify`
//! (Hilbert–Schmidt fidelity of two files), `matrix` (dense printout) and
//! `render` (SVG). Inputs read from a path or stdin, outputs write to a path
//! or stdout. Exit codes: 0 success or PASS, 1 verification FAIL, 2 usage or
//! parse errors.

use std::fmt;
use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::dag::{canonical_dag, render_dag_text};
use crate::io::{emit_additive, emit_mult, parse_additive, parse_angle_literal, parse_any,
                parse_mult, CircuitFile};
use crate::ir::{AdditiveGate, BasisIndex};
use crate::render::render_svg;
use crate::rewrite::canonicalize;
use crate::semantics::{eval_additive, eval_mult, hs_fidelity};
use crate::synth::synthesize;
use crate::translate::translate_circuit;
use crate::{AdditiveCircuit, UnitaryMatrix};

#[derive(Parser)]
#[command(
    name = "addcirc",
    version,
    about = "Convert, simplify, synthesize and verify direct-sum quantum circuits"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a qubit circuit file to an additive circuit
    Translate {
        /// Input file (stdin when omitted)
        file: Option<PathBuf>,
        /// Output file (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Canonicalize an additive circuit; trailing swaps are emitted last
    Simplify {
        file: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Synthesize an executable qubit circuit from an additive circuit
    Synth {
        file: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Print gate counts and routing statistics to stderr
        #[arg(long)]
        report: bool,
        /// Dump the internal DAG (one vertex/edge per line) to stderr
        #[arg(long)]
        dump_dag: bool,
    },
    /// Compare two circuit files by Hilbert-Schmidt fidelity
    Verify {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Fidelity tolerance (accepts pi fractions)
        #[arg(long, default_value = "1e-9", value_parser = parse_numeric_flag)]
        tol: f64,
    },
    /// Print the dense unitary matrix of a circuit file
    Matrix {
        file: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render an additive circuit as SVG
    Render {
        file: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Basis state to trace through the circuit for wire styling
        #[arg(long = "input", value_name = "BASIS")]
        basis: Option<usize>,
    },
}

fn parse_numeric_flag(text: &str) -> Result<f64, String> {
    parse_angle_literal(text).ok_or_else(|| format!("`{text}` is not a number or pi fraction"))
}

#[derive(Debug)]
struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(err: E) -> Self {
        CliError(err.to_string())
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => {
            fs::read_to_string(p).map_err(|e| CliError(format!("{}: {e}", p.display())))
        }
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

fn write_output(path: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| CliError(format!("{}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn format_matrix(matrix: &UnitaryMatrix) -> String {
    let mut out = String::new();
    for r in 0..matrix.dim() {
        let row: Vec<String> = (0..matrix.dim())
            .map(|c| {
                let e = matrix.get(r, c);
                format!("{:.6}{:+.6}i", e.re, e.im)
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Translate { file, output } => {
            let circuit = parse_mult(&read_input(&file)?)?;
            write_output(&output, &emit_additive(&translate_circuit(&circuit)))?;
            Ok(0)
        }
        Command::Simplify { file, output } => {
            let circuit = parse_additive(&read_input(&file)?)?;
            let (canonical, trailing) = canonicalize(&circuit);
            let mut emitted = canonical;
            for (i, j) in trailing.transpositions() {
                emitted.append(AdditiveGate::swap(i, j)).expect("perm indices in range");
            }
            write_output(&output, &emit_additive(&emitted))?;
            Ok(0)
        }
        Command::Synth { file, output, report, dump_dag } => {
            let circuit = parse_additive(&read_input(&file)?)?;
            let dag = canonical_dag(&circuit);
            if dump_dag {
                eprint!("{}", render_dag_text(&dag));
            }
            let result = synthesize(&dag)?;
            if report {
                let c = result.counts;
                eprintln!(
                    "ry {}\nrz {}\nx {}\ncx {}\nmcx {}\nmcry {}\ncphase {}\ntotal {}\nrouting-permutations {}",
                    c.ry, c.rz, c.x, c.cx, c.mcx, c.mcry, c.cphase, c.total(),
                    result.routing_permutations
                );
            }
            write_output(&output, &emit_mult(&result.output))?;
            Ok(0)
        }
        Command::Verify { file_a, file_b, tol } => {
            let a = evaluate_file(&read_input(&Some(file_a.clone()))?)?;
            let b = evaluate_file(&read_input(&Some(file_b.clone()))?)?;
            let fidelity = hs_fidelity(&a, &b)?;
            println!("fidelity {fidelity:.12}");
            if fidelity >= 1.0 - tol {
                println!("PASS");
                Ok(0)
            } else {
                println!("FAIL");
                Ok(1)
            }
        }
        Command::Matrix { file, output } => {
            let matrix = evaluate_file(&read_input(&file)?)?;
            write_output(&output, &format_matrix(&matrix))?;
            Ok(0)
        }
        Command::Render { file, output, basis } => {
            let circuit = parse_additive(&read_input(&file)?)?;
            let input = match basis {
                Some(b) => Some(basis_checked(&circuit, b)?),
                None => None,
            };
            write_output(&output, &render_svg(&circuit, input))?;
            Ok(0)
        }
    }
}

fn basis_checked(circuit: &AdditiveCircuit, b: usize) -> Result<BasisIndex, CliError> {
    BasisIndex::new(b, circuit.dim()).map_err(CliError::from)
}

fn evaluate_file(text: &str) -> Result<UnitaryMatrix, CliError> {
    Ok(match parse_any(text)? {
        CircuitFile::Additive(c) => eval_additive(&c),
        CircuitFile::Mult(c) => eval_mult(&c),
    })
}

/// Parses arguments and runs; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}
