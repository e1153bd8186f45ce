//! Text formats: the line-oriented circuit listing, OpenQASM 3 export, and
//! the JSON state / weights / samples files.

use std::fmt::Write as _;
use std::path::Path;

use ampsum_core::{
    state_from_amplitudes, Circuit, ComplexAmp, Control, Gate, GateKind, Polarity, StateVector,
};
use num_complex::Complex64;
use serde::Deserialize;

use crate::error::CliError;

/// Formats `value` with `digits` significant digits, in plain decimal notation
/// where that stays short and in exponent notation otherwise.
pub fn format_significant(value: f64, digits: usize) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{value}");
    }
    let exponent = value.abs().log10().floor() as i32;
    if !(-5..17).contains(&exponent) {
        return format!("{:.*e}", digits - 1, value);
    }
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    format!("{value:.decimals$}")
}

pub const ANGLE_DIGITS: usize = 17;

/// Renders a circuit as
///
/// ```text
/// qubits <n>
/// [ctrl <c> <0|1>] h <t> | x <t> | ry <theta> <t>
/// ```
pub fn emit_circuit_text(circuit: &Circuit) -> String {
    let mut out = format!("qubits {}\n", circuit.n_qubits());
    for g in circuit.gates() {
        if let Some(c) = g.control {
            let _ = write!(out, "ctrl {} {} ", c.qubit, c.polarity.active_bit());
        }
        let _ = match g.kind {
            GateKind::Hadamard => writeln!(out, "h {}", g.target),
            GateKind::PauliX => writeln!(out, "x {}", g.target),
            GateKind::RotY(theta) => {
                writeln!(out, "ry {} {}", format_significant(theta, ANGLE_DIGITS), g.target)
            }
        };
    }
    out
}

/// Parses the circuit listing. Blank lines and lines starting with `#` are
/// skipped.
pub fn parse_circuit_text(text: &str) -> Result<Circuit, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (lineno, header) = lines.next().ok_or_else(|| CliError::parse(1, "missing header"))?;
    let n_qubits = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["qubits", n] => parse_num::<usize>(lineno, n)?,
        _ => return Err(CliError::parse(lineno, "expected `qubits <n>`")),
    };
    let mut circuit = Circuit::new(n_qubits).map_err(|e| CliError::parse(lineno, e))?;

    for (lineno, line) in lines {
        let mut tokens: Vec<&str> = line.split_whitespace().collect();
        let mut control = None;
        if tokens.first() == Some(&"ctrl") {
            if tokens.len() < 3 {
                return Err(CliError::parse(lineno, "expected `ctrl <qubit> <0|1>`"));
            }
            let qubit = parse_num::<usize>(lineno, tokens[1])?;
            let polarity = match tokens[2] {
                "0" => Polarity::ActiveOnZero,
                "1" => Polarity::ActiveOnOne,
                other => return Err(CliError::parse(lineno, format!("bad polarity `{other}`"))),
            };
            control = Some(Control { qubit, polarity });
            tokens.drain(..3);
        }
        let (kind, target) = match tokens[..] {
            ["h", t] => (GateKind::Hadamard, t),
            ["x", t] => (GateKind::PauliX, t),
            ["ry", theta, t] => (GateKind::RotY(parse_num::<f64>(lineno, theta)?), t),
            _ => return Err(CliError::parse(lineno, format!("unrecognized gate `{line}`"))),
        };
        let gate = Gate { kind, target: parse_num(lineno, target)?, control };
        circuit.push(gate).map_err(|e| CliError::parse(lineno, e))?;
    }
    Ok(circuit)
}

fn parse_num<T: std::str::FromStr>(lineno: usize, token: &str) -> Result<T, CliError> {
    token.parse().map_err(|_| CliError::parse(lineno, format!("invalid number `{token}`")))
}

/// OpenQASM 3 rendering. Active-on-zero controls are lowered to an
/// active-on-one control wrapped in X gates on the control qubit.
pub fn emit_qasm(circuit: &Circuit, original_count: Option<&str>) -> String {
    let mut out = String::from("OPENQASM 3.0;\ninclude \"stdgates.inc\";\n");
    if let Some(note) = original_count {
        let _ = writeln!(out, "// original gate count: {note}");
    }
    if circuit.gates().iter().any(|g| matches!(g.control, Some(c) if c.polarity == Polarity::ActiveOnZero)) {
        out.push_str("// negative controls lowered as x; c<gate>; x on the control qubit\n");
    }
    let _ = writeln!(out, "qubit[{}] q;", circuit.n_qubits());
    for g in circuit.gates() {
        let (name, param) = match g.kind {
            GateKind::Hadamard => ("h", None),
            GateKind::PauliX => ("x", None),
            GateKind::RotY(theta) => ("ry", Some(format_significant(theta, ANGLE_DIGITS))),
        };
        let param = param.map(|p| format!("({p})")).unwrap_or_default();
        match g.control {
            None => {
                let _ = writeln!(out, "{name}{param} q[{}];", g.target);
            }
            Some(c) => {
                let negated = c.polarity == Polarity::ActiveOnZero;
                if negated {
                    let _ = writeln!(out, "x q[{}];", c.qubit);
                }
                let _ = writeln!(out, "c{name}{param} q[{}], q[{}];", c.qubit, g.target);
                if negated {
                    let _ = writeln!(out, "x q[{}];", c.qubit);
                }
            }
        }
    }
    out
}

fn default_true() -> bool {
    true
}

/// JSON state file: `{"n": 2, "amplitudes": [[re, im], ...], "normalized": true}`.
#[derive(Debug, Clone, Deserialize)]
pub struct StateFile {
    pub n: usize,
    pub amplitudes: Vec<[f64; 2]>,
    #[serde(default = "default_true")]
    pub normalized: bool,
}

impl StateFile {
    pub fn into_state(self) -> Result<StateVector, CliError> {
        let expected = 1usize.checked_shl(self.n as u32).unwrap_or(0);
        if self.amplitudes.len() != expected {
            return Err(CliError::Invalid(format!(
                "state file declares n = {} but has {} amplitudes",
                self.n,
                self.amplitudes.len()
            )));
        }
        let amps: Vec<ComplexAmp> =
            self.amplitudes.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        Ok(state_from_amplitudes(amps, !self.normalized)?)
    }
}

pub fn parse_state(text: &str) -> Result<StateVector, CliError> {
    serde_json::from_str::<StateFile>(text)?.into_state()
}

/// A JSON array of reals (weights file, samples file).
pub fn parse_reals(text: &str) -> Result<Vec<f64>, CliError> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failure never leaves a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    use std::io::Write;
    let io_err = |source| CliError::Io { path: path.to_owned(), source };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(contents.as_bytes()).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ampsum_core::build_partial_sum_circuit;

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(1.3535533905932737, 15), "1.35355339059327");
        assert_eq!(format_significant(0.5, 3), "0.500");
        assert_eq!(format_significant(0.0, 17), "0");
        assert_eq!(format_significant(-2.5, 2), "-2.5");
        assert_eq!(format_significant(1e-7, 3), "1.00e-7");
    }

    #[test]
    fn m6_listing() {
        let text = emit_circuit_text(&build_partial_sum_circuit(6, 3).unwrap());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "qubits 3");
        assert_eq!(lines[1], "ctrl 2 0 h 1");
        assert_eq!(lines[2], format!("ry {} 2", format_significant(2.0 * (1.0f64 / 3.0).sqrt().acos(), 17)));
        assert_eq!(&lines[3..], &["h 0", "x 2"]);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = parse_circuit_text("qubits 2\nh 0\nfoo 1\n").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        assert!(parse_circuit_text("").is_err());
        assert!(parse_circuit_text("qubits 2\nh 5\n").is_err());
        assert!(parse_circuit_text("qubits 2\nctrl 1 2 h 0\n").is_err());
        assert!(parse_circuit_text("qubits 2\nctrl 0 0 h 0\n").is_err());
    }

    #[test]
    fn parse_skips_comments() {
        let c = parse_circuit_text("# hi\nqubits 2\n\nctrl 1 1 ry -0.5 0\n# gates: 1\n").unwrap();
        assert_eq!(c.gates(), &[Gate::ry(-0.5, 0).controlled(1, Polarity::ActiveOnOne)]);
    }

    #[test]
    fn qasm_lowers_negative_controls() {
        let q = emit_qasm(&build_partial_sum_circuit(3, 2).unwrap(), Some("3 (l_k + 2k)"));
        assert!(q.starts_with("OPENQASM 3.0;\n"));
        assert!(q.contains("// original gate count: 3 (l_k + 2k)"));
        assert!(q.contains("x q[1];\nch q[1], q[0];\nx q[1];\n"), "{q}");
        assert!(q.contains("ry(1.9106332362490"));
        assert!(q.trim_end().ends_with("x q[1];"));
    }

    #[test]
    fn state_file_checks() {
        let s = parse_state(r#"{"n": 1, "amplitudes": [[1, 0], [0, 0]]}"#).unwrap();
        assert_eq!(s.n_qubits(), 1);
        let s = parse_state(r#"{"n": 1, "amplitudes": [[3, 0], [0, 4]], "normalized": false}"#).unwrap();
        assert!((s.amplitudes()[1].im - 0.8).abs() < 1e-15);
        assert!(parse_state(r#"{"n": 2, "amplitudes": [[1, 0], [0, 0]]}"#).is_err());
        assert!(parse_state(r#"{"n": 1, "amplitudes": [[1, 0], [1, 0]]}"#).is_err());
        assert!(parse_state("not json").is_err());
    }
}
