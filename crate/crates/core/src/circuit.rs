//! Gates, circuits and the dense matrix type shared by the simulator.
//!
//! Qubit `q` corresponds to bit `q` of the basis-state index, so `q0` is the
//! least significant bit and `|s⟩` is indexed in ordinary binary.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexAmp = Complex64;

/// Which control value makes a controlled gate fire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    ActiveOnOne,
    ActiveOnZero,
}

impl Polarity {
    /// The control bit value that activates the gate.
    pub fn active_bit(self) -> usize {
        match self {
            Polarity::ActiveOnOne => 1,
            Polarity::ActiveOnZero => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    Hadamard,
    PauliX,
    /// Rotation about Y by `theta` radians.
    RotY(f64),
}

impl GateKind {
    /// The 2x2 single-qubit unitary, row-major.
    ///
    /// `RY(θ) = [[cos θ/2, -sin θ/2], [sin θ/2, cos θ/2]]`.
    pub fn matrix(self) -> [[f64; 2]; 2] {
        match self {
            GateKind::Hadamard => {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                [[h, h], [h, -h]]
            }
            GateKind::PauliX => [[0.0, 1.0], [1.0, 0.0]],
            GateKind::RotY(theta) => {
                let (s, c) = (theta / 2.0).sin_cos();
                [[c, -s], [s, c]]
            }
        }
    }

    pub fn inverse(self) -> GateKind {
        match self {
            GateKind::RotY(theta) => GateKind::RotY(-theta),
            other => other,
        }
    }
}

/// A single-qubit gate with at most one control.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub target: usize,
    pub control: Option<Control>,
}

impl Gate {
    pub fn h(target: usize) -> Self {
        Self { kind: GateKind::Hadamard, target, control: None }
    }

    pub fn x(target: usize) -> Self {
        Self { kind: GateKind::PauliX, target, control: None }
    }

    pub fn ry(theta: f64, target: usize) -> Self {
        Self { kind: GateKind::RotY(theta), target, control: None }
    }

    pub fn controlled(mut self, qubit: usize, polarity: Polarity) -> Self {
        self.control = Some(Control { qubit, polarity });
        self
    }

    /// Qubits touched by this gate, target first.
    pub fn qubits(&self) -> impl Iterator<Item = usize> {
        std::iter::once(self.target).chain(self.control.map(|c| c.qubit))
    }

    pub fn inverse(&self) -> Gate {
        Gate { kind: self.kind.inverse(), ..*self }
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        if let GateKind::RotY(theta) = self.kind {
            if !theta.is_finite() {
                return Err(Error::NonFiniteAngle);
            }
        }
        for qubit in self.qubits() {
            if qubit >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit, n_qubits });
            }
        }
        match self.control {
            Some(c) if c.qubit == self.target => Err(Error::ControlIsTarget { qubit: c.qubit }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.control {
            let marker = match c.polarity {
                Polarity::ActiveOnOne => "",
                Polarity::ActiveOnZero => "!",
            };
            write!(f, "c[{marker}q{}] ", c.qubit)?;
        }
        match self.kind {
            GateKind::Hadamard => write!(f, "H q{}", self.target),
            GateKind::PauliX => write!(f, "X q{}", self.target),
            GateKind::RotY(theta) => write!(f, "RY({theta}) q{}", self.target),
        }
    }
}

/// Local unitary of a gate.
///
/// Uncontrolled gates give a 2x2 matrix. Controlled gates give a 4x4 matrix on
/// the local basis `|c t⟩` with index `2c + t` (control as the high bit).
pub fn gate_matrix(gate: &Gate) -> UnitaryMatrix {
    let m = gate.kind.matrix();
    match gate.control {
        None => UnitaryMatrix::from_real_rows(&[m[0].to_vec(), m[1].to_vec()]),
        Some(c) => {
            let mut rows = vec![vec![0.0; 4]; 4];
            let active = c.polarity.active_bit();
            for cb in 0..2 {
                for i in 0..2 {
                    for j in 0..2 {
                        let v = if cb == active { m[i][j] } else if i == j { 1.0 } else { 0.0 };
                        rows[2 * cb + i][2 * cb + j] = v;
                    }
                }
            }
            UnitaryMatrix::from_real_rows(&rows)
        }
    }
}

/// Ordered gate list over a fixed register; the first gate acts first.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::EmptyRegister);
        }
        Ok(Self { n_qubits, gates: Vec::new() })
    }

    pub fn from_gates(n_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        let mut c = Self::new(n_qubits)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Number of layers when each gate starts right after the last gate
    /// sharing a qubit with it.
    pub fn depth(&self) -> usize {
        let mut layer = vec![0usize; self.n_qubits];
        let mut depth = 0;
        for g in &self.gates {
            let next = g.qubits().map(|q| layer[q]).max().unwrap_or(0) + 1;
            for q in g.qubits() {
                layer[q] = next;
            }
            depth = depth.max(next);
        }
        depth
    }

    /// The inverse circuit: reversed order, rotation angles negated.
    pub fn dagger(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Relabels every qubit `q` as `q + offset` inside a register of
    /// `n_total` qubits.
    pub fn shifted(&self, offset: usize, n_total: usize) -> Result<Circuit> {
        let gates = self.gates.iter().map(|g| Gate {
            target: g.target + offset,
            control: g.control.map(|c| Control { qubit: c.qubit + offset, ..c }),
            ..*g
        });
        Circuit::from_gates(n_total, gates)
    }
}

pub fn circuit_dagger(circuit: &Circuit) -> Circuit {
    circuit.dagger()
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} qubits, {} gates", self.n_qubits, self.gates.len())?;
        for g in &self.gates {
            writeln!(f, "  {g}")?;
        }
        Ok(())
    }
}

/// Dense square complex matrix with entry `(i, j) = ⟨i|U|j⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl UnitaryMatrix {
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            entries.extend_from_slice(row);
        }
        Ok(Self { dim, entries })
    }

    fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let dim = rows.len();
        let entries = rows.iter().flatten().map(|&v| Complex64::new(v, 0.0)).collect();
        Self { dim, entries }
    }

    pub(crate) fn from_columns(dim: usize, columns: Vec<Vec<Complex64>>) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (j, col) in columns.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                entries[i * dim + j] = v;
            }
        }
        Self { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Self { dim, entries }
    }

    pub fn pauli_x() -> Self {
        gate_matrix(&Gate::x(0))
    }

    pub fn hadamard() -> Self {
        gate_matrix(&Gate::h(0))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    /// Largest entrywise deviation of `U·U†` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let dot: Complex64 =
                    self.row(i).iter().zip(self.row(j)).map(|(a, b)| a * b.conj()).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - expected).norm());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn assert_matrix(m: &UnitaryMatrix, expected: &[[f64; 2]; 2]) {
        for i in 0..2 {
            for j in 0..2 {
                assert!((m.get(i, j) - expected[i][j]).norm() < 1e-15, "({i},{j}) = {}", m.get(i, j));
            }
        }
    }

    #[test]
    fn rotation_matrices() {
        assert_matrix(&gate_matrix(&Gate::ry(0.0, 0)), &[[1.0, 0.0], [0.0, 1.0]]);
        assert_matrix(&gate_matrix(&Gate::ry(PI, 0)), &[[0.0, -1.0], [1.0, 0.0]]);
        let h = FRAC_1_SQRT_2;
        assert_matrix(&gate_matrix(&Gate::h(0)), &[[h, h], [h, -h]]);
    }

    #[test]
    fn controlled_matrix_blocks() {
        let m = gate_matrix(&Gate::x(0).controlled(1, Polarity::ActiveOnZero));
        assert_eq!(m.dim(), 4);
        // |c=0⟩ block is X, |c=1⟩ block is identity
        assert_eq!(m.get(0, 1).re, 1.0);
        assert_eq!(m.get(1, 0).re, 1.0);
        assert_eq!(m.get(2, 2).re, 1.0);
        assert_eq!(m.get(3, 3).re, 1.0);
        assert!(m.unitarity_defect() < 1e-15);

        let m = gate_matrix(&Gate::x(0).controlled(1, Polarity::ActiveOnOne));
        assert_eq!(m.get(0, 0).re, 1.0);
        assert_eq!(m.get(2, 3).re, 1.0);
    }

    #[test]
    fn dagger_reverses_and_negates() {
        let empty = Circuit::new(2).unwrap();
        assert!(empty.dagger().is_empty());

        let c = Circuit::from_gates(1, [Gate::h(0)]).unwrap();
        assert_eq!(c.dagger(), c);

        let c = Circuit::from_gates(2, [Gate::ry(0.7, 1), Gate::x(0)]).unwrap();
        let d = circuit_dagger(&c);
        assert_eq!(d.gates(), &[Gate::x(0), Gate::ry(-0.7, 1)]);

        let c = Circuit::from_gates(2, [Gate::ry(0.3, 0).controlled(1, Polarity::ActiveOnZero)])
            .unwrap();
        assert_eq!(
            c.dagger().gates()[0],
            Gate::ry(-0.3, 0).controlled(1, Polarity::ActiveOnZero)
        );
    }

    #[test]
    fn rejects_invalid_gates() {
        let mut c = Circuit::new(2).unwrap();
        assert_eq!(c.push(Gate::h(2)), Err(Error::QubitOutOfRange { qubit: 2, n_qubits: 2 }));
        assert_eq!(
            c.push(Gate::h(0).controlled(3, Polarity::ActiveOnOne)),
            Err(Error::QubitOutOfRange { qubit: 3, n_qubits: 2 })
        );
        assert_eq!(
            c.push(Gate::h(1).controlled(1, Polarity::ActiveOnOne)),
            Err(Error::ControlIsTarget { qubit: 1 })
        );
        assert_eq!(c.push(Gate::ry(f64::NAN, 0)), Err(Error::NonFiniteAngle));
        assert_eq!(Circuit::new(0), Err(Error::EmptyRegister));
    }

    #[test]
    fn depth_counts_layers() {
        let c = Circuit::from_gates(3, [Gate::h(0), Gate::h(1), Gate::h(2)]).unwrap();
        assert_eq!(c.depth(), 1);
        let c = Circuit::from_gates(
            3,
            [Gate::h(0), Gate::x(1).controlled(0, Polarity::ActiveOnOne), Gate::h(2), Gate::x(1)],
        )
        .unwrap();
        assert_eq!(c.depth(), 3);
    }
}
