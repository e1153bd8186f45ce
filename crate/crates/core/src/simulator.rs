//! Dense statevector execution.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, ComplexAmp, Gate, UnitaryMatrix};
use crate::error::{Error, Result};
use crate::state::StateVector;

pub const MAX_SIM_QUBITS: usize = 20;
pub const MAX_UNITARY_QUBITS: usize = 12;

fn apply_gate(amps: &mut [Complex64], gate: &Gate) {
    let [[u00, u01], [u10, u11]] = gate.kind.matrix();
    let tbit = 1usize << gate.target;
    let control = gate.control.map(|c| (1usize << c.qubit, c.polarity.active_bit()));
    for i in 0..amps.len() {
        if i & tbit != 0 {
            continue;
        }
        if let Some((cbit, active)) = control {
            if usize::from(i & cbit != 0) != active {
                continue;
            }
        }
        let j = i | tbit;
        let (a, b) = (amps[i], amps[j]);
        amps[i] = a * u00 + b * u01;
        amps[j] = a * u10 + b * u11;
    }
}

fn run(circuit: &Circuit, amps: &mut [Complex64]) {
    for g in circuit.gates() {
        apply_gate(amps, g);
    }
}

pub fn apply_circuit(circuit: &Circuit, state: &StateVector) -> Result<StateVector> {
    let n = state.n_qubits();
    if circuit.n_qubits() != n {
        return Err(Error::DimensionMismatch { expected: circuit.n_qubits(), found: n });
    }
    if n > MAX_SIM_QUBITS {
        return Err(Error::TooManyQubits { n, max: MAX_SIM_QUBITS });
    }
    let mut amps = state.amplitudes().to_vec();
    run(circuit, &mut amps);
    Ok(StateVector::from_evolved(n, amps))
}

/// Full matrix of the circuit; column `j` is the image of `|j⟩`.
pub fn extract_unitary(circuit: &Circuit) -> Result<UnitaryMatrix> {
    let n = circuit.n_qubits();
    if n > MAX_UNITARY_QUBITS {
        return Err(Error::TooManyQubits { n, max: MAX_UNITARY_QUBITS });
    }
    let dim = 1usize << n;
    let columns = (0..dim)
        .map(|j| {
            let mut col = vec![Complex64::new(0.0, 0.0); dim];
            col[j] = Complex64::new(1.0, 0.0);
            run(circuit, &mut col);
            col
        })
        .collect();
    Ok(UnitaryMatrix::from_columns(dim, columns))
}

/// Row 0 of the circuit unitary from a single simulation of the inverse:
/// `⟨0|U|j⟩ = conj(⟨j|U†|0⟩)`.
pub fn first_row(circuit: &Circuit) -> Result<Vec<ComplexAmp>> {
    let zero = StateVector::zero(circuit.n_qubits())?;
    let col = apply_circuit(&circuit.dagger(), &zero)?;
    Ok(col.into_amplitudes().into_iter().map(|a| a.conj()).collect())
}

pub fn amplitude_of_zero(state: &StateVector) -> ComplexAmp {
    state.amplitudes()[0]
}

/// Applies `v` (of dimension `2^r`) to the `r` least significant qubits.
pub fn apply_unitary_low(v: &UnitaryMatrix, state: &StateVector) -> Result<StateVector> {
    let block = v.dim();
    if !block.is_power_of_two() || block > state.dim() {
        return Err(Error::DimensionMismatch { expected: state.dim(), found: block });
    }
    let mut out = vec![Complex64::new(0.0, 0.0); state.dim()];
    for (src, dst) in state.amplitudes().chunks(block).zip(out.chunks_mut(block)) {
        for (i, d) in dst.iter_mut().enumerate() {
            *d = v.row(i).iter().zip(src).map(|(u, x)| u * x).sum();
        }
    }
    Ok(StateVector::from_evolved(state.n_qubits(), out))
}

/// Draws `shots` basis indices i.i.d. from `|amp_s|²`.
pub fn sample_measurements(state: &StateVector, shots: u64, seed: u64) -> BTreeMap<usize, u64> {
    let mut counts = BTreeMap::new();
    if shots == 0 {
        return counts;
    }
    let dist = WeightedIndex::new(state.amplitudes().iter().map(|a| a.norm_sqr()))
        .expect("a normalized state has positive total weight");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..shots {
        *counts.entry(dist.sample(&mut rng)).or_insert(0) += 1;
    }
    counts
}
