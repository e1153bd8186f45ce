use num_complex::Complex64;

use crate::circuit::ComplexAmp;
use crate::error::{Error, Result};

/// Allowed deviation of `‖ψ‖` from 1 when loading a state without
/// normalization.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// A normalized vector of `2^n` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<ComplexAmp>,
}

impl StateVector {
    /// The computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::EmptyRegister);
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::DimensionMismatch { expected: dim, found: index });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    /// Wraps amplitudes produced by unitary evolution; no norm check.
    pub(crate) fn from_evolved(n_qubits: usize, amps: Vec<ComplexAmp>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n_qubits);
        Self { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[ComplexAmp] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<ComplexAmp> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amps)
    }
}

fn l2_norm(values: &[ComplexAmp]) -> f64 {
    values.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Builds a state from raw amplitudes.
///
/// With `normalize` set the vector is divided by its Euclidean norm; otherwise
/// it must already have unit norm within [`NORM_TOLERANCE`].
pub fn state_from_amplitudes(values: Vec<ComplexAmp>, normalize: bool) -> Result<StateVector> {
    let len = values.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwoLength { len });
    }
    if let Some(index) = values.iter().position(|a| !a.re.is_finite() || !a.im.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    let norm = l2_norm(&values);
    let amps = if normalize {
        if norm == 0.0 {
            return Err(Error::ZeroNorm);
        }
        values.into_iter().map(|a| a / norm).collect()
    } else {
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm, tolerance: NORM_TOLERANCE });
        }
        values
    };
    Ok(StateVector { n_qubits: len.trailing_zeros() as usize, amps })
}

/// Real-valued convenience wrapper around [`state_from_amplitudes`].
pub fn state_from_reals(values: &[f64], normalize: bool) -> Result<StateVector> {
    state_from_amplitudes(values.iter().map(|&v| Complex64::new(v, 0.0)).collect(), normalize)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 16-component vector used as the worked partial-sum example.
    fn example_vector() -> Vec<f64> {
        let mut v = vec![1.0 / 64f64.sqrt(); 8];
        v.extend([1.0 / 32f64.sqrt(); 4]);
        v.extend([1.0 / 8f64.sqrt(); 2]);
        v.push(1.0 / 2f64.sqrt());
        v.push(0.0);
        v
    }

    #[test]
    fn basis_state_accepted() {
        let s = state_from_reals(&[1.0, 0.0, 0.0, 0.0], false).unwrap();
        assert_eq!(s, StateVector::zero(2).unwrap());
    }

    #[test]
    fn normalizes_uniform() {
        let s = state_from_reals(&[1.0; 4], true).unwrap();
        assert_eq!(s.n_qubits(), 2);
        for a in s.amplitudes() {
            assert!((a.re - 0.5).abs() < 1e-15 && a.im == 0.0);
        }
    }

    #[test]
    fn example_vector_is_normalized() {
        let s = state_from_reals(&example_vector(), false).unwrap();
        assert_eq!(s.n_qubits(), 4);
        assert!((s.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(state_from_reals(&[1.0, 0.0, 0.0], false), Err(Error::NotPowerOfTwoLength { len: 3 }));
        assert_eq!(state_from_reals(&[1.0], false), Err(Error::NotPowerOfTwoLength { len: 1 }));
        assert_eq!(state_from_reals(&[0.0; 4], true), Err(Error::ZeroNorm));
        assert!(matches!(state_from_reals(&[1.0, 1.0], false), Err(Error::NotNormalized { .. })));
        assert_eq!(state_from_reals(&[f64::NAN, 1.0], true), Err(Error::NonFinite { index: 0 }));
        assert_eq!(
            state_from_reals(&[1.0, f64::INFINITY], false),
            Err(Error::NonFinite { index: 1 })
        );
    }

    #[test]
    fn norm_tolerance_boundary() {
        assert!(state_from_reals(&[1.0 + 5e-10, 0.0], false).is_ok());
        assert!(state_from_reals(&[1.0 + 5e-9, 0.0], false).is_err());
    }
}
