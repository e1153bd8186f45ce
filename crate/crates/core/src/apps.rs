//! Partial sums, midpoint-rule integration, even/odd sums and tensor-composed
//! weighted sums, all read off the `|0⟩` amplitude of a simulated circuit.

use crate::builder::build_partial_sum_circuit;
use crate::circuit::{Circuit, ComplexAmp, Gate, UnitaryMatrix};
use crate::error::{Error, Result};
use crate::simulator::{amplitude_of_zero, apply_circuit, apply_unitary_low};
use crate::state::{state_from_reals, StateVector};

/// Runs the partial-sum circuit on `state`.
///
/// Returns `(c0, S_M)` where `c0 = (1/√M) Σ_{k<M} f_k` is the `|0⟩` amplitude
/// and `S_M = √M · c0`.
pub fn partial_sum_via_circuit(state: &StateVector, m: usize) -> Result<(ComplexAmp, ComplexAmp)> {
    let circuit = build_partial_sum_circuit(m, state.n_qubits())?;
    let c0 = amplitude_of_zero(&apply_circuit(&circuit, state)?);
    Ok((c0, c0 * (m as f64).sqrt()))
}

/// Midpoint samples of an integrand on `[0, 1]` together with the upper
/// limit `M/N`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrationSpec {
    n: usize,
    m: usize,
    samples: Vec<f64>,
    norm: f64,
}

impl IntegrationSpec {
    /// `samples[k]` is the integrand at `x_k = (2k+1)/(2N)`; its length fixes `N`.
    pub fn new(m: usize, samples: Vec<f64>) -> Result<Self> {
        let len = samples.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwoLength { len });
        }
        if let Some(index) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let n = len.trailing_zeros() as usize;
        if m < 2 || m > len {
            return Err(Error::MOutOfRange { m, n });
        }
        let norm = samples.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(Self { n, m, samples, norm })
    }

    /// Samples `f` at the `2^n` midpoints.
    pub fn from_fn(n: usize, m: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let samples = midpoints(n).map(f).collect();
        Self::new(m, samples)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn dx(&self) -> f64 {
        1.0 / self.samples.len() as f64
    }

    /// Upper integration limit `a = M/N`.
    pub fn upper_limit(&self) -> f64 {
        self.m as f64 * self.dx()
    }
}

/// `x_k = (2k+1)/(2N)` for `k < N = 2^n`.
pub fn midpoints(n: usize) -> impl Iterator<Item = f64> {
    let big_n = (1usize << n) as f64;
    (0..1usize << n).map(move |k| (2 * k + 1) as f64 / (2.0 * big_n))
}

/// Midpoint-rule estimate of `∫_0^{M/N} f`, as `dx · ‖f‖ · √M · Re(c0)`.
pub fn integrate_midpoint(spec: &IntegrationSpec) -> Result<f64> {
    let state = state_from_reals(&spec.samples, true)?;
    let (c0, _) = partial_sum_via_circuit(&state, spec.m)?;
    Ok(spec.dx() * spec.norm * (spec.m as f64).sqrt() * c0.re)
}

/// Closed form of `∫_0^a sin(πx) dx`.
pub fn sin_pi_integral(a: f64) -> f64 {
    (1.0 - (std::f64::consts::PI * a).cos()) / std::f64::consts::PI
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// `U ⊗ I` (even) or `U ⊗ X` (odd) on an `n+1` qubit state, with `U` the
/// partial-sum unitary on the high `n` qubits.
///
/// Returns `(c0, S)` with `S = √M · c0`, which is `Σ_{k<M} f_{2k}` (even) or
/// `Σ_{k<M} f_{2k+1}` (odd).
pub fn even_odd_partial_sum(
    state: &StateVector,
    m: usize,
    parity: Parity,
) -> Result<(ComplexAmp, ComplexAmp)> {
    let total = state.n_qubits();
    if total < 2 {
        return Err(Error::DimensionMismatch { expected: 4, found: state.dim() });
    }
    let u = build_partial_sum_circuit(m, total - 1)?;
    let mut circuit = u.shifted(1, total)?;
    if parity == Parity::Odd {
        circuit.push(Gate::x(0))?;
    }
    let c0 = amplitude_of_zero(&apply_circuit(&circuit, state)?);
    Ok((c0, c0 * (m as f64).sqrt()))
}

/// `⟨0|U ⊗ V|g⟩` with `U` the partial-sum unitary on the high qubits and `V`
/// acting on the low `r = log₂ dim(V)` qubits.
pub fn tensor_weighted_sum(state: &StateVector, m: usize, v: &UnitaryMatrix) -> Result<ComplexAmp> {
    let block = v.dim();
    let total = state.n_qubits();
    if block < 2 || !block.is_power_of_two() {
        return Err(Error::NotPowerOfTwoLength { len: block });
    }
    let r = block.trailing_zeros() as usize;
    if r >= total {
        return Err(Error::DimensionMismatch { expected: state.dim(), found: block });
    }
    let u: Circuit = build_partial_sum_circuit(m, total - r)?.shifted(r, total)?;
    let after_u = apply_circuit(&u, state)?;
    Ok(amplitude_of_zero(&apply_unitary_low(v, &after_u)?))
}
