//! Quantum circuits that place a partial sum of state amplitudes in the
//! amplitude of `|0⟩`.
//!
//! Given a normalized state `|f⟩ = Σ f_s |s⟩` on `n` qubits and `2 ≤ M ≤ 2^n`,
//! [`build_partial_sum_circuit`] synthesizes a circuit of `O(log M)` gates whose
//! unitary has first row `(1/√M)[1 … 1 0 … 0]`, so that the output amplitude
//! of `|0⟩` is `(1/√M) Σ_{k<M} f_k`. [`build_weighted_circuit`] replaces the
//! rotation angles with free parameters to obtain piecewise-constant weights
//! over dyadic segments.
//!
//! The crate also contains a dense statevector simulator, analytic predictions
//! for the first row of every synthesized unitary, and the applications built
//! on top (midpoint-rule integration, even/odd sums, `U ⊗ V` compositions).
//!
//! ```
//! use ampsum_core::{apps::partial_sum_via_circuit, state_from_reals};
//!
//! let state = state_from_reals(&[1.0; 8], true).unwrap();
//! let (c0, sum) = partial_sum_via_circuit(&state, 5).unwrap();
//! assert!((sum.re - 5.0 / 8f64.sqrt()).abs() < 1e-12);
//! assert!((c0.re - sum.re / 5f64.sqrt()).abs() < 1e-12);
//! ```

pub mod apps;
pub mod builder;
pub mod circuit;
mod error;
pub mod oracle;
pub mod simulator;
pub mod state;

pub use builder::{
    build_partial_sum_circuit, build_weighted_circuit, decompose, expected_gate_count,
    BitDecomposition, WeightSpec,
};
pub use circuit::{
    circuit_dagger, gate_matrix, Circuit, ComplexAmp, Control, Gate, GateKind, Polarity,
    UnitaryMatrix,
};
pub use error::{Error, Result};
pub use oracle::{
    brute_force_partial_sum, gamma_weights, predicted_first_row, segment_boundaries,
    weighted_segment_sum, FirstRowOracle, SegmentBoundaries,
};
pub use simulator::{
    amplitude_of_zero, apply_circuit, extract_unitary, first_row, sample_measurements,
};
pub use state::{state_from_amplitudes, state_from_reals, StateVector, NORM_TOLERANCE};
