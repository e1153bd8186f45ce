//! Synthesis of the partial-sum unitary `U` whose first row is
//! `(1/√M)[1 … 1 0 … 0]`, and of its weighted generalization.
//!
//! Write `M = Σ_{j=0}^{k} 2^{l_j}` with `l_0 < … < l_k`. When `M` is a power of
//! two the unitary is a Hadamard layer on the low `log₂ M` qubits. Otherwise the
//! circuit is, in order:
//!
//! 1. for `m = k-1 … 1`: controlled-H on qubits `l_{m+1}-1 … l_m`, each
//!    active when `q_{l_{m+1}} = 0`, then a controlled `RY(θ_m)` on
//!    `q_{l_{m+1}}`, active when `q_{l_m} = 0`;
//! 2. controlled-H on qubits `l_1-1 … l_0`, active when `q_{l_1} = 0`;
//! 3. `RY(θ_0)` on `q_{l_1}`;
//! 4. H on qubits `0 … l_0-1`;
//! 5. X on `q_{l_1} … q_{l_k}`.
//!
//! That is `l_k + 2k` gates in total.

use crate::circuit::{Circuit, Gate, Polarity};
use crate::error::{Error, Result};

/// Set-bit positions of `M` and the running remainders `M_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitDecomposition {
    m: usize,
    n: usize,
    positions: Vec<usize>,
    /// `remainders[m] = M_m = Σ_{j ≤ m} 2^{l_j}` for `m = 0 … k-1`.
    remainders: Vec<usize>,
}

impl BitDecomposition {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `l_0 < l_1 < … < l_k`.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn position(&self, j: usize) -> usize {
        self.positions[j]
    }

    /// `popcount(M) - 1`.
    pub fn k(&self) -> usize {
        self.positions.len() - 1
    }

    /// `M_m` for `0 ≤ m < k`.
    pub fn remainder(&self, m: usize) -> usize {
        self.remainders[m]
    }

    /// `M_{k-1}, …, M_0`, in the order the synthesis loop produces them.
    pub fn remainders_descending(&self) -> impl Iterator<Item = usize> + '_ {
        self.remainders.iter().rev().copied()
    }

    pub fn is_power_of_two(&self) -> bool {
        self.positions.len() == 1
    }
}

fn check_range(m: usize, n: usize) -> Result<()> {
    let fits = n < usize::BITS as usize && m >= 2 && m <= (1usize << n);
    if fits {
        Ok(())
    } else {
        Err(Error::MOutOfRange { m, n })
    }
}

pub fn decompose(m: usize, n: usize) -> Result<BitDecomposition> {
    check_range(m, n)?;
    let positions: Vec<usize> = (0..usize::BITS as usize).filter(|&i| m >> i & 1 == 1).collect();
    let k = positions.len() - 1;
    // M_{k-1} = M - 2^{l_k}, M_{m-1} = M_m - 2^{l_m}
    let mut remainders = vec![0; k];
    let mut rem = m;
    for j in (0..k).rev() {
        rem -= 1 << positions[j + 1];
        remainders[j] = rem;
    }
    Ok(BitDecomposition { m, n, positions, remainders })
}

/// The `b`-vector of the weighted construction, with `a_r = √(1 - b_r²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSpec {
    bs: Vec<f64>,
}

impl WeightSpec {
    pub fn new(bs: Vec<f64>) -> Result<Self> {
        for (index, &value) in bs.iter().enumerate() {
            if !value.is_finite() || value.abs() > 1.0 {
                return Err(Error::WeightOutOfRange { index, value });
            }
        }
        Ok(Self { bs })
    }

    /// The weights that make the weighted circuit coincide with the plain
    /// partial-sum circuit: `b_0 = √(M_0/M)` and `b_m = √(2^{l_m}/(M - M_{m-1}))`.
    pub fn uniform(d: &BitDecomposition) -> Self {
        let m = d.m() as f64;
        let bs = (0..d.k())
            .map(|r| {
                if r == 0 {
                    (d.remainder(0) as f64 / m).sqrt()
                } else {
                    let tail = d.m() - d.remainder(r - 1);
                    ((1usize << d.position(r)) as f64 / tail as f64).sqrt()
                }
            })
            .collect();
        Self { bs }
    }

    pub fn len(&self) -> usize {
        self.bs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bs.is_empty()
    }

    pub fn bs(&self) -> &[f64] {
        &self.bs
    }

    pub fn b(&self, r: usize) -> f64 {
        self.bs[r]
    }

    /// Nonnegative complement `√(1 - b_r²)`.
    pub fn a(&self, r: usize) -> f64 {
        let b = self.bs[r];
        (1.0 - b * b).max(0.0).sqrt()
    }

    pub(crate) fn check_len(&self, k: usize) -> Result<()> {
        if self.bs.len() == k {
            Ok(())
        } else {
            Err(Error::WeightLengthMismatch { expected: k, found: self.bs.len() })
        }
    }
}

/// Lays down the non-power-of-two gate skeleton. `angle(m)` supplies `θ_m`.
fn general_circuit(d: &BitDecomposition, angle: impl Fn(usize) -> f64) -> Result<Circuit> {
    let l = d.positions();
    let k = d.k();
    let mut c = Circuit::new(d.n())?;
    for m in (1..k).rev() {
        for i in (l[m]..l[m + 1]).rev() {
            c.push(Gate::h(i).controlled(l[m + 1], Polarity::ActiveOnZero))?;
        }
        c.push(Gate::ry(angle(m), l[m + 1]).controlled(l[m], Polarity::ActiveOnZero))?;
    }
    for i in (l[0]..l[1]).rev() {
        c.push(Gate::h(i).controlled(l[1], Polarity::ActiveOnZero))?;
    }
    c.push(Gate::ry(angle(0), l[1]))?;
    for i in 0..l[0] {
        c.push(Gate::h(i))?;
    }
    for &q in &l[1..] {
        c.push(Gate::x(q))?;
    }
    Ok(c)
}

/// Circuit whose unitary has first row `(1/√M)[1×M, 0×(2^n-M)]`.
pub fn build_partial_sum_circuit(m: usize, n: usize) -> Result<Circuit> {
    let d = decompose(m, n)?;
    if d.is_power_of_two() {
        let r = d.position(0);
        return Circuit::from_gates(n, (0..r).map(Gate::h));
    }
    let total = m as f64;
    general_circuit(&d, |j| {
        let ratio = if j == 0 {
            d.remainder(0) as f64 / total
        } else {
            (1usize << d.position(j)) as f64 / (m - d.remainder(j - 1)) as f64
        };
        2.0 * ratio.sqrt().acos()
    })
}

/// Weighted variant: same skeleton with `θ_m = 2·arccos(b_m)`.
///
/// Requires `2 < M < 2^n` with `M` not a power of two.
pub fn build_weighted_circuit(m: usize, n: usize, weights: &WeightSpec) -> Result<Circuit> {
    let d = decompose_for_weights(m, n)?;
    weights.check_len(d.k())?;
    general_circuit(&d, |j| 2.0 * weights.b(j).acos())
}

pub(crate) fn decompose_for_weights(m: usize, n: usize) -> Result<BitDecomposition> {
    let d = decompose(m, n)?;
    if m <= 2 || m >= 1 << n {
        return Err(Error::MOutOfRange { m, n });
    }
    if d.is_power_of_two() {
        return Err(Error::MPowerOfTwo { m });
    }
    Ok(d)
}

/// Gate count promised for `M`: `r` when `M = 2^r`, else `l_k + 2k`.
pub fn expected_gate_count(d: &BitDecomposition) -> usize {
    if d.is_power_of_two() {
        d.position(0)
    } else {
        d.position(d.k()) + 2 * d.k()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateKind;

    #[test]
    fn decompose_13() {
        let d = decompose(13, 4).unwrap();
        assert_eq!(d.positions(), &[0, 2, 3]);
        assert_eq!(d.k(), 2);
        assert_eq!(d.remainders_descending().collect::<Vec<_>>(), vec![5, 1]);
    }

    #[test]
    fn decompose_power_and_fig1_right() {
        let d = decompose(8, 4).unwrap();
        assert_eq!(d.positions(), &[3]);
        assert_eq!(d.k(), 0);
        let d = decompose(42, 6).unwrap();
        assert_eq!(d.positions(), &[1, 3, 5]);
        assert_eq!(d.k(), 2);
    }

    #[test]
    fn decompose_range_errors() {
        assert_eq!(decompose(1, 3), Err(Error::MOutOfRange { m: 1, n: 3 }));
        assert_eq!(decompose(9, 3), Err(Error::MOutOfRange { m: 9, n: 3 }));
        assert!(decompose(8, 3).is_ok());
    }

    #[test]
    fn m3_hand_trace() {
        let c = build_partial_sum_circuit(3, 2).unwrap();
        let theta = 2.0 * (1.0f64 / 3.0).sqrt().acos();
        assert_eq!(
            c.gates(),
            &[
                Gate::h(0).controlled(1, Polarity::ActiveOnZero),
                Gate::ry(theta, 1),
                Gate::x(1),
            ]
        );
    }

    #[test]
    fn power_of_two_branch() {
        let c = build_partial_sum_circuit(4, 4).unwrap();
        assert_eq!(c.gates(), &[Gate::h(0), Gate::h(1)]);
        let c = build_partial_sum_circuit(2, 1).unwrap();
        assert_eq!(c.gates(), &[Gate::h(0)]);
    }

    #[test]
    fn m13_has_seven_gates() {
        let c = build_partial_sum_circuit(13, 4).unwrap();
        assert_eq!(c.len(), 7);
        let z = Polarity::ActiveOnZero;
        let kinds: Vec<_> = c.gates().iter().map(|g| (g.kind, g.target, g.control)).collect();
        assert_eq!(kinds[0], (GateKind::Hadamard, 2, Gate::h(2).controlled(3, z).control));
        assert!(matches!(kinds[1], (GateKind::RotY(_), 3, Some(ctrl)) if ctrl.qubit == 2));
        assert_eq!(kinds[2].1, 1);
        assert_eq!(kinds[3].1, 0);
        assert!(matches!(kinds[4], (GateKind::RotY(_), 2, None)));
        assert_eq!(&c.gates()[5..], &[Gate::x(2), Gate::x(3)]);
    }

    #[test]
    fn m6_listing() {
        let c = build_partial_sum_circuit(6, 3).unwrap();
        let theta = 2.0 * (1.0f64 / 3.0).sqrt().acos();
        assert_eq!(
            c.gates(),
            &[
                Gate::h(1).controlled(2, Polarity::ActiveOnZero),
                Gate::ry(theta, 2),
                Gate::h(0),
                Gate::x(2),
            ]
        );
    }

    #[test]
    fn weighted_validation() {
        let w = WeightSpec::new(vec![0.5]).unwrap();
        assert_eq!(build_weighted_circuit(8, 4, &w), Err(Error::MPowerOfTwo { m: 8 }));
        assert_eq!(build_weighted_circuit(2, 4, &w), Err(Error::MOutOfRange { m: 2, n: 4 }));
        assert_eq!(build_weighted_circuit(8, 3, &w), Err(Error::MOutOfRange { m: 8, n: 3 }));
        assert_eq!(
            build_weighted_circuit(13, 4, &w),
            Err(Error::WeightLengthMismatch { expected: 2, found: 1 })
        );
        assert_eq!(WeightSpec::new(vec![1.5]), Err(Error::WeightOutOfRange { index: 0, value: 1.5 }));
        assert!(WeightSpec::new(vec![-1.0, 1.0]).is_ok());
    }

    #[test]
    fn weighted_b_one_zeroes_rotation() {
        let c = build_weighted_circuit(3, 2, &WeightSpec::new(vec![1.0]).unwrap()).unwrap();
        assert_eq!(c.gates()[1], Gate::ry(0.0, 1));
    }

    #[test]
    fn uniform_weights_reproduce_m13() {
        let d = decompose(13, 4).unwrap();
        let w = WeightSpec::uniform(&d);
        assert!((w.b(0) - (1.0f64 / 13.0).sqrt()).abs() < 1e-15);
        assert!((w.b(1) - (4.0f64 / 12.0).sqrt()).abs() < 1e-15);
        let weighted = build_weighted_circuit(13, 4, &w).unwrap();
        let plain = build_partial_sum_circuit(13, 4).unwrap();
        assert_eq!(weighted, plain);
    }

    #[test]
    fn complement_is_nonnegative() {
        let w = WeightSpec::new(vec![-0.6, 0.6, 1.0]).unwrap();
        assert!((w.a(0) - 0.8).abs() < 1e-15);
        assert!((w.a(1) - 0.8).abs() < 1e-15);
        assert_eq!(w.a(2), 0.0);
    }
}
