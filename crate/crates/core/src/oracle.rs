//! Closed-form predictions for the synthesized unitaries, computed without
//! simulating anything.
//!
//! Indices `0 … M-1` split into dyadic segments with boundaries
//! `S_r = Σ_{s=k-r}^{k} 2^{l_s}` (and `S_{-1} = 0`). Segment `r` carries the
//! weight `γ_{k-r}`, where
//!
//! ```text
//! γ_0 = b_0 / √2^{l_0}
//! γ_r = a_0 ⋯ a_{r-1} b_r / √2^{l_r}     0 < r < k
//! γ_k = a_0 ⋯ a_{k-1}     / √2^{l_k}
//! ```

use std::ops::Range;

use num_complex::Complex64;

use crate::builder::{decompose, decompose_for_weights, BitDecomposition, WeightSpec};
use crate::circuit::ComplexAmp;
use crate::error::Result;

/// `S_{-1} = 0, S_0, …, S_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentBoundaries {
    bounds: Vec<usize>,
}

impl SegmentBoundaries {
    /// `S_r` for `-1 ≤ r ≤ k`, passed as `r + 1`.
    pub fn all(&self) -> &[usize] {
        &self.bounds
    }

    /// `S_r` for `0 ≤ r ≤ k`.
    pub fn s(&self, r: usize) -> usize {
        self.bounds[r + 1]
    }

    /// Number of segments, `k + 1`.
    pub fn segments(&self) -> usize {
        self.bounds.len() - 1
    }

    /// Index range `S_{r-1} .. S_r`.
    pub fn segment(&self, r: usize) -> Range<usize> {
        self.bounds[r]..self.bounds[r + 1]
    }
}

pub fn segment_boundaries(d: &BitDecomposition) -> SegmentBoundaries {
    let k = d.k();
    let mut bounds = Vec::with_capacity(k + 2);
    bounds.push(0);
    let mut acc = 0;
    for r in 0..=k {
        acc += 1usize << d.position(k - r);
        bounds.push(acc);
    }
    SegmentBoundaries { bounds }
}

/// `γ_0, …, γ_k`.
pub fn gamma_weights(d: &BitDecomposition, w: &WeightSpec) -> Result<Vec<f64>> {
    let k = d.k();
    w.check_len(k)?;
    let mut gammas = Vec::with_capacity(k + 1);
    let mut a_prod = 1.0;
    for r in 0..=k {
        let scale = ((1usize << d.position(r)) as f64).sqrt();
        if r < k {
            gammas.push(a_prod * w.b(r) / scale);
            a_prod *= w.a(r);
        } else {
            gammas.push(a_prod / scale);
        }
    }
    Ok(gammas)
}

/// Analytic first row of the synthesized unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstRowOracle {
    pub m: usize,
    pub n: usize,
    pub row: Vec<f64>,
}

impl FirstRowOracle {
    /// `⟨row, f⟩`, the `|0⟩` amplitude the circuit produces from `f`.
    pub fn dot(&self, f: &[ComplexAmp]) -> ComplexAmp {
        self.row.iter().zip(f).map(|(&r, &v)| v * r).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.row.iter().map(|r| r * r).sum()
    }
}

/// Predicted first row. Without weights this is `1/√M` on `0 … M-1`; with
/// weights it is the `γ`/segment pattern.
pub fn predicted_first_row(m: usize, n: usize, w: Option<&WeightSpec>) -> Result<FirstRowOracle> {
    let mut row = vec![0.0; 1 << n.min(usize::BITS as usize - 1)];
    match w {
        None => {
            decompose(m, n)?;
            let v = 1.0 / (m as f64).sqrt();
            row[..m].fill(v);
        }
        Some(w) => {
            let d = decompose_for_weights(m, n)?;
            let gammas = gamma_weights(&d, w)?;
            let segs = segment_boundaries(&d);
            let k = d.k();
            for r in 0..=k {
                row[segs.segment(r)].fill(gammas[k - r]);
            }
        }
    }
    Ok(FirstRowOracle { m, n, row })
}

/// `Σ_{j<M} f_j` by direct summation.
///
/// # Panics
/// If `m > values.len()`.
pub fn brute_force_partial_sum(values: &[ComplexAmp], m: usize) -> ComplexAmp {
    values[..m].iter().sum()
}

/// The weighted partial sum `Σ_r γ_{k-r} Σ_{j ∈ segment r} f_j`, evaluated
/// segment by segment rather than through a first-row vector.
pub fn weighted_segment_sum(d: &BitDecomposition, w: &WeightSpec, f: &[ComplexAmp]) -> Result<ComplexAmp> {
    let gammas = gamma_weights(d, w)?;
    let segs = segment_boundaries(d);
    let k = d.k();
    Ok((0..=k)
        .map(|r| brute_segment(f, segs.segment(r)) * gammas[k - r])
        .sum())
}

fn brute_segment(f: &[ComplexAmp], range: Range<usize>) -> Complex64 {
    f[range].iter().sum()
}
