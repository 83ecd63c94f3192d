//! Sharper growth for `s = 6`: five steps of the transfer matrix are
//! bounded below by a single matrix with a slightly larger spectral radius.

use num_bigint::BigInt;
use num_traits::Pow;
use serde::Serialize;

use super::cases::{case_matrix, growth_polynomial, SpectralResult};
use super::matrix::IntMatrix;
use crate::error::Result;

/// `A^5 + E` where `A` is the `s = 6` transfer matrix and every row of `E`
/// is `(0, 1, -1)`.
pub fn refined_matrix() -> IntMatrix {
    let a = case_matrix(6).expect("s = 6 has a matrix").matrix;
    let e = IntMatrix::from_rows(&[[0, 1, -1], [0, 1, -1], [0, 1, -1]]);
    a.pow(5).add(&e)
}

/// Largest real eigenvalue of [`refined_matrix`].
pub fn refined_radius() -> Result<SpectralResult> {
    SpectralResult::of(&refined_matrix().char_poly())
}

#[derive(Clone, Debug, Serialize)]
pub struct GapReport {
    pub lambda: f64,
    pub mu: f64,
    /// `2 μ^(1/5) - λ`.
    pub gap: f64,
    /// Threshold the gap was compared against.
    pub threshold: f64,
    /// Decided exactly from the root brackets.
    pub exceeds_threshold: bool,
    /// Bound on the absolute error of `gap`.
    pub error_bound: f64,
}

/// Compares `2 μ^(1/5)` with the `s = 6` growth root `λ`.
///
/// `gap > t` is decided without rounding as `μ > ((λ + t)/2)^5`, using the
/// lower end of the `μ` bracket and the upper end of the `λ` bracket, with
/// `t = 756 / 10^7`.
pub fn refinement_gap() -> Result<GapReport> {
    let width = 2f64.powi(-60);
    let lam = SpectralResult::with_width(&growth_polynomial(6)?.poly, width)?;
    let mu = SpectralResult::with_width(&refined_matrix().char_poly(), width)?;

    let (t_num, t_den) = (BigInt::from(756), BigInt::from(10).pow(7u32));
    let mu_lo = &mu.bracket.lo;
    let lam_hi = &lam.bracket.hi;
    // μ_lo = a / 2^ea, λ_hi = b / 2^eb.
    // μ_lo > ((b/2^eb + t)/2)^5  <=>  a (2^(eb+1) t_den)^5 > (b t_den + t_num 2^eb)^5 2^ea
    let two_eb = BigInt::from(1) << lam_hi.exp() as usize;
    let scale: BigInt = &two_eb * BigInt::from(2) * &t_den;
    let lhs = mu_lo.mantissa() * scale.pow(5u32);
    let shifted: BigInt = lam_hi.mantissa() * &t_den + &t_num * &two_eb;
    let rhs = shifted.pow(5u32) << mu_lo.exp() as usize;
    let exceeds_threshold = lhs > rhs;

    let gap = 2.0 * mu.lambda.powf(0.2) - lam.lambda;
    // Brackets are far narrower than f64 resolution; the error is rounding.
    let error_bound = 16.0 * f64::EPSILON * mu.lambda.powf(0.2).max(lam.lambda);
    Ok(GapReport { lambda: lam.lambda, mu: mu.lambda, gap, threshold: 0.0000756, exceeds_threshold, error_bound })
}
