//! Asymptotic expansions of the cubic roots in `1/s`, checked numerically.
//!
//! Each expansion is written `λ = base(s) + θ / s^k`; the residual
//! `θ = (λ - base(s)) s^k` is computed exactly from a dyadic root bracket,
//! so the interval test does not depend on rounding.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Pow;
use rayon::prelude::*;
use serde::Serialize;

use super::cases::PolyCase;
use super::poly::{Dyadic, Polynomial, RootBracket};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct Expansion {
    pub name: &'static str,
    pub case: PolyCase,
    pub theta: f64,
    /// Open interval the residual is expected to lie in.
    pub interval: (f64, f64),
    /// `None` if the bracket still straddles an interval end.
    pub within: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootExpansion {
    pub s: u32,
    pub roots: [f64; 4],
    pub expansions: Vec<Expansion>,
}

impl RootExpansion {
    pub fn get(&self, name: &str) -> Option<&Expansion> {
        self.expansions.iter().find(|e| e.name == name)
    }
}

/// Residual bracket: `((λ s^d - base_num) s^(k-d))` for `λ` at both bracket
/// ends, where `base = base_num / s^d`.
fn residual(bracket: &RootBracket, s: &BigInt, base_num: &BigInt, d: u32, k: u32) -> (Dyadic, Dyadic) {
    let sd = Pow::pow(s, d);
    let tail = Pow::pow(s, k - d);
    let at = |x: &Dyadic| x.mul_int(&sd).sub(&Dyadic::from_int(base_num.clone())).mul_int(&tail);
    (at(&bracket.lo), at(&bracket.hi))
}

fn classify(lo: &Dyadic, hi: &Dyadic, interval: (i64, i64)) -> Option<bool> {
    let (a, b) = (Dyadic::from_int(interval.0), Dyadic::from_int(interval.1));
    if lo > &a && hi < &b {
        Some(true)
    } else if hi <= &a || lo >= &b {
        Some(false)
    } else {
        None
    }
}

fn root(poly: &Polynomial, width_exp: i32) -> Result<RootBracket> {
    let mut b = poly.bracket_largest_root()?;
    b.refine(poly, 2f64.powi(-width_exp));
    Ok(b)
}

/// Residuals of the four cubic roots at even `s >= 6`:
///
/// * `theta1`, `theta4`: `(λ - s - 1) s²`, expected in `(-1, 0)`;
/// * `theta2`: `(λ₂ - (s + 1 - 3/s² + 3/s³)) s⁴`, expected in `(0, 3)`;
/// * `theta3`: the same residual for `λ₃` with the sign flipped,
///   `-(λ₃ - (s + 1 - 3/s² + 3/s³)) s⁴`, expected in `(-9, -6)`;
/// * `theta3_raw`: that residual without the sign flip, in `(-9, -6)`;
/// * `theta3_sixth`: `(λ₃ - (s + 1 - 3/s² + 3/s³ - 6/s⁴ - 9/s⁵)) s⁶`,
///   tested against `(-16, -14)`; the actual limit is `+30`.
pub fn root_expansion_check(s: u32) -> Result<RootExpansion> {
    if s < 6 || s % 2 == 1 {
        return Err(Error::OutOfRange(format!("expansions need even s >= 6, got {s}")));
    }
    let sb = BigInt::from(s);
    // Enough bits that s^6 times the bracket width stays below 2^-40.
    let width_exp = 40 + 6 * (32 - s.leading_zeros()) as i32 + 8;
    let polys: Vec<Polynomial> = PolyCase::CUBICS.iter().map(|c| c.polynomial(s)).collect();
    let brackets: Vec<RootBracket> = polys.iter().map(|p| root(p, width_exp)).collect::<Result<_>>()?;
    let roots = [0, 1, 2, 3].map(|i| brackets[i].value());

    let s1 = &sb + 1;
    // s^4 + s^3 - 3s + 3 = (s + 1 - 3/s^2 + 3/s^3) s^3
    let cubic_base = Pow::pow(&sb, 4u32) + Pow::pow(&sb, 3u32) - 3 * &sb + 3;
    // (s + 1 - 3/s^2 + 3/s^3 - 6/s^4 - 9/s^5) s^5
    let fifth_base =
        Pow::pow(&sb, 6u32) + Pow::pow(&sb, 5u32) - 3 * Pow::pow(&sb, 3u32) + 3 * Pow::pow(&sb, 2u32) - 6 * &sb - 9;

    let mut out = Vec::new();
    let mut push = |name, case, (lo, hi): (Dyadic, Dyadic), interval: (i64, i64)| {
        out.push(Expansion {
            name,
            case,
            theta: Dyadic::midpoint(&lo, &hi).to_f64(),
            interval: (interval.0 as f64, interval.1 as f64),
            within: classify(&lo, &hi, interval),
        });
    };
    push("theta1", PolyCase::ZeroModEight, residual(&brackets[0], &sb, &s1, 0, 2), (-1, 0));
    push("theta2", PolyCase::TwoModEight, residual(&brackets[1], &sb, &cubic_base, 3, 4), (0, 3));
    let (lo, hi) = residual(&brackets[2], &sb, &cubic_base, 3, 4);
    let neg = |x: &Dyadic| Dyadic::from_int(0).sub(x);
    push("theta3", PolyCase::FourModEight, (neg(&hi), neg(&lo)), (-9, -6));
    push("theta3_raw", PolyCase::FourModEight, (lo, hi), (-9, -6));
    push("theta3_sixth", PolyCase::FourModEight, residual(&brackets[2], &sb, &fifth_base, 5, 6), (-16, -14));
    push("theta4", PolyCase::SixModEight, residual(&brackets[3], &sb, &s1, 0, 2), (-1, 0));
    Ok(RootExpansion { s, roots, expansions: out })
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdRow {
    pub s: u32,
    /// Roots of the four cubic families at this `s`, in residue order.
    pub roots: [f64; 4],
    /// Whether the `s ≡ 4 (mod 8)` root is strictly below the other three
    /// and below `s + 1`. `None` marks a tie at the comparison resolution.
    pub smallest: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Threshold {
    /// Smallest `s'` such that every tested `s` in `[s', s_max]` has the
    /// `s ≡ 4 (mod 8)` root smallest.
    pub s0: Option<u32>,
    pub table: Vec<ThresholdRow>,
}

fn is_smallest(s: u32) -> Result<Option<bool>> {
    let polys: Vec<Polynomial> = PolyCase::CUBICS.iter().map(|c| c.polynomial(s)).collect();
    let brackets: Vec<RootBracket> = polys.iter().map(Polynomial::bracket_largest_root).collect::<Result<_>>()?;
    // s + 1 enters as the root of λ - s - 1.
    let top = PolyCase::Odd.polynomial(s);
    let mut others: Vec<(RootBracket, &Polynomial)> =
        [0, 1, 3].into_iter().map(|i| (brackets[i].clone(), &polys[i])).collect();
    others.push((top.bracket_largest_root()?, &top));
    let mut result = Some(true);
    for (mut other, p) in others {
        let mut mine = brackets[2].clone();
        match RootBracket::compare(&mut mine, &polys[2], &mut other, p, 2f64.powi(-200)) {
            Some(Ordering::Less) => {}
            Some(_) => return Ok(Some(false)),
            None => result = None,
        }
    }
    Ok(result)
}

/// Table of the four cubic roots for `s ≡ 4 (mod 8)`, `12 <= s <= s_max`,
/// and the smallest threshold past which the `s ≡ 4 (mod 8)` root is
/// always the smallest one.
pub fn minimal_root_threshold(s_max: u32) -> Result<Threshold> {
    if s_max < 12 {
        return Err(Error::OutOfRange(format!("s_max must be at least 12, got {s_max}")));
    }
    let table: Vec<ThresholdRow> = (12..=s_max)
        .step_by(8)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|s| -> Result<ThresholdRow> {
            let mut roots = [0.0; 4];
            for (slot, case) in roots.iter_mut().zip(PolyCase::CUBICS) {
                let p = case.polynomial(s);
                let mut b = p.bracket_largest_root()?;
                b.refine(&p, 2f64.powi(-50));
                *slot = b.value();
            }
            Ok(ThresholdRow { s, roots, smallest: is_smallest(s)? })
        })
        .collect::<Result<_>>()?;
    let s0 = table.iter().rev().take_while(|r| r.smallest == Some(true)).last().map(|r| r.s);
    Ok(Threshold { s0, table })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansions_small_s() {
        let r = root_expansion_check(6).unwrap();
        assert_eq!(r.get("theta4").unwrap().within, Some(true));
        assert_eq!(r.get("theta1").unwrap().within, Some(true));
        let r = root_expansion_check(10).unwrap();
        let t2 = r.get("theta2").unwrap();
        assert!(t2.theta < 0.0, "{t2:?}");
        assert_eq!(t2.within, Some(false));
    }

    #[test]
    fn sign_of_theta3() {
        for s in [12, 28, 100] {
            let r = root_expansion_check(s).unwrap();
            assert_eq!(r.get("theta3_raw").unwrap().within, Some(true), "s = {s}");
            assert_eq!(r.get("theta3").unwrap().within, Some(false), "s = {s}");
        }
        let r = root_expansion_check(12).unwrap();
        assert!((r.get("theta3_raw").unwrap().theta + 6.6).abs() < 0.1);
    }

    #[test]
    fn sixth_order_term() {
        let r = root_expansion_check(1000).unwrap();
        let t = r.get("theta3_sixth").unwrap();
        // Series: s + 1 - 3/s² + 3/s³ - 6/s⁴ - 9/s⁵ + 30/s⁶ + ...
        assert!((t.theta - 29.889).abs() < 0.01, "{t:?}");
        assert_eq!(t.within, Some(false));
    }

    #[test]
    fn threshold() {
        let t = minimal_root_threshold(100).unwrap();
        assert_eq!(t.s0, Some(12));
        assert!(t.table.iter().all(|r| r.roots.iter().all(|&x| x > r.s as f64)));
        assert!(minimal_root_threshold(11).is_err());
    }
}
