//! Integer polynomials and certified isolation of their largest real root.
//!
//! Signs are always evaluated exactly at dyadic rationals, so a bracket
//! `[lo, hi]` returned here really contains a sign change of the polynomial.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The dyadic rational `mantissa / 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    mantissa: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exp: u32) -> Self {
        Dyadic { mantissa, exp }.normalized()
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Dyadic { mantissa: v.into(), exp: 0 }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    fn normalized(mut self) -> Self {
        while self.exp > 0 && self.mantissa.is_even() && !self.mantissa.is_zero() {
            self.mantissa >>= 1;
            self.exp -= 1;
        }
        if self.mantissa.is_zero() {
            self.exp = 0;
        }
        self
    }

    fn aligned(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, u32) {
        let e = a.exp.max(b.exp);
        (&a.mantissa << (e - a.exp) as usize, &b.mantissa << (e - b.exp) as usize, e)
    }

    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        let (x, y, e) = Dyadic::aligned(a, b);
        Dyadic::new(x + y, e + 1)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        let (x, y, e) = Dyadic::aligned(self, other);
        Dyadic::new(x - y, e)
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let (x, y, e) = Dyadic::aligned(self, other);
        Dyadic::new(x + y, e)
    }

    pub fn mul_int(&self, k: &BigInt) -> Dyadic {
        Dyadic::new(&self.mantissa * k, self.exp)
    }

    pub fn pow(&self, n: u32) -> Dyadic {
        Dyadic::new(num_traits::Pow::pow(&self.mantissa, n), self.exp * n)
    }

    /// Smallest integer not below `self`.
    pub fn ceil(&self) -> BigInt {
        let den = BigInt::one() << self.exp as usize;
        self.mantissa.div_ceil(&den)
    }

    pub fn to_f64(&self) -> f64 {
        // Keep at most 64 significant bits so the conversion stays finite.
        let bits = self.mantissa.bits() as i64;
        let shift = (bits - 64).max(0);
        let m = (&self.mantissa >> shift as usize).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi((shift - self.exp as i64) as i32)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (x, y, _) = Dyadic::aligned(self, other);
        x.cmp(&y)
    }
}

/// Polynomial with integer coefficients, stored lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        Polynomial { coeffs }
    }

    /// Coefficients listed from the leading term down, e.g. `[1, -6, -8, 8]`.
    pub fn from_descending(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^i`.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn descending(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Exact sign of `p(x)`.
    pub fn sign_at(&self, x: &Dyadic) -> Ordering {
        // 2^(k d) p(m / 2^k) = sum_i c_i m^i 2^(k (d - i)), evaluated by Horner.
        let d = self.degree();
        let k = x.exp as usize;
        let mut acc = self.coeffs[d].clone();
        for i in (0..d).rev() {
            acc = acc * &x.mantissa + (&self.coeffs[i] << (k * (d - i)));
        }
        acc.sign_cmp()
    }

    /// Largest real root, isolated to a bracket of width at most `2^-40`.
    pub fn largest_root(&self) -> Result<RootBracket> {
        let mut bracket = self.bracket_largest_root()?;
        bracket.refine(self, 2f64.powi(-40));
        Ok(bracket)
    }

    /// Coarse bracket for the largest real root: scan down from the Cauchy
    /// bound in steps of 1/16 until the sign differs from the leading sign.
    pub fn bracket_largest_root(&self) -> Result<RootBracket> {
        let d = self.degree();
        if d == 0 {
            return Err(Error::Bracketing("constant polynomial has no roots".into()));
        }
        let lead = self.coeffs[d].abs();
        if d == 1 && lead.is_one() {
            // c_1 = ±1, root is -c_0 / c_1 exactly.
            let root = Dyadic::from_int(-&self.coeffs[0] * &self.coeffs[1]);
            return Ok(RootBracket { lo: root.clone(), hi: root });
        }
        let max_ratio = self.coeffs[..d].iter().map(|c| c.abs().div_ceil(&lead)).max().unwrap_or_default();
        let cauchy = BigInt::one() + max_ratio;
        let top_sign = self.coeffs[d].sign_cmp();
        let step_exp = 4u32;
        let mut hi = Dyadic::from_int(cauchy.clone());
        let floor = Dyadic::from_int(-cauchy);
        let step = Dyadic::new(BigInt::one(), step_exp);
        while hi > floor {
            let lo = hi.sub(&step);
            match self.sign_at(&lo) {
                Ordering::Equal => {
                    return Ok(RootBracket { lo: lo.clone(), hi: lo });
                }
                s if s != top_sign => return Ok(RootBracket { lo, hi }),
                _ => hi = lo,
            }
        }
        Err(Error::Bracketing(format!("no sign change found for {self}")))
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && !(first && i == 0) {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if !abs.is_one() || i == 0 {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("λ")?,
                _ => write!(f, "λ^{i}")?,
            }
        }
        Ok(())
    }
}

/// Interval `[lo, hi]` holding a root: either `lo == hi` is an exact root or
/// the polynomial changes sign across the interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl RootBracket {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi.sub(&self.lo).to_f64()
    }

    pub fn midpoint(&self) -> Dyadic {
        Dyadic::midpoint(&self.lo, &self.hi)
    }

    pub fn value(&self) -> f64 {
        self.midpoint().to_f64()
    }

    /// Bisects until the width is at most `width`.
    pub fn refine(&mut self, p: &Polynomial, width: f64) {
        if self.is_exact() {
            return;
        }
        let lo_sign = p.sign_at(&self.lo);
        while self.width() > width {
            let mid = self.midpoint();
            match p.sign_at(&mid) {
                Ordering::Equal => {
                    self.lo = mid.clone();
                    self.hi = mid;
                    return;
                }
                s if s == lo_sign => self.lo = mid,
                _ => self.hi = mid,
            }
        }
    }

    /// Strict order between two roots, refining both brackets until they
    /// separate. `None` when they still overlap at `min_width` (a tie at
    /// that resolution).
    pub fn compare(
        a: &mut RootBracket,
        pa: &Polynomial,
        b: &mut RootBracket,
        pb: &Polynomial,
        min_width: f64,
    ) -> Option<Ordering> {
        let mut width = a.width().max(b.width()).max(min_width);
        loop {
            if a.hi < b.lo {
                return Some(Ordering::Less);
            }
            if b.hi < a.lo {
                return Some(Ordering::Greater);
            }
            if a.is_exact() && b.is_exact() && a.lo == b.lo {
                return Some(Ordering::Equal);
            }
            if width <= min_width {
                return None;
            }
            width = (width / 16.0).max(min_width);
            a.refine(pa, width);
            b.refine(pb, width);
        }
    }
}
