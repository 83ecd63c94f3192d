//! Continuants and finite continued fractions over arbitrary-precision integers.
//!
//! The continuant `<a_1, ..., a_n>` is the denominator of `[0; a_1, ..., a_n]`
//! and satisfies `K_j = a_j K_{j-1} + K_{j-2}` with `K_{-1} = 0`, `K_0 = 1`.
//! The empty sequence has continuant 1.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bounds::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Exact nonnegative integer.
pub type Natural = BigUint;

/// A finite sequence of partial quotients, every element at least 1.
///
/// Ordering is lexicographic on the element list.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PartialQuotients(Vec<u64>);

impl PartialQuotients {
    pub fn new(elements: Vec<u64>) -> Result<Self> {
        if let Some(index) = elements.iter().position(|&x| x == 0) {
            return Err(Error::InvalidSequence { index, value: 0 });
        }
        Ok(PartialQuotients(elements))
    }

    pub fn empty() -> Self {
        PartialQuotients(Vec::new())
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u64> {
        self.0.last().copied()
    }

    pub fn max_element(&self) -> Option<u64> {
        self.0.iter().copied().max()
    }

    /// `<self>`.
    pub fn continuant(&self) -> Natural {
        continuant(self)
    }

    /// The sequence with its first element removed.
    pub fn tail(&self) -> PartialQuotients {
        PartialQuotients(self.0.get(1..).unwrap_or(&[]).to_vec())
    }

    /// The sequence with its last element removed.
    pub fn init(&self) -> PartialQuotients {
        let n = self.0.len().saturating_sub(1);
        PartialQuotients(self.0[..n].to_vec())
    }
}

impl TryFrom<Vec<u64>> for PartialQuotients {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        PartialQuotients::new(v)
    }
}

impl From<PartialQuotients> for Vec<u64> {
    fn from(u: PartialQuotients) -> Vec<u64> {
        u.0
    }
}

impl fmt::Display for PartialQuotients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for PartialQuotients {
    type Err = Error;

    /// Accepts `2,1,3`, `(2, 1, 3)` or `2 1 3`. `()` and the empty string give
    /// the empty sequence.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let elements = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u64>().map_err(|e| Error::OutOfRange(format!("element {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        PartialQuotients::new(elements)
    }
}

/// Reduced fraction `numerator / denominator` with `denominator >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    numerator: Natural,
    denominator: Natural,
}

impl Fraction {
    pub fn new(numerator: Natural, denominator: Natural) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::OutOfRange("zero denominator".into()));
        }
        let g = numerator.gcd(&denominator);
        if g.is_zero() || g.is_one() {
            return Ok(Fraction { numerator, denominator });
        }
        Ok(Fraction { numerator: numerator / &g, denominator: denominator / g })
    }

    pub fn from_u64(numerator: u64, denominator: u64) -> Result<Self> {
        Fraction::new(numerator.into(), denominator.into())
    }

    pub fn numerator(&self) -> &Natural {
        &self.numerator
    }

    pub fn denominator(&self) -> &Natural {
        &self.denominator
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

fn check_elements(u: &[u64]) -> Result<()> {
    match u.iter().position(|&x| x == 0) {
        Some(index) => Err(Error::InvalidSequence { index, value: 0 }),
        None => Ok(()),
    }
}

/// Continuant of a raw element slice, rejecting zero elements.
pub fn continuant_of(u: &[u64]) -> Result<Natural> {
    check_elements(u)?;
    Ok(continuant_raw(u))
}

pub(crate) fn continuant_raw(u: &[u64]) -> Natural {
    let mut prev = Natural::zero();
    let mut cur = Natural::one();
    for &a in u {
        let next = &cur * a + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `<u>` by the three-term recurrence.
pub fn continuant(u: &PartialQuotients) -> Natural {
    continuant_raw(u.as_slice())
}

/// `<u>` as the determinant of the tridiagonal matrix with `u` on the
/// diagonal, 1 above and -1 below.
pub fn continuant_det(u: &PartialQuotients) -> Result<Natural> {
    let n = u.len();
    if n == 0 {
        return Err(Error::EmptySequence("determinant form needs at least one element"));
    }
    let mut m = IntMatrix::zeros(n);
    for (i, &a) in u.as_slice().iter().enumerate() {
        m.set(i, i, BigInt::from(a));
        if i + 1 < n {
            m.set(i, i + 1, BigInt::one());
            m.set(i + 1, i, -BigInt::one());
        }
    }
    m.determinant().to_biguint().ok_or_else(|| Error::ConstructionInvariant("negative continuant determinant".into()))
}

/// Value of `[0; u_1, ..., u_n]` as a reduced fraction `<u_2..u_n> / <u>`.
pub fn cf_value(u: &PartialQuotients) -> Result<Fraction> {
    if u.is_empty() {
        return Err(Error::EmptySequence("an empty expansion has no value"));
    }
    let num = continuant_raw(&u.as_slice()[1..]);
    let den = continuant(u);
    Fraction::new(num, den)
}

/// Canonical expansion of `c/d` with `0 < c < d`; the last element is at least 2.
pub fn cf_expand(f: &Fraction) -> Result<PartialQuotients> {
    let (c, d) = (f.numerator(), f.denominator());
    if c.is_zero() || c >= d {
        return Err(Error::OutOfRange(format!("expansion needs 0 < numerator < denominator, got {f}")));
    }
    let mut elements = Vec::new();
    let (mut num, mut den) = (c.clone(), d.clone());
    while !num.is_zero() {
        let (q, r) = den.div_rem(&num);
        let q = q.to_u64().ok_or_else(|| Error::OutOfRange(format!("partial quotient {q} exceeds 64 bits")))?;
        elements.push(q);
        den = std::mem::replace(&mut num, r);
    }
    Ok(PartialQuotients(elements))
}

/// Rewrites `(1, x, u_3, ...)` as `(x + 1, u_3, ...)`, which has the same
/// continuant since `<1, v - 1, ...> = <v, ...>` for `v >= 2`.
pub fn normalize_leading_one(u: &PartialQuotients) -> Result<PartialQuotients> {
    let s = u.as_slice();
    if s.len() < 2 {
        return Err(Error::InvalidTransform(format!("{u} is too short to absorb a leading 1")));
    }
    if s[0] != 1 {
        return Err(Error::InvalidTransform(format!("{u} does not start with 1")));
    }
    let mut out = Vec::with_capacity(s.len() - 1);
    out.push(s[1] + 1);
    out.extend_from_slice(&s[2..]);
    Ok(PartialQuotients(out))
}

/// Inverse of [`normalize_leading_one`]: `(v, u_3, ...)` with `v >= 2`
/// becomes `(1, v - 1, u_3, ...)`.
pub fn split_leading(u: &PartialQuotients) -> Result<PartialQuotients> {
    match u.first() {
        None => Err(Error::InvalidTransform("empty sequence".into())),
        Some(1) => Err(Error::InvalidTransform(format!(
            "{u} starts with 1; the identity needs a leading element of at least 2"
        ))),
        Some(v) => {
            let mut out = Vec::with_capacity(u.len() + 1);
            out.push(1);
            out.push(v - 1);
            out.extend_from_slice(&u.as_slice()[1..]);
            Ok(PartialQuotients(out))
        }
    }
}

pub fn reverse(u: &PartialQuotients) -> PartialQuotients {
    let mut v = u.0.clone();
    v.reverse();
    PartialQuotients(v)
}
