//! Memoized lower-bound recurrence for the number of doubling-built sequences.
//!
//! `g_m = 1` for `m` in the seed window, `0` below it, and above it
//! `g_m = 2 * sum g_((m - r)/2)` over the admissible exponents `r` with the
//! parity of `m`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::construction::Scheme;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GTable {
    exponents: Vec<u32>,
    window: (u32, u32),
    values: Vec<BigUint>,
}

impl GTable {
    /// Table for elements below `2^s`; see [`GTable::for_scheme`].
    pub fn new(s: u32, m_max: u32) -> Result<Self> {
        Self::power(2, s, m_max)
    }

    /// Table for elements below `a^s`.
    pub fn power(a: u64, s: u32, m_max: u32) -> Result<Self> {
        Self::for_scheme(&Scheme::power(a, s)?, m_max)
    }

    pub fn for_scheme(scheme: &Scheme, m_max: u32) -> Result<Self> {
        Self::from_parts(scheme.exponents(), scheme.window(), m_max)
    }

    /// Explicit exponent set and seed window.
    pub fn from_parts(exponents: Vec<u32>, window: (u32, u32), m_max: u32) -> Result<Self> {
        if window.0 < 2 || window.0 > window.1 {
            return Err(Error::OutOfRange(format!("invalid window {window:?}")));
        }
        if exponents.is_empty() {
            return Err(Error::OutOfRange("no exponents".into()));
        }
        let mut values = Vec::with_capacity(m_max as usize + 1);
        for m in 0..=m_max {
            let g = if m < window.0 {
                BigUint::zero()
            } else if m <= window.1 {
                BigUint::one()
            } else {
                let sum: BigUint = exponents
                    .iter()
                    .filter(|&&r| r <= m && (m - r) % 2 == 0)
                    .map(|&r| &values[((m - r) / 2) as usize])
                    .sum();
                sum * 2u32
            };
            values.push(g);
        }
        Ok(GTable { exponents, window, values })
    }

    pub fn m_max(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    pub fn window(&self) -> (u32, u32) {
        self.window
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Panics if `m` is beyond the table.
    pub fn get(&self, m: u32) -> &BigUint {
        &self.values[m as usize]
    }

    pub fn try_get(&self, m: u32) -> Option<&BigUint> {
        self.values.get(m as usize)
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    /// Recomputes every entry above the window as `2 * sum g_k` over the
    /// contiguous index range `ceil((m - r_max)/2) ..= floor(m/2)` and
    /// returns the first `m` where this differs from the stored value.
    /// Only meaningful when the exponents are exactly `0..=r_max`.
    pub fn index_form_mismatch(&self) -> Option<u32> {
        let r_max = *self.exponents.iter().max().expect("nonempty");
        debug_assert!(self.exponents.iter().copied().eq(0..=r_max));
        // prefix[k] = g_0 + .. + g_(k-1)
        let mut prefix = Vec::with_capacity(self.values.len() + 1);
        prefix.push(BigUint::zero());
        for v in &self.values {
            let next = prefix.last().expect("nonempty") + v;
            prefix.push(next);
        }
        (self.window.1 + 1..=self.m_max()).find(|&m| {
            let lo = (m + 1).saturating_sub(r_max) / 2;
            let hi = m / 2;
            let sum = &prefix[hi as usize + 1] - &prefix[lo as usize];
            sum * 2u32 != self.values[m as usize]
        })
    }

    /// Same as [`GTable::index_form_mismatch`] but summing term by term.
    pub fn index_form_mismatch_direct(&self) -> Option<u32> {
        let r_max = *self.exponents.iter().max().expect("nonempty");
        (self.window.1 + 1..=self.m_max()).find(|&m| {
            let lo = (m + 1).saturating_sub(r_max) / 2;
            let sum: BigUint = (lo..=m / 2).map(|k| &self.values[k as usize]).sum();
            sum * 2u32 != self.values[m as usize]
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(t: &GTable, m: u32) -> u64 {
        u64::try_from(t.get(m)).unwrap()
    }

    #[test]
    fn base_two_squares() {
        let t = GTable::new(2, 200).unwrap();
        assert!((6..=11).all(|m| g(&t, m) == 1));
        assert_eq!(g(&t, 12), 2);
        assert_eq!(g(&t, 5), 0);
        for k in 4..=7 {
            assert_eq!(g(&t, (1 << k) - 1), 1 << (k - 3));
        }
    }

    #[test]
    fn odd_small() {
        let t = GTable::new(3, 20).unwrap();
        assert!((2..=5).all(|m| g(&t, m) == 1));
        assert_eq!(g(&t, 6), 4);
        assert_eq!(g(&t, 7), 2 * (g(&t, 3) + g(&t, 2)));
    }

    #[test]
    fn forms_agree() {
        for s in 2..=12 {
            let t = GTable::new(s, 600).unwrap();
            assert_eq!(t.index_form_mismatch(), None, "s = {s}");
            assert_eq!(t.index_form_mismatch_direct(), None, "s = {s}");
        }
    }

    #[test]
    fn other_schemes() {
        let t = GTable::for_scheme(&Scheme::dyadic(), 64).unwrap();
        assert_eq!(g(&t, 7), 2);
        assert_eq!(g(&t, 15), 4);
        assert_eq!(g(&t, 8), 0);
        let t = GTable::for_scheme(&Scheme::base_three(), 20).unwrap();
        assert_eq!(g(&t, 8), 2);
        assert_eq!(g(&t, 16), 4);
    }
}
