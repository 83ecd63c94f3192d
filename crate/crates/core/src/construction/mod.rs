//! Doubling constructions producing many sequences with continuant `a^m`.

mod doubling;
mod family;
mod seeds;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use doubling::{
    doubling_children, doubling_children_traced, endpoint_variants, endpoint_variants_traced, hensley_double,
    DoublingForm, EndpointVariant,
};
pub use family::{generate_family, generate_with, Step, WitnessSet};
pub use seeds::{seed_sequence, seed_sequences, SeedCache};

/// `a^e` if it fits in 64 bits.
pub(crate) fn checked_pow(a: u64, e: u32) -> Option<u64> {
    a.checked_pow(e)
}

/// Parameters of a single doubling step: base `a`, exclusive element bound,
/// target exponent `m`, and the exponent `r` of the inserted factor `a^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionParams {
    a: u64,
    bound: u64,
    m: u32,
    r: u32,
}

impl ConstructionParams {
    /// Element bound `a^s`.
    pub fn new(a: u64, s: u32, m: u32, r: u32) -> Result<Self> {
        if s < 2 {
            return Err(Error::OutOfRange(format!("s must be at least 2, got {s}")));
        }
        if r > s {
            return Err(Error::OutOfRange(format!("r = {r} exceeds s = {s}")));
        }
        let bound =
            checked_pow(a.max(2), s).ok_or_else(|| Error::OutOfRange(format!("{a}^{s} does not fit in 64 bits")))?;
        Self::with_bound(a, bound, m, r)
    }

    /// Arbitrary exclusive element bound; `a^r` must not exceed it.
    pub fn with_bound(a: u64, bound: u64, m: u32, r: u32) -> Result<Self> {
        if a < 2 {
            return Err(Error::OutOfRange(format!("a must be at least 2, got {a}")));
        }
        if bound < 3 {
            return Err(Error::OutOfRange(format!("bound must be at least 3, got {bound}")));
        }
        if m < 2 {
            return Err(Error::OutOfRange(format!("m must be at least 2, got {m}")));
        }
        if r > m || !(m - r).is_multiple_of(2) {
            return Err(Error::Precondition(format!("r = {r} must have the parity of m = {m}")));
        }
        if r >= 1 && checked_pow(a, r).is_none_or(|b| b > bound) {
            return Err(Error::OutOfRange(format!("{a}^{r} exceeds the bound {bound}")));
        }
        Ok(ConstructionParams { a, bound, m, r })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn r(&self) -> u32 {
        self.r
    }
}

/// A family of doubling constructions: base, exclusive element bound, and
/// the window of exponents where a single seed is required.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scheme {
    a: u64,
    bound: u64,
    window: (u32, u32),
}

impl Scheme {
    /// Elements below `a^s`. The seed window is `[2, s + 2]`, except for
    /// `a = 2, s = 2` where no seed exists at `m = 2` or `m = 5` and the
    /// window `[6, 11]` is used instead.
    pub fn power(a: u64, s: u32) -> Result<Self> {
        if a < 2 || s < 2 {
            return Err(Error::OutOfRange(format!("need a >= 2 and s >= 2, got a = {a}, s = {s}")));
        }
        let bound = checked_pow(a, s).ok_or_else(|| Error::OutOfRange(format!("{a}^{s} does not fit in 64 bits")))?;
        let window = if a == 2 && s == 2 { (6, 11) } else { (2, s + 2) };
        Self::with_window(a, bound, window.0, window.1)
    }

    pub fn with_window(a: u64, bound: u64, lo: u32, hi: u32) -> Result<Self> {
        if a < 2 || bound < 3 || lo < 1 || lo > hi {
            return Err(Error::OutOfRange(format!("invalid scheme a = {a}, bound = {bound}, window [{lo}, {hi}]")));
        }
        Ok(Scheme { a, bound, window: (lo, hi) })
    }

    /// Base 3 with elements at most 3; seeds for `3^4 ..= 3^7`.
    pub fn base_three() -> Self {
        Scheme { a: 3, bound: 4, window: (4, 7) }
    }

    /// Base 2 with elements at most 2; only odd exponents are reachable.
    pub fn dyadic() -> Self {
        Scheme { a: 2, bound: 3, window: (3, 3) }
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn window(&self) -> (u32, u32) {
        self.window
    }

    /// Exponents `r` usable in a doubling step. `r = 0` needs room for
    /// `u_n + 1`, any other `r` needs `a^r <= bound`.
    pub fn exponents(&self) -> Vec<u32> {
        let mut out = Vec::new();
        if self.bound >= 4 {
            out.push(0);
        }
        let mut r = 1;
        while checked_pow(self.a, r).is_some_and(|b| b <= self.bound) {
            out.push(r);
            r += 1;
        }
        out
    }

    /// Range that both end elements of a recursable sequence must lie in.
    pub fn endpoint_range(&self) -> (u64, u64) {
        if self.bound >= 4 {
            (2, self.bound - 2)
        } else {
            (2, self.bound - 1)
        }
    }

    pub fn params(&self, m: u32, r: u32) -> Result<ConstructionParams> {
        ConstructionParams::with_bound(self.a, self.bound, m, r)
    }
}
