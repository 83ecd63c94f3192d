//! Explicit finite lower and upper bounds on `f(a^m, N)` and `g_m`, each
//! compared against an independent oracle.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive};
use serde::Serialize;

use super::cases::{case_matrix, growth_polynomial, matrix_chain, PolyCase};
use super::expansions::minimal_root_threshold;
use super::gtable::GTable;
use super::poly::Polynomial;
use super::refined::{refined_matrix, refined_radius};
use crate::census::{count_f, CensusOptions, Mode};
use crate::construction::Scheme;
use crate::error::{Error, Result};
use crate::report::decimal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// The oracle must be at least the claim.
    Lower,
    /// The oracle must be at most the claim.
    Upper,
    /// The oracle must equal the claim.
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    /// Exhaustive count of `f(a^m, N)`.
    Census,
    /// `4 g_m` for lower bounds on `f`, or `g_m` itself for bounds on `g`.
    GTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleValue {
    #[serde(with = "decimal")]
    pub value: BigUint,
    pub kind: OracleKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    OracleUnavailable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::OracleUnavailable => "oracle-unavailable",
        })
    }
}

/// A concrete bound and its comparison with an oracle.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub theorem_id: String,
    pub parameters: BTreeMap<String, u64>,
    pub direction: Direction,
    #[serde(with = "decimal")]
    pub claimed_bound: BigUint,
    /// Exact integer chain the claim is derived from, when there is one.
    #[serde(with = "decimal::option")]
    pub chain_value: Option<BigUint>,
    pub oracle: Option<OracleValue>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl BoundReport {
    fn new(theorem_id: &str, direction: Direction, claimed_bound: BigUint) -> Self {
        BoundReport {
            theorem_id: theorem_id.into(),
            parameters: BTreeMap::new(),
            direction,
            claimed_bound,
            chain_value: None,
            oracle: None,
            verdict: Verdict::OracleUnavailable,
            notes: Vec::new(),
        }
    }

    fn param(mut self, name: &str, v: u64) -> Self {
        self.parameters.insert(name.into(), v);
        self
    }

    fn chain(mut self, v: BigUint) -> Self {
        self.chain_value = Some(v);
        self
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    fn with_oracle(mut self, oracle: Result<OracleValue>) -> Result<Self> {
        match oracle {
            Ok(o) => {
                let ok = match self.direction {
                    Direction::Lower => o.value >= self.claimed_bound,
                    Direction::Upper => o.value <= self.claimed_bound,
                    Direction::Exact => o.value == self.claimed_bound,
                };
                self.verdict = if ok { Verdict::Holds } else { Verdict::Fails };
                self.oracle = Some(o);
            }
            Err(e @ (Error::BudgetExceeded { .. } | Error::TargetTooLarge(_))) => {
                self.verdict = Verdict::OracleUnavailable;
                self.notes.push(format!("oracle unavailable: {e}"));
            }
            Err(e) => return Err(e),
        }
        Ok(self)
    }

    fn without_oracle(mut self) -> Self {
        self.verdict = Verdict::OracleUnavailable;
        self
    }
}

/// Where the comparison value for a lower bound on `f` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Oracle {
    None,
    /// Exhaustive census with the given options.
    Census(CensusOptions),
    /// `4 g_m` from the matching recurrence.
    GTable,
}

fn census_oracle(a: u64, m: u32, bound: u64, opts: &CensusOptions) -> Result<OracleValue> {
    let r = count_f(a, m, bound, Mode::Sequences, opts)?;
    Ok(OracleValue { value: r.count.into(), kind: OracleKind::Census })
}

fn gtable_oracle(scheme: &Scheme, m: u32) -> Result<OracleValue> {
    let t = GTable::for_scheme(scheme, m)?;
    Ok(OracleValue { value: t.get(m) * 4u32, kind: OracleKind::GTable })
}

fn attach(report: BoundReport, oracle: Oracle, scheme: &Scheme, m: u32) -> Result<BoundReport> {
    match oracle {
        Oracle::None => Ok(report.without_oracle()),
        Oracle::Census(opts) => report.with_oracle(census_oracle(scheme.a(), m, scheme.bound(), &opts)),
        Oracle::GTable => report.with_oracle(gtable_oracle(scheme, m)),
    }
}

fn ceil_log2(x: u64) -> u32 {
    debug_assert!(x >= 1);
    64 - (x - 1).leading_zeros()
}

/// Number of guaranteed recurrence steps, `ceil(log2 floor((m - s + 1)/(4s + 4)))`.
pub fn iteration_depth(m: u32, s: u32) -> Result<u32> {
    if s < 2 {
        return Err(Error::OutOfRange(format!("s must be at least 2, got {s}")));
    }
    let (m, s) = (u64::from(m), u64::from(s));
    if m < 5 * s + 5 {
        return Err(Error::NotApplicable(format!("m = {m} is below 5s + 5 = {}", 5 * s + 5)));
    }
    let q = (m - s + 1) / (4 * s + 4);
    if q == 0 {
        return Err(Error::NotApplicable(format!("floor((m - s + 1)/(4s + 4)) is 0 for m = {m}")));
    }
    Ok(ceil_log2(q))
}

/// Lower ends `i_0 > i_1 > ...` of the nested index ranges reached by
/// repeatedly expanding the recurrence, `i_0 = floor((m - s + 1)/2)` and
/// `i_j = floor((i_(j-1) - s + 1)/2)`, continued while the previous end is
/// at least `s + 3`.
pub fn interval_chain(m: u32, s: u32) -> Vec<i64> {
    let (m, s) = (i64::from(m), i64::from(s));
    let mut out = vec![Integer::div_floor(&(m - s + 1), &2)];
    while let Some(&last) = out.last() {
        if last < s + 3 {
            break;
        }
        out.push(Integer::div_floor(&(last - s + 1), &2));
    }
    out
}

/// `ceil(num/den * λ^n)` for the largest root `λ` of `poly`, refining the
/// root until both bracket ends agree. Falls back to the upper end.
fn ceil_scaled_power(poly: &Polynomial, num: u64, den: u64, n: u32) -> Result<BigUint> {
    let mut bracket = poly.bracket_largest_root()?;
    let eval = |x: &super::poly::Dyadic| -> BigInt {
        let p = x.pow(n);
        let top = p.mantissa() * BigInt::from(num);
        let bottom = BigInt::from(den) << p.exp() as usize;
        top.div_ceil(&bottom)
    };
    let mut hi = eval(&bracket.hi);
    for bits in [50, 100, 200, 400] {
        bracket.refine(poly, 2f64.powi(-bits));
        let lo = eval(&bracket.lo);
        hi = eval(&bracket.hi);
        if lo == hi {
            break;
        }
    }
    hi.to_biguint().ok_or_else(|| Error::Bracketing("negative power".into()))
}

fn to_nat(v: BigInt) -> BigUint {
    v.to_biguint().expect("chains of nonnegative matrices are nonnegative")
}

/// Lower bound on `f(a^m, a^s)`.
///
/// * `s = 2`: `4 * 2^n` with `n` the least integer such that
///   `12 * 2^n >= m + 1` (`a = 2`, `m >= 12`) or `5 * 2^n >= m + 1`
///   (`a > 2`, `m >= 5`);
/// * odd `s`: `4 (s + 1)^n` for `m > 5s + 5`;
/// * `s = 4`: `ceil(4 λ^n)`, `m >= 25`;
/// * even `s >= 6`: `ceil(8/3 λ^n)`, `m >= 5s + 5`;
///
/// where `n` is [`iteration_depth`] and `λ` the largest root of the growth
/// polynomial. For the matrix cases the exact chain `4 * 2 v (2A)^n 1` is
/// reported too.
pub fn growth_bound(a: u64, s: u32, m: u32, oracle: Oracle) -> Result<BoundReport> {
    let scheme = Scheme::power(a, s)?;
    let base = |claimed: BigUint| {
        BoundReport::new("theorem1", Direction::Lower, claimed).param("a", a).param("s", s.into()).param("m", m.into())
    };
    let report = if s == 2 {
        let (unit, min_m) = if a == 2 { (12u64, 12) } else { (5, 5) };
        if m < min_m {
            return Err(Error::NotApplicable(format!("need m >= {min_m} for s = 2, a = {a}")));
        }
        let mut n = 0u32;
        while unit << n < u64::from(m) + 1 {
            n += 1;
        }
        let claimed = BigUint::from(4u32) << n as usize;
        base(claimed.clone()).param("n", n.into()).chain(claimed)
    } else if s % 2 == 1 {
        if m <= 5 * s + 5 {
            return Err(Error::NotApplicable(format!("need m > 5s + 5 = {} for odd s", 5 * s + 5)));
        }
        let n = iteration_depth(m, s)?;
        let claimed = BigUint::from(s + 1).pow(n) * 4u32;
        base(claimed.clone()).param("n", n.into()).chain(claimed)
    } else {
        let n = iteration_depth(m, s)?;
        let cp = growth_polynomial(s)?;
        let cm = case_matrix(s)?;
        let claimed =
            if s == 4 { ceil_scaled_power(&cp.poly, 4, 1, n)? } else { ceil_scaled_power(&cp.poly, 8, 3, n)? };
        base(claimed)
            .param("n", n.into())
            .chain(to_nat(matrix_chain(&cm, n)) * 4u32)
            .note(format!("growth polynomial {} ({})", cp.poly, cp.case))
    };
    attach(report, oracle, &scheme, m)
}

/// Lower bound on `f(a^m, N)` for an arbitrary bound `N`, using
/// `s = floor(log_a N)` and the `s ≡ 4 (mod 8)` growth root at that `s`,
/// which is the smallest of the cubic roots once `s` passes the empirical
/// threshold. The oracle is `4 g_m` for elements below `a^s`.
pub fn arbitrary_bound_growth(a: u64, bound: u64, m: u32) -> Result<BoundReport> {
    if a < 2 || bound < a {
        return Err(Error::OutOfRange(format!("need a >= 2 and N >= a, got a = {a}, N = {bound}")));
    }
    let s = bound.ilog(a);
    let threshold = minimal_root_threshold(s.max(12) + 8)?;
    let s0 = threshold.s0.ok_or_else(|| Error::NotApplicable("no threshold found".into()))?;
    if s < s0 {
        return Err(Error::NotApplicable(format!(
            "N = {bound} is below {a}^{s0}; s = {s} is under the threshold {s0}"
        )));
    }
    let n = iteration_depth(m, s)?;
    let cubic = PolyCase::FourModEight.polynomial(s);
    let claimed = ceil_scaled_power(&cubic, 8, 3, n)?;
    let own = growth_polynomial(s)?;
    let mut report = BoundReport::new("theorem2", Direction::Lower, claimed)
        .param("a", a)
        .param("N", bound)
        .param("s", s.into())
        .param("m", m.into())
        .param("n", n.into())
        .param("s0", s0.into())
        .note(format!("bound uses {cubic} (s = 4 mod 8 family) at s = {s}"));
    if own.case != PolyCase::FourModEight {
        report = report.note(format!("s = {s} falls in the {} case, whose polynomial is {}", own.case, own.poly));
    }
    if let Ok(t1) = growth_bound(a, s, m, Oracle::None) {
        report = report.chain(t1.claimed_bound);
    }
    let scheme = Scheme::power(a, s)?;
    attach(report, Oracle::GTable, &scheme, m)
}

/// `2 v (2^5 B)^t (2A)^5 1` for `s = 6`, with `v = (1, 1, 1)`.
pub fn refined_chain(t: u32) -> BigUint {
    let a = case_matrix(6).expect("s = 6").matrix;
    let b32 = refined_matrix().scale(32);
    let m = b32.pow(t).mul(&a.scale(2).pow(5));
    let ones = vec![BigInt::one(); 3];
    to_nat(2 * m.mul_vec(&ones).into_iter().sum::<BigInt>())
}

/// Refined `s = 6` bound on `f(a^m, a^6)`: `4 * 2 v (2^5 B)^t (2A)^5 1` with
/// `t = floor((n - 5)/5)`, needing `n >= 10` recurrence steps.
///
/// The notes carry the growth exponents `1 + log2(μ)/5` and `1 + log2(μ)/7`
/// and the plain chain over the same `5t + 5` steps.
pub fn refined_six_bound(a: u64, m: u32, oracle: Oracle) -> Result<BoundReport> {
    let n = iteration_depth(m, 6)?;
    if n < 10 {
        return Err(Error::NotApplicable(format!("need at least 10 recurrence steps, m = {m} gives {n}")));
    }
    let t = (n - 5) / 5;
    let refined = refined_chain(t);
    let plain = to_nat(matrix_chain(&case_matrix(6)?, 5 * t + 5));
    let mu = refined_radius()?.lambda;
    let report = BoundReport::new("theorem3", Direction::Lower, &refined * 4u32)
        .param("a", a)
        .param("s", 6)
        .param("m", m.into())
        .param("n", n.into())
        .param("t", t.into())
        .chain(&refined * 4u32)
        .note(format!("plain chain over {} steps: {}", 5 * t + 5, &plain * 4u32))
        .note(format!("exponent 1 + log2(mu)/5 = {:.6}", 1.0 + mu.log2() / 5.0))
        .note(format!("exponent 1 + log2(mu)/7 = {:.6}", 1.0 + mu.log2() / 7.0));
    attach(report, oracle, &Scheme::power(a, 6)?, m)
}

/// `(refined chain, plain chain)` over the same number of steps, both
/// bounding `g_m`.
pub fn refined_vs_plain(m: u32) -> Result<(BigUint, BigUint)> {
    let n = iteration_depth(m, 6)?;
    if n < 10 {
        return Err(Error::NotApplicable(format!("need at least 10 recurrence steps, m = {m} gives {n}")));
    }
    let t = (n - 5) / 5;
    Ok((refined_chain(t), to_nat(matrix_chain(&case_matrix(6)?, 5 * t + 5))))
}

/// `f(3^m, 4) >= ceil((m + 1)/4)` for `m >= 8`.
pub fn base_three_bound(m: u32, oracle: Oracle) -> Result<BoundReport> {
    if m < 8 {
        return Err(Error::NotApplicable(format!("need m >= 8, got {m}")));
    }
    let claimed = BigUint::from(m + 1).div_ceil(&BigUint::from(4u32));
    let report =
        BoundReport::new("theorem4", Direction::Lower, claimed).param("a", 3).param("N", 4).param("m", m.into());
    attach(report, oracle, &Scheme::base_three(), m)
}

/// `f(2^(2^k - 1), 3) >= 2^k` for `k >= 2`.
pub fn dyadic_chain_bound(k: u32, oracle: Oracle) -> Result<BoundReport> {
    if !(2..=31).contains(&k) {
        return Err(Error::NotApplicable(format!("need 2 <= k <= 31, got {k}")));
    }
    let m = (1u32 << k) - 1;
    let report = BoundReport::new("theorem5", Direction::Lower, BigUint::one() << k as usize)
        .param("a", 2)
        .param("N", 3)
        .param("k", k.into())
        .param("m", m.into());
    attach(report, oracle, &Scheme::dyadic(), m)
}

fn g_oracle(t: &GTable, m: u32) -> Result<OracleValue> {
    Ok(OracleValue { value: t.get(m).clone(), kind: OracleKind::GTable })
}

/// Upper bounds `g_m <= m^(log2(s + 1))` for odd `s`, one report per
/// `m` in `2..=m_max`.
pub fn method_ceiling_odd(s: u32, m_max: u32) -> Result<Vec<BoundReport>> {
    if s.is_multiple_of(2) || s < 3 {
        return Err(Error::NotApplicable(format!("s must be odd and at least 3, got {s}")));
    }
    let table = GTable::new(s, m_max)?;
    let exact_exp = (s + 1).is_power_of_two().then(|| (s + 1).trailing_zeros());
    (2..=m_max)
        .map(|m| {
            let claimed = match exact_exp {
                Some(e) => BigUint::from(m).pow(e),
                None => {
                    let x = f64::from(m).powf(f64::from(s + 1).log2()).floor();
                    BigUint::from(x as u128)
                }
            };
            let mut r =
                BoundReport::new("theorem6", Direction::Upper, claimed).param("s", s.into()).param("m", m.into());
            if exact_exp.is_none() {
                r = r.note("ceiling rounded down from floating point");
            }
            r.with_oracle(g_oracle(&table, m))
        })
        .collect()
}

/// `2^(k-3) (1, 1) A^(k-4) v` with the `s = 4` matrix `A`.
fn s4_chain(k: u32, v: [u64; 2]) -> BigUint {
    let a = case_matrix(4).expect("s = 4").matrix;
    let col = a.pow(k - 4).mul_vec(&[BigInt::from(v[0]), BigInt::from(v[1])]);
    to_nat((&col[0] + &col[1]) << (k - 3) as usize)
}

/// Upper bound `g_(2^k - 1) <= 2^(k-3) (1, 1) A^(k-4) (1, 2)^T` for `s = 4`,
/// `k >= 5`. The terminal vector `(1, 2)` stands for `(g_6, g_7)`; the notes
/// record the chain with the actual table values.
pub fn method_ceiling_s4(k: u32) -> Result<BoundReport> {
    method_ceiling_s4_with(k, [1, 2], "terminal vector (1, 2)")
}

/// [`method_ceiling_s4`] with `(g_6, g_7)` read from the recurrence table.
pub fn method_ceiling_s4_tabulated(k: u32) -> Result<BoundReport> {
    let t = GTable::new(4, 7)?;
    let v = [t.get(6), t.get(7)].map(|x| x.to_u64().expect("small"));
    method_ceiling_s4_with(k, v, "terminal vector (g_6, g_7) from the table")
}

fn method_ceiling_s4_with(k: u32, v: [u64; 2], what: &str) -> Result<BoundReport> {
    if !(5..=31).contains(&k) {
        return Err(Error::NotApplicable(format!("need 5 <= k <= 31, got {k}")));
    }
    let m = (1u32 << k) - 1;
    let table = GTable::new(4, m)?;
    let claimed = s4_chain(k, v);
    BoundReport::new("theorem6", Direction::Upper, claimed.clone())
        .param("s", 4)
        .param("k", k.into())
        .param("m", m.into())
        .chain(claimed)
        .note(format!("{what} = ({}, {})", v[0], v[1]))
        .with_oracle(g_oracle(&table, m))
}

/// `g_(2^k - 1) = 2^(k-3)` for `s = 2` (base 2 window), `k >= 4`.
pub fn method_ceiling_s2(k: u32) -> Result<BoundReport> {
    if !(4..=31).contains(&k) {
        return Err(Error::NotApplicable(format!("need 4 <= k <= 31, got {k}")));
    }
    let m = (1u32 << k) - 1;
    let table = GTable::new(2, m)?;
    BoundReport::new("theorem6", Direction::Exact, BigUint::one() << (k - 3) as usize)
        .param("s", 2)
        .param("k", k.into())
        .param("m", m.into())
        .with_oracle(g_oracle(&table, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn depth() {
        assert_eq!(iteration_depth(35, 2).unwrap(), 1);
        assert_eq!(iteration_depth(35, 6).unwrap(), 0);
        assert!(matches!(iteration_depth(34, 6), Err(Error::NotApplicable(_))));
        assert_eq!(iteration_depth(14369, 6).unwrap(), 10);
        assert_eq!(iteration_depth(14368, 6).unwrap(), 9);
        let chain = interval_chain(100, 6);
        assert_eq!(chain[0], 47);
        assert!(chain.windows(2).all(|w| w[0] > w[1]));
        assert!(chain[chain.len() - 2] >= 9 && chain[chain.len() - 1] < 9);
    }

    #[test]
    fn s2_growth() {
        let r = growth_bound(2, 2, 24, Oracle::GTable).unwrap();
        assert_eq!(r.claimed_bound, u(16));
        assert_eq!(r.verdict, Verdict::Holds);
        let r = growth_bound(2, 2, 20, Oracle::Census(CensusOptions::default())).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(growth_bound(2, 2, 11, Oracle::None).is_err());
    }

    #[test]
    fn matrix_growth() {
        for s in [4u32, 6, 8, 10] {
            for m in [5 * s + 5, 12 * s, 40 * s] {
                let r = growth_bound(2, s, m, Oracle::GTable).unwrap();
                assert_eq!(r.verdict, Verdict::Holds, "{r:?}");
                let chain = r.chain_value.clone().unwrap();
                assert!(chain <= r.oracle.as_ref().unwrap().value, "{r:?}");
            }
        }
        for s in [3u32, 5, 7] {
            let r = growth_bound(2, s, 20 * s, Oracle::GTable).unwrap();
            assert_eq!(r.verdict, Verdict::Holds, "{r:?}");
        }
    }

    #[test]
    fn refined() {
        let (r, p) = refined_vs_plain(14369).unwrap();
        assert_eq!(r, u(1578975232));
        assert_eq!(p, u(1578741760));
        let rep = refined_six_bound(2, 14369, Oracle::GTable).unwrap();
        assert_eq!(rep.oracle.unwrap().value, u(4 * 1772974080));
        assert_eq!(rep.verdict, Verdict::Holds);
        assert!(refined_six_bound(2, 14368, Oracle::None).is_err());
    }

    #[test]
    fn small_claims() {
        let r = dyadic_chain_bound(2, Oracle::Census(CensusOptions::default())).unwrap();
        assert_eq!(r.claimed_bound, u(4));
        assert_eq!(r.oracle.unwrap().value, u(4));
        assert_eq!(r.verdict, Verdict::Holds);
        let r = base_three_bound(8, Oracle::GTable).unwrap();
        assert_eq!(r.claimed_bound, u(3));
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn ceilings() {
        let r = method_ceiling_s2(6).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        let odd = method_ceiling_odd(3, 300).unwrap();
        assert!(odd.iter().all(|r| r.verdict == Verdict::Holds));
        let lit = method_ceiling_s4(6).unwrap();
        assert_eq!(lit.claimed_bound, u(152));
        assert_eq!(lit.oracle.as_ref().unwrap().value, u(192));
        let tab = method_ceiling_s4_tabulated(5).unwrap();
        assert_eq!(tab.claimed_bound, u(56));
        assert_eq!(tab.verdict, Verdict::Holds);
    }

    #[test]
    fn arbitrary_bound() {
        let r = arbitrary_bound_growth(2, 1 << 12, 70).unwrap();
        assert_eq!(r.parameters["s"], 12);
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(arbitrary_bound_growth(2, 1000, 70).is_err());
    }
}
