//! Named batches of checks, each producing pass/fail lines and bound reports.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Pow;
use serde::Serialize;

use crate::bounds::{
    arbitrary_bound_growth, base_three_bound, char_poly_check, dyadic_chain_bound, growth_bound, method_ceiling_odd,
    method_ceiling_s2, method_ceiling_s4, method_ceiling_s4_tabulated, minimal_root_threshold, refined_matrix,
    refined_radius, refined_six_bound, refined_vs_plain, refinement_gap, root_expansion_check, spectral_pair,
    BoundReport, GTable, Oracle, Verdict,
};
use crate::census::{enumerate, CensusOptions, CensusQuery, Mode};
use crate::construction::{
    doubling_children, endpoint_variants, generate_with, hensley_double, seed_sequences, Scheme, SeedCache,
};
use crate::continuant::{
    cf_expand, cf_value, continuant, continuant_det, normalize_leading_one, reverse, Fraction, PartialQuotients,
};
use crate::error::{Error, Result};

/// Continuant identities used as goldens for small
/// powers of 2 and 3: `(base, exponent, sequence)`.
pub const KNOWN_IDENTITIES: &[(u64, u32, &[u64])] = &[
    (2, 6, &[2, 1, 3, 1, 1, 2]),
    (2, 7, &[2, 1, 2, 1, 1, 1, 1, 2]),
    (2, 8, &[2, 3, 3, 1, 3, 2]),
    (2, 9, &[2, 3, 2, 1, 1, 1, 3, 2]),
    (2, 10, &[2, 3, 2, 3, 1, 1, 3, 2]),
    (2, 11, &[2, 1, 1, 2, 3, 3, 1, 1, 2, 2]),
    (3, 4, &[2, 2, 1, 1, 1, 1, 2]),
    (3, 5, &[2, 1, 1, 1, 3, 1, 2, 2]),
    (3, 6, &[2, 3, 1, 3, 1, 2, 1, 1, 2]),
    (3, 7, &[2, 1, 2, 2, 1, 2, 3, 2, 1, 2]),
    (2, 3, &[2, 1, 2]),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Statement1,
    Lemmas,
    Theorem1,
    Theorem2,
    Theorem3,
    Theorem4,
    Theorem5,
    Theorem6,
    Remarks,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Statement1,
        Suite::Lemmas,
        Suite::Theorem1,
        Suite::Theorem2,
        Suite::Theorem3,
        Suite::Theorem4,
        Suite::Theorem5,
        Suite::Theorem6,
        Suite::Remarks,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Statement1 => "statement1",
            Suite::Lemmas => "lemmas",
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Theorem3 => "theorem3",
            Suite::Theorem4 => "theorem4",
            Suite::Theorem5 => "theorem5",
            Suite::Theorem6 => "theorem6",
            Suite::Remarks => "remarks",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::OutOfRange(format!("unknown suite {s:?}")))
    }
}

/// Size limits for the sweeps.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Largest `m` for recurrence sweeps.
    pub m_max: u32,
    /// Largest `s` for spectral and expansion sweeps.
    pub s_max: u32,
    /// Largest `k` for the `2^k - 1` sweeps.
    pub k_max: u32,
    /// Largest `m` checked against the exhaustive census.
    pub census_m_max: u32,
    pub census: CensusOptions,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { m_max: 4096, s_max: 1000, k_max: 12, census_m_max: 18, census: CensusOptions::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported, not asserted.
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub reports: Vec<BoundReport>,
}

impl Outcome {
    /// True if any check failed or any bound report failed.
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail) || self.reports.iter().any(|r| r.verdict == Verdict::Fails)
    }

    pub fn extend(&mut self, other: Outcome) {
        self.checks.extend(other.checks);
        self.reports.extend(other.reports);
    }
}

struct Recorder {
    suite: Suite,
    out: Outcome,
}

impl Recorder {
    fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.out.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        });
    }

    fn info(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.out.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            status: Status::Info,
            detail: detail.into(),
        });
    }

    fn report(&mut self, r: BoundReport) {
        self.out.reports.push(r);
    }
}

pub fn run(suite: Suite, limits: &Limits) -> Result<Outcome> {
    let mut rec = Recorder { suite, out: Outcome::default() };
    match suite {
        Suite::Statement1 => statement1(&mut rec)?,
        Suite::Lemmas => lemmas(&mut rec, limits)?,
        Suite::Theorem1 => theorem1(&mut rec, limits)?,
        Suite::Theorem2 => theorem2(&mut rec)?,
        Suite::Theorem3 => theorem3(&mut rec)?,
        Suite::Theorem4 => theorem4(&mut rec, limits)?,
        Suite::Theorem5 => theorem5(&mut rec, limits)?,
        Suite::Theorem6 => theorem6(&mut rec, limits)?,
        Suite::Remarks => remarks(&mut rec, limits)?,
    }
    Ok(rec.out)
}

pub fn run_all(limits: &Limits) -> Result<Outcome> {
    let mut out = Outcome::default();
    for s in Suite::ALL {
        out.extend(run(s, limits)?);
    }
    Ok(out)
}

fn pq(v: &[u64]) -> PartialQuotients {
    PartialQuotients::new(v.to_vec()).expect("positive literals")
}

fn all_sequences(len: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                (1..=max).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn statement1(rec: &mut Recorder) -> Result<()> {
    for &(a, e, seq) in KNOWN_IDENTITIES {
        let got = continuant(&pq(seq));
        let want = BigUint::from(a).pow(e);
        rec.check(format!("identity {a}^{e}"), got == want, format!("{} = {got}", pq(seq)));
    }
    let mut bad = 0;
    let mut total = 0;
    for len in 1..=7 {
        for v in all_sequences(len, 3) {
            let u = pq(&v);
            total += 1;
            if continuant(&u) != continuant(&reverse(&u)) || continuant_det(&u)? != continuant(&u) {
                bad += 1;
            }
        }
    }
    rec.check(
        "reversal and determinant agree",
        bad == 0,
        format!("{total} sequences up to length 7 over 1..=3, {bad} mismatches"),
    );
    let mut bad = 0;
    for d in 2u64..=500 {
        for c in 1..d {
            if num_integer::gcd(c, d) != 1 {
                continue;
            }
            let f = Fraction::from_u64(c, d)?;
            let e = cf_expand(&f)?;
            let canonical = e.len() == 1 || e.last() != Some(1);
            if cf_value(&e)? != f || !canonical {
                bad += 1;
            }
        }
    }
    rec.check("expansion round trip", bad == 0, format!("all reduced c/d with d <= 500, {bad} failures"));
    let n = normalize_leading_one(&pq(&[1, 1, 3]))?;
    rec.check(
        "leading one",
        n == pq(&[2, 3]) && continuant(&n) == continuant(&pq(&[1, 1, 3])),
        format!("(1,1,3) -> {n}"),
    );
    Ok(())
}

fn lemmas(rec: &mut Recorder, limits: &Limits) -> Result<()> {
    let (w, w2) = hensley_double(&pq(&[2, 2]), 2)?;
    rec.check("doubling with b = 2", w == pq(&[2, 1, 1, 1, 2, 2]) && w2 == pq(&[2, 1, 3, 2]), format!("{w}, {w2}"));
    let scheme = Scheme::power(2, 2)?;
    let c = doubling_children(&pq(&[2, 1, 2]), &scheme.params(7, 1)?)?;
    rec.check(
        "odd doubling step",
        c.contains(&pq(&[2, 1, 2, 1, 1, 1, 1, 2])),
        c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
    );
    let c = doubling_children(&pq(&[2, 1, 2]), &scheme.params(6, 0)?)?;
    rec.check(
        "even doubling step",
        c.contains(&pq(&[2, 1, 3, 1, 1, 2])),
        c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
    );
    let v = endpoint_variants(&pq(&[2, 1, 2]))?;
    rec.check("endpoint variants", v.len() == 4 && v.iter().all(|x| continuant(x) == 8u32.into()), format!("{v:?}"));

    let cache = SeedCache::in_memory();
    for sch in
        [Scheme::power(2, 2)?, Scheme::power(3, 2)?, Scheme::power(2, 4)?, Scheme::base_three(), Scheme::dyadic()]
    {
        let seeds = seed_sequences(&sch, &cache);
        rec.check(
            format!("seeds a={} N={}", sch.a(), sch.bound()),
            seeds.is_ok(),
            match &seeds {
                Ok(s) => format!("{} seeds", s.len()),
                Err(e) => e.to_string(),
            },
        );
    }

    let m_max = 40.min(limits.m_max);
    let table = GTable::for_scheme(&scheme, m_max)?;
    let mut short = Vec::new();
    let mut outside = Vec::new();
    for m in 2..=m_max {
        let set = generate_with(&scheme, m, &cache)?;
        if BigUint::from(set.len()) < table.get(m) * 4u32 {
            short.push(m);
        }
        if m <= limits.census_m_max {
            let q = CensusQuery::power(2, m, 4, Mode::Sequences)?;
            let all = enumerate(&q, &limits.census)?;
            if !set.sequences().all(|u| all.binary_search(u).is_ok()) {
                outside.push(m);
            }
        }
    }
    rec.check(
        "family size at least 4 g_m (a=2, N=4)",
        short.is_empty(),
        format!("m in 2..={m_max}, short at {short:?}"),
    );
    rec.check(
        "family inside census (a=2, N=4)",
        outside.is_empty(),
        format!("m <= {}, outside at {outside:?}", limits.census_m_max.min(m_max)),
    );
    Ok(())
}

fn theorem1(rec: &mut Recorder, limits: &Limits) -> Result<()> {
    for m in 12..=limits.census_m_max.max(12) {
        rec.report(growth_bound(2, 2, m, Oracle::Census(limits.census))?);
    }
    for s in 2..=10u32 {
        let lo = if s == 2 { 12 } else { 5 * s + 6 };
        let hi = limits.m_max.min(60 * s).max(lo);
        let step = ((hi - lo) / 6).max(1);
        for m in (lo..=hi).step_by(step as usize) {
            rec.report(growth_bound(2, s, m, Oracle::GTable)?);
        }
    }
    rec.report(growth_bound(3, 2, 40, Oracle::GTable)?);
    Ok(())
}

fn theorem2(rec: &mut Recorder) -> Result<()> {
    for (a, n, m) in [(2u64, 1u64 << 12, 70u32), (2, 1 << 13, 200), (2, 5000, 300), (3, 3u64.pow(12), 100)] {
        rec.report(arbitrary_bound_growth(a, n, m)?);
    }
    Ok(())
}

fn theorem3(rec: &mut Recorder) -> Result<()> {
    for m in [14369u32, 20000, 30000] {
        rec.report(refined_six_bound(2, m, Oracle::GTable)?);
        let (refined, plain) = refined_vs_plain(m)?;
        rec.check(
            format!("refined chain dominates plain chain, m={m}"),
            refined >= plain,
            format!("{refined} >= {plain}"),
        );
    }
    let b = refined_matrix();
    rec.check("refined matrix is nonnegative", b.is_nonnegative(), b.to_string());
    let mu = refined_radius()?;
    rec.check(
        "power iteration agrees with characteristic root",
        (b.perron_root() - mu.lambda).abs() < 1e-8,
        format!("mu = {:.9}", mu.lambda),
    );
    Ok(())
}

fn theorem4(rec: &mut Recorder, limits: &Limits) -> Result<()> {
    for m in 8..=10 {
        rec.report(base_three_bound(m, Oracle::Census(limits.census))?);
    }
    for m in (11..=limits.m_max.min(400)).step_by(37) {
        rec.report(base_three_bound(m, Oracle::GTable)?);
    }
    Ok(())
}

fn theorem5(rec: &mut Recorder, limits: &Limits) -> Result<()> {
    for k in 2..=limits.k_max.max(2) {
        let oracle = if k <= 4 { Oracle::Census(limits.census) } else { Oracle::GTable };
        rec.report(dyadic_chain_bound(k, oracle)?);
    }
    Ok(())
}

fn theorem6(rec: &mut Recorder, limits: &Limits) -> Result<()> {
    for s in [3u32, 5, 7] {
        let reports = method_ceiling_odd(s, limits.m_max)?;
        let bad: Vec<u64> = reports.iter().filter(|r| r.verdict == Verdict::Fails).map(|r| r.parameters["m"]).collect();
        rec.check(
            format!("g_m <= m^log2({}) for m <= {}", s + 1, limits.m_max),
            bad.is_empty(),
            format!("violations at {bad:?}"),
        );
        if let Some(last) = reports.into_iter().last() {
            rec.report(last);
        }
    }
    for k in 4..=limits.k_max {
        rec.report(method_ceiling_s2(k)?);
    }
    for k in 6..=limits.k_max {
        rec.report(method_ceiling_s4(k)?);
    }
    for k in 5..=limits.k_max {
        let r = method_ceiling_s4_tabulated(k)?;
        rec.info(
            format!("s=4 chain with tabulated (g_6, g_7), k={k}"),
            format!(
                "g = {} <= {} : {}",
                r.oracle.as_ref().map(|o| o.value.to_string()).unwrap_or_default(),
                r.claimed_bound,
                r.verdict
            ),
        );
    }
    Ok(())
}

fn remarks(rec: &mut Recorder, limits: &Limits) -> Result<()> {
    let r = char_poly_check(6)?;
    rec.check("characteristic polynomial of 2A at s=6", r, "λ^3 - 6λ^2 - 8λ + 8");
    let s_hi = limits.s_max.clamp(4, 100);
    let mut bad = Vec::new();
    for s in (4..=s_hi).step_by(2) {
        let (eig, root) = spectral_pair(s)?;
        let in_bracket = s == 4 || (root.lambda > f64::from(s) && root.lambda < f64::from(s) + 1.0);
        if !char_poly_check(s)? || (eig - root.lambda).abs() > 1e-9 || !in_bracket {
            bad.push(s);
        }
    }
    rec.check(
        format!("spectral consistency for even s in [4, {s_hi}]"),
        bad.is_empty(),
        format!("mismatches at {bad:?}"),
    );

    let gap = refinement_gap()?;
    rec.check(
        "2 mu^(1/5) - lambda > 0.0000756",
        gap.exceeds_threshold && gap.gap > gap.threshold,
        format!("gap = {:.12} (error <= {:.1e})", gap.gap, gap.error_bound),
    );

    let mut outside: std::collections::BTreeMap<&str, Vec<u32>> = Default::default();
    let mut tested = 0;
    for s in (6..=limits.s_max.max(6)).step_by(2) {
        let e = root_expansion_check(s)?;
        tested += 1;
        for x in &e.expansions {
            if x.within != Some(true) {
                outside.entry(x.name).or_default().push(s);
            }
        }
    }
    for name in ["theta1", "theta4", "theta3_raw"] {
        let v = outside.get(name).cloned().unwrap_or_default();
        rec.check(
            format!("{name} inside its interval for even s in [6, {}]", limits.s_max),
            v.is_empty(),
            format!("{tested} values of s, outside at {}", summarize(&v)),
        );
    }
    for name in ["theta2", "theta3", "theta3_sixth"] {
        let v = outside.get(name).cloned().unwrap_or_default();
        rec.info(
            format!("{name} interval for even s in [6, {}]", limits.s_max),
            format!("{tested} values of s, outside at {}", summarize(&v)),
        );
    }
    let t = minimal_root_threshold(limits.s_max.max(12))?;
    rec.info("s = 4 mod 8 root is smallest from", format!("{:?} (over s <= {})", t.s0, limits.s_max.max(12)));
    Ok(())
}

fn summarize(v: &[u32]) -> String {
    match v.len() {
        0 => "none".into(),
        n if n <= 8 => format!("{v:?}"),
        n => format!("{n} values, first {:?}", &v[..8]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("theorem7".parse::<Suite>().is_err());
    }

    #[test]
    fn statement1_passes() {
        let out = run(Suite::Statement1, &Limits::default()).unwrap();
        assert!(!out.failed(), "{:#?}", out.checks);
    }
}
