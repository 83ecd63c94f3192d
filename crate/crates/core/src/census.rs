//! Exhaustive census of bounded partial-quotient sequences with a fixed
//! continuant.
//!
//! The search walks prefixes depth first, carrying the last two prefix
//! continuants `(K_{j-1}, K_j)`. Continuants strictly increase with length
//! once the length is at least 2, so any prefix whose continuant exceeds the
//! target is abandoned. The tree is split by its first two elements and the
//! subtrees are searched in parallel; results are concatenated in prefix
//! order, which makes the output lexicographic and independent of the worker
//! count.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use num_integer::Integer;
use num_traits::{Pow, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::continuant::{Fraction, Natural, PartialQuotients};
use crate::error::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Which objects to count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every sequence with the target continuant.
    Sequences,
    /// Only canonical expansions (last element at least 2), i.e. reduced
    /// fractions `c / target`.
    Fractions,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Sequences => "sequences",
            Mode::Fractions => "fractions",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sequences" => Ok(Mode::Sequences),
            "fractions" => Ok(Mode::Fractions),
            other => Err(Error::OutOfRange(format!("unknown census mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusQuery {
    target: Natural,
    bound: u64,
    mode: Mode,
}

impl CensusQuery {
    /// Sequences with continuant `target` and every element strictly below `bound`.
    pub fn new(target: Natural, bound: u64, mode: Mode) -> Result<Self> {
        if target < Natural::from(2u32) {
            return Err(Error::OutOfRange(format!("census target must be at least 2, got {target}")));
        }
        if bound < 2 {
            return Err(Error::OutOfRange(format!("element bound must be at least 2, got {bound}")));
        }
        Ok(CensusQuery { target, bound, mode })
    }

    pub fn power(a: u64, m: u32, bound: u64, mode: Mode) -> Result<Self> {
        if a < 2 || m < 1 {
            return Err(Error::OutOfRange(format!("need a >= 2 and m >= 1, got a={a}, m={m}")));
        }
        CensusQuery::new(Natural::from(a).pow(m), bound, mode)
    }

    pub fn target(&self) -> &Natural {
        &self.target
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    pub node_budget: u64,
    /// Worker threads; 0 uses the global rayon pool.
    pub workers: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { node_budget: DEFAULT_NODE_BUDGET, workers: 0 }
    }
}

impl CensusOptions {
    pub fn with_budget(node_budget: u64) -> Self {
        CensusOptions { node_budget, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountResult {
    pub count: u64,
    pub nodes_visited: u64,
    #[serde(with = "duration_millis")]
    pub elapsed: Duration,
    pub exhaustive: bool,
}

mod duration_millis {
    use serde::Serializer;
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_millis() as u64)
    }
}

/// Root of a parallel subtree: a prefix and its last two continuants.
struct Task {
    prefix: Vec<u64>,
    prev: u128,
    cur: u128,
}

struct Search<'a> {
    target: u128,
    bound: u64,
    mode: Mode,
    budget: u64,
    spent: &'a AtomicU64,
    aborted: &'a AtomicBool,
}

const FLUSH_EVERY: u64 = 1 << 12;

impl Search<'_> {
    fn accepts(&self, last: u64) -> bool {
        match self.mode {
            Mode::Sequences => true,
            Mode::Fractions => last >= 2,
        }
    }

    fn flush(&self, local: &mut u64) -> bool {
        let total = self.spent.fetch_add(*local, AtomicOrdering::Relaxed) + *local;
        *local = 0;
        if total > self.budget {
            self.aborted.store(true, AtomicOrdering::Relaxed);
        }
        !self.aborted.load(AtomicOrdering::Relaxed)
    }

    /// Walks the subtree under `task`, calling `emit` for each hit. Returns
    /// `false` if the budget ran out.
    fn run(&self, task: &Task, emit: &mut dyn FnMut(&[u64])) -> bool {
        let mut path = task.prefix.clone();
        // Length-1 roots are counted up front.
        let mut local = u64::from(task.prefix.len() > 1);
        let ok = self.descend(&mut path, task.prev, task.cur, &mut local, emit);
        ok && self.flush(&mut local)
    }

    fn descend(
        &self,
        path: &mut Vec<u64>,
        prev: u128,
        cur: u128,
        local: &mut u64,
        emit: &mut dyn FnMut(&[u64]),
    ) -> bool {
        if cur == self.target {
            if self.accepts(*path.last().expect("nonempty prefix")) {
                emit(path);
            }
            return true;
        }
        for a in 1..self.bound {
            let next = match (a as u128).checked_mul(cur).and_then(|x| x.checked_add(prev)) {
                Some(v) if v <= self.target => v,
                _ => break,
            };
            *local += 1;
            if *local >= FLUSH_EVERY && !self.flush(local) {
                return false;
            }
            path.push(a);
            let ok = self.descend(path, cur, next, local, emit);
            path.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

fn target_u128(target: &Natural) -> Result<u128> {
    target.to_u128().filter(|&t| t <= u64::MAX as u128).ok_or_else(|| Error::TargetTooLarge(target.to_string()))
}

/// Splits the tree at depth 2. Single-element hits are returned as tasks
/// whose prefix already meets the target.
fn tasks(target: u128, bound: u64) -> Vec<Task> {
    let mut out = Vec::new();
    for a1 in 1..bound {
        let k1 = a1 as u128;
        if k1 > target {
            break;
        }
        if k1 == target {
            out.push(Task { prefix: vec![a1], prev: 1, cur: k1 });
            continue;
        }
        for a2 in 1..bound {
            let k2 = match (a2 as u128).checked_mul(k1).and_then(|x| x.checked_add(1)) {
                Some(v) if v <= target => v,
                _ => break,
            };
            out.push(Task { prefix: vec![a1, a2], prev: k1, cur: k2 });
        }
    }
    out
}

fn in_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    if workers == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn walk<T, F>(q: &CensusQuery, opts: &CensusOptions, per_task: F) -> Result<(Vec<T>, u64, bool)>
where
    T: Send,
    F: Fn(&Search<'_>, &Task) -> (T, bool) + Sync,
{
    let target = target_u128(&q.target)?;
    let spent = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let search =
        Search { target, bound: q.bound, mode: q.mode, budget: opts.node_budget, spent: &spent, aborted: &aborted };
    let roots = (1..q.bound).take_while(|&a| a as u128 <= target).count() as u64;
    spent.fetch_add(roots, AtomicOrdering::Relaxed);
    let task_list = tasks(target, q.bound);
    let results: Vec<(T, bool)> =
        in_pool(opts.workers, || task_list.par_iter().map(|t| per_task(&search, t)).collect());
    let nodes = spent.load(AtomicOrdering::Relaxed);
    let complete = results.iter().all(|(_, ok)| *ok) && nodes <= opts.node_budget;
    Ok((results.into_iter().map(|(v, _)| v).collect(), nodes, complete))
}

/// Every sequence matching the query, in lexicographic order.
pub fn enumerate(q: &CensusQuery, opts: &CensusOptions) -> Result<Vec<PartialQuotients>> {
    let (chunks, nodes, complete) = walk(q, opts, |search, task| {
        let mut found = Vec::new();
        let ok = search.run(task, &mut |p| found.push(p.to_vec()));
        (found, ok)
    })?;
    if !complete {
        return Err(Error::BudgetExceeded {
            budget: opts.node_budget,
            nodes_visited: nodes,
            partial_count: chunks.iter().map(|c| c.len() as u64).sum(),
        });
    }
    chunks.into_iter().flatten().map(PartialQuotients::new).collect()
}

/// Counts the sequences matching the query without materializing them.
pub fn count(q: &CensusQuery, opts: &CensusOptions) -> Result<CountResult> {
    let start = Instant::now();
    let (counts, nodes, complete) = walk(q, opts, |search, task| {
        let mut n = 0u64;
        let ok = search.run(task, &mut |_| n += 1);
        (n, ok)
    })?;
    let total = counts.iter().try_fold(0u64, |acc, &c| acc.checked_add(c));
    if !complete {
        return Err(Error::BudgetExceeded {
            budget: opts.node_budget,
            nodes_visited: nodes,
            partial_count: total.unwrap_or(u64::MAX),
        });
    }
    Ok(CountResult {
        count: total.ok_or(Error::CountOverflow)?,
        nodes_visited: nodes,
        elapsed: start.elapsed(),
        exhaustive: true,
    })
}

/// `f(a^m, bound)`: the number of sequences with elements below `bound`
/// whose continuant is `a^m`.
pub fn count_f(a: u64, m: u32, bound: u64, mode: Mode, opts: &CensusOptions) -> Result<CountResult> {
    count(&CensusQuery::power(a, m, bound, mode)?, opts)
}

/// A fraction `c/d` whose canonical expansion has every element below the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZarembaWitness {
    pub numerator: u64,
    pub expansion: PartialQuotients,
}

impl ZarembaWitness {
    pub fn fraction(&self, d: u64) -> Fraction {
        Fraction::from_u64(self.numerator, d).expect("nonzero denominator")
    }
}

/// Canonical expansion of `c/d`, abandoned as soon as an element reaches `bound`.
fn bounded_expansion(c: u64, d: u64, bound: u64) -> Option<Vec<u64>> {
    let mut out = Vec::new();
    let (mut num, mut den) = (c, d);
    while num != 0 {
        let q = den / num;
        if q >= bound {
            return None;
        }
        out.push(q);
        let r = den % num;
        den = num;
        num = r;
    }
    Some(out)
}

/// Smallest `c` coprime to `d` whose canonical expansion of `c/d` has all
/// elements below `bound`.
pub fn zaremba_witness(d: u64, bound: u64) -> Option<ZarembaWitness> {
    if d < 2 || bound < 2 {
        return None;
    }
    // The first element is floor(d / c), so c must exceed d / bound.
    let start = (d / bound).max(1);
    (start..d).filter(|&c| c.gcd(&d) == 1).find_map(|c| {
        bounded_expansion(c, d, bound).map(|e| ZarembaWitness {
            numerator: c,
            expansion: PartialQuotients::new(e).expect("Euclid quotients are positive"),
        })
    })
}

/// All sequences with continuant `d`, elements below `bound`, and both end
/// elements in `[lo, hi]` (with `lo >= 2`), in lexicographic order.
///
/// Such sequences are exactly the canonical expansions of the reduced
/// fractions `c/d` with `c < d/2`, so the scan is linear in `d`.
pub fn endpoint_witnesses(d: u64, bound: u64, lo: u64, hi: u64) -> Vec<PartialQuotients> {
    assert!(lo >= 2, "endpoint range must exclude 1");
    let mut out: Vec<PartialQuotients> = (1..=d / 2)
        .into_par_iter()
        .filter(|&c| c.gcd(&d) == 1)
        .filter_map(|c| bounded_expansion(c, d, bound))
        .filter(|e| {
            let (f, l) = (e[0], e[e.len() - 1]);
            (lo..=hi).contains(&f) && (lo..=hi).contains(&l)
        })
        .map(|e| PartialQuotients::new(e).expect("Euclid quotients are positive"))
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuant::continuant;

    fn pq(v: &[u64]) -> PartialQuotients {
        PartialQuotients::new(v.to_vec()).unwrap()
    }

    fn seqs(target: u64, bound: u64) -> Vec<PartialQuotients> {
        let q = CensusQuery::new(target.into(), bound, Mode::Sequences).unwrap();
        enumerate(&q, &CensusOptions::default()).unwrap()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(seqs(8, 3), vec![pq(&[1, 1, 1, 1, 1]), pq(&[1, 1, 1, 2]), pq(&[2, 1, 1, 1]), pq(&[2, 1, 2])]);
        assert_eq!(seqs(4, 3), vec![pq(&[1, 2, 1])]);
        assert_eq!(seqs(2, 2), vec![pq(&[1, 1])]);
    }

    #[test]
    fn single_element_hits() {
        // 5 = <5> = <1,4> = <4,1> = <2,2> = <1,1,2> ... with elements < 6.
        let all = seqs(5, 6);
        assert!(all.contains(&pq(&[5])));
        assert!(all.iter().all(|u| continuant(u) == 5u32.into()));
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn counts() {
        let o = CensusOptions::default();
        assert_eq!(count_f(2, 3, 3, Mode::Sequences, &o).unwrap().count, 4);
        assert_eq!(count_f(2, 2, 3, Mode::Sequences, &o).unwrap().count, 1);
        // 8 = F_6 is reachable with all ones; 16 is not a Fibonacci number.
        assert_eq!(count_f(2, 3, 2, Mode::Sequences, &o).unwrap().count, 1);
        assert_eq!(count_f(2, 4, 2, Mode::Sequences, &o).unwrap().count, 0);
        assert_eq!(count_f(2, 3, 3, Mode::Fractions, &o).unwrap().count, 2);
    }

    #[test]
    fn invalid_queries() {
        assert!(CensusQuery::new(1u32.into(), 3, Mode::Sequences).is_err());
        assert!(CensusQuery::new(5u32.into(), 1, Mode::Sequences).is_err());
        assert!(CensusQuery::power(1, 3, 3, Mode::Sequences).is_err());
        let huge = CensusQuery::power(2, 80, 3, Mode::Sequences).unwrap();
        assert!(matches!(count(&huge, &CensusOptions::default()), Err(Error::TargetTooLarge(_))));
    }

    #[test]
    fn budget_exceeded() {
        let q = CensusQuery::power(2, 12, 4, Mode::Sequences).unwrap();
        let err = count(&q, &CensusOptions::with_budget(100)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 100, .. }));
        let ok = count(&q, &CensusOptions::default()).unwrap();
        // A budget equal to the exact node count is enough.
        let exact = count(&q, &CensusOptions::with_budget(ok.nodes_visited)).unwrap();
        assert_eq!(exact.count, ok.count);
        assert!(count(&q, &CensusOptions::with_budget(ok.nodes_visited - 1)).is_err());
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let q = CensusQuery::power(2, 9, 4, Mode::Sequences).unwrap();
        let one = enumerate(&q, &CensusOptions { workers: 1, ..Default::default() }).unwrap();
        let four = enumerate(&q, &CensusOptions { workers: 4, ..Default::default() }).unwrap();
        assert_eq!(one, four);
        let c1 = count(&q, &CensusOptions { workers: 1, ..Default::default() }).unwrap();
        let c4 = count(&q, &CensusOptions { workers: 4, ..Default::default() }).unwrap();
        assert_eq!((c1.count, c1.nodes_visited), (c4.count, c4.nodes_visited));
    }

    #[test]
    fn zaremba() {
        let w = zaremba_witness(2, 3).unwrap();
        assert_eq!((w.numerator, w.expansion.clone()), (1, pq(&[2])));
        assert_eq!(zaremba_witness(6, 2), None);
        let w = zaremba_witness(81, 4).unwrap();
        assert!(w.expansion.max_element().unwrap() <= 3);
        assert_eq!(continuant(&w.expansion), 81u32.into());
    }

    #[test]
    fn endpoint_scan_matches_filtered_census() {
        for m in 2..=11 {
            let d = 1u64 << m;
            let scan = endpoint_witnesses(d, 4, 2, 2);
            let census: Vec<_> =
                seqs(d, 4).into_iter().filter(|u| u.first() == Some(2) && u.last() == Some(2)).collect();
            assert_eq!(scan, census, "m = {m}");
        }
    }
}
