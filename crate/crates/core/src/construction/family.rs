use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::Pow;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::doubling::{doubling_children_traced, endpoint_variants_traced, DoublingForm, EndpointVariant};
use super::seeds::SeedCache;
use super::Scheme;
use crate::continuant::{continuant, Natural, PartialQuotients};
use crate::error::{Error, Result};

/// One step in the history of a generated sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    Seed { m: u32 },
    Doubling { r: u32, form: DoublingForm },
    Endpoint { variant: EndpointVariant },
}

/// Distinct sequences sharing one continuant, each with the steps that built it.
#[derive(Clone, Debug)]
pub struct WitnessSet {
    pub target: Natural,
    /// Exclusive bound on every element.
    pub element_bound: u64,
    pub members: BTreeMap<PartialQuotients, Vec<Step>>,
}

impl WitnessSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn sequences(&self) -> impl Iterator<Item = &PartialQuotients> {
        self.members.keys()
    }

    /// Re-evaluates every member; the first offending sequence is reported.
    pub fn verify(&self) -> Result<()> {
        for u in self.members.keys() {
            if continuant(u) != self.target {
                return Err(Error::ConstructionInvariant(format!("{u} does not have continuant {}", self.target)));
            }
            if u.max_element().is_some_and(|x| x >= self.element_bound) {
                return Err(Error::ConstructionInvariant(format!(
                    "{u} has an element of at least {}",
                    self.element_bound
                )));
            }
        }
        Ok(())
    }
}

type Level = BTreeMap<PartialQuotients, Vec<Step>>;

/// Exponents whose levels are needed to build level `m`.
fn needed_levels(scheme: &Scheme, m: u32) -> BTreeSet<u32> {
    let exps = scheme.exponents();
    let mut out = BTreeSet::new();
    let mut stack = vec![m];
    while let Some(k) = stack.pop() {
        if !out.insert(k) {
            continue;
        }
        for &r in &exps {
            if r <= k && (k - r) % 2 == 0 && (k - r) / 2 >= 2 {
                stack.push((k - r) / 2);
            }
        }
    }
    out
}

fn build_level(scheme: &Scheme, m: u32, levels: &BTreeMap<u32, Level>, cache: &SeedCache) -> Result<Level> {
    let (lo, hi) = scheme.window();
    let (end_lo, end_hi) = scheme.endpoint_range();
    let mut level = Level::new();
    if m <= hi {
        match cache.lookup(scheme, m)? {
            Some(u) => {
                level.insert(u, vec![Step::Seed { m }]);
            }
            None if m >= lo => {
                return Err(Error::SeedNotFound { a: scheme.a(), bound: scheme.bound(), m });
            }
            None => {}
        }
    }
    let branches: Vec<Level> = scheme
        .exponents()
        .into_par_iter()
        .filter(|&r| r <= m && (m - r).is_multiple_of(2) && (m - r) / 2 >= 2)
        .map(|r| -> Result<Level> {
            let params = scheme.params(m, r)?;
            let mut out = Level::new();
            let Some(parents) = levels.get(&((m - r) / 2)) else {
                return Ok(out);
            };
            for (u, trace) in parents {
                let ends = [u.first(), u.last()];
                if !ends.iter().all(|e| e.is_some_and(|x| (end_lo..=end_hi).contains(&x))) {
                    continue;
                }
                for (w, form) in doubling_children_traced(u, &params)? {
                    let mut t = trace.clone();
                    t.push(Step::Doubling { r, form });
                    out.entry(w).or_insert(t);
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    for branch in branches {
        for (w, t) in branch {
            level.entry(w).or_insert(t);
        }
    }
    Ok(level)
}

/// All sequences for `a^m` obtainable from the scheme's seeds by repeated
/// doubling, together with their endpoint variants.
pub fn generate_with(scheme: &Scheme, m: u32, cache: &SeedCache) -> Result<WitnessSet> {
    if m < 2 {
        return Err(Error::OutOfRange(format!("m must be at least 2, got {m}")));
    }
    let mut levels: BTreeMap<u32, Level> = BTreeMap::new();
    for k in needed_levels(scheme, m) {
        let level = build_level(scheme, k, &levels, cache)?;
        levels.insert(k, level);
    }
    let top = levels.remove(&m).unwrap_or_default();
    let mut members = Level::new();
    for (w, trace) in top {
        match endpoint_variants_traced(&w) {
            Ok(variants) => {
                for (v, variant) in variants {
                    let mut t = trace.clone();
                    t.push(Step::Endpoint { variant });
                    members.entry(v).or_insert(t);
                }
            }
            // A one-element sequence too small to split at both ends.
            Err(Error::Precondition(_)) => {
                members.entry(w).or_insert(trace);
            }
            Err(e) => return Err(e),
        }
    }
    let set = WitnessSet { target: BigUint::from(scheme.a()).pow(m), element_bound: scheme.bound(), members };
    set.verify()?;
    Ok(set)
}

/// [`generate_with`] for elements below `a^s`, with an in-memory seed cache.
pub fn generate_family(a: u64, s: u32, m: u32) -> Result<WitnessSet> {
    generate_with(&Scheme::power(a, s)?, m, &SeedCache::in_memory())
}
