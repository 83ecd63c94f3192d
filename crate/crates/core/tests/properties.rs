use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use continuants::bounds::{case_matrix, growth_polynomial, largest_root, matrix_chain, refined_vs_plain, GTable};
use continuants::census::{count_f, enumerate, CensusOptions, CensusQuery, Mode};
use continuants::construction::{doubling_children, generate_family, ConstructionParams, Scheme};
use continuants::continuant::{cf_expand, cf_value, continuant, continuant_det, reverse};
use continuants::{Fraction, PartialQuotients};

// Product of [[a, 1], [1, 0]] matrices; the top-left entry is the continuant.
fn matrix_oracle(u: &[u64]) -> u128 {
    let (mut p, mut q, mut r, mut s) = (1u128, 0u128, 0u128, 1u128);
    for &a in u {
        let a = a as u128;
        (p, q, r, s) = (p * a + q, p, r * a + s, r);
    }
    p
}

// Euclid on (d, c) gives the partial quotients of c/d.
fn euclid_oracle(c: u64, d: u64) -> Vec<u64> {
    let (mut x, mut y) = (d, c);
    let mut out = Vec::new();
    while y != 0 {
        out.push(x / y);
        (x, y) = (y, x % y);
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pq(v: Vec<u64>) -> PartialQuotients {
    PartialQuotients::new(v).unwrap()
}

fn big(u: &PartialQuotients) -> u128 {
    u128::try_from(continuant(u)).unwrap()
}

fn seq(max_len: usize, max_el: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1..=max_el, 1..=max_len)
}

proptest! {
    #[test]
    fn reverse_symmetry(v in seq(20, 9)) {
        let u = pq(v);
        prop_assert_eq!(continuant(&u), continuant(&reverse(&u)));
    }

    #[test]
    fn determinant_agrees_on_long_inputs(v in seq(24, 50)) {
        let u = pq(v.clone());
        prop_assert_eq!(continuant_det(&u).unwrap(), continuant(&u));
        prop_assert_eq!(big(&u), matrix_oracle(&v));
    }

    #[test]
    fn round_trip(d in 2u64..=10_000, c in 1u64..10_000) {
        let c = c % d;
        prop_assume!(c > 0 && gcd(c, d) == 1);
        let f = Fraction::from_u64(c, d).unwrap();
        let e = cf_expand(&f).unwrap();
        prop_assert_eq!(e.as_slice().to_vec(), euclid_oracle(c, d));
        prop_assert!(e.len() == 1 || e.last().unwrap() >= 2);
        prop_assert_eq!(cf_value(&e).unwrap(), f);
    }

    #[test]
    fn prefixes_grow(v in seq(20, 9)) {
        let mut prev = BigUint::from(0u32);
        for k in 1..=v.len() {
            let c = continuant(&pq(v[..k].to_vec()));
            if k >= 2 {
                prop_assert!(c > prev);
            }
            prev = c;
        }
    }

    #[test]
    fn neighbor_identity(v in prop::collection::vec(1u64..=9, 2..=20)) {
        let u = pq(v);
        let whole = continuant(&u);
        let inner = if u.len() == 2 { BigUint::from(1u32) } else { continuant(&u.tail().init()) };
        let lhs = &whole * &inner;
        let rhs = continuant(&u.init()) * continuant(&u.tail());
        let diff = if lhs > rhs { &lhs - &rhs } else { &rhs - &lhs };
        prop_assert_eq!(diff, BigUint::from(1u32));
    }

    #[test]
    fn census_monotone_in_bound(m in 3u32..=10, bound in 2u64..=6) {
        let opts = CensusOptions::default();
        let lo = count_f(2, m, bound, Mode::Sequences, &opts).unwrap().count;
        let hi = count_f(2, m, bound + 1, Mode::Sequences, &opts).unwrap().count;
        prop_assert!(lo <= hi);
    }

    #[test]
    fn census_reversal_and_modes(a in 2u64..=3, m in 2u32..=8, bound in 2u64..=5) {
        let opts = CensusOptions::default();
        let q = CensusQuery::power(a, m, bound, Mode::Sequences).unwrap();
        let all: BTreeSet<PartialQuotients> = enumerate(&q, &opts).unwrap().into_iter().collect();
        for u in &all {
            prop_assert!(all.contains(&reverse(u)));
            prop_assert_eq!(big(u), (a as u128).pow(m));
        }
        let qf = CensusQuery::power(a, m, bound, Mode::Fractions).unwrap();
        let fr = enumerate(&qf, &opts).unwrap();
        prop_assert!(fr.len() <= all.len());
        let values: BTreeSet<_> = fr
            .iter()
            .map(|u| {
                let f = cf_value(u).unwrap();
                (f.numerator().clone(), f.denominator().clone())
            })
            .collect();
        prop_assert_eq!(values.len(), fr.len());
        prop_assert!(values.iter().all(|(_, d)| *d == BigUint::from(a).pow(m)));
    }

    #[test]
    fn children_of_distinct_parents_are_disjoint(i in 0usize..1000, j in 0usize..1000, r in 0u32..=2) {
        // Parents for 2^k with elements below 4; children target 2^(2k + r).
        let k = 6u32;
        let m = 2 * k + r;
        let p = ConstructionParams::with_bound(2, 4, m, r).unwrap();
        let opts = CensusOptions::default();
        let valid: Vec<PartialQuotients> = enumerate(&CensusQuery::power(2, k, 4, Mode::Sequences).unwrap(), &opts)
            .unwrap()
            .into_iter()
            .filter(|u| doubling_children(u, &p).is_ok())
            .collect();
        prop_assume!(valid.len() >= 2);
        let (u, v) = (&valid[i % valid.len()], &valid[j % valid.len()]);
        prop_assume!(u != v);
        let cu: BTreeSet<_> = doubling_children(u, &p).unwrap().into_iter().collect();
        let cv: BTreeSet<_> = doubling_children(v, &p).unwrap().into_iter().collect();
        prop_assert!(cu.is_disjoint(&cv));
        for w in cu.iter().chain(&cv) {
            prop_assert_eq!(big(w), 1u128 << m);
        }
    }
}

#[test]
fn determinant_agrees_exhaustively() {
    let mut frontier: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..8 {
        let mut next = Vec::new();
        for v in &frontier {
            for a in 1..=3 {
                let mut w = v.clone();
                w.push(a);
                let u = pq(w.clone());
                assert_eq!(continuant_det(&u).unwrap(), continuant(&u), "{u}");
                assert_eq!(big(&u), matrix_oracle(&w));
                next.push(w);
            }
        }
        frontier = next;
    }
}

#[test]
fn round_trip_exhaustive_small() {
    for d in 2..=300u64 {
        for c in 1..d {
            if gcd(c, d) != 1 {
                continue;
            }
            let f = Fraction::from_u64(c, d).unwrap();
            assert_eq!(cf_value(&cf_expand(&f).unwrap()).unwrap(), f);
        }
    }
}

#[test]
fn census_deterministic_across_workers() {
    let q = CensusQuery::power(2, 12, 4, Mode::Sequences).unwrap();
    let one = enumerate(&q, &CensusOptions { workers: 1, ..CensusOptions::default() }).unwrap();
    let many = enumerate(&q, &CensusOptions { workers: 4, ..CensusOptions::default() }).unwrap();
    assert_eq!(one, many);
    assert!(one.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn family_is_sound_contained_and_large() {
    let opts = CensusOptions::default();
    for (a, s, m_max, census_max) in [(2u64, 2u32, 30u32, 16u32), (3, 2, 14, 9), (2, 3, 24, 13)] {
        let scheme = Scheme::power(a, s).unwrap();
        let table = GTable::for_scheme(&scheme, m_max).unwrap();
        for m in s + 3..=m_max {
            let set = generate_family(a, s, m).unwrap();
            let target = BigUint::from(a).pow(m);
            for u in set.sequences() {
                assert_eq!(continuant(u), target);
                assert!(u.max_element().unwrap() < scheme.bound());
            }
            assert!(BigUint::from(set.len()) >= table.get(m) * 4u32, "a={a} s={s} m={m}");
            if m <= census_max {
                let census: BTreeSet<_> =
                    enumerate(&CensusQuery::power(a, m, scheme.bound(), Mode::Sequences).unwrap(), &opts)
                        .unwrap()
                        .into_iter()
                        .collect();
                assert!(set.sequences().all(|u| census.contains(u)), "a={a} s={s} m={m}");
            }
        }
    }
}

#[test]
fn g_table_sanity() {
    // Each step sums at most s/2 + 1 halved-index terms, doubled: the
    // factor is s + 1 for odd s and s + 2 for even s.
    for s in 2..=12u32 {
        let t = GTable::new(s, 1024).unwrap();
        let (lo, _) = t.window();
        let v = t.values();
        let factor = if s % 2 == 1 { s + 1 } else { s + 2 };
        for m in (lo as usize + 1)..v.len() {
            // For even s, odd m sees one exponent fewer than even m and the
            // table is not monotone.
            if s % 2 == 1 {
                assert!(v[m] >= v[m - 1], "s={s} m={m}");
            }
            if m > 2 * lo as usize + s as usize {
                let window = &v[(m - s as usize) / 2..=m / 2];
                assert!(v[m] <= window.iter().max().unwrap() * factor, "s={s} m={m}");
            }
        }
        if s % 2 == 0 {
            assert!((lo as usize + 1..v.len()).any(|m| v[m] < v[m - 1]), "s={s}");
        }
    }
}

#[test]
fn roots_are_localized() {
    for s in 5..=200 {
        let l = largest_root(&growth_polynomial(s).unwrap()).unwrap().lambda;
        if s % 2 == 0 {
            assert!(l > s as f64 && l < s as f64 + 1.0, "s={s} λ={l}");
        }
    }
}

#[test]
fn refined_chain_dominates() {
    for m in [14369u32, 16000, 25000, 60000, 200000] {
        let (refined, plain) = refined_vs_plain(m).unwrap();
        assert!(refined >= plain, "m={m}");
    }
    // Chains of the plain matrix are strictly increasing in the step count.
    let a = case_matrix(6).unwrap();
    assert!((1..12).all(|n| matrix_chain(&a, n) < matrix_chain(&a, n + 1)));
}
