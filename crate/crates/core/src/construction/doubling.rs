//! The doubling step and the endpoint variants.
//!
//! Every sequence built here is checked by direct continuant evaluation
//! before it is returned.

use num_bigint::BigUint;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use super::ConstructionParams;
use crate::continuant::{continuant, continuant_raw, Natural, PartialQuotients};
use crate::error::{Error, Result};

/// Which of the two mirror images a doubled sequence is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DoublingForm {
    /// `(u_1..u_{n-1}, u_n - 1, 1, b - 1, u_n, .., u_1)`, or for `b = 1`
    /// `(u_1..u_{n-1}, u_n - 1, u_n + 1, u_{n-1}, .., u_1)`.
    Inner,
    /// The reversal of [`DoublingForm::Inner`].
    Mirrored,
}

/// One of the four sequences sharing a continuant that differ only at the ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndpointVariant {
    /// `w` unchanged.
    Original,
    /// `(1, w_1 - 1, w_2, ..)`.
    SplitFirst,
    /// `(.., w_{n-1}, w_n - 1, 1)`.
    SplitLast,
    /// Both ends split.
    SplitBoth,
}

fn verify(w: Vec<u64>, expected: &Natural, what: &str) -> Result<PartialQuotients> {
    let got = continuant_raw(&w);
    if &got != expected {
        return Err(Error::ConstructionInvariant(format!("{what}: continuant of {w:?} is {got}, expected {expected}")));
    }
    PartialQuotients::new(w).map_err(|e| Error::ConstructionInvariant(format!("{what}: {e}")))
}

fn doubled(u: &[u64], middle: &[u64], mirrored_tail: bool) -> Vec<u64> {
    let n = u.len();
    let mut w = Vec::with_capacity(2 * n + middle.len());
    w.extend_from_slice(&u[..n - 1]);
    w.push(u[n - 1] - 1);
    w.extend_from_slice(middle);
    if mirrored_tail {
        w.extend(u.iter().rev());
    } else {
        w.extend(u[..n - 1].iter().rev());
    }
    w
}

/// Returns `(w, w')` with `<w> = b <u>^2` and `<w'> = <u>^2`, where
/// `w = (u_1..u_{n-1}, u_n - 1, 1, b - 1, u_n, .., u_1)` and
/// `w' = (u_1..u_{n-1}, u_n - 1, u_n + 1, u_{n-1}, .., u_1)`.
pub fn hensley_double(u: &PartialQuotients, b: u64) -> Result<(PartialQuotients, PartialQuotients)> {
    let s = u.as_slice();
    match s.last() {
        None => return Err(Error::Precondition("u must be nonempty".into())),
        Some(1) => return Err(Error::Precondition(format!("last element of {u} must exceed 1"))),
        Some(_) => {}
    }
    if b < 2 {
        return Err(Error::Precondition(format!("b must be at least 2, got {b}")));
    }
    let k = continuant(u);
    let square = &k * &k;
    let w = verify(doubled(s, &[1, b - 1], true), &(&square * b), "doubling with b")?;
    let last = s[s.len() - 1];
    let w_prime = verify(doubled(s, &[last + 1], false), &square, "plain doubling")?;
    Ok((w, w_prime))
}

/// The two children of `u` for the exponent `r`, each with continuant `a^m`.
///
/// `u` must have continuant `a^((m - r)/2)`, elements below the bound, and end
/// elements different from 1; when `r = 0` the last element must also stay
/// below `bound - 1` so that `u_n + 1` is admissible.
pub fn doubling_children_traced(
    u: &PartialQuotients,
    p: &ConstructionParams,
) -> Result<Vec<(PartialQuotients, DoublingForm)>> {
    let s = u.as_slice();
    let (a, bound, m, r) = (p.a(), p.bound(), p.m(), p.r());
    if s.is_empty() {
        return Err(Error::Precondition("u must be nonempty".into()));
    }
    if let Some(&x) = s.iter().find(|&&x| x >= bound) {
        return Err(Error::Precondition(format!("element {x} of {u} is not below {bound}")));
    }
    let (first, last) = (s[0], s[s.len() - 1]);
    if first == 1 || last == 1 {
        return Err(Error::Precondition(format!("end elements of {u} must not be 1")));
    }
    if r == 0 && (first == bound - 1 || last == bound - 1) {
        return Err(Error::Precondition(format!("end elements of {u} must not be {} when r = 0", bound - 1)));
    }
    let half = (m - r) / 2;
    let expected_u = BigUint::from(a).pow(half);
    if continuant(u) != expected_u {
        return Err(Error::Precondition(format!("continuant of {u} must be {a}^{half} = {expected_u}")));
    }
    let target = BigUint::from(a).pow(m);
    let inner = if r == 0 {
        doubled(s, &[last + 1], false)
    } else {
        let b = a.pow(r);
        doubled(s, &[1, b - 1], true)
    };
    let mut mirrored = inner.clone();
    mirrored.reverse();
    Ok(vec![
        (verify(inner, &target, "doubling step")?, DoublingForm::Inner),
        (verify(mirrored, &target, "mirrored doubling step")?, DoublingForm::Mirrored),
    ])
}

/// [`doubling_children_traced`] without the form labels.
pub fn doubling_children(u: &PartialQuotients, p: &ConstructionParams) -> Result<Vec<PartialQuotients>> {
    Ok(doubling_children_traced(u, p)?.into_iter().map(|(w, _)| w).collect())
}

/// `w` and the three sequences obtained by splitting an end element `x` into
/// `(1, x - 1)`, all with the same continuant.
pub fn endpoint_variants_traced(w: &PartialQuotients) -> Result<Vec<(PartialQuotients, EndpointVariant)>> {
    let s = w.as_slice();
    let (first, last) = match (s.first(), s.last()) {
        (Some(&f), Some(&l)) => (f, l),
        _ => return Err(Error::Precondition("w must be nonempty".into())),
    };
    if first < 2 || last < 2 {
        return Err(Error::Precondition(format!("end elements of {w} must be at least 2")));
    }
    if s.len() == 1 && first < 3 {
        return Err(Error::Precondition(format!("single element {first} cannot be split at both ends")));
    }
    let target = continuant(w);
    let split_first = {
        let mut v = vec![1, first - 1];
        v.extend_from_slice(&s[1..]);
        v
    };
    let split_last = {
        let mut v = s.to_vec();
        *v.last_mut().expect("nonempty") -= 1;
        v.push(1);
        v
    };
    let split_both = {
        let mut v = split_first.clone();
        *v.last_mut().expect("nonempty") -= 1;
        v.push(1);
        v
    };
    Ok(vec![
        (w.clone(), EndpointVariant::Original),
        (verify(split_first, &target, "split first")?, EndpointVariant::SplitFirst),
        (verify(split_last, &target, "split last")?, EndpointVariant::SplitLast),
        (verify(split_both, &target, "split both")?, EndpointVariant::SplitBoth),
    ])
}

pub fn endpoint_variants(w: &PartialQuotients) -> Result<Vec<PartialQuotients>> {
    Ok(endpoint_variants_traced(w)?.into_iter().map(|(v, _)| v).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq(v: &[u64]) -> PartialQuotients {
        PartialQuotients::new(v.to_vec()).unwrap()
    }

    #[test]
    fn doubling_examples() {
        let (w, wp) = hensley_double(&pq(&[2, 2]), 2).unwrap();
        assert_eq!(w, pq(&[2, 1, 1, 1, 2, 2]));
        assert_eq!(continuant(&w), 50u32.into());
        assert_eq!(wp, pq(&[2, 1, 3, 2]));
        assert_eq!(continuant(&wp), 25u32.into());

        let (w, _) = hensley_double(&pq(&[3]), 3).unwrap();
        assert_eq!(w, pq(&[2, 1, 2, 3]));
        assert_eq!(continuant(&w), 27u32.into());
    }

    #[test]
    fn doubling_preconditions() {
        assert!(matches!(hensley_double(&pq(&[2, 1]), 2), Err(Error::Precondition(_))));
        assert!(matches!(hensley_double(&pq(&[]), 2), Err(Error::Precondition(_))));
        assert!(matches!(hensley_double(&pq(&[2]), 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn children_examples() {
        let u = pq(&[2, 1, 2]);
        let odd = doubling_children(&u, &ConstructionParams::new(2, 2, 7, 1).unwrap()).unwrap();
        assert!(odd.contains(&pq(&[2, 1, 2, 1, 1, 1, 1, 2])));
        assert!(odd.iter().all(|w| continuant(w) == 128u32.into() && w.len() == 8));

        let even = doubling_children(&u, &ConstructionParams::new(2, 2, 6, 0).unwrap()).unwrap();
        assert!(even.contains(&pq(&[2, 1, 3, 1, 1, 2])));
        assert!(even.iter().all(|w| continuant(w) == 64u32.into() && w.len() == 6));
    }

    #[test]
    fn children_preconditions() {
        let p = ConstructionParams::new(2, 2, 7, 1).unwrap();
        // Ends in 1.
        assert!(matches!(doubling_children(&pq(&[1, 1, 1, 1, 1]), &p), Err(Error::Precondition(_))));
        // Wrong continuant.
        assert!(matches!(doubling_children(&pq(&[2, 3, 2]), &p), Err(Error::Precondition(_))));
        // Element beyond the bound.
        let big = ConstructionParams::new(2, 2, 5, 1).unwrap();
        assert!(matches!(doubling_children(&pq(&[4]), &big), Err(Error::Precondition(_))));
        // With r = 0 an end element of bound - 1 is rejected, other r accept it.
        let u = pq(&[3, 2, 1, 2, 2]);
        let r0 = ConstructionParams::new(2, 2, 12, 0).unwrap();
        assert!(matches!(doubling_children(&u, &r0), Err(Error::Precondition(_))));
        let r2 = ConstructionParams::new(2, 2, 14, 2).unwrap();
        assert_eq!(doubling_children(&u, &r2).unwrap().len(), 2);
    }

    #[test]
    fn variants() {
        let v = endpoint_variants(&pq(&[2, 1, 2])).unwrap();
        assert_eq!(v, vec![pq(&[2, 1, 2]), pq(&[1, 1, 1, 2]), pq(&[2, 1, 1, 1]), pq(&[1, 1, 1, 1, 1])]);
        let v = endpoint_variants(&pq(&[3])).unwrap();
        assert_eq!(v, vec![pq(&[3]), pq(&[1, 2]), pq(&[2, 1]), pq(&[1, 1, 1])]);
        assert!(v.iter().all(|x| continuant(x) == 3u32.into()));
        assert!(endpoint_variants(&pq(&[1, 2])).is_err());
        assert!(endpoint_variants(&pq(&[2])).is_err());
    }
}
