//! Small dense integer matrices with exact arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![BigInt::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Panics unless `rows` is square.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let n = rows.len();
        let mut m = IntMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.n).map(<[BigInt]>::to_vec).collect()
    }

    /// Entries as `i64`, when they fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.data.chunks(self.n).map(|r| r.iter().map(ToPrimitive::to_i64).collect()).collect()
    }

    pub fn scale(&self, k: i64) -> IntMatrix {
        IntMatrix { n: self.n, data: self.data.iter().map(|v| v * k).collect() }
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        IntMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, mut e: u32) -> IntMatrix {
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.n);
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) * &v[j]).sum()).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.n);
        (0..self.n).map(|j| (0..self.n).map(|i| &v[i] * self.get(i, j)).sum()).collect()
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|v| !v.is_negative())
    }

    /// Entrywise `self >= other`.
    pub fn dominates(&self, other: &IntMatrix) -> bool {
        self.n == other.n && self.data.iter().zip(&other.data).all(|(a, b)| a >= b)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.rows();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        negate = !negate;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// `det(x I - self)` by the Faddeev-LeVerrier recursion; every division
    /// is exact over the integers.
    pub fn char_poly(&self) -> Polynomial {
        let n = self.n;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = IntMatrix::zeros(n);
        for k in 1..=n {
            let mut next = self.mul(&m);
            for i in 0..n {
                let v = next.get(i, i) + &coeffs[n - k + 1];
                next.set(i, i, v);
            }
            let c = -self.mul(&next).trace() / BigInt::from(k);
            coeffs[n - k] = c;
            m = next;
        }
        Polynomial::new(coeffs)
    }

    /// Dominant eigenvalue of a nonnegative primitive matrix by power
    /// iteration in floating point. Independent of the characteristic
    /// polynomial route.
    pub fn perron_root(&self) -> f64 {
        let n = self.n;
        let a: Vec<f64> = self.data.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect();
        let mut v = vec![1.0f64; n];
        let mut estimate = 0.0;
        for _ in 0..100_000 {
            let w: Vec<f64> = (0..n).map(|i| (0..n).map(|j| a[i * n + j] * v[j]).sum()).collect();
            let norm = w.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            let next_estimate = (0..n).map(|i| w[i]).sum::<f64>() / v.iter().sum::<f64>();
            v = w.into_iter().map(|x| x / norm).collect();
            if (next_estimate - estimate).abs() <= 1e-15 * next_estimate.abs() {
                return next_estimate;
            }
            estimate = next_estimate;
        }
        estimate
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.data.chunks(self.n).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_rows(&[[2, 1, 1], [2, 0, 1], [1, 1, 1]]);
        assert_eq!(m.determinant(), BigInt::from(-1));
        let z = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert_eq!(z.determinant(), BigInt::from(-1));
        let s = IntMatrix::from_rows(&[[1, 2], [2, 4]]);
        assert_eq!(s.determinant(), BigInt::zero());
    }

    #[test]
    fn char_poly_two_by_two() {
        let m = IntMatrix::from_rows(&[[2, 4], [2, 2]]);
        assert_eq!(m.char_poly(), Polynomial::from_descending(&[1, -4, -4]));
    }

    #[test]
    fn power_matches_repeated_product() {
        let a = IntMatrix::from_rows(&[[2, 1, 1], [2, 0, 1], [1, 1, 1]]);
        let mut slow = IntMatrix::identity(3);
        for _ in 0..5 {
            slow = slow.mul(&a);
        }
        assert_eq!(a.pow(5), slow);
        assert_eq!(a.pow(0), IntMatrix::identity(3));
    }

    #[test]
    fn perron_of_diagonal() {
        let m = IntMatrix::from_rows(&[[3, 0], [0, 1]]);
        assert!((m.perron_root() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn vector_products() {
        let m = IntMatrix::from_rows(&[[1, 2], [3, 4]]);
        let v = vec![BigInt::from(1), BigInt::from(1)];
        assert_eq!(m.mul_vec(&v), vec![BigInt::from(3), BigInt::from(7)]);
        assert_eq!(m.vec_mul(&v), vec![BigInt::from(4), BigInt::from(6)]);
    }
}
