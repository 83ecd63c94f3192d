//! Case polynomials and matrices indexed by the exponent `s` of the
//! element bound, and their largest real roots.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::poly::{Polynomial, RootBracket};
use crate::error::{Error, Result};

/// Which closed form the polynomial for a given `s` takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolyCase {
    /// `s ≡ 0 (mod 8)`: `λ³ - sλ² - sλ - s`.
    ZeroModEight,
    /// `s ≡ 2 (mod 8)`: `λ³ - (s+2)λ² + (s+2)λ - (s-2)`.
    TwoModEight,
    /// `s ≡ 4 (mod 8)`: `λ³ - (s+2)λ² + sλ + (s+4)`.
    FourModEight,
    /// `s ≡ 6 (mod 8)`: `λ³ - sλ² - (s+2)λ + (s+2)`.
    SixModEight,
    /// `λ² - 4λ - 4`.
    SFour,
    /// `λ - 2`.
    STwo,
    /// `λ - s - 1`.
    Odd,
}

impl PolyCase {
    /// The case that applies to `s`.
    pub fn for_s(s: u32) -> Result<Self> {
        Ok(match s {
            0 | 1 => return Err(Error::OutOfRange(format!("s must be at least 2, got {s}"))),
            2 => PolyCase::STwo,
            4 => PolyCase::SFour,
            s if s % 2 == 1 => PolyCase::Odd,
            s => match s % 8 {
                0 => PolyCase::ZeroModEight,
                2 => PolyCase::TwoModEight,
                4 => PolyCase::FourModEight,
                _ => PolyCase::SixModEight,
            },
        })
    }

    /// The four cubic families, in residue order.
    pub const CUBICS: [PolyCase; 4] =
        [PolyCase::ZeroModEight, PolyCase::TwoModEight, PolyCase::FourModEight, PolyCase::SixModEight];

    /// This case's formula evaluated at `s`, whether or not it is the case
    /// that applies to `s`.
    pub fn polynomial(self, s: u32) -> Polynomial {
        let s = i64::from(s);
        match self {
            PolyCase::ZeroModEight => Polynomial::from_descending(&[1, -s, -s, -s]),
            PolyCase::TwoModEight => Polynomial::from_descending(&[1, -(s + 2), s + 2, -(s - 2)]),
            PolyCase::FourModEight => Polynomial::from_descending(&[1, -(s + 2), s, s + 4]),
            PolyCase::SixModEight => Polynomial::from_descending(&[1, -s, -(s + 2), s + 2]),
            PolyCase::SFour => Polynomial::from_descending(&[1, -4, -4]),
            PolyCase::STwo => Polynomial::from_descending(&[1, -2]),
            PolyCase::Odd => Polynomial::from_descending(&[1, -(s + 1)]),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PolyCase::ZeroModEight => "s = 0 mod 8",
            PolyCase::TwoModEight => "s = 2 mod 8",
            PolyCase::FourModEight => "s = 4 mod 8",
            PolyCase::SixModEight => "s = 6 mod 8",
            PolyCase::SFour => "s = 4",
            PolyCase::STwo => "s = 2",
            PolyCase::Odd => "odd s",
        }
    }
}

impl fmt::Display for PolyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasePolynomial {
    pub s: u32,
    pub case: PolyCase,
    pub poly: Polynomial,
}

/// Growth polynomial for elements below `a^s`.
pub fn growth_polynomial(s: u32) -> Result<CasePolynomial> {
    let case = PolyCase::for_s(s)?;
    Ok(CasePolynomial { s, case, poly: case.polynomial(s) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixSource {
    /// `s ≡ 2 (mod 4)`, `s >= 10`, with `q = (s - 2)/4`.
    ResidueTwoModFour,
    /// `s ≡ 0 (mod 4)`, `s >= 8`, with `q = s/4`.
    ResidueZeroModFour,
    SFour,
    SSix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseMatrix {
    pub s: u32,
    pub source: MatrixSource,
    pub matrix: IntMatrix,
    /// Row vector that starts the bound chain.
    pub start: Vec<i64>,
}

fn half_floor(x: i64) -> i64 {
    x / 2
}

fn half_ceil(x: i64) -> i64 {
    (x + 1) / 2
}

/// Transfer matrix of the class-counting argument for even `s >= 4`.
pub fn case_matrix(s: u32) -> Result<CaseMatrix> {
    if s % 2 == 1 || s < 4 {
        return Err(Error::NoMatrixCase(s));
    }
    let (source, matrix, start) = match s {
        4 => (MatrixSource::SFour, IntMatrix::from_rows(&[[1, 2], [1, 1]]), vec![1, 1]),
        6 => (MatrixSource::SSix, IntMatrix::from_rows(&[[2, 1, 1], [2, 0, 1], [1, 1, 1]]), vec![1, 1, 1]),
        s if s % 4 == 2 => {
            let q = i64::from((s - 2) / 4);
            let (f1, c1, f0, c0) = (half_floor(q + 1), half_ceil(q + 1), half_floor(q), half_ceil(q));
            (
                MatrixSource::ResidueTwoModFour,
                IntMatrix::from_rows(&[[q + 1, f1, c1], [q + 1, f0, c0], [q, f1, c1]]),
                vec![q, f1, c1],
            )
        }
        s => {
            let q = i64::from(s / 4);
            let (f1, c1, f0, c0) = (half_floor(q + 1), half_ceil(q + 1), half_floor(q), half_ceil(q));
            (
                MatrixSource::ResidueZeroModFour,
                IntMatrix::from_rows(&[[f1, c1, q], [f0, c0, q + 1], [f0, c0, q]]),
                vec![f0, c0, q],
            )
        }
    };
    Ok(CaseMatrix { s, source, matrix, start })
}

/// Largest real root of a case polynomial, certified by exact signs.
#[derive(Clone, Debug)]
pub struct SpectralResult {
    pub lambda: f64,
    pub bracket: RootBracket,
    /// `|P(λ)|` at the reported value.
    pub residual: f64,
}

impl SpectralResult {
    pub fn of(poly: &Polynomial) -> Result<Self> {
        Self::with_width(poly, 2f64.powi(-50))
    }

    pub fn with_width(poly: &Polynomial, width: f64) -> Result<Self> {
        let mut bracket = poly.bracket_largest_root()?;
        bracket.refine(poly, width);
        let lambda = bracket.value();
        Ok(SpectralResult { lambda, bracket, residual: poly.eval_f64(lambda).abs() })
    }
}

pub fn largest_root(p: &CasePolynomial) -> Result<SpectralResult> {
    SpectralResult::of(&p.poly)
}

/// Whether the characteristic polynomial of twice the case matrix is
/// exactly the growth polynomial.
pub fn char_poly_check(s: u32) -> Result<bool> {
    let a = case_matrix(s)?;
    Ok(a.matrix.scale(2).char_poly() == growth_polynomial(s)?.poly)
}

/// `(largest eigenvalue of 2A by power iteration, largest root of P_s)`.
pub fn spectral_pair(s: u32) -> Result<(f64, SpectralResult)> {
    let eig = case_matrix(s)?.matrix.scale(2).perron_root();
    Ok((eig, largest_root(&growth_polynomial(s)?)?))
}

/// Integer chain `2 * start * (2A)^n * 1` bounding `g_m` from below.
pub fn matrix_chain(cm: &CaseMatrix, n: u32) -> BigInt {
    let ones = vec![BigInt::from(1); cm.matrix.size()];
    let start: Vec<BigInt> = cm.start.iter().map(|&v| BigInt::from(v)).collect();
    let col = cm.matrix.scale(2).pow(n).mul_vec(&ones);
    2 * start.iter().zip(&col).map(|(a, b)| a * b).sum::<BigInt>()
}
