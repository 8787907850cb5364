//! Exact truncated power series over big rationals.
//!
//! A [`TruncatedSeries`] holds coefficients `c_0..c_M` of powers of `t`,
//! exact to order `M`. All arithmetic truncates to the smaller operand
//! order, so results are always exact through their stated order. This is
//! the machinery used to prove the generating-function identities
//! coefficient by coefficient; floating-point coefficients never appear
//! here.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Power series in `t` truncated after `t^order`, with exact rational
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Series from explicit coefficients `c_0..c_M`. Must be nonempty.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![BigRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Truncation order `M`: coefficients are exact for powers `0..=M`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^k`. Panics past the truncation order, where the
    /// coefficient is unknown rather than zero.
    pub fn coeff(&self, k: usize) -> &BigRational {
        assert!(k <= self.order(), "coefficient t^{k} beyond truncation order");
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        Self { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.order().min(other.order());
        let coeffs = (0..=m).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect();
        Self { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let m = self.order().min(other.order());
        let coeffs = (0..=m).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect();
        Self { coeffs }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); m + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(m + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(m + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self { coeffs }
    }

    /// Multiplicative inverse as a power series; requires a nonzero
    /// constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::InvalidInput(
                "series with zero constant term has no power-series inverse".into(),
            ));
        }
        let m = self.order();
        let mut inv = vec![BigRational::zero(); m + 1];
        inv[0] = self.coeffs[0].recip();
        for k in 1..=m {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &inv[k - i];
                }
            }
            inv[k] = -acc / &self.coeffs[0];
        }
        Ok(Self { coeffs: inv })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.reciprocal()?))
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n as u64).map(BigInt::from).product()
}

/// Fourier coefficient `f_k` of `exp(t(z + 1/z))` as an exact series:
/// `f_k = sum_m t^(2m+k) / (m! (m+k)!)`, i.e. the series of `I_k(2t)`.
pub fn bessel_series(k: usize, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    let mut m = 0usize;
    while 2 * m + k <= order {
        let den = factorial(m) * factorial(m + k);
        coeffs[2 * m + k] = BigRational::new(BigInt::one(), den);
        m += 1;
    }
    TruncatedSeries::new(coeffs)
}

/// Determinant of the `n x n` matrix whose `(j,k)` entry is the series
/// given by `symbol(|j-k|)`, by elimination over the series ring. Valid
/// whenever all leading principal minors are units (constant term
/// nonzero), which holds for the positive symbols used here.
fn toeplitz_det_with<F>(symbol: F, n: usize, order: usize) -> Result<TruncatedSeries>
where
    F: Fn(usize) -> TruncatedSeries,
{
    if n == 0 {
        return Ok(TruncatedSeries::one(order));
    }
    let mut a: Vec<Vec<TruncatedSeries>> = (0..n)
        .map(|j| (0..n).map(|k| symbol(j.abs_diff(k))).collect())
        .collect();
    let mut det = TruncatedSeries::one(order);
    for p in 0..n {
        let pivot = a[p][p].clone();
        det = det.mul(&pivot);
        if p + 1 == n {
            break;
        }
        let inv = pivot.reciprocal().map_err(|_| Error::FactorizationFailed { pivot: p })?;
        for i in p + 1..n {
            let factor = a[i][p].mul(&inv);
            if factor.is_zero() {
                continue;
            }
            for j in p + 1..n {
                let delta = factor.mul(&a[p][j]);
                a[i][j] = a[i][j].sub(&delta);
            }
        }
    }
    Ok(det)
}

/// `D_n(t)` as an exact series: determinant of the Toeplitz matrix with
/// entries `f_{|j-k|}`. `D_0 = 1` by the empty-determinant convention.
pub fn toeplitz_det_series(n: usize, order: usize) -> TruncatedSeries {
    toeplitz_det_with(|k| bessel_series(k, order), n, order)
        .expect("Bessel-symbol principal minors have constant term 1")
}

/// `D̂_n(0,t)` as an exact series: determinant of the Toeplitz matrix for
/// the symbol `exp(t(z^2 + 1/z^2))`, whose odd Fourier coefficients
/// vanish and whose even ones are `f_{k/2}`.
pub fn dhat0_det_series(n: usize, order: usize) -> TruncatedSeries {
    toeplitz_det_with(
        |k| {
            if k % 2 == 0 {
                bessel_series(k / 2, order)
            } else {
                TruncatedSeries::zero(order)
            }
        },
        n,
        order,
    )
    .expect("squared-symbol principal minors have constant term 1")
}
