//! Classical series used as ground truth: divisor sums, `E4`, `E6`, `Delta`,
//! eta quotients and the `j`-invariant.
//!
//! Nothing here depends on the basis construction. Eta products are expanded
//! in plain integer arithmetic, independently of the rational series code.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::qseries::{QSeries, Rational};

/// `sum_{d | n} d^k`.
pub fn sigma(k: u32, n: u64) -> BigInt {
    assert!(n >= 1, "sigma is defined for n >= 1");
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    total
}

fn eisenstein(weight_factor: i64, k: u32, window: i64) -> QSeries {
    assert!(window >= 1, "window must reach the constant term");
    let c = BigInt::from(weight_factor);
    let terms = std::iter::once((0, Rational::one()))
        .chain((1..window).map(|n| (n, Rational::from_integer(&c * sigma(k, n as u64)))));
    QSeries::new(1, terms, window).expect("exponents below window")
}

/// `E4 = 1 + 240 sum sigma_3(n) q^n`, known below `q^window`.
pub fn eisenstein4(window: i64) -> QSeries {
    eisenstein(240, 3, window)
}

/// `E6 = 1 - 504 sum sigma_5(n) q^n`, known below `q^window`.
pub fn eisenstein6(window: i64) -> QSeries {
    eisenstein(-504, 5, window)
}

/// `Delta = (E4^3 - E6^2) / 1728`.
pub fn discriminant(window: i64) -> QSeries {
    assert!(window >= 2, "Delta needs a window past its leading term");
    let e4 = eisenstein4(window);
    let e6 = eisenstein6(window);
    let diff = &e4.pow(3).expect("nonnegative power") - &e6.pow(2).expect("nonnegative power");
    diff.scale(&Rational::new(BigInt::one(), BigInt::from(1728)))
}

/// `j = E4^3 / Delta = q^-1 + 744 + 196884 q + ...`, known below `q^window`.
pub fn j_invariant(window: i64) -> QSeries {
    let w = window.max(0) + 2;
    let e4_cubed = eisenstein4(w).pow(3).expect("nonnegative power");
    let delta = discriminant(w);
    e4_cubed
        .div(&delta)
        .expect("Delta has leading term q")
        .truncate(window)
}

/// `prod eta(m tau)^e` expanded in `q^{1/base_den}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotientSpec {
    pub base_den: u64,
    /// `(m, e)` pairs: a factor `eta(m tau)^e`.
    pub factors: Vec<(u64, i64)>,
}

impl EtaQuotientSpec {
    pub fn new(base_den: u64, factors: Vec<(u64, i64)>) -> Self {
        EtaQuotientSpec { base_den, factors }
    }

    /// Leading power `sum m e / 24` in units of `1/base_den`.
    pub fn leading_exponent(&self) -> Result<i64> {
        if self.base_den == 0 {
            return Err(Error::InvalidBaseDen(0));
        }
        let num: i64 = self.factors.iter().map(|&(m, e)| m as i64 * e).sum();
        let scaled = num * self.base_den as i64;
        if scaled % 24 != 0 {
            return Err(Error::FractionalLeadingPower {
                num,
                den: 24,
                base_den: self.base_den,
            });
        }
        Ok(scaled / 24)
    }
}

/// Truncated product of integer polynomials (dense, length `len`).
fn mul_trunc(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn pow_trunc(base: &[BigInt], mut e: u64, len: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); len];
    if len > 0 {
        acc[0] = BigInt::one();
    }
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_trunc(&acc, &b, len);
        }
        e >>= 1;
        if e > 0 {
            b = mul_trunc(&b, &b, len);
        }
    }
    acc
}

/// Inverse of an integer series with constant term 1.
fn inverse_unit_trunc(a: &[BigInt], len: usize) -> Vec<BigInt> {
    debug_assert!(a[0].is_one());
    let mut b = vec![BigInt::zero(); len];
    if len == 0 {
        return b;
    }
    b[0] = BigInt::one();
    for n in 1..len {
        let mut s = BigInt::zero();
        for i in 1..=n.min(a.len() - 1) {
            if !a[i].is_zero() {
                s += &a[i] * &b[n - i];
            }
        }
        b[n] = -s;
    }
    b
}

/// `prod_{n >= 1} (1 - x^{step n})`, dense to length `len`.
fn euler_product(step: usize, len: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); len];
    if len == 0 {
        return acc;
    }
    acc[0] = BigInt::one();
    let mut s = step;
    while s < len {
        // multiply in place by (1 - x^s), high to low
        for i in (s..len).rev() {
            if !acc[i - s].is_zero() {
                let t = acc[i - s].clone();
                acc[i] -= t;
            }
        }
        s += step;
    }
    acc
}

/// Expansion of an eta quotient below `q^{window/base_den}`.
pub fn eta_quotient(spec: &EtaQuotientSpec, window: i64) -> Result<QSeries> {
    let lead = spec.leading_exponent()?;
    let len = (window - lead).max(0) as usize;
    let mut acc = vec![BigInt::zero(); len];
    if len > 0 {
        acc[0] = BigInt::one();
    }
    for &(m, e) in &spec.factors {
        if m == 0 {
            return Err(Error::InvalidConfig("eta scale must be positive".into()));
        }
        if e == 0 || len == 0 {
            continue;
        }
        let step = (m * spec.base_den) as usize;
        let mut p = euler_product(step, len);
        if e < 0 {
            p = inverse_unit_trunc(&p, len);
        }
        let factor = pow_trunc(&p, e.unsigned_abs(), len);
        acc = mul_trunc(&acc, &factor, len);
    }
    let terms = acc
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (lead + i as i64, Rational::from_integer(c)));
    QSeries::new(spec.base_den, terms, window.max(lead))
}
