//! Truncated Laurent/Puiseux series in `q^{1/h}` with exact rational coefficients.
//!
//! A [`QSeries`] stores the coefficients of `q^{e/h}` for a finite set of
//! integer exponents `e` together with a precision window `prec`: every
//! coefficient with `e < prec` is known (absent means zero) and nothing is
//! claimed about exponents `>= prec`. Every operation propagates the window
//! conservatively, so a coefficient inside a result's window is always exact.
//!
//! Windows behave like relative precision: for a nonzero series put
//! `r = prec - order`. Multiplication, division and powers return
//! `r = min(r_f, r_g)`, which is what the per-operation rules below encode.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field: arbitrary-precision rationals, always in lowest terms.
pub type Rational = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    base_den: u64,
    terms: BTreeMap<i64, Rational>,
    prec: i64,
}

impl QSeries {
    /// Builds a canonical series; zero coefficients are dropped and repeated
    /// exponents are summed.
    pub fn new<I>(base_den: u64, terms: I, prec: i64) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        if base_den == 0 {
            return Err(Error::InvalidBaseDen(base_den));
        }
        let mut map: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in terms {
            if e >= prec {
                return Err(Error::InconsistentPrecision { exponent: e, prec });
            }
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(QSeries {
            base_den,
            terms: map,
            prec,
        })
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_ints(base_den: u64, terms: &[(i64, i64)], prec: i64) -> Result<Self> {
        Self::new(
            base_den,
            terms
                .iter()
                .map(|&(e, c)| (e, Rational::from_integer(BigInt::from(c)))),
            prec,
        )
    }

    pub fn zero(base_den: u64, prec: i64) -> Self {
        assert!(base_den > 0, "base_den must be positive");
        QSeries {
            base_den,
            terms: BTreeMap::new(),
            prec,
        }
    }

    /// The constant `c`, known up to (but excluding) `q^{prec/h}`.
    pub fn constant(c: Rational, base_den: u64, prec: i64) -> Self {
        assert!(
            prec > 0,
            "a constant needs a window beyond the constant term"
        );
        let mut s = Self::zero(base_den, prec);
        if !c.is_zero() {
            s.terms.insert(0, c);
        }
        s
    }

    pub fn one(base_den: u64, prec: i64) -> Self {
        Self::constant(Rational::one(), base_den, prec)
    }

    pub fn base_den(&self) -> u64 {
        self.base_den
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Stored `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `q^{e/h}`; `None` when `e` is outside the window.
    pub fn coeff(&self, e: i64) -> Option<Rational> {
        if e >= self.prec {
            return None;
        }
        Some(self.terms.get(&e).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least stored exponent, in units of `1/h`.
    pub fn order(&self) -> Result<i64> {
        self.terms
            .keys()
            .next()
            .copied()
            .ok_or(Error::OrderUndetermined { prec: self.prec })
    }

    pub fn leading_coeff(&self) -> Result<&Rational> {
        self.terms
            .values()
            .next()
            .ok_or(Error::OrderUndetermined { prec: self.prec })
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Drops everything at or above `prec` (no-op if the window is already smaller).
    pub fn truncate(&self, prec: i64) -> QSeries {
        if prec >= self.prec {
            return self.clone();
        }
        QSeries {
            base_den: self.base_den,
            terms: self
                .terms
                .range(..prec)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
            prec,
        }
    }

    /// Re-expresses the series over `q^{1/new_den}`; `new_den` must be a
    /// multiple of the current base denominator.
    pub fn rescale(&self, new_den: u64) -> Result<QSeries> {
        if new_den == 0 || !new_den.is_multiple_of(self.base_den) {
            return Err(Error::InvalidBaseDen(new_den));
        }
        let f = (new_den / self.base_den) as i64;
        Ok(QSeries {
            base_den: new_den,
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e * f, c.clone()))
                .collect(),
            prec: self.prec * f,
        })
    }

    /// Substitutes `q -> q^{1/m}`: stored exponents are kept and reinterpreted
    /// in units of `1/(h m)`. Turns an expansion of `f(m tau)` into one of `f(tau)`.
    pub fn substitute_root(&self, m: u64) -> Result<QSeries> {
        if m == 0 {
            return Err(Error::InvalidBaseDen(0));
        }
        Ok(QSeries {
            base_den: self.base_den * m,
            terms: self.terms.clone(),
            prec: self.prec,
        })
    }

    /// Multiplies by `q^{shift/h}`.
    pub fn shift(&self, shift: i64) -> QSeries {
        QSeries {
            base_den: self.base_den,
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + shift, c.clone()))
                .collect(),
            prec: self.prec + shift,
        }
    }

    pub fn scale(&self, s: &Rational) -> QSeries {
        if s.is_zero() {
            return Self::zero(self.base_den, self.prec);
        }
        QSeries {
            base_den: self.base_den,
            terms: self.terms.iter().map(|(&e, c)| (e, c * s)).collect(),
            prec: self.prec,
        }
    }

    /// Adds an exact constant. The window is unchanged; a constant added to a
    /// series whose window does not reach `q^0` is invisible.
    pub fn add_scalar(&self, s: &Rational) -> QSeries {
        let mut out = self.clone();
        if self.prec > 0 && !s.is_zero() {
            let c = out.terms.entry(0).or_insert_with(Rational::zero);
            *c += s;
            if c.is_zero() {
                out.terms.remove(&0);
            }
        }
        out
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let (f, g) = reconcile(self, other);
        let prec = f.prec.min(g.prec);
        let mut terms: BTreeMap<i64, Rational> = f
            .terms
            .range(..prec)
            .map(|(&e, c)| (e, c.clone()))
            .collect();
        for (&e, c) in g.terms.range(..prec) {
            let slot = terms.entry(e).or_insert_with(Rational::zero);
            *slot += c;
        }
        terms.retain(|_, c| !c.is_zero());
        QSeries {
            base_den: f.base_den,
            terms,
            prec,
        }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            base_den: self.base_den,
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
            prec: self.prec,
        }
    }

    /// Cauchy product with window `min(prec_f + ord g, prec_g + ord f)`.
    ///
    /// A zero factor `O(q^P)` contributes its window in place of an order.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let (f, g) = reconcile(self, other);
        let h = f.base_den;
        let (of, og) = match (f.order(), g.order()) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(_), Ok(b)) => return QSeries::zero(h, f.prec + b),
            (Ok(a), Err(_)) => return QSeries::zero(h, g.prec + a),
            (Err(_), Err(_)) => return QSeries::zero(h, f.prec + g.prec),
        };
        let prec = (f.prec + og).min(g.prec + of);
        let len = (prec - of - og) as usize;
        let (df, fa) = f.integer_window(of, len);
        let (dg, ga) = g.integer_window(og, len);
        let mut acc = vec![BigInt::zero(); len];
        for (i, a) in fa.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in ga.iter().take(len - i).enumerate() {
                if !b.is_zero() {
                    acc[i + j] += a * b;
                }
            }
        }
        let den = df * dg;
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (of + og + i as i64, Rational::new(c, den.clone())))
            .collect();
        QSeries {
            base_den: h,
            terms,
            prec,
        }
    }

    /// Coefficients of `q^{(start + i)/h}` for `i < len`, cleared of
    /// denominators: returns `(D, [D * c_i])`.
    fn integer_window(&self, start: i64, len: usize) -> (BigInt, Vec<BigInt>) {
        let end = start + len as i64;
        let den = self
            .terms
            .range(start..end)
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut out = vec![BigInt::zero(); len];
        for (&e, c) in self.terms.range(start..end) {
            out[(e - start) as usize] = c.numer() * (&den / c.denom());
        }
        (den, out)
    }

    /// Multiplicative inverse of a series with a determinable leading term.
    ///
    /// With `v = ord g`, the result has order `-v` and window `prec_g - 2v`.
    pub fn inverse(&self) -> Result<QSeries> {
        let v = self.order().map_err(|_| Error::InsufficientPrecision)?;
        let len = (self.prec - v) as usize;
        let (_, u) = self.integer_window(v, len);
        // 1/u = D / U with U = D*u integral; expand 1/U = sum B_n x^n / U_0^{n+1}
        // where B_0 = 1 and B_n = -sum_{i=1}^{n} U_i B_{n-i} U_0^{i-1}.
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let u0 = u[0].clone();
        let mut u0_pows = Vec::with_capacity(len + 1);
        u0_pows.push(BigInt::one());
        for i in 1..=len {
            let next = &u0_pows[i - 1] * &u0;
            u0_pows.push(next);
        }
        let mut b: Vec<BigInt> = Vec::with_capacity(len);
        b.push(BigInt::one());
        for n in 1..len {
            let mut s = BigInt::zero();
            for i in 1..=n {
                if !u[i].is_zero() && !b[n - i].is_zero() {
                    s += &u[i] * &b[n - i] * &u0_pows[i - 1];
                }
            }
            b.push(-s);
        }
        let terms = b
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| {
                (
                    n as i64 - v,
                    Rational::new(c * &den, u0_pows[n + 1].clone()),
                )
            });
        QSeries::new(self.base_den, terms, self.prec - 2 * v)
    }

    /// `f / g` via the inverse of `g`; `mul(div(f, g), g)` agrees with `f` on
    /// the result's window.
    pub fn div(&self, other: &QSeries) -> Result<QSeries> {
        let (f, g) = reconcile(self, other);
        Ok(f.mul(&g.inverse()?))
    }

    /// Integer power by repeated squaring; negative powers invert first.
    ///
    /// `f^0` is the constant 1 carried with the relative window of `f`.
    pub fn pow(&self, m: i64) -> Result<QSeries> {
        if m < 0 {
            return self.inverse()?.pow(-m);
        }
        if m == 0 {
            let prec = match self.order() {
                Ok(o) => self.prec - o,
                Err(_) => self.prec.max(1),
            };
            return Ok(Self::one(self.base_den, prec));
        }
        let mut base = self.clone();
        let mut acc: Option<QSeries> = None;
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.expect("m > 0"))
    }

    /// `q d/dq`: maps `q^{e/h}` to `(e/h) q^{e/h}`.
    pub fn theta(&self) -> QSeries {
        let h = BigInt::from(self.base_den);
        let terms = self
            .terms
            .iter()
            .filter(|(&e, _)| e != 0)
            .map(|(&e, c)| (e, c * Rational::new(BigInt::from(e), h.clone())))
            .collect();
        QSeries {
            base_den: self.base_den,
            terms,
            prec: self.prec,
        }
    }

    /// Scales so that the leading coefficient is 1.
    pub fn normalize_monic(&self) -> Result<QSeries> {
        let lead = self.leading_coeff()?;
        Ok(self.scale(&lead.recip()))
    }

    /// Coefficientwise agreement for all exponents below `bound` (in units of
    /// the common base denominator). Errors rather than passing when either
    /// window stops short of `bound`.
    pub fn equal_to_prec(&self, other: &QSeries, bound: i64) -> Result<bool> {
        let (f, g) = reconcile(self, other);
        let available = f.prec.min(g.prec);
        if available < bound {
            return Err(Error::WindowShortfall {
                needed: bound,
                available,
            });
        }
        let lhs: Vec<_> = f.terms.range(..bound).collect();
        let rhs: Vec<_> = g.terms.range(..bound).collect();
        Ok(lhs == rhs)
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            base_den: self.base_den,
            prec: self.prec,
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (c.numer().to_string(), c.denom().to_string(), e))
                .collect(),
        }
    }

    pub fn from_json(json: &SeriesJson) -> Result<QSeries> {
        let terms = json
            .terms
            .iter()
            .map(|(n, d, e)| {
                let n: BigInt = n
                    .parse()
                    .map_err(|_| Error::Json(format!("bad numerator `{n}`")))?;
                let d: BigInt = d
                    .parse()
                    .map_err(|_| Error::Json(format!("bad denominator `{d}`")))?;
                if !d.is_positive() {
                    return Err(Error::Json(format!("non-positive denominator `{d}`")));
                }
                Ok((*e, Rational::new(n, d)))
            })
            .collect::<Result<Vec<_>>>()?;
        QSeries::new(json.base_den, terms, json.prec)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("series JSON is always serializable")
    }

    pub fn from_json_str(s: &str) -> Result<QSeries> {
        let json: SeriesJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
        QSeries::from_json(&json)
    }

    /// Coefficients as `f64`, for numerical evaluation.
    pub fn float_terms(&self) -> Vec<(i64, f64)> {
        self.terms
            .iter()
            .map(|(&e, c)| (e, c.to_f64().unwrap_or(f64::NAN)))
            .collect()
    }
}

/// Wire form: `{"base_den": h, "prec": B, "terms": [[num, den, exp], ...]}`
/// with numerators and denominators as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub base_den: u64,
    pub prec: i64,
    pub terms: Vec<(String, String, i64)>,
}

fn reconcile<'a>(
    f: &'a QSeries,
    g: &'a QSeries,
) -> (std::borrow::Cow<'a, QSeries>, std::borrow::Cow<'a, QSeries>) {
    use std::borrow::Cow;
    if f.base_den == g.base_den {
        return (Cow::Borrowed(f), Cow::Borrowed(g));
    }
    let l = f.base_den.lcm(&g.base_den);
    (
        Cow::Owned(f.rescale(l).expect("lcm is a multiple")),
        Cow::Owned(g.rescale(l).expect("lcm is a multiple")),
    )
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = self.base_den as i64;
        let power = |e: i64| -> String {
            let g = e.gcd(&h);
            let (n, d) = (e / g, h / g);
            match (n, d) {
                (0, _) => String::new(),
                (1, 1) => "q".to_string(),
                (n, 1) => format!("q^{n}"),
                (n, d) => format!("q^({n}/{d})"),
            }
        };
        let mut first = true;
        for (&e, c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let p = power(e);
            if p.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{p}")?;
            } else {
                write!(f, "{abs}*{p}")?;
            }
            first = false;
        }
        if !first {
            write!(f, " + ")?;
        }
        let p = power(self.prec);
        if p.is_empty() {
            write!(f, "O(1)")
        } else {
            write!(f, "O({p})")
        }
    }
}
