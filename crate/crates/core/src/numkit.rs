//! Exact scalars: rationals, power series truncated at a fixed order in the
//! formal parameter, and the multiplicative group `1 + λk[λ]/λ^{N+1}` of
//! truncated big Witt vectors.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::NumError;

/// Arbitrary-precision rational. `BigRational` keeps numerator and
/// denominator coprime with a positive denominator after every operation.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical string form: `p/q`, or `p` when `q = 1`.
pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

pub fn parse_rat(s: &str) -> Result<Rat, NumError> {
    let t = s.trim();
    let bad = || NumError::Parse(s.to_string());
    match t.split_once('/') {
        None => t
            .parse::<BigInt>()
            .map(Rat::from_integer)
            .map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// `(-1)^e` for a possibly negative exponent.
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A power series in λ truncated modulo `λ^{order+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<Rat>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, Rat::one())
    }

    pub fn constant(order: usize, c: Rat) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Builds a series from its leading coefficients; missing ones are zero,
    /// coefficients beyond `order` are dropped.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = Rat>) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    /// `c · λ^power`, zero if `power > order`.
    pub fn monomial(order: usize, power: usize, c: Rat) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<(), NumError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(NumError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, NumError> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, NumError> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, NumError> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inv(&self) -> Result<Self, NumError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(NumError::NotInvertible);
        }
        let n = self.order();
        let inv0 = a0.recip();
        let mut out = Self::zero(n);
        out.coeffs[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = Rat::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &out.coeffs[k - i];
            }
            out.coeffs[k] = -acc * &inv0;
        }
        Ok(out)
    }

    /// `log` of a series with constant term 1, computed from `(log a)' = a'/a`.
    pub fn log(&self) -> Result<Self, NumError> {
        if !self.coeffs[0].is_one() {
            return Err(NumError::Domain("log needs constant term 1"));
        }
        let n = self.order();
        let mut b = Self::zero(n);
        for k in 1..=n {
            let mut acc = rat(k as i64) * &self.coeffs[k];
            for i in 1..k {
                acc -= rat(i as i64) * &b.coeffs[i] * &self.coeffs[k - i];
            }
            b.coeffs[k] = acc / rat(k as i64);
        }
        Ok(b)
    }

    /// `exp` of a series with constant term 0, computed from `e' = a'e`.
    pub fn exp(&self) -> Result<Self, NumError> {
        if !self.coeffs[0].is_zero() {
            return Err(NumError::Domain("exp needs constant term 0"));
        }
        let n = self.order();
        let mut e = Self::one(n);
        for k in 1..=n {
            let mut acc = Rat::zero();
            for i in 1..=k {
                acc += rat(i as i64) * &self.coeffs[i] * &e.coeffs[k - i];
            }
            e.coeffs[k] = acc / rat(k as i64);
        }
        Ok(e)
    }

    /// Integer power by repeated squaring; negative exponents go through `inv`.
    pub fn pow(&self, e: i64) -> Result<Self, NumError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})λ")?,
                _ => write!(f, "({c})λ^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(λ^{})", self.order() + 1)
    }
}

/// Element of the truncated Witt group `1 + λk[λ]/λ^{N+1}` under
/// multiplication.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WittElem(TruncSeries);

impl WittElem {
    pub fn one(order: usize) -> Self {
        Self(TruncSeries::one(order))
    }

    pub fn new(value: TruncSeries) -> Result<Self, NumError> {
        if value.coeffs[0].is_one() {
            Ok(Self(value))
        } else {
            Err(NumError::Domain("Witt element needs constant term 1"))
        }
    }

    /// `1 + Σ c_n λ^n` from the higher coefficients `c_1, c_2, …`.
    pub fn from_tail(order: usize, tail: impl IntoIterator<Item = Rat>) -> Self {
        Self(TruncSeries::from_coeffs(
            order,
            std::iter::once(Rat::one()).chain(tail),
        ))
    }

    pub fn value(&self) -> &TruncSeries {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn is_one(&self) -> bool {
        self.0.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, NumError> {
        Ok(Self(self.0.mul(&other.0)?))
    }

    pub fn inv(&self) -> Self {
        Self(self.0.inv().expect("constant term is 1"))
    }

    pub fn pow(&self, e: i64) -> Self {
        Self(self.0.pow(e).expect("constant term is 1"))
    }

    /// Additive image under `log`; the constant term is 0.
    pub fn log(&self) -> TruncSeries {
        self.0.log().expect("constant term is 1")
    }

    pub fn exp(additive: &TruncSeries) -> Result<Self, NumError> {
        Ok(Self(additive.exp()?))
    }
}
