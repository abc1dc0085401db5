//! Coefficient rings.
//!
//! Every invariant in this crate is an exact linear combination over some
//! commutative ring: plain rationals, polynomials in the ascent variable `t`,
//! or cyclotomic numbers carrying character values. The [`Ring`] trait is the
//! contract those coefficient types share; [`Poly`] lifts any ring to
//! polynomials over it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational numbers.
pub type Rational = BigRational;

/// Commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Image of an integer under the canonical map `Z -> R`.
    fn from_int(n: i64) -> Self {
        let mut acc = Self::zero();
        let mut base = Self::one();
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc + base.clone();
            }
            base = base.clone() + base;
            k >>= 1;
        }
        if n < 0 {
            -acc
        } else {
            acc
        }
    }

    fn scale_int(&self, n: i64) -> Self {
        self.clone() * Self::from_int(n)
    }
}

/// Rings that are algebras over the rationals, so division by group orders
/// is available.
pub trait RationalAlgebra: Ring {
    fn scale(&self, q: &Rational) -> Self;
}

/// Complex conjugation (identity on real coefficient rings).
pub trait Conjugate {
    fn conj(&self) -> Self;
}

impl Ring for Rational {
    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl RationalAlgebra for Rational {
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
}

impl Conjugate for Rational {
    fn conj(&self) -> Self {
        self.clone()
    }
}

/// Canonical JSON encoding of a coefficient.
pub trait JsonCoeff {
    fn to_json(&self) -> serde_json::Value;
}

impl JsonCoeff for Rational {
    /// Integers become JSON numbers when they fit in 64 bits; everything
    /// else is a `"p/q"` string.
    fn to_json(&self) -> serde_json::Value {
        use num_traits::ToPrimitive;
        if self.is_integer() {
            if let Some(n) = self.numer().to_i64() {
                return serde_json::Value::from(n);
            }
        }
        serde_json::Value::from(fmt_rational(self))
    }
}

impl<R: Ring + JsonCoeff> JsonCoeff for Poly<R> {
    /// Coefficient list, lowest degree first.
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(JsonCoeff::to_json).collect())
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Dense univariate polynomial with coefficients in `R`, lowest degree first.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has an
/// empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn from_coeffs(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// The variable `t`.
    pub fn var() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn scale_by(&self, c: &R) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Truncates to terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(n).cloned().collect())
    }
}

impl<R: Ring> Zero for Poly<R> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Ring> One for Poly<R> {
    fn one() -> Self {
        Poly::constant(R::one())
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a = a.clone() + b;
        }
        Poly::from_coeffs(long)
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Self;

    fn neg(self) -> Self {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(out)
    }
}

impl<R: Ring> Ring for Poly<R> {}

impl<R: RationalAlgebra> RationalAlgebra for Poly<R> {
    fn scale(&self, q: &Rational) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c.scale(q)).collect())
    }
}

impl<R: Ring + Conjugate> Conjugate for Poly<R> {
    fn conj(&self) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c.conj()).collect())
    }
}

impl Poly<Rational> {
    /// Integer coefficient list, if every coefficient is integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let body = c.to_string();
            let (neg, body) = match body.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, body),
            };
            let needs_parens = body.contains(['+', '-']) && (k > 0 || !first);
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = body == "1";
            match k {
                0 if needs_parens => write!(f, "({body})")?,
                0 => write!(f, "{body}")?,
                _ => {
                    if !unit {
                        if needs_parens {
                            write!(f, "({body})")?;
                        } else {
                            write!(f, "{body}")?;
                        }
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Binomial coefficient `C(n, k)` as an exact integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial `C(x, k)` for any integer `x`.
pub fn binomial_at(x: i64, k: usize) -> Rational {
    let mut acc = rat(1);
    for i in 0..k as i64 {
        acc = acc * rat(x - i) / rat(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    type QPoly = Poly<Rational>;

    fn p(cs: &[i64]) -> QPoly {
        Poly::from_coeffs(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn poly_arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.clone() * b.clone(), p(&[-1, 0, 1]));
        assert_eq!(a.clone() + b.clone(), p(&[0, 2]));
        assert_eq!(a.clone() - a.clone(), QPoly::zero());
        assert_eq!(a.eval(&rat(3)), rat(4));
        assert_eq!(QPoly::var().shift(2), p(&[0, 0, 0, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, 4, 16, 4]).to_string(), "4t^3+16t^2+4t");
        assert_eq!(p(&[1, -1]).to_string(), "-t+1");
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(p(&[0, 0, 1]).to_string(), "t^2");
    }

    #[test]
    fn from_int_matches_repeated_addition() {
        for n in -9..=9 {
            assert_eq!(<QPoly as Ring>::from_int(n), p(&[n]));
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(binomial_at(-3, 2), rat(6));
        assert_eq!(binomial_at(4, 2), rat(6));
    }

    #[test]
    fn rational_roundtrip() {
        for s in ["3", "-7/2", "0"] {
            assert_eq!(fmt_rational(&parse_rational(s).unwrap()), s);
        }
        assert!(parse_rational("1/0").is_none());
    }
}
