//! Exact arithmetic in cyclotomic fields.
//!
//! An element of `Q(ζ_m)` is stored as a rational polynomial in `ζ_m` of
//! degree below `φ(m)`, i.e. its residue modulo the `m`-th cyclotomic
//! polynomial. Elements of different fields are combined in the field of the
//! least common multiple of their orders, so any two values can be mixed.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::ring::{fmt_rational, rat, Conjugate, Rational, RationalAlgebra, Ring};

/// Integer coefficients of the `m`-th cyclotomic polynomial, lowest first.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cyclotomic cache poisoned").get(&m) {
        return p.clone();
    }
    assert!(m >= 1, "cyclotomic order must be positive");
    // x^m - 1 divided by every Φ_d with d a proper divisor of m.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    let p = Arc::new(num);
    cache
        .lock()
        .expect("cyclotomic cache poisoned")
        .insert(m, p.clone());
    p
}

/// Exact quotient of integer polynomials by a monic divisor.
fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (dn..num.len()).rev() {
        let c = rem[k];
        quot[k - dn] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[k - dn + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Euler's totient.
pub fn totient(m: u32) -> u32 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u32
}

/// An element of the cyclotomic field `Q(ζ_order)`.
#[derive(Clone)]
pub struct Cyc {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyc {
    /// Reduces an arbitrary polynomial in `ζ_order` to canonical form.
    pub fn from_poly(order: u32, mut coeffs: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        for k in (deg..coeffs.len()).rev() {
            let c = std::mem::take(&mut coeffs[k]);
            if c.is_zero() {
                continue;
            }
            for (j, &p) in phi.iter().enumerate().take(deg) {
                if p != 0 {
                    coeffs[k - deg + j] -= &c * rat(p);
                }
            }
        }
        coeffs.truncate(deg);
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Cyc { order, coeffs }
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyc::from_poly(1, vec![q])
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn root(m: u32, k: i64) -> Self {
        let k = k.rem_euclid(m as i64) as usize;
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Cyc::from_poly(m, coeffs)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients in the power basis of `Q(ζ_order)`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficients after embedding into `Q(ζ_m)`, padded to length `φ(m)`.
    ///
    /// Falls back to `None` when the value does not live in that field's
    /// representation, i.e. when `order` does not divide `m`.
    pub fn coeffs_in(&self, m: u32) -> Option<Vec<Rational>> {
        let e = self.embed(m)?;
        let mut out = e.coeffs;
        out.resize(totient(m) as usize, Rational::zero());
        Some(out)
    }

    /// Re-expresses the value in `Q(ζ_m)`, where `order` must divide `m`.
    pub fn embed(&self, m: u32) -> Option<Cyc> {
        if !m.is_multiple_of(self.order) {
            return None;
        }
        if m == self.order {
            return Some(self.clone());
        }
        let step = (m / self.order) as usize;
        let mut coeffs = vec![Rational::zero(); step * self.coeffs.len().max(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * step] = c.clone();
        }
        Some(Cyc::from_poly(m, coeffs))
    }

    fn common(&self, other: &Cyc) -> (Cyc, Cyc) {
        let l = self.order.lcm(&other.order);
        (
            self.embed(l).expect("lcm is a multiple"),
            other.embed(l).expect("lcm is a multiple"),
        )
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^j` (`j` coprime to the order).
    pub fn galois(&self, j: u32) -> Cyc {
        let m = self.order as usize;
        let mut coeffs = vec![Rational::zero(); m];
        for (k, c) in self.coeffs.iter().enumerate() {
            let idx = (k * j as usize) % m;
            coeffs[idx] += c;
        }
        Cyc::from_poly(self.order, coeffs)
    }

    /// Multiplicative inverse, via the product of the other Galois conjugates
    /// divided by the (rational) field norm.
    pub fn inv(&self) -> Option<Cyc> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.to_rational() {
            return Some(Cyc::from_rational(q.recip()));
        }
        let mut others = Cyc::one();
        for j in 2..self.order {
            if j.gcd(&self.order) == 1 {
                others = others * self.galois(j);
            }
        }
        let norm = (self.clone() * others.clone())
            .to_rational()
            .expect("field norm is rational");
        Some(others.scale(&norm.recip()))
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Cyc) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyc {}

impl Zero for Cyc {
    fn zero() -> Self {
        Cyc {
            order: 1,
            coeffs: Vec::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Cyc {
    fn one() -> Self {
        Cyc::from_rational(Rational::one())
    }
}

impl Add for Cyc {
    type Output = Cyc;

    fn add(self, rhs: Cyc) -> Cyc {
        if rhs.is_zero() {
            return self;
        }
        if self.is_zero() {
            return rhs;
        }
        let (mut a, b) = if self.order == rhs.order {
            (self, rhs)
        } else {
            self.common(&rhs)
        };
        if a.coeffs.len() < b.coeffs.len() {
            a.coeffs.resize(b.coeffs.len(), Rational::zero());
        }
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x += y;
        }
        while a.coeffs.last().is_some_and(|c| c.is_zero()) {
            a.coeffs.pop();
        }
        a
    }
}

impl Sub for Cyc {
    type Output = Cyc;

    fn sub(self, rhs: Cyc) -> Cyc {
        self + (-rhs)
    }
}

impl Neg for Cyc {
    type Output = Cyc;

    fn neg(self) -> Cyc {
        Cyc {
            order: self.order,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for Cyc {
    type Output = Cyc;

    fn mul(self, rhs: Cyc) -> Cyc {
        if self.is_zero() || rhs.is_zero() {
            return Cyc::zero();
        }
        if let Some(q) = rhs.to_rational() {
            return self.scale(&q);
        }
        if let Some(q) = self.to_rational() {
            return rhs.scale(&q);
        }
        let (a, b) = if self.order == rhs.order {
            (self, rhs)
        } else {
            self.common(&rhs)
        };
        let mut out = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Cyc::from_poly(a.order, out)
    }
}

impl Ring for Cyc {
    fn from_int(n: i64) -> Self {
        Cyc::from_rational(rat(n))
    }
}

impl RationalAlgebra for Cyc {
    fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Cyc::zero();
        }
        Cyc {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }
}

impl Conjugate for Cyc {
    fn conj(&self) -> Self {
        self.galois(self.order - 1)
    }
}

impl From<Rational> for Cyc {
    fn from(q: Rational) -> Self {
        Cyc::from_rational(q)
    }
}

/// Renders `Σ c_k ζ_m^k` as e.g. `-1-E(3)` or `2*E(4)^3+1/2`, highest power
/// first; rational values render as plain rationals.
impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = fmt_rational(&if neg { -c.clone() } else { c.clone() });
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => format!("E({})", self.order),
                _ => format!("E({})^{k}", self.order),
            };
            match (k, mag.as_str()) {
                (0, _) => write!(f, "{mag}")?,
                (_, "1") => write!(f, "{mono}")?,
                _ => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat_frac;

    fn c(n: i64) -> Cyc {
        Cyc::from_int(n)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for m in 1..40 {
            assert_eq!(cyclotomic_polynomial(m).len() as u32 - 1, totient(m));
        }
    }

    #[test]
    fn roots_of_unity() {
        for m in 1..16u32 {
            let z = Cyc::root(m, 1);
            let mut acc = Cyc::one();
            for _ in 0..m {
                acc = acc * z.clone();
            }
            assert_eq!(acc, Cyc::one(), "ζ_{m}^{m}");
            // Sum of all m-th roots vanishes for m > 1.
            let s = (0..m as i64).fold(Cyc::zero(), |a, k| a + Cyc::root(m, k));
            assert_eq!(s, if m == 1 { c(1) } else { c(0) });
        }
    }

    #[test]
    fn cube_roots() {
        let w = Cyc::root(3, 1);
        let wb = w.conj();
        assert_eq!(wb, Cyc::root(3, 2));
        assert_eq!(w.clone() + wb.clone(), c(-1));
        assert_eq!(w.clone() * wb, c(1));
        // ζ_3 = ζ_6^2 across orders.
        assert_eq!(Cyc::root(6, 2), w);
        assert_eq!(Cyc::root(6, 3), c(-1));
    }

    #[test]
    fn inverses() {
        for m in [3u32, 4, 5, 8, 12] {
            let a = Cyc::root(m, 1) + c(2);
            let inv = a.inv().unwrap();
            assert_eq!(a * inv, c(1));
        }
        assert_eq!(c(4).inv().unwrap(), Cyc::from_rational(rat_frac(1, 4)));
        assert!(Cyc::zero().inv().is_none());
    }

    #[test]
    fn display_and_embedding() {
        assert_eq!(Cyc::root(3, 2).to_string(), "-E(3)-1");
        assert_eq!(c(-3).to_string(), "-3");
        assert_eq!(Cyc::root(4, 1).scale(&rat(2)).to_string(), "2*E(4)");
        assert_eq!(Cyc::root(3, 1).coeffs_in(6).unwrap(), vec![rat(-1), rat(1)]);
        assert!(Cyc::root(4, 1).coeffs_in(6).is_none());
    }
}
