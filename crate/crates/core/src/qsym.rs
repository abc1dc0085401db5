//! Homogeneous quasisymmetric expressions over a coefficient ring.
//!
//! An expression of degree `d` is a finite linear combination of monomial
//! quasisymmetric functions `M_α` or fundamental ones `F_α` with `α ⊨ d`.
//! With refinement ordered so finer is larger, `F_α = Σ_{β ≥ α} M_β`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::compositions::IntComposition;
use crate::error::{invalid, Result};
use crate::ring::{binomial, binomial_at, JsonCoeff, Poly, Rational, RationalAlgebra, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    M,
    F,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::M => write!(f, "M"),
            Basis::F => write!(f, "F"),
        }
    }
}

impl std::str::FromStr for Basis {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" | "m" => Ok(Basis::M),
            "F" | "f" => Ok(Basis::F),
            _ => Err(invalid(format!("unknown basis {s:?}; expected M or F"))),
        }
    }
}

/// A homogeneous quasisymmetric expression of fixed degree in one basis.
#[derive(Clone, PartialEq)]
pub struct QSymExpr<R> {
    degree: usize,
    basis: Basis,
    terms: BTreeMap<IntComposition, R>,
}

impl<R: Ring> QSymExpr<R> {
    pub fn zero(degree: usize, basis: Basis) -> Self {
        QSymExpr {
            degree,
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// The single term `c · B_α`.
    pub fn term(basis: Basis, alpha: IntComposition, c: R) -> Self {
        let mut q = QSymExpr::zero(alpha.weight(), basis);
        q.add_term(alpha, c)
            .expect("weight matches by construction");
        q
    }

    pub fn from_terms(
        degree: usize,
        basis: Basis,
        terms: impl IntoIterator<Item = (IntComposition, R)>,
    ) -> Result<Self> {
        let mut q = QSymExpr::zero(degree, basis);
        for (a, c) in terms {
            q.add_term(a, c)?;
        }
        Ok(q)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Nonzero terms in increasing composition order.
    pub fn terms(&self) -> impl Iterator<Item = (&IntComposition, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, alpha: &IntComposition) -> R {
        self.terms.get(alpha).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · B_α` in place.
    pub fn add_term(&mut self, alpha: IntComposition, c: R) -> Result<()> {
        if alpha.weight() != self.degree {
            return Err(invalid(format!(
                "composition {alpha} does not have weight {}",
                self.degree
            )));
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(invalid(format!(
                "cannot combine expressions of degree {} and {}",
                self.degree, other.degree
            )));
        }
        if self.basis != other.basis {
            return Err(invalid("cannot combine expressions in different bases"));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale_by(&self, s: &R) -> Self {
        self.map_coeffs(|c| c.clone() * s.clone())
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> QSymExpr<S> {
        QSymExpr {
            degree: self.degree,
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Expresses `self` in the fundamental basis.
    pub fn to_f(&self) -> Self {
        match self.basis {
            Basis::F => self.clone(),
            Basis::M => self.m_to_f(),
        }
    }

    /// Expresses `self` in the monomial basis.
    pub fn to_m(&self) -> Self {
        match self.basis {
            Basis::M => self.clone(),
            Basis::F => self.f_to_m(),
        }
    }

    pub fn to_basis(&self, basis: Basis) -> Self {
        match basis {
            Basis::M => self.to_m(),
            Basis::F => self.to_f(),
        }
    }

    /// Möbius inversion on the Boolean lattice:
    /// `[F_β] = Σ_{α ≤ β} (−1)^{ℓ(β)−ℓ(α)} [M_α]`.
    fn m_to_f(&self) -> Self {
        let mut out = QSymExpr::zero(self.degree, Basis::F);
        for (a, c) in &self.terms {
            for b in a.refinements() {
                let v = if (b.len() - a.len()) % 2 == 0 {
                    c.clone()
                } else {
                    -c.clone()
                };
                out.add_term(b, v).expect("same degree");
            }
        }
        out
    }

    /// `F_α = Σ_{β ≥ α} M_β`.
    fn f_to_m(&self) -> Self {
        let mut out = QSymExpr::zero(self.degree, Basis::M);
        for (a, c) in &self.terms {
            for b in a.refinements() {
                out.add_term(b, c.clone()).expect("same degree");
            }
        }
        out
    }

    /// The antipode `S(M_α) = (−1)^{ℓ(α)} Σ_{β ≤ α} M_{rev β}`, extended
    /// linearly; the result is in the same basis as the input.
    pub fn antipode(&self) -> Self {
        let m = self.to_m();
        let mut out = QSymExpr::zero(self.degree, Basis::M);
        for (a, c) in &m.terms {
            let v = if a.len() % 2 == 0 {
                c.clone()
            } else {
                -c.clone()
            };
            for b in a.coarsenings() {
                out.add_term(b.reverse(), v.clone()).expect("same degree");
            }
        }
        out.to_basis(self.basis)
    }

    /// Relabels `M_α ↦ M_{rev α}` (monomial basis).
    pub fn reverse(&self) -> Self {
        let m = self.to_m();
        let mut out = QSymExpr::zero(self.degree, Basis::M);
        for (a, c) in &m.terms {
            out.add_term(a.reverse(), c.clone()).expect("same degree");
        }
        out.to_basis(self.basis)
    }

    /// The f-vector `f_i = Σ_{ℓ(α)=i} [M_α]` of the principal specialization.
    pub fn principal_specialization(&self) -> PolyInBinomials<R> {
        let m = self.to_m();
        let mut f = vec![R::zero(); self.degree + 1];
        for (a, c) in &m.terms {
            f[a.len()] = f[a.len()].clone() + c.clone();
        }
        PolyInBinomials::new(f)
    }

    /// The h-vector `h_i = Σ_{ℓ(α)=i} [F_α]`, indexed `0..=degree`.
    pub fn h_polynomial(&self) -> Vec<R> {
        let fq = self.to_f();
        let mut h = vec![R::zero(); self.degree + 1];
        for (a, c) in &fq.terms {
            h[a.len()] = h[a.len()].clone() + c.clone();
        }
        h
    }
}

impl<R: Ring + JsonCoeff> QSymExpr<R> {
    /// `{"degree": d, "basis": "M"|"F", "terms": [{"alpha": [..], "coeff": ..}]}`
    /// with terms sorted by composition.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(a, c)| json!({"alpha": a.parts(), "coeff": c.to_json()}))
            .collect();
        json!({"degree": self.degree, "basis": self.basis.to_string(), "terms": terms})
    }
}

impl<R: Ring> fmt::Display for QSymExpr<R> {
    /// E.g. `M(1,3) + 2*M(1,1,1,1) + (t+1)*M(2,2)`; the zero expression
    /// prints as `0` and the degree-zero unit as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, c) in &self.terms {
            let body = c.to_string();
            let (neg, body) = match body.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, body),
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            if a.is_empty() {
                write!(f, "{body}")?;
                continue;
            }
            if body != "1" {
                if body.contains(['+', '-']) {
                    write!(f, "({body})*")?;
                } else {
                    write!(f, "{body}*")?;
                }
            }
            write!(f, "{}{}", self.basis, a)?;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for QSymExpr<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A polynomial `p(x) = Σ_i f_i binom(x, i)` stored by its f-vector.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyInBinomials<R> {
    f: Vec<R>,
}

impl<R: Ring> PolyInBinomials<R> {
    /// Builds from `(f_0, …, f_d)`; the degree is `len - 1` regardless of
    /// trailing zeros, since the h-vector depends on it.
    pub fn new(f: Vec<R>) -> Self {
        PolyInBinomials { f }
    }

    pub fn degree(&self) -> usize {
        self.f.len().saturating_sub(1)
    }

    pub fn f_vector(&self) -> &[R] {
        &self.f
    }

    pub fn map<S: Ring>(&self, g: impl Fn(&R) -> S) -> PolyInBinomials<S> {
        PolyInBinomials {
            f: self.f.iter().map(g).collect(),
        }
    }

    /// `q` with `q(n) = p(−n)`:
    /// `q_0 = f_0` and `q_j = Σ_{i ≥ j} (−1)^i binom(i−1, j−1) f_i`.
    pub fn negate_variable(&self) -> Self {
        let d = self.f.len();
        let mut q = vec![R::zero(); d];
        if d > 0 {
            q[0] = self.f[0].clone();
        }
        for j in 1..d {
            let mut acc = R::zero();
            for i in j..d {
                let b = big_to_ring::<R>(&binomial(i as u64 - 1, j as u64 - 1));
                let term = self.f[i].clone() * b;
                acc = if i % 2 == 0 { acc + term } else { acc - term };
            }
            q[j] = acc;
        }
        PolyInBinomials { f: q }
    }

    /// Coefficients of `h(t) = Σ_i f_i t^i (1−t)^{d−i}`, indexed `0..=d`.
    pub fn h_vector(&self) -> Vec<R> {
        let d = self.degree();
        let mut h = vec![R::zero(); self.f.len()];
        for (i, fi) in self.f.iter().enumerate() {
            for k in i..=d {
                let b = big_to_ring::<R>(&binomial((d - i) as u64, (k - i) as u64));
                let term = fi.clone() * b;
                h[k] = if (k - i) % 2 == 0 {
                    h[k].clone() + term
                } else {
                    h[k].clone() - term
                };
            }
        }
        h
    }
}

impl<R: RationalAlgebra> PolyInBinomials<R> {
    /// `p(x)` at an integer `x` (negative values allowed).
    pub fn eval(&self, x: i64) -> R {
        self.f
            .iter()
            .enumerate()
            .fold(R::zero(), |acc, (i, fi)| acc + fi.scale(&binomial_at(x, i)))
    }

    /// Coefficients of `p` in the monomial basis `1, x, x², …`.
    pub fn to_power_basis(&self) -> Vec<R> {
        let mut out = vec![R::zero(); self.f.len()];
        // binom(x, i) = x(x−1)…(x−i+1)/i!
        let mut falling: Poly<Rational> = Poly::one();
        let mut fact = Rational::one();
        for (i, fi) in self.f.iter().enumerate() {
            if i > 0 {
                falling = falling
                    * Poly::from_coeffs(vec![
                        Rational::from_integer(-BigInt::from(i - 1)),
                        Rational::one(),
                    ]);
                fact *= Rational::from_integer(BigInt::from(i));
            }
            for (k, c) in falling.coeffs().iter().enumerate() {
                out[k] = out[k].clone() + fi.scale(&(c / &fact));
            }
        }
        out
    }
}

fn big_to_ring<R: Ring>(n: &BigInt) -> R {
    use num_traits::ToPrimitive;
    match n.to_i64() {
        Some(v) => R::from_int(v),
        None => {
            // Horner in base 2^32 for values beyond 64 bits.
            let (sign, digits) = n.to_u32_digits();
            let base = R::from_int(1i64 << 32);
            let mut acc = R::zero();
            for d in digits.iter().rev() {
                acc = acc * base.clone() + R::from_int(*d as i64);
            }
            if sign == num_bigint::Sign::Minus {
                -acc
            } else {
                acc
            }
        }
    }
}
