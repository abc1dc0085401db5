use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use super::chartable::cyc_coeffs_json;
use super::group::PermGroup;
use super::perm::Perm;
use crate::cyclotomic::Cyc;
use crate::error::{invalid, Result};
use crate::ring::{rat, rat_frac, Conjugate, Rational, RationalAlgebra, Ring};
use crate::CycPoly;

/// A function on a group that is constant on conjugacy classes, stored by
/// one value per class. Values are polynomials in `t` over cyclotomic
/// numbers; ordinary characters are the constant ones.
#[derive(Clone)]
pub struct ClassFunction {
    group: Arc<PermGroup>,
    values: Vec<CycPoly>,
}

impl ClassFunction {
    pub fn new(group: Arc<PermGroup>, values: Vec<CycPoly>) -> Result<Self> {
        if values.len() != group.num_classes() {
            return Err(invalid(format!(
                "{} values for {} conjugacy classes",
                values.len(),
                group.num_classes()
            )));
        }
        Ok(ClassFunction { group, values })
    }

    pub fn from_fn(group: &Arc<PermGroup>, f: impl Fn(usize) -> CycPoly) -> Self {
        ClassFunction {
            group: group.clone(),
            values: (0..group.num_classes()).map(f).collect(),
        }
    }

    /// A class function with rational `t`-polynomial values.
    pub fn from_tpolys(group: &Arc<PermGroup>, values: &[crate::TPoly]) -> Result<Self> {
        ClassFunction::new(
            group.clone(),
            values
                .iter()
                .map(|p| p.map(|c| Cyc::from_rational(c.clone())))
                .collect(),
        )
    }

    /// A constant-in-`t` class function from integer values.
    pub fn from_ints(group: &Arc<PermGroup>, values: &[i64]) -> Result<Self> {
        ClassFunction::new(
            group.clone(),
            values
                .iter()
                .map(|&v| CycPoly::constant(Cyc::from_int(v)))
                .collect(),
        )
    }

    pub fn zero(group: &Arc<PermGroup>) -> Self {
        ClassFunction::from_fn(group, |_| CycPoly::zero())
    }

    pub fn trivial(group: &Arc<PermGroup>) -> Self {
        ClassFunction::from_fn(group, |_| CycPoly::one())
    }

    /// The sign character `g ↦ sgn(g)` of the ambient symmetric group.
    pub fn sign(group: &Arc<PermGroup>) -> Self {
        ClassFunction::from_fn(group, |k| {
            CycPoly::constant(Cyc::from_int(group.class_sign(k)))
        })
    }

    /// The regular character: `|G|` at the identity, `0` elsewhere.
    pub fn regular(group: &Arc<PermGroup>) -> Self {
        ClassFunction::from_fn(group, |k| {
            if k == 0 {
                CycPoly::constant(Cyc::from_int(group.order() as i64))
            } else {
                CycPoly::zero()
            }
        })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn values(&self) -> &[CycPoly] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &CycPoly {
        &self.values[class]
    }

    /// Value at an arbitrary group element.
    pub fn value_at(&self, g: &Perm) -> Option<&CycPoly> {
        self.group.class_of(g).map(|k| &self.values[k])
    }

    /// Value at the identity.
    pub fn degree(&self) -> &CycPoly {
        &self.values[0]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Highest power of `t` appearing in any value.
    pub fn t_degree(&self) -> Option<usize> {
        self.values.iter().filter_map(CycPoly::degree).max()
    }

    /// The class function `g ↦ [t^k] self(g)`.
    pub fn t_coefficient(&self, k: usize) -> ClassFunction {
        self.map(|v| CycPoly::constant(v.coeff(k)))
    }

    pub fn map(&self, f: impl Fn(&CycPoly) -> CycPoly) -> ClassFunction {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    fn check_group(&self, other: &ClassFunction) -> Result<()> {
        if self.group.same_as(&other.group) {
            Ok(())
        } else {
            Err(invalid("class functions belong to different groups"))
        }
    }

    fn zip(
        &self,
        other: &ClassFunction,
        f: impl Fn(&CycPoly, &CycPoly) -> CycPoly,
    ) -> Result<Self> {
        self.check_group(other)?;
        Ok(ClassFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn try_add(&self, other: &ClassFunction) -> Result<Self> {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn try_sub(&self, other: &ClassFunction) -> Result<Self> {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    /// Pointwise product.
    pub fn try_mul(&self, other: &ClassFunction) -> Result<Self> {
        self.zip(other, |a, b| a.clone() * b.clone())
    }

    pub fn scale(&self, c: &CycPoly) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.map(|v| v.scale(q))
    }

    pub fn conj(&self) -> Self {
        self.map(Conjugate::conj)
    }

    /// `(1/|G|) Σ_g conj(self(g)) · other(g)`, with conjugation acting on the
    /// cyclotomic coefficients and fixing `t`.
    pub fn inner_product(&self, other: &ClassFunction) -> Result<CycPoly> {
        self.check_group(other)?;
        let g = &self.group;
        let mut acc = CycPoly::zero();
        for k in 0..g.num_classes() {
            let term = self.values[k].conj() * other.values[k].clone();
            acc = acc + term.scale(&rat(g.class_size(k) as i64));
        }
        Ok(acc.scale(&rat_frac(1, g.order() as i64)))
    }

    /// Multiplicities against every irreducible character and the resulting
    /// verdict.
    pub fn decompose(&self) -> Result<Decomposition> {
        let table = self.group.character_table()?;
        let multiplicities = table
            .irreducibles()
            .iter()
            .map(|chi| chi.inner_product(self))
            .collect::<Result<Vec<_>>>()?;
        let verdict = Verdict::of(&multiplicities);
        Ok(Decomposition {
            multiplicities,
            verdict,
        })
    }

    /// Whether every `t`-coefficient is a character (nonnegative integer
    /// combination of irreducibles).
    pub fn is_effective(&self) -> Result<bool> {
        Ok(self.decompose()?.verdict == Verdict::Effective)
    }

    /// `self ≤_G other`: `other − self` is effective.
    pub fn order_leq(&self, other: &ClassFunction) -> Result<bool> {
        other.try_sub(self)?.is_effective()
    }

    /// Restriction to a subgroup.
    pub fn restrict(&self, sub: &Arc<PermGroup>) -> Result<ClassFunction> {
        if !sub.is_subgroup_of(&self.group) {
            return Err(invalid("not a subgroup"));
        }
        Ok(ClassFunction::from_fn(sub, |k| {
            self.value_at(sub.class_rep(k)).expect("contained").clone()
        }))
    }

    /// `{"classes": [...], "values": [...]}` with each value a list over
    /// powers of `t` of coefficient lists over powers of `ζ_e`.
    pub fn to_json(&self) -> serde_json::Value {
        let g = &self.group;
        let e = g.exponent();
        let classes: Vec<String> = (0..g.num_classes()).map(|k| g.class_label(k)).collect();
        let values: Vec<serde_json::Value> = self
            .values
            .iter()
            .map(|v| {
                serde_json::Value::Array(v.coeffs().iter().map(|c| cyc_coeffs_json(c, e)).collect())
            })
            .collect();
        json!({"classes": classes, "values": values})
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &ClassFunction) -> bool {
        self.group.same_as(&other.group) && self.values == other.values
    }
}

impl fmt::Display for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &ClassFunction {
    type Output = ClassFunction;

    /// Panics when the operands belong to different groups; use
    /// [`ClassFunction::try_add`] for a checked sum.
    fn add(self, rhs: &ClassFunction) -> ClassFunction {
        self.try_add(rhs)
            .expect("class functions on the same group")
    }
}

impl Sub for &ClassFunction {
    type Output = ClassFunction;

    fn sub(self, rhs: &ClassFunction) -> ClassFunction {
        self.try_sub(rhs)
            .expect("class functions on the same group")
    }
}

impl Mul for &ClassFunction {
    type Output = ClassFunction;

    fn mul(self, rhs: &ClassFunction) -> ClassFunction {
        self.try_mul(rhs)
            .expect("class functions on the same group")
    }
}

impl Neg for &ClassFunction {
    type Output = ClassFunction;

    fn neg(self) -> ClassFunction {
        self.map(|v| -v.clone())
    }
}

/// Classification of a class function by its irreducible multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Every multiplicity is a polynomial in `t` with nonnegative integer
    /// coefficients.
    Effective,
    /// Integer multiplicities, some negative.
    Virtual,
    /// Some multiplicity is not an integer.
    NonCharacter,
}

impl Verdict {
    fn of(multiplicities: &[CycPoly]) -> Verdict {
        let mut negative = false;
        for m in multiplicities {
            for c in m.coeffs() {
                match c.to_rational() {
                    Some(q) if q.is_integer() => negative |= q.is_negative(),
                    _ => return Verdict::NonCharacter,
                }
            }
        }
        if negative {
            Verdict::Virtual
        } else {
            Verdict::Effective
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Effective => "EFFECTIVE",
            Verdict::Virtual => "VIRTUAL",
            Verdict::NonCharacter => "NON-CHARACTER",
        })
    }
}

/// Multiplicities `⟨χ_i, ψ⟩` in character-table order.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub multiplicities: Vec<CycPoly>,
    pub verdict: Verdict,
}

impl Decomposition {
    /// Multiplicities as integers, for constant-in-`t` class functions with
    /// integral multiplicities.
    pub fn integer_multiplicities(&self) -> Option<Vec<BigInt>> {
        self.multiplicities
            .iter()
            .map(|m| {
                if !m.is_constant() {
                    return None;
                }
                let q = m.coeff(0).to_rational()?;
                q.is_integer().then(|| q.to_integer())
            })
            .collect()
    }
}

/// `χ↑(g) = (1/|H|) Σ_{k ∈ G : kgk⁻¹ ∈ H} χ(kgk⁻¹)`.
pub fn induce(chi: &ClassFunction, g: &Arc<PermGroup>) -> Result<ClassFunction> {
    let h = chi.group();
    if !h.is_subgroup_of(g) {
        return Err(invalid("induction from a group that is not a subgroup"));
    }
    let inverses: Vec<Perm> = g.elements().iter().map(Perm::inverse).collect();
    let scale = rat_frac(1, h.order() as i64);
    Ok(ClassFunction::from_fn(g, |k| {
        let rep = g.class_rep(k);
        let mut acc = CycPoly::zero();
        for (x, xi) in g.elements().iter().zip(&inverses) {
            let c = x.compose(rep).compose(xi);
            if let Some(v) = chi.value_at(&c) {
                acc = acc + v.clone();
            }
        }
        acc.scale(&scale)
    }))
}

/// The permutation character `g ↦ |Fix_g(X)|` of an action of `G` on
/// `{0, …, points-1}`. The action is checked to be a permutation for every
/// generator.
pub fn permutation_character(
    g: &Arc<PermGroup>,
    points: usize,
    act: impl Fn(&Perm, usize) -> usize,
) -> Result<ClassFunction> {
    for s in g.generators() {
        let mut hit = vec![false; points];
        for x in 0..points {
            let y = act(s, x);
            if y >= points || std::mem::replace(&mut hit[y], true) {
                return Err(invalid("action does not permute the point set"));
            }
        }
    }
    Ok(ClassFunction::from_fn(g, |k| {
        let rep = g.class_rep(k);
        let fixed = (0..points).filter(|&x| act(rep, x) == x).count();
        CycPoly::constant(Cyc::from_int(fixed as i64))
    }))
}
