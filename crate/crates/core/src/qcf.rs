//! Quasisymmetric class functions and polynomial class functions.
//!
//! A quasisymmetric class function assigns to every conjugacy class of a
//! group a quasisymmetric expression; equivalently, it is a quasisymmetric
//! expression whose coefficients are class functions. Both views are
//! provided: per-class values, and per-composition coefficient class
//! functions.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde_json::json;

use crate::compositions::IntComposition;
use crate::cyclotomic::Cyc;
use crate::error::{invalid, Error, Result};
use crate::groups::{ClassFunction, PermGroup};
use crate::qsym::{Basis, PolyInBinomials, QSymExpr};
use crate::ring::{rat, rat_frac, JsonCoeff, Rational, RationalAlgebra};
use crate::{CycPoly, TPoly};

/// Coefficient rings whose elements embed into class-function values.
pub trait ClassValue: RationalAlgebra + JsonCoeff {
    fn to_class_value(&self) -> CycPoly;
}

impl ClassValue for Rational {
    fn to_class_value(&self) -> CycPoly {
        CycPoly::constant(Cyc::from_rational(self.clone()))
    }
}

impl ClassValue for TPoly {
    fn to_class_value(&self) -> CycPoly {
        self.map(|c| Cyc::from_rational(c.clone()))
    }
}

/// One quasisymmetric expression per conjugacy class, all of the same
/// degree and basis.
#[derive(Clone)]
pub struct QsymClassFunction<R> {
    group: Arc<PermGroup>,
    values: Vec<QSymExpr<R>>,
}

impl<R: ClassValue> QsymClassFunction<R> {
    pub fn new(group: Arc<PermGroup>, values: Vec<QSymExpr<R>>) -> Result<Self> {
        if values.len() != group.num_classes() {
            return Err(invalid(format!(
                "{} values for {} conjugacy classes",
                values.len(),
                group.num_classes()
            )));
        }
        if let Some(first) = values.first() {
            if values
                .iter()
                .any(|v| v.degree() != first.degree() || v.basis() != first.basis())
            {
                return Err(invalid("class values differ in degree or basis"));
            }
        }
        Ok(QsymClassFunction { group, values })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn values(&self) -> &[QSymExpr<R>] {
        &self.values
    }

    /// Value at class `k`.
    pub fn value(&self, k: usize) -> &QSymExpr<R> {
        &self.values[k]
    }

    /// Value at the identity: the non-equivariant invariant.
    pub fn identity_value(&self) -> &QSymExpr<R> {
        &self.values[0]
    }

    pub fn degree(&self) -> usize {
        self.values[0].degree()
    }

    pub fn basis(&self) -> Basis {
        self.values[0].basis()
    }

    pub fn map_values(&self, f: impl Fn(usize, &QSymExpr<R>) -> QSymExpr<R>) -> Self {
        QsymClassFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(k, v)| f(k, v))
                .collect(),
        }
    }

    pub fn to_basis(&self, basis: Basis) -> Self {
        self.map_values(|_, v| v.to_basis(basis))
    }

    /// Classwise antipode.
    pub fn antipode(&self) -> Self {
        self.map_values(|_, v| v.antipode())
    }

    /// `g ↦ (−1)^d sgn(g) S(self(g))`, the involution in reciprocity
    /// statements.
    pub fn reciprocity_image(&self) -> Self {
        let d = self.degree();
        self.map_values(|k, v| {
            let s = self.group.class_sign(k) * if d.is_multiple_of(2) { 1 } else { -1 };
            let a = v.antipode();
            if s == 1 {
                a
            } else {
                a.neg()
            }
        })
    }

    /// Every composition with a nonzero coefficient at some class.
    pub fn support(&self) -> Vec<IntComposition> {
        let set: BTreeSet<IntComposition> = self
            .values
            .iter()
            .flat_map(|v| v.terms().map(|(a, _)| a.clone()))
            .collect();
        set.into_iter().collect()
    }

    /// The class function `g ↦ [B_α] self(g)` in the current basis.
    pub fn coefficient(&self, alpha: &IntComposition) -> ClassFunction {
        ClassFunction::from_fn(&self.group, |k| {
            self.values[k].coeff(alpha).to_class_value()
        })
    }

    /// Nonzero coefficient class functions, by composition.
    pub fn coefficients(&self) -> Vec<(IntComposition, ClassFunction)> {
        self.support()
            .into_iter()
            .map(|a| {
                let c = self.coefficient(&a);
                (a, c)
            })
            .collect()
    }

    /// The polynomial class function `g ↦ ps(self(g))`.
    pub fn principal_specialization(&self) -> PolyClassFunction {
        let d = self.degree();
        let per_class: Vec<Vec<CycPoly>> = self
            .values
            .iter()
            .map(|v| {
                v.principal_specialization()
                    .f_vector()
                    .iter()
                    .map(ClassValue::to_class_value)
                    .collect()
            })
            .collect();
        let f = (0..=d)
            .map(|i| ClassFunction::from_fn(&self.group, |k| per_class[k][i].clone()))
            .collect();
        PolyClassFunction {
            group: self.group.clone(),
            f,
        }
    }

    /// The equivariant h-vector `h_i = Σ_{ℓ(α)=i} [F_α]`.
    pub fn h_vector(&self) -> Vec<ClassFunction> {
        let d = self.degree();
        let per_class: Vec<Vec<R>> = self.values.iter().map(|v| v.h_polynomial()).collect();
        (0..=d)
            .map(|i| ClassFunction::from_fn(&self.group, |k| per_class[k][i].to_class_value()))
            .collect()
    }

    fn weighted_average(&self, signed: bool) -> Result<QSymExpr<R>> {
        let g = &self.group;
        let mut acc = QSymExpr::zero(self.degree(), self.basis());
        for k in 0..g.num_classes() {
            let mut w = g.class_size(k) as i64;
            if signed {
                w *= g.class_sign(k);
            }
            acc = acc.try_add(&self.values[k].map_coeffs(|c| c.scale(&rat(w))))?;
        }
        Ok(acc.map_coeffs(|c| c.scale(&rat_frac(1, g.order() as i64))))
    }

    /// `(1/|G|) Σ_g self(g)`; its coefficients count orbits, so a
    /// non-integral coefficient is reported as an integrity error.
    pub fn orbital(&self) -> Result<QSymExpr<R>> {
        let q = self.weighted_average(false)?;
        check_integral(&q, "orbital")?;
        Ok(q)
    }

    /// `(1/|G|) Σ_g sgn(g) self(g)`; counts orbits of coeven elements.
    pub fn coeven(&self) -> Result<QSymExpr<R>> {
        let q = self.weighted_average(true)?;
        check_integral(&q, "coeven")?;
        Ok(q)
    }

    /// Classwise equality on the same group.
    pub fn same_values(&self, other: &Self) -> bool {
        self.group.same_as(&other.group) && self.values == other.values
    }

    /// First class and composition at which two class functions differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, Option<IntComposition>)> {
        for k in 0..self.values.len() {
            let (a, b) = (&self.values[k], &other.values[k]);
            if a == b {
                continue;
            }
            if a.degree() != b.degree() || a.basis() != b.basis() {
                return Some((k, None));
            }
            let keys: BTreeSet<&IntComposition> =
                a.terms().chain(b.terms()).map(|(c, _)| c).collect();
            let alpha = keys.into_iter().find(|c| a.coeff(c) != b.coeff(c)).cloned();
            return Some((k, alpha));
        }
        None
    }

    /// `{"degree", "basis", "classes", "class_sizes", "rows": [{"alpha",
    /// "values": [one coefficient per class]}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let g = &self.group;
        let classes: Vec<String> = (0..g.num_classes()).map(|k| g.class_label(k)).collect();
        let sizes: Vec<usize> = (0..g.num_classes()).map(|k| g.class_size(k)).collect();
        let rows: Vec<serde_json::Value> = self
            .support()
            .iter()
            .map(|a| {
                let vals: Vec<serde_json::Value> =
                    self.values.iter().map(|v| v.coeff(a).to_json()).collect();
                json!({"alpha": a.parts(), "values": vals})
            })
            .collect();
        json!({
            "degree": self.degree(),
            "basis": self.basis().to_string(),
            "classes": classes,
            "class_sizes": sizes,
            "rows": rows,
        })
    }
}

impl QsymClassFunction<TPoly> {
    /// The class function `g ↦ [t^k] self(g)`.
    pub fn t_coefficient(&self, k: usize) -> QsymClassFunction<Rational> {
        QsymClassFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .map(|v| v.map_coeffs(|p| p.coeff(k)))
                .collect(),
        }
    }

    /// Largest power of `t` occurring.
    pub fn t_degree(&self) -> usize {
        self.values
            .iter()
            .flat_map(|v| {
                v.terms()
                    .filter_map(|(_, p)| p.degree())
                    .collect::<Vec<_>>()
            })
            .max()
            .unwrap_or(0)
    }
}

impl<R: ClassValue> fmt::Display for QsymClassFunction<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.values.len() {
            writeln!(f, "{}\t{}", self.group.class_label(k), self.values[k])?;
        }
        Ok(())
    }
}

fn check_integral<R: ClassValue>(q: &QSymExpr<R>, what: &str) -> Result<()> {
    for (a, c) in q.terms() {
        let v = c.to_class_value();
        for x in v.coeffs() {
            if !x.to_rational().is_some_and(|r| r.is_integer()) {
                return Err(Error::Integrity(format!(
                    "{what} coefficient of {a} is not an integer: {c}"
                )));
            }
        }
    }
    Ok(())
}

/// A polynomial in `x` with class-function coefficients, stored by its
/// equivariant f-vector: `p = Σ_i f_i binom(x, i)`.
#[derive(Clone)]
pub struct PolyClassFunction {
    group: Arc<PermGroup>,
    f: Vec<ClassFunction>,
}

impl PolyClassFunction {
    pub fn new(group: Arc<PermGroup>, f: Vec<ClassFunction>) -> Result<Self> {
        if f.iter().any(|c| !c.group().same_as(&group)) {
            return Err(invalid("f-vector entries belong to a different group"));
        }
        Ok(PolyClassFunction { group, f })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.f.len().saturating_sub(1)
    }

    pub fn f_vector(&self) -> &[ClassFunction] {
        &self.f
    }

    fn per_class(&self, k: usize) -> PolyInBinomials<CycPoly> {
        PolyInBinomials::new(self.f.iter().map(|c| c.value(k).clone()).collect())
    }

    fn with_per_class(&self, polys: Vec<PolyInBinomials<CycPoly>>) -> Self {
        let len = self.f.len();
        PolyClassFunction {
            group: self.group.clone(),
            f: (0..len)
                .map(|i| ClassFunction::from_fn(&self.group, |k| polys[k].f_vector()[i].clone()))
                .collect(),
        }
    }

    /// `q` with `q(n) = p(−n)` classwise.
    pub fn negate_variable(&self) -> Self {
        let polys = (0..self.group.num_classes())
            .map(|k| self.per_class(k).negate_variable())
            .collect();
        self.with_per_class(polys)
    }

    /// Equivariant h-vector: `h(t) = Σ_i f_i t^i (1−t)^{d−i}`.
    pub fn h_vector(&self) -> Vec<ClassFunction> {
        let per: Vec<Vec<CycPoly>> = (0..self.group.num_classes())
            .map(|k| self.per_class(k).h_vector())
            .collect();
        (0..self.f.len())
            .map(|i| ClassFunction::from_fn(&self.group, |k| per[k][i].clone()))
            .collect()
    }

    /// The class function `g ↦ p(n; g)`.
    pub fn eval(&self, n: i64) -> ClassFunction {
        ClassFunction::from_fn(&self.group, |k| self.per_class(k).eval(n))
    }

    /// Classwise `c · p`.
    pub fn scale_by_class(&self, c: &ClassFunction) -> Self {
        PolyClassFunction {
            group: self.group.clone(),
            f: self.f.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        PolyClassFunction {
            group: self.group.clone(),
            f: self.f.iter().map(|x| x.scale_rational(q)).collect(),
        }
    }

    /// Average against the trivial (or sign) character: the polynomial
    /// `(1/|G|) Σ_g [sgn(g)] p(x; g)` in the binomial basis.
    pub fn average(&self, signed: bool) -> PolyInBinomials<CycPoly> {
        let psi = if signed {
            ClassFunction::sign(&self.group)
        } else {
            ClassFunction::trivial(&self.group)
        };
        PolyInBinomials::new(
            self.f
                .iter()
                .map(|c| psi.inner_product(c).expect("same group"))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.f.iter().all(ClassFunction::is_zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({"f_vector": self.f.iter().map(ClassFunction::to_json).collect::<Vec<_>>()})
    }
}

impl PartialEq for PolyClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_as(&other.group) && self.f == other.f
    }
}

impl fmt::Debug for PolyClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.f.iter().map(|c| c.to_string()).collect();
        write!(f, "f = ({})", parts.join(", "))
    }
}
