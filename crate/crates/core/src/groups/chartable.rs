//! Character tables by two independent routes.
//!
//! [`dixon`] splits the class algebra into simultaneous eigenspaces modulo a
//! prime `p ≡ 1 (mod exponent)` and lifts character values to `Q(ζ_e)` by
//! discrete Fourier inversion over eigenvalue multiplicities.
//! [`character_table_oracle`] performs the same eigenspace decomposition
//! directly over the cyclotomic field, using the finitely many algebraic
//! integers a central character value can take as eigenvalue candidates.
//! Only small groups are accepted by the oracle.

use std::collections::HashSet;
use std::sync::Arc;

use num_integer::Roots;
use num_traits::{One, Zero};
use serde_json::json;

use super::classfn::ClassFunction;
use super::group::PermGroup;
use super::linalg::{split_eigenspaces, Field, Fp};
use crate::cyclotomic::Cyc;
use crate::error::{Error, Result};
use crate::ring::{rat, Conjugate, JsonCoeff, Poly, Rational, RationalAlgebra, Ring};
use crate::CycPoly;

/// Largest group order accepted by [`character_table_oracle`].
pub const ORACLE_MAX_ORDER: usize = 24;

/// The irreducible characters of a group, trivial character first, then by
/// degree.
#[derive(Clone)]
pub struct CharacterTable {
    group: Arc<PermGroup>,
    irreducibles: Vec<ClassFunction>,
}

impl CharacterTable {
    pub(crate) fn from_values(group: Arc<PermGroup>, values: &[Vec<Cyc>]) -> Self {
        let irreducibles = values
            .iter()
            .map(|row| {
                ClassFunction::new(
                    group.clone(),
                    row.iter().map(|v| CycPoly::constant(v.clone())).collect(),
                )
                .expect("one value per class")
            })
            .collect();
        CharacterTable {
            group,
            irreducibles,
        }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    /// Value of irreducible `i` at class `k`.
    pub fn value(&self, i: usize, k: usize) -> Cyc {
        self.irreducibles[i].value(k).coeff(0)
    }

    pub fn degrees(&self) -> Vec<Rational> {
        (0..self.len())
            .map(|i| {
                self.value(i, 0)
                    .to_rational()
                    .expect("degrees are rational")
            })
            .collect()
    }

    /// Index of the irreducible equal to `chi`, if any.
    pub fn position(&self, chi: &ClassFunction) -> Option<usize> {
        self.irreducibles.iter().position(|x| x == chi)
    }

    /// Row orthonormality and `Σ deg² = |G|`.
    pub fn is_orthonormal(&self) -> bool {
        let n = self.group.order();
        let deg_sq: Rational = self.degrees().iter().map(|d| d * d).sum();
        if deg_sq != rat(n as i64) {
            return false;
        }
        for (i, a) in self.irreducibles.iter().enumerate() {
            for (j, b) in self.irreducibles.iter().enumerate() {
                let ip = a.inner_product(b).expect("same group");
                let want = if i == j {
                    CycPoly::one()
                } else {
                    CycPoly::zero()
                };
                if ip != want {
                    return false;
                }
            }
        }
        true
    }

    /// `{"exponent": e, "classes": [...], "class_sizes": [...],
    /// "characters": [[[c_0, …, c_{φ(e)-1}], …], …]}` with each value given
    /// by its coefficients over powers of `ζ_e`.
    pub fn to_json(&self) -> serde_json::Value {
        let g = &self.group;
        let e = g.exponent();
        let classes: Vec<String> = (0..g.num_classes()).map(|k| g.class_label(k)).collect();
        let sizes: Vec<usize> = (0..g.num_classes()).map(|k| g.class_size(k)).collect();
        let rows: Vec<serde_json::Value> = (0..self.len())
            .map(|i| {
                serde_json::Value::Array(
                    (0..g.num_classes())
                        .map(|k| cyc_coeffs_json(&self.value(i, k), e))
                        .collect(),
                )
            })
            .collect();
        json!({"exponent": e, "classes": classes, "class_sizes": sizes, "characters": rows})
    }
}

/// Coefficients of `v` over powers of `ζ_e`; falls back to the value's own
/// field when it does not embed.
pub(crate) fn cyc_coeffs_json(v: &Cyc, e: u32) -> serde_json::Value {
    match v.coeffs_in(e) {
        Some(cs) => serde_json::Value::Array(cs.iter().map(JsonCoeff::to_json).collect()),
        None => {
            json!({"order": v.order(), "coeffs": v.coeffs().iter().map(JsonCoeff::to_json).collect::<Vec<_>>()})
        }
    }
}

/// `c[j][k][l]`: number of `x ∈ K_j` with `x⁻¹ z_l ∈ K_k`, where `z_l` is
/// the representative of class `l`. These are the structure constants of
/// the class algebra: `K_j K_k = Σ_l c[j][k][l] K_l`.
fn structure_constants(g: &PermGroup) -> Vec<Vec<Vec<u64>>> {
    let r = g.num_classes();
    let mut c = vec![vec![vec![0u64; r]; r]; r];
    let inverses: Vec<_> = g.elements().iter().map(|x| x.inverse()).collect();
    for l in 0..r {
        let z = g.class_rep(l);
        for (i, xi) in inverses.iter().enumerate() {
            let j = g.class_of_index(i);
            let k = g.class_of(&xi.compose(z)).expect("closed");
            c[j][k][l] += 1;
        }
    }
    c
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    (2..)
        .take_while(|d| d * d <= n)
        .all(|d| !n.is_multiple_of(d))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least prime `p ≡ 1 (mod e)` with `p > 2√n` and `p ∤ n`.
fn choose_prime(n: u64, e: u64) -> u64 {
    let mut p = e + 1;
    loop {
        if p * p > 4 * n && !n.is_multiple_of(p) && is_prime(p) {
            return p;
        }
        p += e;
    }
}

fn primitive_root(p: u64) -> Fp {
    let factors = prime_factors(p - 1);
    (2..p)
        .map(|g| Fp::new(g as i64, p))
        .find(|g| factors.iter().all(|&q| g.pow((p - 1) / q).v != 1))
        .expect("F_p^* is cyclic")
}

fn canonical_order(group: &PermGroup, mut rows: Vec<Vec<Cyc>>) -> Vec<Vec<Cyc>> {
    let e = group.exponent();
    rows.sort_by_cached_key(|row| {
        let trivial = row.iter().all(|v| *v == Cyc::one());
        let deg = row[0].to_rational().unwrap_or_else(Rational::zero);
        let key: Vec<Vec<Rational>> = row
            .iter()
            .map(|v| v.coeffs_in(e).unwrap_or_else(|| v.coeffs().to_vec()))
            .collect();
        (!trivial, deg, key)
    });
    rows
}

fn validate(group: &PermGroup, rows: &[Vec<Cyc>], method: &str) -> Result<()> {
    let n = group.order();
    let r = group.num_classes();
    if rows.len() != r {
        return Err(Error::Integrity(format!(
            "{method}: found {} irreducibles for {r} classes",
            rows.len()
        )));
    }
    for (i, a) in rows.iter().enumerate() {
        for (j, b) in rows.iter().enumerate().skip(i) {
            let ip = (0..r).fold(Cyc::zero(), |acc, k| {
                acc + (a[k].conj() * b[k].clone()).scale(&rat(group.class_size(k) as i64))
            });
            let want = if i == j {
                Cyc::from_int(n as i64)
            } else {
                Cyc::zero()
            };
            if ip != want {
                return Err(Error::Integrity(format!(
                    "{method}: characters {i} and {j} are not orthonormal"
                )));
            }
        }
    }
    Ok(())
}

/// Irreducible character values by Dixon's method, one row per character.
pub(crate) fn dixon(group: &PermGroup) -> Result<Vec<Vec<Cyc>>> {
    let n = group.order() as u64;
    let r = group.num_classes();
    if r == 1 {
        return Ok(vec![vec![Cyc::one()]]);
    }
    let e = group.exponent() as u64;
    let p = choose_prime(n, e);
    let f = |v: i64| Fp::new(v, p);
    let zero = f(0);
    let c = structure_constants(group);
    let mut spaces: Vec<Vec<Vec<Fp>>> = vec![(0..r)
        .map(|i| (0..r).map(|k| f((i == k) as i64)).collect())
        .collect()];
    for (j, cj) in c.iter().enumerate().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let a: Vec<Vec<Fp>> = cj
            .iter()
            .map(|row| row.iter().map(|&x| f(x as i64)).collect())
            .collect();
        let mut next = Vec::new();
        for s in spaces {
            if s.len() == 1 {
                next.push(s);
                continue;
            }
            let parts =
                split_eigenspaces(&a, &s, (0..p).map(|v| f(v as i64)), &zero).ok_or_else(|| {
                    Error::Integrity(format!("class matrix {j} is not diagonalizable mod {p}"))
                })?;
            next.extend(parts);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Integrity(
            "class algebra eigenspaces did not separate".into(),
        ));
    }

    let inv_class: Vec<usize> = (0..r).map(|k| group.inverse_class(k)).collect();
    let sizes: Vec<Fp> = (0..r).map(|k| f(group.class_size(k) as i64)).collect();
    let powers = group.power_map();
    let z = primitive_root(p).pow((p - 1) / e);
    let z_inv = z.inv();
    let e_inv = f(e as i64).inv();
    let max_deg = (n as usize).sqrt() as i64;

    let mut rows = Vec::with_capacity(r);
    for s in spaces {
        let v = &s[0];
        if v[0].is_zero_elem() {
            return Err(Error::Integrity("central character vanishes at 1".into()));
        }
        let norm = v[0].inv();
        let w: Vec<Fp> = v.iter().map(|x| x.mul(&norm)).collect();
        let s_sum = (0..r).fold(zero, |acc, l| {
            acc.add(&w[l].mul(&w[inv_class[l]]).mul(&sizes[l].inv()))
        });
        let d_sq = f(n as i64).mul(&s_sum.inv());
        let d = (1..=max_deg)
            .find(|&d| f(d * d) == d_sq)
            .ok_or_else(|| Error::Integrity("no integral character degree".into()))?;
        let theta: Vec<Fp> = (0..r)
            .map(|l| f(d).mul(&w[l]).mul(&sizes[l].inv()))
            .collect();
        let mut row = Vec::with_capacity(r);
        for pk in &powers {
            let mut coeffs = vec![Rational::zero(); e as usize];
            for (jj, cj) in coeffs.iter_mut().enumerate() {
                let m = (0..e as usize).fold(zero, |acc, l| {
                    acc.add(&theta[pk[l]].mul(&z_inv.pow(((jj * l) as u64) % e)))
                });
                let m = m.mul(&e_inv).v;
                if m > d as u64 {
                    return Err(Error::Integrity(format!(
                        "eigenvalue multiplicity {m} exceeds degree {d}"
                    )));
                }
                *cj = rat(m as i64);
            }
            row.push(Cyc::from_poly(e as u32, coeffs));
        }
        rows.push(row);
    }
    let rows = canonical_order(group, rows);
    validate(group, &rows, "Dixon")?;
    Ok(rows)
}

/// All multisets of size `d` drawn from `0..e`, as exponent-count vectors.
fn multisets(e: usize, d: usize) -> Vec<Vec<i64>> {
    fn rec(e: usize, start: usize, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..e {
            cur[i] += 1;
            rec(e, i, left - 1, cur, out);
            cur[i] -= 1;
        }
    }
    let mut out = Vec::new();
    rec(e, 0, d, &mut vec![0; e], &mut out);
    out
}

/// Characteristic polynomial `det(xI − A)` of an integer matrix, low degree
/// first, by the Faddeev–LeVerrier recurrence.
fn char_poly(a: &[Vec<u64>]) -> Vec<Rational> {
    let r = a.len();
    let a: Vec<Vec<Rational>> = a
        .iter()
        .map(|row| row.iter().map(|&x| rat(x as i64)).collect())
        .collect();
    let mut coeffs = vec![rat(0); r + 1];
    coeffs[r] = rat(1);
    // M_k = A·M_{k−1} + c_{r−k+1} I, with M_0 = 0 and c_r = 1.
    let mut m: Vec<Vec<Rational>> = vec![vec![rat(0); r]; r];
    for k in 1..=r {
        let mut am = vec![vec![rat(0); r]; r];
        for i in 0..r {
            for j in 0..r {
                let mut acc = rat(0);
                for l in 0..r {
                    acc += &a[i][l] * &m[l][j];
                }
                am[i][j] = acc;
            }
        }
        for (i, row) in am.iter_mut().enumerate() {
            row[i] += &coeffs[r - k + 1];
        }
        m = am;
        let mut tr = rat(0);
        for i in 0..r {
            for l in 0..r {
                tr += &a[i][l] * &m[l][i];
            }
        }
        coeffs[r - k] = -tr / rat(k as i64);
    }
    coeffs
}

/// Independent character table computation for groups of order at most
/// [`ORACLE_MAX_ORDER`], by exact diagonalization of the class matrices over
/// `Q(ζ_e)`.
pub fn character_table_oracle(group: &Arc<PermGroup>) -> Result<CharacterTable> {
    let n = group.order();
    if n > ORACLE_MAX_ORDER {
        return Err(Error::Resource(format!(
            "oracle accepts groups of order at most {ORACLE_MAX_ORDER}, got {n}"
        )));
    }
    let r = group.num_classes();
    let e = group.exponent() as usize;
    let c = structure_constants(group);
    let zero = Cyc::zero();

    // Every character value is a sum of d roots of unity of order dividing e.
    let mut root_sums: Vec<(usize, Cyc)> = Vec::new();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d) && d * d <= n) {
        let mut seen = HashSet::new();
        for ms in multisets(e, d) {
            let v = Cyc::from_poly(e as u32, ms.into_iter().map(rat).collect());
            if seen.insert(v.coeffs_in(e as u32).expect("same field")) {
                root_sums.push((d, v));
            }
        }
    }

    let mut spaces: Vec<Vec<Vec<Cyc>>> = vec![(0..r)
        .map(|i| (0..r).map(|k| Cyc::from_int((i == k) as i64)).collect())
        .collect()];
    for (j, cj) in c.iter().enumerate().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let a: Vec<Vec<Cyc>> = cj
            .iter()
            .map(|row| row.iter().map(|&x| Cyc::from_int(x as i64)).collect())
            .collect();
        let size = group.class_size(j) as i64;
        let mut seen = HashSet::new();
        let cp = Poly::from_coeffs(char_poly(cj).into_iter().map(Cyc::from).collect());
        let candidates: Vec<Cyc> = root_sums
            .iter()
            .map(|(d, s)| s.scale(&crate::ring::rat_frac(size, *d as i64)))
            .filter(|v| seen.insert(v.coeffs_in(e as u32).expect("same field")))
            .filter(|v| cp.eval(v).is_zero())
            .collect();
        let mut next = Vec::new();
        for s in spaces {
            if s.len() == 1 {
                next.push(s);
                continue;
            }
            let parts =
                split_eigenspaces(&a, &s, candidates.iter().cloned(), &zero).ok_or_else(|| {
                    Error::Integrity(format!("class matrix {j} has an unexpected eigenvalue"))
                })?;
            next.extend(parts);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Integrity(
            "class algebra eigenspaces did not separate".into(),
        ));
    }

    let mut rows = Vec::with_capacity(r);
    for s in spaces {
        let v = &s[0];
        let norm = Field::inv(&v[0]);
        let w: Vec<Cyc> = v.iter().map(|x| x.clone() * norm.clone()).collect();
        let s_sum = (0..r).fold(Cyc::zero(), |acc, l| {
            acc + (w[l].clone() * w[l].conj())
                .scale(&crate::ring::rat_frac(1, group.class_size(l) as i64))
        });
        let d_sq = s_sum
            .inv()
            .and_then(|x| x.scale(&rat(n as i64)).to_rational())
            .ok_or_else(|| Error::Integrity("degree is not rational".into()))?;
        let d = (1..=n as i64)
            .find(|&d| rat(d * d) == d_sq)
            .ok_or_else(|| Error::Integrity(format!("{d_sq} is not a square degree")))?;
        rows.push(
            (0..r)
                .map(|l| w[l].scale(&crate::ring::rat_frac(d, group.class_size(l) as i64)))
                .collect(),
        );
    }
    let rows = canonical_order(group, rows);
    validate(group, &rows, "oracle")?;
    Ok(CharacterTable::from_values(group.clone(), &rows))
}
