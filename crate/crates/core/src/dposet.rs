//! Double posets, their D-set compositions, and the equivariant
//! D-partition enumerator.
//!
//! A double poset is a ground set with two partial orders `≤_1`, `≤_2`. A
//! map `f: N → ℕ` is a D-partition when it is weakly increasing along `≤_1`
//! and strictly increasing on inversion pairs (`x <_1 y` with `y <_2 x`).
//! Grouping a D-partition by its level sets gives a D-set composition: every
//! prefix union is a `≤_1`-ideal and no block contains an inversion.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compositions::{for_each_atom_composition, GroundSet, IntComposition};
use crate::error::{invalid, Error, Result};
use crate::groups::{Perm, PermGroup};
use crate::qcf::{PolyClassFunction, QsymClassFunction};
use crate::qsym::{Basis, QSymExpr};
use crate::ring::{rat, Rational};
use crate::Limits;

#[inline]
fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| mask >> i & 1 == 1)
}

/// Reflexive-transitive closure of a relation given as up-set masks, or an
/// error naming two elements that the closure makes mutually comparable.
fn close(ground: &GroundSet, mut up: Vec<u32>, which: &str) -> Result<Vec<u32>> {
    let n = up.len();
    for (i, u) in up.iter_mut().enumerate() {
        *u |= 1 << i;
    }
    for k in 0..n {
        for i in 0..n {
            if up[i] >> k & 1 == 1 {
                up[i] |= up[k];
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if up[i] >> j & 1 == 1 && up[j] >> i & 1 == 1 {
                return Err(invalid(format!(
                    "{which} is not antisymmetric: {} and {} are mutually related",
                    ground.label(i),
                    ground.label(j)
                )));
            }
        }
    }
    Ok(up)
}

fn transpose(up: &[u32]) -> Vec<u32> {
    let n = up.len();
    (0..n)
        .map(|j| {
            (0..n)
                .filter(|&i| up[i] >> j & 1 == 1)
                .fold(0, |m, i| m | 1 << i)
        })
        .collect()
}

/// A double poset `(N, ≤_1, ≤_2)` with a positive weight on each element.
#[derive(Clone, PartialEq, Eq)]
pub struct DoublePoset {
    ground: GroundSet,
    /// `up1[x] = {y : x ≤_1 y}`, reflexive.
    up1: Vec<u32>,
    down1: Vec<u32>,
    up2: Vec<u32>,
    down2: Vec<u32>,
    /// `inv[x] = {y : (x, y) is an inversion}`.
    inv: Vec<u32>,
    weights: Vec<usize>,
}

impl DoublePoset {
    /// Builds a double poset from arbitrary relation lists `x ≤ y` (covers or
    /// full relations); both are closed reflexively and transitively and
    /// then checked for antisymmetry. Weights default to 1.
    pub fn new<S: AsRef<str>>(elements: &[S], rel1: &[(S, S)], rel2: &[(S, S)]) -> Result<Self> {
        let ground = GroundSet::new(elements.iter().map(|s| s.as_ref()))?;
        Limits::check_ground_set(ground.len())?;
        let lookup = |rel: &[(S, S)]| -> Result<Vec<(usize, usize)>> {
            rel.iter()
                .map(|(x, y)| Ok((ground.index(x.as_ref())?, ground.index(y.as_ref())?)))
                .collect()
        };
        let r1 = lookup(rel1)?;
        let r2 = lookup(rel2)?;
        let n = ground.len();
        DoublePoset::from_pairs(ground, &r1, &r2, vec![1; n])
    }

    pub(crate) fn from_pairs(
        ground: GroundSet,
        rel1: &[(usize, usize)],
        rel2: &[(usize, usize)],
        weights: Vec<usize>,
    ) -> Result<Self> {
        let n = ground.len();
        let mut up1 = vec![0u32; n];
        let mut up2 = vec![0u32; n];
        for &(x, y) in rel1 {
            up1[x] |= 1 << y;
        }
        for &(x, y) in rel2 {
            up2[x] |= 1 << y;
        }
        let up1 = close(&ground, up1, "first order")?;
        let up2 = close(&ground, up2, "second order")?;
        Ok(DoublePoset::from_closed(ground, up1, up2, weights))
    }

    fn from_closed(ground: GroundSet, up1: Vec<u32>, up2: Vec<u32>, weights: Vec<usize>) -> Self {
        let down1 = transpose(&up1);
        let down2 = transpose(&up2);
        let inv = (0..ground.len())
            .map(|x| (up1[x] & down2[x]) & !(1 << x))
            .collect();
        DoublePoset {
            ground,
            up1,
            down1,
            up2,
            down2,
            inv,
            weights,
        }
    }

    /// Replaces the weight function; unlisted elements keep weight 1.
    pub fn with_weights(mut self, weights: &BTreeMap<String, usize>) -> Result<Self> {
        let mut w = vec![1; self.len()];
        for (label, &v) in weights {
            if v == 0 {
                return Err(invalid(format!("weight of {label:?} must be positive")));
            }
            w[self.ground.index(label)?] = v;
        }
        self.weights = w;
        Ok(self)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    /// Element weights, indexed like the ground set.
    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn total_weight(&self) -> usize {
        self.weights.iter().sum()
    }

    pub fn has_unit_weights(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// `x ≤_1 y` by index.
    pub fn leq1(&self, x: usize, y: usize) -> bool {
        self.up1[x] >> y & 1 == 1
    }

    /// `x ≤_2 y` by index.
    pub fn leq2(&self, x: usize, y: usize) -> bool {
        self.up2[x] >> y & 1 == 1
    }

    /// `y` covers `x` in `≤_1`.
    pub fn covers1(&self, x: usize, y: usize) -> bool {
        x != y && self.leq1(x, y) && (self.up1[x] & self.down1[y]).count_ones() == 2
    }

    /// Strict relations `x <_i y` as label pairs, for serialization.
    pub fn strict_pairs(&self, which: u8) -> Vec<(String, String)> {
        let up = if which == 1 { &self.up1 } else { &self.up2 };
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in bits(up[x] & !(1 << x)) {
                out.push((
                    self.ground.label(x).to_string(),
                    self.ground.label(y).to_string(),
                ));
            }
        }
        out
    }

    fn pair(&self, x: &str, y: &str) -> Result<(usize, usize)> {
        Ok((self.ground.index(x)?, self.ground.index(y)?))
    }

    /// `(x, y)` is an inversion: `x <_1 y` and `y <_2 x`.
    pub fn is_inversion(&self, x: &str, y: &str) -> Result<bool> {
        let (i, j) = self.pair(x, y)?;
        Ok(self.inv[i] >> j & 1 == 1)
    }

    /// `(x, y)` is an inversion with `y` covering `x` in `≤_1`.
    pub fn is_descent_pair(&self, x: &str, y: &str) -> Result<bool> {
        let (i, j) = self.pair(x, y)?;
        Ok(self.inv[i] >> j & 1 == 1 && self.covers1(i, j))
    }

    /// Every `≤_1`-cover pair is `≤_2`-comparable.
    pub fn is_locally_special(&self) -> bool {
        (0..self.len()).all(|x| {
            bits(self.up1[x]).all(|y| !self.covers1(x, y) || self.leq2(x, y) || self.leq2(y, x))
        })
    }

    /// The dual: `≤_1` reversed, `≤_2` and the weights unchanged.
    pub fn dual(&self) -> DoublePoset {
        DoublePoset::from_closed(
            self.ground.clone(),
            self.down1.clone(),
            self.up2.clone(),
            self.weights.clone(),
        )
    }

    /// Whether `mask` is a `≤_1`-order ideal.
    pub fn is_ideal(&self, mask: u32) -> bool {
        bits(mask).all(|x| self.down1[x] & !mask == 0)
    }

    /// Every `≤_1`-order ideal, as element masks.
    pub fn ideals(&self) -> Vec<u32> {
        let full = full_mask(self.len());
        (0..=full).filter(|&m| self.is_ideal(m)).collect()
    }

    /// Whether the elements of `mask` contain an inversion pair.
    pub fn has_inversion_in(&self, mask: u32) -> bool {
        bits(mask).any(|x| self.inv[x] & mask != 0)
    }

    /// Whether the elements of `mask` contain a descent pair.
    pub fn has_descent_pair_in(&self, mask: u32) -> bool {
        bits(mask).any(|x| bits(self.inv[x] & mask).any(|y| self.covers1(x, y)))
    }

    /// Whether `p` preserves both orders and the weights.
    pub fn is_automorphism(&self, p: &Perm) -> bool {
        let n = self.len();
        p.degree() == n
            && (0..n).all(|x| {
                self.weights[x] == self.weights[p.apply(x)]
                    && p.apply_mask(self.up1[x]) == self.up1[p.apply(x)]
                    && p.apply_mask(self.up2[x]) == self.up2[p.apply(x)]
            })
    }

    /// The full automorphism group (respecting weights), by backtracking.
    pub fn automorphisms(&self) -> Result<Arc<PermGroup>> {
        Limits::check_ground_set(self.len())?;
        let n = self.len();
        let signature = |x: usize| {
            (
                self.weights[x],
                self.up1[x].count_ones(),
                self.down1[x].count_ones(),
                self.up2[x].count_ones(),
                self.down2[x].count_ones(),
            )
        };
        let sigs: Vec<_> = (0..n).map(signature).collect();
        let mut found = Vec::new();
        let mut img = Vec::with_capacity(n);
        self.extend_automorphism(&sigs, &mut img, 0, &mut found);
        PermGroup::generate(&self.ground, crate::groups::reduce_generators(found))
    }

    fn extend_automorphism<T: PartialEq>(
        &self,
        sigs: &[T],
        img: &mut Vec<usize>,
        used: u32,
        found: &mut Vec<Perm>,
    ) {
        let x = img.len();
        if x == self.len() {
            let p = Perm::from_images(img.clone()).expect("bijection by construction");
            if !p.is_identity() {
                found.push(p);
            }
            return;
        }
        for y in 0..self.len() {
            if used >> y & 1 == 1 || sigs[x] != sigs[y] {
                continue;
            }
            let consistent = img.iter().enumerate().all(|(z, &iz)| {
                self.leq1(x, z) == self.leq1(y, iz)
                    && self.leq1(z, x) == self.leq1(iz, y)
                    && self.leq2(x, z) == self.leq2(y, iz)
                    && self.leq2(z, x) == self.leq2(iz, y)
            });
            if consistent {
                img.push(y);
                self.extend_automorphism(sigs, img, used | 1 << y, found);
                img.pop();
            }
        }
    }

    /// Errors unless `group` acts on the same ground set by automorphisms.
    pub fn check_group(&self, group: &PermGroup) -> Result<()> {
        if group.ground() != &self.ground {
            return Err(invalid("group acts on a different ground set"));
        }
        if let Some(g) = group.generators().iter().find(|g| !self.is_automorphism(g)) {
            return Err(invalid(format!(
                "{} is not an automorphism of the double poset",
                group.label(g)
            )));
        }
        Ok(())
    }

    /// Visits every D-set composition whose blocks are unions of `atoms`,
    /// as a sequence of block masks.
    pub(crate) fn for_each_set_composition(&self, atoms: &[u32], visit: &mut dyn FnMut(&[u32])) {
        let accept = |prefix: u32, block: u32| {
            let upto = prefix | block;
            bits(block).all(|x| self.down1[x] & !upto == 0 && self.inv[x] & block == 0)
        };
        for_each_atom_composition(atoms, &accept, visit);
    }

    fn block_weight(&self, block: u32) -> usize {
        bits(block).map(|x| self.weights[x]).sum()
    }

    /// `Σ_C M_{w(C)}` over the `g`-fixed D-set compositions `C`, where the
    /// type of `C` lists the block weights. With unit weights this is
    /// `Ω(D, G, x; g)`; with `g` the identity it is the weighted enumerator.
    pub fn omega_at(&self, g: &Perm) -> Result<QSymExpr<Rational>> {
        if !self.is_automorphism(g) {
            return Err(invalid("not an automorphism of the double poset"));
        }
        let atoms: Vec<u32> = g
            .cycles()
            .iter()
            .map(|c| c.iter().fold(0u32, |m, &x| m | 1 << x))
            .collect();
        let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
        self.for_each_set_composition(&atoms, &mut |blocks| {
            let parts: Vec<usize> = blocks.iter().map(|&b| self.block_weight(b)).collect();
            *counts.entry(parts).or_insert(0) += 1;
        });
        QSymExpr::from_terms(
            self.total_weight(),
            Basis::M,
            counts
                .into_iter()
                .map(|(parts, c)| (IntComposition::from_parts_unchecked(parts), rat(c as i64))),
        )
    }

    /// The non-equivariant weighted enumerator `Ω(D, w, x)`.
    pub fn weighted_omega(&self) -> QSymExpr<Rational> {
        self.omega_at(&Perm::identity(self.len()))
            .expect("the identity is an automorphism")
    }

    /// The quasisymmetric class function `g ↦ Ω(D, G, x; g)` in the M basis.
    pub fn omega_qcf(&self, group: &Arc<PermGroup>) -> Result<QsymClassFunction<Rational>> {
        self.check_group(group)?;
        let values = (0..group.num_classes())
            .into_par_iter()
            .map(|k| self.omega_at(group.class_rep(k)))
            .collect::<Result<Vec<_>>>()?;
        QsymClassFunction::new(group.clone(), values)
    }

    /// The order-polynomial class function: the principal specialization of
    /// [`DoublePoset::omega_qcf`].
    pub fn order_poly_cf(&self, group: &Arc<PermGroup>) -> Result<PolyClassFunction> {
        Ok(self.omega_qcf(group)?.principal_specialization())
    }

    /// Number of `g`-fixed D-partitions `N → [n]`, by enumerating all
    /// `n^|N|` maps. An oracle independent of set-composition enumeration.
    pub fn count_partitions(&self, g: &Perm, n: usize) -> u64 {
        let size = self.len();
        let mut f = vec![0usize; size];
        let mut count = 0;
        if n == 0 {
            return (size == 0) as u64;
        }
        loop {
            if self.is_partition(&f) && (0..size).all(|x| f[g.apply(x)] == f[x]) {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == size {
                    return count;
                }
                f[i] += 1;
                if f[i] < n {
                    break;
                }
                f[i] = 0;
                i += 1;
            }
        }
    }

    /// The two defining conditions of a D-partition.
    pub fn is_partition(&self, f: &[usize]) -> bool {
        (0..self.len()).all(|x| {
            bits(self.up1[x]).all(|y| f[x] <= f[y]) && bits(self.inv[x]).all(|y| f[x] < f[y])
        })
    }

    /// The quotient `D/g` on the cycles of `g`: a cycle lies below another
    /// in `≤_i` when some member does, and weights add.
    pub fn quotient(&self, g: &Perm) -> Result<DoublePoset> {
        if !self.is_automorphism(g) {
            return Err(invalid("quotient requires an automorphism"));
        }
        let cycles = g.cycles();
        let sep = if self.ground.compact() { "" } else { "+" };
        let labels: Vec<String> = cycles
            .iter()
            .map(|c| {
                let mut ls: Vec<&str> = c.iter().map(|&x| self.ground.label(x)).collect();
                ls.sort_unstable();
                ls.join(sep)
            })
            .collect();
        let ground = GroundSet::new(&labels)?;
        let pos: Vec<usize> = labels
            .iter()
            .map(|l| ground.index(l).expect("label just inserted"))
            .collect();
        let mut cycle_of = vec![0; self.len()];
        for (k, c) in cycles.iter().enumerate() {
            for &x in c {
                cycle_of[x] = pos[k];
            }
        }
        let mut weights = vec![0; cycles.len()];
        for x in 0..self.len() {
            weights[cycle_of[x]] += self.weights[x];
        }
        let induced = |up: &[u32]| {
            let mut out = vec![0u32; cycles.len()];
            for x in 0..self.len() {
                for y in bits(up[x]) {
                    out[cycle_of[x]] |= 1 << cycle_of[y];
                }
            }
            out
        };
        let integrity = |e: Error| Error::Integrity(format!("quotient is not a double poset: {e}"));
        let up1 = close(&ground, induced(&self.up1), "induced first order").map_err(integrity)?;
        let up2 = close(&ground, induced(&self.up2), "induced second order").map_err(integrity)?;
        Ok(DoublePoset::from_closed(ground, up1, up2, weights))
    }

    /// A D-compatible linear order, as element indices: a topological order
    /// of the `≤_1` Hasse diagram with each cover `x ≺_1 y` directed `x → y`
    /// when `x ≤_2 y` and `y → x` otherwise.
    pub fn compatible_order(&self) -> Result<Vec<usize>> {
        if !self.is_locally_special() {
            return Err(Error::Precondition(
                "a compatible order is only guaranteed for locally special double posets".into(),
            ));
        }
        let n = self.len();
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for x in 0..n {
            for y in bits(self.up1[x]).filter(|&y| self.covers1(x, y)) {
                let (a, b) = if self.leq2(x, y) { (x, y) } else { (y, x) };
                succ[a].push(b);
                indeg[b] += 1;
            }
        }
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&x| indeg[x] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(x) = ready.pop_first() {
            order.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    ready.insert(y);
                }
            }
        }
        if order.len() != n {
            return Err(Error::Integrity("compatibility graph has a cycle".into()));
        }
        Ok(order)
    }

    /// A short human-readable description for reports.
    pub fn describe(&self, group: &PermGroup) -> String {
        format!(
            "double poset on {} elements, group of order {}",
            self.len(),
            group.order()
        )
    }

    /// [`DoublePoset::compatible_order`] as labels.
    pub fn compatible_order_labels(&self) -> Result<Vec<String>> {
        Ok(self
            .compatible_order()?
            .into_iter()
            .map(|x| self.ground.label(x).to_string())
            .collect())
    }

    /// Whether the linear order `order` (element indices, first to last) is
    /// D-compatible: for all `≤_1`-ideals `I ⊆ J`, its restriction to
    /// `J ∖ I` is a `≤_1`-linear extension exactly when `J ∖ I` has no
    /// inversion pair.
    pub fn is_compatible(&self, order: &[usize]) -> bool {
        let n = self.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &x) in order.iter().enumerate() {
            if x >= n || pos[x] != usize::MAX {
                return false;
            }
            pos[x] = i;
        }
        if order.len() != n {
            return false;
        }
        let ideals = self.ideals();
        ideals.iter().all(|&i| {
            ideals.iter().filter(|&&j| i & !j == 0).all(|&j| {
                let s = j & !i;
                let extends = bits(s).all(|x| bits(self.up1[x] & s).all(|y| pos[x] <= pos[y]));
                extends == !self.has_inversion_in(s)
            })
        })
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        u32::MAX >> (32 - n)
    }
}

impl fmt::Debug for DoublePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DoublePoset")
            .field("elements", &self.ground.labels())
            .field("rel1", &self.strict_pairs(1))
            .field("rel2", &self.strict_pairs(2))
            .field("weights", &self.weights)
            .finish()
    }
}

/// The JSON instance format for double posets.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DoublePosetSpec {
    pub elements: Vec<String>,
    pub rel1: Vec<(String, String)>,
    pub rel2: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, usize>>,
    /// Generators in cycle notation; defaults to the automorphism group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

/// A double poset together with the group acting on it.
#[derive(Debug, Clone)]
pub struct DoublePosetInstance {
    pub poset: DoublePoset,
    pub group: Arc<PermGroup>,
}

impl DoublePosetInstance {
    /// The instance as a JSON-serializable spec, listing all strict pairs.
    pub fn to_spec(&self) -> DoublePosetSpec {
        let p = &self.poset;
        let weights = (!p.has_unit_weights()).then(|| {
            p.ground()
                .labels()
                .iter()
                .cloned()
                .zip(p.weights().iter().copied())
                .collect()
        });
        DoublePosetSpec {
            elements: p.ground().labels().to_vec(),
            rel1: p.strict_pairs(1),
            rel2: p.strict_pairs(2),
            weights,
            group: Some(
                self.group
                    .generators()
                    .iter()
                    .filter(|g| !g.is_identity())
                    .map(|g| self.group.label(g))
                    .collect(),
            ),
            kind: Some("double-poset".into()),
            comment: None,
        }
    }
}

impl DoublePosetSpec {
    pub fn build(&self) -> Result<DoublePosetInstance> {
        let mut poset = DoublePoset::new(&self.elements, &self.rel1, &self.rel2)?;
        if let Some(w) = &self.weights {
            poset = poset.with_weights(w)?;
        }
        let group = match &self.group {
            Some(gens) => {
                let g = PermGroup::from_cycle_strings(poset.ground(), gens)?;
                poset.check_group(&g)?;
                g
            }
            None => poset.automorphisms()?,
        };
        Ok(DoublePosetInstance { poset, group })
    }
}

/// Parses and validates a JSON double-poset instance.
pub fn parse_instance(json: &str) -> Result<DoublePosetInstance> {
    let spec: DoublePosetSpec =
        serde_json::from_str(json).map_err(|e| invalid(format!("double poset instance: {e}")))?;
    spec.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Permutation;
    use crate::qsym::QSymExpr;
    use crate::ring::Ring;

    fn comp(p: &[usize]) -> IntComposition {
        IntComposition::new(p.to_vec()).unwrap()
    }

    fn diamond() -> DoublePoset {
        DoublePoset::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("d", "c"), ("a", "d")],
            &[("b", "a"), ("d", "c"), ("b", "c"), ("d", "a")],
        )
        .unwrap()
    }

    fn bowtie() -> DoublePoset {
        DoublePoset::new(
            &["a", "b", "c", "d"],
            &[("b", "a"), ("d", "c"), ("b", "c"), ("d", "a")],
            &[("c", "b"), ("a", "d")],
        )
        .unwrap()
    }

    fn weak_chain() -> DoublePoset {
        DoublePoset::new(&["a", "b"], &[("a", "b")], &[("a", "b")]).unwrap()
    }

    fn m(terms: &[(&[usize], i64)], d: usize) -> QSymExpr<Rational> {
        QSymExpr::from_terms(d, Basis::M, terms.iter().map(|(p, c)| (comp(p), rat(*c)))).unwrap()
    }

    #[test]
    fn closure_and_antisymmetry() {
        let d = DoublePoset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")], &[]).unwrap();
        assert!(d.leq1(0, 2));
        assert!(d.covers1(0, 1) && !d.covers1(0, 2));
        let bad = DoublePoset::new(&["a", "b"], &[("a", "b"), ("b", "a")], &[]);
        assert!(matches!(bad, Err(Error::InvalidInput(_))));
        assert!(DoublePoset::new(&["a"], &[("a", "z")], &[]).is_err());
    }

    #[test]
    fn inversions_and_descents() {
        let d = diamond();
        assert!(d.is_inversion("a", "b").unwrap());
        assert!(d.is_descent_pair("a", "b").unwrap());
        assert!(!d.is_inversion("a", "a").unwrap());
        assert!(!weak_chain().is_inversion("a", "b").unwrap());
        assert!(d.is_inversion("a", "q").is_err());
    }

    #[test]
    fn locally_special_examples() {
        assert!(diamond().is_locally_special());
        assert!(!bowtie().is_locally_special());
        let total =
            DoublePoset::new(&["a", "b", "c"], &[("a", "b")], &[("c", "b"), ("b", "a")]).unwrap();
        assert!(total.is_locally_special());
    }

    #[test]
    fn automorphism_groups() {
        let g1 = bowtie().automorphisms().unwrap();
        assert_eq!(g1.order(), 2);
        assert_eq!(g1.class_label(1), "(a c)(b d)");
        let g2 = diamond().automorphisms().unwrap();
        assert_eq!(g2.order(), 2);
        assert_eq!(g2.class_label(1), "(b d)");
        let anti = DoublePoset::new(&["a", "b"], &[], &[]).unwrap();
        assert_eq!(anti.automorphisms().unwrap().order(), 2);
        let weighted = anti
            .clone()
            .with_weights(&BTreeMap::from([("a".to_string(), 2)]))
            .unwrap();
        assert_eq!(weighted.automorphisms().unwrap().order(), 1);
    }

    #[test]
    fn diamond_omega() {
        let d = diamond();
        let g = d.automorphisms().unwrap();
        let q = d.omega_qcf(&g).unwrap();
        let id = m(
            &[
                (&[1, 3], 1),
                (&[1, 2, 1], 1),
                (&[1, 1, 2], 2),
                (&[1, 1, 1, 1], 2),
            ],
            4,
        );
        let swap = m(&[(&[1, 3], 1), (&[1, 2, 1], 1)], 4);
        assert_eq!(q.value(0), &id);
        assert_eq!(q.value(1), &swap);
    }

    #[test]
    fn bowtie_omega() {
        let d = bowtie();
        let g = d.automorphisms().unwrap();
        let q = d.omega_qcf(&g).unwrap();
        let id = m(
            &[
                (&[2, 2], 1),
                (&[1, 1, 2], 2),
                (&[1, 2, 1], 2),
                (&[2, 1, 1], 2),
                (&[1, 1, 1, 1], 4),
            ],
            4,
        );
        assert_eq!(q.value(0), &id);
        assert_eq!(q.value(1), &m(&[(&[2, 2], 1)], 4));
    }

    #[test]
    fn group_must_act_by_automorphisms() {
        let d = diamond();
        let s4 = PermGroup::symmetric(d.ground()).unwrap();
        assert!(matches!(d.omega_qcf(&s4), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn trivial_instances() {
        let one = DoublePoset::new(&["a"], &[], &[]).unwrap();
        assert_eq!(one.weighted_omega(), m(&[(&[1], 1)], 1));
        let heavy = one
            .with_weights(&BTreeMap::from([("a".to_string(), 2)]))
            .unwrap();
        assert_eq!(heavy.weighted_omega(), m(&[(&[2], 1)], 2));
        let empty = DoublePoset::new::<&str>(&[], &[], &[]).unwrap();
        assert_eq!(empty.weighted_omega(), m(&[(&[], 1)], 0));
    }

    #[test]
    fn quotient_of_diamond() {
        let d = diamond();
        let g = Permutation::parse(d.ground(), "(b d)").unwrap();
        let q = d.quotient(g.perm()).unwrap();
        assert_eq!(q.ground().labels(), &["a", "bd", "c"]);
        assert_eq!(q.weights(), &[1, 2, 1]);
        assert!(q.leq1(0, 1) && q.leq1(1, 2));
        assert!(q.is_locally_special());
        assert_eq!(q.weighted_omega(), d.omega_at(g.perm()).unwrap());
        assert_eq!(d.quotient(&Perm::identity(4)).unwrap(), d);
    }

    #[test]
    fn duals() {
        let d = weak_chain();
        assert_eq!(d.dual().dual(), d);
        assert!(d.dual().is_inversion("b", "a").unwrap());
        let ps = d.weighted_omega().principal_specialization();
        let psd = d.dual().weighted_omega().principal_specialization();
        for n in 0..6i64 {
            let n2 = rat(n * (n - 1) / 2);
            assert_eq!(ps.eval(n), rat(n * (n + 1) / 2));
            assert_eq!(psd.eval(n), n2);
            assert_eq!(ps.eval(-n), n2);
        }
    }

    #[test]
    fn order_polynomial_matches_map_enumeration() {
        for d in [bowtie(), diamond(), weak_chain()] {
            let g = d.automorphisms().unwrap();
            let p = d.order_poly_cf(&g).unwrap();
            for n in 0..4 {
                let v = p.eval(n);
                for k in 0..g.num_classes() {
                    let count = d.count_partitions(g.class_rep(k), n as usize);
                    assert_eq!(
                        v.value(k),
                        &crate::CycPoly::constant(crate::Cyc::from_int(count as i64))
                    );
                }
            }
        }
        assert_eq!(bowtie().count_partitions(&Perm::identity(4), 1), 0);
    }

    #[test]
    fn strict_three_below_two_into_two_values() {
        // With the orders opposed every relation is strict, so a map into [2]
        // must send a, b, c to 1 and d, e to 2: exactly one map.
        let lower = ["a", "b", "c"];
        let upper = ["d", "e"];
        let up: Vec<_> = lower.iter().flat_map(|&x| upper.map(|y| (x, y))).collect();
        let down: Vec<_> = up.iter().map(|&(x, y)| (y, x)).collect();
        let d = DoublePoset::new(&["a", "b", "c", "d", "e"], &up, &down).unwrap();
        let strict_maps = (0u32..32)
            .filter(|bits| {
                let f = |i: usize| bits >> i & 1;
                (0..3).all(|i| (3..5).all(|j| f(i) < f(j)))
            })
            .count() as u64;
        assert_eq!(strict_maps, 1);
        assert_eq!(d.count_partitions(&Perm::identity(5), 2), strict_maps);
        let g = d.automorphisms().unwrap();
        let p = d.order_poly_cf(&g).unwrap();
        assert_eq!(
            p.eval(2).value(0),
            &crate::CycPoly::constant(crate::Cyc::from_int(1))
        );
    }

    #[test]
    fn compatible_orders() {
        let w = weak_chain();
        assert_eq!(w.compatible_order().unwrap(), vec![0, 1]);
        assert!(w.is_compatible(&[0, 1]));
        let d = diamond();
        let order = d.compatible_order().unwrap();
        assert!(d.is_compatible(&order));
        assert!(matches!(
            bowtie().compatible_order(),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn json_instances() {
        let inst =
            parse_instance(r#"{"elements":["a","b"],"rel1":[["a","b"]],"rel2":[["a","b"]]}"#)
                .unwrap();
        assert_eq!(inst.group.order(), 1);
        let bad = parse_instance(
            r#"{"elements":["a","b"],"rel1":[],"rel2":[],"group":["(a b)"],"weights":{"a":3}}"#,
        );
        assert!(matches!(bad, Err(Error::InvalidInput(_))));
        assert!(parse_instance(r#"{"elements":["a"]}"#).is_err());
    }
}
