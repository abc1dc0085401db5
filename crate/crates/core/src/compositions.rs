//! Integer compositions, set compositions and the refinement order.
//!
//! Refinement is ordered so that finer compositions are larger: `β ≥ α`
//! when `β` is obtained from `α` by splitting parts. In terms of the subset
//! bijection `S`, `β ≥ α` exactly when `S(α) ⊆ S(β)`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::groups::Permutation;
use crate::Limits;

/// A sequence of positive integers. The empty composition is the unique
/// composition of 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IntComposition(Vec<usize>);

impl IntComposition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(invalid(format!("composition {parts:?} has a zero part")));
        }
        Ok(IntComposition(parts))
    }

    /// Builds a composition without validation; parts must be positive.
    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(!parts.contains(&0));
        IntComposition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Partial sums `{α_1, α_1+α_2, …}` excluding the total.
    pub fn to_subset(&self) -> BTreeSet<usize> {
        let mut acc = 0;
        let mut out = BTreeSet::new();
        for &p in self.0.iter().take(self.0.len().saturating_sub(1)) {
            acc += p;
            out.insert(acc);
        }
        out
    }

    /// Partial-sum set as a bitmask: bit `i-1` is set when `i ∈ S(α)`.
    pub fn subset_mask(&self) -> u64 {
        self.to_subset()
            .into_iter()
            .fold(0u64, |m, i| m | 1 << (i - 1))
    }

    /// The composition of `n` whose partial-sum set is `subset`.
    pub fn from_subset(subset: &BTreeSet<usize>, n: usize) -> Result<Self> {
        if let Some(&bad) = subset.iter().find(|&&s| s == 0 || s >= n) {
            return Err(invalid(format!(
                "{bad} is outside {{1,…,{}}}",
                n.saturating_sub(1)
            )));
        }
        let mut parts = Vec::with_capacity(subset.len() + 1);
        let mut prev = 0;
        for &s in subset.iter().chain(std::iter::once(&n)) {
            if s > prev {
                parts.push(s - prev);
            }
            prev = s;
        }
        Ok(IntComposition(parts))
    }

    fn from_mask(mask: u64, n: usize) -> Self {
        let mut parts = Vec::new();
        let mut prev = 0;
        for i in 1..=n {
            if i == n || mask >> (i - 1) & 1 == 1 {
                parts.push(i - prev);
                prev = i;
            }
        }
        IntComposition(parts)
    }

    /// Whether `self` refines `coarser` (i.e. `self ≥ coarser`).
    pub fn refines(&self, coarser: &IntComposition) -> Result<bool> {
        if self.weight() != coarser.weight() {
            return Err(invalid(format!(
                "cannot compare {self} and {coarser}: weights differ"
            )));
        }
        let fine = self.subset_mask();
        Ok(coarser.subset_mask() & !fine == 0)
    }

    pub fn reverse(&self) -> Self {
        IntComposition(self.0.iter().rev().copied().collect())
    }

    /// All compositions of the same weight that `self` refines, including
    /// `self`.
    pub fn coarsenings(&self) -> Vec<IntComposition> {
        let n = self.weight();
        submasks(self.subset_mask())
            .map(|m| IntComposition::from_mask(m, n))
            .collect()
    }

    /// All refinements of `self`, including `self`.
    pub fn refinements(&self) -> Vec<IntComposition> {
        let n = self.weight();
        if n == 0 {
            return vec![self.clone()];
        }
        let full = (1u64 << (n - 1)) - 1;
        let base = self.subset_mask();
        submasks(full & !base)
            .map(|m| IntComposition::from_mask(m | base, n))
            .collect()
    }

    /// Every composition of `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<IntComposition> {
        if n == 0 {
            return vec![IntComposition(Vec::new())];
        }
        let mut out: Vec<_> = (0..1u64 << (n - 1))
            .map(|m| IntComposition::from_mask(m, n))
            .collect();
        out.sort();
        out
    }
}

/// All submasks of `mask`, including `0` and `mask`.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & mask)
        };
        Some(cur)
    })
}

impl TryFrom<Vec<usize>> for IntComposition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        IntComposition::new(parts)
    }
}

impl From<IntComposition> for Vec<usize> {
    fn from(c: IntComposition) -> Self {
        c.0
    }
}

impl fmt::Display for IntComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for IntComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite set of labels, kept sorted so that index order is canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Arc<[String]>,
}

impl GroundSet {
    pub fn new<S: AsRef<str>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut v: Vec<String> = labels.into_iter().map(|s| s.as_ref().to_string()).collect();
        v.sort();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(invalid(format!("duplicate label {:?}", w[0])));
        }
        if v.iter().any(|l| l.is_empty()) {
            return Err(invalid("empty label"));
        }
        Ok(GroundSet { labels: v.into() })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .map_err(|_| invalid(format!("unknown element {label:?}")))
    }

    /// Whether every label is a single character, so blocks can be printed
    /// without separators.
    pub(crate) fn compact(&self) -> bool {
        self.labels.iter().all(|l| l.chars().count() == 1)
    }

    pub(crate) fn mask_labels(&self, mask: u32) -> Vec<String> {
        (0..self.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.labels[i].clone())
            .collect()
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels.iter()).finish()
    }
}

/// An ordered partition of a ground set into nonempty blocks.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetComposition {
    blocks: Vec<Vec<String>>,
}

impl SetComposition {
    /// Validates that the blocks are nonempty and pairwise disjoint; the
    /// ground set is their union.
    pub fn new<S: AsRef<str>>(blocks: Vec<Vec<S>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(blocks.len());
        for b in blocks {
            if b.is_empty() {
                return Err(invalid("set composition with an empty block"));
            }
            let mut block: Vec<String> = b.iter().map(|s| s.as_ref().to_string()).collect();
            block.sort();
            for x in &block {
                if !seen.insert(x.clone()) {
                    return Err(invalid(format!("{x:?} appears in two blocks")));
                }
            }
            out.push(block);
        }
        Ok(SetComposition { blocks: out })
    }

    /// Parses `a|c|bd` (single-character labels) or `a,b|c`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(SetComposition { blocks: Vec::new() });
        }
        let blocks = s
            .split('|')
            .map(|b| {
                if b.contains(',') {
                    b.split(',').map(|x| x.trim().to_string()).collect()
                } else {
                    b.trim().chars().map(|c| c.to_string()).collect()
                }
            })
            .collect();
        SetComposition::new::<String>(blocks)
    }

    pub(crate) fn from_masks(ground: &GroundSet, masks: &[u32]) -> Self {
        SetComposition {
            blocks: masks.iter().map(|&m| ground.mask_labels(m)).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<String>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn ground(&self) -> BTreeSet<&str> {
        self.blocks
            .iter()
            .flat_map(|b| b.iter().map(String::as_str))
            .collect()
    }

    /// The type `α(C) = (|C_1|, …, |C_k|)`.
    pub fn type_of(&self) -> IntComposition {
        IntComposition(self.blocks.iter().map(Vec::len).collect())
    }

    /// Whether `self ≤ other` in refinement order (`other` is finer).
    pub fn is_coarsening_of(&self, other: &SetComposition) -> bool {
        let mut it = other.blocks.iter();
        for b in &self.blocks {
            let mut merged: Vec<&String> = Vec::new();
            while merged.len() < b.len() {
                match it.next() {
                    Some(nb) => merged.extend(nb.iter()),
                    None => return false,
                }
            }
            merged.sort();
            if merged.len() != b.len() || merged.iter().zip(b).any(|(x, y)| *x != y) {
                return false;
            }
        }
        it.next().is_none()
    }

    /// The unique coarsening of `self` of type `alpha`, merging consecutive
    /// blocks.
    pub fn coarsen_to_type(&self, alpha: &IntComposition) -> Result<Self> {
        let ty = self.type_of();
        if !ty.refines(alpha)? {
            return Err(invalid(format!("{alpha} is not a coarsening of {ty}")));
        }
        let mut blocks = Vec::with_capacity(alpha.len());
        let mut it = self.blocks.iter();
        for &part in alpha.parts() {
            let mut merged = Vec::with_capacity(part);
            while merged.len() < part {
                merged.extend(it.next().expect("refinement checked").iter().cloned());
            }
            merged.sort();
            blocks.push(merged);
        }
        Ok(SetComposition { blocks })
    }

    /// Blockwise image `g(C_1)|g(C_2)|…`.
    pub fn act(&self, g: &Permutation) -> Result<Self> {
        let ground = self.ground();
        let gs: BTreeSet<&str> = g.ground().labels().iter().map(String::as_str).collect();
        if ground != gs {
            return Err(invalid(
                "permutation does not act on the ground set of the composition",
            ));
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut img: Vec<String> = b
                    .iter()
                    .map(|x| g.apply_label(x).map(str::to_string))
                    .collect::<Result<_>>()?;
                img.sort();
                Ok(img)
            })
            .collect::<Result<_>>()?;
        Ok(SetComposition { blocks })
    }
}

impl fmt::Display for SetComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.blocks.iter().flatten().all(|l| l.chars().count() == 1);
        let sep = if compact { "" } else { "," };
        let blocks: Vec<String> = self.blocks.iter().map(|b| b.join(sep)).collect();
        write!(f, "{}", blocks.join("|"))
    }
}

impl fmt::Debug for SetComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Depth-first enumeration of ordered set partitions whose blocks are
/// nonempty unions of the given disjoint `atoms` (bitmasks over the ground
/// set). `accept(prefix, block)` prunes a block before it is appended to a
/// prefix covering `prefix`; `visit` receives each completed block sequence.
pub fn for_each_atom_composition(
    atoms: &[u32],
    accept: &dyn Fn(u32, u32) -> bool,
    visit: &mut dyn FnMut(&[u32]),
) {
    assert!(atoms.len() < 32, "too many atoms");
    let all = if atoms.is_empty() {
        0
    } else {
        u32::MAX >> (32 - atoms.len())
    };
    let mut stack = Vec::with_capacity(atoms.len());
    recurse(atoms, all, 0, accept, visit, &mut stack);

    fn recurse(
        atoms: &[u32],
        remaining: u32,
        prefix: u32,
        accept: &dyn Fn(u32, u32) -> bool,
        visit: &mut dyn FnMut(&[u32]),
        stack: &mut Vec<u32>,
    ) {
        if remaining == 0 {
            visit(stack);
            return;
        }
        let mut sub = remaining;
        while sub != 0 {
            let block = (0..atoms.len())
                .filter(|&i| sub >> i & 1 == 1)
                .fold(0u32, |m, i| m | atoms[i]);
            if accept(prefix, block) {
                stack.push(block);
                recurse(
                    atoms,
                    remaining & !sub,
                    prefix | block,
                    accept,
                    visit,
                    stack,
                );
                stack.pop();
            }
            sub = (sub - 1) & remaining;
        }
    }
}

/// Singleton atoms `{0}, {1}, …, {n-1}`.
pub fn singleton_atoms(n: usize) -> Vec<u32> {
    (0..n).map(|i| 1u32 << i).collect()
}

/// Every set composition of `ground`, ordered by length and then
/// lexicographically on the block sequence.
pub fn enumerate_set_compositions(ground: &GroundSet) -> Result<Vec<SetComposition>> {
    let limit = Limits::current().max_composition_set;
    if ground.len() > limit {
        return Err(Error::Resource(format!(
            "{} elements exceeds the set-composition bound {limit}",
            ground.len()
        )));
    }
    let mut out = Vec::new();
    for_each_atom_composition(&singleton_atoms(ground.len()), &|_, _| true, &mut |bs| {
        out.push(SetComposition::from_masks(ground, bs))
    });
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Ordered Bell (Fubini) number: the count of set compositions of an `n`-set.
pub fn ordered_bell(n: usize) -> u64 {
    let mut a = vec![1u64];
    for m in 1..=n {
        let mut binom = 1u64;
        let mut s = 0u64;
        for k in 1..=m {
            binom = binom * (m - k + 1) as u64 / k as u64;
            s += binom * a[m - k];
        }
        a.push(s);
    }
    a[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ic(p: &[usize]) -> IntComposition {
        IntComposition::new(p.to_vec()).unwrap()
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn subset_bijection_examples() {
        assert_eq!(IntComposition::from_subset(&set(&[]), 4).unwrap(), ic(&[4]));
        assert_eq!(
            IntComposition::from_subset(&set(&[1, 3]), 4).unwrap(),
            ic(&[1, 2, 1])
        );
        assert_eq!(
            IntComposition::from_subset(&set(&[2, 3]), 4).unwrap(),
            ic(&[2, 1, 1])
        );
        assert!(IntComposition::from_subset(&set(&[4]), 4).is_err());
        assert!(IntComposition::from_subset(&set(&[0]), 4).is_err());
    }

    #[test]
    fn subset_round_trip() {
        for n in 1..=8 {
            for a in IntComposition::all(n) {
                assert_eq!(IntComposition::from_subset(&a.to_subset(), n).unwrap(), a);
                assert_eq!(a.to_subset().len(), a.len() - 1);
            }
        }
    }

    #[test]
    fn refinement_examples() {
        assert!(ic(&[1, 1, 2]).refines(&ic(&[2, 2])).unwrap());
        assert!(ic(&[2, 2]).refines(&ic(&[2, 2])).unwrap());
        assert!(!ic(&[1, 2, 1]).refines(&ic(&[2, 2])).unwrap());
        assert!(ic(&[1, 2]).refines(&ic(&[2, 2])).is_err());
    }

    /// Refinement by cutting into consecutive runs, checked against the
    /// subset criterion.
    fn refines_by_runs(fine: &IntComposition, coarse: &IntComposition) -> bool {
        let mut it = fine.parts().iter();
        for &p in coarse.parts() {
            let mut s = 0;
            while s < p {
                match it.next() {
                    Some(&q) => s += q,
                    None => return false,
                }
            }
            if s != p {
                return false;
            }
        }
        it.next().is_none()
    }

    #[test]
    fn refinement_is_partial_order() {
        for n in 1..=7 {
            let all = IntComposition::all(n);
            for a in &all {
                assert!(a.refines(a).unwrap());
                for b in &all {
                    let ab = a.refines(b).unwrap();
                    assert_eq!(ab, refines_by_runs(a, b));
                    if ab && b.refines(a).unwrap() {
                        assert_eq!(a, b);
                    }
                    if n <= 5 {
                        for c in &all {
                            if ab && b.refines(c).unwrap() {
                                assert!(a.refines(c).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coarsenings_and_refinements() {
        let a = ic(&[1, 1, 2]);
        let mut co = a.coarsenings();
        co.sort();
        assert_eq!(co, vec![ic(&[1, 1, 2]), ic(&[1, 3]), ic(&[2, 2]), ic(&[4])]);
        for n in 1..=6 {
            for a in IntComposition::all(n) {
                for b in a.refinements() {
                    assert!(b.refines(&a).unwrap());
                    assert!(b.coarsenings().contains(&a));
                }
                assert_eq!(a.refinements().len(), 1 << (n - a.len()));
            }
        }
    }

    #[test]
    fn coarsen_examples() {
        let c = SetComposition::parse("a|c|b|d").unwrap();
        assert_eq!(
            c.coarsen_to_type(&ic(&[2, 2])).unwrap().to_string(),
            "ac|bd"
        );
        assert_eq!(c.coarsen_to_type(&c.type_of()).unwrap(), c);
        assert_eq!(
            c.coarsen_to_type(&ic(&[1, 3])).unwrap().to_string(),
            "a|bcd"
        );
        let d = SetComposition::parse("ab|c").unwrap();
        assert!(d.coarsen_to_type(&ic(&[1, 2])).is_err());
    }

    #[test]
    fn coarsening_is_unique() {
        for n in 1..=5 {
            let g = GroundSet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap();
            let all = enumerate_set_compositions(&g).unwrap();
            for c in &all {
                for alpha in c.type_of().coarsenings() {
                    let got = c.coarsen_to_type(&alpha).unwrap();
                    assert!(got.is_coarsening_of(c));
                    let matching: Vec<_> = all
                        .iter()
                        .filter(|d| d.type_of() == alpha && d.is_coarsening_of(c))
                        .collect();
                    assert_eq!(matching, vec![&got]);
                }
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        let expected = [1u64, 1, 3, 13, 75, 541];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(ordered_bell(n), e);
            let g = GroundSet::new((0..n).map(|i| format!("x{i}"))).unwrap();
            let all = enumerate_set_compositions(&g).unwrap();
            assert_eq!(all.len() as u64, e);
            let distinct: BTreeSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
        }
        let g = GroundSet::new(["a", "b"]).unwrap();
        let names: Vec<String> = enumerate_set_compositions(&g)
            .unwrap()
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(names, vec!["ab", "a|b", "b|a"]);
    }

    #[test]
    fn action_examples() {
        let g = GroundSet::new(["a", "b", "c", "d"]).unwrap();
        let p = Permutation::parse(&g, "(a c)(b d)").unwrap();
        let c = SetComposition::parse("ac|bd").unwrap();
        assert_eq!(c.act(&p).unwrap(), c);
        let c = SetComposition::parse("a|c|bd").unwrap();
        assert_eq!(c.act(&p).unwrap().to_string(), "c|a|bd");
        let e = Permutation::identity(&g);
        assert_eq!(c.act(&e).unwrap(), c);
        let small = SetComposition::parse("a|b").unwrap();
        assert!(small.act(&p).is_err());
    }

    #[test]
    fn action_is_a_group_action() {
        let g = GroundSet::new(["a", "b", "c", "d"]).unwrap();
        let p = Permutation::parse(&g, "(a b c)").unwrap();
        let q = Permutation::parse(&g, "(c d)").unwrap();
        let pq = p.compose(&q);
        for c in enumerate_set_compositions(&g).unwrap() {
            let lhs = c.act(&q).unwrap().act(&p).unwrap();
            assert_eq!(lhs, c.act(&pq).unwrap());
            assert_eq!(lhs.type_of(), c.type_of());
        }
    }
}
