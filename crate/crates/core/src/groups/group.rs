use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use super::chartable::{dixon, CharacterTable};
use super::perm::{fmt_cycles, Perm, Permutation};
use crate::compositions::GroundSet;
use crate::cyclotomic::Cyc;
use crate::error::{invalid, Error, Result};
use crate::Limits;

/// A finite permutation group on a labeled ground set, with its element
/// list and conjugacy classes.
///
/// Elements are listed in breadth-first order from the identity over the
/// generators, so index 0 is always the identity. Conjugacy classes are
/// ordered by their least element index, which is also their representative;
/// class 0 is therefore `{e}`.
pub struct PermGroup {
    ground: GroundSet,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    exponent: u32,
    table: OnceLock<std::result::Result<Arc<Vec<Vec<Cyc>>>, Error>>,
}

impl PermGroup {
    /// Closure of `generators` under composition.
    pub fn generate(ground: &GroundSet, generators: Vec<Perm>) -> Result<Arc<PermGroup>> {
        let n = ground.len();
        for g in &generators {
            if g.degree() != n {
                return Err(invalid(format!(
                    "generator {g:?} acts on {} points, ground set has {n}",
                    g.degree()
                )));
            }
        }
        let limit = Limits::current().max_group_order;
        let id = Perm::identity(n);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let h = g.compose(&elements[i]);
                if !index.contains_key(&h) {
                    if elements.len() >= limit {
                        return Err(Error::Resource(format!(
                            "group order exceeds the bound {limit}"
                        )));
                    }
                    index.insert(h.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        let mut class_of = vec![usize::MAX; elements.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let inverses: Vec<Perm> = generators.iter().map(Perm::inverse).collect();
        for start in 0..elements.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let k = classes.len();
            class_of[start] = k;
            let mut members = vec![start];
            let mut q = VecDeque::from([start]);
            while let Some(i) = q.pop_front() {
                for (g, gi) in generators.iter().zip(&inverses) {
                    let c = g.compose(&elements[i]).compose(gi);
                    let j = index[&c];
                    if class_of[j] == usize::MAX {
                        class_of[j] = k;
                        members.push(j);
                        q.push_back(j);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        let exponent = elements.iter().fold(1usize, |acc, g| acc.lcm(&g.order())) as u32;
        Ok(Arc::new(PermGroup {
            ground: ground.clone(),
            generators,
            elements,
            index,
            class_of,
            classes,
            exponent,
            table: OnceLock::new(),
        }))
    }

    /// Parses generators in cycle notation.
    pub fn from_cycle_strings<S: AsRef<str>>(
        ground: &GroundSet,
        generators: &[S],
    ) -> Result<Arc<PermGroup>> {
        let gens = generators
            .iter()
            .map(|s| Permutation::parse(ground, s.as_ref()).map(|p| p.perm().clone()))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::generate(ground, gens)
    }

    pub fn trivial(ground: &GroundSet) -> Arc<PermGroup> {
        PermGroup::generate(ground, Vec::new()).expect("trivial group")
    }

    /// The full symmetric group on the ground set.
    pub fn symmetric(ground: &GroundSet) -> Result<Arc<PermGroup>> {
        let n = ground.len();
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[vec![0, 1]])?);
            gens.push(Perm::from_cycles(n, &[(0..n).collect()])?);
        }
        PermGroup::generate(ground, gens)
    }

    /// The subgroup generated by the given elements of `self`.
    pub fn subgroup(&self, generators: Vec<Perm>) -> Result<Arc<PermGroup>> {
        if let Some(g) = generators.iter().find(|g| !self.contains(g)) {
            return Err(invalid(format!("{g:?} is not an element of the group")));
        }
        PermGroup::generate(&self.ground, generators)
    }

    /// The subgroup of elements satisfying `pred` (which must be closed under
    /// composition, e.g. a stabilizer).
    pub fn filter_subgroup(&self, pred: impl Fn(&Perm) -> bool) -> Result<Arc<PermGroup>> {
        let gens: Vec<Perm> = self
            .elements
            .iter()
            .skip(1)
            .filter(|g| pred(g))
            .cloned()
            .collect();
        let sub = PermGroup::generate(&self.ground, reduce_generators(gens))?;
        if sub.elements.iter().any(|g| !pred(g)) {
            return Err(Error::Integrity("filtered set is not a subgroup".into()));
        }
        Ok(sub)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn degree(&self) -> usize {
        self.ground.len()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.index.contains_key(g)
    }

    pub fn element_index(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Element indices of each class, the first being the representative.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_size(&self, k: usize) -> usize {
        self.classes[k].len()
    }

    pub fn class_rep(&self, k: usize) -> &Perm {
        &self.elements[self.classes[k][0]]
    }

    pub fn class_reps(&self) -> Vec<&Perm> {
        (0..self.num_classes()).map(|k| self.class_rep(k)).collect()
    }

    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Class of an element of the group.
    pub fn class_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).map(|&i| self.class_of[i])
    }

    /// Class of the inverses of the elements of class `k`.
    pub fn inverse_class(&self, k: usize) -> usize {
        self.class_of(&self.class_rep(k).inverse())
            .expect("closed under inverses")
    }

    /// `power_map[k][l]` is the class of `g_k^l` for `l` in `0..exponent`.
    pub fn power_map(&self) -> Vec<Vec<usize>> {
        (0..self.num_classes())
            .map(|k| {
                let g = self.class_rep(k);
                let mut acc = Perm::identity(self.degree());
                (0..self.exponent)
                    .map(|_| {
                        let c = self.class_of(&acc).expect("closed");
                        acc = g.compose(&acc);
                        c
                    })
                    .collect()
            })
            .collect()
    }

    pub fn class_sign(&self, k: usize) -> i64 {
        self.class_rep(k).sign()
    }

    /// Representative of class `k` in cycle notation.
    pub fn class_label(&self, k: usize) -> String {
        fmt_cycles(&self.ground, self.class_rep(k))
    }

    pub fn label(&self, g: &Perm) -> String {
        fmt_cycles(&self.ground, g)
    }

    /// Whether every element of `self` lies in `other` (same ground set).
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.ground == other.ground && self.elements.iter().all(|g| other.contains(g))
    }

    /// Equality as sets of permutations.
    pub fn same_as(&self, other: &PermGroup) -> bool {
        std::ptr::eq(self, other) || (self.order() == other.order() && self.is_subgroup_of(other))
    }

    /// Whether every element is even.
    pub fn is_even(&self) -> bool {
        self.generators.iter().all(|g| g.sign() == 1)
    }

    /// Irreducible character values, one row per character and one column per
    /// class, computed once by Dixon's method and cached.
    pub(crate) fn irreducible_values(&self) -> Result<Arc<Vec<Vec<Cyc>>>> {
        self.table.get_or_init(|| dixon(self).map(Arc::new)).clone()
    }

    /// The character table, computed once and cached.
    pub fn character_table(self: &Arc<Self>) -> Result<CharacterTable> {
        let values = self.irreducible_values()?;
        Ok(CharacterTable::from_values(self.clone(), &values))
    }
}

/// Drops generators already produced by earlier ones, keeping the list short
/// without changing the generated group.
pub(crate) fn reduce_generators(gens: Vec<Perm>) -> Vec<Perm> {
    let mut kept: Vec<Perm> = Vec::new();
    let mut closure: Vec<Perm> = Vec::new();
    let mut members = std::collections::HashSet::new();
    for g in gens {
        if members.contains(&g) {
            continue;
        }
        kept.push(g);
        if let Some(n) = kept.first().map(Perm::degree) {
            closure.clear();
            members.clear();
            let id = Perm::identity(n);
            members.insert(id.clone());
            closure.push(id);
            let mut i = 0;
            while i < closure.len() {
                for k in &kept {
                    let h = k.compose(&closure[i]);
                    if members.insert(h.clone()) {
                        closure.push(h);
                    }
                }
                i += 1;
            }
        }
    }
    kept
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| self.label(g)).collect();
        write!(f, "<{}> of order {}", gens.join(", "), self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ground(n: usize) -> GroundSet {
        GroundSet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
    }

    #[test]
    fn orders_from_generators() {
        let g4 = GroundSet::new(["A", "B", "C", "D"]).unwrap();
        assert_eq!(
            PermGroup::from_cycle_strings(&g4, &["(A B C D)"])
                .unwrap()
                .order(),
            4
        );
        assert_eq!(
            PermGroup::from_cycle_strings(&ground(4), &["(a c)(b d)"])
                .unwrap()
                .order(),
            2
        );
        let z6 = PermGroup::from_cycle_strings(&ground(5), &["(a b c)", "(d e)"]).unwrap();
        assert_eq!(z6.order(), 6);
        assert_eq!(z6.exponent(), 6);
    }

    #[test]
    fn closure_and_classes() {
        let s4 = PermGroup::symmetric(&ground(4)).unwrap();
        assert_eq!(s4.order(), 24);
        for a in s4.elements() {
            for b in s4.elements() {
                assert!(s4.contains(&a.compose(b)));
            }
        }
        let mut sizes: Vec<usize> = (0..s4.num_classes()).map(|k| s4.class_size(k)).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert!(s4.class_rep(0).is_identity());
        for k in 0..s4.num_classes() {
            assert_eq!(24 % s4.class_size(k), 0);
        }
    }

    #[test]
    fn s3_classes() {
        let s3 = PermGroup::symmetric(&ground(3)).unwrap();
        let sizes: Vec<usize> = (0..s3.num_classes()).map(|k| s3.class_size(k)).collect();
        let mut sorted = sizes.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 3]);
        assert_eq!(sizes[0], 1);
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let c4 = PermGroup::from_cycle_strings(&ground(4), &["(a b c d)"]).unwrap();
        assert_eq!(c4.num_classes(), 4);
        let z6 = PermGroup::from_cycle_strings(&ground(5), &["(a b c)", "(d e)"]).unwrap();
        assert_eq!(z6.num_classes(), 6);
    }

    #[test]
    fn order_bound_is_enforced() {
        // 9! = 362880 exceeds the default bound of 10^5.
        let r = PermGroup::symmetric(&ground(9));
        assert!(matches!(r, Err(Error::Resource(_))));
    }

    #[test]
    fn rejects_wrong_degree() {
        let r = PermGroup::generate(&ground(3), vec![Perm::identity(4)]);
        assert!(r.is_err());
    }

    #[test]
    fn filtered_subgroups() {
        let s4 = PermGroup::symmetric(&ground(4)).unwrap();
        let a4 = s4.filter_subgroup(|g| g.sign() == 1).unwrap();
        assert_eq!(a4.order(), 12);
        assert!(a4.is_subgroup_of(&s4));
        assert!(a4.is_even());
        let stab = s4.filter_subgroup(|g| g.apply(0) == 0).unwrap();
        assert_eq!(stab.order(), 6);
    }
}
