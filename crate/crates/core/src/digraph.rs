//! Directed graphs, proper colorings graded by ascents, and acyclic
//! orientations.
//!
//! The chromatic quasisymmetric class function is
//! `χ(G, H, x; g) = Σ_f t^{asc(f)} x^f` over `g`-fixed proper colorings, an
//! ascent being an edge `(u, v)` with `f(u) < f(v)`. Grouping colorings by
//! color classes turns this into a sum over set compositions with
//! independent blocks. Its reciprocal `χ̄` sums over pairs `(O, f)` of an
//! acyclic orientation and a coloring weakly increasing along `O`, weighted
//! by the number of edges `O` reverses.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compositions::{for_each_atom_composition, GroundSet, IntComposition};
use crate::dposet::DoublePoset;
use crate::error::{invalid, Error, Result};
use crate::groups::{induce, ClassFunction, Perm, PermGroup};
use crate::qcf::{PolyClassFunction, QsymClassFunction};
use crate::qsym::{Basis, QSymExpr};
use crate::report::{compare_qcf, VerdictReport, Witness};
use crate::ring::{rat, Poly};
use crate::{Limits, TPoly};

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| mask >> i & 1 == 1)
}

/// A directed graph without loops and with at most one edge between any
/// two vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    ground: GroundSet,
    /// Edges as vertex-index pairs, sorted.
    edges: Vec<(usize, usize)>,
    out: Vec<u32>,
    inn: Vec<u32>,
}

impl Digraph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let ground = GroundSet::new(vertices.iter().map(|s| s.as_ref()))?;
        Limits::check_ground_set(ground.len())?;
        let pairs = edges
            .iter()
            .map(|(u, v)| Ok((ground.index(u.as_ref())?, ground.index(v.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Digraph::from_pairs(ground, pairs)
    }

    pub(crate) fn from_pairs(ground: GroundSet, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = ground.len();
        let mut out = vec![0u32; n];
        let mut inn = vec![0u32; n];
        edges.sort_unstable();
        for &(u, v) in &edges {
            if u == v {
                return Err(invalid(format!("loop at {}", ground.label(u))));
            }
            if (out[u] | inn[u]) >> v & 1 == 1 {
                return Err(invalid(format!(
                    "more than one edge between {} and {}",
                    ground.label(u),
                    ground.label(v)
                )));
            }
            out[u] |= 1 << v;
            inn[v] |= 1 << u;
        }
        Ok(Digraph {
            ground,
            edges,
            out,
            inn,
        })
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

    /// Edges as vertex-index pairs, in sorted order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_labels(&self) -> Vec<(String, String)> {
        self.edges
            .iter()
            .map(|&(u, v)| {
                (
                    self.ground.label(u).to_string(),
                    self.ground.label(v).to_string(),
                )
            })
            .collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u] >> v & 1 == 1
    }

    /// The same graph with edge `(u, v)` replaced by `(v, u)`.
    pub fn reverse_edge(&self, i: usize) -> Digraph {
        let mut edges = self.edges.clone();
        let (u, v) = edges[i];
        edges[i] = (v, u);
        Digraph::from_pairs(self.ground.clone(), edges).expect("reversal keeps the graph simple")
    }

    /// Whether no edge joins two vertices of `mask`.
    pub fn is_independent(&self, mask: u32) -> bool {
        bits(mask).all(|x| self.out[x] & mask == 0)
    }

    pub fn is_automorphism(&self, p: &Perm) -> bool {
        p.degree() == self.len()
            && (0..self.len()).all(|x| p.apply_mask(self.out[x]) == self.out[p.apply(x)])
    }

    /// The full automorphism group, by backtracking.
    pub fn automorphisms(&self) -> Result<Arc<PermGroup>> {
        Limits::check_ground_set(self.len())?;
        let n = self.len();
        let sig: Vec<(u32, u32)> = (0..n)
            .map(|x| (self.out[x].count_ones(), self.inn[x].count_ones()))
            .collect();
        let mut found = Vec::new();
        let mut img = Vec::with_capacity(n);
        self.extend_automorphism(&sig, &mut img, 0, &mut found);
        PermGroup::generate(&self.ground, crate::groups::reduce_generators(found))
    }

    fn extend_automorphism(
        &self,
        sig: &[(u32, u32)],
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
            if used >> y & 1 == 1 || sig[x] != sig[y] {
                continue;
            }
            let ok = img.iter().enumerate().all(|(z, &iz)| {
                self.has_edge(x, z) == self.has_edge(y, iz)
                    && self.has_edge(z, x) == self.has_edge(iz, y)
            });
            if ok {
                img.push(y);
                self.extend_automorphism(sig, img, used | 1 << y, found);
                img.pop();
            }
        }
    }

    /// Errors unless `group` acts on the vertex set by automorphisms.
    pub fn check_group(&self, group: &PermGroup) -> Result<()> {
        if group.ground() != &self.ground {
            return Err(invalid("group acts on a different vertex set"));
        }
        if let Some(g) = group.generators().iter().find(|g| !self.is_automorphism(g)) {
            return Err(invalid(format!(
                "{} is not an automorphism of the digraph",
                group.label(g)
            )));
        }
        Ok(())
    }

    fn cycle_atoms(g: &Perm) -> Vec<u32> {
        g.cycles()
            .iter()
            .map(|c| c.iter().fold(0u32, |m, &x| m | 1 << x))
            .collect()
    }

    /// `χ(G, H, x; g)`: the sum over `g`-fixed set compositions with
    /// independent blocks of `t^{asc} M_α`, where an edge ascends when its
    /// tail lies in an earlier block than its head.
    pub fn chromatic_at(&self, g: &Perm) -> Result<QSymExpr<TPoly>> {
        if !self.is_automorphism(g) {
            return Err(invalid("not an automorphism of the digraph"));
        }
        let mut counts: HashMap<(Vec<usize>, usize), i64> = HashMap::new();
        let accept = |_prefix: u32, block: u32| self.is_independent(block);
        for_each_atom_composition(&Self::cycle_atoms(g), &accept, &mut |blocks| {
            let mut before = 0u32;
            let mut asc = 0;
            for &b in blocks {
                asc += bits(b)
                    .map(|v| (self.inn[v] & before).count_ones() as usize)
                    .sum::<usize>();
                before |= b;
            }
            let parts = blocks.iter().map(|b| b.count_ones() as usize).collect();
            *counts.entry((parts, asc)).or_insert(0) += 1;
        });
        let mut q = QSymExpr::zero(self.len(), Basis::M);
        for ((parts, asc), c) in counts {
            q.add_term(
                IntComposition::from_parts_unchecked(parts),
                Poly::monomial(rat(c), asc),
            )?;
        }
        Ok(q)
    }

    /// The chromatic quasisymmetric class function in the M basis.
    pub fn chromatic_qcf(&self, group: &Arc<PermGroup>) -> Result<QsymClassFunction<TPoly>> {
        self.check_group(group)?;
        let values = (0..group.num_classes())
            .into_par_iter()
            .map(|k| self.chromatic_at(group.class_rep(k)))
            .collect::<Result<Vec<_>>>()?;
        QsymClassFunction::new(group.clone(), values)
    }

    /// The chromatic polynomial class function `n ↦ χ(G, H, n)`.
    pub fn chromatic_poly_cf(&self, group: &Arc<PermGroup>) -> Result<PolyClassFunction> {
        Ok(self.chromatic_qcf(group)?.principal_specialization())
    }

    /// `Σ t^{asc(f)}` over `g`-fixed proper colorings `f: N → [n]`, by
    /// enumerating all `n^|N|` maps.
    pub fn count_colorings(&self, g: &Perm, n: usize) -> TPoly {
        let size = self.len();
        let mut by_asc = vec![0i64; self.edges.len() + 1];
        if n == 0 {
            return TPoly::constant(rat((size == 0) as i64));
        }
        let mut f = vec![0usize; size];
        'maps: loop {
            let fixed = (0..size).all(|x| f[g.apply(x)] == f[x]);
            if fixed && self.edges.iter().all(|&(u, v)| f[u] != f[v]) {
                by_asc[self.edges.iter().filter(|&&(u, v)| f[u] < f[v]).count()] += 1;
            }
            for x in f.iter_mut() {
                *x += 1;
                if *x < n {
                    continue 'maps;
                }
                *x = 0;
            }
            break;
        }
        TPoly::from_coeffs(by_asc.into_iter().map(rat).collect())
    }

    /// Every acyclic orientation of the underlying undirected graph.
    pub fn acyclic_orientations(&self) -> Vec<AcyclicOrientation> {
        let m = self.edges.len();
        assert!(m < 64, "too many edges to enumerate orientations");
        (0..1u64 << m)
            .map(|reversed| AcyclicOrientation { reversed })
            .filter(|o| self.is_acyclic(o))
            .collect()
    }

    /// Oriented edges of `o` as `(tail, head)` pairs.
    pub fn oriented_edges(&self, o: &AcyclicOrientation) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| {
                if o.reversed >> i & 1 == 1 {
                    (v, u)
                } else {
                    (u, v)
                }
            })
            .collect()
    }

    fn is_acyclic(&self, o: &AcyclicOrientation) -> bool {
        let n = self.len();
        let mut out = vec![0u32; n];
        for (u, v) in self.oriented_edges(o) {
            out[u] |= 1 << v;
        }
        is_acyclic_on(&out, crate::dposet::full_mask(n))
    }

    /// The image `g·O`: the edge `(g u, g v)` is oriented as `O` orients
    /// `(u, v)`.
    pub fn act_on_orientation(&self, g: &Perm, o: &AcyclicOrientation) -> AcyclicOrientation {
        let mut reversed = 0u64;
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if o.reversed >> i & 1 == 1 {
                let j = self
                    .edges
                    .binary_search(&(g.apply(u), g.apply(v)))
                    .expect("automorphisms map edges to edges");
                reversed |= 1 << j;
            }
        }
        AcyclicOrientation { reversed }
    }

    /// The double poset `P_O`: an oriented edge `u → v` gives `v <_1 u`,
    /// and `≤_2` is the opposite of `≤_1`.
    pub fn orientation_poset(&self, o: &AcyclicOrientation) -> Result<DoublePoset> {
        if o.reversed >> self.edges.len() != 0 || !self.is_acyclic(o) {
            return Err(Error::Precondition(
                "orientation is not an acyclic orientation of the graph".into(),
            ));
        }
        let oriented = self.oriented_edges(o);
        let rel1: Vec<(usize, usize)> = oriented.iter().map(|&(u, v)| (v, u)).collect();
        let n = self.len();
        DoublePoset::from_pairs(self.ground.clone(), &rel1, &oriented, vec![1; n])
    }

    /// `χ̄(G, H, x; g)`, enumerated directly: `g`-fixed set compositions
    /// paired with `g`-fixed acyclic orientations that point every
    /// cross-block edge forward, weighted by `t^{des(O)}`.
    pub fn bar_chromatic_at(&self, g: &Perm) -> Result<QSymExpr<TPoly>> {
        if !self.is_automorphism(g) {
            return Err(invalid("not an automorphism of the digraph"));
        }
        let n = self.len();
        // Orbits of ⟨g⟩ on edges. An automorphism maps edges to edges in
        // their own direction, so an orbit is oriented uniformly.
        let m = self.edges.len();
        let mut orbit_of = vec![usize::MAX; m];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..m {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let mut members = Vec::new();
            let mut e = start;
            while orbit_of[e] == usize::MAX {
                orbit_of[e] = orbits.len();
                members.push(e);
                let (u, v) = self.edges[e];
                e = self
                    .edges
                    .binary_search(&(g.apply(u), g.apply(v)))
                    .expect("automorphisms map edges to edges");
            }
            orbits.push(members);
        }
        let mut counts: HashMap<(Vec<usize>, usize), i64> = HashMap::new();
        for_each_atom_composition(&Self::cycle_atoms(g), &|_, _| true, &mut |blocks| {
            let mut block_of = vec![0usize; n];
            for (i, &b) in blocks.iter().enumerate() {
                for x in bits(b) {
                    block_of[x] = i;
                }
            }
            // Cross-block edges must point forward; an edge pointing
            // backward is reversed, which counts as a descent.
            let mut forced_des = 0;
            for &(u, v) in &self.edges {
                if block_of[u] > block_of[v] {
                    forced_des += 1;
                }
            }
            let free: Vec<&Vec<usize>> = orbits
                .iter()
                .filter(|orb| {
                    let (u, v) = self.edges[orb[0]];
                    block_of[u] == block_of[v]
                })
                .collect();
            let parts: Vec<usize> = blocks.iter().map(|b| b.count_ones() as usize).collect();
            for choice in 0..1u64 << free.len() {
                let mut out = vec![0u32; n];
                let mut des = forced_des;
                for (k, orb) in free.iter().enumerate() {
                    for &e in orb.iter() {
                        let (u, v) = self.edges[e];
                        if choice >> k & 1 == 1 {
                            out[v] |= 1 << u;
                            des += 1;
                        } else {
                            out[u] |= 1 << v;
                        }
                    }
                }
                if blocks.iter().all(|&b| is_acyclic_on(&out, b)) {
                    *counts.entry((parts.clone(), des)).or_insert(0) += 1;
                }
            }
        });
        let mut q = QSymExpr::zero(n, Basis::M);
        for ((parts, des), c) in counts {
            q.add_term(
                IntComposition::from_parts_unchecked(parts),
                Poly::monomial(rat(c), des),
            )?;
        }
        Ok(q)
    }

    /// `χ̄` as a quasisymmetric class function in the M basis.
    pub fn bar_chromatic_qcf(&self, group: &Arc<PermGroup>) -> Result<QsymClassFunction<TPoly>> {
        self.check_group(group)?;
        let values = (0..group.num_classes())
            .into_par_iter()
            .map(|k| self.bar_chromatic_at(group.class_rep(k)))
            .collect::<Result<Vec<_>>>()?;
        QsymClassFunction::new(group.clone(), values)
    }

    /// Checks the decomposition of `χ` over acyclic orientations, both
    /// classwise (`χ(g) = Σ_{gO = O} t^{des O} Ω(P_O; g)`) and in
    /// transversal form (`χ = Σ_{O ∈ T} t^{des O} Ind Ω(P_O, H_O)`).
    pub fn verify_orientation_decomposition(
        &self,
        group: &Arc<PermGroup>,
    ) -> Result<VerdictReport> {
        const THEOREM: &str = "orientation-decomposition";
        let instance = self.describe(group);
        let chi = self.chromatic_qcf(group)?;
        let orientations = self.acyclic_orientations();
        let posets = orientations
            .iter()
            .map(|o| self.orientation_poset(o))
            .collect::<Result<Vec<_>>>()?;

        // Classwise form.
        let mut values = Vec::with_capacity(group.num_classes());
        for k in 0..group.num_classes() {
            let g = group.class_rep(k);
            let mut acc = QSymExpr::zero(self.len(), Basis::M);
            for (o, p) in orientations.iter().zip(&posets) {
                if self.act_on_orientation(g, o) == *o {
                    let omega = p.omega_at(g)?;
                    let t = Poly::monomial(rat(1), o.des());
                    acc = acc.try_add(&omega.map_coeffs(|c| t.scale_by(c)))?;
                }
            }
            values.push(acc);
        }
        let rhs = QsymClassFunction::new(group.clone(), values)?;
        let part1 = compare_qcf(THEOREM, &instance, &chi, &rhs);
        if !part1.pass {
            return Ok(part1.with_note("classwise form"));
        }

        // Transversal form, through stabilizers and induction.
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        let mut induced: HashMap<IntComposition, ClassFunction> = HashMap::new();
        for (o, p) in orientations.iter().zip(&posets) {
            if seen.contains(&o.reversed) {
                continue;
            }
            for h in group.elements() {
                seen.insert(self.act_on_orientation(h, o).reversed);
            }
            let stab = group.filter_subgroup(|h| self.act_on_orientation(h, o) == *o)?;
            let omega = p.omega_qcf(&stab)?;
            let t = crate::CycPoly::monomial(crate::Cyc::from(rat(1)), o.des());
            for (alpha, cf) in omega.coefficients() {
                let up = induce(&cf, group)?.scale(&t);
                let entry = induced
                    .entry(alpha)
                    .or_insert_with(|| ClassFunction::zero(group));
                *entry = entry.try_add(&up)?;
            }
        }
        let keys: BTreeSet<IntComposition> = chi
            .support()
            .into_iter()
            .chain(induced.keys().cloned())
            .collect();
        for alpha in keys {
            let lhs = chi.coefficient(&alpha);
            let rhs = induced
                .get(&alpha)
                .cloned()
                .unwrap_or_else(|| ClassFunction::zero(group));
            if lhs != rhs {
                return Ok(VerdictReport::fail(
                    THEOREM,
                    &instance,
                    Witness {
                        class: None,
                        composition: Some(alpha.to_string()),
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    },
                )
                .with_note("transversal form"));
            }
        }
        Ok(VerdictReport::pass(THEOREM, &instance))
    }

    /// A short human-readable description for reports.
    pub fn describe(&self, group: &PermGroup) -> String {
        format!(
            "digraph on {} vertices with {} edges, group of order {}",
            self.len(),
            self.edges.len(),
            group.order()
        )
    }
}

/// Whether the graph with successor masks `out`, restricted to the vertices
/// in `mask`, has no directed cycle.
fn is_acyclic_on(out: &[u32], mask: u32) -> bool {
    let mut left = mask;
    loop {
        let Some(x) = bits(left).find(|&x| bits(left).all(|y| out[y] >> x & 1 == 0)) else {
            return left == 0;
        };
        left &= !(1 << x);
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("vertices", &self.ground.labels())
            .field("edges", &self.edge_labels())
            .finish()
    }
}

/// An orientation of a digraph's edges, recorded as the set of edges (by
/// index in [`Digraph::edges`]) that it reverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AcyclicOrientation {
    reversed: u64,
}

impl AcyclicOrientation {
    /// Bitmask of reversed edges.
    pub fn reversed(&self) -> u64 {
        self.reversed
    }

    /// Edges of the graph that the orientation reverses.
    pub fn des(&self) -> usize {
        self.reversed.count_ones() as usize
    }

    /// Edges of the graph that the orientation keeps, out of `edges`.
    pub fn asc(&self, edges: usize) -> usize {
        edges - self.des()
    }
}

/// The JSON instance format for digraphs.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DigraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    /// Generators in cycle notation; defaults to the automorphism group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

/// A digraph together with the group acting on it.
#[derive(Debug, Clone)]
pub struct DigraphInstance {
    pub graph: Digraph,
    pub group: Arc<PermGroup>,
}

impl DigraphInstance {
    /// The instance as a JSON-serializable spec.
    pub fn to_spec(&self) -> DigraphSpec {
        DigraphSpec {
            vertices: self.graph.ground().labels().to_vec(),
            edges: self.graph.edge_labels(),
            group: Some(
                self.group
                    .generators()
                    .iter()
                    .filter(|g| !g.is_identity())
                    .map(|g| self.group.label(g))
                    .collect(),
            ),
            kind: Some("digraph".into()),
            comment: None,
        }
    }
}

impl DigraphSpec {
    pub fn build(&self) -> Result<DigraphInstance> {
        let graph = Digraph::new(&self.vertices, &self.edges)?;
        let group = match &self.group {
            Some(gens) => {
                let g = PermGroup::from_cycle_strings(graph.ground(), gens)?;
                graph.check_group(&g)?;
                g
            }
            None => graph.automorphisms()?,
        };
        Ok(DigraphInstance { graph, group })
    }
}

/// Parses and validates a JSON digraph instance.
pub fn parse_instance(json: &str) -> Result<DigraphInstance> {
    let spec: DigraphSpec =
        serde_json::from_str(json).map_err(|e| invalid(format!("digraph instance: {e}")))?;
    spec.build()
}
