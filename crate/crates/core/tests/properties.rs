//! Property tests: algebraic laws and brute-force oracles on random inputs.

use std::collections::BTreeSet;

use proptest::prelude::*;
use qclass::groups::induce;
use qclass::random::{self, rng_for, Stream};
use qclass::{
    Basis, ClassFunction, Cyc, CycPoly, GroundSet, IntComposition, PermGroup, QSymExpr, Rational,
    Ring,
};

fn composition(n: usize, mask: u64) -> IntComposition {
    let subset: BTreeSet<usize> = (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
    IntComposition::from_subset(&subset, n).unwrap()
}

prop_compose! {
    fn expression()(
        degree in 0usize..=6,
        basis in prop::bool::ANY,
        terms in prop::collection::vec((any::<u64>(), -6i64..=6, 1i64..=4), 1..6),
    ) -> QSymExpr<Rational> {
        let basis = if basis { Basis::M } else { Basis::F };
        let mut q = QSymExpr::zero(degree, basis);
        for (mask, p, d) in terms {
            q.add_term(composition(degree, mask), Rational::new(p.into(), d.into())).unwrap();
        }
        q
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn antipode_is_an_involution(q in expression()) {
        let m = q.to_m();
        prop_assert_eq!(m.antipode().antipode(), m);
    }

    #[test]
    fn basis_changes_round_trip(q in expression()) {
        prop_assert_eq!(q.to_f().to_m(), q.to_m());
        prop_assert_eq!(q.to_m().to_f(), q.to_f());
    }

    #[test]
    fn antipode_is_linear(a in expression(), b in expression()) {
        prop_assume!(a.degree() == b.degree());
        let (a, b) = (a.to_m(), b.to_m());
        let lhs = a.try_add(&b).unwrap().antipode();
        let rhs = a.antipode().try_add(&b.antipode()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn specialized_antipode_negates_the_variable(q in expression()) {
        let m = q.to_m();
        let lhs = m.antipode().principal_specialization();
        let rhs = m.principal_specialization().negate_variable();
        prop_assert_eq!(lhs.f_vector(), rhs.f_vector());
        for n in -6..=6 {
            prop_assert_eq!(lhs.eval(n), m.principal_specialization().eval(-n));
        }
    }

    #[test]
    fn reverse_is_an_involution(q in expression()) {
        let m = q.to_m();
        prop_assert_eq!(m.reverse().reverse(), m);
    }

    #[test]
    fn refinement_is_subset_inclusion(n in 1usize..=7, a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (composition(n, a), composition(n, b));
        let included = y.to_subset().is_subset(&x.to_subset());
        prop_assert_eq!(x.refines(&y).unwrap(), included);
        prop_assert_eq!(IntComposition::from_subset(&x.to_subset(), n).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// `⟨χ↑, ψ⟩_G = ⟨χ, ψ↓⟩_H` and `deg χ↑ = [G : H] deg χ` for
    /// irreducible `χ` of a random subgroup `H` and irreducible `ψ` of `G`.
    #[test]
    fn frobenius_reciprocity(seed in any::<u64>(), n in 2usize..=4) {
        let ground = GroundSet::new((0..n).map(|i| format!("x{i}"))).unwrap();
        let g = PermGroup::symmetric(&ground).unwrap();
        let mut rng = rng_for(seed, Stream::Expression, 0);
        let h = random::random_subgroup(&mut rng, &g, None).unwrap();
        let index = Cyc::from_int((g.order() / h.order()) as i64);
        let table_g = g.character_table().unwrap();
        let table_h = h.character_table().unwrap();
        for chi in table_h.irreducibles() {
            let up = induce(chi, &g).unwrap();
            prop_assert_eq!(up.degree().clone(), chi.degree().scale_by(&index));
            for psi in table_g.irreducibles() {
                let lhs = up.inner_product(psi).unwrap();
                let rhs = chi.inner_product(&psi.restrict(&h).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    /// The order-polynomial class function agrees with direct counts of
    /// fixed D-partitions into `[n]`.
    #[test]
    fn order_polynomial_counts_fixed_partitions(seed in any::<u64>()) {
        let inst = random::random_locally_special(&mut rng_for(seed, Stream::LocallySpecial, 0))
            .unwrap();
        let poly = inst.poset.order_poly_cf(&inst.group).unwrap();
        for n in 0..=3 {
            let values = poly.eval(n as i64);
            for g in inst.group.elements() {
                let count = inst.poset.count_partitions(g, n);
                let want = CycPoly::constant(Cyc::from_int(count as i64));
                prop_assert_eq!(values.value_at(g).unwrap(), &want);
            }
        }
    }

    /// The chromatic polynomial class function agrees with direct
    /// `t`-weighted counts of fixed proper colorings into `[n]`.
    #[test]
    fn chromatic_polynomial_counts_fixed_colorings(seed in any::<u64>()) {
        let inst = random::random_digraph(&mut rng_for(seed, Stream::Digraph, 0)).unwrap();
        let poly = inst.graph.chromatic_poly_cf(&inst.group).unwrap();
        for n in 0..=3 {
            let values = poly.eval(n as i64);
            for g in inst.group.elements() {
                let want = inst.graph.count_colorings(g, n).map(|c| Cyc::from_rational(c.clone()));
                prop_assert_eq!(values.value_at(g).unwrap(), &want);
            }
        }
    }

    /// Duality is an involution, quotients of locally special double posets
    /// stay locally special, and compatible orders are compatible.
    #[test]
    fn double_poset_structure(seed in any::<u64>()) {
        let inst = random::random_locally_special(&mut rng_for(seed, Stream::LocallySpecial, 0))
            .unwrap();
        let d = &inst.poset;
        prop_assert_eq!(d.dual().dual().strict_pairs(2), d.strict_pairs(2));
        for g in inst.group.elements() {
            prop_assert!(d.quotient(g).unwrap().is_locally_special());
        }
        let order = d.compatible_order().unwrap();
        prop_assert!(d.is_compatible(&order));
    }

    /// Class functions built from character-table rows decompose with a
    /// single multiplicity one.
    #[test]
    fn irreducibles_decompose_to_themselves(n in 1usize..=4) {
        let ground = GroundSet::new((0..n).map(|i| format!("x{i}"))).unwrap();
        let g = PermGroup::symmetric(&ground).unwrap();
        let table = g.character_table().unwrap();
        for (i, chi) in table.irreducibles().iter().enumerate() {
            let dec = chi.decompose().unwrap();
            for (j, m) in dec.multiplicities.iter().enumerate() {
                let want = CycPoly::constant(Cyc::from_int(i64::from(i == j)));
                prop_assert_eq!(m, &want);
            }
        }
        let regular = ClassFunction::regular(&g);
        for (chi, m) in table.irreducibles().iter().zip(regular.decompose().unwrap().multiplicities) {
            prop_assert_eq!(&m, chi.degree());
        }
    }
}
