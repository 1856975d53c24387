use proptest::prelude::*;
use qnorm_core::engine::{
    compose_certificates, exact_qn1, is_normal, orbit_bfs, product_compose, product_inclusion, qn1_membership,
    MembershipVerdict, Normality, Status,
};
use qnorm_core::group::{FpGroup, GroupDescriptor, GroupElement, SubgroupSpec, Word};
use qnorm_core::stallings::Qn1Decision;

fn fw(w: &[(i64, i64)]) -> GroupElement {
    GroupElement::Word(Word::from_powers(w))
}

fn sh(w: &[(i64, i64)], n: i64) -> GroupElement {
    GroupElement::shift(Word::from_powers(w), n)
}

fn dihedral() -> GroupDescriptor {
    let rels = vec![Word::from_powers(&[(1, 2)]), Word::from_powers(&[(1, 1), (0, 1), (1, 1), (0, 1)])];
    GroupDescriptor::Fp(FpGroup::new(vec!["a".into(), "r".into()], rels).unwrap())
}

fn index_two() -> (GroupDescriptor, SubgroupSpec) {
    let g = GroupDescriptor::free(2);
    let h = SubgroupSpec::generated(&g, &[fw(&[(0, 2)]), fw(&[(1, 1)]), fw(&[(0, 1), (1, 1), (0, -1)])]).unwrap();
    (g, h)
}

// Products of t^-1 and g_i (i >= 0): a semigroup inside Γ for K_0.
fn shift_gamma_element() -> impl Strategy<Value = GroupElement> {
    prop::collection::vec(prop_oneof![Just(None), (0i64..5, prop::bool::ANY).prop_map(Some)], 0..6).prop_map(|steps| {
        let g = GroupDescriptor::shift_extension(3);
        steps.into_iter().fold(g.identity(), |acc, s| {
            let step = match s {
                None => sh(&[], -1),
                Some((i, inv)) => sh(&[(i, if inv { -1 } else { 1 })], 0),
            };
            g.multiply(&acc, &step).unwrap()
        })
    })
}

fn free_word(rank: i64) -> impl Strategy<Value = GroupElement> {
    prop::collection::vec((0..rank, prop_oneof![Just(-1i64), Just(1i64)]), 0..7)
        .prop_map(|w| GroupElement::Word(Word::from_powers(&w)))
}

fn certified(g: &GroupDescriptor, h: &SubgroupSpec, x: &GroupElement) -> qnorm_core::engine::QnCertificate {
    match qn1_membership(g, h, x, 500).unwrap() {
        MembershipVerdict::CertifiedIn(c) => c,
        other => panic!("{} not certified: {other:?}", g.format(x)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificates_replay_and_compose_in_the_shift_extension(x in shift_gamma_element(), y in shift_gamma_element()) {
        let g = GroupDescriptor::shift_extension(3);
        let k0 = SubgroupSpec::tail(&g, 0).unwrap();
        let cx = certified(&g, &k0, &x);
        let cy = certified(&g, &k0, &y);
        cx.replay(&g, &k0).unwrap();
        let c = compose_certificates(&g, &k0, &cx, &cy).unwrap();
        c.replay(&g, &k0).unwrap();
        prop_assert_eq!(&c.element, &g.multiply(&x, &y).unwrap());
        prop_assert!(c.cover_size() <= cx.cover_size() * cy.cover_size());
    }

    #[test]
    fn finite_index_certificates_compose(x in free_word(2), y in free_word(2)) {
        let (g, h) = index_two();
        let cx = certified(&g, &h, &x);
        let cy = certified(&g, &h, &y);
        prop_assert!(cx.cover_size() <= 2);
        let c = compose_certificates(&g, &h, &cx, &cy).unwrap();
        c.replay(&g, &h).unwrap();
    }

    #[test]
    fn subgroup_elements_have_one_coset(w in prop::collection::vec((0usize..3, prop_oneof![Just(-1i64), Just(1i64)]), 0..6)) {
        let (g, h) = index_two();
        let x = w.iter().fold(g.identity(), |acc, &(i, e)| {
            let s = h.generators()[i].clone();
            let s = if e < 0 { g.invert(&s).unwrap() } else { s };
            g.multiply(&acc, &s).unwrap()
        });
        prop_assert_eq!(certified(&g, &h, &x).cover_size(), 1);
    }

    #[test]
    fn orbit_agrees_with_the_folded_graph(x in free_word(2), gens in prop::collection::vec(free_word(2), 1..3)) {
        let g = GroupDescriptor::free(2);
        let h = SubgroupSpec::generated(&g, &gens).unwrap();
        let orbit = orbit_bfs(&g, &h, &x, 300).unwrap();
        match exact_qn1(&g, &h, &x).unwrap().unwrap() {
            Qn1Decision::InGamma(k) => {
                if k <= 300 {
                    prop_assert!(orbit.closed);
                    prop_assert_eq!(orbit.representatives.len(), k);
                }
            }
            Qn1Decision::NotInGamma => prop_assert!(!orbit.closed),
        }
    }

    #[test]
    fn budgets_only_resolve_unknowns(x in free_word(2), gens in prop::collection::vec(free_word(2), 1..3)) {
        let g = GroupDescriptor::free(2);
        let h = SubgroupSpec::generated(&g, &gens).unwrap();
        let small = qn1_membership(&g, &h, &x, 2).unwrap().status();
        let large = qn1_membership(&g, &h, &x, 200).unwrap().status();
        if small != Status::Unknown {
            prop_assert_eq!(small, large);
        }
    }

    #[test]
    fn normal_subgroups_give_one_coset(w in prop::collection::vec((0i64..2, -3i64..4), 0..5)) {
        let g = dihedral();
        let h = SubgroupSpec::generated(&g, &[fw(&[(0, 1)])]).unwrap();
        prop_assert_eq!(is_normal(&g, &h).unwrap(), Normality::Normalizes);
        let x = g.normalize(&GroupElement::Word(Word::from_powers(&w))).unwrap();
        prop_assert_eq!(certified(&g, &h, &x).cover_size(), 1);
    }

    #[test]
    fn product_law(x in shift_gamma_element(), y in free_word(2)) {
        let s = GroupDescriptor::shift_extension(3);
        let k0 = SubgroupSpec::tail(&s, 0).unwrap();
        let (f, h) = index_two();
        let cx = certified(&s, &k0, &x);
        let cy = certified(&f, &h, &y);
        let p = product_compose(&s, &k0, &cx, &f, &h, &cy).unwrap();
        let (gg, hh) = product_inclusion(&s, &k0, &f, &h);
        p.replay(&gg, &hh).unwrap();
        prop_assert_eq!(p.cover_size(), cx.cover_size() * cy.cover_size());
        let direct = qn1_membership(&gg, &hh, &GroupElement::pair(x, y), 500).unwrap();
        prop_assert_eq!(direct.status(), Status::In);
    }
}

#[test]
fn refuted_components_refute_the_pair() {
    let f = GroupDescriptor::free(2);
    let h = SubgroupSpec::generated(&f, &[fw(&[(0, 1)])]).unwrap();
    let (g, hh) = product_inclusion(&f, &h, &f, &h);
    let v = qn1_membership(&g, &hh, &GroupElement::pair(fw(&[(0, 1)]), fw(&[(1, 1)])), 100).unwrap();
    assert_eq!(v.status(), Status::Out);
}
