use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::coset_table::CosetTable;
use super::word::{Letter, Word};
use super::{FpGroup, GroupDescriptor, GroupElement, Truth};
use crate::error::GroupError;
use crate::stallings::{Alphabet, SubgroupGraph};

/// Largest coset table tried for finitely presented groups.
pub const COSET_ENUMERATION_CAP: usize = 4096;
/// Word length used by the fallback generator-word search.
pub const WORD_SEARCH_LENGTH: usize = 8;
const WORD_SEARCH_CAP: usize = 50_000;

/// Membership machinery attached to a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupBackend {
    /// Finite group: membership flags indexed by element.
    Elements(Vec<bool>),
    /// Free group: folded Stallings graph.
    Graph(SubgroupGraph),
    /// `F_∞ ⋊ Z`: a finitely generated subgroup of the base `F_∞`.
    ShiftGraph(SubgroupGraph),
    /// `F_∞ ⋊ Z`: `K_n = <g_i : i >= n>`.
    Tail(i64),
    /// Finitely presented group, finite index: complete coset table.
    Cosets(CosetTable),
    /// Finitely presented group with a confluent rewriting system and
    /// `H = <x>` for a generator letter `x` no rule shortens: `x^k` are
    /// irreducible, so membership means the normal form is a power of `x`.
    LetterPowers(Letter),
    /// Finitely presented group, coset enumeration did not finish: normal
    /// forms of short generator products. Answers only Yes or Unknown.
    WordSearch(BTreeSet<Word>),
    /// `H_1 × H_2` inside a direct product.
    Product(Box<SubgroupSpec>, Box<SubgroupSpec>),
}

/// A subgroup of a [`GroupDescriptor`] with its membership backend.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSpec {
    generators: Vec<GroupElement>,
    backend: SubgroupBackend,
}

/// Key identifying a left coset `gH`; equal keys ⇔ equal cosets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CosetKey {
    Element(usize),
    Graph(usize, Word),
    Shifted(i64, usize, Word),
    Tail(i64, Word),
    Coset(usize),
    Pair(Box<CosetKey>, Box<CosetKey>),
}

impl SubgroupSpec {
    /// The subgroup generated by finitely many elements.
    pub fn generated(g: &GroupDescriptor, gens: &[GroupElement]) -> Result<Self, GroupError> {
        let gens: Vec<GroupElement> = gens.iter().map(|x| g.normalize(x)).collect::<Result<_, _>>()?;
        let backend = match g {
            GroupDescriptor::FiniteTable(t) => {
                let idx: Vec<usize> = gens
                    .iter()
                    .map(|x| match x {
                        GroupElement::Table(i) => *i,
                        _ => unreachable!(),
                    })
                    .collect();
                SubgroupBackend::Elements(t.generated_subgroup(&idx))
            }
            GroupDescriptor::Free(f) => {
                let words: Vec<Word> = gens.iter().map(|x| x.as_word().unwrap().clone()).collect();
                SubgroupBackend::Graph(SubgroupGraph::new(Alphabet::Finite(f.ids().to_vec()), &words))
            }
            GroupDescriptor::Shift(_) => {
                let mut words = Vec::new();
                for x in &gens {
                    match x {
                        GroupElement::Shift { word, shift: 0 } => words.push(word.clone()),
                        _ => {
                            return Err(GroupError::UnsupportedSubgroup(
                                "finitely generated subgroups of the shift extension must lie in the base free group".into(),
                            ))
                        }
                    }
                }
                SubgroupBackend::ShiftGraph(SubgroupGraph::new(Alphabet::Unbounded, &words))
            }
            GroupDescriptor::Fp(fp) => {
                let words: Vec<Word> = gens.iter().map(|x| x.as_word().unwrap().clone()).collect();
                match CosetTable::enumerate(fp.rank(), fp.relators(), &words, COSET_ENUMERATION_CAP) {
                    Some(t) => SubgroupBackend::Cosets(t),
                    None => match letter_powers(fp, &words) {
                        Some(x) => SubgroupBackend::LetterPowers(x),
                        None => SubgroupBackend::WordSearch(word_search(g, &gens)?),
                    },
                }
            }
            GroupDescriptor::Product(a, b) => {
                let mut left = Vec::new();
                let mut right = Vec::new();
                for x in &gens {
                    let (p, q) = x.components().unwrap();
                    if b.is_identity(q)? == Truth::Yes {
                        left.push(p.clone());
                    } else if a.is_identity(p)? == Truth::Yes {
                        right.push(q.clone());
                    } else {
                        return Err(GroupError::UnsupportedSubgroup(
                            "subgroups of a direct product must be products of subgroups of the factors".into(),
                        ));
                    }
                }
                let h1 = SubgroupSpec::generated(a, &left)?;
                let h2 = SubgroupSpec::generated(b, &right)?;
                return Ok(SubgroupSpec::product(g, h1, h2));
            }
        };
        Ok(SubgroupSpec { generators: gens, backend })
    }

    /// `K_n = <g_i : i >= n>` in the shift extension.
    pub fn tail(g: &GroupDescriptor, n: i64) -> Result<Self, GroupError> {
        match g {
            GroupDescriptor::Shift(s) => {
                let top = n.max(s.window);
                let generators = (n..=top).map(|i| GroupElement::shift(Word::gen(i), 0)).collect();
                Ok(SubgroupSpec { generators, backend: SubgroupBackend::Tail(n) })
            }
            _ => Err(GroupError::DescriptorMismatch { expected: "ShiftExtension" }),
        }
    }

    /// `H_1 × H_2` inside `G_1 × G_2`.
    pub fn product(g: &GroupDescriptor, h1: SubgroupSpec, h2: SubgroupSpec) -> Self {
        let (a, b) = match g {
            GroupDescriptor::Product(a, b) => (a, b),
            _ => panic!("product subgroup of a non-product group"),
        };
        let mut generators: Vec<GroupElement> =
            h1.generators.iter().map(|x| GroupElement::pair(x.clone(), b.identity())).collect();
        generators.extend(h2.generators.iter().map(|y| GroupElement::pair(a.identity(), y.clone())));
        SubgroupSpec { generators, backend: SubgroupBackend::Product(Box::new(h1), Box::new(h2)) }
    }

    pub fn whole(g: &GroupDescriptor) -> Result<Self, GroupError> {
        match g {
            GroupDescriptor::Product(a, b) => {
                Ok(SubgroupSpec::product(g, SubgroupSpec::whole(a)?, SubgroupSpec::whole(b)?))
            }
            GroupDescriptor::Shift(_) => Err(GroupError::UnsupportedSubgroup(
                "the whole shift extension is not finitely generated in the base".into(),
            )),
            _ => SubgroupSpec::generated(g, &g.generators()),
        }
    }

    /// Listed generators. For `K_n` this is the finite window `g_n..=g_max(n, w)`.
    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn backend(&self) -> &SubgroupBackend {
        &self.backend
    }

    pub fn tail_index(&self) -> Option<i64> {
        match self.backend {
            SubgroupBackend::Tail(n) => Some(n),
            _ => None,
        }
    }

    pub fn graph(&self) -> Option<&SubgroupGraph> {
        match &self.backend {
            SubgroupBackend::Graph(g) | SubgroupBackend::ShiftGraph(g) => Some(g),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<(&SubgroupSpec, &SubgroupSpec)> {
        match &self.backend {
            SubgroupBackend::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Whether membership answers are always Yes or No.
    pub fn has_exact_membership(&self) -> bool {
        match &self.backend {
            SubgroupBackend::WordSearch(_) => false,
            SubgroupBackend::Product(a, b) => a.has_exact_membership() && b.has_exact_membership(),
            _ => true,
        }
    }

    fn contains_normalized(&self, g: &GroupDescriptor, x: &GroupElement) -> Truth {
        match (&self.backend, x) {
            (SubgroupBackend::Elements(m), GroupElement::Table(i)) => Truth::from_bool(m[*i]),
            (SubgroupBackend::Graph(h), GroupElement::Word(w)) => Truth::from_bool(h.contains(w)),
            (SubgroupBackend::ShiftGraph(h), GroupElement::Shift { word, shift }) => {
                Truth::from_bool(*shift == 0 && h.contains(word))
            }
            (SubgroupBackend::Tail(n), GroupElement::Shift { word, shift }) => {
                Truth::from_bool(*shift == 0 && word.min_gen().is_none_or(|m| m >= *n))
            }
            (SubgroupBackend::Cosets(t), GroupElement::Word(w)) => Truth::from_bool(t.trace(w) == 0),
            (SubgroupBackend::LetterPowers(x), GroupElement::Word(w)) => {
                Truth::from_bool(w.letters().iter().all(|l| l.gen == x.gen) && w.letters().windows(2).all(|p| p[0] == p[1]))
            }
            (SubgroupBackend::WordSearch(set), GroupElement::Word(w)) => {
                if set.contains(w) {
                    Truth::Yes
                } else {
                    Truth::Unknown
                }
            }
            (SubgroupBackend::Product(h1, h2), GroupElement::Pair(p, q)) => match g {
                GroupDescriptor::Product(a, b) => h1.contains_normalized(a, p).and(h2.contains_normalized(b, q)),
                _ => unreachable!(),
            },
            _ => unreachable!("element family was checked"),
        }
    }

    /// Exact key of the left coset `xH`, when the backend provides one.
    pub fn coset_key(&self, g: &GroupDescriptor, x: &GroupElement) -> Result<Option<CosetKey>, GroupError> {
        let x = g.normalize(x)?;
        Ok(self.key_normalized(g, &x))
    }

    pub(crate) fn key_normalized(&self, g: &GroupDescriptor, x: &GroupElement) -> Option<CosetKey> {
        match (&self.backend, x) {
            (SubgroupBackend::Elements(m), GroupElement::Table(i)) => {
                let t = match g {
                    GroupDescriptor::FiniteTable(t) => t,
                    _ => unreachable!(),
                };
                let min = (0..t.order()).filter(|&h| m[h]).map(|h| t.mul(*i, h)).min().unwrap();
                Some(CosetKey::Element(min))
            }
            (SubgroupBackend::Graph(h), GroupElement::Word(w)) => {
                let (v, rest) = h.left_coset_key(w);
                Some(CosetKey::Graph(v, rest))
            }
            (SubgroupBackend::ShiftGraph(h), GroupElement::Shift { word, shift }) => {
                let (v, rest) = h.left_coset_key(&word.shifted(-shift));
                Some(CosetKey::Shifted(*shift, v, rest))
            }
            (SubgroupBackend::Tail(n), GroupElement::Shift { word, shift }) => {
                let cut = n + shift;
                let ls = word.letters();
                let keep = ls.iter().rposition(|l| l.gen < cut).map_or(0, |p| p + 1);
                Some(CosetKey::Tail(*shift, Word::reduce(ls[..keep].iter().copied())))
            }
            (SubgroupBackend::Cosets(t), GroupElement::Word(w)) => Some(CosetKey::Coset(t.trace(&w.inverse()))),
            (SubgroupBackend::LetterPowers(_), _) | (SubgroupBackend::WordSearch(_), _) => None,
            (SubgroupBackend::Product(h1, h2), GroupElement::Pair(p, q)) => match g {
                GroupDescriptor::Product(a, b) => {
                    let k1 = h1.key_normalized(a, p)?;
                    let k2 = h2.key_normalized(b, q)?;
                    Some(CosetKey::Pair(Box::new(k1), Box::new(k2)))
                }
                _ => unreachable!(),
            },
            _ => unreachable!("element family was checked"),
        }
    }
}

fn letter_powers(fp: &FpGroup, words: &[Word]) -> Option<Letter> {
    let x = match words {
        [w] if w.len() == 1 => w.letters()[0],
        _ => return None,
    };
    let shortens_powers = fp
        .rewriting()
        .rules()
        .iter()
        .any(|(lhs, _)| lhs.iter().all(|l| l.gen == x.gen) && lhs.windows(2).all(|p| p[0] == p[1]));
    (fp.is_confluent() && !shortens_powers).then_some(x)
}

fn word_search(g: &GroupDescriptor, gens: &[GroupElement]) -> Result<BTreeSet<Word>, GroupError> {
    let mut steps = Vec::new();
    for x in gens {
        steps.push(x.clone());
        steps.push(g.invert(x)?);
    }
    let mut seen: BTreeSet<GroupElement> = BTreeSet::from([g.identity()]);
    let mut layer = alloc::vec![g.identity()];
    'outer: for _ in 0..WORD_SEARCH_LENGTH {
        let mut next = Vec::new();
        for x in &layer {
            for s in &steps {
                let y = g.mul_unchecked(x, s);
                if seen.insert(y.clone()) {
                    next.push(y);
                    if seen.len() >= WORD_SEARCH_CAP {
                        break 'outer;
                    }
                }
            }
        }
        layer = next;
    }
    Ok(seen
        .into_iter()
        .map(|x| match x {
            GroupElement::Word(w) => w,
            other => panic!("{}", format!("unexpected element {other:?}")),
        })
        .collect())
}

/// `g ∈ H`, exact except on finitely presented groups of infinite index.
pub fn is_subgroup_member(g: &GroupDescriptor, h: &SubgroupSpec, x: &GroupElement) -> Result<Truth, GroupError> {
    let x = g.normalize(x)?;
    Ok(h.contains_normalized(g, &x))
}

/// `xH = yH`, decided as `x^-1 y ∈ H`.
pub fn coset_equal(
    g: &GroupDescriptor,
    h: &SubgroupSpec,
    x: &GroupElement,
    y: &GroupElement,
) -> Result<Truth, GroupError> {
    let q = g.multiply(&g.invert(x)?, y)?;
    Ok(h.contains_normalized(g, &q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteTable, FpGroup};
    use proptest::prelude::*;

    fn sh(w: &[(i64, i64)], n: i64) -> GroupElement {
        GroupElement::shift(Word::from_powers(w), n)
    }

    fn fw(w: &[(i64, i64)]) -> GroupElement {
        GroupElement::Word(Word::from_powers(w))
    }

    #[test]
    fn tail_membership() {
        let g = GroupDescriptor::shift_extension(3);
        let k0 = SubgroupSpec::tail(&g, 0).unwrap();
        assert_eq!(is_subgroup_member(&g, &k0, &sh(&[(3, 1)], 0)).unwrap(), Truth::Yes);
        assert_eq!(is_subgroup_member(&g, &k0, &sh(&[(-1, 1)], 0)).unwrap(), Truth::No);
        assert_eq!(is_subgroup_member(&g, &k0, &sh(&[], 1)).unwrap(), Truth::No);
    }

    #[test]
    fn tail_cosets() {
        let g = GroupDescriptor::shift_extension(3);
        let k0 = SubgroupSpec::tail(&g, 0).unwrap();
        let t_inv = sh(&[], -1);
        let g0_t_inv = sh(&[(0, 1)], -1);
        assert_eq!(coset_equal(&g, &k0, &t_inv, &g0_t_inv).unwrap(), Truth::Yes);
        assert_eq!(k0.coset_key(&g, &t_inv).unwrap(), k0.coset_key(&g, &g0_t_inv).unwrap());
        let t = sh(&[], 1);
        let g0_t = sh(&[(0, 1)], 1);
        assert_eq!(coset_equal(&g, &k0, &t, &g0_t).unwrap(), Truth::No);
    }

    #[test]
    fn free_membership_and_cosets() {
        let g = GroupDescriptor::free(2);
        let h = SubgroupSpec::generated(&g, &[fw(&[(0, 1)])]).unwrap();
        assert_eq!(is_subgroup_member(&g, &h, &fw(&[(1, 1)])).unwrap(), Truth::No);
        assert_eq!(coset_equal(&g, &h, &fw(&[(1, 1)]), &fw(&[(0, 1), (1, 1)])).unwrap(), Truth::No);
        assert_eq!(coset_equal(&g, &h, &fw(&[(1, 1)]), &fw(&[(1, 1), (0, 4)])).unwrap(), Truth::Yes);
    }

    #[test]
    fn shift_graph_subgroup() {
        let g = GroupDescriptor::shift_extension(2);
        let h = SubgroupSpec::generated(&g, &[sh(&[(0, 1), (1, 1)], 0)]).unwrap();
        assert_eq!(is_subgroup_member(&g, &h, &sh(&[(0, 1), (1, 1), (0, 1), (1, 1)], 0)).unwrap(), Truth::Yes);
        assert!(SubgroupSpec::generated(&g, &[sh(&[], 1)]).is_err());
    }

    fn dihedral() -> GroupDescriptor {
        let rels = alloc::vec![Word::from_powers(&[(1, 2)]), Word::from_powers(&[(1, 1), (0, 1), (1, 1), (0, 1)])];
        GroupDescriptor::Fp(FpGroup::new(alloc::vec!["a".into(), "r".into()], rels).unwrap())
    }

    #[test]
    fn presented_group_membership() {
        let g = dihedral();
        let h = SubgroupSpec::generated(&g, &[fw(&[(0, 1)])]).unwrap();
        assert!(matches!(h.backend(), SubgroupBackend::Cosets(_)));
        assert_eq!(is_subgroup_member(&g, &h, &fw(&[(1, 1), (0, 1), (1, 1)])).unwrap(), Truth::Yes);
        assert_eq!(is_subgroup_member(&g, &h, &fw(&[(1, 1)])).unwrap(), Truth::No);

        let z2 = GroupDescriptor::Fp(
            FpGroup::new(alloc::vec!["a".into(), "b".into()], alloc::vec![Word::from_powers(&[(0, 1), (1, 1), (0, -1), (1, -1)])])
                .unwrap(),
        );
        let ha = SubgroupSpec::generated(&z2, &[fw(&[(0, 1)])]).unwrap();
        assert!(matches!(ha.backend(), SubgroupBackend::LetterPowers(_)));
        assert_eq!(is_subgroup_member(&z2, &ha, &fw(&[(1, 1), (0, 3), (1, -1)])).unwrap(), Truth::Yes);
        assert_eq!(is_subgroup_member(&z2, &ha, &fw(&[(1, 1)])).unwrap(), Truth::No);

        let free_prod = GroupDescriptor::Fp(
            FpGroup::new(alloc::vec!["a".into(), "b".into()], alloc::vec![Word::from_powers(&[(0, 2)])]).unwrap(),
        );
        let hb = SubgroupSpec::generated(&free_prod, &[fw(&[(1, 2)])]).unwrap();
        assert!(matches!(hb.backend(), SubgroupBackend::WordSearch(_)));
        assert_eq!(is_subgroup_member(&free_prod, &hb, &fw(&[(1, 4)])).unwrap(), Truth::Yes);
        assert_eq!(is_subgroup_member(&free_prod, &hb, &fw(&[(0, 1)])).unwrap(), Truth::Unknown);
    }

    #[test]
    fn finite_table_and_product() {
        let z6 = GroupDescriptor::FiniteTable(FiniteTable::cyclic(6));
        let h = SubgroupSpec::generated(&z6, &[GroupElement::Table(2)]).unwrap();
        assert_eq!(is_subgroup_member(&z6, &h, &GroupElement::Table(4)).unwrap(), Truth::Yes);
        assert_eq!(is_subgroup_member(&z6, &h, &GroupElement::Table(3)).unwrap(), Truth::No);
        assert_eq!(h.coset_key(&z6, &GroupElement::Table(5)).unwrap(), Some(CosetKey::Element(1)));

        let g = GroupDescriptor::product(GroupDescriptor::free(1), GroupDescriptor::free(1));
        let a = GroupElement::pair(fw(&[(0, 1)]), fw(&[]));
        let b = GroupElement::pair(fw(&[]), fw(&[(0, 1)]));
        let ha = SubgroupSpec::generated(&g, core::slice::from_ref(&a)).unwrap();
        assert!(ha.factors().is_some());
        assert_eq!(is_subgroup_member(&g, &ha, &a).unwrap(), Truth::Yes);
        assert_eq!(is_subgroup_member(&g, &ha, &b).unwrap(), Truth::No);
    }

    fn shift_elem() -> impl Strategy<Value = GroupElement> {
        (prop::collection::vec((-2i64..3, -2i64..3), 0..4), -2i64..3)
            .prop_map(|(w, n)| GroupElement::shift(Word::from_powers(&w), n))
    }

    fn k0_elem() -> impl Strategy<Value = GroupElement> {
        prop::collection::vec((0i64..4, -2i64..3), 0..4)
            .prop_map(|w| GroupElement::shift(Word::from_powers(&w), 0))
    }

    proptest! {
        #[test]
        fn conjugating_k0_by_t_lands_in_k1(h in k0_elem()) {
            let g = GroupDescriptor::shift_extension(3);
            let k1 = SubgroupSpec::tail(&g, 1).unwrap();
            let k0 = SubgroupSpec::tail(&g, 0).unwrap();
            let c = g.conjugate(&sh(&[], 1), &h).unwrap();
            prop_assert_eq!(is_subgroup_member(&g, &k1, &c).unwrap(), Truth::Yes);
            prop_assert_eq!(is_subgroup_member(&g, &k0, &c).unwrap(), Truth::Yes);
        }

        #[test]
        fn tail_keys_decide_coset_equality(x in shift_elem(), y in shift_elem(), n in -1i64..2) {
            let g = GroupDescriptor::shift_extension(3);
            let k = SubgroupSpec::tail(&g, n).unwrap();
            let same = coset_equal(&g, &k, &x, &y).unwrap() == Truth::Yes;
            prop_assert_eq!(k.coset_key(&g, &x).unwrap() == k.coset_key(&g, &y).unwrap(), same);
        }

        #[test]
        fn coset_equality_is_an_equivalence(x in shift_elem(), y in shift_elem(), z in shift_elem()) {
            let g = GroupDescriptor::shift_extension(3);
            let k = SubgroupSpec::tail(&g, 0).unwrap();
            let eq = |p: &GroupElement, q: &GroupElement| coset_equal(&g, &k, p, q).unwrap() == Truth::Yes;
            prop_assert!(eq(&x, &x));
            prop_assert_eq!(eq(&x, &y), eq(&y, &x));
            if eq(&x, &y) && eq(&y, &z) {
                prop_assert!(eq(&x, &z));
            }
        }

        #[test]
        fn shift_graph_keys_decide_coset_equality(x in shift_elem(), y in shift_elem()) {
            let g = GroupDescriptor::shift_extension(3);
            let h = SubgroupSpec::generated(&g, &[sh(&[(0, 1), (1, 1)], 0), sh(&[(1, 2)], 0)]).unwrap();
            let same = coset_equal(&g, &h, &x, &y).unwrap() == Truth::Yes;
            prop_assert_eq!(h.coset_key(&g, &x).unwrap() == h.coset_key(&g, &y).unwrap(), same);
        }

        #[test]
        fn coset_table_agrees_with_word_search(w in prop::collection::vec((0i64..2, -3i64..4), 0..5)) {
            let g = dihedral();
            let h = SubgroupSpec::generated(&g, &[fw(&[(0, 1)])]).unwrap();
            let x = g.normalize(&GroupElement::Word(Word::from_powers(&w))).unwrap();
            let found = word_search(&g, h.generators()).unwrap().contains(x.as_word().unwrap());
            if found {
                prop_assert_eq!(is_subgroup_member(&g, &h, &x).unwrap(), Truth::Yes);
            }
        }
    }
}
