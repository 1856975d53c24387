//! Group families, normal forms and ball enumeration.

mod coset_table;
mod fp;
pub mod rewriting;
mod subgroup;
mod table;
mod word;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

pub use coset_table::CosetTable;
pub use fp::FpGroup;
pub use subgroup::{coset_equal, is_subgroup_member, CosetKey, SubgroupBackend, SubgroupSpec};
pub use table::FiniteTable;
pub use word::{Letter, Word};

use crate::error::GroupError;

/// Three-valued answer for semi-decidable questions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Truth {
    Yes,
    No,
    Unknown,
}

impl Truth {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Truth::Yes
        } else {
            Truth::No
        }
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::No, _) | (_, Truth::No) => Truth::No,
            (Truth::Yes, Truth::Yes) => Truth::Yes,
            _ => Truth::Unknown,
        }
    }

    pub fn not(self) -> Truth {
        match self {
            Truth::Yes => Truth::No,
            Truth::No => Truth::Yes,
            Truth::Unknown => Truth::Unknown,
        }
    }
}

/// Free group on an explicit set of integer generator ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGroup {
    ids: Vec<i64>,
    names: Vec<String>,
}

impl FreeGroup {
    pub fn new(ids: Vec<i64>, names: Vec<String>) -> Result<Self, GroupError> {
        if ids.len() != names.len() {
            return Err(GroupError::InvalidPresentation("one name per generator".into()));
        }
        let distinct: BTreeSet<_> = ids.iter().collect();
        if distinct.len() != ids.len() {
            return Err(GroupError::InvalidPresentation("repeated generator id".into()));
        }
        Ok(FreeGroup { ids, names })
    }

    /// `F_k` on ids `0..k` named `a, b, c, ...`.
    pub fn of_rank(k: usize) -> Self {
        let names = (0..k)
            .map(|i| {
                if i < 26 {
                    String::from(char::from(b'a' + i as u8))
                } else {
                    format!("x{i}")
                }
            })
            .collect();
        FreeGroup { ids: (0..k as i64).collect(), names }
    }

    pub fn ids(&self) -> &[i64] {
        &self.ids
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rank(&self) -> usize {
        self.ids.len()
    }

    pub fn name_of(&self, id: i64) -> Option<&str> {
        self.ids.iter().position(|&g| g == id).map(|i| self.names[i].as_str())
    }
}

/// `F_∞ ⋊ Z`: the free group on `g_i` (`i ∈ Z`) extended by a stable letter
/// `t` acting as the index shift, `t g_i t^-1 = g_{i+1}`.
///
/// Elements are pairs `(w, n)` standing for `w t^n`. `window` bounds the
/// generators `g_{-w..=w}` used for ball enumeration only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftExtension {
    pub window: i64,
}

/// A supported group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDescriptor {
    FiniteTable(FiniteTable),
    Free(FreeGroup),
    Fp(FpGroup),
    Shift(ShiftExtension),
    Product(Box<GroupDescriptor>, Box<GroupDescriptor>),
}

/// Normal form of a group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Table(usize),
    Word(Word),
    Shift { word: Word, shift: i64 },
    Pair(Box<GroupElement>, Box<GroupElement>),
}

impl GroupElement {
    pub fn pair(a: GroupElement, b: GroupElement) -> Self {
        GroupElement::Pair(Box::new(a), Box::new(b))
    }

    pub fn shift(word: Word, shift: i64) -> Self {
        GroupElement::Shift { word, shift }
    }

    /// Length used by the canonical order.
    pub fn weight(&self) -> usize {
        match self {
            GroupElement::Table(_) => 0,
            GroupElement::Word(w) => w.len(),
            GroupElement::Shift { word, shift } => word.len() + shift.unsigned_abs() as usize,
            GroupElement::Pair(a, b) => a.weight() + b.weight(),
        }
    }

    fn tag(&self) -> u8 {
        match self {
            GroupElement::Table(_) => 0,
            GroupElement::Word(_) => 1,
            GroupElement::Shift { .. } => 2,
            GroupElement::Pair(..) => 3,
        }
    }

    pub fn as_word(&self) -> Option<&Word> {
        match self {
            GroupElement::Word(w) => Some(w),
            _ => None,
        }
    }

    pub fn components(&self) -> Option<(&GroupElement, &GroupElement)> {
        match self {
            GroupElement::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| match (self, other) {
            (GroupElement::Table(a), GroupElement::Table(b)) => a.cmp(b),
            (GroupElement::Word(a), GroupElement::Word(b)) => a.cmp(b),
            (
                GroupElement::Shift { word: a, shift: n },
                GroupElement::Shift { word: b, shift: m },
            ) => a.cmp(b).then_with(|| shift_key(*n).cmp(&shift_key(*m))),
            (GroupElement::Pair(a1, a2), GroupElement::Pair(b1, b2)) => {
                a1.cmp(b1).then_with(|| a2.cmp(b2))
            }
            _ => self.tag().cmp(&other.tag()),
        })
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Orders shift exponents as 0, 1, -1, 2, -2, ...
fn shift_key(n: i64) -> (u64, bool) {
    (n.unsigned_abs(), n < 0)
}

/// Default cap on enumerated ball sizes.
pub const DEFAULT_BALL_CAP: usize = 200_000;

impl GroupDescriptor {
    pub fn free(rank: usize) -> Self {
        GroupDescriptor::Free(FreeGroup::of_rank(rank))
    }

    pub fn shift_extension(window: i64) -> Self {
        GroupDescriptor::Shift(ShiftExtension { window })
    }

    pub fn product(a: GroupDescriptor, b: GroupDescriptor) -> Self {
        GroupDescriptor::Product(Box::new(a), Box::new(b))
    }

    pub fn family(&self) -> &'static str {
        match self {
            GroupDescriptor::FiniteTable(_) => "FiniteTable",
            GroupDescriptor::Free(_) => "FreeGroup",
            GroupDescriptor::Fp(_) => "FpGroup",
            GroupDescriptor::Shift(_) => "ShiftExtension",
            GroupDescriptor::Product(..) => "DirectProduct",
        }
    }

    /// Whether element equality is exact (always, except for an FpGroup whose
    /// completion did not finish).
    pub fn has_exact_equality(&self) -> bool {
        match self {
            GroupDescriptor::Fp(g) => g.is_confluent(),
            GroupDescriptor::Product(a, b) => a.has_exact_equality() && b.has_exact_equality(),
            _ => true,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupDescriptor::FiniteTable(t) => GroupElement::Table(t.identity()),
            GroupDescriptor::Free(_) | GroupDescriptor::Fp(_) => GroupElement::Word(Word::identity()),
            GroupDescriptor::Shift(_) => GroupElement::shift(Word::identity(), 0),
            GroupDescriptor::Product(a, b) => GroupElement::pair(a.identity(), b.identity()),
        }
    }

    fn mismatch(&self) -> GroupError {
        GroupError::DescriptorMismatch { expected: self.family() }
    }

    /// Checks that an element is well formed for this family.
    pub fn check(&self, e: &GroupElement) -> Result<(), GroupError> {
        match (self, e) {
            (GroupDescriptor::FiniteTable(t), GroupElement::Table(i)) => {
                if *i < t.order() {
                    Ok(())
                } else {
                    Err(GroupError::UnknownGenerator(*i as i64))
                }
            }
            (GroupDescriptor::Free(f), GroupElement::Word(w)) => {
                match w.letters().iter().find(|l| !f.ids.contains(&l.gen)) {
                    Some(l) => Err(GroupError::UnknownGenerator(l.gen)),
                    None => Ok(()),
                }
            }
            (GroupDescriptor::Fp(g), GroupElement::Word(w)) => {
                match w.letters().iter().find(|l| l.gen < 0 || l.gen >= g.rank() as i64) {
                    Some(l) => Err(GroupError::UnknownGenerator(l.gen)),
                    None => Ok(()),
                }
            }
            (GroupDescriptor::Shift(_), GroupElement::Shift { .. }) => Ok(()),
            (GroupDescriptor::Product(a, b), GroupElement::Pair(x, y)) => {
                a.check(x)?;
                b.check(y)
            }
            _ => Err(self.mismatch()),
        }
    }

    /// Canonical normal form.
    pub fn normalize(&self, e: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(e)?;
        Ok(self.normalize_unchecked(e))
    }

    fn normalize_unchecked(&self, e: &GroupElement) -> GroupElement {
        match (self, e) {
            (GroupDescriptor::Free(_), GroupElement::Word(w)) => {
                GroupElement::Word(Word::reduce(w.letters().iter().copied()))
            }
            (GroupDescriptor::Fp(g), GroupElement::Word(w)) => GroupElement::Word(g.normal_form(w)),
            (GroupDescriptor::Shift(_), GroupElement::Shift { word, shift }) => {
                GroupElement::shift(Word::reduce(word.letters().iter().copied()), *shift)
            }
            (GroupDescriptor::Product(a, b), GroupElement::Pair(x, y)) => {
                GroupElement::pair(a.normalize_unchecked(x), b.normalize_unchecked(y))
            }
            _ => e.clone(),
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (self, a, b) {
            (GroupDescriptor::FiniteTable(t), GroupElement::Table(x), GroupElement::Table(y)) => {
                GroupElement::Table(t.mul(*x, *y))
            }
            (GroupDescriptor::Free(_), GroupElement::Word(x), GroupElement::Word(y)) => {
                GroupElement::Word(x.mul(y))
            }
            (GroupDescriptor::Fp(g), GroupElement::Word(x), GroupElement::Word(y)) => {
                GroupElement::Word(g.normal_form(&x.mul(y)))
            }
            (
                GroupDescriptor::Shift(_),
                GroupElement::Shift { word: w, shift: n },
                GroupElement::Shift { word: v, shift: m },
            ) => GroupElement::shift(w.mul(&v.shifted(*n)), n + m),
            (GroupDescriptor::Product(ga, gb), GroupElement::Pair(x1, x2), GroupElement::Pair(y1, y2)) => {
                GroupElement::pair(ga.mul_unchecked(x1, y1), gb.mul_unchecked(x2, y2))
            }
            _ => unreachable!("elements were checked against the descriptor"),
        }
    }

    pub fn invert(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        Ok(self.inv_unchecked(a))
    }

    pub(crate) fn inv_unchecked(&self, a: &GroupElement) -> GroupElement {
        match (self, a) {
            (GroupDescriptor::FiniteTable(t), GroupElement::Table(x)) => GroupElement::Table(t.inv(*x)),
            (GroupDescriptor::Free(_), GroupElement::Word(w)) => GroupElement::Word(w.inverse()),
            (GroupDescriptor::Fp(g), GroupElement::Word(w)) => GroupElement::Word(g.normal_form(&w.inverse())),
            (GroupDescriptor::Shift(_), GroupElement::Shift { word, shift }) => {
                GroupElement::shift(word.inverse().shifted(-shift), -shift)
            }
            (GroupDescriptor::Product(ga, gb), GroupElement::Pair(x, y)) => {
                GroupElement::pair(ga.inv_unchecked(x), gb.inv_unchecked(y))
            }
            _ => unreachable!("element was checked against the descriptor"),
        }
    }

    /// `a b a^-1`.
    pub fn conjugate(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        let ab = self.multiply(a, b)?;
        Ok(self.mul_unchecked(&ab, &self.inv_unchecked(a)))
    }

    pub fn equal(&self, a: &GroupElement, b: &GroupElement) -> Result<Truth, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.equal_unchecked(a, b))
    }

    fn equal_unchecked(&self, a: &GroupElement, b: &GroupElement) -> Truth {
        match (self, a, b) {
            (GroupDescriptor::Fp(g), GroupElement::Word(x), GroupElement::Word(y)) => g.equal(x, y),
            (GroupDescriptor::Product(ga, gb), GroupElement::Pair(x1, x2), GroupElement::Pair(y1, y2)) => {
                ga.equal_unchecked(x1, y1).and(gb.equal_unchecked(x2, y2))
            }
            _ => Truth::from_bool(a == b),
        }
    }

    pub fn is_identity(&self, a: &GroupElement) -> Result<Truth, GroupError> {
        self.equal(a, &self.identity())
    }

    /// Generators used for balls; inverses are added during enumeration.
    pub fn generators(&self) -> Vec<GroupElement> {
        match self {
            GroupDescriptor::FiniteTable(t) => {
                t.generators().iter().map(|&g| GroupElement::Table(g)).collect()
            }
            GroupDescriptor::Free(f) => f.ids.iter().map(|&g| GroupElement::Word(Word::gen(g))).collect(),
            GroupDescriptor::Fp(g) => (0..g.rank() as i64)
                .map(|i| GroupElement::Word(g.normal_form(&Word::gen(i))))
                .collect(),
            GroupDescriptor::Shift(s) => {
                let mut gens = alloc::vec![GroupElement::shift(Word::identity(), 1)];
                gens.extend((-s.window..=s.window).map(|i| GroupElement::shift(Word::gen(i), 0)));
                gens
            }
            GroupDescriptor::Product(a, b) => {
                let mut gens: Vec<GroupElement> =
                    a.generators().into_iter().map(|x| GroupElement::pair(x, b.identity())).collect();
                gens.extend(b.generators().into_iter().map(|y| GroupElement::pair(a.identity(), y)));
                gens
            }
        }
    }

    /// All distinct normal forms of products of at most `radius` generators
    /// and inverses, in canonical order.
    pub fn enumerate_ball(&self, radius: usize) -> Result<Vec<GroupElement>, GroupError> {
        self.enumerate_ball_capped(radius, DEFAULT_BALL_CAP)
    }

    pub fn enumerate_ball_capped(&self, radius: usize, cap: usize) -> Result<Vec<GroupElement>, GroupError> {
        let mut steps = Vec::new();
        for g in self.generators() {
            let gi = self.inv_unchecked(&g);
            steps.push(g);
            steps.push(gi);
        }
        let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
        seen.insert(self.identity());
        let mut layer = alloc::vec![self.identity()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for x in &layer {
                for s in &steps {
                    let y = self.mul_unchecked(x, s);
                    if !seen.contains(&y) {
                        if seen.len() >= cap {
                            return Err(GroupError::ResourceLimit { cap });
                        }
                        seen.insert(y.clone());
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layer = next;
        }
        Ok(seen.into_iter().collect())
    }

    /// Human-readable rendering of an element.
    pub fn format(&self, e: &GroupElement) -> String {
        match (self, e) {
            (GroupDescriptor::FiniteTable(t), GroupElement::Table(i)) if *i < t.order() => {
                String::from(t.name(*i))
            }
            (GroupDescriptor::Free(f), GroupElement::Word(w)) => {
                format_word(w, |g| f.name_of(g).map(String::from).unwrap_or_else(|| format!("g{g}")))
            }
            (GroupDescriptor::Fp(fp), GroupElement::Word(w)) => format_word(w, |g| {
                fp.names().get(g as usize).cloned().unwrap_or_else(|| format!("g{g}"))
            }),
            (GroupDescriptor::Shift(_), GroupElement::Shift { word, shift }) => {
                let mut s = if word.is_empty() {
                    String::new()
                } else {
                    format_word(word, |g| format!("g{g}"))
                };
                if *shift != 0 {
                    if !s.is_empty() {
                        s.push(' ');
                    }
                    s.push('t');
                    if *shift != 1 {
                        s.push_str(&format!("^{shift}"));
                    }
                }
                if s.is_empty() {
                    s.push('1');
                }
                s
            }
            (GroupDescriptor::Product(a, b), GroupElement::Pair(x, y)) => {
                format!("({}, {})", a.format(x), b.format(y))
            }
            _ => format!("{e:?}"),
        }
    }
}

/// Renders a word with runs collapsed to powers, e.g. `a^2 b^-1`.
pub fn format_word(w: &Word, name: impl Fn(i64) -> String) -> String {
    if w.is_empty() {
        return String::from("1");
    }
    let mut parts: Vec<String> = Vec::new();
    let ls = w.letters();
    let mut i = 0;
    while i < ls.len() {
        let mut j = i;
        while j < ls.len() && ls[j] == ls[i] {
            j += 1;
        }
        let k = (j - i) as i64 * ls[i].exponent();
        let n = name(ls[i].gen);
        parts.push(if k == 1 { n } else { format!("{n}^{k}") });
        i = j;
    }
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sh(w: &[(i64, i64)], n: i64) -> GroupElement {
        GroupElement::shift(Word::from_powers(w), n)
    }

    fn fw(w: &[(i64, i64)]) -> GroupElement {
        GroupElement::Word(Word::from_powers(w))
    }

    #[test]
    fn shift_products_by_hand() {
        let g = GroupDescriptor::shift_extension(2);
        // (g0, 1)(g0, -1) = (g0 g1, 0)
        assert_eq!(g.multiply(&sh(&[(0, 1)], 1), &sh(&[(0, 1)], -1)).unwrap(), sh(&[(0, 1), (1, 1)], 0));
        // t g0 = g1 t
        assert_eq!(g.multiply(&sh(&[], 1), &sh(&[(0, 1)], 0)).unwrap(), sh(&[(1, 1)], 1));
        assert_eq!(g.invert(&sh(&[], 1)).unwrap(), sh(&[], -1));
        // t g0 t^-1 = g1
        assert_eq!(g.conjugate(&sh(&[], 1), &sh(&[(0, 1)], 0)).unwrap(), sh(&[(1, 1)], 0));
    }

    #[test]
    fn free_and_table_basics() {
        let f2 = GroupDescriptor::free(2);
        assert_eq!(f2.normalize(&GroupElement::Word(Word::reduce([Letter::pos(0), Letter::pos(1), Letter::neg(1)]))).unwrap(), fw(&[(0, 1)]));
        assert_eq!(f2.multiply(&fw(&[(0, 1)]), &fw(&[(0, -1)])).unwrap(), f2.identity());
        let z3 = GroupDescriptor::FiniteTable(FiniteTable::cyclic(3));
        assert_eq!(z3.multiply(&GroupElement::Table(0), &GroupElement::Table(2)).unwrap(), GroupElement::Table(2));
    }

    #[test]
    fn mismatched_elements_are_rejected() {
        let f2 = GroupDescriptor::free(2);
        assert!(matches!(f2.normalize(&fw(&[(5, 1)])), Err(GroupError::UnknownGenerator(5))));
        assert!(matches!(f2.normalize(&sh(&[], 1)), Err(GroupError::DescriptorMismatch { .. })));
    }

    #[test]
    fn ball_sizes() {
        let f2 = GroupDescriptor::free(2);
        assert_eq!(f2.enumerate_ball(1).unwrap().len(), 5);
        assert_eq!(f2.enumerate_ball(2).unwrap().len(), 17);
        assert_eq!(f2.enumerate_ball(4).unwrap().len(), 161);
        let z3 = GroupDescriptor::FiniteTable(FiniteTable::cyclic(3));
        assert_eq!(z3.enumerate_ball(2).unwrap().len(), 3);
        assert!(matches!(f2.enumerate_ball_capped(6, 100), Err(GroupError::ResourceLimit { cap: 100 })));
    }

    #[test]
    fn ball_is_sorted_and_starts_at_identity() {
        let f2 = GroupDescriptor::free(2);
        let ball = f2.enumerate_ball(2).unwrap();
        assert_eq!(ball[0], f2.identity());
        assert!(ball.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ball[1], fw(&[(0, 1)]));
        assert_eq!(ball[2], fw(&[(0, -1)]));
    }

    #[test]
    fn formatting() {
        let f2 = GroupDescriptor::free(2);
        assert_eq!(f2.format(&fw(&[(0, 2), (1, -1)])), "a^2 b^-1");
        let g = GroupDescriptor::shift_extension(1);
        assert_eq!(g.format(&sh(&[(3, 1)], -1)), "g3 t^-1");
        assert_eq!(g.format(&sh(&[], 0)), "1");
    }

    fn shift_elem() -> impl Strategy<Value = GroupElement> {
        (prop::collection::vec((-3i64..4, -2i64..3), 0..4), -2i64..3)
            .prop_map(|(w, n)| GroupElement::shift(Word::from_powers(&w), n))
    }

    fn dihedral() -> GroupDescriptor {
        let rels = alloc::vec![Word::from_powers(&[(1, 2)]), Word::from_powers(&[(1, 1), (0, 1), (1, 1), (0, 1)])];
        GroupDescriptor::Fp(FpGroup::new(alloc::vec!["a".into(), "r".into()], rels).unwrap())
    }

    fn dihedral_elem() -> impl Strategy<Value = GroupElement> {
        let g = dihedral();
        prop::collection::vec((0i64..2, -2i64..3), 0..5)
            .prop_map(move |w| g.normalize(&GroupElement::Word(Word::from_powers(&w))).unwrap())
    }

    proptest! {
        #[test]
        fn shift_group_laws(a in shift_elem(), b in shift_elem(), c in shift_elem()) {
            let g = GroupDescriptor::shift_extension(3);
            let ab_c = g.multiply(&g.multiply(&a, &b).unwrap(), &c).unwrap();
            let a_bc = g.multiply(&a, &g.multiply(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            prop_assert_eq!(g.multiply(&a, &g.identity()).unwrap(), a.clone());
            prop_assert_eq!(g.multiply(&g.invert(&a).unwrap(), &a).unwrap(), g.identity());
            prop_assert_eq!(
                g.invert(&g.multiply(&a, &b).unwrap()).unwrap(),
                g.multiply(&g.invert(&b).unwrap(), &g.invert(&a).unwrap()).unwrap()
            );
        }

        #[test]
        fn dihedral_group_laws(a in dihedral_elem(), b in dihedral_elem(), c in dihedral_elem()) {
            let g = dihedral();
            let ab_c = g.multiply(&g.multiply(&a, &b).unwrap(), &c).unwrap();
            let a_bc = g.multiply(&a, &g.multiply(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(g.equal(&ab_c, &a_bc).unwrap(), Truth::Yes);
            prop_assert_eq!(g.multiply(&a, &g.invert(&a).unwrap()).unwrap(), g.identity());
        }

        #[test]
        fn table_group_laws(a in 0usize..6, b in 0usize..6, c in 0usize..6) {
            let g = GroupDescriptor::FiniteTable(FiniteTable::cyclic(6));
            let (a, b, c) = (GroupElement::Table(a), GroupElement::Table(b), GroupElement::Table(c));
            let ab_c = g.multiply(&g.multiply(&a, &b).unwrap(), &c).unwrap();
            let a_bc = g.multiply(&a, &g.multiply(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            prop_assert_eq!(g.multiply(&g.identity(), &a).unwrap(), a.clone());
            prop_assert_eq!(g.multiply(&g.invert(&a).unwrap(), &a).unwrap(), g.identity());
        }
    }
}
