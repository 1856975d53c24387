//! Generators of `H` acting on cosets and conjugates, including the infinite
//! families `g_i, i >= n` of tail subgroups `K_n`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::group::{GroupDescriptor, GroupElement, SubgroupBackend, SubgroupSpec, Word};

/// Component selector inside nested direct products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A tail family `g_n, g_{n+1}, ...` of generators living at `path`, of
/// which `g_n..=g_end` are materialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct TailSlot {
    pub path: Vec<Side>,
    pub n: i64,
    pub end: i64,
}

/// Append-only generator list for `H`.
#[derive(Clone, Debug)]
pub(crate) struct Action {
    pub flat: Vec<GroupElement>,
    pub tails: Vec<TailSlot>,
}

pub(crate) fn lift(g: &GroupDescriptor, path: &[Side], x: GroupElement) -> GroupElement {
    match (path.split_first(), g) {
        (None, _) => x,
        (Some((Side::Left, rest)), GroupDescriptor::Product(a, b)) => GroupElement::pair(lift(a, rest, x), b.identity()),
        (Some((Side::Right, rest)), GroupDescriptor::Product(a, b)) => GroupElement::pair(a.identity(), lift(b, rest, x)),
        _ => panic!("path does not match the product structure"),
    }
}

pub(crate) fn project<'a>(path: &[Side], x: &'a GroupElement) -> Option<&'a GroupElement> {
    match path.split_first() {
        None => Some(x),
        Some((side, rest)) => {
            let (p, q) = x.components()?;
            project(rest, if *side == Side::Left { p } else { q })
        }
    }
}


pub(crate) fn tail_generator(i: i64) -> GroupElement {
    GroupElement::shift(Word::gen(i), 0)
}

/// Where `g_i`-generators start fixing a coset `cH` (for `K_n`, `c = (w, m)`), and
/// whether they fix it from there on.
///
/// For `i` above every index in `w`, `c^-1 g_i c = φ^{-m}(w^-1 g_i w)` is
/// reduced as written, so it lies in `K_n` iff `i >= n + m` and every letter
/// of `w` has index `>= n + m`.
pub(crate) fn tail_coset_status(n: i64, c: &GroupElement) -> (i64, bool) {
    match c {
        GroupElement::Shift { word, shift } => {
            let cut = n + shift;
            let start = word.max_gen().map_or(cut, |m| (m + 1).max(cut));
            let fixes = word.min_gen().is_none_or(|m| m >= cut);
            (start, fixes)
        }
        _ => panic!("tail subgroups live in the shift extension"),
    }
}

impl Action {
    pub fn new(g: &GroupDescriptor, h: &SubgroupSpec) -> Self {
        let mut action = Action { flat: Vec::new(), tails: Vec::new() };
        action.collect(g, g, h, &mut Vec::new());
        action
    }

    fn collect(&mut self, root: &GroupDescriptor, here: &GroupDescriptor, h: &SubgroupSpec, path: &mut Vec<Side>) {
        match (h.backend(), here) {
            (SubgroupBackend::Product(h1, h2), GroupDescriptor::Product(a, b)) => {
                path.push(Side::Left);
                self.collect(root, a, h1, path);
                path.pop();
                path.push(Side::Right);
                self.collect(root, b, h2, path);
                path.pop();
            }
            (SubgroupBackend::Tail(n), GroupDescriptor::Shift(s)) => {
                let end = (*n).max(s.window);
                for i in *n..=end {
                    self.flat.push(lift(root, path, tail_generator(i)));
                }
                self.tails.push(TailSlot { path: path.clone(), n: *n, end });
            }
            _ => {
                for x in h.generators() {
                    self.flat.push(lift(root, path, x.clone()));
                }
            }
        }
    }

    /// Materializes `g_{end+1}..=g_new_end` for one tail slot.
    pub fn extend(&mut self, root: &GroupDescriptor, slot: usize, new_end: i64) {
        let t = &mut self.tails[slot];
        let start = t.end + 1;
        let path = t.path.clone();
        t.end = t.end.max(new_end);
        for i in start..=new_end {
            self.flat.push(lift(root, &path, tail_generator(i)));
        }
    }

    /// The finite part of the generating set, as required by certificates.
    pub fn finite_part(g: &GroupDescriptor, h: &SubgroupSpec) -> BTreeSet<GroupElement> {
        let a = Action::new(g, h);
        let tail: BTreeSet<GroupElement> = a
            .tails
            .iter()
            .flat_map(|t| (t.n..=t.end).map(|i| lift(g, &t.path, tail_generator(i))))
            .collect();
        a.flat.into_iter().filter(|x| !tail.contains(x)).collect()
    }
}
