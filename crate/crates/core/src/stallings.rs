//! Folded core graphs of finitely generated subgroups of free groups.
//!
//! A [`SubgroupGraph`] stores, for every vertex, a map from letters to
//! neighbours. Every edge `u -x-> v` appears twice: as `x` at `u` and as
//! `x^-1` at `v`. The basepoint is vertex 0, and vertex ids follow BFS
//! order from it (letters visited in shortlex letter order). Two graphs for
//! the same subgroup are therefore equal as values.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::group::{Letter, Word};

/// The generators a graph is read over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Alphabet {
    /// A free group of finite rank on these ids.
    Finite(Vec<i64>),
    /// Countably many generators, as in `F_∞`.
    Unbounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphIndex {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Qn1Decision {
    /// `[H : H ∩ gHg^-1] = index`.
    InGamma(usize),
    NotInGamma,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupGraph {
    alphabet: Alphabet,
    adj: Vec<BTreeMap<Letter, usize>>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

/// Folds an arbitrary labelled graph on `n` vertices and returns the folded
/// core component of `base`, canonically numbered with `base` as vertex 0.
fn fold(n: usize, edges: &[(usize, Letter, usize)], base: usize) -> Vec<BTreeMap<Letter, usize>> {
    let mut uf = UnionFind { parent: (0..n).collect() };
    let mut adj: Vec<BTreeMap<Letter, usize>> = alloc::vec![BTreeMap::new(); n];
    let mut pending: Vec<(usize, usize)> = Vec::new();

    fn attach(
        adj: &mut [BTreeMap<Letter, usize>],
        uf: &mut UnionFind,
        pending: &mut Vec<(usize, usize)>,
        u: usize,
        l: Letter,
        v: usize,
    ) {
        let ru = uf.find(u);
        match adj[ru].get(&l) {
            Some(&t) => {
                if uf.find(t) != uf.find(v) {
                    pending.push((t, v));
                }
            }
            None => {
                adj[ru].insert(l, v);
            }
        }
    }

    for &(u, l, v) in edges {
        attach(&mut adj, &mut uf, &mut pending, u, l, v);
        attach(&mut adj, &mut uf, &mut pending, v, l.inverse(), u);
        while let Some((x, y)) = pending.pop() {
            let (rx, ry) = (uf.find(x), uf.find(y));
            if rx == ry {
                continue;
            }
            let (keep, gone) = if rx < ry { (rx, ry) } else { (ry, rx) };
            uf.parent[gone] = keep;
            let moved = core::mem::take(&mut adj[gone]);
            for (l, t) in moved {
                attach(&mut adj, &mut uf, &mut pending, keep, l, t);
            }
        }
    }

    // Resolve targets and keep only roots.
    let mut resolved: BTreeMap<usize, BTreeMap<Letter, usize>> = BTreeMap::new();
    for v in 0..n {
        if uf.find(v) == v {
            let m: BTreeMap<Letter, usize> = adj[v].iter().map(|(&l, &t)| (l, uf.find(t))).collect();
            resolved.insert(v, m);
        }
    }
    let root = uf.find(base);
    trim_and_canonicalize(resolved, root)
}

/// Removes hanging trees away from `root` and renumbers in BFS order.
fn trim_and_canonicalize(
    mut graph: BTreeMap<usize, BTreeMap<Letter, usize>>,
    root: usize,
) -> Vec<BTreeMap<Letter, usize>> {
    // Restrict to the component of the root.
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &t in graph[&v].values() {
            if seen.insert(t) {
                queue.push_back(t);
            }
        }
    }
    graph.retain(|v, _| seen.contains(v));
    // Repeatedly drop non-root vertices of degree <= 1.
    let mut stack: Vec<usize> = graph.iter().filter(|(v, m)| **v != root && m.len() <= 1).map(|(v, _)| *v).collect();
    while let Some(v) = stack.pop() {
        let Some(m) = graph.get(&v) else { continue };
        if m.len() > 1 {
            continue;
        }
        let m = graph.remove(&v).unwrap();
        for (l, t) in m {
            if let Some(tm) = graph.get_mut(&t) {
                tm.remove(&l.inverse());
                if t != root && tm.len() <= 1 {
                    stack.push(t);
                }
            }
        }
    }
    canonicalize(&graph, root)
}

fn canonicalize(graph: &BTreeMap<usize, BTreeMap<Letter, usize>>, root: usize) -> Vec<BTreeMap<Letter, usize>> {
    let mut fresh: BTreeMap<usize, usize> = BTreeMap::from([(root, 0)]);
    let mut order = alloc::vec![root];
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &t in graph[&v].values() {
            if let alloc::collections::btree_map::Entry::Vacant(e) = fresh.entry(t) {
                e.insert(order.len());
                order.push(t);
            }
        }
    }
    order
        .iter()
        .map(|v| graph[v].iter().map(|(&l, t)| (l, fresh[t])).collect())
        .collect()
}

impl SubgroupGraph {
    /// Folded core graph of `<generators>`.
    pub fn new(alphabet: Alphabet, generators: &[Word]) -> Self {
        let mut edges = Vec::new();
        let mut n = 1;
        for g in generators {
            let g = Word::reduce(g.letters().iter().copied());
            if g.is_empty() {
                continue;
            }
            let ls = g.letters();
            let mut cur = 0;
            for (i, &l) in ls.iter().enumerate() {
                let next = if i + 1 == ls.len() {
                    0
                } else {
                    n += 1;
                    n - 1
                };
                edges.push((cur, l, next));
                cur = next;
            }
        }
        SubgroupGraph { alphabet, adj: fold(n, &edges, 0) }
    }

    /// Subgroup graph of the trivial subgroup.
    pub fn trivial(alphabet: Alphabet) -> Self {
        SubgroupGraph::new(alphabet, &[])
    }

    fn from_edges(alphabet: Alphabet, n: usize, edges: &[(usize, Letter, usize)], base: usize) -> Self {
        SubgroupGraph { alphabet, adj: fold(n, edges, base) }
    }

    fn edge_list(&self) -> Vec<(usize, Letter, usize)> {
        let mut out = Vec::new();
        for (u, m) in self.adj.iter().enumerate() {
            for (&l, &v) in m {
                if !l.inv {
                    out.push((u, l, v));
                }
            }
        }
        out
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.len()).sum::<usize>() / 2
    }

    /// Positively oriented edges `(source, target, generator)`.
    pub fn edges(&self) -> Vec<(usize, usize, i64)> {
        self.edge_list().into_iter().map(|(u, l, v)| (u, v, l.gen)).collect()
    }

    pub fn neighbours(&self, v: usize) -> &BTreeMap<Letter, usize> {
        &self.adj[v]
    }

    pub fn is_trivial(&self) -> bool {
        self.edge_count() == 0
    }

    /// Rank of the subgroup (`E - V + 1`).
    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    /// Reads `w` from the basepoint as far as edges allow. Returns the vertex
    /// reached and the number of letters consumed.
    pub fn read_from(&self, start: usize, w: &Word) -> (usize, usize) {
        let mut v = start;
        for (i, l) in w.letters().iter().enumerate() {
            match self.adj[v].get(l) {
                Some(&t) => v = t,
                None => return (v, i),
            }
        }
        (v, w.len())
    }

    pub fn contains(&self, w: &Word) -> bool {
        let w = Word::reduce(w.letters().iter().copied());
        self.read_from(0, &w) == (0, w.len())
    }

    /// Key of the left coset `gH`: `g^-1` read from the basepoint, giving
    /// the vertex reached together with the unread suffix. Two elements
    /// share a key exactly when their left cosets agree.
    pub fn left_coset_key(&self, g: &Word) -> (usize, Word) {
        let u = g.inverse();
        let (v, k) = self.read_from(0, &u);
        (v, Word::reduce(u.letters()[k..].iter().copied()))
    }

    pub fn index(&self) -> GraphIndex {
        match &self.alphabet {
            Alphabet::Finite(ids) => {
                let full = 2 * ids.len();
                if self.adj.iter().all(|m| m.len() == full) {
                    GraphIndex::Finite(self.adj.len())
                } else {
                    GraphIndex::Infinite
                }
            }
            Alphabet::Unbounded => GraphIndex::Infinite,
        }
    }

    /// A free basis read off a BFS spanning tree.
    pub fn generators(&self) -> Vec<Word> {
        let n = self.adj.len();
        let mut path: Vec<Option<Word>> = alloc::vec![None; n];
        let mut tree: BTreeSet<(usize, Letter)> = BTreeSet::new();
        path[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for (&l, &t) in &self.adj[v] {
                if path[t].is_none() {
                    path[t] = Some(path[v].as_ref().unwrap().mul(&Word::reduce([l])));
                    tree.insert((v, l));
                    tree.insert((t, l.inverse()));
                    queue.push_back(t);
                }
            }
        }
        let mut gens = Vec::new();
        for (u, l, v) in self.edge_list() {
            if tree.contains(&(u, l)) {
                continue;
            }
            let pu = path[u].as_ref().unwrap();
            let pv = path[v].as_ref().unwrap();
            gens.push(pu.mul(&Word::reduce([l])).mul(&pv.inverse()));
        }
        gens.sort();
        gens
    }

    /// Based pullback `H ∩ K`.
    pub fn intersect(&self, other: &SubgroupGraph) -> SubgroupGraph {
        let mut ids: BTreeMap<(usize, usize), usize> = BTreeMap::from([((0, 0), 0)]);
        let mut queue = VecDeque::from([(0usize, 0usize)]);
        let mut edges = Vec::new();
        while let Some((u, v)) = queue.pop_front() {
            let src = ids[&(u, v)];
            for (&l, &tu) in &self.adj[u] {
                let Some(&tv) = other.adj[v].get(&l) else { continue };
                let dst = match ids.get(&(tu, tv)) {
                    Some(&d) => d,
                    None => {
                        let d = ids.len();
                        ids.insert((tu, tv), d);
                        queue.push_back((tu, tv));
                        d
                    }
                };
                if !l.inv {
                    edges.push((src, l, dst));
                }
            }
        }
        SubgroupGraph::from_edges(self.alphabet.clone(), ids.len(), &edges, 0)
    }

    /// Graph of `g H g^-1`.
    pub fn conjugate(&self, g: &Word) -> SubgroupGraph {
        let g = Word::reduce(g.letters().iter().copied());
        let mut edges = self.edge_list();
        let n = self.adj.len();
        if g.is_empty() {
            return self.clone();
        }
        // New basepoint `n`, path reading g from it to the old basepoint.
        let ls = g.letters();
        let mut count = n + 1;
        let mut cur = n;
        for (i, &l) in ls.iter().enumerate() {
            let next = if i + 1 == ls.len() {
                0
            } else {
                count += 1;
                count - 1
            };
            edges.push((cur, l, next));
            cur = next;
        }
        SubgroupGraph::from_edges(self.alphabet.clone(), count, &edges, n)
    }

    /// Image under the index shift `g_i -> g_{i+by}`.
    pub fn shifted(&self, by: i64) -> SubgroupGraph {
        let alphabet = match &self.alphabet {
            Alphabet::Finite(ids) => Alphabet::Finite(ids.iter().map(|g| g + by).collect()),
            Alphabet::Unbounded => Alphabet::Unbounded,
        };
        let adj = self
            .adj
            .iter()
            .map(|m| m.iter().map(|(l, &t)| (l.shifted(by), t)).collect())
            .collect();
        // BFS order depends on letter order, which shifting preserves.
        SubgroupGraph { alphabet, adj }
    }

    /// Strips basepoint spurs: returns `(H', u)` with `H' = u^-1 H u` and
    /// the basepoint of `H'` of degree other than 1.
    fn without_basepoint_spur(&self) -> (SubgroupGraph, Word) {
        let mut g = self.clone();
        let mut u = Word::identity();
        while g.adj[0].len() == 1 {
            let (&l, _) = g.adj[0].iter().next().unwrap();
            let step = Word::reduce([l]);
            g = g.conjugate(&step.inverse());
            u = u.mul(&step);
        }
        (g, u)
    }

    /// `[self : sub]` for a subgroup `sub ≤ self`, or `None` when infinite.
    pub fn relative_index(&self, sub: &SubgroupGraph) -> Option<usize> {
        if self.is_trivial() {
            return Some(1);
        }
        let (h, u) = self.without_basepoint_spur();
        let k = sub.conjugate(&u.inverse());
        // The immersion Γ_K -> Γ_H must be a covering.
        let mut image: Vec<Option<usize>> = alloc::vec![None; k.adj.len()];
        image[0] = Some(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let hv = image[v].unwrap();
            let kl: Vec<&Letter> = k.adj[v].keys().collect();
            let hl: Vec<&Letter> = h.adj[hv].keys().collect();
            if kl != hl {
                return None;
            }
            for (l, &t) in &k.adj[v] {
                let ht = h.adj[hv][l];
                match image[t] {
                    Some(x) if x != ht => return None,
                    Some(_) => {}
                    None => {
                        image[t] = Some(ht);
                        queue.push_back(t);
                    }
                }
            }
        }
        let mut fibres = alloc::vec![0usize; h.adj.len()];
        for x in image.iter().flatten() {
            fibres[*x] += 1;
        }
        let d = fibres[0];
        if fibres.iter().all(|&c| c == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Malnormality: `H ∩ gHg^-1 = 1` for every `g ∉ H`, i.e. every
    /// off-diagonal component of the pullback `Γ_H × Γ_H` is a tree.
    pub fn is_malnormal(&self) -> bool {
        let n = self.adj.len();
        let mut comp: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || comp.contains_key(&(a, b)) {
                    continue;
                }
                let id = comp.len();
                let mut vertices = 0usize;
                let mut half_edges = 0usize;
                comp.insert((a, b), id);
                let mut queue = VecDeque::from([(a, b)]);
                while let Some((u, v)) = queue.pop_front() {
                    vertices += 1;
                    for (l, &tu) in &self.adj[u] {
                        if let Some(&tv) = self.adj[v].get(l) {
                            half_edges += 1;
                            if let alloc::collections::btree_map::Entry::Vacant(e) = comp.entry((tu, tv)) {
                                e.insert(id);
                                queue.push_back((tu, tv));
                            }
                        }
                    }
                }
                if half_edges / 2 >= vertices {
                    return false;
                }
            }
        }
        true
    }

    /// Debug rendering in Graphviz DOT.
    pub fn to_dot(&self, name: impl Fn(i64) -> String) -> String {
        let mut s = String::from("digraph subgroup {\n  0 [shape=doublecircle];\n");
        for (u, l, v) in self.edge_list() {
            s.push_str(&format!("  {u} -> {v} [label=\"{}\"];\n", name(l.gen)));
        }
        s.push_str("}\n");
        s
    }
}

/// Decides `g ∈ qN^(1)(H)` for `H` finitely generated in a free group.
pub fn free_qn1_decide(h: &SubgroupGraph, g: &Word) -> Qn1Decision {
    if h.contains(g) {
        return Qn1Decision::InGamma(1);
    }
    let meet = h.intersect(&h.conjugate(g));
    match h.relative_index(&meet) {
        Some(k) => Qn1Decision::InGamma(k),
        None => Qn1Decision::NotInGamma,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> Alphabet {
        Alphabet::Finite(alloc::vec![0, 1])
    }

    fn w(s: &[(i64, i64)]) -> Word {
        Word::from_powers(s)
    }

    fn a() -> Word {
        w(&[(0, 1)])
    }

    fn b() -> Word {
        w(&[(1, 1)])
    }

    fn index_two() -> SubgroupGraph {
        SubgroupGraph::new(f2(), &[w(&[(0, 2)]), b(), w(&[(0, 1), (1, 1), (0, -1)])])
    }

    #[test]
    fn hand_folded_examples() {
        let h = SubgroupGraph::new(f2(), &[a()]);
        assert_eq!((h.vertex_count(), h.edge_count()), (1, 1));
        let k = index_two();
        assert_eq!(k.vertex_count(), 2);
        assert!(k.adj.iter().all(|m| m.len() == 4));
        let j = SubgroupGraph::new(f2(), &[w(&[(0, 2)]), b()]);
        assert_eq!(j.vertex_count(), 2);
        assert_eq!(j.adj[0].get(&Letter::pos(1)), Some(&0));
        assert_eq!(j.adj[1].get(&Letter::pos(1)), None);
    }

    #[test]
    fn folding_a_redundant_presentation() {
        // <a b a^-1, a b^2 a^-1> = a <b> a^-1
        let h = SubgroupGraph::new(f2(), &[w(&[(0, 1), (1, 1), (0, -1)]), w(&[(0, 1), (1, 2), (0, -1)])]);
        assert_eq!(h, SubgroupGraph::new(f2(), &[w(&[(0, 1), (1, 1), (0, -1)])]));
        assert_eq!(h.rank(), 1);
    }

    #[test]
    fn index_examples() {
        assert_eq!(index_two().index(), GraphIndex::Finite(2));
        assert_eq!(SubgroupGraph::new(f2(), &[a()]).index(), GraphIndex::Infinite);
        assert_eq!(SubgroupGraph::new(f2(), &[a(), b()]).index(), GraphIndex::Finite(1));
    }

    #[test]
    fn intersections() {
        let ha = SubgroupGraph::new(f2(), &[a()]);
        let hb = SubgroupGraph::new(f2(), &[b()]);
        assert!(ha.intersect(&hb).is_trivial());
        let a2 = SubgroupGraph::new(f2(), &[w(&[(0, 2)])]);
        assert_eq!(ha.intersect(&a2), a2);
        assert_eq!(ha.intersect(&ha), ha);
        let k = index_two();
        assert_eq!(k.intersect(&k), k);
    }

    #[test]
    fn conjugations() {
        let ha = SubgroupGraph::new(f2(), &[a()]);
        assert_eq!(ha.conjugate(&w(&[(0, 3)])), ha);
        let hb = ha.conjugate(&b());
        assert_ne!(hb, ha);
        assert_eq!(hb, SubgroupGraph::new(f2(), &[w(&[(1, 1), (0, 1), (1, -1)])]));
        assert!(SubgroupGraph::trivial(f2()).conjugate(&b()).is_trivial());
    }

    #[test]
    fn qn1_decisions() {
        let ha = SubgroupGraph::new(f2(), &[a()]);
        assert_eq!(free_qn1_decide(&ha, &w(&[(0, 5)])), Qn1Decision::InGamma(1));
        assert_eq!(free_qn1_decide(&ha, &b()), Qn1Decision::NotInGamma);
        match free_qn1_decide(&index_two(), &a()) {
            Qn1Decision::InGamma(k) => assert!(k <= 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn qn1_with_basepoint_spur() {
        // H = b <a> b^-1 has a spur at the basepoint; g = b a b^-1 ∈ H.
        let h = SubgroupGraph::new(f2(), &[w(&[(1, 1), (0, 1), (1, -1)])]);
        assert_eq!(free_qn1_decide(&h, &w(&[(1, 1), (0, 3), (1, -1)])), Qn1Decision::InGamma(1));
        // Conjugates of a malnormal subgroup are malnormal.
        assert_eq!(free_qn1_decide(&h, &w(&[(1, 1), (0, 2)])), Qn1Decision::NotInGamma);
        // b a b^-1 normalizes b <a^2> b^-1 without lying in it.
        let h2 = SubgroupGraph::new(f2(), &[w(&[(1, 1), (0, 2), (1, -1)])]);
        assert_eq!(free_qn1_decide(&h2, &w(&[(1, 1), (0, 1), (1, -1)])), Qn1Decision::InGamma(1));
        assert_eq!(free_qn1_decide(&h, &a()), Qn1Decision::NotInGamma);
    }

    #[test]
    fn relative_index_of_powers() {
        let ha = SubgroupGraph::new(f2(), &[a()]);
        let a3 = SubgroupGraph::new(f2(), &[w(&[(0, 3)])]);
        assert_eq!(ha.relative_index(&a3), Some(3));
        assert_eq!(ha.relative_index(&SubgroupGraph::trivial(f2())), None);
        let full = SubgroupGraph::new(f2(), &[a(), b()]);
        assert_eq!(full.relative_index(&index_two()), Some(2));
    }

    #[test]
    fn malnormality() {
        assert!(SubgroupGraph::new(f2(), &[a()]).is_malnormal());
        assert!(!SubgroupGraph::new(f2(), &[w(&[(0, 2)])]).is_malnormal());
        assert!(!index_two().is_malnormal());
    }

    #[test]
    fn spanning_tree_generators_regenerate() {
        let k = index_two();
        let gens = k.generators();
        assert_eq!(gens.len(), k.rank());
        assert_eq!(SubgroupGraph::new(f2(), &gens), k);
    }

    #[test]
    fn dot_output_lists_edges() {
        let dot = SubgroupGraph::new(f2(), &[a()]).to_dot(|g| String::from(if g == 0 { "a" } else { "b" }));
        assert!(dot.contains("0 -> 0 [label=\"a\"]"));
    }

    fn word() -> impl Strategy<Value = Word> {
        prop::collection::vec((0i64..2, -2i64..3), 0..4).prop_map(|p| Word::from_powers(&p))
    }

    fn products(gens: &[Word], picks: &[(usize, bool)]) -> Word {
        picks.iter().fold(Word::identity(), |acc, &(i, inv)| {
            let g = &gens[i % gens.len()];
            acc.mul(&if inv { g.inverse() } else { g.clone() })
        })
    }

    proptest! {
        #[test]
        fn generator_products_are_members(gens in prop::collection::vec(word(), 1..4),
                                          picks in prop::collection::vec((0usize..4, any::<bool>()), 0..6)) {
            let h = SubgroupGraph::new(f2(), &gens);
            prop_assert!(h.contains(&products(&gens, &picks)));
        }

        #[test]
        fn folding_order_does_not_matter(mut gens in prop::collection::vec(word(), 1..4)) {
            let h1 = SubgroupGraph::new(f2(), &gens);
            gens.reverse();
            let h2 = SubgroupGraph::new(f2(), &gens);
            prop_assert_eq!(h1, h2);
        }

        #[test]
        fn intersection_membership(g1 in prop::collection::vec(word(), 1..3),
                                   g2 in prop::collection::vec(word(), 1..3),
                                   x in word(), picks in prop::collection::vec((0usize..4, any::<bool>()), 0..5)) {
            let h1 = SubgroupGraph::new(f2(), &g1);
            let h2 = SubgroupGraph::new(f2(), &g2);
            let meet = h1.intersect(&h2);
            for y in [x.clone(), products(&g1, &picks), products(&g2, &picks)] {
                prop_assert_eq!(meet.contains(&y), h1.contains(&y) && h2.contains(&y));
            }
        }

        #[test]
        fn conjugation_membership(gens in prop::collection::vec(word(), 1..3), g in word(), x in word()) {
            let h = SubgroupGraph::new(f2(), &gens);
            let c = h.conjugate(&g);
            let gxg = g.mul(&x).mul(&g.inverse());
            prop_assert_eq!(c.contains(&gxg), h.contains(&x));
        }

        #[test]
        fn coset_keys_match_membership(gens in prop::collection::vec(word(), 1..3), x in word(), y in word()) {
            let h = SubgroupGraph::new(f2(), &gens);
            let same = h.contains(&x.inverse().mul(&y));
            prop_assert_eq!(h.left_coset_key(&x) == h.left_coset_key(&y), same);
        }

        #[test]
        fn members_are_in_gamma_with_index_one(gens in prop::collection::vec(word(), 1..3), picks in prop::collection::vec((0usize..4, any::<bool>()), 0..5)) {
            let h = SubgroupGraph::new(f2(), &gens);
            prop_assert_eq!(free_qn1_decide(&h, &products(&gens, &picks)), Qn1Decision::InGamma(1));
        }
    }
}
