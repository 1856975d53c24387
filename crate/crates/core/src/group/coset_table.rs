//! HLT-style Todd–Coxeter coset enumeration with a coset cap.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use super::word::{Letter, Word};

fn col(l: Letter) -> usize {
    (l.gen as usize) * 2 + usize::from(l.inv)
}

/// A complete coset table for a finite-index subgroup, numbered in BFS order
/// from the subgroup's own coset 0. Cosets are right cosets `Hw`, and the
/// table records `Hw -> Hwx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    rows: Vec<Vec<usize>>,
}

struct Enumerator {
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    width: usize,
    cap: usize,
    overflow: bool,
}

impl Enumerator {
    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Option<usize> {
        if self.table.len() >= self.cap {
            self.overflow = true;
            return None;
        }
        let d = self.table.len();
        self.table.push(alloc::vec![None; self.width]);
        self.parent.push(d);
        self.table[c][x] = Some(d);
        self.table[d][x ^ 1] = Some(c);
        Some(d)
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.parent[drop] = keep;
        queue.push(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.width {
                if let Some(f) = self.table[e][x] {
                    if self.table[f][x ^ 1] == Some(e) {
                        self.table[f][x ^ 1] = None;
                    }
                    let e1 = self.rep(e);
                    let f1 = self.rep(f);
                    if let Some(t) = self.table[e1][x] {
                        self.merge(f1, t, &mut queue);
                    } else if let Some(t) = self.table[f1][x ^ 1] {
                        self.merge(e1, t, &mut queue);
                    } else {
                        self.table[e1][x] = Some(f1);
                        self.table[f1][x ^ 1] = Some(e1);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, word: &[usize]) {
        if word.is_empty() {
            return;
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = word.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                match self.table[f][word[i]] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i as isize {
                match self.table[b][word[j as usize] ^ 1] {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return;
            }
            if j == i as isize {
                self.table[f][word[i]] = Some(b);
                self.table[b][word[i] ^ 1] = Some(f);
                return;
            }
            if self.define(f, word[i]).is_none() {
                return;
            }
        }
    }
}

impl CosetTable {
    /// Enumerates the cosets of `<subgroup>` in `<rank | relators>`.
    /// Returns `None` when more than `cap` cosets would be needed.
    pub fn enumerate(rank: usize, relators: &[Word], subgroup: &[Word], cap: usize) -> Option<Self> {
        let width = 2 * rank;
        let rels: Vec<Vec<usize>> =
            relators.iter().map(|r| r.letters().iter().map(|&l| col(l)).collect()).collect();
        let mut en = Enumerator {
            table: alloc::vec![alloc::vec![None; width]],
            parent: alloc::vec![0],
            width,
            cap: cap.max(1),
            overflow: false,
        };
        for h in subgroup {
            let w: Vec<usize> = h.letters().iter().map(|&l| col(l)).collect();
            en.scan_and_fill(0, &w);
            if en.overflow {
                return None;
            }
        }
        let mut c = 0;
        while c < en.table.len() {
            for r in &rels {
                if !en.live(c) {
                    break;
                }
                en.scan_and_fill(c, r);
                if en.overflow {
                    return None;
                }
            }
            for x in 0..width {
                if !en.live(c) {
                    break;
                }
                if en.table[c][x].is_none() {
                    en.define(c, x)?;
                }
            }
            c += 1;
        }
        // Renumber live cosets in BFS order from coset 0.
        let n = en.table.len();
        let mut fresh = alloc::vec![usize::MAX; n];
        let mut order = Vec::new();
        let root = en.rep(0);
        fresh[root] = 0;
        order.push(root);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for x in 0..width {
                let t = en.rep(en.table[v][x]?);
                if fresh[t] == usize::MAX {
                    fresh[t] = order.len();
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        let mut rows = Vec::with_capacity(order.len());
        for &v in &order {
            let mut row = Vec::with_capacity(width);
            for x in 0..width {
                let t = en.rep(en.table[v][x]?);
                row.push(fresh[t]);
            }
            rows.push(row);
        }
        Some(CosetTable { rows })
    }

    pub fn index(&self) -> usize {
        self.rows.len()
    }

    /// Coset reached from `start` by reading `word`.
    pub fn trace_from(&self, start: usize, word: &Word) -> usize {
        word.letters().iter().fold(start, |c, &l| self.rows[c][col(l)])
    }

    pub fn trace(&self, word: &Word) -> usize {
        self.trace_from(0, word)
    }

    /// Shortlex-minimal words `w_c` with coset `c = Hw_c`, indexed by coset.
    pub fn representatives(&self) -> Vec<Word> {
        let mut reps: Vec<Option<Word>> = alloc::vec![None; self.rows.len()];
        reps[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for (x, &t) in self.rows[c].iter().enumerate() {
                if reps[t].is_none() {
                    let l = Letter::new(x as i64 / 2, x % 2 == 1);
                    reps[t] = Some(reps[c].as_ref().unwrap().mul(&Word::reduce([l])));
                    queue.push_back(t);
                }
            }
        }
        reps.into_iter().map(Option::unwrap).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &[(i64, i64)]) -> Word {
        Word::from_powers(s)
    }

    #[test]
    fn symmetric_group_s3_orders() {
        // <a, b | a^2, b^3, (ab)^2> has order 6.
        let rels = [w(&[(0, 2)]), w(&[(1, 3)]), w(&[(0, 1), (1, 1), (0, 1), (1, 1)])];
        let t = CosetTable::enumerate(2, &rels, &[], 100).unwrap();
        assert_eq!(t.index(), 6);
        let t = CosetTable::enumerate(2, &rels, &[w(&[(1, 1)])], 100).unwrap();
        assert_eq!(t.index(), 2);
        let t = CosetTable::enumerate(2, &rels, &[w(&[(0, 1)])], 100).unwrap();
        assert_eq!(t.index(), 3);
    }

    #[test]
    fn coset_of_subgroup_elements_is_zero() {
        let rels = [w(&[(1, 2)]), w(&[(1, 1), (0, 1), (1, 1), (0, 1)])];
        let t = CosetTable::enumerate(2, &rels, &[w(&[(0, 1)])], 100).unwrap();
        assert_eq!(t.index(), 2);
        assert_eq!(t.trace(&w(&[(0, 7)])), 0);
        assert_eq!(t.trace(&w(&[(1, 1), (0, 3)])), 1);
        assert_eq!(t.trace(&w(&[(1, 1), (0, 3), (1, 1)])), 0);
    }

    #[test]
    fn infinite_index_overflows() {
        let rels = [w(&[(0, 2)])];
        assert!(CosetTable::enumerate(2, &rels, &[w(&[(1, 1)])], 500).is_none());
    }

    #[test]
    fn affine_group_mod_seven() {
        // <a, m | a^7, m^6, m a m^-1 a^-3>, order 42.
        let rels = [w(&[(0, 7)]), w(&[(1, 6)]), w(&[(1, 1), (0, 1), (1, -1), (0, -3)])];
        assert_eq!(CosetTable::enumerate(2, &rels, &[], 1000).unwrap().index(), 42);
        assert_eq!(CosetTable::enumerate(2, &rels, &[w(&[(1, 1)])], 1000).unwrap().index(), 7);
    }
}
