use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::GroupError;

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
}

impl FiniteTable {
    /// Validates the group axioms. `generators` defaults to every non-identity element.
    pub fn new(
        names: Vec<String>,
        table: Vec<Vec<usize>>,
        generators: Option<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if names.len() != n {
            return Err(GroupError::InvalidTable(format!(
                "{} names for {} rows",
                names.len(),
                n
            )));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidTable(format!("row {i} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::InvalidTable(format!("entry {bad} out of range")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| GroupError::InvalidTable("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| GroupError::InvalidTable(format!("{} has no inverse", names[x])))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::InvalidTable(format!(
                            "associativity fails on ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let generators = match generators {
            Some(g) => {
                if let Some(&bad) = g.iter().find(|&&x| x >= n) {
                    return Err(GroupError::InvalidTable(format!("generator {bad} out of range")));
                }
                g
            }
            None => (0..n).filter(|&x| x != identity).collect(),
        };
        Ok(FiniteTable { names, table, identity, inverses, generators })
    }

    /// The cyclic group `Z/n` with elements named `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| format!("{i}")).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteTable::new(names, table, Some(if n > 1 { alloc::vec![1] } else { Vec::new() }))
            .expect("cyclic table is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Closure of a subset under multiplication (and hence inverses, by finiteness).
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = alloc::vec![false; self.order()];
        member[self.identity] = true;
        let mut frontier = alloc::vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    frontier.push(y);
                }
            }
        }
        member
    }

    /// Whether a subset is a subgroup.
    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        let mut member = alloc::vec![false; self.order()];
        for &x in subset {
            if x >= self.order() {
                return false;
            }
            member[x] = true;
        }
        member[self.identity]
            && subset.iter().all(|&a| member[self.inv(a)] && subset.iter().all(|&b| member[self.mul(a, b)]))
    }
}
