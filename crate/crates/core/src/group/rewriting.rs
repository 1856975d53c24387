//! Bounded shortlex Knuth–Bendix completion for finite presentations.

use alloc::vec::Vec;
use core::cmp::Ordering;

use super::word::{Letter, Word};

/// Caps that keep completion bounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompletionLimits {
    pub max_rules: usize,
    pub max_rule_length: usize,
    /// Number of rules added before giving up.
    pub max_passes: usize,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits { max_rules: 200, max_rule_length: 24, max_passes: 400 }
    }
}

type Rule = (Vec<Letter>, Vec<Letter>);

/// A string rewriting system equivalent to a group presentation.
///
/// `confluent` records whether completion finished; only then are normal
/// forms unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewriting {
    rules: Vec<Rule>,
    confluent: bool,
}

fn shortlex(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Rewriting {
    pub fn complete(rank: usize, relators: &[Word], limits: CompletionLimits) -> Self {
        let mut rules: Vec<Rule> = Vec::new();
        for g in 0..rank as i64 {
            for l in [Letter::pos(g), Letter::neg(g)] {
                rules.push((alloc::vec![l, l.inverse()], Vec::new()));
            }
        }
        let mut sys = Rewriting { rules, confluent: false };
        for r in relators {
            sys.add_equation(r.letters().to_vec(), Vec::new());
        }
        for _ in 0..limits.max_passes {
            sys.interreduce();
            if sys.rules.len() > limits.max_rules
                || sys.rules.iter().any(|(l, _)| l.len() > limits.max_rule_length)
            {
                return sys;
            }
            if !sys.resolve_one_critical_pair() {
                sys.confluent = true;
                return sys;
            }
        }
        sys
    }

    // Adds the rule from the first non-joinable critical pair, scanning
    // short rules first. Returns false when every pair is joinable.
    fn resolve_one_critical_pair(&mut self) -> bool {
        for i in 0..self.rules.len() {
            for j in 0..self.rules.len() {
                let (li, ri) = self.rules[i].clone();
                let (lj, rj) = self.rules[j].clone();
                for k in 1..li.len().min(lj.len()) {
                    if li[li.len() - k..] != lj[..k] {
                        continue;
                    }
                    let mut a = ri.clone();
                    a.extend_from_slice(&lj[k..]);
                    let mut b = li[..li.len() - k].to_vec();
                    b.extend_from_slice(&rj);
                    if self.add_equation(a, b) {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn add_equation(&mut self, a: Vec<Letter>, b: Vec<Letter>) -> bool {
        let a = self.reduce(&a);
        let b = self.reduce(&b);
        match shortlex(&a, &b) {
            Ordering::Equal => false,
            Ordering::Greater => {
                self.rules.push((a, b));
                true
            }
            Ordering::Less => {
                self.rules.push((b, a));
                true
            }
        }
    }

    fn interreduce(&mut self) {
        loop {
            let mut changed = false;
            let mut i = 0;
            while i < self.rules.len() {
                let (lhs, rhs) = self.rules[i].clone();
                let reducible = self
                    .rules
                    .iter()
                    .enumerate()
                    .any(|(j, (l, _))| j != i && contains(&lhs, l));
                if reducible {
                    self.rules.remove(i);
                    self.add_equation(lhs, rhs);
                    changed = true;
                    continue;
                }
                let reduced = self.reduce(&rhs);
                if reduced != rhs {
                    self.rules[i].1 = reduced;
                    changed = true;
                }
                i += 1;
            }
            if !changed {
                break;
            }
        }
        self.rules.sort_by(|a, b| shortlex(&a.0, &b.0));
    }

    /// Rewrites to an irreducible word; unique when the system is confluent.
    pub fn reduce(&self, word: &[Letter]) -> Vec<Letter> {
        let mut out: Vec<Letter> = Vec::with_capacity(word.len());
        let mut pending: Vec<Letter> = word.iter().rev().copied().collect();
        while let Some(l) = pending.pop() {
            out.push(l);
            if let Some((lhs, rhs)) = self.rules.iter().find(|(lhs, _)| out.ends_with(lhs)) {
                out.truncate(out.len() - lhs.len());
                pending.extend(rhs.iter().rev());
            }
        }
        out
    }

    pub fn is_confluent(&self) -> bool {
        self.confluent
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }
}

fn contains(hay: &[Letter], needle: &[Letter]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &[(i64, i64)]) -> Word {
        Word::from_powers(s)
    }

    #[test]
    fn infinite_dihedral_completes() {
        // a = 0, r = 1; relators r^2 and (ra)^2.
        let rels = [w(&[(1, 2)]), w(&[(1, 1), (0, 1), (1, 1), (0, 1)])];
        let sys = Rewriting::complete(2, &rels, CompletionLimits::default());
        assert!(sys.is_confluent());
        let r = Letter::pos(1);
        let a = Letter::pos(0);
        // r a r^-1 = a^-1
        assert_eq!(sys.reduce(&[r, a, r.inverse()]), alloc::vec![a.inverse()]);
        // a^k r a^-k = a^2k r
        assert_eq!(
            sys.reduce(&[a, a, r, a.inverse(), a.inverse()]),
            alloc::vec![a, a, a, a, r]
        );
    }

    #[test]
    fn free_abelian_rank_two_completes() {
        let rels = [w(&[(0, 1), (1, 1), (0, -1), (1, -1)])];
        let sys = Rewriting::complete(2, &rels, CompletionLimits::default());
        assert!(sys.is_confluent());
        let (a, b) = (Letter::pos(0), Letter::pos(1));
        assert_eq!(sys.reduce(&[b, a]), sys.reduce(&[a, b]));
        assert_eq!(sys.reduce(&[b, a, b.inverse()]), alloc::vec![a]);
    }

    #[test]
    fn baumslag_solitar_hits_the_caps() {
        let rels = [w(&[(1, 1), (0, 1), (1, -1), (0, -2)])];
        let limits = CompletionLimits { max_rules: 40, max_rule_length: 12, max_passes: 60 };
        let sys = Rewriting::complete(2, &rels, limits);
        assert!(!sys.is_confluent());
        // Still a valid rewriting: the relator reduces to the identity.
        assert!(sys.reduce(rels[0].letters()).is_empty());
    }
}
