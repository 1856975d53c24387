//! Replayable certificates `Hg ⊆ g_1H ∪ ... ∪ g_nH` and their composition.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::action::{lift, project, tail_coset_status, tail_generator, Action, Side};
use super::orbit::{explore, Exploration, Limit};
use crate::error::EngineError;
use crate::group::{coset_equal, is_subgroup_member, GroupDescriptor, GroupElement, SubgroupSpec, Truth};

/// For every `i >= from`, the tail generator `g_i` at `path` fixes every
/// coset of the cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailClause {
    pub path: Vec<Side>,
    pub n: i64,
    pub from: i64,
}

/// A finite left-coset cover of `Hg` together with the data to re-check it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QnCertificate {
    pub element: GroupElement,
    /// `cover[0]` lies in `element·H`.
    pub cover: Vec<GroupElement>,
    /// Generators of `H` used by the transition table.
    pub generators: Vec<GroupElement>,
    /// `transitions[s][i] = j` records `generators[s] · cover[i] ∈ cover[j] H`.
    pub transitions: Vec<Vec<usize>>,
    pub tails: Vec<TailClause>,
}

fn reject(msg: impl Into<alloc::string::String>) -> EngineError {
    EngineError::Certificate(msg.into())
}

impl QnCertificate {
    pub fn cover_size(&self) -> usize {
        self.cover.len()
    }

    pub(crate) fn from_exploration(element: GroupElement, ex: Exploration) -> Self {
        let tails = ex
            .action
            .tails
            .iter()
            .map(|t| TailClause { path: t.path.clone(), n: t.n, from: t.end + 1 })
            .collect();
        QnCertificate {
            element,
            cover: ex.orbit.representatives,
            generators: ex.action.flat,
            transitions: ex.transitions,
            tails,
        }
    }

    /// Re-checks every claim with [`coset_equal`] and subgroup membership.
    pub fn replay(&self, g: &GroupDescriptor, h: &SubgroupSpec) -> Result<(), EngineError> {
        if self.cover.is_empty() {
            return Err(reject("empty cover"));
        }
        if coset_equal(g, h, &self.element, &self.cover[0])? != Truth::Yes {
            return Err(reject("the element is not in the first coset of the cover"));
        }
        for x in &self.generators {
            if is_subgroup_member(g, h, x)? != Truth::Yes {
                return Err(reject(format!("generator {} is not in the subgroup", g.format(x))));
            }
        }

        // The generators listed, together with the tail clauses, must
        // generate the whole subgroup.
        let listed: BTreeSet<GroupElement> =
            self.generators.iter().map(|x| g.normalize(x)).collect::<Result<_, _>>()?;
        for x in Action::finite_part(g, h) {
            if !listed.contains(&x) {
                return Err(reject(format!("subgroup generator {} is not covered", g.format(&x))));
            }
        }
        for slot in Action::new(g, h).tails {
            let clause = self
                .tails
                .iter()
                .find(|c| c.path == slot.path && c.n == slot.n)
                .ok_or_else(|| reject("a tail family has no clause"))?;
            for i in slot.n..clause.from {
                if !listed.contains(&lift(g, &slot.path, tail_generator(i))) {
                    return Err(reject(format!("tail generator g{i} is missing")));
                }
            }
        }

        if self.transitions.len() != self.generators.len() {
            return Err(reject("transition table has the wrong number of rows"));
        }
        for (s, row) in self.transitions.iter().enumerate() {
            if row.len() != self.cover.len() {
                return Err(reject("transition row has the wrong length"));
            }
            for (i, &j) in row.iter().enumerate() {
                let target = self.cover.get(j).ok_or_else(|| reject("transition out of range"))?;
                let moved = g.multiply(&self.generators[s], &self.cover[i])?;
                if coset_equal(g, h, target, &moved)? != Truth::Yes {
                    return Err(reject(format!("transition {s}:{i}->{j} does not hold")));
                }
            }
        }
        for clause in &self.tails {
            for c in &self.cover {
                let c = g.normalize(c)?;
                let part = project(&clause.path, &c).ok_or_else(|| reject("tail path does not match"))?;
                if !matches!(part, GroupElement::Shift { .. }) {
                    return Err(reject("tail clause outside a shift extension"));
                }
                let (start, fixes) = tail_coset_status(clause.n, part);
                if start > clause.from || !fixes {
                    return Err(reject("tail generators do not fix the cover"));
                }
            }
        }
        Ok(())
    }
}

/// Builds a certificate whose cover consists of cosets of `candidates`.
pub(crate) fn certify_cover(
    g: &GroupDescriptor,
    h: &SubgroupSpec,
    element: &GroupElement,
    candidates: &[GroupElement],
) -> Result<QnCertificate, EngineError> {
    let ex = explore(g, h, element, Limit::Within(candidates))?;
    Ok(QnCertificate::from_exploration(g.normalize(element)?, ex))
}

/// Certificate for `element_1 · element_2`.
///
/// From `Hg_1 ⊆ ∪ a_iH` and `Hg_2 ⊆ ∪ b_jH` follows `Hg_1g_2 ⊆ ∪ a_ib_jH`;
/// the products `a_ib_j` are the candidate cover, trimmed to the cosets
/// actually reached from `g_1g_2`.
pub fn compose_certificates(
    g: &GroupDescriptor,
    h: &SubgroupSpec,
    c1: &QnCertificate,
    c2: &QnCertificate,
) -> Result<QnCertificate, EngineError> {
    c1.replay(g, h)?;
    c2.replay(g, h)?;
    let element = g.multiply(&c1.element, &c2.element)?;
    let mut candidates = Vec::with_capacity(c1.cover.len() * c2.cover.len());
    for a in &c1.cover {
        for b in &c2.cover {
            candidates.push(g.multiply(a, b)?);
        }
    }
    certify_cover(g, h, &element, &candidates)
}

/// The direct product `G_1 × G_2` with its subgroup `H_1 × H_2`.
pub fn product_inclusion(
    g1: &GroupDescriptor,
    h1: &SubgroupSpec,
    g2: &GroupDescriptor,
    h2: &SubgroupSpec,
) -> (GroupDescriptor, SubgroupSpec) {
    let g = GroupDescriptor::product(g1.clone(), g2.clone());
    let h = SubgroupSpec::product(&g, h1.clone(), h2.clone());
    (g, h)
}

fn prefixed(side: Side, tails: &[TailClause]) -> impl Iterator<Item = TailClause> + '_ {
    tails.iter().map(move |t| {
        let mut path = alloc::vec![side];
        path.extend_from_slice(&t.path);
        TailClause { path, n: t.n, from: t.from }
    })
}

/// Certificate for `(g_1, g_2)` over `(G_1 × G_2, H_1 × H_2)` with cover
/// `a_i × b_j`, indexed `i·|cover_2| + j`.
pub fn product_compose(
    g1: &GroupDescriptor,
    h1: &SubgroupSpec,
    c1: &QnCertificate,
    g2: &GroupDescriptor,
    h2: &SubgroupSpec,
    c2: &QnCertificate,
) -> Result<QnCertificate, EngineError> {
    c1.replay(g1, h1)?;
    c2.replay(g2, h2)?;
    let (n1, n2) = (c1.cover.len(), c2.cover.len());
    let mut cover = Vec::with_capacity(n1 * n2);
    for a in &c1.cover {
        for b in &c2.cover {
            cover.push(GroupElement::pair(a.clone(), b.clone()));
        }
    }
    let mut generators = Vec::new();
    let mut transitions = Vec::new();
    for (s, x) in c1.generators.iter().enumerate() {
        generators.push(GroupElement::pair(x.clone(), g2.identity()));
        transitions.push((0..n1 * n2).map(|k| c1.transitions[s][k / n2] * n2 + k % n2).collect());
    }
    for (s, y) in c2.generators.iter().enumerate() {
        generators.push(GroupElement::pair(g1.identity(), y.clone()));
        transitions.push((0..n1 * n2).map(|k| (k / n2) * n2 + c2.transitions[s][k % n2]).collect());
    }
    let tails = prefixed(Side::Left, &c1.tails).chain(prefixed(Side::Right, &c2.tails)).collect();
    let cert = QnCertificate {
        element: GroupElement::pair(c1.element.clone(), c2.element.clone()),
        cover,
        generators,
        transitions,
        tails,
    };
    let (g, h) = product_inclusion(g1, h1, g2, h2);
    cert.replay(&g, &h)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Word;

    fn sh(w: &[(i64, i64)], n: i64) -> GroupElement {
        GroupElement::shift(Word::from_powers(w), n)
    }

    fn cert(g: &GroupDescriptor, h: &SubgroupSpec, x: &GroupElement) -> QnCertificate {
        let ex = explore(g, h, x, Limit::Budget(100)).unwrap();
        assert!(ex.orbit.closed);
        QnCertificate::from_exploration(g.normalize(x).unwrap(), ex)
    }

    #[test]
    fn stable_letter_certificates_compose() {
        let g = GroupDescriptor::shift_extension(3);
        let k0 = SubgroupSpec::tail(&g, 0).unwrap();
        let c = cert(&g, &k0, &sh(&[], -1));
        c.replay(&g, &k0).unwrap();
        let c2 = compose_certificates(&g, &k0, &c, &c).unwrap();
        assert_eq!(c2.element, sh(&[], -2));
        assert_eq!(c2.cover_size(), 1);
        c2.replay(&g, &k0).unwrap();
        let id = cert(&g, &k0, &g.identity());
        assert_eq!(compose_certificates(&g, &k0, &c, &id).unwrap().element, c.element);
    }

    #[test]
    fn tampered_certificates_fail() {
        let g = GroupDescriptor::shift_extension(3);
        let k0 = SubgroupSpec::tail(&g, 0).unwrap();
        let c = cert(&g, &k0, &sh(&[], -1));

        let mut bad = c.clone();
        bad.element = sh(&[], 1);
        assert!(bad.replay(&g, &k0).is_err());

        let mut bad = c.clone();
        bad.generators.pop();
        bad.transitions.pop();
        assert!(bad.replay(&g, &k0).is_err());

        let mut bad = c.clone();
        bad.tails.clear();
        assert!(bad.replay(&g, &k0).is_err());

        let mut bad = c;
        bad.generators[0] = sh(&[(-1, 1)], 0);
        assert!(bad.replay(&g, &k0).is_err());
    }

    #[test]
    fn stable_letter_in_both_factors() {
        let g = GroupDescriptor::shift_extension(3);
        let k0 = SubgroupSpec::tail(&g, 0).unwrap();
        let c = cert(&g, &k0, &sh(&[], -1));
        let p = product_compose(&g, &k0, &c, &g, &k0, &c).unwrap();
        assert_eq!(p.cover_size(), 1);
        let (gg, hh) = product_inclusion(&g, &k0, &g, &k0);
        p.replay(&gg, &hh).unwrap();
    }

    #[test]
    fn composition_with_a_subgroup_element_does_not_grow() {
        let g = GroupDescriptor::free(2);
        let h = SubgroupSpec::generated(
            &g,
            &[
                GroupElement::Word(Word::from_powers(&[(0, 2)])),
                GroupElement::Word(Word::from_powers(&[(1, 1)])),
                GroupElement::Word(Word::from_powers(&[(0, 1), (1, 1), (0, -1)])),
            ],
        )
        .unwrap();
        let a = GroupElement::Word(Word::from_powers(&[(0, 1)]));
        let b = GroupElement::Word(Word::from_powers(&[(1, 1)]));
        let ca = cert(&g, &h, &a);
        let cb = cert(&g, &h, &b);
        let c = compose_certificates(&g, &h, &cb, &ca).unwrap();
        assert!(c.cover_size() <= ca.cover_size());
        c.replay(&g, &h).unwrap();
    }
}
