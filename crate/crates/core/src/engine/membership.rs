//! Membership in `Γ = {g : Hg ⊆ g_1H ∪ ... ∪ g_nH}` and in `H_1 = Γ ∩ Γ^-1`.

use alloc::boxed::Box;
use alloc::format;

use super::action::Side;
use super::certificate::QnCertificate;
use super::orbit::{explore, Limit};
use crate::error::EngineError;
use crate::group::{GroupDescriptor, GroupElement, SubgroupBackend, SubgroupSpec};
use crate::stallings::{free_qn1_decide, Qn1Decision};

/// Which exact decision procedure refuted membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefutationReason {
    /// Intersection `H ∩ gHg^-1` has infinite index (folded graphs).
    FreeGraph,
    /// A component of a direct product is refuted.
    ProductComponent(Side, Box<RefutationReason>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipVerdict {
    CertifiedIn(QnCertificate),
    CertifiedOut(RefutationReason),
    Unknown { budget: usize, orbit_size_reached: usize },
}

impl MembershipVerdict {
    pub fn status(&self) -> Status {
        match self {
            MembershipVerdict::CertifiedIn(_) => Status::In,
            MembershipVerdict::CertifiedOut(_) => Status::Out,
            MembershipVerdict::Unknown { .. } => Status::Unknown,
        }
    }

    pub fn certificate(&self) -> Option<&QnCertificate> {
        match self {
            MembershipVerdict::CertifiedIn(c) => Some(c),
            _ => None,
        }
    }
}

/// Outcome without the supporting data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    In,
    Out,
    Unknown,
}

/// Exact decision where the backends provide one: folded graphs for free
/// groups, exhaustion for finite groups, and componentwise for products.
pub fn exact_qn1(
    g: &GroupDescriptor,
    h: &SubgroupSpec,
    x: &GroupElement,
) -> Result<Option<Qn1Decision>, EngineError> {
    let x = g.normalize(x)?;
    Ok(match (g, h.backend(), &x) {
        (GroupDescriptor::Free(_), SubgroupBackend::Graph(graph), GroupElement::Word(w)) => {
            Some(free_qn1_decide(graph, w))
        }
        (GroupDescriptor::FiniteTable(t), _, _) => {
            let ex = explore(g, h, &x, Limit::Budget(t.order()))?;
            Some(Qn1Decision::InGamma(ex.orbit.representatives.len()))
        }
        (GroupDescriptor::Product(a, b), SubgroupBackend::Product(h1, h2), GroupElement::Pair(p, q)) => {
            match (exact_qn1(a, h1, p)?, exact_qn1(b, h2, q)?) {
                (Some(Qn1Decision::NotInGamma), _) | (_, Some(Qn1Decision::NotInGamma)) => {
                    Some(Qn1Decision::NotInGamma)
                }
                (Some(Qn1Decision::InGamma(k1)), Some(Qn1Decision::InGamma(k2))) => {
                    Some(Qn1Decision::InGamma(k1 * k2))
                }
                _ => None,
            }
        }
        _ => None,
    })
}

fn refutation(g: &GroupDescriptor, h: &SubgroupSpec, x: &GroupElement) -> Result<RefutationReason, EngineError> {
    match (g, h.backend(), x) {
        (GroupDescriptor::Product(a, b), SubgroupBackend::Product(h1, h2), GroupElement::Pair(p, q)) => {
            if exact_qn1(a, h1, p)? == Some(Qn1Decision::NotInGamma) {
                Ok(RefutationReason::ProductComponent(Side::Left, Box::new(refutation(a, h1, p)?)))
            } else {
                Ok(RefutationReason::ProductComponent(Side::Right, Box::new(refutation(b, h2, q)?)))
            }
        }
        _ => Ok(RefutationReason::FreeGraph),
    }
}

/// Certifies `g ∈ Γ` from a closed coset orbit, refutes it only through an
/// exact backend, and reports `Unknown` otherwise.
///
/// Whenever both the orbit and an exact backend give an answer they are
/// compared; a mismatch is an error.
pub fn qn1_membership(
    g: &GroupDescriptor,
    h: &SubgroupSpec,
    x: &GroupElement,
    budget: usize,
) -> Result<MembershipVerdict, EngineError> {
    if budget == 0 {
        return Err(EngineError::Precondition("budget must be at least 1".into()));
    }
    let x = g.normalize(x)?;
    // Components with an exact refutation are decided before exploring.
    let exact = exact_qn1(g, h, &x)?;
    if exact == Some(Qn1Decision::NotInGamma) {
        if let Some(ex) = try_explore(g, h, &x, budget)? {
            if ex.orbit.closed {
                return Err(EngineError::BackendDisagreement(format!(
                    "orbit of {} closed with {} cosets but the exact backend refutes it",
                    g.format(&x),
                    ex.orbit.representatives.len()
                )));
            }
        }
        return Ok(MembershipVerdict::CertifiedOut(refutation(g, h, &x)?));
    }
    let ex = explore(g, h, &x, Limit::Budget(budget))?;
    if ex.orbit.closed {
        let size = ex.orbit.representatives.len();
        if let Some(Qn1Decision::InGamma(k)) = exact {
            if k != size {
                return Err(EngineError::BackendDisagreement(format!(
                    "orbit of {} has {size} cosets, exact index is {k}",
                    g.format(&x)
                )));
            }
        }
        return Ok(MembershipVerdict::CertifiedIn(QnCertificate::from_exploration(x, ex)));
    }
    if let Some(Qn1Decision::InGamma(k)) = exact {
        if k <= budget {
            return Err(EngineError::BackendDisagreement(format!(
                "exact index {k} is within the budget but the orbit of {} did not close",
                g.format(&x)
            )));
        }
    }
    Ok(MembershipVerdict::Unknown { budget, orbit_size_reached: ex.orbit.explored })
}

// Exploration for cross-checking a refuted element. Components without
// exact coset equality may make the orbit undecidable; that is not a
// disagreement.
fn try_explore(
    g: &GroupDescriptor,
    h: &SubgroupSpec,
    x: &GroupElement,
    budget: usize,
) -> Result<Option<super::orbit::Exploration>, EngineError> {
    match explore(g, h, x, Limit::Budget(budget)) {
        Ok(ex) => Ok(Some(ex)),
        Err(EngineError::IndeterminateOrbit { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Verdicts for `g` and `g^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Verdict {
    pub forward: MembershipVerdict,
    pub inverse: MembershipVerdict,
}

impl H1Verdict {
    /// In when both directions are certified, Out when either is refuted.
    pub fn status(&self) -> Status {
        match (self.forward.status(), self.inverse.status()) {
            (Status::In, Status::In) => Status::In,
            (Status::Out, _) | (_, Status::Out) => Status::Out,
            _ => Status::Unknown,
        }
    }
}

/// Membership in the largest subgroup `Γ ∩ Γ^-1` contained in `Γ`.
pub fn h1_membership(
    g: &GroupDescriptor,
    h: &SubgroupSpec,
    x: &GroupElement,
    budget: usize,
) -> Result<H1Verdict, EngineError> {
    let forward = qn1_membership(g, h, x, budget)?;
    let inverse = qn1_membership(g, h, &g.invert(x)?, budget)?;
    Ok(H1Verdict { forward, inverse })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteTable, FpGroup, Word};

    fn fw(w: &[(i64, i64)]) -> GroupElement {
        GroupElement::Word(Word::from_powers(w))
    }

    fn sh(w: &[(i64, i64)], n: i64) -> GroupElement {
        GroupElement::shift(Word::from_powers(w), n)
    }

    #[test]
    fn stable_letter_inverse_is_certified() {
        let g = GroupDescriptor::shift_extension(3);
        let k0 = SubgroupSpec::tail(&g, 0).unwrap();
        let v = qn1_membership(&g, &k0, &sh(&[], -1), 1000).unwrap();
        let c = v.certificate().unwrap();
        assert_eq!(c.cover_size(), 1);
        c.replay(&g, &k0).unwrap();
        let h1 = h1_membership(&g, &k0, &sh(&[], -1), 200).unwrap();
        assert_eq!(h1.status(), Status::Unknown);
        assert!(matches!(h1.inverse, MembershipVerdict::Unknown { budget: 200, orbit_size_reached: 201 }));
    }

    #[test]
    fn free_refutation() {
        let g = GroupDescriptor::free(2);
        let h = SubgroupSpec::generated(&g, &[fw(&[(0, 1)])]).unwrap();
        let v = qn1_membership(&g, &h, &fw(&[(1, 1)]), 100).unwrap();
        assert_eq!(v, MembershipVerdict::CertifiedOut(RefutationReason::FreeGraph));
        let v = qn1_membership(&g, &h, &fw(&[(0, 5)]), 100).unwrap();
        assert_eq!(v.certificate().unwrap().cover_size(), 1);
    }

    #[test]
    fn finite_index_subgroup_is_commensurated() {
        let g = GroupDescriptor::free(2);
        let h = SubgroupSpec::generated(&g, &[fw(&[(0, 2)]), fw(&[(1, 1)]), fw(&[(0, 1), (1, 1), (0, -1)])]).unwrap();
        let v = h1_membership(&g, &h, &fw(&[(0, 1)]), 100).unwrap();
        assert_eq!(v.status(), Status::In);
        assert!(v.forward.certificate().unwrap().cover_size() <= 2);
    }

    #[test]
    fn small_budget_gives_unknown() {
        // AGL(1,7): a^7 = m^6 = 1, m a m^-1 = a^3; the point stabilizer <m> has six cosets in its orbit.
        let rels = alloc::vec![
            Word::from_powers(&[(0, 7)]),
            Word::from_powers(&[(1, 6)]),
            Word::from_powers(&[(1, 1), (0, 1), (1, -1), (0, -3)]),
        ];
        let g = GroupDescriptor::Fp(FpGroup::new(alloc::vec!["a".into(), "m".into()], rels).unwrap());
        let h = SubgroupSpec::generated(&g, &[fw(&[(1, 1)])]).unwrap();
        let v = qn1_membership(&g, &h, &fw(&[(0, 1)]), 3).unwrap();
        assert_eq!(v, MembershipVerdict::Unknown { budget: 3, orbit_size_reached: 4 });
        let v = qn1_membership(&g, &h, &fw(&[(0, 1)]), 10).unwrap();
        assert_eq!(v.certificate().unwrap().cover_size(), 6);
    }

    #[test]
    fn finite_groups_are_exhausted() {
        let z6 = GroupDescriptor::FiniteTable(FiniteTable::cyclic(6));
        let h = SubgroupSpec::generated(&z6, &[GroupElement::Table(3)]).unwrap();
        let v = qn1_membership(&z6, &h, &GroupElement::Table(1), 10).unwrap();
        assert_eq!(v.certificate().unwrap().cover_size(), 1);
    }

    #[test]
    fn product_refutation_uses_the_free_component() {
        let f = GroupDescriptor::free(2);
        let h = SubgroupSpec::generated(&f, &[fw(&[(0, 1)])]).unwrap();
        let g = GroupDescriptor::product(f.clone(), f.clone());
        let hh = SubgroupSpec::product(&g, h.clone(), h);
        let x = GroupElement::pair(fw(&[(0, 1)]), fw(&[(1, 1)]));
        let v = qn1_membership(&g, &hh, &x, 50).unwrap();
        assert_eq!(
            v,
            MembershipVerdict::CertifiedOut(RefutationReason::ProductComponent(
                Side::Right,
                Box::new(RefutationReason::FreeGraph)
            ))
        );
    }
}
