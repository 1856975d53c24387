//! Assembles ball verdicts and the conditions into masa, singular and Cartan
//! evidence, each tagged with the weakest tier among its ingredients.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::conditions::{
    check_c1, check_c2, exact_c1, exact_c3, is_abelian, is_normal, normalizer_test, C1Result, C2Result, Normality,
};
use super::membership::{h1_membership, qn1_membership, H1Verdict, MembershipVerdict, Status};
use crate::error::EngineError;
use crate::group::{is_subgroup_member, GroupDescriptor, GroupElement, SubgroupSpec, Truth};

/// How much a conclusion is backed by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EvidenceTier {
    /// Decided by exact backends or a family theorem.
    Exact,
    /// True on the explored ball; the condition itself quantifies further.
    BallLimited,
    /// Floating-point evidence within a tolerance.
    Numerical,
}

impl EvidenceTier {
    pub fn weakest(self, other: EvidenceTier) -> EvidenceTier {
        self.max(other)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EvidenceTier::Exact => "exact",
            EvidenceTier::BallLimited => "ball-limited",
            EvidenceTier::Numerical => "numerical",
        }
    }
}

/// A value with its tier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence<T> {
    pub value: T,
    pub tier: EvidenceTier,
}

impl<T> Evidence<T> {
    fn exact(value: T) -> Self {
        Evidence { value, tier: EvidenceTier::Exact }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosisConfig {
    pub budget: usize,
    pub radius: usize,
    pub threshold: usize,
    /// Radius of the subgroup ball searched for double-coset witnesses.
    pub c2_radius: usize,
    /// Extra elements reported individually.
    pub probes: Vec<GroupElement>,
}

impl Default for DiagnosisConfig {
    fn default() -> Self {
        DiagnosisConfig { budget: 1000, radius: 3, threshold: 100, c2_radius: 3, probes: Vec::new() }
    }
}

/// Membership of one ball element in `Γ`.
#[derive(Clone, Debug, PartialEq)]
pub struct BallEntry {
    pub element: GroupElement,
    pub in_subgroup: Truth,
    /// `Err` holds the reason exploration could not proceed.
    pub verdict: Result<MembershipVerdict, EngineError>,
}

impl BallEntry {
    pub fn status(&self) -> Status {
        match &self.verdict {
            Ok(v) => v.status(),
            Err(_) => Status::Unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct C1Summary {
    /// Results for ball elements outside `H`.
    pub results: Vec<(GroupElement, Result<C1Result, EngineError>)>,
    /// Family theorem, when one applies.
    pub theorem: Option<bool>,
    pub holds: Evidence<Truth>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct C2Summary {
    pub elements: Vec<GroupElement>,
    pub result: Result<C2Result, EngineError>,
    pub tier: EvidenceTier,
}

#[derive(Clone, Debug, PartialEq)]
pub struct C3Summary {
    /// First ball element outside `H` with a closed orbit.
    pub counterexample: Option<GroupElement>,
    pub checked: usize,
    pub unknown: Vec<GroupElement>,
    pub theorem: Option<bool>,
    pub holds: Evidence<Truth>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub element: GroupElement,
    pub in_subgroup: Truth,
    pub qn1: Result<MembershipVerdict, EngineError>,
    pub h1: Result<H1Verdict, EngineError>,
    pub normalizes: Result<Normality, EngineError>,
    pub c1: Option<Result<C1Result, EngineError>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagnosisFlags {
    pub masa: Option<EvidenceTier>,
    pub singular: Option<EvidenceTier>,
    pub cartan: Option<EvidenceTier>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InclusionReport {
    pub family: &'static str,
    pub subgroup_generators: Vec<GroupElement>,
    pub gamma_ball: Vec<BallEntry>,
    pub h1_ball: Vec<(GroupElement, Status)>,
    /// Ball elements of `Γ` outside `H`; with `H` they generate part of `⟨Γ⟩`.
    pub h2_witnesses: Vec<GroupElement>,
    pub c1: C1Summary,
    pub c2: C2Summary,
    pub c3: C3Summary,
    pub normality: Evidence<Normality>,
    pub abelian: Evidence<Truth>,
    pub flags: DiagnosisFlags,
    pub probes: Vec<ProbeReport>,
    pub inconsistencies: Vec<String>,
}

fn soft<T>(r: Result<T, EngineError>) -> Result<Result<T, EngineError>, EngineError> {
    match r {
        Err(e @ EngineError::BackendDisagreement(_)) | Err(e @ EngineError::Group(_)) => Err(e),
        other => Ok(other),
    }
}

fn truth_tier(t: Truth) -> EvidenceTier {
    if t == Truth::Unknown {
        EvidenceTier::BallLimited
    } else {
        EvidenceTier::Exact
    }
}

/// Runs every group-side check on the ball of `config.radius`.
///
/// The masa flag needs `H` abelian with infinite `H`-classes outside `H`;
/// the singular flag adds `Γ = H`; the Cartan flag adds normality of `H`.
/// When `H` is abelian with infinite classes, every element of `Γ` must
/// normalize `H`; a certified element that does not is reported as an
/// inconsistency, as are the other implications checked here.
pub fn diagnose_inclusion(
    g: &GroupDescriptor,
    h: &SubgroupSpec,
    config: &DiagnosisConfig,
) -> Result<InclusionReport, EngineError> {
    let ball = g.enumerate_ball(config.radius)?;
    let mut gamma_ball = Vec::with_capacity(ball.len());
    for x in &ball {
        let in_subgroup = is_subgroup_member(g, h, x)?;
        let verdict = soft(qn1_membership(g, h, x, config.budget))?;
        gamma_ball.push(BallEntry { element: x.clone(), in_subgroup, verdict });
    }

    let mut h1_ball = Vec::with_capacity(ball.len());
    for e in &gamma_ball {
        let status = if e.status() == Status::In {
            let inv = g.invert(&e.element)?;
            match soft(qn1_membership(g, h, &inv, config.budget))? {
                Ok(v) => v.status(),
                Err(_) => Status::Unknown,
            }
        } else {
            e.status()
        };
        h1_ball.push((e.element.clone(), status));
    }
    let h2_witnesses: Vec<GroupElement> = gamma_ball
        .iter()
        .filter(|e| e.status() == Status::In && e.in_subgroup == Truth::No)
        .map(|e| e.element.clone())
        .collect();

    let outside: Vec<&BallEntry> = gamma_ball.iter().filter(|e| e.in_subgroup == Truth::No).collect();

    // Conjugacy classes.
    let theorem1 = exact_c1(g, h)?;
    let mut c1_results = Vec::new();
    for e in &outside {
        c1_results.push((e.element.clone(), soft(check_c1(g, h, &e.element, config.threshold))?));
    }
    let any_finite = c1_results.iter().any(|(_, r)| matches!(r, Ok(C1Result::FiniteConjugates(_))));
    let any_error = c1_results.iter().any(|(_, r)| r.is_err());
    let c1_holds = match theorem1 {
        Some(b) => Evidence::exact(Truth::from_bool(b)),
        None if any_finite => Evidence::exact(Truth::No),
        None if any_error => Evidence { value: Truth::Unknown, tier: EvidenceTier::BallLimited },
        None => Evidence { value: Truth::Yes, tier: EvidenceTier::BallLimited },
    };

    // Double cosets over the generators outside H and their inverses.
    let mut c2_elements: Vec<GroupElement> = Vec::new();
    for s in g.generators() {
        for y in [s.clone(), g.invert(&s)?] {
            if is_subgroup_member(g, h, &y)? == Truth::No && !c2_elements.contains(&y) {
                c2_elements.push(y);
            }
        }
    }
    let c2_result = soft(check_c2(g, h, &c2_elements, config.c2_radius))?;
    let c2_tier = match c2_result {
        Ok(C2Result::Witness(_)) => EvidenceTier::Exact,
        _ => EvidenceTier::BallLimited,
    };
    let c2 = C2Summary { elements: c2_elements, result: c2_result, tier: c2_tier };

    // Commensuration, read off the ball verdicts in canonical order.
    let counterexample = outside.iter().find(|e| e.status() == Status::In).map(|e| e.element.clone());
    let unknown: Vec<GroupElement> = gamma_ball
        .iter()
        .filter(|e| e.in_subgroup == Truth::Unknown || (e.in_subgroup == Truth::No && e.status() == Status::Unknown))
        .map(|e| e.element.clone())
        .collect();
    let theorem3 = exact_c3(g, h);
    let c3_holds = match (counterexample.is_some(), theorem3) {
        (true, _) => Evidence::exact(Truth::No),
        (false, Some(b)) => Evidence::exact(Truth::from_bool(b)),
        (false, None) if unknown.is_empty() => Evidence { value: Truth::Yes, tier: EvidenceTier::BallLimited },
        (false, None) => Evidence { value: Truth::Unknown, tier: EvidenceTier::BallLimited },
    };
    let c3 = C3Summary { counterexample, checked: outside.len(), unknown, theorem: theorem3, holds: c3_holds };

    let normal = is_normal(g, h)?;
    let normality = Evidence {
        value: normal,
        tier: if normal == Normality::Unknown { EvidenceTier::BallLimited } else { EvidenceTier::Exact },
    };
    let ab = is_abelian(g, h)?;
    let abelian = Evidence { value: ab, tier: truth_tier(ab) };

    let mut inconsistencies = Vec::new();
    let mut flags = DiagnosisFlags::default();
    if abelian.value == Truth::Yes && c1_holds.value == Truth::Yes {
        let masa = abelian.tier.weakest(c1_holds.tier);
        flags.masa = Some(masa);
        if c3.holds.value == Truth::Yes {
            flags.singular = Some(masa.weakest(c3.holds.tier));
        }
        if normality.value == Normality::Normalizes {
            flags.cartan = Some(masa.weakest(normality.tier));
        }
        if flags.singular.is_some() && flags.cartan.is_some() {
            flags.singular = None;
            inconsistencies.push(String::from(
                "both singular and Cartan evidence hold; only Cartan is reported (this happens when H = G)",
            ));
        }
        for e in &outside {
            if e.status() == Status::In && normalizer_test(g, h, &e.element)? == Normality::DoesNotNormalize {
                inconsistencies.push(format!(
                    "{} lies in Γ but does not normalize the abelian subgroup H with infinite classes",
                    g.format(&e.element)
                ));
            }
        }
    }
    if theorem1 == Some(true) && any_finite {
        inconsistencies.push(String::from("a finite conjugacy class was found although the family theorem excludes it"));
    }
    for (x, r) in &c1_results {
        if let Ok(C1Result::FiniteConjugates(_)) = r {
            if let Some(e) = gamma_ball.iter().find(|e| &e.element == x) {
                if e.status() == Status::Out {
                    inconsistencies.push(format!(
                        "{} has a finite conjugacy class but was refuted from Γ",
                        g.format(x)
                    ));
                }
            }
        }
    }
    if normal == Normality::Normalizes {
        for e in &gamma_ball {
            let ok = matches!(&e.verdict, Ok(MembershipVerdict::CertifiedIn(c)) if c.cover_size() == 1);
            if !ok && e.verdict.is_ok() && e.status() != Status::Unknown {
                inconsistencies.push(format!("H is normal but {} does not have a one-coset cover", g.format(&e.element)));
            }
        }
    }
    if theorem3 == Some(true) && c3.counterexample.is_some() {
        inconsistencies.push(String::from("a commensurating element outside H contradicts the family theorem"));
    }

    let mut probes = Vec::new();
    for p in &config.probes {
        let p = g.normalize(p)?;
        let in_subgroup = is_subgroup_member(g, h, &p)?;
        let qn1 = soft(qn1_membership(g, h, &p, config.budget))?;
        let h1 = soft(h1_membership(g, h, &p, config.budget))?;
        let normalizes = soft(normalizer_test(g, h, &p))?;
        let c1 = if in_subgroup == Truth::No { Some(soft(check_c1(g, h, &p, config.threshold))?) } else { None };
        probes.push(ProbeReport { element: p, in_subgroup, qn1, h1, normalizes, c1 });
    }

    Ok(InclusionReport {
        family: g.family(),
        subgroup_generators: h.generators().to_vec(),
        gamma_ball,
        h1_ball,
        h2_witnesses,
        c1: C1Summary { results: c1_results, theorem: theorem1, holds: c1_holds },
        c2,
        c3,
        normality,
        abelian,
        flags,
        probes,
        inconsistencies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FpGroup, Word};

    fn fw(w: &[(i64, i64)]) -> GroupElement {
        GroupElement::Word(Word::from_powers(w))
    }

    #[test]
    fn free_cyclic_subgroup_is_singular() {
        let g = GroupDescriptor::free(2);
        let h = SubgroupSpec::generated(&g, &[fw(&[(0, 1)])]).unwrap();
        let r = diagnose_inclusion(&g, &h, &DiagnosisConfig::default()).unwrap();
        assert_eq!(r.flags.singular, Some(EvidenceTier::Exact));
        assert_eq!(r.flags.cartan, None);
        assert!(r.inconsistencies.is_empty(), "{:?}", r.inconsistencies);
        assert!(r.h2_witnesses.is_empty());
    }

    #[test]
    fn dihedral_is_cartan() {
        let rels = alloc::vec![Word::from_powers(&[(1, 2)]), Word::from_powers(&[(1, 1), (0, 1), (1, 1), (0, 1)])];
        let g = GroupDescriptor::Fp(FpGroup::new(alloc::vec!["a".into(), "r".into()], rels).unwrap());
        let h = SubgroupSpec::generated(&g, &[fw(&[(0, 1)])]).unwrap();
        let r = diagnose_inclusion(&g, &h, &DiagnosisConfig::default()).unwrap();
        assert_eq!(r.flags.cartan, Some(EvidenceTier::Exact));
        assert_eq!(r.flags.singular, None);
        assert_eq!(r.normality.value, Normality::Normalizes);
        assert_eq!(r.c3.counterexample, Some(fw(&[(1, 1)])));
        assert!(r.inconsistencies.is_empty(), "{:?}", r.inconsistencies);
    }

    #[test]
    fn free_abelian_fails_the_class_condition() {
        let rels = alloc::vec![Word::from_powers(&[(0, 1), (1, 1), (0, -1), (1, -1)])];
        let g = GroupDescriptor::Fp(FpGroup::new(alloc::vec!["a".into(), "b".into()], rels).unwrap());
        let h = SubgroupSpec::generated(&g, &[fw(&[(0, 1)])]).unwrap();
        let config = DiagnosisConfig { radius: 2, budget: 50, ..DiagnosisConfig::default() };
        let r = diagnose_inclusion(&g, &h, &config).unwrap();
        assert_eq!(r.c1.holds.value, Truth::No);
        assert_eq!(r.flags, DiagnosisFlags::default());
    }
}
