//! Conjugacy-class, double-coset and commensuration conditions on `H <= G`,
//! the normalizer test, and the family theorems that make some of them exact.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::action::{project, Action};
use super::certificate::QnCertificate;
use super::membership::{qn1_membership, MembershipVerdict};
use crate::error::EngineError;
use crate::group::{is_subgroup_member, GroupDescriptor, GroupElement, SubgroupBackend, SubgroupSpec, Truth, Word};

/// Outcome of the search for the conjugacy class `{hgh^-1 : h ∈ H}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum C1Result {
    /// The class is closed under conjugation by every generator: it is finite.
    FiniteConjugates(Vec<GroupElement>),
    /// At least this many distinct conjugates were found.
    AtLeast(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum C2Result {
    /// Every `g_i h g_j` lies outside `H`.
    Witness(GroupElement),
    /// No witness among this many subgroup elements; inconclusive.
    NotFoundInWindow { searched: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum C3Result {
    /// An element outside `H` whose orbit closed.
    Counterexample { element: GroupElement, certificate: QnCertificate },
    /// Inconclusive unless `exact`: the ball held no counterexample.
    NoCounterexampleInBall { checked: usize, unknown: Vec<GroupElement>, exact: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normality {
    Normalizes,
    DoesNotNormalize,
    Unknown,
}

fn member(g: &GroupDescriptor, h: &SubgroupSpec, x: &GroupElement) -> Result<Truth, EngineError> {
    Ok(is_subgroup_member(g, h, x)?)
}

fn require_outside(g: &GroupDescriptor, h: &SubgroupSpec, x: &GroupElement) -> Result<(), EngineError> {
    match member(g, h, x)? {
        Truth::No => Ok(()),
        Truth::Yes => Err(EngineError::Precondition(format!("{} lies in the subgroup", g.format(x)))),
        Truth::Unknown => Err(EngineError::Indeterminate(format!("membership of {}", g.format(x)))),
    }
}

// Tail extensions tried without any new conjugate before giving up.
const C1_STALL_LIMIT: usize = 64;

/// Closes the class of `x` under conjugation by the generators of `H` and
/// their inverses, stopping at `threshold` distinct conjugates.
///
/// Tail generators `g_i` of `K_n` act trivially exactly on conjugates whose
/// component at the tail is the identity; otherwise the window keeps growing.
pub fn check_c1(
    g: &GroupDescriptor,
    h: &SubgroupSpec,
    x: &GroupElement,
    threshold: usize,
) -> Result<C1Result, EngineError> {
    let x = g.normalize(x)?;
    require_outside(g, h, &x)?;
    if !g.has_exact_equality() {
        return Err(EngineError::Indeterminate("element equality is not decidable in this presentation".into()));
    }
    let threshold = threshold.max(1);
    let mut action = Action::new(g, h);
    let mut steps: Vec<(GroupElement, GroupElement)> = Vec::new();
    let sync = |action: &Action, steps: &mut Vec<(GroupElement, GroupElement)>| {
        for s in &action.flat[steps.len() / 2..] {
            let si = g.inv_unchecked(s);
            steps.push((s.clone(), si.clone()));
            steps.push((si, s.clone()));
        }
    };
    sync(&action, &mut steps);
    let mut seen: BTreeSet<GroupElement> = BTreeSet::from([x.clone()]);
    let mut order = alloc::vec![x];
    let mut done = alloc::vec![0usize];
    let mut stalled = 0;
    loop {
        let before = order.len();
        let mut r = 0;
        while r < order.len() {
            while done[r] < steps.len() {
                let (s, si) = &steps[done[r]];
                let y = g.mul_unchecked(&g.mul_unchecked(s, &order[r]), si);
                if seen.insert(y.clone()) {
                    if seen.len() >= threshold {
                        return Ok(C1Result::AtLeast(threshold));
                    }
                    order.push(y);
                    done.push(0);
                }
                done[r] += 1;
            }
            r += 1;
        }
        let moving: Vec<usize> = (0..action.tails.len())
            .filter(|&k| {
                let path = &action.tails[k].path;
                order.iter().any(|c| match project(path, c) {
                    Some(GroupElement::Shift { word, shift }) => !(word.is_empty() && *shift == 0),
                    _ => false,
                })
            })
            .collect();
        if moving.is_empty() {
            return Ok(C1Result::FiniteConjugates(seen.into_iter().collect()));
        }
        stalled = if order.len() == before { stalled + 1 } else { 0 };
        if stalled > C1_STALL_LIMIT {
            return Err(EngineError::Indeterminate("tail conjugates stopped growing".into()));
        }
        for k in moving {
            let end = action.tails[k].end;
            action.extend(g, k, end + 1);
        }
        sync(&action, &mut steps);
    }
}

/// Elements of `H` as products of at most `radius` generators, in canonical order.
pub fn subgroup_ball(
    g: &GroupDescriptor,
    h: &SubgroupSpec,
    radius: usize,
) -> Result<Vec<GroupElement>, EngineError> {
    let action = Action::new(g, h);
    let mut steps = Vec::new();
    for s in &action.flat {
        steps.push(s.clone());
        steps.push(g.invert(s)?);
    }
    let mut seen: BTreeSet<GroupElement> = BTreeSet::from([g.identity()]);
    let mut layer = alloc::vec![g.identity()];
    let mut out = alloc::vec![g.identity()];
    for _ in 0..radius {
        let mut next = BTreeSet::new();
        for x in &layer {
            for s in &steps {
                let y = g.mul_unchecked(x, s);
                if !seen.contains(&y) {
                    next.insert(y);
                }
            }
        }
        layer = next.into_iter().collect();
        for y in &layer {
            seen.insert(y.clone());
        }
        out.extend(layer.iter().cloned());
    }
    Ok(out)
}

/// Searches the subgroup ball of `radius` for `h` with every `g_i h g_j ∉ H`.
pub fn check_c2(
    g: &GroupDescriptor,
    h: &SubgroupSpec,
    gs: &[GroupElement],
    radius: usize,
) -> Result<C2Result, EngineError> {
    if gs.is_empty() {
        return Ok(C2Result::Witness(g.identity()));
    }
    for x in gs {
        require_outside(g, h, x)?;
    }
    let ball = subgroup_ball(g, h, radius)?;
    'candidates: for y in &ball {
        for a in gs {
            let ay = g.multiply(a, y)?;
            for b in gs {
                match member(g, h, &g.multiply(&ay, b)?)? {
                    Truth::No => {}
                    Truth::Yes => continue 'candidates,
                    Truth::Unknown => {
                        return Err(EngineError::Indeterminate(format!(
                            "membership of {}",
                            g.format(&g.multiply(&ay, b)?)
                        )))
                    }
                }
            }
        }
        return Ok(C2Result::Witness(y.clone()));
    }
    Ok(C2Result::NotFoundInWindow { searched: ball.len() })
}

/// Scans the ball of `radius` in canonical order for `g ∉ H` with a closed orbit.
pub fn check_c3(
    g: &GroupDescriptor,
    h: &SubgroupSpec,
    radius: usize,
    budget: usize,
) -> Result<C3Result, EngineError> {
    let mut unknown = Vec::new();
    let mut checked = 0;
    for x in g.enumerate_ball(radius)? {
        match member(g, h, &x)? {
            Truth::Yes => continue,
            Truth::Unknown => {
                unknown.push(x);
                continue;
            }
            Truth::No => {}
        }
        checked += 1;
        match qn1_membership(g, h, &x, budget) {
            Ok(MembershipVerdict::CertifiedIn(certificate)) => {
                return Ok(C3Result::Counterexample { element: x, certificate })
            }
            Ok(MembershipVerdict::CertifiedOut(_)) => {}
            Ok(MembershipVerdict::Unknown { .. }) | Err(EngineError::IndeterminateOrbit { .. }) => unknown.push(x),
            Err(e) => return Err(e),
        }
    }
    Ok(C3Result::NoCounterexampleInBall { checked, unknown, exact: exact_c3(g, h) == Some(true) })
}

fn normality_of(t: Truth) -> Normality {
    match t {
        Truth::Yes => Normality::Normalizes,
        Truth::No => Normality::DoesNotNormalize,
        Truth::Unknown => Normality::Unknown,
    }
}

/// Decides `gHg^-1 = H`.
///
/// For `K_n` in the shift extension, `g = (w, m)` conjugates `K_n` to
/// `wK_{n+m}w^-1`. Free factors are malnormal, so equality forces `w ∈ K_n`
/// and then `m = 0`: the normalizer of `K_n` is `K_n` itself.
pub fn normalizer_test(g: &GroupDescriptor, h: &SubgroupSpec, x: &GroupElement) -> Result<Normality, EngineError> {
    let x = g.normalize(x)?;
    Ok(match (g, h.backend(), &x) {
        (GroupDescriptor::FiniteTable(t), SubgroupBackend::Elements(m), GroupElement::Table(i)) => {
            let inv = t.inv(*i);
            let ok = (0..t.order()).filter(|&y| m[y]).all(|y| m[t.mul(t.mul(*i, y), inv)]);
            normality_of(Truth::from_bool(ok))
        }
        (GroupDescriptor::Free(_), SubgroupBackend::Graph(graph), GroupElement::Word(w)) => {
            normality_of(Truth::from_bool(graph.conjugate(w) == *graph))
        }
        (GroupDescriptor::Shift(_), SubgroupBackend::Tail(_), _) => normality_of(member(g, h, &x)?),
        (GroupDescriptor::Shift(_), SubgroupBackend::ShiftGraph(graph), GroupElement::Shift { word, shift }) => {
            normality_of(Truth::from_bool(graph.shifted(*shift).conjugate(word) == *graph))
        }
        (GroupDescriptor::Product(a, b), SubgroupBackend::Product(h1, h2), GroupElement::Pair(p, q)) => {
            match (normalizer_test(a, h1, p)?, normalizer_test(b, h2, q)?) {
                (Normality::Normalizes, Normality::Normalizes) => Normality::Normalizes,
                (Normality::DoesNotNormalize, _) | (_, Normality::DoesNotNormalize) => Normality::DoesNotNormalize,
                _ => Normality::Unknown,
            }
        }
        _ => {
            // gHg^-1 ⊆ H and g^-1Hg ⊆ H together give equality.
            let xi = g.invert(&x)?;
            let mut verdict = Truth::Yes;
            for y in h.generators() {
                verdict = verdict.and(member(g, h, &g.conjugate(&x, y)?)?);
                verdict = verdict.and(member(g, h, &g.conjugate(&xi, y)?)?);
                if verdict == Truth::No {
                    break;
                }
            }
            normality_of(verdict)
        }
    })
}

/// `H` is normal in `G` when every generator of `G` normalizes it.
pub fn is_normal(g: &GroupDescriptor, h: &SubgroupSpec) -> Result<Normality, EngineError> {
    let mut out = Normality::Normalizes;
    for s in g.generators() {
        match normalizer_test(g, h, &s)? {
            Normality::Normalizes => {}
            Normality::DoesNotNormalize => return Ok(Normality::DoesNotNormalize),
            Normality::Unknown => out = Normality::Unknown,
        }
    }
    Ok(out)
}

/// Whether the generators of `H` commute pairwise.
pub fn is_abelian(g: &GroupDescriptor, h: &SubgroupSpec) -> Result<Truth, EngineError> {
    if !subgroup_is_finitely_listed(h) {
        // K_n contains the free pair g_n, g_{n+1}.
        return Ok(Truth::No);
    }
    let gens = h.generators();
    let mut out = Truth::Yes;
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            out = out.and(g.equal(&g.multiply(a, b)?, &g.multiply(b, a)?)?);
            if out == Truth::No {
                return Ok(out);
            }
        }
    }
    Ok(out)
}

fn subgroup_is_finitely_listed(h: &SubgroupSpec) -> bool {
    match h.backend() {
        SubgroupBackend::Tail(_) => false,
        SubgroupBackend::Product(a, b) => subgroup_is_finitely_listed(a) && subgroup_is_finitely_listed(b),
        _ => true,
    }
}

/// Family theorems deciding whether every `g ∉ H` has infinitely many
/// `H`-conjugates. `None` when no theorem applies.
///
/// * Free groups: centralizers are cyclic, so a subgroup of rank at least two
///   never has a finite-index centralizer; a cyclic `⟨u⟩` fails exactly when
///   `u` is a proper power (malnormality); the trivial subgroup always fails.
/// * Finite groups: every class is finite, so the condition holds only for `H = G`.
/// * `K_n` in the shift extension: for `g = (w, m) ≠ e` the conjugates
///   `g_i g g_i^-1 = (g_i w g_{i+m}^-1, m)` are distinct for large `i`.
/// * Finitely presented groups with a confluent rewriting system and
///   `H = ⟨x⟩` normal of finite index with `x` of infinite order: each
///   coset representative `c` acts on `H` by `x ↦ x^{±1}`. Conjugating by
///   `x^k` gives `x^{2k}c` or `c`, so the condition holds exactly when every
///   nontrivial coset inverts `x`.
pub fn exact_c1(g: &GroupDescriptor, h: &SubgroupSpec) -> Result<Option<bool>, EngineError> {
    Ok(match (g, h.backend()) {
        (GroupDescriptor::Free(f), SubgroupBackend::Graph(graph)) => {
            if f.rank() == 0 {
                Some(true)
            } else {
                match graph.rank() {
                    0 => Some(false),
                    1 => Some(graph.is_malnormal()),
                    _ => Some(true),
                }
            }
        }
        (GroupDescriptor::FiniteTable(_), SubgroupBackend::Elements(m)) => Some(m.iter().all(|&b| b)),
        (GroupDescriptor::Shift(_), SubgroupBackend::Tail(_)) => Some(true),
        (GroupDescriptor::Fp(fp), SubgroupBackend::Cosets(table)) => {
            let x = match h.generators() {
                [GroupElement::Word(w)] if w.len() == 1 => w.letters()[0],
                _ => return Ok(None),
            };
            let pure_power = |l: &[crate::group::Letter]| l.iter().all(|y| y.gen == x.gen && y.inv == l[0].inv);
            if !fp.is_confluent() || fp.rewriting().rules().iter().any(|(lhs, _)| pure_power(lhs)) {
                return Ok(None);
            }
            if is_normal(g, h)? != Normality::Normalizes {
                return Ok(None);
            }
            let xw = Word::reduce([x]);
            let mut all_invert = true;
            for c in table.representatives().iter().skip(1) {
                let conj = fp.normal_form(&c.mul(&xw).mul(&c.inverse()));
                if conj == fp.normal_form(&xw.inverse()) {
                    continue;
                } else if conj == fp.normal_form(&xw) {
                    all_invert = false;
                } else {
                    return Ok(None);
                }
            }
            Some(all_invert)
        }
        _ => None,
    })
}

/// Family theorems deciding `Γ = H`.
///
/// * Free groups: a nontrivial malnormal `H` meets `gHg^-1` trivially for
///   `g ∉ H`, an infinite-index intersection.
/// * Finite groups: `Γ = G`.
pub fn exact_c3(g: &GroupDescriptor, h: &SubgroupSpec) -> Option<bool> {
    match (g, h.backend()) {
        (GroupDescriptor::Free(_), SubgroupBackend::Graph(graph)) if !graph.is_trivial() && graph.is_malnormal() => {
            Some(true)
        }
        (GroupDescriptor::FiniteTable(_), SubgroupBackend::Elements(m)) => Some(m.iter().all(|&b| b)),
        _ => None,
    }
}
