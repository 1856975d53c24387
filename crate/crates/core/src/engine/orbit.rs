//! Breadth-first exploration of the coset orbit `{hgH : h ∈ H}`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::action::{project, tail_coset_status, Action};
use crate::error::EngineError;
use crate::group::{coset_equal, CosetKey, GroupDescriptor, GroupElement, SubgroupSpec, Truth};

/// Distinct left cosets `g'H` with `g' ∈ Hg`, in discovery order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetOrbit {
    pub representatives: Vec<GroupElement>,
    /// Every subgroup generator maps the listed cosets into themselves.
    pub closed: bool,
    /// Cosets touched, counting the one that exceeded the budget.
    pub explored: usize,
}

/// What new cosets may be admitted.
pub(crate) enum Limit<'a> {
    Budget(usize),
    /// Only cosets of these elements; anything else is an error.
    Within(&'a [GroupElement]),
}

pub(crate) struct Exploration {
    pub orbit: CosetOrbit,
    pub action: Action,
    /// `transitions[s][i] = j` when `flat[s] · rep_i ∈ rep_j H`.
    pub transitions: Vec<Vec<usize>>,
}

struct Locator<'a> {
    g: &'a GroupDescriptor,
    h: &'a SubgroupSpec,
    keys: BTreeMap<CosetKey, usize>,
    keyed: bool,
}

impl<'a> Locator<'a> {
    fn new(g: &'a GroupDescriptor, h: &'a SubgroupSpec) -> Self {
        Locator { g, h, keys: BTreeMap::new(), keyed: true }
    }

    /// Index of the coset of `x` among `reps`.
    fn find(&self, reps: &[GroupElement], x: &GroupElement) -> Result<Option<usize>, EngineError> {
        if self.keyed {
            if let Some(k) = self.h.key_normalized(self.g, x) {
                return Ok(self.keys.get(&k).copied());
            }
        }
        let mut undecided = false;
        for (i, r) in reps.iter().enumerate() {
            match coset_equal(self.g, self.h, r, x)? {
                Truth::Yes => return Ok(Some(i)),
                Truth::No => {}
                Truth::Unknown => undecided = true,
            }
        }
        if undecided {
            Err(EngineError::IndeterminateOrbit {
                partial: CosetOrbit { representatives: reps.to_vec(), closed: false, explored: reps.len() + 1 },
            })
        } else {
            Ok(None)
        }
    }

    fn insert(&mut self, x: &GroupElement, index: usize) {
        if !self.keyed {
            return;
        }
        match self.h.key_normalized(self.g, x) {
            Some(k) => {
                self.keys.insert(k, index);
            }
            None => self.keyed = false,
        }
    }
}

pub(crate) fn explore(
    g: &GroupDescriptor,
    h: &SubgroupSpec,
    start: &GroupElement,
    limit: Limit<'_>,
) -> Result<Exploration, EngineError> {
    let start = g.normalize(start)?;
    let mut action = Action::new(g, h);
    let mut loc = Locator::new(g, h);
    let mut reps: Vec<GroupElement> = Vec::new();
    match &limit {
        Limit::Budget(_) => {
            loc.insert(&start, 0);
            reps.push(start);
        }
        Limit::Within(cands) => {
            let c = admit(g, h, cands, &start)?;
            loc.insert(&c, 0);
            reps.push(c);
        }
    }
    let mut transitions: Vec<Vec<usize>> = Vec::new();
    let mut done: Vec<usize> = alloc::vec![0];

    loop {
        let mut r = 0;
        while r < reps.len() {
            while done[r] < action.flat.len() {
                let s = done[r];
                let y = g.mul_unchecked(&action.flat[s], &reps[r]);
                let j = match loc.find(&reps, &y)? {
                    Some(j) => j,
                    None => {
                        let y = match &limit {
                            Limit::Budget(b) => {
                                if reps.len() >= *b {
                                    let explored = reps.len() + 1;
                                    return Ok(Exploration {
                                        orbit: CosetOrbit { representatives: reps, closed: false, explored },
                                        action,
                                        transitions,
                                    });
                                }
                                y
                            }
                            Limit::Within(cands) => admit(g, h, cands, &y)?,
                        };
                        loc.insert(&y, reps.len());
                        reps.push(y);
                        done.push(0);
                        reps.len() - 1
                    }
                };
                if transitions.len() <= s {
                    transitions.resize(s + 1, Vec::new());
                }
                let row = &mut transitions[s];
                if row.len() <= r {
                    row.resize(r + 1, usize::MAX);
                }
                row[r] = j;
                done[r] += 1;
            }
            r += 1;
        }

        // All materialized generators are processed; decide the tails.
        let mut extended = false;
        for k in 0..action.tails.len() {
            let (path, n, end) = {
                let t = &action.tails[k];
                (t.path.clone(), t.n, t.end)
            };
            let mut need = n;
            let mut all_fixed = true;
            for c in &reps {
                let (start, fixes) = tail_coset_status(n, project(&path, c).expect("tail path"));
                need = need.max(start);
                all_fixed &= fixes;
            }
            if need - 1 > end {
                action.extend(g, k, need - 1);
                extended = true;
            } else if !all_fixed {
                if let Limit::Within(_) = limit {
                    return Err(EngineError::Certificate("candidate cover is not invariant".into()));
                }
                action.extend(g, k, end + 1);
                extended = true;
            }
        }
        if !extended {
            break;
        }
    }

    let explored = reps.len();
    Ok(Exploration { orbit: CosetOrbit { representatives: reps, closed: true, explored }, action, transitions })
}

fn admit(
    g: &GroupDescriptor,
    h: &SubgroupSpec,
    cands: &[GroupElement],
    x: &GroupElement,
) -> Result<GroupElement, EngineError> {
    for c in cands {
        if coset_equal(g, h, c, x)? == Truth::Yes {
            return Ok(c.clone());
        }
    }
    Err(EngineError::Certificate("a translate leaves the candidate cover".into()))
}

/// Breadth-first search of the cosets `h g H`, storing at most `budget` of them.
///
/// Tail subgroups `K_n` have infinitely many generators. Only finitely many
/// are materialized: past the largest index seen in the representatives,
/// each remaining `g_i` either fixes every listed coset or moves some coset
/// to infinitely many distinct ones, so the window grows until the
/// first case holds or the budget runs out.
pub fn orbit_bfs(
    g: &GroupDescriptor,
    h: &SubgroupSpec,
    element: &GroupElement,
    budget: usize,
) -> Result<CosetOrbit, EngineError> {
    if budget == 0 {
        return Err(EngineError::Precondition("budget must be at least 1".into()));
    }
    Ok(explore(g, h, element, Limit::Budget(budget))?.orbit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FpGroup, Word};

    fn sh(w: &[(i64, i64)], n: i64) -> GroupElement {
        GroupElement::shift(Word::from_powers(w), n)
    }

    fn fw(w: &[(i64, i64)]) -> GroupElement {
        GroupElement::Word(Word::from_powers(w))
    }

    #[test]
    fn stable_letter_inverse_has_one_coset() {
        let g = GroupDescriptor::shift_extension(3);
        let k0 = SubgroupSpec::tail(&g, 0).unwrap();
        let o = orbit_bfs(&g, &k0, &sh(&[], -1), 100).unwrap();
        assert!(o.closed);
        assert_eq!(o.representatives.len(), 1);
    }

    #[test]
    fn stable_letter_orbit_is_open() {
        let g = GroupDescriptor::shift_extension(3);
        let k0 = SubgroupSpec::tail(&g, 0).unwrap();
        for budget in [10, 100, 1000] {
            let o = orbit_bfs(&g, &k0, &sh(&[], 1), budget).unwrap();
            assert!(!o.closed);
            assert!(o.explored >= budget);
        }
    }

    #[test]
    fn tail_window_grows_past_the_representatives() {
        // g_7 t^-1 K_0 needs generators beyond the enumeration window.
        let g = GroupDescriptor::shift_extension(1);
        let k0 = SubgroupSpec::tail(&g, 0).unwrap();
        let o = orbit_bfs(&g, &k0, &sh(&[(7, 1)], -1), 100).unwrap();
        assert!(o.closed);
        assert_eq!(o.representatives.len(), 1);
        let o = orbit_bfs(&g, &k0, &sh(&[(-2, 1)], 0), 50).unwrap();
        assert!(!o.closed);
    }

    #[test]
    fn identity_closes_with_budget_one() {
        let g = GroupDescriptor::free(2);
        let h = SubgroupSpec::generated(&g, &[fw(&[(0, 1)])]).unwrap();
        let o = orbit_bfs(&g, &h, &g.identity(), 1).unwrap();
        assert!(o.closed);
        assert_eq!(o.representatives.len(), 1);
    }

    #[test]
    fn free_orbit_never_closes() {
        let g = GroupDescriptor::free(2);
        let h = SubgroupSpec::generated(&g, &[fw(&[(0, 1)])]).unwrap();
        let o = orbit_bfs(&g, &h, &fw(&[(1, 1)]), 50).unwrap();
        assert!(!o.closed);
        assert!(o.explored >= 50);
    }

    #[test]
    fn undecided_comparisons_are_reported() {
        let g = GroupDescriptor::Fp(
            FpGroup::new(alloc::vec!["a".into(), "b".into()], alloc::vec![Word::from_powers(&[(0, 2)])]).unwrap(),
        );
        let h = SubgroupSpec::generated(&g, &[fw(&[(1, 2)])]).unwrap();
        match orbit_bfs(&g, &h, &fw(&[(0, 1)]), 10) {
            Err(EngineError::IndeterminateOrbit { partial }) => assert_eq!(partial.representatives.len(), 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(orbit_bfs(&g, &h, &g.identity(), 1).unwrap().closed);
    }
}
