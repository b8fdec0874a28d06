use serde::Serialize;

use crate::budget::Budget;
use crate::error::Result;
use crate::semigroup::BranchSemigroup;

/// `Δ = Γ ∪ S` with `S ⊆ gaps` and `Δ + Γ ⊆ Δ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GammaSemimodule {
    /// The gaps added to Γ, ascending.
    pub extra: Vec<u32>,
}

impl GammaSemimodule {
    /// `Δ ∩ [0, c)`.
    pub fn delta_set(&self, s: &BranchSemigroup) -> Vec<u32> {
        let mut v: Vec<u32> = s.elements_below(s.conductor());
        v.extend(&self.extra);
        v.sort_unstable();
        v
    }

    pub fn contains(&self, s: &BranchSemigroup, a: i64) -> bool {
        s.contains(a) || (a >= 0 && self.extra.binary_search(&(a as u32)).is_ok())
    }
}

/// All Γ-semimodules normalized to contain 0.
///
/// Gaps are decided from the largest down: whether `x` may join only depends
/// on `x + β̄_i`, which are larger and already decided, so every branch of
/// the search ends in a valid semimodule.
pub fn enumerate_semimodules(s: &BranchSemigroup, budget: &Budget) -> Result<Vec<GammaSemimodule>> {
    budget.check(
        "semimodule_delta",
        s.delta() as u64,
        budget.max_semimodule_delta as u64,
    )?;
    let gaps: Vec<u32> = s.gaps().iter().rev().copied().collect();
    let c = s.conductor();
    let gens = s.generators();
    let mut out = Vec::new();
    let mut chosen = vec![false; c as usize];

    fn go(
        k: usize,
        gaps: &[u32],
        gens: &[u32],
        s: &BranchSemigroup,
        chosen: &mut Vec<bool>,
        out: &mut Vec<GammaSemimodule>,
    ) {
        if k == gaps.len() {
            let mut extra: Vec<u32> = (0..chosen.len() as u32).filter(|&a| chosen[a as usize]).collect();
            extra.sort_unstable();
            out.push(GammaSemimodule { extra });
            return;
        }
        let x = gaps[k];
        go(k + 1, gaps, gens, s, chosen, out);
        let in_delta = |a: u32, chosen: &Vec<bool>| {
            s.contains(a as i64) || chosen.get(a as usize).copied().unwrap_or(false)
        };
        if gens.iter().all(|&b| in_delta(x + b, chosen)) {
            chosen[x as usize] = true;
            go(k + 1, gaps, gens, s, chosen, out);
            chosen[x as usize] = false;
        }
    }
    go(0, &gaps, gens, s, &mut chosen, &mut out);
    out.sort_by(|a, b| {
        a.extra
            .len()
            .cmp(&b.extra.len())
            .then_with(|| a.extra.cmp(&b.extra))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::semigroup_from_generators;

    fn extras(gens: &[i64]) -> Vec<Vec<u32>> {
        let s = semigroup_from_generators(gens).unwrap();
        enumerate_semimodules(&s, &Budget::default())
            .unwrap()
            .into_iter()
            .map(|m| m.extra)
            .collect()
    }

    /// Checks all 2^δ subsets directly.
    fn brute_force(gens: &[i64]) -> Vec<Vec<u32>> {
        let s = semigroup_from_generators(gens).unwrap();
        let gaps = s.gaps();
        let mut out = Vec::new();
        for mask in 0u32..(1 << gaps.len()) {
            let extra: Vec<u32> = (0..gaps.len())
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| gaps[k])
                .collect();
            let m = GammaSemimodule { extra };
            let delta_ok = (0..s.conductor() as i64)
                .filter(|&a| m.contains(&s, a))
                .all(|a| s.generators().iter().all(|&b| m.contains(&s, a + b as i64)));
            if delta_ok {
                out.push(m.extra);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    #[test]
    fn small_counts() {
        assert_eq!(extras(&[2, 3]), vec![vec![], vec![1]]);
        assert_eq!(extras(&[2, 5]), vec![vec![], vec![3], vec![1, 3]]);
        assert_eq!(
            extras(&[3, 4]),
            vec![vec![], vec![5], vec![1, 5], vec![2, 5], vec![1, 2, 5]]
        );
    }

    #[test]
    fn matches_brute_force() {
        for gens in [
            &[2, 3][..],
            &[2, 5],
            &[3, 4],
            &[3, 5],
            &[2, 7],
            &[4, 6, 13],
            &[4, 5],
        ] {
            assert_eq!(extras(gens), brute_force(gens), "{gens:?}");
        }
    }

    #[test]
    fn budget() {
        let s = semigroup_from_generators(&[3, 4]).unwrap();
        let b = Budget {
            max_semimodule_delta: 2,
            ..Budget::default()
        };
        assert!(enumerate_semimodules(&s, &b).is_err());
    }
}
