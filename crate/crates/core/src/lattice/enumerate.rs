use std::collections::BTreeMap;

use rayon::prelude::*;

use super::echelon::{left_kernel, projective_points, Echelon};
use super::{build_truncated_module, TruncatedModule};
use crate::budget::Budget;
use crate::error::Result;
use crate::field::FiniteField;
use crate::semigroup::BranchSemigroup;

/// An `R`-stable subspace of `k[[t]]/t^c` containing a unit, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StableSubmodule {
    pub basis: Echelon,
}

impl StableSubmodule {
    pub fn dimension(&self) -> usize {
        self.basis.dim()
    }

    /// Valuations below the conductor; pivots of the echelon basis.
    pub fn value_set(&self) -> Vec<u32> {
        self.basis.pivots().iter().map(|&p| p as u32).collect()
    }

    /// Colength in `k[[t]]`.
    pub fn colength(&self) -> usize {
        self.basis.width() - self.basis.dim()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableSubmoduleSet {
    pub q: u32,
    pub conductor: usize,
    /// Sorted by dimension, then canonical form.
    pub modules: Vec<StableSubmodule>,
}

impl StableSubmoduleSet {
    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    /// Number of submodules per value set.
    pub fn strata(&self) -> BTreeMap<Vec<u32>, u64> {
        let mut out = BTreeMap::new();
        for m in &self.modules {
            *out.entry(m.value_set()).or_insert(0) += 1;
        }
        out
    }
}

/// `R·v` for a vector `v`.
fn cyclic(t: &TruncatedModule, window: &[usize], v: &[u8]) -> Echelon {
    let mut e = Echelon::zero(t.conductor);
    for &a in window {
        e.insert(&t.field, t.shift(v, a));
    }
    e
}

/// All stable `N ⊃ M` with `dim N = dim M + 1`.
///
/// `N = M + k·w` is stable iff `t^{β̄_i}·w ∈ M` for every generator, a linear
/// condition on `w` modulo `M`. Reduced representatives live on the non-pivot
/// coordinates, so the candidates are the projective points of a kernel.
fn covers(t: &TruncatedModule, m: &Echelon) -> Vec<Echelon> {
    let f = &t.field;
    let c = t.conductor;
    let free: Vec<usize> = (0..c).filter(|j| m.pivots().binary_search(j).is_err()).collect();
    if free.is_empty() {
        return Vec::new();
    }
    let images: Vec<Vec<u8>> = free
        .iter()
        .map(|&j| {
            let mut unit = vec![0u8; c];
            unit[j] = 1;
            let mut img = Vec::with_capacity(c * t.semigroup.generators().len());
            for &b in t.semigroup.generators() {
                let mut s = t.shift(&unit, b as usize);
                m.reduce(f, &mut s);
                img.extend(s);
            }
            img
        })
        .collect();
    let kernel: Vec<Vec<u8>> = left_kernel(f, &images)
        .into_iter()
        .map(|x| {
            let mut w = vec![0u8; c];
            for (&j, &xj) in free.iter().zip(&x) {
                w[j] = xj;
            }
            w
        })
        .collect();
    projective_points(f, &kernel)
        .into_iter()
        .map(|w| {
            let mut n = m.clone();
            n.insert(f, w);
            n
        })
        .collect()
}

/// Enumerates every stable subspace of `k[[t]]/t^c` containing a unit.
///
/// Seeds are the cyclic modules `R·v` over units `v = 1 + Σ_{gaps} x_a t^a`;
/// any unit can be brought to this shape by a unit of `R` without changing
/// `R·v`. Each module containing a unit contains such a seed, and between a
/// seed and any larger stable module there is a chain of stable modules
/// growing one dimension at a time, so closing the seeds under one-step
/// extensions reaches everything. The search runs level by level in the
/// dimension; levels are sorted sets, so the result does not depend on the
/// number of worker threads.
pub fn enumerate_stable_submodules(t: &TruncatedModule) -> StableSubmoduleSet {
    let f = &t.field;
    let c = t.conductor;
    let q = f.order() as u64;
    let window = t.semigroup_window();
    let gaps: Vec<usize> = t.semigroup.gaps().iter().map(|&a| a as usize).collect();

    let mut levels: BTreeMap<usize, Vec<Echelon>> = BTreeMap::new();
    if c == 0 {
        // R = k[[t]]: the only 0-normalized module is k[[t]] itself
        levels.insert(0, vec![Echelon::zero(0)]);
    } else {
        let n_seeds = q.pow(gaps.len() as u32);
        let mut seeds: Vec<Echelon> = (0..n_seeds)
            .into_par_iter()
            .map(|idx| {
                let mut v = vec![0u8; c];
                v[0] = 1;
                let mut rem = idx;
                for &a in &gaps {
                    v[a] = (rem % q) as u8;
                    rem /= q;
                }
                cyclic(t, &window, &v)
            })
            .collect();
        seeds.par_sort_unstable();
        seeds.dedup();
        for s in seeds {
            levels.entry(s.dim()).or_default().push(s);
        }
    }

    let mut out = Vec::new();
    let mut dim = *levels.keys().next().unwrap_or(&0);
    while dim <= c {
        let current = levels.remove(&dim).unwrap_or_default();
        if !current.is_empty() {
            let mut next: Vec<Echelon> = current.par_iter().flat_map_iter(|m| covers(t, m)).collect();
            if let Some(extra) = levels.remove(&(dim + 1)) {
                next.extend(extra);
            }
            next.par_sort_unstable();
            next.dedup();
            if !next.is_empty() {
                levels.insert(dim + 1, next);
            }
            out.extend(current.into_iter().map(|basis| StableSubmodule { basis }));
        }
        dim += 1;
    }
    StableSubmoduleSet {
        q: f.order(),
        conductor: c,
        modules: out,
    }
}

/// `|X_γ^0(F_q)|`.
pub fn count_points(s: &BranchSemigroup, field: &FiniteField, budget: &Budget) -> Result<u64> {
    let t = build_truncated_module(s, field, budget)?;
    Ok(enumerate_stable_submodules(&t).len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::semigroup_from_generators;

    fn count(gens: &[i64], q: u32) -> u64 {
        let s = semigroup_from_generators(gens).unwrap();
        count_points(&s, &FiniteField::new(q).unwrap(), &Budget::default()).unwrap()
    }

    #[test]
    fn cusp_counts() {
        assert_eq!(count(&[2, 3], 2), 3);
        assert_eq!(count(&[2, 3], 3), 4);
        assert_eq!(count(&[2, 3], 5), 6);
        assert_eq!(count(&[2, 3], 4), 5);
    }

    #[test]
    fn cusp_modules_by_hand() {
        let s = semigroup_from_generators(&[2, 3]).unwrap();
        let t = build_truncated_module(&s, &FiniteField::new(2).unwrap(), &Budget::default()).unwrap();
        let set = enumerate_stable_submodules(&t);
        let rows: Vec<Vec<Vec<u8>>> = set
            .modules
            .iter()
            .map(|m| m.basis.rows().map(<[u8]>::to_vec).collect())
            .collect();
        assert_eq!(
            rows,
            vec![vec![vec![1, 0]], vec![vec![1, 1]], vec![vec![1, 0], vec![0, 1]]]
        );
    }

    #[test]
    fn a4_counts() {
        assert_eq!(count(&[2, 5], 2), 7);
        assert_eq!(count(&[2, 5], 3), 13);
    }

    #[test]
    fn smooth_branch() {
        assert_eq!(count(&[1], 2), 1);
    }

    #[test]
    fn every_module_is_stable_and_normalized() {
        let s = semigroup_from_generators(&[3, 4]).unwrap();
        let t = build_truncated_module(&s, &FiniteField::new(3).unwrap(), &Budget::default()).unwrap();
        let set = enumerate_stable_submodules(&t);
        for m in &set.modules {
            assert_eq!(m.basis.pivots()[0], 0);
            for row in m.basis.rows() {
                for mult in &t.multipliers {
                    assert!(m.basis.contains(&t.field, &mult.apply(&t.field, row)));
                }
            }
        }
    }
}
