//! Independent brute-force counts used to cross-check the submodule search.
//!
//! Both oracles walk every reduced row-echelon matrix of the ambient space
//! and keep the ones whose row space is stable under a list of operators.
//! They share nothing with the search beyond field arithmetic.

use super::{Matrix, TruncatedModule};
use crate::error::{Error, Result};
use crate::field::FiniteField;

/// Cap on `q^width` for the naive walk.
pub const NAIVE_AMBIENT_CAP: u64 = 1 << 22;
/// Cap on the number of echelon matrices visited.
pub const NAIVE_CANDIDATE_CAP: u64 = 1 << 26;

/// Row lists of reduced echelon subspaces.
pub type RowSpace = Vec<Vec<u8>>;

fn reduces_to_zero(field: &FiniteField, rows: &[Vec<u8>], pivots: &[usize], v: &[u8]) -> bool {
    let mut w = v.to_vec();
    for (row, &p) in rows.iter().zip(pivots) {
        let c = w[p];
        if c != 0 {
            for (x, &y) in w.iter_mut().zip(row) {
                *x = field.sub(*x, field.mul(c, y));
            }
        }
    }
    w.iter().all(|&x| x == 0)
}

fn free_slots(width: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut slots = Vec::new();
    for (r, &p) in pivots.iter().enumerate() {
        for j in p + 1..width {
            if !pivots.contains(&j) {
                slots.push((r, j));
            }
        }
    }
    slots
}

/// Every subspace of `F_q^width` whose pivot set passes `accept` and which
/// is mapped into itself by each operator, sorted.
pub fn naive_stable_subspaces(
    field: &FiniteField,
    width: usize,
    operators: &[Matrix],
    accept: impl Fn(&[usize]) -> bool,
) -> Result<Vec<RowSpace>> {
    let q = field.order() as u64;
    let ambient = q.checked_pow(width as u32).unwrap_or(u64::MAX);
    if ambient > NAIVE_AMBIENT_CAP {
        return Err(Error::BudgetExceeded {
            what: "naive_ambient",
            value: ambient,
            cap: NAIVE_AMBIENT_CAP,
        });
    }
    let pivot_sets: Vec<Vec<usize>> = (0u64..1 << width)
        .map(|mask| (0..width).filter(|&j| mask >> j & 1 == 1).collect::<Vec<_>>())
        .filter(|p| accept(p))
        .collect();
    let candidates: u64 = pivot_sets
        .iter()
        .map(|p| q.saturating_pow(free_slots(width, p).len() as u32))
        .fold(0u64, u64::saturating_add);
    if candidates > NAIVE_CANDIDATE_CAP {
        return Err(Error::BudgetExceeded {
            what: "naive_candidates",
            value: candidates,
            cap: NAIVE_CANDIDATE_CAP,
        });
    }

    let mut out = Vec::new();
    for pivots in &pivot_sets {
        let slots = free_slots(width, pivots);
        let mut digits = vec![0u8; slots.len()];
        loop {
            let mut rows: Vec<Vec<u8>> = pivots
                .iter()
                .map(|&p| {
                    let mut r = vec![0u8; width];
                    r[p] = 1;
                    r
                })
                .collect();
            for (&(r, j), &x) in slots.iter().zip(&digits) {
                rows[r][j] = x;
            }
            let stable = rows.iter().all(|row| {
                operators
                    .iter()
                    .all(|op| reduces_to_zero(field, &rows, pivots, &op.apply(field, row)))
            });
            if stable {
                out.push(rows);
            }
            // odometer
            let mut k = 0;
            while k < digits.len() {
                digits[k] += 1;
                if (digits[k] as u64) < q {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == digits.len() {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Stable subspaces of `k[[t]]/t^c` with a unit, by exhaustive filtering.
pub fn naive_submodules(t: &TruncatedModule) -> Result<Vec<RowSpace>> {
    naive_stable_subspaces(&t.field, t.conductor, &t.multipliers, |p| p.first() == Some(&0))
}

/// Index-0 lattices `ε^w·O^n ⊆ L ⊆ ε^{−w}·O^n` stable under the companion
/// matrix of `T^n − ε^m`.
///
/// Coordinates of `ε^{−w}O^n / ε^w O^n` are `ε^k·e_j` with `−w ≤ k < w`,
/// stored at position `j·2w + (k + w)`. Index 0 means
/// `dim L/ε^w O^n = dim O^n/ε^w O^n = n·w`.
pub fn springer_lattices(field: &FiniteField, n: usize, m: usize, window: usize) -> Result<Vec<RowSpace>> {
    let span = 2 * window;
    let width = n * span;
    let pos = |j: usize, k: i64| j * span + (k + window as i64) as usize;
    let mut eps = Matrix::zero(width);
    let mut gamma = Matrix::zero(width);
    for j in 0..n {
        for k in -(window as i64)..window as i64 {
            if k + 1 < window as i64 {
                eps.set(pos(j, k + 1), pos(j, k), 1);
            }
            if j + 1 < n {
                gamma.set(pos(j + 1, k), pos(j, k), 1);
            } else if k + (m as i64) < window as i64 {
                gamma.set(pos(0, k + m as i64), pos(j, k), 1);
            }
        }
    }
    let target = n * window;
    naive_stable_subspaces(field, width, &[eps, gamma], |p| p.len() == target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::lattice::build_truncated_module;
    use crate::semigroup::semigroup_from_generators;

    #[test]
    fn all_subspaces_of_small_space() {
        // subspaces of F_2^3: 1 + 7 + 7 + 1
        let f = FiniteField::new(2).unwrap();
        let all = naive_stable_subspaces(&f, 3, &[], |_| true).unwrap();
        assert_eq!(all.len(), 16);
    }

    #[test]
    fn cusp_by_filtering() {
        let s = semigroup_from_generators(&[2, 3]).unwrap();
        let t = build_truncated_module(&s, &FiniteField::new(2).unwrap(), &Budget::default()).unwrap();
        assert_eq!(naive_submodules(&t).unwrap().len(), 3);
    }

    #[test]
    fn ambient_cap() {
        let f = FiniteField::new(2).unwrap();
        assert!(naive_stable_subspaces(&f, 23, &[], |_| true).is_err());
    }
}
