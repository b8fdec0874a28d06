//! Point counts of the index-0 affine Springer fiber over finite fields.
//!
//! For a totally ramified one-branch γ, γ-stable lattices in `F^n` are the
//! fractional ideals of `R = O[γ] ⊂ k[[t]]`. Every fractional ideal is
//! `t^v·M₀` for a unique `M₀ ⊆ k[[t]]` holding an element of valuation 0,
//! and such an `M₀` contains `R·unit ⊇ t^c·k[[t]]`. Index grows by one per
//! shift, so exactly one shift of each `M₀` has index 0 (the shift by
//! `colength(M₀) − δ`). Points of the index-0 component are therefore in
//! bijection with the `R`-stable subspaces of `k[[t]]/t^c` containing a
//! unit, which is what this module enumerates.

mod echelon;
mod enumerate;
pub mod oracle;
mod purity;
mod semimodule;

pub use echelon::{left_kernel, projective_points, Echelon};
pub use enumerate::{count_points, enumerate_stable_submodules, StableSubmodule, StableSubmoduleSet};
pub use purity::{
    evaluate, fit_signature, interpolate, purity_signature, stratum_table, PurityFlags, PuritySignature,
    StrataByQ, StratumRow,
};
pub use semimodule::{enumerate_semimodules, GammaSemimodule};

use crate::budget::Budget;
use crate::error::Result;
use crate::field::FiniteField;
use crate::semigroup::BranchSemigroup;

/// Square matrix over a finite field acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            data: vec![0; n * n],
        }
    }

    /// Multiplication by `t^a` on `k[[t]]/t^n`.
    pub fn shift(n: usize, a: usize) -> Self {
        let mut m = Self::zero(n);
        for j in 0..n.saturating_sub(a) {
            m.set(j + a, j, 1);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: u8) {
        self.data[r * self.n + c] = x;
    }

    pub fn apply(&self, field: &FiniteField, v: &[u8]) -> Vec<u8> {
        (0..self.n)
            .map(|r| {
                (0..self.n).fold(0u8, |acc, c| {
                    let m = self.get(r, c);
                    if m == 0 || v[c] == 0 {
                        acc
                    } else {
                        field.add(acc, field.mul(m, v[c]))
                    }
                })
            })
            .collect()
    }

    pub fn compose(&self, field: &FiniteField, other: &Matrix) -> Matrix {
        let mut out = Matrix::zero(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                let mut acc = 0u8;
                for k in 0..self.n {
                    acc = field.add(acc, field.mul(self.get(r, k), other.get(k, c)));
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

/// `k[[t]]/t^c` over `F_q` with the action of the semigroup generators.
#[derive(Debug, Clone)]
pub struct TruncatedModule {
    pub field: FiniteField,
    pub semigroup: BranchSemigroup,
    pub conductor: usize,
    /// Multiplication by `t^{β̄_i}`, one per generator.
    pub multipliers: Vec<Matrix>,
}

impl TruncatedModule {
    pub fn multiplier(&self, a: usize) -> Matrix {
        Matrix::shift(self.conductor, a)
    }

    /// `t^a·v` truncated at `t^c`.
    pub fn shift(&self, v: &[u8], a: usize) -> Vec<u8> {
        let c = self.conductor;
        let mut w = vec![0u8; c];
        if a < c {
            w[a..].copy_from_slice(&v[..c - a]);
        }
        w
    }

    /// Elements of Γ below the conductor.
    pub fn semigroup_window(&self) -> Vec<usize> {
        self.semigroup
            .elements_below(self.conductor as u32)
            .into_iter()
            .map(|a| a as usize)
            .collect()
    }
}

pub fn build_truncated_module(
    s: &BranchSemigroup,
    field: &FiniteField,
    budget: &Budget,
) -> Result<TruncatedModule> {
    budget.check("q", field.order() as u64, budget.max_q as u64)?;
    budget.check("conductor", s.conductor() as u64, budget.max_conductor as u64)?;
    budget.check("delta", s.delta() as u64, budget.max_delta as u64)?;
    let c = s.conductor() as usize;
    Ok(TruncatedModule {
        field: field.clone(),
        semigroup: s.clone(),
        conductor: c,
        multipliers: s
            .generators()
            .iter()
            .map(|&b| Matrix::shift(c, b as usize))
            .collect(),
    })
}
