use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::Serialize;

use super::{build_truncated_module, enumerate_semimodules, enumerate_stable_submodules, GammaSemimodule};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::semigroup::BranchSemigroup;

/// Coefficients (constant term first) of the unique polynomial of degree
/// `< points.len()` through the given points.
pub fn interpolate(points: &[(i64, BigRational)]) -> Vec<BigRational> {
    let n = points.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis polynomial Π_{j≠i} (x − x_j) / (x_i − x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * BigRational::from_integer(BigInt::from(*xj));
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xi - xj));
        }
        let scale = yi / denom;
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c += b * &scale;
        }
    }
    coeffs
}

pub fn evaluate(coeffs: &[BigRational], x: i64) -> BigRational {
    let x = BigRational::from_integer(BigInt::from(x));
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * &x + c)
}

fn exact_log(count: u64, q: u64) -> Option<u32> {
    let mut d = 0;
    let mut acc = 1u64;
    while acc < count {
        acc = acc.checked_mul(q)?;
        d += 1;
    }
    (acc == count).then_some(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumRow {
    /// `Δ ∩ [0, c)`.
    pub delta_set: Vec<u32>,
    /// Gaps of Γ that lie in Δ.
    pub extra: Vec<u32>,
    pub counts: BTreeMap<u32, u64>,
    /// Common exponent `d` with count `= q^d` for every q, if there is one.
    pub exponent: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PurityFlags {
    pub integer_coefficients: bool,
    pub nonnegative_coefficients: bool,
    pub monic_of_degree_delta: bool,
    pub value_at_one_is_semimodule_count: bool,
    pub strata_are_powers_of_q: bool,
    pub out_of_sample_consistent: bool,
    /// Informational: the q = 2 count deviates from the fit through q ≥ 3.
    pub q2_deviation: bool,
}

impl PurityFlags {
    pub fn all_pass(&self) -> bool {
        self.integer_coefficients
            && self.nonnegative_coefficients
            && self.monic_of_degree_delta
            && self.value_at_one_is_semimodule_count
            && self.strata_are_powers_of_q
            && self.out_of_sample_consistent
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PuritySignature {
    pub counts: BTreeMap<u32, u64>,
    /// Interpolating polynomial, constant term first.
    #[serde(serialize_with = "ser_rationals")]
    pub polynomial: Vec<BigRational>,
    pub nodes: Vec<u32>,
    pub semimodule_count: usize,
    pub strata: Vec<StratumRow>,
    pub flags: PurityFlags,
}

fn ser_rationals<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&crate::poly::rational_json(r))?;
    }
    seq.end()
}

/// Submodule counts per value set, keyed by field size.
pub type StrataByQ = BTreeMap<u32, BTreeMap<Vec<u32>, u64>>;

/// Per-q point counts and per-value-set counts.
pub(crate) fn count_with_strata(
    s: &BranchSemigroup,
    field: &FiniteField,
    budget: &Budget,
) -> Result<(u64, BTreeMap<Vec<u32>, u64>)> {
    let t = build_truncated_module(s, field, budget)?;
    let set = enumerate_stable_submodules(&t);
    Ok((set.len() as u64, set.strata()))
}

/// One row per semimodule with its counts for every q; the flag is true iff
/// every row is a q-independent power of q and no value set falls outside
/// the semimodule list.
pub fn stratum_table(
    s: &BranchSemigroup,
    semimodules: &[GammaSemimodule],
    per_q: &StrataByQ,
) -> (Vec<StratumRow>, bool) {
    let mut strata = Vec::with_capacity(semimodules.len());
    let mut ok = true;
    for m in semimodules {
        let delta_set = m.delta_set(s);
        let counts: BTreeMap<u32, u64> = per_q
            .iter()
            .map(|(&q, st)| (q, st.get(&delta_set).copied().unwrap_or(0)))
            .collect();
        let exps: Vec<Option<u32>> = counts
            .iter()
            .map(|(&q, &n)| if n == 0 { None } else { exact_log(n, q as u64) })
            .collect();
        let exponent = match exps.first() {
            Some(Some(d)) if exps.iter().all(|e| *e == Some(*d)) => Some(*d),
            _ => None,
        };
        ok &= exponent.is_some();
        strata.push(StratumRow {
            delta_set,
            extra: m.extra.clone(),
            counts,
            exponent,
        });
    }
    let known: BTreeSet<&Vec<u32>> = strata.iter().map(|r| &r.delta_set).collect();
    ok &= per_q.values().all(|st| st.keys().all(|k| known.contains(k)));
    (strata, ok)
}

/// Fits the point-count polynomial to stratified counts and checks the
/// purity signature.
///
/// Interpolation uses `δ + 1` fields, preferring `q ≥ 3` when enough are
/// given; the rest are checked out of sample. A mismatch at `q = 2` against
/// a fit through `q ≥ 3` only raises [`PurityFlags::q2_deviation`]; any other
/// mismatch is an [`Error::InterpolationMismatch`].
pub fn fit_signature(s: &BranchSemigroup, per_q: &StrataByQ, budget: &Budget) -> Result<PuritySignature> {
    let delta = s.delta();
    let qs: Vec<u32> = per_q.keys().copied().collect();
    if qs.len() < delta + 1 {
        return Err(Error::InsufficientFields {
            needed: delta + 1,
            got: qs.len(),
        });
    }
    let semimodules = enumerate_semimodules(s, budget)?;
    let counts: BTreeMap<u32, u64> = per_q.iter().map(|(&q, st)| (q, st.values().sum())).collect();

    let large: Vec<u32> = qs.iter().copied().filter(|&q| q >= 3).collect();
    let nodes: Vec<u32> = if large.len() > delta {
        large[..delta + 1].to_vec()
    } else {
        qs[..delta + 1].to_vec()
    };
    let points: Vec<(i64, BigRational)> = nodes
        .iter()
        .map(|&q| (q as i64, BigRational::from_integer(BigInt::from(counts[&q]))))
        .collect();
    let poly = interpolate(&points);

    let mut q2_deviation = false;
    for &q in qs.iter().filter(|q| !nodes.contains(q)) {
        let predicted = evaluate(&poly, q as i64);
        let observed = BigRational::from_integer(BigInt::from(counts[&q]));
        if predicted != observed {
            if q == 2 {
                q2_deviation = true;
            } else {
                return Err(Error::InterpolationMismatch {
                    q,
                    observed: observed.to_string(),
                    predicted: predicted.to_string(),
                });
            }
        }
    }

    let integer_coefficients = poly.iter().all(|c| c.is_integer());
    let nonnegative_coefficients = poly.iter().all(|c| !c.is_negative());
    let monic_of_degree_delta = poly.len() == delta + 1 && poly[delta].is_one();
    let value_at_one_is_semimodule_count =
        evaluate(&poly, 1) == BigRational::from_integer(BigInt::from(semimodules.len()));
    let (strata, strata_ok) = stratum_table(s, &semimodules, per_q);

    Ok(PuritySignature {
        counts,
        polynomial: poly,
        nodes,
        semimodule_count: semimodules.len(),
        strata,
        flags: PurityFlags {
            integer_coefficients,
            nonnegative_coefficients,
            monic_of_degree_delta,
            value_at_one_is_semimodule_count,
            strata_are_powers_of_q: strata_ok,
            out_of_sample_consistent: true,
            q2_deviation,
        },
    })
}

/// Counts over several fields with the submodule search, then
/// [`fit_signature`].
pub fn purity_signature(
    s: &BranchSemigroup,
    fields: &[FiniteField],
    budget: &Budget,
) -> Result<PuritySignature> {
    let mut qs: Vec<u32> = fields.iter().map(FiniteField::order).collect();
    qs.sort_unstable();
    qs.dedup();
    if qs.len() != fields.len() {
        return Err(Error::Parse("field sizes must be pairwise distinct".into()));
    }
    if qs.len() < s.delta() + 1 {
        return Err(Error::InsufficientFields {
            needed: s.delta() + 1,
            got: qs.len(),
        });
    }
    let mut per_q = StrataByQ::new();
    for f in fields {
        let (_, strata) = count_with_strata(s, f, budget)?;
        per_q.insert(f.order(), strata);
    }
    fit_signature(s, &per_q, budget)
}
