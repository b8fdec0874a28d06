//! The G_m-equivariant miniversal deformation of a monomial curve.
//!
//! Grading convention, used throughout and never reversed: a row-`i` entry
//! `t^a` of `⊕_i k[Γ](n_i·β̄_i)` has degree `a − n_i·β̄_i`, the Jacobian column
//! of `u_j` has degree `−β̄_j`, and the parameter attached to a basis vector
//! of degree `d` has weight `−d`. With this convention `A^{τ−}` (negative
//! weights) is the equisingular, constant-semigroup subspace.

use std::collections::BTreeMap;

use num::{BigRational, One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::curve::{curve_weights, BinomialEquation, WeightedProjectiveModel};
use crate::error::{Error, Result};
use crate::poly::{rational_json, Monomial, Polynomial, Term, Var, WeightTable};
use crate::semigroup::{greedy_representation, BranchSemigroup};

/// An element of `k[t^Γ]`: Γ-degree ↦ coefficient.
pub type SemigroupRingElement = BTreeMap<u32, BigRational>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedColumn {
    /// Entry in row `i` (0-based here, equation `f_{i+1}`).
    pub entries: Vec<SemigroupRingElement>,
    /// Shift `n_i·β̄_i` of each row.
    pub shifts: Vec<i64>,
    pub degree: i64,
}

impl GradedColumn {
    /// True iff every nonzero entry sits in degree `self.degree`.
    pub fn is_homogeneous(&self) -> bool {
        self.entries
            .iter()
            .zip(&self.shifts)
            .all(|(e, &shift)| e.keys().all(|&a| a as i64 - shift == self.degree))
    }
}

fn equation_shifts(eqs: &[BinomialEquation]) -> Vec<i64> {
    eqs.iter().map(|e| e.weight).collect()
}

/// Columns `(∂f_i/∂u_j)_i` restricted to the curve, one per `u_j`.
pub fn jacobian_columns(eqs: &[BinomialEquation], s: &BranchSemigroup) -> Vec<GradedColumn> {
    let gens = s.generators();
    let shifts = equation_shifts(eqs);
    (0..gens.len())
        .map(|j| {
            let entries = eqs
                .iter()
                .map(|e| {
                    let partial = e.polynomial().derivative(Var::U(j));
                    let mut out = SemigroupRingElement::new();
                    for t in partial.terms() {
                        let a: u32 = t
                            .monomial
                            .iter()
                            .map(|(v, k)| match v {
                                Var::U(i) => gens[i] * k,
                                _ => unreachable!("curve equations only involve u"),
                            })
                            .sum();
                        let c = out.entry(a).or_insert_with(BigRational::zero);
                        *c += &t.coeff;
                    }
                    out.retain(|_, c| !c.is_zero());
                    out
                })
                .collect();
            GradedColumn {
                entries,
                shifts: shifts.clone(),
                degree: -(gens[j] as i64),
            }
        })
        .collect()
}

/// One homogeneous basis vector `s_j` of the graded quotient: a single
/// monomial `t^a` in one row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisVector {
    /// Equation index `i` (1-based).
    pub row: usize,
    pub gamma_degree: u32,
    pub degree: i64,
    /// `−degree`.
    pub weight: i64,
    /// Exponents of `u_0 … u_g` with `Σ m_k·β̄_k = gamma_degree`.
    pub lift: Vec<u32>,
}

impl BasisVector {
    pub fn lift_monomial(&self) -> Monomial {
        Monomial::from_pairs(self.lift.iter().enumerate().map(|(k, &e)| (Var::U(k), e)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangentBasis {
    pub vectors: Vec<BasisVector>,
    /// Quotient dimension per degree, only nonzero pieces.
    pub graded_dimensions: BTreeMap<i64, usize>,
}

impl TangentBasis {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    pub fn weights(&self) -> Vec<i64> {
        self.vectors.iter().map(|v| v.weight).collect()
    }
}

/// Row-reduces `rows` in place over ℚ and returns the pivot columns.
fn rref(rows: &mut Vec<Vec<BigRational>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = BigRational::one() / &rows[r][col];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// One graded piece of `⊕_i k[Γ](n_i·β̄_i) / J`.
struct GradedPiece {
    ambient_rows: Vec<usize>,
    chosen: Vec<usize>,
}

fn graded_piece(columns: &[GradedColumn], s: &BranchSemigroup, d: i64) -> GradedPiece {
    let shifts = &columns[0].shifts;
    let ambient_rows: Vec<usize> = (0..shifts.len()).filter(|&i| s.contains(d + shifts[i])).collect();
    if ambient_rows.is_empty() {
        return GradedPiece {
            ambient_rows,
            chosen: Vec::new(),
        };
    }
    // t^b · column_j with b = d − deg(column_j) ∈ Γ
    let mut span: Vec<Vec<BigRational>> = columns
        .iter()
        .filter(|col| s.contains(d - col.degree))
        .map(|col| {
            let b = d - col.degree;
            ambient_rows
                .iter()
                .map(|&i| {
                    let a = d + shifts[i];
                    (a >= b)
                        .then(|| col.entries[i].get(&((a - b) as u32)).cloned())
                        .flatten()
                        .unwrap_or_else(BigRational::zero)
                })
                .collect()
        })
        .filter(|v: &Vec<BigRational>| v.iter().any(|x| !x.is_zero()))
        .collect();
    let mut current = rank(&span);
    let mut chosen = Vec::new();
    for (k, &i) in ambient_rows.iter().enumerate() {
        let mut e = vec![BigRational::zero(); ambient_rows.len()];
        e[k] = BigRational::one();
        span.push(e);
        let r = rank(&span);
        if r > current {
            chosen.push(i);
            current = r;
        } else {
            span.pop();
        }
    }
    GradedPiece { ambient_rows, chosen }
}

/// Homogeneous monomial basis of the graded quotient, degree by degree.
///
/// Starts at `−max_i n_i·β̄_i`, below which the ambient module vanishes, and
/// stops once the running dimension has reached `2δ` and `c` consecutive
/// pieces were zero. Within one degree, single-monomial rows are taken in
/// ascending row order.
pub fn t1_basis(columns: &[GradedColumn], s: &BranchSemigroup) -> Result<TangentBasis> {
    let expected = 2 * s.delta();
    if columns.is_empty() || columns[0].shifts.is_empty() {
        return if expected == 0 {
            Ok(TangentBasis {
                vectors: Vec::new(),
                graded_dimensions: BTreeMap::new(),
            })
        } else {
            Err(Error::DimensionMismatch { expected, found: 0 })
        };
    }
    let shifts = columns[0].shifts.clone();
    let max_shift = *shifts.iter().max().unwrap();
    let max_gen = *s.generators().last().unwrap() as i64;
    let c = s.conductor() as i64;
    let hard_stop = c + max_gen + 2 * c + 1;

    let gens = s.generators();
    let mut vectors = Vec::new();
    let mut graded_dimensions = BTreeMap::new();
    let mut empty_run = 0i64;
    let mut d = -max_shift;
    loop {
        let piece = graded_piece(columns, s, d);
        if piece.chosen.is_empty() {
            empty_run += 1;
        } else {
            empty_run = 0;
            graded_dimensions.insert(d, piece.chosen.len());
        }
        for &i in &piece.chosen {
            let a = (d + shifts[i]) as u64;
            let lift = greedy_representation(gens, a).ok_or(Error::LiftFailed { degree: a })?;
            if d == 0 {
                return Err(Error::ZeroWeightParameter {
                    index: vectors.len() + 1,
                });
            }
            vectors.push(BasisVector {
                row: i + 1,
                gamma_degree: a as u32,
                degree: d,
                weight: -d,
                lift,
            });
        }
        debug_assert!(piece.chosen.len() <= piece.ambient_rows.len());
        if vectors.len() > expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: vectors.len(),
            });
        }
        if vectors.len() == expected && empty_run >= c.max(1) {
            break;
        }
        if d > hard_stop {
            return Err(Error::DimensionMismatch {
                expected,
                found: vectors.len(),
            });
        }
        d += 1;
    }
    Ok(TangentBasis {
        vectors,
        graded_dimensions,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Parameter {
    pub name: String,
    pub weight: i64,
    pub row: usize,
    pub gamma_degree: u32,
    /// The column vector `s_j` as text, one entry per equation.
    pub column: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiniversalFamily {
    /// `f̃_i = f_i + Σ_j t_j·s_{i,j}`.
    pub equations: Vec<Polynomial>,
    pub weights: WeightTable,
    pub parameters: Vec<Parameter>,
    /// Target weight `n_i·β̄_i` of each equation.
    pub targets: Vec<i64>,
    /// 1-based parameter indices with negative weight.
    pub tau_minus: Vec<usize>,
    pub tau_plus: Vec<usize>,
}

impl MiniversalFamily {
    pub fn to_json(&self) -> Value {
        json!({
            "equations": self.equations.iter().map(|f| f.to_json(&self.weights)).collect::<Vec<_>>(),
            "parameters": self.parameters.iter().map(|p| json!({
                "name": p.name,
                "weight": p.weight,
                "column": p.column,
            })).collect::<Vec<_>>(),
            "tau_minus": self.tau_minus.iter().map(|&j| format!("t{j}")).collect::<Vec<_>>(),
            "tau_plus": self.tau_plus.iter().map(|&j| format!("t{j}")).collect::<Vec<_>>(),
            "convention": "row entry t^a has degree a - n_i*b_i; parameter weight = -degree; tau_minus is the equisingular subspace",
        })
    }

    /// Evaluates `f̃_i(λ·u; λ·t) − λ^{n_i β̄_i}·f̃_i(u; t)` symbolically with
    /// `λ` as an extra variable and returns true iff it vanishes for every `i`.
    pub fn is_equivariant(&self) -> bool {
        // λ is represented by the uniformizer variable
        let lam = Var::Uniformizer;
        self.equations.iter().zip(&self.targets).all(|(f, &target)| {
            let scaled = Polynomial::from_terms(f.terms().iter().filter_map(|t| {
                let w = t.weight(&self.weights)?;
                (w >= 0).then(|| Term::new(t.coeff.clone(), t.monomial.mul(&Monomial::var(lam, w as u32))))
            }));
            if scaled.terms().len() != f.terms().len() || target < 0 {
                return false;
            }
            let rhs = f.mul(&Polynomial::from_terms([Term::int(
                1,
                Monomial::var(lam, target as u32),
            )]));
            let diff = scaled.add(&rhs.mul(&Polynomial::constant(crate::poly::rat(-1))));
            diff.is_zero()
        })
    }
}

pub fn miniversal_family(
    basis: &TangentBasis,
    eqs: &[BinomialEquation],
    s: &BranchSemigroup,
) -> Result<MiniversalFamily> {
    let gens = s.generators();
    let mut weights = curve_weights(s);
    let mut parameters = Vec::with_capacity(basis.dimension());
    let mut extra: Vec<Vec<Term>> = vec![Vec::new(); eqs.len()];
    for (k, v) in basis.vectors.iter().enumerate() {
        let j = k + 1;
        let a: u64 = v.lift.iter().zip(gens).map(|(&m, &b)| m as u64 * b as u64).sum();
        if a != v.gamma_degree as u64 || v.lift.len() != gens.len() {
            return Err(Error::LiftFailed {
                degree: v.gamma_degree as u64,
            });
        }
        if v.weight == 0 {
            return Err(Error::ZeroWeightParameter { index: j });
        }
        weights.insert(Var::Param(j), v.weight);
        let lift = v.lift_monomial();
        extra[v.row - 1].push(Term::int(1, Monomial::var(Var::Param(j), 1).mul(&lift)));
        let column = (1..=eqs.len())
            .map(|i| {
                if i == v.row {
                    lift.to_string()
                } else {
                    "0".to_string()
                }
            })
            .collect();
        parameters.push(Parameter {
            name: format!("t{j}"),
            weight: v.weight,
            row: v.row,
            gamma_degree: v.gamma_degree,
            column,
        });
    }
    let equations: Vec<Polynomial> = eqs
        .iter()
        .zip(extra)
        .map(|(e, terms)| e.polynomial().add(&Polynomial::from_terms(terms)))
        .collect();
    let targets: Vec<i64> = eqs.iter().map(|e| e.weight).collect();
    for (i, (f, &t)) in equations.iter().zip(&targets).enumerate() {
        if !f.is_homogeneous(&weights, t) {
            return Err(Error::Inhomogeneous {
                equation: i + 1,
                expected: t,
            });
        }
    }
    let tau_minus = parameters
        .iter()
        .enumerate()
        .filter(|(_, p)| p.weight < 0)
        .map(|(k, _)| k + 1)
        .collect();
    let tau_plus = parameters
        .iter()
        .enumerate()
        .filter(|(_, p)| p.weight > 0)
        .map(|(k, _)| k + 1)
        .collect();
    Ok(MiniversalFamily {
        equations,
        weights,
        parameters,
        targets,
        tau_minus,
        tau_plus,
    })
}

/// Splitting of the base `A^{2δ}` by the sign of the parameter weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightSplit {
    pub tau_minus_dim: usize,
    pub tau_plus_dim: usize,
    /// Coordinates spanning `A^{τ−}`, the equisingular subspace.
    pub equisingular: Vec<String>,
    pub positive: Vec<String>,
}

pub fn weight_split(fam: &MiniversalFamily) -> WeightSplit {
    let names = |idx: &[usize]| idx.iter().map(|j| format!("t{j}")).collect::<Vec<_>>();
    WeightSplit {
        tau_minus_dim: fam.tau_minus.len(),
        tau_plus_dim: fam.tau_plus.len(),
        equisingular: names(&fam.tau_minus),
        positive: names(&fam.tau_plus),
    }
}

/// A term of a homogenized equation; `z_exponent < 0` marks a term that
/// does not fit the projective model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousTerm {
    pub coeff: BigRational,
    pub monomial: Monomial,
    pub z_exponent: i64,
}

impl HomogeneousTerm {
    pub fn is_flagged(&self) -> bool {
        self.z_exponent < 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveFamily {
    pub degrees: Vec<u32>,
    pub equations: Vec<Vec<HomogeneousTerm>>,
    pub targets: Vec<i64>,
}

impl ProjectiveFamily {
    pub fn flagged(&self) -> Vec<(usize, &HomogeneousTerm)> {
        self.equations
            .iter()
            .enumerate()
            .flat_map(|(i, eq)| eq.iter().filter(|t| t.is_flagged()).map(move |t| (i + 1, t)))
            .collect()
    }

    /// Fails with [`Error::NegativeZExponent`] on the first flagged term.
    pub fn require_nonnegative(&self) -> Result<()> {
        match self.flagged().first() {
            None => Ok(()),
            Some((i, t)) => Err(Error::NegativeZExponent {
                equation: *i,
                term: t.monomial.to_string(),
                exponent: t.z_exponent,
            }),
        }
    }

    /// Z-exponents of the parameter terms, in parameter order.
    pub fn parameter_z_exponents(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = self
            .equations
            .iter()
            .flatten()
            .filter_map(|t| {
                t.monomial.iter().find_map(|(v, _)| match v {
                    Var::Param(j) => Some((j, t.z_exponent)),
                    _ => None,
                })
            })
            .collect();
        out.sort();
        out
    }

    pub fn equation_text(&self, i: usize) -> String {
        let mut s = String::new();
        for (k, t) in self.equations[i].iter().enumerate() {
            let mut m = t.monomial.to_string();
            if t.z_exponent != 0 {
                let z = if t.z_exponent == 1 {
                    "Z".to_string()
                } else {
                    format!("Z^{}", t.z_exponent)
                };
                m = if t.monomial.is_one() {
                    z
                } else {
                    format!("{m}*{z}")
                };
            }
            let neg = t.coeff < BigRational::zero();
            let abs = if neg { -t.coeff.clone() } else { t.coeff.clone() };
            let body = if abs.is_one() && m != "1" {
                m
            } else if m == "1" {
                abs.to_string()
            } else {
                format!("{abs}*{m}")
            };
            match (k, neg) {
                (0, true) => s.push_str(&format!("-{body}")),
                (0, false) => s.push_str(&body),
                (_, true) => s.push_str(&format!(" - {body}")),
                (_, false) => s.push_str(&format!(" + {body}")),
            }
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degrees": self.degrees.iter().chain(std::iter::once(&1)).collect::<Vec<_>>(),
            "equations": (0..self.equations.len()).map(|i| json!({
                "text": self.equation_text(i),
                "terms": self.equations[i].iter().map(|t| {
                    let mut exps = t.monomial.to_json();
                    exps.as_object_mut().unwrap().insert("Z".into(), json!(t.z_exponent));
                    json!({"coeff": rational_json(&t.coeff), "exps": exps, "flagged": t.is_flagged()})
                }).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "flagged": self.flagged().len(),
        })
    }
}

/// Homogenizes each `f̃_i` to degree `n_i·β̄_i` with `u_i → X_i`.
///
/// The Z-exponent of a parameter term equals the parameter weight, so
/// negative-weight parameters give negative exponents; such terms are kept
/// and flagged rather than rejected.
pub fn homogenize_family(
    fam: &MiniversalFamily,
    model: &WeightedProjectiveModel,
) -> Result<ProjectiveFamily> {
    if model.equations.len() != fam.equations.len() || model.targets != fam.targets {
        return Err(Error::ModelMismatch(format!(
            "{} family equations vs {} model equations",
            fam.equations.len(),
            model.equations.len()
        )));
    }
    let xw = model.weights();
    let equations = fam
        .equations
        .iter()
        .zip(&fam.targets)
        .map(|(f, &target)| {
            f.terms()
                .iter()
                .map(|t| {
                    let monomial = Monomial::from_pairs(t.monomial.iter().map(|(v, e)| match v {
                        Var::U(i) => (Var::X(i), e),
                        other => (other, e),
                    }));
                    let x_degree = monomial
                        .restrict(|v| matches!(v, Var::X(_)))
                        .weight(&xw)
                        .unwrap_or(0);
                    HomogeneousTerm {
                        coeff: t.coeff.clone(),
                        monomial,
                        z_exponent: target - x_degree,
                    }
                })
                .collect()
        })
        .collect();
    Ok(ProjectiveFamily {
        degrees: model.degrees.clone(),
        equations,
        targets: fam.targets.clone(),
    })
}

/// True iff, after substituting `point` for the parameters, every `f̃_i`
/// keeps a nonzero part in its maximal `u`-weighted degree.
pub fn b0_condition(fam: &MiniversalFamily, point: &[BigRational]) -> bool {
    let substituted_params = |v: Var| match v {
        Var::Param(j) => Some(Polynomial::constant(
            point.get(j - 1).cloned().unwrap_or_else(BigRational::zero),
        )),
        _ => None,
    };
    fam.equations.iter().all(|f| {
        let u_degree = |m: &Monomial| {
            m.restrict(|v| matches!(v, Var::U(_)))
                .weight(&fam.weights)
                .unwrap_or(0)
        };
        let Some(top) = f.terms().iter().map(|t| u_degree(&t.monomial)).max() else {
            return false;
        };
        let top_part =
            Polynomial::from_terms(f.terms().iter().filter(|t| u_degree(&t.monomial) == top).cloned());
        !top_part.substitute(&substituted_params).is_zero()
    })
}

/// Convenience: the whole chain from a semigroup to its family.
pub fn deform(s: &BranchSemigroup) -> Result<(Vec<BinomialEquation>, TangentBasis, MiniversalFamily)> {
    let eqs = crate::curve::curve_equations(s)?;
    let cols = jacobian_columns(&eqs, s);
    let basis = t1_basis(&cols, s)?;
    let fam = miniversal_family(&basis, &eqs, s)?;
    Ok((eqs, basis, fam))
}
