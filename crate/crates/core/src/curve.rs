//! The monomial curve of a branch semigroup and its weighted-projective closure.
//!
//! The curve is parametrized by `u_i = t^{β̄_i}` and cut out by the binomials
//! `f_i = u_i^{n_i} − u_0^{ℓ_0}⋯u_{i−1}^{ℓ_{i−1}}`. In the weighted projective
//! space with `deg X_i = β̄_i`, `deg Z = 1` the same binomials are already
//! homogeneous, and the closure adds one smooth point at infinity.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Term, Var, WeightTable};
use crate::semigroup::{gcd, gcd_ladder, represent, validate_plane_branch, BranchSemigroup};

/// `u_i^{n_i} − u_0^{ℓ_0}⋯u_{i−1}^{ℓ_{i−1}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialEquation {
    pub index: usize,
    pub n: u32,
    pub lead: Term,
    pub tail: Term,
    /// `n_i·β̄_i`.
    pub weight: i64,
}

impl BinomialEquation {
    pub fn polynomial(&self) -> Polynomial {
        Polynomial::from_terms([self.lead.clone(), self.tail.clone()])
    }

    /// Tail exponents `ℓ^{(i)}`.
    pub fn tail_exponents(&self) -> Vec<u32> {
        (0..self.index)
            .map(|j| self.tail.monomial.exponent(Var::U(j)))
            .collect()
    }
}

pub fn curve_weights(s: &BranchSemigroup) -> WeightTable {
    let mut w = WeightTable::new();
    for (i, &b) in s.generators().iter().enumerate() {
        w.insert(Var::U(i), b as i64);
    }
    w
}

pub fn curve_equations(s: &BranchSemigroup) -> Result<Vec<BinomialEquation>> {
    validate_plane_branch(s).into_result()?;
    let ladder = gcd_ladder(s)?;
    let w = curve_weights(s);
    let mut out = Vec::with_capacity(s.genus_g());
    for i in 1..=s.genus_g() {
        let rep = represent(s, i)?;
        let n = ladder.n(i);
        let lead = Term::int(1, Monomial::var(Var::U(i), n));
        let tail = Term::int(
            -1,
            Monomial::from_pairs(rep.coefficients.iter().enumerate().map(|(j, &l)| (Var::U(j), l))),
        );
        let weight = n as i64 * s.generators()[i] as i64;
        debug_assert_eq!(lead.weight(&w), Some(weight));
        debug_assert_eq!(tail.weight(&w), Some(weight));
        out.push(BinomialEquation {
            index: i,
            n,
            lead,
            tail,
            weight,
        });
    }
    Ok(out)
}

fn uniformizer_power(e: u32) -> Polynomial {
    Polynomial::from_terms([Term::int(1, Monomial::var(Var::Uniformizer, e))])
}

/// True iff every polynomial vanishes identically under `u_i ↦ T^{β̄_i}`.
pub fn check_parametrization(eqs: &[Polynomial], s: &BranchSemigroup) -> bool {
    let gens = s.generators().to_vec();
    eqs.iter().all(|f| {
        f.substitute(&|v| match v {
            Var::U(i) => gens.get(i).map(|&b| uniformizer_power(b)),
            _ => None,
        })
        .is_zero()
    })
}

/// Closure of the curve in `P(β̄_0, …, β̄_g, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedProjectiveModel {
    /// `deg X_i = β̄_i`.
    pub degrees: Vec<u32>,
    pub equations: Vec<Polynomial>,
    /// Target degree `n_i·β̄_i` of each equation.
    pub targets: Vec<i64>,
}

impl WeightedProjectiveModel {
    pub fn weights(&self) -> WeightTable {
        let mut w = WeightTable::new().with(Var::Z, 1);
        for (i, &d) in self.degrees.iter().enumerate() {
            w.insert(Var::X(i), d as i64);
        }
        w
    }

    /// Sets `Z = 1` and renames `X_i` back to `u_i`.
    pub fn dehomogenize(&self) -> Vec<Polynomial> {
        self.equations
            .iter()
            .map(|f| {
                f.substitute(&|v| match v {
                    Var::X(i) => Some(Polynomial::from_terms([Term::int(
                        1,
                        Monomial::var(Var::U(i), 1),
                    )])),
                    Var::Z => Some(Polynomial::constant(crate::poly::rat(1))),
                    _ => None,
                })
            })
            .collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        let w = self.weights();
        self.equations
            .iter()
            .zip(&self.targets)
            .all(|(f, &t)| f.is_homogeneous(&w, t))
    }

    pub fn to_json(&self) -> Value {
        let w = self.weights();
        json!({
            "degrees": self.degrees.iter().chain(std::iter::once(&1)).collect::<Vec<_>>(),
            "equations": self.equations.iter().map(|f| f.to_json(&w)).collect::<Vec<_>>(),
            "targets": self.targets,
        })
    }
}

pub fn compactify(eqs: &[BinomialEquation], s: &BranchSemigroup) -> WeightedProjectiveModel {
    let equations = eqs
        .iter()
        .map(|e| {
            e.polynomial().substitute(&|v| match v {
                Var::U(i) => Some(Polynomial::from_terms([Term::int(
                    1,
                    Monomial::var(Var::X(i), 1),
                )])),
                _ => None,
            })
        })
        .collect();
    WeightedProjectiveModel {
        degrees: s.generators().to_vec(),
        equations,
        targets: eqs.iter().map(|e| e.weight).collect(),
    }
}

/// Result of the analysis of the chart `X_0 ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfinityChart {
    /// Chart equations after setting `X_0 = 1`.
    pub chart_equations: Vec<String>,
    /// Equations after normalizing by the roots of unity, `x_i = 1`.
    pub normalized: Vec<String>,
    /// Order of the residual root-of-unity group before each step.
    pub residual_orders: Vec<u32>,
    /// Points at infinity in coordinates `[X_0 : ⋯ : X_g : Z]`.
    pub points: Vec<Vec<i64>>,
    pub smooth: bool,
}

/// Normalizes the equations in the chart `X_0 ≠ 0`.
///
/// The chart is `Spec k[x_1, …, x_g, z]` modulo `μ_{β̄_0}` acting by
/// `ζ^{β̄_i}` on `x_i`. Step `i` sees `x_i^{n_i} = 1` once `x_1 = ⋯ = x_{i−1} = 1`,
/// and the residual group `μ_e` must move the root `1` through all `n_i`
/// roots, after which it shrinks to `μ_{gcd(e, β̄_i)}`. The group is trivial
/// after `g` steps, leaving a translate of the `z`-axis.
pub fn infinity_chart(model: &WeightedProjectiveModel) -> Result<InfinityChart> {
    let g = model.equations.len();
    if model.degrees.len() != g + 1 {
        return Err(Error::NormalizationFailed(format!(
            "{} equations for {} coordinates",
            g,
            model.degrees.len()
        )));
    }
    let mut leads = Vec::with_capacity(g);
    let mut tails = Vec::with_capacity(g);
    for (k, f) in model.equations.iter().enumerate() {
        let i = k + 1;
        if f.variables().contains(&Var::Z) {
            return Err(Error::NormalizationFailed(format!("F_{i} involves Z")));
        }
        let terms = f.terms();
        let lead = terms.iter().find(|t| {
            let e = t.monomial.exponent(Var::X(i));
            e > 0 && t.monomial == Monomial::var(Var::X(i), e)
        });
        let Some(lead) = lead else {
            return Err(Error::NormalizationFailed(format!(
                "F_{i} has no pure power of X{i}"
            )));
        };
        let rest: Vec<&Term> = terms.iter().filter(|t| *t != lead).collect();
        if rest.len() != 1 || rest[0].coeff != -lead.coeff.clone() {
            return Err(Error::NormalizationFailed(format!("F_{i} is not a binomial")));
        }
        let tail = &rest[0].monomial;
        if tail.iter().any(|(v, _)| !matches!(v, Var::X(j) if j < i)) || tail.is_one() {
            // with X_0 = 0 an empty or foreign tail would admit extra points at infinity
            return Err(Error::NormalizationFailed(format!(
                "tail of F_{i} is not a nonconstant monomial in X0..X{}",
                i - 1
            )));
        }
        leads.push(lead.monomial.exponent(Var::X(i)));
        tails.push(tail.clone());
    }

    let chart_equations: Vec<String> = (0..g)
        .map(|k| {
            let i = k + 1;
            let tail = tails[k].restrict(|v| v != Var::X(0));
            let lhs = Monomial::var(Var::X(i), leads[k]);
            format!("{} = {}", chart_name(&lhs), chart_name(&tail))
        })
        .collect();

    let mut order = model.degrees[0];
    let mut residual_orders = Vec::with_capacity(g);
    let mut normalized = Vec::with_capacity(g);
    for (k, &lead) in leads.iter().enumerate().take(g) {
        let i = k + 1;
        residual_orders.push(order);
        // x_1 = ⋯ = x_{i−1} = 1 turns the tail into 1
        let orbit = order / gcd(order as u64, model.degrees[i] as u64) as u32;
        if orbit != lead {
            return Err(Error::NormalizationFailed(format!(
                "μ_{order} moves x{i} through {orbit} roots but x{i}^{lead} = 1 has {lead} of them"
            )));
        }
        normalized.push(format!("x{i} = 1"));
        order /= orbit;
    }
    if order != 1 {
        return Err(Error::NormalizationFailed(format!(
            "residual group μ_{order} remains after {g} steps"
        )));
    }
    let mut point = vec![1i64; g + 1];
    point.push(0);
    Ok(InfinityChart {
        chart_equations,
        normalized,
        residual_orders,
        points: vec![point],
        smooth: true,
    })
}

fn chart_name(m: &Monomial) -> String {
    if m.is_one() {
        return "1".into();
    }
    m.iter()
        .map(|(v, e)| {
            let name = match v {
                Var::X(i) => format!("x{i}"),
                other => other.to_string(),
            };
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// True iff `[T:Z] ↦ [T^{β̄_0} : ⋯ : T^{β̄_g} : Z]` satisfies every equation of
/// the model identically, with every intermediate term of `T`-degree at most
/// `degree_bound`.
pub fn normalization_check(model: &WeightedProjectiveModel, s: &BranchSemigroup, degree_bound: u32) -> bool {
    let gens = s.generators();
    if model.degrees.as_slice() != gens {
        return false;
    }
    let w = WeightTable::new().with(Var::Uniformizer, 1);
    model.equations.iter().all(|f| {
        let image = f.terms().iter().map(|t| {
            t.monomial
                .iter()
                .map(|(v, e)| match v {
                    Var::X(i) => gens.get(i).map(|&b| (Var::Uniformizer, b * e)),
                    Var::Z => Some((Var::Z, e)),
                    _ => None,
                })
                .collect::<Option<Vec<_>>>()
                .map(|pairs| Term::new(t.coeff.clone(), Monomial::from_pairs(pairs)))
        });
        let Some(image) = image.collect::<Option<Vec<_>>>() else {
            return false;
        };
        if image.iter().any(|t| {
            t.monomial
                .restrict(|v| v == Var::Uniformizer)
                .weight(&w)
                .unwrap_or(0)
                > degree_bound as i64
        }) {
            return false;
        }
        Polynomial::from_terms(image).is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::semigroup_from_generators;

    fn sg(g: &[i64]) -> BranchSemigroup {
        semigroup_from_generators(g).unwrap()
    }

    fn texts(s: &BranchSemigroup) -> Vec<String> {
        curve_equations(s)
            .unwrap()
            .iter()
            .map(|e| e.polynomial().to_string())
            .collect()
    }

    #[test]
    fn equations() {
        assert_eq!(texts(&sg(&[2, 3])), ["u1^2 - u0^3"]);
        assert_eq!(texts(&sg(&[3, 4])), ["u1^3 - u0^4"]);
        assert_eq!(texts(&sg(&[4, 6, 13])), ["u1^2 - u0^3", "u2^2 - u0^2*u1^3"]);
    }

    #[test]
    fn rejects_non_plane_branch() {
        assert!(matches!(
            curve_equations(&sg(&[4, 6, 11])),
            Err(Error::NotPlaneBranch(_))
        ));
    }

    #[test]
    fn parametrization() {
        for gens in [&[2, 3][..], &[4, 6, 13]] {
            let s = sg(gens);
            let eqs: Vec<_> = curve_equations(&s)
                .unwrap()
                .iter()
                .map(|e| e.polynomial())
                .collect();
            assert!(check_parametrization(&eqs, &s));
        }
        let s = sg(&[2, 3]);
        let bad = Polynomial::from_terms([
            Term::int(1, Monomial::var(Var::U(1), 2)),
            Term::int(-1, Monomial::var(Var::U(0), 2)),
        ]);
        assert!(!check_parametrization(&[bad], &s));
    }

    #[test]
    fn projective_models() {
        let s = sg(&[2, 3]);
        let m = compactify(&curve_equations(&s).unwrap(), &s);
        assert_eq!(m.equations[0].to_string(), "X1^2 - X0^3");
        assert_eq!(m.degrees, vec![2, 3]);
        assert!(m.is_homogeneous());

        let s = sg(&[3, 4]);
        let m = compactify(&curve_equations(&s).unwrap(), &s);
        assert_eq!(m.equations[0].to_string(), "X1^3 - X0^4");

        let s = sg(&[4, 6, 13]);
        let m = compactify(&curve_equations(&s).unwrap(), &s);
        assert_eq!(m.equations.len(), 2);
        assert_eq!(m.degrees, vec![4, 6, 13]);
    }

    #[test]
    fn infinity() {
        for (gens, point) in [
            (&[2, 3][..], vec![1, 1, 0]),
            (&[4, 6, 13], vec![1, 1, 1, 0]),
            (&[3, 4], vec![1, 1, 0]),
        ] {
            let s = sg(gens);
            let m = compactify(&curve_equations(&s).unwrap(), &s);
            let chart = infinity_chart(&m).unwrap();
            assert_eq!(chart.points, vec![point]);
            assert!(chart.smooth);
        }
        let s = sg(&[4, 6, 13]);
        let m = compactify(&curve_equations(&s).unwrap(), &s);
        let chart = infinity_chart(&m).unwrap();
        assert_eq!(chart.chart_equations, ["x1^2 = 1", "x2^2 = x1^3"]);
        assert_eq!(chart.normalized, ["x1 = 1", "x2 = 1"]);
        assert_eq!(chart.residual_orders, vec![4, 2]);
    }

    #[test]
    fn infinity_rejects_tampered_degrees() {
        let s = sg(&[4, 6, 13]);
        let mut m = compactify(&curve_equations(&s).unwrap(), &s);
        m.degrees[1] = 5;
        assert!(matches!(infinity_chart(&m), Err(Error::NormalizationFailed(_))));
    }

    #[test]
    fn normalization() {
        for gens in [&[2, 3][..], &[4, 6, 13]] {
            let s = sg(gens);
            let m = compactify(&curve_equations(&s).unwrap(), &s);
            assert!(normalization_check(&m, &s, 1000));
            assert!(!normalization_check(&m, &s, 5));
        }
        let s = sg(&[2, 3]);
        let mut m = compactify(&curve_equations(&s).unwrap(), &s);
        m.equations[0] = Polynomial::from_terms([
            Term::int(1, Monomial::var(Var::X(1), 2)),
            Term::int(-1, Monomial::var(Var::X(0), 4)),
        ]);
        assert!(!normalization_check(&m, &s, 1000));
    }

    #[test]
    fn round_trip_affine() {
        let s = sg(&[4, 6, 13]);
        let eqs = curve_equations(&s).unwrap();
        let m = compactify(&eqs, &s);
        let back = m.dehomogenize();
        let orig: Vec<_> = eqs.iter().map(|e| e.polynomial()).collect();
        assert_eq!(back, orig);
    }
}
