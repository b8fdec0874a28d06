//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Affine coordinate `u_i`.
    U(usize),
    /// Weighted-projective coordinate `X_i`.
    X(usize),
    /// Homogenizing coordinate of degree 1.
    Z,
    /// Deformation parameter `t_j` (1-based).
    Param(usize),
    /// Uniformizer `T` of the normalization.
    Uniformizer,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::U(i) => write!(f, "u{i}"),
            Var::X(i) => write!(f, "X{i}"),
            Var::Z => write!(f, "Z"),
            Var::Param(j) => write!(f, "t{j}"),
            Var::Uniformizer => write!(f, "T"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<Var, u32>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var, e: u32) -> Self {
        let mut m = Self::default();
        m.set(v, e);
        m
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut m = Self::default();
        for (v, e) in pairs {
            let cur = m.exponent(v);
            m.set(v, cur + e);
        }
        m
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: Var, e: u32) {
        if e == 0 {
            self.0.remove(&v);
        } else {
            self.0.insert(v, e);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().map(|(&v, &e)| (v, e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_pairs(self.iter().chain(other.iter()))
    }

    /// Weighted degree, or `None` if some variable has no weight.
    pub fn weight(&self, w: &WeightTable) -> Option<i64> {
        self.iter().map(|(v, e)| w.get(v).map(|wv| wv * e as i64)).sum()
    }

    /// The monomial with the variables matching `keep` only.
    pub fn restrict(&self, keep: impl Fn(Var) -> bool) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter(|(v, _)| keep(**v))
                .map(|(&v, &e)| (v, e))
                .collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        let map: serde_json::Map<String, Value> =
            self.iter().map(|(v, e)| (v.to_string(), json!(e))).collect();
        Value::Object(map)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        // parameters first, then coordinates; reads like `t2*u0`
        let mut vars: Vec<(Var, u32)> = self.iter().collect();
        vars.sort_by_key(|(v, _)| match v {
            Var::Param(j) => (0, *j),
            Var::U(i) | Var::X(i) => (1, *i),
            Var::Uniformizer => (2, 0),
            Var::Z => (3, 0),
        });
        for (k, (v, e)) in vars.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Variable weights for a G_m-action.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightTable(BTreeMap<Var, i64>);

impl WeightTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: Var, w: i64) -> Self {
        self.0.insert(v, w);
        self
    }

    pub fn insert(&mut self, v: Var, w: i64) {
        self.0.insert(v, w);
    }

    pub fn get(&self, v: Var) -> Option<i64> {
        self.0.get(&v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, i64)> + '_ {
        self.0.iter().map(|(&v, &w)| (v, w))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigRational,
    pub monomial: Monomial,
}

impl Term {
    pub fn new(coeff: BigRational, monomial: Monomial) -> Self {
        Self { coeff, monomial }
    }

    pub fn int(c: i64, monomial: Monomial) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(c)), monomial)
    }

    pub fn weight(&self, w: &WeightTable) -> Option<i64> {
        self.monomial.weight(w)
    }

    pub fn to_json(&self) -> Value {
        json!({ "coeff": rational_json(&self.coeff), "exps": self.monomial.to_json() })
    }
}

/// A polynomial kept as an ordered list of terms.
///
/// Like terms are merged and zero terms dropped; otherwise terms keep the
/// order in which they first appeared, so `u1^2 - u0^3` prints as written.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_terms([Term::new(c, Monomial::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut out: Vec<Term> = Vec::new();
        for t in terms {
            if let Some(existing) = out.iter_mut().find(|e| e.monomial == t.monomial) {
                existing.coeff += t.coeff;
            } else {
                out.push(t);
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Self { terms: out }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().flat_map(|a| {
            other
                .terms
                .iter()
                .map(move |b| Term::new(&a.coeff * &b.coeff, a.monomial.mul(&b.monomial)))
        }))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(BigRational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().filter_map(|t| {
            let e = t.monomial.exponent(v);
            if e == 0 {
                return None;
            }
            let mut m = t.monomial.clone();
            m.set(v, e - 1);
            Some(Term::new(
                &t.coeff * BigRational::from_integer(BigInt::from(e)),
                m,
            ))
        }))
    }

    /// Replaces every variable for which `map` returns `Some`.
    pub fn substitute(&self, map: &dyn Fn(Var) -> Option<Polynomial>) -> Polynomial {
        let mut out = Vec::new();
        for t in &self.terms {
            let mut acc = Polynomial::constant(t.coeff.clone());
            let mut kept = Monomial::one();
            for (v, e) in t.monomial.iter() {
                match map(v) {
                    Some(p) => acc = acc.mul(&p.pow(e)),
                    None => kept.set(v, e),
                }
            }
            let kept = Polynomial::from_terms([Term::new(BigRational::one(), kept)]);
            out.extend(acc.mul(&kept).terms);
        }
        Polynomial::from_terms(out)
    }

    /// True iff every term has weight exactly `target`.
    pub fn is_homogeneous(&self, w: &WeightTable, target: i64) -> bool {
        self.terms.iter().all(|t| t.weight(w) == Some(target))
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .iter()
            .flat_map(|t| t.monomial.iter().map(|(v, _)| v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// `{"vars":[…], "weights":[…], "terms":[{"coeff":…, "exps":{…}}], "text":…}`
    pub fn to_json(&self, w: &WeightTable) -> Value {
        let vars = self.variables();
        json!({
            "vars": vars.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "weights": vars.iter().map(|&v| w.get(v)).collect::<Vec<_>>(),
            "terms": self.terms.iter().map(Term::to_json).collect::<Vec<_>>(),
            "text": self.to_string(),
        })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let abs = t.coeff.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if t.monomial.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", t.monomial)?;
            } else {
                write!(f, "{abs}*{}", t.monomial)?;
            }
        }
        Ok(())
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Integers as JSON numbers, everything else as `"p/q"` strings.
pub fn rational_json(r: &BigRational) -> Value {
    use num::ToPrimitive;
    if r.is_integer() {
        if let Some(i) = r.to_integer().to_i64() {
            return json!(i);
        }
    }
    json!(r.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(i: usize, e: u32) -> Monomial {
        Monomial::var(Var::U(i), e)
    }

    #[test]
    fn display_keeps_order() {
        let p = Polynomial::from_terms([Term::int(1, u(1, 2)), Term::int(-1, u(0, 3))]);
        assert_eq!(p.to_string(), "u1^2 - u0^3");
        let q = Polynomial::from_terms([
            Term::int(1, u(1, 2)),
            Term::int(-1, u(0, 3)),
            Term::int(1, Monomial::var(Var::Param(1), 1)),
            Term::int(1, Monomial::var(Var::Param(2), 1).mul(&u(0, 1))),
        ]);
        assert_eq!(q.to_string(), "u1^2 - u0^3 + t1 + t2*u0");
    }

    #[test]
    fn merge_and_cancel() {
        let p = Polynomial::from_terms([Term::int(2, u(0, 1)), Term::int(-2, u(0, 1))]);
        assert!(p.is_zero());
    }

    #[test]
    fn derivative_and_substitution() {
        let f = Polynomial::from_terms([Term::int(1, u(1, 2)), Term::int(-1, u(0, 3))]);
        assert_eq!(f.derivative(Var::U(0)).to_string(), "-3*u0^2");
        let t = |e| Polynomial::from_terms([Term::int(1, Monomial::var(Var::Uniformizer, e))]);
        let sub = f.substitute(&|v| match v {
            Var::U(0) => Some(t(2)),
            Var::U(1) => Some(t(3)),
            _ => None,
        });
        assert!(sub.is_zero());
    }

    #[test]
    fn weights() {
        let w = WeightTable::new().with(Var::U(0), 2).with(Var::U(1), 3);
        let f = Polynomial::from_terms([Term::int(1, u(1, 2)), Term::int(-1, u(0, 3))]);
        assert!(f.is_homogeneous(&w, 6));
        assert!(!f.is_homogeneous(&w, 5));
        let j = f.to_json(&w);
        assert_eq!(j["vars"], json!(["u0", "u1"]));
        assert_eq!(j["weights"], json!([2, 3]));
        assert_eq!(j["terms"][1]["coeff"], json!(-1));
    }
}
