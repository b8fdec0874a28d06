//! Numerical semigroups of plane branches.
//!
//! A [`BranchSemigroup`] is the value semigroup Γ ⊂ ℕ of a unibranch plane
//! curve singularity. It is built either from a list of generators or from a
//! Puiseux characteristic and carries its gaps, δ-invariant and conductor.
//! The gcd ladder `(e_i, n_i)` and the representations
//! `n_i·β̄_i = Σ ℓ_j·β̄_j` feed directly into the monomial-curve equations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Puiseux characteristic `(β_0; β_1, …, β_g)` of a plane branch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuiseuxData {
    #[serde(rename = "mult")]
    pub multiplicity: u32,
    pub exponents: Vec<u32>,
}

impl PuiseuxData {
    pub fn new(multiplicity: u32, exponents: Vec<u32>) -> Self {
        Self {
            multiplicity,
            exponents,
        }
    }

    /// Checks monotonicity and the strictly decreasing gcd chain ending in 1.
    pub fn validate(&self) -> Result<()> {
        if self.multiplicity == 0 {
            return Err(Error::InvalidPuiseux("multiplicity must be positive".into()));
        }
        let mut prev = self.multiplicity;
        let mut e = self.multiplicity as u64;
        for (i, &b) in self.exponents.iter().enumerate() {
            if b <= prev {
                return Err(Error::InvalidPuiseux(format!(
                    "exponent β_{} = {b} is not larger than {prev}",
                    i + 1
                )));
            }
            let next = gcd(e, b as u64);
            if next == e {
                return Err(Error::InvalidPuiseux(format!(
                    "β_{} = {b} is divisible by the gcd {e} of its predecessors",
                    i + 1
                )));
            }
            e = next;
            prev = b;
        }
        if e != 1 {
            return Err(Error::InvalidPuiseux(format!(
                "gcd of the characteristic is {e}, expected 1"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for PuiseuxData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.multiplicity)?;
        for (i, b) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {b}")?;
        }
        write!(f, ")")
    }
}

/// The numerical semigroup Γ of a branch, with its gaps and conductor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BranchSemigroup {
    generators: Vec<u32>,
    gaps: Vec<u32>,
    delta: usize,
    conductor: u32,
}

impl BranchSemigroup {
    /// Minimal generating set `β̄_0 < β̄_1 < ⋯ < β̄_g`.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Number of generators minus one.
    pub fn genus_g(&self) -> usize {
        self.generators.len() - 1
    }

    pub fn gaps(&self) -> &[u32] {
        &self.gaps
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn contains(&self, a: i64) -> bool {
        if a < 0 {
            return false;
        }
        if a >= self.conductor as i64 {
            return true;
        }
        self.gaps.binary_search(&(a as u32)).is_err()
    }

    /// Elements of Γ strictly below `bound`, ascending.
    pub fn elements_below(&self, bound: u32) -> Vec<u32> {
        (0..bound).filter(|&a| self.contains(a as i64)).collect()
    }
}

impl fmt::Display for BranchSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, b) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ">")
    }
}

/// Builds the semigroup generated by `gens`, reduced to its minimal generating set.
pub fn semigroup_from_generators(gens: &[i64]) -> Result<BranchSemigroup> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    if let Some(&bad) = gens.iter().find(|&&g| g <= 0 || g > u32::MAX as i64) {
        return Err(Error::NonPositiveGenerator(bad));
    }
    let mut sorted: Vec<u32> = gens.iter().map(|&g| g as u32).collect();
    sorted.sort_unstable();
    sorted.dedup();

    let g = sorted.iter().fold(0u64, |acc, &x| gcd(acc, x as u64));
    if g != 1 {
        return Err(Error::NonCoprimeGenerators { gcd: g as u32 });
    }

    let max = *sorted.last().unwrap() as usize;
    let min = sorted[0] as usize;
    // the Frobenius number of a coprime set is below max², so this window
    // always contains the conductor plus a full run of `min` members
    let window = max * max + max + 1;
    let mut member = vec![false; window];
    member[0] = true;
    for a in 1..window {
        member[a] = sorted.iter().any(|&b| {
            let b = b as usize;
            b <= a && member[a - b]
        });
    }
    let conductor = member
        .iter()
        .rposition(|&m| !m)
        .map(|last_gap| last_gap + 1)
        .unwrap_or(0);
    assert!(
        conductor + min <= window && member[conductor..conductor + min].iter().all(|&m| m),
        "sieve window too small to certify the semi-infinite tail"
    );

    let gaps: Vec<u32> = (1..conductor).filter(|&a| !member[a]).map(|a| a as u32).collect();

    let generators: Vec<u32> = sorted
        .iter()
        .copied()
        .filter(|&a| {
            let a = a as usize;
            !(1..a).any(|b| member[b] && member[a - b])
        })
        .collect();

    Ok(BranchSemigroup {
        generators,
        delta: gaps.len(),
        gaps,
        conductor: conductor as u32,
    })
}

/// Semigroup generators from a Puiseux characteristic, via
/// `β̄_0 = β_0`, `β̄_1 = β_1`, `β̄_{i+1} = n_i·β̄_i + β_{i+1} − β_i`.
pub fn semigroup_from_puiseux(p: &PuiseuxData) -> Result<BranchSemigroup> {
    p.validate()?;
    let mut bar: Vec<u64> = vec![p.multiplicity as u64];
    let mut e_prev = p.multiplicity as u64;
    for (i, &b) in p.exponents.iter().enumerate() {
        if i == 0 {
            bar.push(b as u64);
        } else {
            let e_i = gcd(e_prev, p.exponents[i - 1] as u64);
            let n_i = e_prev / e_i;
            let next = n_i * bar[i] + b as u64 - p.exponents[i - 1] as u64;
            e_prev = e_i;
            bar.push(next);
        }
    }
    let gens: Vec<i64> = bar.iter().map(|&b| b as i64).collect();
    let s = semigroup_from_generators(&gens)?;
    if s.generators.len() != bar.len() {
        return Err(Error::InvalidPuiseux(format!(
            "derived generators {bar:?} are not minimal"
        )));
    }
    Ok(s)
}

/// Inverse of [`semigroup_from_puiseux`] for plane-branch semigroups.
pub fn puiseux_from_semigroup(s: &BranchSemigroup) -> Result<PuiseuxData> {
    let ladder = gcd_ladder(s)?;
    let bar = s.generators();
    let mut exps: Vec<u32> = Vec::with_capacity(bar.len() - 1);
    for i in 1..bar.len() {
        if i == 1 {
            exps.push(bar[1]);
        } else {
            let n = ladder.n[i - 2] as i64;
            let b = bar[i] as i64 - n * bar[i - 1] as i64 + exps[i - 2] as i64;
            if b <= exps[i - 2] as i64 {
                return Err(Error::NotPlaneBranch(format!(
                    "n_{}·β̄_{} ≥ β̄_{}",
                    i - 1,
                    i - 1,
                    i
                )));
            }
            exps.push(b as u32);
        }
    }
    Ok(PuiseuxData::new(bar[0], exps))
}

/// The ladder `e_0 > e_1 > ⋯ > e_g = 1` with `e_{i−1} = n_i·e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcdLadder {
    pub e: Vec<u32>,
    pub n: Vec<u32>,
}

impl GcdLadder {
    /// `n_i` for `1 ≤ i ≤ g`.
    pub fn n(&self, i: usize) -> u32 {
        self.n[i - 1]
    }
}

pub fn gcd_ladder(s: &BranchSemigroup) -> Result<GcdLadder> {
    let bar = s.generators();
    let mut e = vec![bar[0]];
    let mut n = Vec::with_capacity(bar.len() - 1);
    for (i, &b) in bar.iter().enumerate().skip(1) {
        let prev = *e.last().unwrap();
        let next = gcd(prev as u64, b as u64) as u32;
        if next == prev {
            return Err(Error::NotMinimal { index: i });
        }
        n.push(prev / next);
        e.push(next);
    }
    Ok(GcdLadder { e, n })
}

/// `n_i·β̄_i = Σ_{j<i} ℓ_j·β̄_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubRepresentation {
    pub index: usize,
    pub coefficients: Vec<u32>,
}

impl SubRepresentation {
    pub fn evaluate(&self, gens: &[u32]) -> u64 {
        self.coefficients
            .iter()
            .zip(gens)
            .map(|(&l, &b)| l as u64 * b as u64)
            .sum()
    }
}

/// Writes `target` as a nonnegative combination of `gens`, maximizing the
/// coefficient of the last generator first and backtracking downwards.
pub fn greedy_representation(gens: &[u32], target: u64) -> Option<Vec<u32>> {
    fn go(gens: &[u32], target: u64, out: &mut Vec<u32>) -> bool {
        let j = gens.len() - 1;
        let b = gens[j] as u64;
        if j == 0 {
            if target.is_multiple_of(b) {
                out[0] = (target / b) as u32;
                return true;
            }
            return false;
        }
        let mut l = target / b;
        loop {
            out[j] = l as u32;
            if go(&gens[..j], target - l * b, out) {
                return true;
            }
            if l == 0 {
                return false;
            }
            l -= 1;
        }
    }
    if gens.is_empty() {
        return (target == 0).then(Vec::new);
    }
    let mut out = vec![0; gens.len()];
    go(gens, target, &mut out).then_some(out)
}

pub fn represent(s: &BranchSemigroup, i: usize) -> Result<SubRepresentation> {
    let g = s.genus_g();
    if i == 0 || i > g {
        return Err(Error::IndexOutOfRange { index: i, g });
    }
    let ladder = gcd_ladder(s)?;
    let bar = s.generators();
    let target = ladder.n(i) as u64 * bar[i] as u64;
    greedy_representation(&bar[..i], target)
        .map(|coefficients| SubRepresentation {
            index: i,
            coefficients,
        })
        .ok_or(Error::Unrepresentable { index: i, target })
}

pub fn contains(s: &BranchSemigroup, a: i64) -> bool {
    s.contains(a)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.passed)
    }

    /// Converts a failing report into [`Error::NotPlaneBranch`].
    pub fn into_result(self) -> Result<()> {
        match self.failures().next() {
            None => Ok(()),
            Some(c) => Err(Error::NotPlaneBranch(format!("{}: {}", c.name, c.detail))),
        }
    }
}

pub fn validate_plane_branch(s: &BranchSemigroup) -> ValidationReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        })
    };
    let bar = s.generators();

    let g = bar.iter().fold(0u64, |acc, &x| gcd(acc, x as u64));
    push("gcd", g == 1, format!("gcd = {g}"));

    let minimal = bar.iter().enumerate().all(|(i, &b)| {
        let others: Vec<u32> = bar
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &x)| x)
            .collect();
        let mut sorted = others;
        sorted.sort_unstable();
        greedy_representation(&sorted, b as u64).is_none()
    });
    push("minimality", minimal, format!("generators {bar:?}"));

    match gcd_ladder(s) {
        Ok(ladder) => {
            push("ladder", true, format!("e = {:?}, n = {:?}", ladder.e, ladder.n));
            let mut member_ok = true;
            let mut member_detail = Vec::new();
            let mut strong_ok = true;
            let mut strong_detail = Vec::new();
            for i in 1..bar.len() {
                let target = ladder.n(i) as u64 * bar[i] as u64;
                let ok = greedy_representation(&bar[..i], target).is_some();
                member_ok &= ok;
                member_detail.push(format!(
                    "n_{i}β̄_{i} = {target}: {}",
                    if ok { "in" } else { "not in" }
                ));
                if i + 1 < bar.len() {
                    let ok = target < bar[i + 1] as u64;
                    strong_ok &= ok;
                    strong_detail.push(format!("{target} < {}: {ok}", bar[i + 1]));
                }
            }
            push("membership", member_ok, member_detail.join("; "));
            push("strong_increase", strong_ok, strong_detail.join("; "));
        }
        Err(e) => {
            push("ladder", false, e.to_string());
            push("membership", false, "ladder unavailable".into());
            push("strong_increase", false, "ladder unavailable".into());
        }
    }

    let c = s.conductor() as i64;
    let symmetric = c == 2 * s.delta() as i64 && (0..c).all(|a| s.contains(a) != s.contains(c - 1 - a));
    push(
        "symmetry",
        symmetric,
        format!("conductor {c}, 2δ = {}", 2 * s.delta()),
    );
    ValidationReport { checks }
}

/// A semigroup literal: either generators or a Puiseux characteristic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemigroupInput {
    Generators(Vec<i64>),
    Puiseux(PuiseuxData),
}

impl SemigroupInput {
    pub fn build(&self) -> Result<BranchSemigroup> {
        match self {
            SemigroupInput::Generators(g) => semigroup_from_generators(g),
            SemigroupInput::Puiseux(p) => semigroup_from_puiseux(p),
        }
    }

    /// Parses `{"generators":[…]}` or `{"puiseux":{"mult":…,"exponents":[…]}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn parse_int_list(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
        })
        .collect()
}

impl FromStr for SemigroupInput {
    type Err = Error;

    /// Accepts `4,6,13` or `(4; 6, 7)`.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (mult, rest) = inner
                .split_once(';')
                .ok_or_else(|| Error::Parse(format!("missing ';' in {t:?}")))?;
            let mult = mult
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad multiplicity in {t:?}")))?;
            let exps = parse_int_list(rest)?
                .into_iter()
                .map(|x| u32::try_from(x).map_err(|_| Error::Parse(format!("bad exponent {x}"))))
                .collect::<Result<Vec<_>>>()?;
            return Ok(SemigroupInput::Puiseux(PuiseuxData::new(mult, exps)));
        }
        if t.starts_with('{') {
            return Self::from_json(t);
        }
        Ok(SemigroupInput::Generators(parse_int_list(t)?))
    }
}
