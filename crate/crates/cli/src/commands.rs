use std::collections::BTreeMap;
use std::time::Instant;

use branchforge_core::curve::curve_weights;
use branchforge_core::lattice::oracle::naive_submodules;
use branchforge_core::poly::{rat, rational_json};
use branchforge_core::semigroup::puiseux_from_semigroup;
use branchforge_core::{
    b0_condition, build_truncated_module, check_parametrization, compactify, curve_equations, deform,
    enumerate_semimodules, enumerate_stable_submodules, fit_signature, gcd_ladder, homogenize_family,
    infinity_chart, jacobian_columns, normalization_check, represent, semigroup_from_puiseux, stratum_table,
    validate_plane_branch, weight_split, BranchSemigroup, Budget, Error, FiniteField, GradedColumn,
    StrataByQ,
};
use num::{BigRational, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{Report, Verdict};
use crate::Oracle;

pub(crate) fn elapsed_ms(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn list(v: &[impl ToString]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn semigroup_report(s: &BranchSemigroup) -> Report {
    let t0 = Instant::now();
    let mut r = Report::new("semigroup", json!({}));
    let gens = s.generators();

    let validation = validate_plane_branch(s);
    for c in &validation.checks {
        r.check(format!("validation.{}", c.name), c.passed);
        if !c.passed {
            r.note(format!("validation.{}", c.name), c.detail.clone());
        }
    }

    let ladder = gcd_ladder(s).ok();
    let mut reps = Vec::new();
    let mut reps_ok = true;
    if let Some(l) = &ladder {
        for i in 1..=s.genus_g() {
            let target = l.n(i) as u64 * gens[i] as u64;
            match represent(s, i) {
                Ok(rep) => {
                    reps_ok &= rep.evaluate(gens) == target;
                    reps.push(json!({"index": i, "target": target, "coefficients": rep.coefficients}));
                }
                Err(e) => {
                    reps_ok = false;
                    reps.push(json!({"index": i, "target": target, "error": e.to_string()}));
                }
            }
        }
    }
    r.check("representations_evaluate", ladder.is_some() && reps_ok);

    let puiseux = puiseux_from_semigroup(s).ok();
    match &puiseux {
        Some(p) => r.check(
            "puiseux_round_trip",
            semigroup_from_puiseux(p).map(|b| &b == s).unwrap_or(false),
        ),
        None => r.skip(
            "puiseux_round_trip",
            "no Puiseux characteristic for this semigroup",
        ),
    }

    r.results = json!({
        "semigroup": s.to_string(),
        "generators": gens,
        "genus": s.genus_g(),
        "gaps": s.gaps(),
        "delta": s.delta(),
        "conductor": s.conductor(),
        "ladder": ladder.as_ref().map(|l| json!({"e": l.e, "n": l.n})),
        "representations": reps,
        "puiseux": puiseux,
        "validation": validation,
    });
    r.text.push(format!("semigroup {s}"));
    r.text.push(format!("gaps [{}]", list(s.gaps())));
    r.text
        .push(format!("delta {}, conductor {}", s.delta(), s.conductor()));
    if let Some(l) = &ladder {
        r.text
            .push(format!("gcd ladder e = [{}], n = [{}]", list(&l.e), list(&l.n)));
    }
    if let Some(p) = &puiseux {
        r.text.push(format!("puiseux {p}"));
    }
    r.timing.insert("total_ms".into(), elapsed_ms(t0));
    r
}

pub fn curve_report(s: &BranchSemigroup) -> Result<Report, Error> {
    let t0 = Instant::now();
    let mut r = Report::new("curve", json!({}));
    let eqs = curve_equations(s)?;
    let polys: Vec<_> = eqs.iter().map(|e| e.polynomial()).collect();
    let model = compactify(&eqs, s);
    let bound = model.targets.iter().copied().max().unwrap_or(0) as u32;
    let chart = infinity_chart(&model)?;
    let expected_point: Vec<i64> = std::iter::repeat_n(1, s.generators().len()).chain([0]).collect();

    r.check("parametrization", check_parametrization(&polys, s));
    r.check("projective_normalization", normalization_check(&model, s, bound));
    r.check("projective_homogeneous", model.is_homogeneous());
    r.check("dehomogenize_round_trip", model.dehomogenize() == polys);
    r.check(
        "unique_point_at_infinity",
        chart.points.len() == 1 && chart.points[0] == expected_point,
    );
    r.check("smooth_at_infinity", chart.smooth);

    let w = curve_weights(s);
    r.results = json!({
        "equations": polys.iter().map(|f| f.to_json(&w)).collect::<Vec<_>>(),
        "projective_model": model.to_json(),
        "infinity_chart": chart,
    });
    for f in &polys {
        r.text.push(format!("{f} = 0"));
    }
    let point = expected_point
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(":");
    if chart.points.len() == 1 {
        r.text.push(format!("unique point [{point}] at infinity"));
    }
    if chart.smooth {
        r.text.push("smooth at infinity".into());
    }
    r.timing.insert("total_ms".into(), elapsed_ms(t0));
    Ok(r)
}

/// `{mn − ni − mj : 0 ≤ i ≤ m−2, 0 ≤ j ≤ n−2}` for `Γ = ⟨n, m⟩`, sorted.
pub fn two_generator_weights(n: i64, m: i64) -> Vec<i64> {
    let mut w: Vec<i64> = (0..=m - 2)
        .flat_map(|i| (0..=n - 2).map(move |j| m * n - n * i - m * j))
        .collect();
    w.sort_unstable();
    w
}

pub fn deform_report(s: &BranchSemigroup, projective: bool) -> Result<Report, Error> {
    let t0 = Instant::now();
    let mut r = Report::new("deform", json!({}));
    let (eqs, basis, fam) = deform(s)?;
    let weights = basis.weights();
    let split = weight_split(&fam);

    r.check("dimension_is_2delta", basis.dimension() == 2 * s.delta());
    r.check("no_zero_weight", weights.iter().all(|&w| w != 0));
    r.check(
        "columns_homogeneous",
        jacobian_columns(&eqs, s).iter().all(GradedColumn::is_homogeneous),
    );
    r.check("equivariant", fam.is_equivariant());
    // a negative weight w puts u-degree target − w above the binomial, so at
    // the origin the top part vanishes exactly when τ− is nonempty
    let b0_at_origin = b0_condition(&fam, &vec![BigRational::zero(); fam.parameters.len()]);
    r.check(
        "b0_at_origin_iff_tau_minus_empty",
        b0_at_origin == fam.tau_minus.is_empty(),
    );
    if let [n, m] = s.generators() {
        let mut sorted = weights.clone();
        sorted.sort_unstable();
        r.check(
            "weight_formula",
            sorted == two_generator_weights(*n as i64, *m as i64),
        );
    } else {
        r.skip("weight_formula", "closed formula covers two generators only");
    }

    let mut results = fam.to_json();
    let obj = results.as_object_mut().unwrap();
    obj.insert("dimension".into(), json!(basis.dimension()));
    obj.insert("weights".into(), json!(weights));
    obj.insert(
        "graded_dimensions".into(),
        json!(basis
            .graded_dimensions
            .iter()
            .map(|(d, n)| json!({"degree": d, "dimension": n}))
            .collect::<Vec<_>>()),
    );
    obj.insert("split".into(), json!(split));
    obj.insert("b0_at_origin".into(), json!(b0_at_origin));

    r.text.push(format!(
        "dim T1 = {} (2*delta = {})",
        basis.dimension(),
        2 * s.delta()
    ));
    r.text.push(format!("weights [{}]", list(&weights)));
    r.text.push(format!(
        "tau- = {} (equisingular: {}), tau+ = {}",
        split.tau_minus_dim,
        split.equisingular.join(" "),
        split.tau_plus_dim
    ));
    for f in &fam.equations {
        r.text.push(format!("{f}"));
    }

    if projective {
        let model = compactify(&eqs, s);
        let pf = homogenize_family(&fam, &model)?;
        let negative: Vec<usize> = pf
            .parameter_z_exponents()
            .into_iter()
            .filter(|&(_, e)| e < 0)
            .map(|(j, _)| j)
            .collect();
        r.check("flagged_terms_are_tau_minus", negative == fam.tau_minus);
        let flagged: Vec<Value> = pf
            .flagged()
            .into_iter()
            .map(|(i, t)| json!({"equation": i, "term": format!("{}", t.monomial), "z_exponent": t.z_exponent}))
            .collect();
        if !flagged.is_empty() {
            r.note(
                "flagged_terms_are_tau_minus",
                format!("{} term(s) need a negative power of Z", flagged.len()),
            );
        }
        obj.insert("projective".into(), pf.to_json());
        obj.insert("flagged".into(), json!(flagged));
        r.text.push("projective closure:".into());
        for i in 0..pf.equations.len() {
            r.text.push(format!("  {}", pf.equation_text(i)));
        }
    }
    r.results = results;
    r.timing.insert("total_ms".into(), elapsed_ms(t0));
    Ok(r)
}

fn strata_from_rows(rows: &[Vec<Vec<u8>>]) -> BTreeMap<Vec<u32>, u64> {
    let mut out = BTreeMap::new();
    for m in rows {
        let pivots: Vec<u32> = m
            .iter()
            .map(|row| row.iter().position(|&x| x != 0).unwrap() as u32)
            .collect();
        *out.entry(pivots).or_insert(0) += 1;
    }
    out
}

/// Submodule counts per value set over one field.
pub fn stratified_count(
    s: &BranchSemigroup,
    field: &FiniteField,
    oracle: Oracle,
    budget: &Budget,
) -> Result<BTreeMap<Vec<u32>, u64>, Error> {
    let t = build_truncated_module(s, field, budget)?;
    Ok(match oracle {
        Oracle::Bfs => enumerate_stable_submodules(&t).strata(),
        Oracle::Naive => strata_from_rows(&naive_submodules(&t)?),
    })
}

fn polynomial_text(coeffs: &[BigRational]) -> String {
    let mut parts = Vec::new();
    for (d, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let coeff = if mag == rat(1) && d > 0 {
            String::new()
        } else {
            mag.to_string()
        };
        let var = match d {
            0 => String::new(),
            1 => "q".into(),
            _ => format!("q^{d}"),
        };
        let sep = if parts.is_empty() {
            if c.is_negative() {
                "-"
            } else {
                ""
            }
        } else if c.is_negative() {
            " - "
        } else {
            " + "
        };
        parts.push(format!("{sep}{coeff}{var}"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.concat()
    }
}

const FLAG_NAMES: [&str; 6] = [
    "integer_coefficients",
    "nonnegative_coefficients",
    "monic_of_degree_delta",
    "value_at_one_is_semimodule_count",
    "strata_are_powers_of_q",
    "out_of_sample_consistent",
];

pub fn count_report(
    s: &BranchSemigroup,
    qs: &[u32],
    stratify: bool,
    oracle: Oracle,
    budget: &Budget,
) -> Result<Report, Error> {
    let t0 = Instant::now();
    let mut r = Report::new("count", json!({}));
    let fields = qs
        .iter()
        .map(|&q| FiniteField::new(q))
        .collect::<Result<Vec<_>, _>>()?;
    let semimodules = enumerate_semimodules(s, budget)?;

    let per_field: Vec<(u32, BTreeMap<Vec<u32>, u64>, f64)> = fields
        .par_iter()
        .map(|f| {
            let t = Instant::now();
            stratified_count(s, f, oracle, budget).map(|st| (f.order(), st, elapsed_ms(t)))
        })
        .collect::<Result<_, _>>()?;
    let mut per_q = StrataByQ::new();
    for (q, st, ms) in per_field {
        r.timing.insert(format!("q{q}_ms"), ms);
        per_q.insert(q, st);
    }
    let counts: BTreeMap<String, u64> = per_q
        .iter()
        .map(|(q, st)| (q.to_string(), st.values().sum()))
        .collect();
    let (strata, strata_ok) = stratum_table(s, &semimodules, &per_q);

    let mut flags: BTreeMap<&str, Verdict> = BTreeMap::new();
    let mut polynomial = Value::Null;
    let mut nodes = Value::Null;
    let mut q2_deviation = Value::Null;
    let mut fit_note = None;
    match fit_signature(s, &per_q, budget) {
        Ok(sig) => {
            let f = &sig.flags;
            let values = [
                f.integer_coefficients,
                f.nonnegative_coefficients,
                f.monic_of_degree_delta,
                f.value_at_one_is_semimodule_count,
                f.strata_are_powers_of_q,
                f.out_of_sample_consistent,
            ];
            for (name, ok) in FLAG_NAMES.iter().zip(values) {
                flags.insert(name, Verdict::from_bool(ok));
            }
            r.text
                .push(format!("P(q) = {}", polynomial_text(&sig.polynomial)));
            polynomial = json!(sig.polynomial.iter().map(rational_json).collect::<Vec<_>>());
            nodes = json!(sig.nodes);
            q2_deviation = json!(f.q2_deviation);
        }
        Err(Error::InsufficientFields { needed, got }) => {
            for name in &FLAG_NAMES[..4] {
                flags.insert(name, Verdict::Skipped);
            }
            flags.insert("strata_are_powers_of_q", Verdict::from_bool(strata_ok));
            flags.insert("out_of_sample_consistent", Verdict::Skipped);
            fit_note = Some(format!("polynomial fit needs {needed} field sizes, got {got}"));
        }
        Err(e @ Error::InterpolationMismatch { .. }) => {
            for name in &FLAG_NAMES[..4] {
                flags.insert(name, Verdict::Skipped);
            }
            flags.insert("strata_are_powers_of_q", Verdict::from_bool(strata_ok));
            flags.insert("out_of_sample_consistent", Verdict::Fail);
            r.note("out_of_sample_consistent", e.to_string());
        }
        Err(e) => return Err(e),
    }
    for (name, v) in &flags {
        r.verdict(*name, *v);
        if *v == Verdict::Skipped {
            if let Some(n) = &fit_note {
                r.note(*name, n.clone());
            }
        }
    }
    r.check(
        "total_at_least_semimodules",
        counts.values().all(|&n| n >= semimodules.len() as u64),
    );

    let strata_json: Vec<Value> = strata
        .iter()
        .map(|row| {
            if stratify {
                json!({
                    "delta_set": row.delta_set,
                    "extra": row.extra,
                    "counts": row.counts.iter().map(|(q, n)| (q.to_string(), *n)).collect::<BTreeMap<_, _>>(),
                    "exponent": row.exponent,
                })
            } else {
                json!({"delta_set": row.delta_set, "exponent": row.exponent})
            }
        })
        .collect();
    r.results = json!({
        "oracle": oracle.name(),
        "counts": counts,
        "polynomial": polynomial,
        "nodes": nodes,
        "q2_deviation": q2_deviation,
        "semimodule_count": semimodules.len(),
        "strata": strata_json,
        "flags": flags,
    });

    r.text.insert(
        0,
        format!(
            "counts {}",
            counts
                .iter()
                .map(|(q, n)| format!("q={q}: {n}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );
    r.text.push(format!("{} semimodules", semimodules.len()));
    if stratify {
        for row in &strata {
            let exp = row.exponent.map_or("-".to_string(), |d| d.to_string());
            let per_q = row
                .counts
                .values()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            r.text.push(format!(
                "  extra [{}] exponent {exp} counts {per_q}",
                list(&row.extra)
            ));
        }
    }
    r.timing.insert("total_ms".into(), elapsed_ms(t0));
    Ok(r)
}
