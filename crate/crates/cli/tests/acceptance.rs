//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::time::{Duration, Instant};

use branchforge_cli::{run, Command, RunConfig};
use branchforge_core::lattice::oracle::{naive_submodules, springer_lattices};
use branchforge_core::poly::rat;
use branchforge_core::{
    build_truncated_module, check_parametrization, compactify, count_points, curve_equations, deform,
    enumerate_semimodules, enumerate_stable_submodules, infinity_chart, normalization_check,
    purity_signature, semigroup_from_generators, validate_plane_branch, Budget, FiniteField, PuritySignature,
};

const CORPUS: [&[i64]; 4] = [&[2, 3], &[2, 5], &[3, 4], &[4, 6, 13]];

type Outcome = Result<String, String>;
type Golden = (&'static [i64], &'static [u32], &'static [u64], Vec<i64>);
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("{what} took {took:?}, limit {limit:?}"))
}

fn fields(qs: &[u32]) -> Vec<FiniteField> {
    qs.iter().map(|&q| FiniteField::new(q).unwrap()).collect()
}

fn signature(gens: &[i64], qs: &[u32]) -> Result<PuritySignature, String> {
    let s = semigroup_from_generators(gens).map_err(|e| e.to_string())?;
    purity_signature(&s, &fields(qs), &Budget::default()).map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    let t0 = Instant::now();
    let expected = [(&[2, 3][..], 1, 2), (&[3, 4], 3, 6), (&[4, 6, 13], 8, 16)];
    for (gens, delta, c) in expected {
        let s = semigroup_from_generators(gens).map_err(|e| e.to_string())?;
        ensure((s.delta(), s.conductor()) == (delta, c), || {
            format!(
                "{s}: got (δ, c) = ({}, {}), want ({delta}, {c})",
                s.delta(),
                s.conductor()
            )
        })?;
    }
    for gens in CORPUS {
        let s = semigroup_from_generators(gens).map_err(|e| e.to_string())?;
        ensure(s.conductor() as usize == 2 * s.delta(), || format!("{s}: c ≠ 2δ"))?;
        let report = validate_plane_branch(&s);
        ensure(report.all_passed(), || {
            format!(
                "{s}: validation failed {:?}",
                report.failures().collect::<Vec<_>>()
            )
        })?;
    }
    within(t0, Duration::from_secs(1), "semigroup checks")?;
    Ok(format!("corpus symmetric, invariants match ({:?})", t0.elapsed()))
}

fn criterion_2() -> Outcome {
    for gens in CORPUS {
        let t0 = Instant::now();
        let s = semigroup_from_generators(gens).map_err(|e| e.to_string())?;
        let (_, basis, _) = deform(&s).map_err(|e| format!("{s}: {e}"))?;
        ensure(basis.dimension() == 2 * s.delta(), || {
            format!("{s}: dim T1 = {}, 2δ = {}", basis.dimension(), 2 * s.delta())
        })?;
        ensure(!basis.weights().contains(&0), || format!("{s}: zero weight"))?;
        within(t0, Duration::from_secs(5), &s.to_string())?;
    }
    for (n, m) in [(2i64, 3i64), (3, 4), (2, 5), (2, 7), (3, 5)] {
        let t0 = Instant::now();
        let s = semigroup_from_generators(&[n, m]).map_err(|e| e.to_string())?;
        let (_, basis, _) = deform(&s).map_err(|e| format!("{s}: {e}"))?;
        let mut got = basis.weights();
        got.sort_unstable();
        let mut want = Vec::new();
        for i in 0..=m - 2 {
            for j in 0..=n - 2 {
                want.push(m * n - n * i - m * j);
            }
        }
        want.sort_unstable();
        ensure(got == want, || {
            format!("<{n},{m}>: weights {got:?}, want {want:?}")
        })?;
        ensure(got.len() as i64 == (m - 1) * (n - 1), || {
            format!("<{n},{m}>: {} parameters", got.len())
        })?;
        ensure(!got.contains(&0), || format!("<{n},{m}>: zero weight"))?;
        within(t0, Duration::from_secs(5), &format!("<{n},{m}>"))?;
    }
    Ok("dim T1 = 2δ on the corpus, weights match for 5 pairs".into())
}

fn criterion_3() -> Outcome {
    let t0 = Instant::now();
    for gens in CORPUS {
        let s = semigroup_from_generators(gens).map_err(|e| e.to_string())?;
        let eqs = curve_equations(&s).map_err(|e| e.to_string())?;
        let polys: Vec<_> = eqs.iter().map(|e| e.polynomial()).collect();
        ensure(check_parametrization(&polys, &s), || {
            format!("{s}: parametrization")
        })?;
        let model = compactify(&eqs, &s);
        let bound = model.targets.iter().copied().max().unwrap() as u32;
        ensure(normalization_check(&model, &s, bound), || {
            format!("{s}: projective normalization")
        })?;
        let chart = infinity_chart(&model).map_err(|e| format!("{s}: {e}"))?;
        let mut point = vec![1i64; gens.len()];
        point.push(0);
        ensure(chart.points == vec![point], || {
            format!("{s}: points at infinity {:?}", chart.points)
        })?;
        ensure(chart.smooth, || format!("{s}: not smooth at infinity"))?;
    }
    within(t0, Duration::from_secs(1), "curve checks")?;
    Ok(format!(
        "unique smooth point [1:⋯:1:0] on the corpus ({:?})",
        t0.elapsed()
    ))
}

fn criterion_4() -> Outcome {
    let t0 = Instant::now();
    let goldens: [Golden; 2] = [
        (&[2, 3], &[2, 3, 5], &[3, 4, 6], vec![1, 1]),
        (&[2, 5], &[2, 3, 5], &[7, 13, 31], vec![1, 1, 1]),
    ];
    for (gens, qs, counts, poly) in goldens {
        let sig = signature(gens, qs)?;
        let got: Vec<u64> = qs.iter().map(|q| sig.counts[q]).collect();
        ensure(got == counts, || {
            format!("{gens:?}: counts {got:?}, want {counts:?}")
        })?;
        let want: Vec<_> = poly.iter().map(|&c| rat(c)).collect();
        ensure(sig.polynomial == want, || {
            format!("{gens:?}: polynomial {:?}", sig.polynomial)
        })?;
        ensure(sig.flags.all_pass(), || {
            format!("{gens:?}: flags {:?}", sig.flags)
        })?;
    }
    let sig = signature(&[3, 4], &[2, 3, 5, 7])?;
    let f = &sig.flags;
    ensure(sig.polynomial.len() == 4, || {
        format!("<3,4>: degree {}", sig.polynomial.len() - 1)
    })?;
    ensure(f.integer_coefficients && f.nonnegative_coefficients, || {
        format!("<3,4>: coefficients {:?}", sig.polynomial)
    })?;
    ensure(f.monic_of_degree_delta, || {
        "<3,4>: leading coefficient is not 1".into()
    })?;
    ensure(
        branchforge_core::lattice::evaluate(&sig.polynomial, 1) == rat(5),
        || "<3,4>: P(1) ≠ 5".into(),
    )?;
    ensure(f.strata_are_powers_of_q, || {
        "<3,4>: a stratum is not a power of q".into()
    })?;
    ensure(f.out_of_sample_consistent, || {
        "<3,4>: out-of-sample mismatch".into()
    })?;
    ensure(sig.strata.iter().all(|r| r.exponent.is_some()), || {
        "<3,4>: stratum exponent varies".into()
    })?;
    within(t0, Duration::from_secs(120), "point counts")?;
    let poly: Vec<String> = sig.polynomial.iter().map(ToString::to_string).collect();
    Ok(format!(
        "<3,4> counts {:?}, P coefficients [{}] ({:?})",
        sig.counts,
        poly.join(", "),
        t0.elapsed()
    ))
}

fn criterion_5() -> Outcome {
    let budget = Budget::default();
    for (gens, q) in [(&[2, 3][..], 2u32), (&[2, 3], 3), (&[2, 5], 2), (&[3, 4], 2)] {
        let s = semigroup_from_generators(gens).map_err(|e| e.to_string())?;
        let t =
            build_truncated_module(&s, &FiniteField::new(q).unwrap(), &budget).map_err(|e| e.to_string())?;
        let mut search: Vec<Vec<Vec<u8>>> = enumerate_stable_submodules(&t)
            .modules
            .iter()
            .map(|m| m.basis.rows().map(<[u8]>::to_vec).collect())
            .collect();
        search.sort();
        let naive = naive_submodules(&t).map_err(|e| e.to_string())?;
        ensure(search == naive, || {
            format!("{s} q={q}: search {} vs naive {}", search.len(), naive.len())
        })?;
    }
    let s = semigroup_from_generators(&[2, 3]).unwrap();
    let f = FiniteField::new(2).unwrap();
    let search = count_points(&s, &f, &budget).map_err(|e| e.to_string())?;
    let lattices = springer_lattices(&f, 2, 3, 2).map_err(|e| e.to_string())?.len() as u64;
    ensure(search == lattices && lattices == 3, || {
        format!("<2,3> q=2: search {search}, lattices {lattices}")
    })?;
    Ok(format!(
        "search = naive on 4 cases; <2,3> q=2: {lattices} lattices"
    ))
}

fn criterion_6() -> Outcome {
    let budget = Budget::default();
    let cases: [(&[i64], &[u32], usize); 3] = [
        (&[2, 3], &[2, 3, 5], 2),
        (&[2, 5], &[2, 3, 5], 3),
        (&[3, 4], &[2, 3, 5, 7], 5),
    ];
    for (gens, qs, want) in cases {
        let s = semigroup_from_generators(gens).unwrap();
        let n = enumerate_semimodules(&s, &budget)
            .map_err(|e| e.to_string())?
            .len();
        ensure(n == want, || format!("{s}: {n} semimodules, want {want}"))?;
        let sig = signature(gens, qs)?;
        let p1 = branchforge_core::lattice::evaluate(&sig.polynomial, 1);
        ensure(p1 == rat(n as i64), || {
            format!("{s}: P(1) = {p1}, semimodules {n}")
        })?;
    }
    Ok("semimodule counts 2, 3, 5 equal P(1)".into())
}

fn criterion_7() -> Outcome {
    let n = std::thread::available_parallelism().map_or(4, |n| n.get()).max(2);
    let mut outputs = Vec::new();
    for threads in [1, n] {
        let mut config = RunConfig::new(Command::Verify);
        config.threads = Some(threads);
        let report = run(&config).map_err(|e| e.to_string())?;
        ensure(report.passed(), || {
            format!("verify failed on {threads} thread(s): {:?}", report.failures())
        })?;
        outputs.push(report.deterministic_json());
    }
    ensure(outputs[0] == outputs[1], || {
        format!("verify JSON differs between 1 and {n} threads")
    })?;
    Ok(format!(
        "verify JSON identical on 1 and {n} threads ({} bytes)",
        outputs[0].len()
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("semigroup invariants", criterion_1),
        ("T1 dimension and weights", criterion_2),
        ("curve identities", criterion_3),
        ("point-count purity signature", criterion_4),
        ("dual-oracle equivalence", criterion_5),
        ("semimodule counts", criterion_6),
        ("determinism", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} [{name}]: PASS  {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL  {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
