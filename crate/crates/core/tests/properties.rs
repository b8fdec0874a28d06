use branchforge_core::deformation::jacobian_columns;
use branchforge_core::semigroup::puiseux_from_semigroup;
use branchforge_core::*;
use proptest::prelude::*;

/// Plane-branch semigroups with `g ≤ 3`, built along the gcd ladder:
/// `β̄_1 = (n_1 + k_1)·e_1` and `β̄_{i+1} = n_i·β̄_i + k_{i+1}·e_{i+1}` with
/// `gcd(k_i, n_i) = 1`.
fn plane_branch() -> impl Strategy<Value = Vec<i64>> {
    (1usize..=3)
        .prop_flat_map(|g| {
            (
                prop::collection::vec(2i64..=3, g),
                prop::collection::vec(1i64..=4, g),
            )
        })
        .prop_filter_map("ladder step not coprime", |(ns, ks)| {
            let g = ns.len();
            let mut e = vec![1i64; g + 1];
            for i in (0..g).rev() {
                e[i] = e[i + 1] * ns[i];
            }
            let gcd = |mut a: i64, mut b: i64| {
                while b != 0 {
                    (a, b) = (b, a % b);
                }
                a
            };
            if ks.iter().zip(&ns).any(|(&k, &n)| gcd(k, n) != 1) {
                return None;
            }
            let mut gens = vec![e[0]];
            let first = (ns[0] + ks[0]) * e[1];
            gens.push(first);
            for i in 1..g {
                gens.push(ns[i - 1] * gens[i] + ks[i] * e[i + 1]);
            }
            Some(gens)
        })
        .prop_filter("keep the conductor small", |gens| {
            semigroup_from_generators(gens).is_ok_and(|s| s.conductor() <= 100)
        })
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 32,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn generated_semigroups_are_plane_branches(gens in plane_branch()) {
        let s = semigroup_from_generators(&gens).unwrap();
        prop_assert_eq!(s.generators().iter().map(|&b| b as i64).collect::<Vec<_>>(), gens.clone());
        let report = validate_plane_branch(&s);
        prop_assert!(report.all_passed(), "{:?}", report);
    }

    #[test]
    fn additive_closure_and_symmetry(gens in plane_branch()) {
        let s = semigroup_from_generators(&gens).unwrap();
        let c = s.conductor() as i64;
        let members: Vec<i64> = (0..=c + 10).filter(|&a| s.contains(a)).collect();
        for &a in &members {
            for &b in &members {
                prop_assert!(s.contains(a + b));
            }
        }
        for &gap in s.gaps() {
            prop_assert!(!s.contains(gap as i64));
        }
        prop_assert!((c..c + 50).all(|a| s.contains(a)));
        prop_assert_eq!(c as usize, 2 * s.delta());
        for a in 0..c {
            prop_assert_ne!(s.contains(a), s.contains(c - 1 - a));
        }
    }

    #[test]
    fn ladder_and_representations(gens in plane_branch()) {
        let s = semigroup_from_generators(&gens).unwrap();
        let ladder = gcd_ladder(&s).unwrap();
        let g = s.genus_g();
        prop_assert_eq!(ladder.e[g], 1);
        for i in 1..=g {
            let b = s.generators()[i] as u64;
            let e_prev = ladder.e[i - 1] as u64;
            prop_assert_eq!(ladder.e[i] as u64, num::integer::gcd(b, e_prev));
            prop_assert_eq!(e_prev, ladder.n(i) as u64 * ladder.e[i] as u64);
            let rep = represent(&s, i).unwrap();
            prop_assert_eq!(rep.coefficients.len(), i);
            prop_assert_eq!(rep.evaluate(s.generators()), ladder.n(i) as u64 * b);
        }
    }

    #[test]
    fn puiseux_round_trip(gens in plane_branch()) {
        let s = semigroup_from_generators(&gens).unwrap();
        let p = puiseux_from_semigroup(&s).unwrap();
        prop_assert_eq!(semigroup_from_puiseux(&p).unwrap(), s);
    }

    #[test]
    fn curve_and_closure(gens in plane_branch()) {
        let s = semigroup_from_generators(&gens).unwrap();
        let eqs = curve_equations(&s).unwrap();
        let polys: Vec<_> = eqs.iter().map(|e| e.polynomial()).collect();
        prop_assert!(check_parametrization(&polys, &s));
        let model = compactify(&eqs, &s);
        prop_assert!(model.is_homogeneous());
        prop_assert_eq!(model.dehomogenize(), polys);
        let bound = model.targets.iter().copied().max().unwrap() as u32;
        prop_assert!(normalization_check(&model, &s, bound));
        let chart = infinity_chart(&model).unwrap();
        let mut point = vec![1i64; gens.len()];
        point.push(0);
        prop_assert_eq!(chart.points, vec![point]);
        prop_assert!(chart.smooth);
    }

    #[test]
    fn tangent_space(gens in plane_branch()) {
        let s = semigroup_from_generators(&gens).unwrap();
        let (eqs, basis, fam) = deform(&s).unwrap();
        prop_assert_eq!(basis.dimension(), 2 * s.delta());
        prop_assert!(!basis.weights().contains(&0));
        prop_assert!(jacobian_columns(&eqs, &s).iter().all(GradedColumn::is_homogeneous));
        let w = &fam.weights;
        for (f, &t) in fam.equations.iter().zip(&fam.targets) {
            prop_assert!(f.is_homogeneous(w, t));
        }
        prop_assert_eq!(fam.tau_minus.len() + fam.tau_plus.len(), basis.dimension());
    }
}

#[test]
fn generator_covers_every_genus() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;
    let mut runner = TestRunner::deterministic();
    let strategy = plane_branch();
    let mut genera = std::collections::BTreeSet::new();
    let mut distinct = std::collections::BTreeSet::new();
    for _ in 0..400 {
        let gens = strategy.new_tree(&mut runner).unwrap().current();
        genera.insert(gens.len() - 1);
        distinct.insert(gens);
    }
    assert_eq!(genera, [1, 2, 3].into_iter().collect());
    assert!(
        distinct.len() >= 20,
        "only {} distinct semigroups",
        distinct.len()
    );
}
