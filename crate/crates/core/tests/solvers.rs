mod common;

use num_traits::One;

use common::{complete, complete_bipartite, cycle, double_star, game, graph, path, q, qs};
use tcmg_core::oracle::{brute_force_least_core, brute_force_nucleolus, DEFAULT_ORACLE_CAP};
use tcmg_core::{
    bipartite_least_core, ecg_least_core, least_core, mig_equilibrium, nucleolus, uniform_convex_combination,
    verify_least_core_membership, Imputation, LeastCoreMethod, LeastCoreSource, NucleolusMethod, NucleolusSource,
    Rational, TcmgError,
};

fn point(v: &[(i64, i64)]) -> Imputation {
    Imputation::new(qs(v)).unwrap()
}

fn assert_verified(g: &tcmg_core::TcmGame, x: &Imputation, eps: &Rational) {
    let verdict = verify_least_core_membership(g, x, eps).unwrap();
    assert!(verdict.accepted, "point {x:?} rejected at {eps}");
    assert_eq!(&verdict.min_cost, &(Rational::one() + eps));
}

#[test]
fn least_core_examples() {
    let cases = [
        (game(complete(3), 1), q(-1, 3), Some(Imputation::uniform(3))),
        (game(cycle(6), 2), q(-1, 3), Some(Imputation::uniform(6))),
        (game(complete_bipartite(2, 3), 1), q(-1, 2), Some(point(&[(1, 2), (1, 2), (0, 1), (0, 1), (0, 1)]))),
        (game(path(3), 1), q(0, 1), Some(point(&[(0, 1), (1, 1), (0, 1)]))),
    ];
    for (g, eps, x) in cases {
        for method in [LeastCoreMethod::Auto, LeastCoreMethod::ConstraintGeneration, LeastCoreMethod::BruteForce] {
            let r = least_core(&g, method).unwrap();
            assert_eq!(r.epsilon, eps, "{method:?}");
            assert_verified(&g, &r.point, &eps);
            if method == LeastCoreMethod::Auto {
                assert_eq!(Some(&r.point), x.as_ref());
            }
        }
    }
}

#[test]
fn auto_dispatch_sources() {
    let src = |g, t| least_core(&game(g, t), LeastCoreMethod::Auto).unwrap().method;
    assert_eq!(src(path(3), 1), LeastCoreSource::VetoCore);
    assert_eq!(src(complete(3), 1), LeastCoreSource::ClosedFormEcg);
    assert_eq!(src(cycle(6), 2), LeastCoreSource::ClosedFormPerfect);
    assert_eq!(src(graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 2), (4, 1)]), 2), LeastCoreSource::ConstraintGeneration);
    let bip = graph(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 4)]);
    assert_eq!(src(bip, 2), LeastCoreSource::ClosedFormBipartite);
}

#[test]
fn ecg_examples() {
    let r = ecg_least_core(&game(complete(3), 1)).unwrap();
    assert_eq!((r.epsilon, r.point), (q(-1, 3), Imputation::uniform(3)));

    let ds = game(double_star(), 1);
    let r = ecg_least_core(&ds).unwrap();
    assert_eq!(r.epsilon, q(-1, 2));
    assert_eq!(r.point, point(&[(1, 2), (1, 2), (0, 1), (0, 1), (0, 1), (0, 1)]));
    assert_eq!(brute_force_least_core(&ds, DEFAULT_ORACLE_CAP).unwrap().epsilon, q(-1, 2));

    let r = ecg_least_core(&game(cycle(6), 1)).unwrap();
    assert_eq!((r.epsilon, r.point), (q(-2, 3), Imputation::uniform(6)));

    assert!(matches!(ecg_least_core(&game(cycle(6), 2)), Err(TcmgError::ThresholdNotOne(2))));
}

#[test]
fn ecg_isolated_vertices_get_nothing() {
    let g = game(graph(5, &[(0, 1), (1, 2), (0, 2)]), 1);
    let r = least_core(&g, LeastCoreMethod::Auto).unwrap();
    assert_eq!(r.epsilon, q(-1, 3));
    assert_eq!(r.point, point(&[(1, 3), (1, 3), (1, 3), (0, 1), (0, 1)]));
    assert_eq!(brute_force_least_core(&g, DEFAULT_ORACLE_CAP).unwrap().epsilon, q(-1, 3));
}

#[test]
fn bipartite_examples() {
    let r = bipartite_least_core(&game(complete_bipartite(2, 3), 1)).unwrap();
    assert_eq!(r.epsilon, q(-1, 2));
    assert_eq!(r.point, point(&[(1, 2), (1, 2), (0, 1), (0, 1), (0, 1)]));

    let r = bipartite_least_core(&game(graph(4, &[(0, 1), (2, 3)]), 1)).unwrap();
    assert_eq!((r.epsilon, r.point), (q(-1, 2), Imputation::uniform(4)));

    let p5 = game(path(5), 1);
    let r = bipartite_least_core(&p5).unwrap();
    assert_eq!(r.epsilon, q(-1, 2));
    assert_eq!(brute_force_least_core(&p5, DEFAULT_ORACLE_CAP).unwrap().epsilon, q(-1, 2));
    assert_verified(&p5, &r.point, &r.epsilon);

    assert!(matches!(bipartite_least_core(&game(complete(3), 1)), Err(TcmgError::NotBipartite)));
}

#[test]
fn convex_combination_examples() {
    let w = uniform_convex_combination(&game(cycle(4), 1), 1000).unwrap().unwrap();
    let total: Rational = w.weights.iter().map(|(_, y)| y.clone()).sum();
    assert!(total.is_one());
    for i in 0..4 {
        let cover: Rational = w.weights.iter().filter(|(m, _)| m.covered().contains(i)).map(|(_, y)| y.clone()).sum();
        assert_eq!(cover, q(1, 2));
    }
    assert!(!w.forced_tight.is_empty());

    assert!(uniform_convex_combination(&game(path(3), 1), 1000).unwrap().is_none());

    for (g, t) in [(cycle(6), 2), (complete(4), 2), (cycle(8), 3)] {
        let gm = game(g, t);
        assert!(uniform_convex_combination(&gm, 1000).unwrap().is_some());
        let n = gm.player_count() as i64;
        let eps = q(2 * t as i64, n) - Rational::one();
        assert_eq!(least_core(&gm, LeastCoreMethod::ConstraintGeneration).unwrap().epsilon, eps);
        assert_verified(&gm, &Imputation::uniform(n as usize), &eps);
    }
}

#[test]
fn nucleolus_examples() {
    let p3 = nucleolus(&game(path(3), 1), NucleolusMethod::Auto).unwrap();
    assert_eq!(p3.point, point(&[(0, 1), (1, 1), (0, 1)]));
    assert_eq!(p3.method, NucleolusSource::VetoCore);

    let c6 = nucleolus(&game(cycle(6), 2), NucleolusMethod::Auto).unwrap();
    assert_eq!(c6.point, Imputation::uniform(6));
    assert_eq!(c6.method, NucleolusSource::SpecializedPerfect);
    assert_eq!(c6.first_round_epsilon, Some(q(-1, 3)));

    let k23 = game(complete_bipartite(2, 3), 1);
    let expected = point(&[(1, 2), (1, 2), (0, 1), (0, 1), (0, 1)]);
    for method in [NucleolusMethod::Auto, NucleolusMethod::Essential, NucleolusMethod::BruteForce] {
        assert_eq!(nucleolus(&k23, method).unwrap().point, expected, "{method:?}");
    }

    let c6_1 = nucleolus(&game(cycle(6), 1), NucleolusMethod::Auto).unwrap();
    assert_eq!(c6_1.point, c6.point);
}

#[test]
fn nucleolus_rounds_are_traced() {
    let r = nucleolus(&game(complete_bipartite(2, 3), 1), NucleolusMethod::Specialized).unwrap();
    assert!(!r.rounds.is_empty() && r.rounds.len() <= 5);
    assert!(r.rounds.windows(2).all(|w| w[0].epsilon < w[1].epsilon));
    assert_eq!(r.rounds[0].epsilon, q(-1, 2));
    assert!(r.rounds[0].fixed_edges.len() + r.rounds[0].fixed_vertices.len() > 0);

    let b = brute_force_nucleolus(&game(complete(4), 1), DEFAULT_ORACLE_CAP).unwrap().0;
    assert!(b.rounds.iter().all(|r| r.fixed_edges.is_empty() && !r.fixed_coalitions.is_empty()));
}

#[test]
fn specialized_requires_a_supported_class() {
    let g = game(graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 2), (4, 1)]), 2);
    assert!(matches!(nucleolus(&g, NucleolusMethod::Specialized), Err(TcmgError::NoClosedForm(_))));
    let auto = nucleolus(&g, NucleolusMethod::Auto).unwrap();
    assert_eq!(auto.method, NucleolusSource::Essential);
    assert_eq!(auto.point, brute_force_nucleolus(&g, DEFAULT_ORACLE_CAP).unwrap().0.point);
}

#[test]
fn verify_examples() {
    let k3 = game(complete(3), 1);
    let v = verify_least_core_membership(&k3, &Imputation::uniform(3), &q(-1, 3)).unwrap();
    assert!(v.accepted && v.violating.is_none());

    let v = verify_least_core_membership(&k3, &point(&[(1, 1), (0, 1), (0, 1)]), &q(-1, 3)).unwrap();
    assert!(!v.accepted);
    assert_eq!(v.violating.unwrap().edges(), &[(1, 2)]);
    assert_eq!(v.min_cost, q(0, 1));

    let c6 = game(cycle(6), 2);
    assert!(verify_least_core_membership(&c6, &Imputation::uniform(6), &q(-1, 3)).unwrap().accepted);
}

#[test]
fn mig_examples() {
    let k3 = mig_equilibrium(&game(complete(3), 1)).unwrap();
    assert_eq!(k3.alpha, q(2, 3));
    assert_eq!(k3.interceptor, Imputation::uniform(3));
    let y = k3.matcher.unwrap();
    assert_eq!(y.len(), 3);
    assert!(y.iter().all(|(_, w)| *w == q(1, 3)));
    assert_eq!(k3.delta, Some(q(2, 3)));

    let p3 = mig_equilibrium(&game(path(3), 1)).unwrap();
    assert_eq!(p3.alpha, q(1, 1));
    assert_eq!(p3.interceptor, point(&[(0, 1), (1, 1), (0, 1)]));

    let c6 = mig_equilibrium(&game(cycle(6), 2)).unwrap();
    assert_eq!(c6.alpha, q(2, 3));
    assert_eq!(c6.delta, Some(q(2, 3)));
}
