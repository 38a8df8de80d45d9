mod common;

use common::{complete, complete_bipartite, cycle, game, graph, path, q, qs, random_graphs};
use tcmg_core::{maximum_matching, Coalition, Imputation, ImputationError, TcmGame, TcmgError};

#[test]
fn construction_validates_threshold() {
    assert!(matches!(TcmGame::new(complete(3), 2), Err(TcmgError::ThresholdOutOfRange { t: 2, max: 1 })));
    assert!(matches!(TcmGame::new(complete(3), 0), Err(TcmgError::ThresholdOutOfRange { t: 0, .. })));
    assert_eq!(game(cycle(6), 3).max_matching_size(), 3);
}

#[test]
fn value_examples() {
    let k23 = game(complete_bipartite(2, 3), 1);
    assert_eq!(k23.value(&Coalition::from_iter([0, 2])), 1);
    for i in 0..5 {
        assert_eq!(k23.value(&Coalition::from_iter([i])), 0);
    }
    assert_eq!(k23.value(&Coalition::full(5)), 1);
    assert_eq!(k23.value(&Coalition::new()), 0);
}

#[test]
fn excess_examples() {
    let k3 = game(complete(3), 1);
    let x = Imputation::uniform(3);
    assert_eq!(k3.excess(&x, &Coalition::from_iter([0, 1])), q(-1, 3));
    assert_eq!(k3.excess(&x, &Coalition::new()), q(0, 1));
    assert_eq!(k3.excess(&x, &Coalition::full(3)), q(0, 1));
}

#[test]
fn veto_players_examples() {
    assert_eq!(game(path(3), 1).veto_players().members(), vec![1]);
    assert!(game(complete(3), 1).veto_players().is_empty());
    assert_eq!(game(cycle(6), 3).veto_players().members(), (0..6).collect::<Vec<_>>());
}

#[test]
fn core_examples() {
    let p3 = game(path(3), 1).core();
    assert!(p3.nonempty);
    assert_eq!(p3.core_nucleolus.as_ref().unwrap().payoffs(), qs(&[(0, 1), (1, 1), (0, 1)]).as_slice());
    assert!(p3.contains(&Imputation::new(qs(&[(0, 1), (1, 1), (0, 1)])).unwrap()));
    assert!(!p3.contains(&Imputation::uniform(3)));

    let c6 = game(cycle(6), 3).core();
    assert!(c6.nonempty);
    assert_eq!(c6.core_nucleolus.unwrap(), Imputation::uniform(6));

    let k3 = game(complete(3), 1).core();
    assert!(!k3.nonempty && k3.core_nucleolus.is_none() && k3.veto_players.is_empty());
}

#[test]
fn essential_coalition_counts() {
    let count = |g, t| game(g, t).essential_coalitions(1000).coalitions.len();
    assert_eq!(count(path(3), 1), 3 + 2 + 1);
    assert_eq!(count(complete(4), 2), 4 + 3 + 1);
    assert_eq!(count(complete(3), 1), 3 + 3 + 1);
    let fam = game(complete(4), 2).essential_coalitions(1000);
    assert!(!fam.truncated);
    assert_eq!(fam.coalitions.iter().filter(|s| s.len() == 4).count(), 3 + 1);
    assert!(game(complete(6), 2).essential_coalitions(3).truncated);
}

#[test]
fn simple_game_axioms_and_monotonicity() {
    for n in 2..=8 {
        for g in random_graphs(n, 10, 400 + n as u64) {
            let v_star = maximum_matching(&g).len();
            for t in 1..=v_star {
                let gm = game(g.clone(), t);
                let full = (1u64 << n) - 1;
                assert_eq!(gm.value(&Coalition::new()), 0);
                assert_eq!(gm.value(&Coalition::full(n)), 1);
                let values: Vec<u8> = (0..=full).map(|m| gm.value(&Coalition::from_mask(m))).collect();
                for mask in 0..=full {
                    for i in 0..n {
                        if mask & (1 << i) == 0 {
                            assert!(values[mask as usize] <= values[(mask | 1 << i) as usize]);
                        }
                    }
                }
                let common = (0..=full)
                    .filter(|&m| values[m as usize] == 1)
                    .fold(full, |acc, m| acc & m);
                assert_eq!(gm.veto_players(), Coalition::from_mask(common));
                assert_eq!(gm.core().nonempty, common != 0);
            }
        }
    }
}

#[test]
fn imputation_validation() {
    assert!(matches!(Imputation::new(qs(&[(1, 2), (1, 3)])), Err(ImputationError::Sum(_))));
    assert!(matches!(Imputation::new(qs(&[(3, 2), (-1, 2)])), Err(ImputationError::Negative(1))));
    assert!(matches!(
        Imputation::for_players(3, qs(&[(1, 1)])),
        Err(ImputationError::Length { expected: 3, found: 1 })
    ));
    let x = Imputation::new(qs(&[(1, 2), (1, 4), (1, 4)])).unwrap();
    assert_eq!(x.sum_over(&Coalition::from_iter([1, 2])), q(1, 2));
    assert_eq!(serde_json::to_string(&x).unwrap(), r#"["1/2","1/4","1/4"]"#);
}

#[test]
fn with_threshold_keeps_graph() {
    let g = game(graph(4, &[(0, 1), (2, 3)]), 1);
    let h = g.with_threshold(2).unwrap();
    assert_eq!(h.graph(), g.graph());
    assert_eq!(h.threshold(), 2);
    assert!(g.with_threshold(3).is_err());
}
