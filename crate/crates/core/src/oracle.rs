//! Exhaustive ground truth for small games: every one of the `2^n - 2`
//! proper nonempty coalitions is written out explicitly.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::Rng;

use tcmg_lp::{solve, LinearProgram, Relation};

use crate::error::{Result, TcmgError};
use crate::game::{Imputation, TcmGame};
use crate::graph::Coalition;
use crate::matching::{enumerate_matchings_of_size, maximum_matching, Matching};
use crate::solvers::{
    run_family, CoalitionRows, LeastCoreResult, LeastCoreSource, NucleolusResult, NucleolusSource,
    Reduced, WinningSetRows,
};
use crate::{Rational, BRUTE_FORCE_MAX_N};

/// Default vertex cap for the exhaustive paths.
pub const DEFAULT_ORACLE_CAP: usize = 12;

fn check_cap(game: &TcmGame, cap: usize) -> Result<()> {
    let cap = cap.min(BRUTE_FORCE_MAX_N);
    if game.player_count() > cap {
        return Err(TcmgError::CapExceeded {
            what: format!("{} players", game.player_count()),
            cap,
        });
    }
    Ok(())
}

fn proper_coalitions(n: usize) -> impl Iterator<Item = Coalition> {
    (1u64..(1u64 << n) - 1).map(Coalition::from_mask)
}

fn value(game: &TcmGame, s: &Coalition) -> Rational {
    Rational::from_integer(game.value(s).into())
}

/// Least-core by the full LP: maximize `eps` with `x(S) >= v(S) + eps` for
/// every proper coalition. `eps` is bounded by 0, the range over which the
/// `eps`-core is defined; this only binds when `V` is the sole winning
/// coalition.
pub fn brute_force_least_core(game: &TcmGame, cap: usize) -> Result<LeastCoreResult> {
    check_cap(game, cap)?;
    let n = game.player_count();
    let mut lp = LinearProgram::new(n + 1);
    let mut objective = vec![Rational::zero(); n + 1];
    objective[n] = Rational::one();
    lp.set_objective(objective)?;
    lp.set_lower(n, None)?;
    lp.set_upper(n, Some(Rational::zero()))?;
    let mut ones = vec![Rational::one(); n + 1];
    ones[n] = Rational::zero();
    lp.add(ones, Relation::Eq, Rational::one(), "imputation")?;
    for s in proper_coalitions(n) {
        let mut row = vec![Rational::zero(); n + 1];
        for i in s.iter() {
            row[i] = Rational::one();
        }
        row[n] = -Rational::one();
        let label = format!("S{}", s.mask().unwrap());
        lp.add(row, Relation::Ge, value(game, &s), label)?;
    }
    let opt = solve(&lp)?.into_optimum()?;
    let point = Imputation::new(opt.point[..n].to_vec())?;
    let eps = opt.value;
    let g = game.graph();
    let certificate = proper_coalitions(n)
        .filter(|s| s.len() == 2 * game.threshold() && game.is_winning(s))
        .filter(|s| point.sum_over(s) == Rational::one() + &eps)
        .map(|s| {
            let (sub, map) = g.induced_subgraph(&s).expect("coalition of the game");
            maximum_matching(&sub).mapped(&map)
        })
        .collect();
    Ok(LeastCoreResult {
        epsilon: eps,
        point,
        method: LeastCoreSource::BruteForce,
        certificate,
    })
}

/// `max eps` subject to `x(M) >= 1 + eps` over every size-`T` matching,
/// listed explicitly, with `x >= 0` and `x(V) = 1`.
pub fn matching_restricted_least_core(game: &TcmGame, cap: usize) -> Result<Rational> {
    let n = game.player_count();
    let listed = enumerate_matchings_of_size(game.graph(), game.threshold(), Some(cap));
    if listed.truncated {
        return Err(TcmgError::CapExceeded {
            what: format!("number of matchings of size {}", game.threshold()),
            cap,
        });
    }
    let mut lp = LinearProgram::new(n + 1);
    let mut objective = vec![Rational::zero(); n + 1];
    objective[n] = Rational::one();
    lp.set_objective(objective)?;
    lp.set_lower(n, None)?;
    let mut ones = vec![Rational::one(); n + 1];
    ones[n] = Rational::zero();
    lp.add(ones, Relation::Eq, Rational::one(), "imputation")?;
    let sets: BTreeSet<Coalition> = listed.matchings.iter().map(Matching::covered).collect();
    for (k, s) in sets.iter().enumerate() {
        let mut row = vec![Rational::zero(); n + 1];
        for i in s.iter() {
            row[i] = Rational::one();
        }
        row[n] = -Rational::one();
        lp.add(row, Relation::Ge, Rational::one(), format!("M{k}"))?;
    }
    Ok(solve(&lp)?.into_optimum()?.value)
}

/// Nucleolus by sequential LPs over all proper coalitions, each round
/// probing every row tight at the returned vertex.
pub fn brute_force_nucleolus(game: &TcmGame, cap: usize) -> Result<(NucleolusResult, ExcessProfile)> {
    check_cap(game, cap)?;
    let n = game.player_count();
    let rows = proper_coalitions(n).map(|s| {
        let v = value(game, &s);
        (s, v)
    });
    let family = CoalitionRows::new(n, rows.collect());
    let mut result = run_family(&Reduced::identity(game), &family, NucleolusSource::BruteForce, game.threshold())?;
    result.first_round_epsilon = Some(result.rounds[0].epsilon.clone());
    let profile = ExcessProfile::compute(game, &result.point)?;
    Ok((result, profile))
}

/// Sequential LPs restricted to singletons and vertex sets of size-`T`
/// matchings, the grand coalition entering only through `x(V) = 1`.
pub fn essential_family_nucleolus(game: &TcmGame, cap: usize) -> Result<NucleolusResult> {
    let family = game.essential_coalitions(cap);
    if family.truncated {
        return Err(TcmgError::CapExceeded {
            what: format!("number of matchings of size {}", game.threshold()),
            cap,
        });
    }
    let n = game.player_count();
    let full = Coalition::full(n);
    let sets: BTreeSet<Coalition> = family
        .coalitions
        .into_iter()
        .filter(|s| s.len() > 1 && *s != full)
        .collect();
    let rows = WinningSetRows::new(n, sets.into_iter().collect(), false);
    let mut result = run_family(&Reduced::identity(game), &rows, NucleolusSource::Essential, game.threshold())?;
    result.first_round_epsilon = Some(result.rounds[0].epsilon.clone());
    Ok(result)
}

/// Excesses of all proper nonempty coalitions, ascending, ties broken by
/// the coalition bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcessProfile {
    pub entries: Vec<(Coalition, Rational)>,
}

impl ExcessProfile {
    pub fn compute(game: &TcmGame, x: &Imputation) -> Result<ExcessProfile> {
        check_cap(game, BRUTE_FORCE_MAX_N)?;
        let n = game.player_count();
        if x.len() != n {
            return Err(crate::ImputationError::Length {
                expected: n,
                found: x.len(),
            }
            .into());
        }
        let mut entries: Vec<(u64, Coalition, Rational)> = proper_coalitions(n)
            .map(|s| {
                let e = game.excess(x, &s);
                (s.mask().unwrap(), s, e)
            })
            .collect();
        entries.sort_by(|a, b| a.2.cmp(&b.2).then(a.0.cmp(&b.0)));
        Ok(ExcessProfile {
            entries: entries.into_iter().map(|(_, s, e)| (s, e)).collect(),
        })
    }

    pub fn excesses(&self) -> impl Iterator<Item = &Rational> {
        self.entries.iter().map(|(_, e)| e)
    }
}

/// Lexicographic order of the sorted excess sequences; `Greater` means
/// `a` is preferred by the nucleolus.
pub fn lex_compare(a: &ExcessProfile, b: &ExcessProfile) -> Result<Ordering> {
    if a.entries.len() != b.entries.len() {
        return Err(TcmgError::SelfCheck(format!(
            "excess profiles of lengths {} and {}",
            a.entries.len(),
            b.entries.len()
        )));
    }
    Ok(a.excesses().cmp(b.excesses()))
}

/// Normalized vector of small random integers; at least one entry is
/// positive.
pub fn random_imputation<R: Rng>(n: usize, rng: &mut R) -> Imputation {
    loop {
        let raw: Vec<i64> = (0..n)
            .map(|_| if rng.gen_bool(0.2) { 0 } else { rng.gen_range(1..=20) })
            .collect();
        let total: i64 = raw.iter().sum();
        if total == 0 {
            continue;
        }
        let payoffs = raw.into_iter().map(|v| Rational::new(v.into(), total.into())).collect();
        return Imputation::new(payoffs).expect("normalized nonnegative vector");
    }
}
