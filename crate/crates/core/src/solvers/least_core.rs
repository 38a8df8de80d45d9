use std::collections::VecDeque;

use num_traits::{One, Zero};

use tcmg_lp::{solve_with_separation, Constraint, LinearProgram, Relation};

use super::{Reduced, SolverConfig};
use crate::error::{Result, TcmgError};
use crate::game::{Imputation, TcmGame};
use crate::graph::Coalition;
use crate::matching::{gallai_edmonds, maximum_matching, min_cost_matching_of_size, Matching};
use crate::oracle;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeastCoreMethod {
    Auto,
    ConstraintGeneration,
    ClosedForm,
    BruteForce,
}

/// Which computation produced a least-core result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeastCoreSource {
    /// Core nonempty: `eps* = 0`, equal split over veto players.
    VetoCore,
    ClosedFormEcg,
    ClosedFormPerfect,
    ClosedFormBipartite,
    ConstraintGeneration,
    BruteForce,
}

impl LeastCoreSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            LeastCoreSource::VetoCore => "veto_core",
            LeastCoreSource::ClosedFormEcg => "closed_form_ecg",
            LeastCoreSource::ClosedFormPerfect => "closed_form_perfect",
            LeastCoreSource::ClosedFormBipartite => "closed_form_bipartite",
            LeastCoreSource::ConstraintGeneration => "constraint_generation",
            LeastCoreSource::BruteForce => "brute_force",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeastCoreResult {
    pub epsilon: Rational,
    pub point: Imputation,
    pub method: LeastCoreSource,
    /// Minimal winning coalitions, as matchings, with `x(M) = 1 + eps`.
    pub certificate: Vec<Matching>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub accepted: bool,
    /// `min x(M)` over matchings of size `T`.
    pub min_cost: Rational,
    pub minimizer: Matching,
    /// The minimizer, when it violates `x(M) >= 1 + eps`.
    pub violating: Option<Matching>,
}

/// `x` is in the `eps`-core iff the cheapest size-`T` matching under
/// vertex costs `x` costs at least `1 + eps`.
pub fn verify_least_core_membership(game: &TcmGame, x: &Imputation, epsilon: &Rational) -> Result<MembershipVerdict> {
    let n = game.player_count();
    if x.len() != n {
        return Err(crate::ImputationError::Length {
            expected: n,
            found: x.len(),
        }
        .into());
    }
    let (minimizer, min_cost) = min_cost_matching_of_size(game.graph(), x.payoffs(), game.threshold())?;
    let accepted = min_cost >= Rational::one() + epsilon;
    Ok(MembershipVerdict {
        accepted,
        violating: (!accepted).then(|| minimizer.clone()),
        min_cost,
        minimizer,
    })
}

pub fn least_core(game: &TcmGame, method: LeastCoreMethod) -> Result<LeastCoreResult> {
    least_core_with(game, method, &SolverConfig::default())
}

/// `auto` tries, in order: the veto-player core, the `T = 1` closed form,
/// the perfect-matching closed form, the bipartite closed form, then
/// constraint generation with the min-cost matching oracle.
pub fn least_core_with(game: &TcmGame, method: LeastCoreMethod, config: &SolverConfig) -> Result<LeastCoreResult> {
    if method == LeastCoreMethod::BruteForce {
        return oracle::brute_force_least_core(game, config.oracle_cap);
    }
    let reduced = Reduced::new(game)?;
    let inner = match method {
        LeastCoreMethod::ConstraintGeneration => constraint_generation(&reduced.game)?.result,
        _ => match closed_form(&reduced.game)? {
            Some(r) => r,
            None if method == LeastCoreMethod::Auto => constraint_generation(&reduced.game)?.result,
            None => {
                return Err(TcmgError::NoClosedForm(
                    "core empty, T > 1, no perfect matching, and not bipartite".into(),
                ))
            }
        },
    };
    finish(game, &reduced, inner)
}

fn closed_form(game: &TcmGame) -> Result<Option<LeastCoreResult>> {
    if let Some(r) = veto_core(game)? {
        return Ok(Some(r));
    }
    let g = game.graph();
    let n = g.vertex_count();
    if game.threshold() == 1 {
        return ecg_inner(game).map(Some);
    }
    if 2 * game.max_matching_size() == n {
        let eps = Rational::new((2 * game.threshold() as i64).into(), (n as i64).into()) - Rational::one();
        return with_certificate(game, eps, Imputation::uniform(n), LeastCoreSource::ClosedFormPerfect).map(Some);
    }
    if g.is_bipartite() {
        return bipartite_inner(game).map(Some);
    }
    Ok(None)
}

fn veto_core(game: &TcmGame) -> Result<Option<LeastCoreResult>> {
    match game.core().core_nucleolus {
        Some(x) => with_certificate(game, Rational::zero(), x, LeastCoreSource::VetoCore).map(Some),
        None => Ok(None),
    }
}

fn with_certificate(game: &TcmGame, epsilon: Rational, point: Imputation, method: LeastCoreSource) -> Result<LeastCoreResult> {
    let verdict = verify_least_core_membership(game, &point, &epsilon)?;
    Ok(LeastCoreResult {
        epsilon,
        point,
        method,
        certificate: vec![verdict.minimizer],
    })
}

/// Lifts a result on the reduced game back to all players and checks it
/// with the separation oracle.
fn finish(game: &TcmGame, reduced: &Reduced, inner: LeastCoreResult) -> Result<LeastCoreResult> {
    let point = Imputation::new(reduced.lift_point(inner.point.payoffs()))?;
    let certificate: Vec<Matching> = inner.certificate.iter().map(|m| reduced.lift_matching(m)).collect();
    let verdict = verify_least_core_membership(game, &point, &inner.epsilon)?;
    if !verdict.accepted || verdict.min_cost != Rational::one() + &inner.epsilon {
        return Err(TcmgError::SelfCheck(format!(
            "{} point has min x(M) = {}, expected 1 + {}",
            inner.method.as_str(),
            verdict.min_cost,
            inner.epsilon
        )));
    }
    if inner.epsilon > Rational::zero() {
        return Err(TcmgError::SelfCheck("least-core value above zero".into()));
    }
    Ok(LeastCoreResult {
        epsilon: inner.epsilon,
        point,
        method: inner.method,
        certificate,
    })
}

/// Closed form for `T = 1`, from the Gallai-Edmonds decomposition.
///
/// With `D02` the singleton odd components left exposed by `M0` and
/// `n' = n - |D02|`, the value is `2/n' - 1`. Vertices reachable from `D02`
/// by `M0`-alternating paths in `G0` get `2/n'` in `A` and `0` in `D01`;
/// `D02` gets `0`; everything else gets `1/n'`.
pub fn ecg_least_core(game: &TcmGame) -> Result<LeastCoreResult> {
    if game.threshold() != 1 {
        return Err(TcmgError::ThresholdNotOne(game.threshold()));
    }
    let reduced = Reduced::new(game)?;
    let inner = match veto_core(&reduced.game)? {
        Some(r) => r,
        None => ecg_inner(&reduced.game)?,
    };
    finish(game, &reduced, inner)
}

fn ecg_inner(game: &TcmGame) -> Result<LeastCoreResult> {
    if let Some(r) = veto_core(game)? {
        return Ok(r);
    }
    let n = game.player_count();
    let ged = gallai_edmonds(game.graph());
    let n_prime = n - ged.d02.len();
    let unit = Rational::new(1.into(), (n_prime as i64).into());
    let eps = &unit * Rational::from_integer(2.into()) - Rational::one();
    if ged.d02.is_empty() {
        return with_certificate(game, eps, Imputation::uniform(n), LeastCoreSource::ClosedFormEcg);
    }
    let reach = ged.reachable_from_d02();
    let payoffs = (0..n)
        .map(|i| {
            let share = if ged.d02.contains(i) {
                0
            } else if ged.tutte_set.contains(i) {
                if reach.contains(i) {
                    2
                } else {
                    1
                }
            } else if ged.d01.contains(i) {
                if reach.contains(i) {
                    0
                } else {
                    1
                }
            } else {
                1
            };
            &unit * Rational::from_integer(share.into())
        })
        .collect();
    let point = Imputation::new(payoffs)
        .map_err(|e| TcmgError::SelfCheck(format!("T = 1 closed-form point: {e}")))?;
    with_certificate(game, eps, point, LeastCoreSource::ClosedFormEcg)
}

/// Closed form for bipartite graphs.
///
/// `M*` is a maximum matching, `L2`/`R2` the exposed vertices on each side
/// and `n' = n - |L2| - |R2|`; the value is `2T/n' - 1`. Vertices reachable
/// by `M*`-alternating paths from `L2` form `L11`/`R11`, those reachable
/// from `R2` form `L12`/`R12`, and the rest of the matched vertices
/// `L13`/`R13`. Payoffs: `2/n'` on `R11` and `L12`, `1/n'` on `L13` and
/// `R13`, zero elsewhere.
pub fn bipartite_least_core(game: &TcmGame) -> Result<LeastCoreResult> {
    let reduced = Reduced::new(game)?;
    let inner = bipartite_inner(&reduced.game)?;
    finish(game, &reduced, inner)
}

fn bipartite_inner(game: &TcmGame) -> Result<LeastCoreResult> {
    let g = game.graph();
    let n = g.vertex_count();
    let left = g.bipartition().ok_or(TcmgError::NotBipartite)?;
    let m_star = maximum_matching(g);
    let mut mate = vec![None; n];
    for &(u, v) in m_star.edges() {
        mate[u] = Some(v);
        mate[v] = Some(u);
    }
    let exposed: Coalition = (0..n).filter(|&i| mate[i].is_none()).collect();
    let l2: Coalition = exposed.iter().filter(|&i| left[i]).collect();
    let r2: Coalition = exposed.iter().filter(|&i| !left[i]).collect();

    // Alternating search: leave the start side by non-matching edges and
    // the other side by matching edges.
    let reach = |start: &Coalition, start_side: bool| -> Coalition {
        let mut seen = vec![false; n];
        let mut queue: VecDeque<usize> = start.iter().collect();
        for i in start.iter() {
            seen[i] = true;
        }
        while let Some(v) = queue.pop_front() {
            let next: Vec<usize> = if left[v] == start_side {
                g.neighbors(v).iter().copied().filter(|&w| mate[v] != Some(w)).collect()
            } else {
                mate[v].into_iter().collect()
            };
            for w in next {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        (0..n).filter(|&i| seen[i]).collect::<Coalition>().difference(start)
    };
    let from_l2 = reach(&l2, true);
    let from_r2 = reach(&r2, false);
    if !from_l2.is_disjoint(&from_r2) {
        return Err(TcmgError::SelfCheck(format!(
            "alternating reach from L2 and R2 overlaps at {:?}",
            from_l2.intersection(&from_r2)
        )));
    }

    let n_prime = n - exposed.len();
    let unit = Rational::new(1.into(), (n_prime as i64).into());
    let payoffs = (0..n)
        .map(|i| {
            let share = if exposed.contains(i) {
                0
            } else if from_l2.contains(i) {
                // R11 gets 2, L11 gets 0.
                if left[i] {
                    0
                } else {
                    2
                }
            } else if from_r2.contains(i) {
                // L12 gets 2, R12 gets 0.
                if left[i] {
                    2
                } else {
                    0
                }
            } else {
                1
            };
            &unit * Rational::from_integer(share.into())
        })
        .collect();
    let point = Imputation::new(payoffs)
        .map_err(|e| TcmgError::SelfCheck(format!("bipartite closed-form point: {e}")))?;
    let eps = &unit * Rational::from_integer((2 * game.threshold() as i64).into()) - Rational::one();
    with_certificate(game, eps, point, LeastCoreSource::ClosedFormBipartite)
}

pub(crate) struct Generated {
    pub result: LeastCoreResult,
    /// Every matching the oracle returned, in order.
    pub columns: Vec<Matching>,
}

/// Maximize `eps` subject to `x(M) >= 1 + eps` over all size-`T` matchings,
/// `x >= 0`, `x(V) = 1`, adding the cheapest matching as a cut while it
/// is violated. `eps <= 0` holds for every feasible point since
/// `x(M) <= x(V)`; the explicit bound keeps the first LPs bounded.
pub(crate) fn constraint_generation(game: &TcmGame) -> Result<Generated> {
    let n = game.player_count();
    let t = game.threshold();
    let mut base = LinearProgram::new(n + 1);
    let mut objective = vec![Rational::zero(); n + 1];
    objective[n] = Rational::one();
    base.set_objective(objective)?;
    base.set_lower(n, None)?;
    base.set_upper(n, Some(Rational::zero()))?;
    let mut ones = vec![Rational::one(); n + 1];
    ones[n] = Rational::zero();
    base.add(ones, Relation::Eq, Rational::one(), "imputation")?;

    let mut columns = Vec::new();
    let outcome = solve_with_separation(&base, |point: &[Rational]| -> Result<Option<Constraint>> {
        let (m, cost) = min_cost_matching_of_size(game.graph(), &point[..n], t)?;
        if cost >= Rational::one() + &point[n] {
            return Ok(None);
        }
        let mut row = vec![Rational::zero(); n + 1];
        for i in m.covered().iter() {
            row[i] = Rational::one();
        }
        row[n] = -Rational::one();
        let label = format!("M{:?}", m.edges());
        columns.push(m);
        Ok(Some(Constraint::new(row, Relation::Ge, Rational::one(), label)))
    })?;
    let opt = outcome.solution.into_optimum()?;
    let point = Imputation::new(opt.point[..n].to_vec())?;
    let eps = opt.value;
    let certificate = columns
        .iter()
        .filter(|m| point.sum_over(&m.covered()) == Rational::one() + &eps)
        .cloned()
        .collect();
    Ok(Generated {
        result: LeastCoreResult {
            epsilon: eps,
            point,
            method: LeastCoreSource::ConstraintGeneration,
            certificate,
        },
        columns,
    })
}

/// Constraint generation on the game with isolated vertices removed,
/// lifted back. Columns are in original indices.
pub(crate) fn generated_columns(game: &TcmGame) -> Result<Generated> {
    let reduced = Reduced::new(game)?;
    let inner = constraint_generation(&reduced.game)?;
    let columns = inner.columns.iter().map(|m| reduced.lift_matching(m)).collect();
    let result = finish(game, &reduced, inner.result)?;
    Ok(Generated { result, columns })
}
