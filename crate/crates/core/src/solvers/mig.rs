use num_traits::{One, Zero};

use tcmg_lp::{solve, LinearProgram, Relation};

use super::least_core::{generated_columns, least_core_with, verify_least_core_membership, LeastCoreMethod};
use super::SolverConfig;
use crate::error::{Result, TcmgError};
use crate::game::{Imputation, TcmGame};
use crate::matching::Matching;
use crate::Rational;

/// Mixed equilibrium of the zero-sum game in which an interceptor picks a
/// vertex, a matcher picks a size-`T` matching, and the interceptor wins
/// when the vertex is covered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MigEquilibrium {
    /// Game value, `1 + eps*`.
    pub alpha: Rational,
    pub interceptor: Imputation,
    /// Matcher mix with positive weights; absent when the columns could
    /// not be generated within the cut limit.
    pub matcher: Option<Vec<(Matching, Rational)>>,
    /// Largest cover probability of any vertex under the matcher mix.
    pub delta: Option<Rational>,
}

pub fn mig_equilibrium(game: &TcmGame) -> Result<MigEquilibrium> {
    mig_equilibrium_with(game, &SolverConfig::default())
}

/// The interceptor plays a least-core point. The matcher solves
/// `min delta` subject to `sum over M containing i of y_M <= delta` for
/// every vertex and `sum y = 1`, over the matchings constraint generation
/// produced; LP duality makes `delta = 1 + eps*`.
pub fn mig_equilibrium_with(game: &TcmGame, config: &SolverConfig) -> Result<MigEquilibrium> {
    let lc = least_core_with(game, LeastCoreMethod::Auto, config)?;
    let alpha = Rational::one() + &lc.epsilon;
    let verdict = verify_least_core_membership(game, &lc.point, &lc.epsilon)?;
    if verdict.min_cost != alpha {
        return Err(TcmgError::SelfCheck(format!(
            "interceptor guarantees {}, expected {}",
            verdict.min_cost, alpha
        )));
    }

    let mut columns = match generated_columns(game) {
        Ok(g) => g.columns,
        Err(TcmgError::Lp(tcmg_lp::LpError::CutLimit(_))) => {
            return Ok(MigEquilibrium {
                alpha,
                interceptor: lc.point,
                matcher: None,
                delta: None,
            })
        }
        Err(e) => return Err(e),
    };
    for m in lc.certificate.into_iter().chain([verdict.minimizer]) {
        if !columns.contains(&m) {
            columns.push(m);
        }
    }

    let n = game.player_count();
    let k = columns.len();
    let mut lp = LinearProgram::new(k + 1);
    let mut objective = vec![Rational::zero(); k + 1];
    objective[k] = -Rational::one();
    lp.set_objective(objective)?;
    lp.set_lower(k, None)?;
    let covers: Vec<_> = columns.iter().map(Matching::covered).collect();
    for i in 0..n {
        let mut row: Vec<Rational> = covers
            .iter()
            .map(|c| if c.contains(i) { Rational::one() } else { Rational::zero() })
            .collect();
        row.push(-Rational::one());
        lp.add(row, Relation::Le, Rational::zero(), format!("vertex{i}"))?;
    }
    let mut sum = vec![Rational::one(); k + 1];
    sum[k] = Rational::zero();
    lp.add(sum, Relation::Eq, Rational::one(), "mix")?;
    let opt = solve(&lp)?.into_optimum()?;
    let delta = -opt.value;
    let y = &opt.point[..k];

    let total: Rational = y.iter().sum();
    let worst = (0..n)
        .map(|i| {
            covers
                .iter()
                .zip(y)
                .filter(|(c, _)| c.contains(i))
                .map(|(_, w)| w.clone())
                .sum::<Rational>()
        })
        .max()
        .unwrap_or_else(Rational::zero);
    if delta != alpha || !total.is_one() || worst > delta {
        return Err(TcmgError::SelfCheck(format!(
            "matcher certificate: delta = {delta}, alpha = {alpha}, sum y = {total}, max cover = {worst}"
        )));
    }
    let matcher = columns
        .into_iter()
        .zip(y.iter().cloned())
        .filter(|(_, w)| !w.is_zero())
        .collect();
    Ok(MigEquilibrium {
        alpha,
        interceptor: lc.point,
        matcher: Some(matcher),
        delta: Some(delta),
    })
}
