use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::weighted::max_weight_matching;
use super::{maximum_matching, Matching};
use crate::error::{Result, TcmgError};
use crate::graph::Graph;
use crate::Rational;

/// A matching of exactly `t` edges minimizing the sum of its endpoints'
/// costs, with that cost.
///
/// `n - 2t` dummy vertices, each joined to every vertex at cost zero, turn
/// the problem into a minimum cost perfect matching. Among optimal
/// matchings the one with the lexicographically smallest sorted edge list
/// is returned: edge `k` in sorted order earns a bonus `delta * 2^(m-1-k)`,
/// and `delta = 1 / (L * 2^(m+1))` with `L` the common cost denominator
/// keeps every bonus sum below the smallest nonzero cost gap `1 / L`.
pub fn min_cost_matching_of_size(g: &Graph, costs: &[Rational], t: usize) -> Result<(Matching, Rational)> {
    let n = g.vertex_count();
    if costs.len() != n {
        return Err(TcmgError::CostLength {
            expected: n,
            found: costs.len(),
        });
    }
    if let Some(i) = costs.iter().position(|c| c.is_negative()) {
        return Err(TcmgError::NegativeCost(i));
    }
    let max = maximum_matching(g).len();
    if t > max {
        return Err(TcmgError::NoMatchingOfSize { t, max });
    }
    if t == 0 {
        return Ok((Matching::default(), Rational::zero()));
    }

    let m = g.edge_count();
    let lcm = costs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let delta = Rational::new(BigInt::one(), lcm << (m + 1));
    let perturbed: Vec<Rational> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(k, &(u, v))| {
            let bonus = &delta * Rational::from_integer(BigInt::one() << (m - 1 - k));
            &costs[u] + &costs[v] - bonus
        })
        .collect();
    let ceiling = perturbed.iter().max().cloned().unwrap_or_else(Rational::zero) + Rational::one();

    let dummies = n - 2 * t;
    let mut weighted: Vec<(usize, usize, Rational)> = g
        .edges()
        .iter()
        .zip(&perturbed)
        .map(|(&(u, v), c)| (u, v, &ceiling - c))
        .collect();
    for d in 0..dummies {
        for v in 0..n {
            weighted.push((n + d, v, ceiling.clone()));
        }
    }
    let mate = max_weight_matching(n + dummies, &weighted, true);
    if mate.iter().any(Option::is_none) {
        return Err(TcmgError::SelfCheck("augmented graph has no perfect matching".into()));
    }
    let real: Vec<Option<usize>> = mate[..n]
        .iter()
        .map(|m| m.filter(|&v| v < n))
        .collect();
    let matching = Matching::from_mates(&real);
    if matching.len() != t || !matching.is_valid_in(g) {
        return Err(TcmgError::SelfCheck(format!(
            "reduction produced {} real edges, expected {t}",
            matching.len()
        )));
    }
    let cost = matching.cost(costs);
    Ok((matching, cost))
}
