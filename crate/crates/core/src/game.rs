//! The threshold cardinality matching game on a graph and its basic
//! cooperative-game quantities.

use std::collections::HashMap;
use std::sync::RwLock;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{ImputationError, Result, TcmgError};
use crate::graph::{Coalition, Graph};
use crate::matching::{enumerate_matchings_of_size, max_matching_size_in, maximum_matching};
use crate::Rational;

/// `v(S) = 1` iff `G[S]` has a matching of size at least `T`.
///
/// Values of coalitions inside the first 64 vertices are memoized.
#[derive(Debug)]
pub struct TcmGame {
    graph: Graph,
    threshold: usize,
    v_star: usize,
    memo: RwLock<HashMap<u64, bool>>,
}

impl Clone for TcmGame {
    fn clone(&self) -> Self {
        TcmGame {
            graph: self.graph.clone(),
            threshold: self.threshold,
            v_star: self.v_star,
            memo: RwLock::new(HashMap::new()),
        }
    }
}

impl TcmGame {
    /// Requires `1 <= t <= v*(G)`, so that `v(V) = 1`.
    pub fn new(graph: Graph, t: usize) -> Result<TcmGame> {
        let v_star = maximum_matching(&graph).len();
        if t < 1 || t > v_star {
            return Err(TcmgError::ThresholdOutOfRange { t, max: v_star });
        }
        Ok(TcmGame {
            graph,
            threshold: t,
            v_star,
            memo: RwLock::new(HashMap::new()),
        })
    }

    /// The same graph at another threshold.
    pub fn with_threshold(&self, t: usize) -> Result<TcmGame> {
        if t < 1 || t > self.v_star {
            return Err(TcmgError::ThresholdOutOfRange { t, max: self.v_star });
        }
        Ok(TcmGame {
            graph: self.graph.clone(),
            threshold: t,
            v_star: self.v_star,
            memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn max_matching_size(&self) -> usize {
        self.v_star
    }

    pub fn player_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn is_winning(&self, s: &Coalition) -> bool {
        let Some(mask) = s.mask() else {
            return max_matching_size_in(&self.graph, s) >= self.threshold;
        };
        if let Some(&w) = self.memo.read().expect("memo lock").get(&mask) {
            return w;
        }
        let w = 2 * self.threshold <= s.len() && max_matching_size_in(&self.graph, s) >= self.threshold;
        self.memo.write().expect("memo lock").insert(mask, w);
        w
    }

    /// `v(S)` as 0 or 1.
    pub fn value(&self, s: &Coalition) -> u8 {
        u8::from(self.is_winning(s))
    }

    /// `e(x, S) = x(S) - v(S)`.
    pub fn excess(&self, x: &Imputation, s: &Coalition) -> Rational {
        x.sum_over(s) - Rational::from_integer(self.value(s).into())
    }

    /// Players in every winning coalition: `v(V \ {i}) = 0`.
    pub fn veto_players(&self) -> Coalition {
        let n = self.player_count();
        (0..n)
            .filter(|&i| {
                let mut rest = Coalition::full(n);
                rest.remove(i);
                !self.is_winning(&rest)
            })
            .collect()
    }

    /// The core is nonempty iff some player has a veto; then its nucleolus
    /// splits the unit equally among the veto players.
    pub fn core(&self) -> CoreDescription {
        let veto = self.veto_players();
        let nucleolus = (!veto.is_empty()).then(|| {
            let share = Rational::new(1.into(), (veto.len() as i64).into());
            let payoffs = (0..self.player_count())
                .map(|i| if veto.contains(i) { share.clone() } else { Rational::zero() })
                .collect();
            Imputation::new(payoffs).expect("equal split over veto players")
        });
        CoreDescription {
            nonempty: nucleolus.is_some(),
            veto_players: veto,
            core_nucleolus: nucleolus,
        }
    }

    /// Singletons, the vertex set of each matching of size exactly `T` in
    /// enumeration order, and `V`. Entry `n + k` belongs to matching `k`, so
    /// distinct matchings on one vertex set repeat it. Stops enumerating
    /// matchings after `cap`.
    pub fn essential_coalitions(&self, cap: usize) -> EssentialFamily {
        let n = self.player_count();
        let mut coalitions: Vec<Coalition> = (0..n).map(|i| [i].into_iter().collect()).collect();
        let matchings = enumerate_matchings_of_size(&self.graph, self.threshold, Some(cap));
        coalitions.extend(matchings.matchings.iter().map(|m| m.covered()));
        coalitions.push(Coalition::full(n));
        EssentialFamily {
            coalitions,
            truncated: matchings.truncated,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialFamily {
    pub coalitions: Vec<Coalition>,
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreDescription {
    pub nonempty: bool,
    pub veto_players: Coalition,
    /// Present iff the core is nonempty.
    pub core_nucleolus: Option<Imputation>,
}

impl CoreDescription {
    /// Core membership: an imputation is in the core iff it pays nothing
    /// to players without a veto.
    pub fn contains(&self, x: &Imputation) -> bool {
        self.nonempty
            && x.payoffs()
                .iter()
                .enumerate()
                .all(|(i, xi)| self.veto_players.contains(i) || xi.is_zero())
    }
}

/// A payoff vector with `x >= 0` and `x(V) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Imputation(Vec<Rational>);

impl Imputation {
    pub fn new(payoffs: Vec<Rational>) -> Result<Imputation, ImputationError> {
        if let Some(i) = payoffs.iter().position(|x| x.is_negative()) {
            return Err(ImputationError::Negative(i));
        }
        let sum: Rational = payoffs.iter().sum();
        if !sum.is_one() {
            return Err(ImputationError::Sum(tcmg_lp::format_rational(&sum)));
        }
        Ok(Imputation(payoffs))
    }

    /// As [`Imputation::new`], also requiring one payoff per player.
    pub fn for_players(n: usize, payoffs: Vec<Rational>) -> Result<Imputation, ImputationError> {
        if payoffs.len() != n {
            return Err(ImputationError::Length {
                expected: n,
                found: payoffs.len(),
            });
        }
        Imputation::new(payoffs)
    }

    pub fn uniform(n: usize) -> Imputation {
        let share = Rational::new(1.into(), (n as i64).into());
        Imputation(vec![share; n])
    }

    pub fn payoffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum_over(&self, s: &Coalition) -> Rational {
        s.iter().map(|i| &self.0[i]).sum()
    }

    pub fn into_payoffs(self) -> Vec<Rational> {
        self.0
    }
}

/// Serializes as an array of `"p/q"` strings.
impl Serialize for Imputation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(tcmg_lp::format_rational))
    }
}
