use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::sequential::{self, Row, RowFamily};
use super::{Reduced, SolverConfig};
use crate::error::{Result, TcmgError};
use crate::game::{Imputation, TcmGame};
use crate::graph::{Coalition, Edge};
use crate::matching::enumerate_matchings_of_size;
use crate::oracle;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NucleolusMethod {
    Auto,
    Specialized,
    Essential,
    BruteForce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NucleolusSource {
    VetoCore,
    SpecializedEcg,
    SpecializedPerfect,
    SpecializedBipartite,
    Essential,
    BruteForce,
}

impl NucleolusSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            NucleolusSource::VetoCore => "veto_core",
            NucleolusSource::SpecializedEcg => "specialized_ecg",
            NucleolusSource::SpecializedPerfect => "specialized_perfect",
            NucleolusSource::SpecializedBipartite => "specialized_bipartite",
            NucleolusSource::Essential => "essential",
            NucleolusSource::BruteForce => "brute_force",
        }
    }
}

/// One sequential-LP round. Edge and vertex rows appear in the `T = 1`
/// program; coalition rows in the others.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NucleolusRound {
    pub epsilon: Rational,
    pub fixed_edges: Vec<Edge>,
    pub fixed_vertices: Vec<usize>,
    pub fixed_coalitions: Vec<Coalition>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NucleolusResult {
    pub point: Imputation,
    /// Rounds of the program actually solved, at `solved_threshold`.
    pub rounds: Vec<NucleolusRound>,
    pub method: NucleolusSource,
    pub solved_threshold: usize,
    /// The least-core value of the requested game, when the method yields it.
    pub first_round_epsilon: Option<Rational>,
}

pub fn nucleolus(game: &TcmGame, method: NucleolusMethod) -> Result<NucleolusResult> {
    nucleolus_with(game, method, &SolverConfig::default())
}

/// `auto`: a nonempty core gives the equal split over veto players; `T = 1`,
/// perfect-matching and bipartite graphs use the `T = 1` edge program;
/// small `T` uses minimal winning coalitions; anything else falls back to
/// all `2^n` coalitions.
pub fn nucleolus_with(game: &TcmGame, method: NucleolusMethod, config: &SolverConfig) -> Result<NucleolusResult> {
    match method {
        NucleolusMethod::BruteForce => Ok(oracle::brute_force_nucleolus(game, config.oracle_cap)?.0),
        NucleolusMethod::Essential => essential(game, config.enumeration_cap),
        NucleolusMethod::Specialized => match veto_core(game) {
            Some(r) => Ok(r),
            None => specialized(game)?.ok_or_else(|| {
                TcmgError::NoClosedForm("T > 1 on a graph that is neither bipartite nor perfectly matchable".into())
            }),
        },
        NucleolusMethod::Auto => {
            if let Some(r) = veto_core(game) {
                return Ok(r);
            }
            if let Some(r) = specialized(game)? {
                return Ok(r);
            }
            if game.threshold() <= config.essential_max_threshold {
                match essential(game, config.enumeration_cap) {
                    Err(TcmgError::CapExceeded { .. }) => {}
                    other => return other,
                }
            }
            log::warn!(
                "no polynomial nucleolus algorithm is known for T = {} on this graph \
                 (general graph, no perfect matching, not bipartite); \
                 falling back to the exhaustive sequential LP",
                game.threshold()
            );
            Ok(oracle::brute_force_nucleolus(game, config.oracle_cap)?.0)
        }
    }
}

fn veto_core(game: &TcmGame) -> Option<NucleolusResult> {
    game.core().core_nucleolus.map(|point| NucleolusResult {
        point,
        rounds: Vec::new(),
        method: NucleolusSource::VetoCore,
        solved_threshold: game.threshold(),
        first_round_epsilon: Some(Rational::zero()),
    })
}

/// Solves the `T = 1` program over edges and vertices and reports its point
/// for the requested `T`. `None` when no specialized class applies.
fn specialized(game: &TcmGame) -> Result<Option<NucleolusResult>> {
    let reduced = Reduced::new(game)?;
    let g = reduced.graph();
    let n = g.vertex_count();
    let t = game.threshold();
    let v_star = game.max_matching_size();
    let method = if t == 1 {
        NucleolusSource::SpecializedEcg
    } else if 2 * v_star == n {
        NucleolusSource::SpecializedPerfect
    } else if g.is_bipartite() {
        NucleolusSource::SpecializedBipartite
    } else {
        return Ok(None);
    };
    let sets: Vec<Coalition> = g.edges().iter().map(|&(u, v)| [u, v].into_iter().collect()).collect();
    let family = WinningSetRows::new(n, sets, true);
    let mut result = run_family(&reduced, &family, method, 1)?;
    result.first_round_epsilon = Some(match method {
        NucleolusSource::SpecializedEcg => result.rounds[0].epsilon.clone(),
        // Both classes have n' = 2 v*, so 2T/n' - 1 = T/v* - 1.
        _ => Rational::new((t as i64).into(), (v_star as i64).into()) - Rational::one(),
    });
    Ok(Some(result))
}

/// Sequential LPs over the vertex sets of size-`T` matchings, each also
/// extended by any single outside vertex, plus the singletons.
fn essential(game: &TcmGame, cap: usize) -> Result<NucleolusResult> {
    let reduced = Reduced::new(game)?;
    let g = reduced.graph();
    let listed = enumerate_matchings_of_size(g, game.threshold(), Some(cap));
    if listed.truncated {
        return Err(TcmgError::CapExceeded {
            what: format!("number of matchings of size {}", game.threshold()),
            cap,
        });
    }
    let sets: BTreeSet<Coalition> = listed.matchings.iter().map(|m| m.covered()).collect();
    let family = WinningSetRows::new(g.vertex_count(), sets.into_iter().collect(), true);
    let mut result = run_family(&reduced, &family, NucleolusSource::Essential, game.threshold())?;
    result.first_round_epsilon = Some(result.rounds[0].epsilon.clone());
    Ok(result)
}

/// Runs the sequential LPs on the reduced game and lifts the result.
pub(crate) fn run_family(
    reduced: &Reduced,
    family: &dyn LabelledFamily,
    method: NucleolusSource,
    solved_threshold: usize,
) -> Result<NucleolusResult> {
    let n = reduced.graph().vertex_count();
    let outcome = sequential::run(n, family.as_rows())?;
    let point = Imputation::new(reduced.lift_point(&outcome.point))?;
    let rounds = outcome
        .rounds
        .iter()
        .map(|r| {
            let mut round = NucleolusRound {
                epsilon: r.epsilon.clone(),
                ..Default::default()
            };
            for &k in &r.fixed {
                match family.label(k) {
                    RowLabel::Vertex(i) => round.fixed_vertices.push(reduced.kept[i]),
                    RowLabel::Set(s) if s.len() == 2 && family.sets_are_edges() => {
                        let m: Vec<usize> = reduced.lift_coalition(&s).members();
                        round.fixed_edges.push((m[0], m[1]));
                    }
                    RowLabel::Set(s) => round.fixed_coalitions.push(reduced.lift_coalition(&s)),
                }
            }
            round
        })
        .collect();
    Ok(NucleolusResult {
        point,
        rounds,
        method,
        solved_threshold,
        first_round_epsilon: None,
    })
}

pub(crate) enum RowLabel {
    Set(Coalition),
    Vertex(usize),
}

pub(crate) trait LabelledFamily {
    fn as_rows(&self) -> &dyn RowFamily;
    fn label(&self, k: usize) -> RowLabel;
    fn sets_are_edges(&self) -> bool {
        false
    }
}

fn indicator(n: usize, s: &Coalition) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    for i in s.iter() {
        v[i] = Rational::one();
    }
    v
}

/// Fixed rows `x(S) - v(S)` for an explicit list of coalitions.
pub(crate) struct CoalitionRows {
    n: usize,
    rows: Vec<(Coalition, Rational)>,
}

impl CoalitionRows {
    pub fn new(n: usize, rows: Vec<(Coalition, Rational)>) -> Self {
        CoalitionRows { n, rows }
    }
}

impl RowFamily for CoalitionRows {
    fn len(&self) -> usize {
        self.rows.len()
    }

    fn rows(&self, _settled: &[Option<Rational>]) -> Vec<Row> {
        self.rows
            .iter()
            .map(|(s, v)| Row {
                coeffs: indicator(self.n, s),
                base: v.clone(),
            })
            .collect()
    }
}

impl LabelledFamily for CoalitionRows {
    fn as_rows(&self) -> &dyn RowFamily {
        self
    }

    fn label(&self, k: usize) -> RowLabel {
        RowLabel::Set(self.rows[k].0.clone())
    }
}

/// Rows `x(W) - 1` for winning sets `W`, then one row per vertex `i`.
///
/// Without extension the vertex row is the singleton `x_i`. With it, the
/// row stands for `{i}` together with every `W + i` where `W` is settled
/// and avoids `i`: those excesses are `x_i + e(W)` with `e(W)` constant,
/// so only the smallest offset `min(0, e(W))` can bind.
pub(crate) struct WinningSetRows {
    n: usize,
    sets: Vec<Coalition>,
    extended: bool,
}

impl WinningSetRows {
    pub fn new(n: usize, sets: Vec<Coalition>, extended: bool) -> Self {
        WinningSetRows { n, sets, extended }
    }
}

impl RowFamily for WinningSetRows {
    fn len(&self) -> usize {
        self.sets.len() + self.n
    }

    fn rows(&self, settled: &[Option<Rational>]) -> Vec<Row> {
        let mut rows: Vec<Row> = self
            .sets
            .iter()
            .map(|s| Row {
                coeffs: indicator(self.n, s),
                base: Rational::one(),
            })
            .collect();
        for i in 0..self.n {
            let mut offset = Rational::zero();
            if self.extended {
                for (s, e) in self.sets.iter().zip(settled) {
                    if let Some(e) = e {
                        if !s.contains(i) && *e < offset {
                            offset = e.clone();
                        }
                    }
                }
            }
            let mut coeffs = vec![Rational::zero(); self.n];
            coeffs[i] = Rational::one();
            rows.push(Row { coeffs, base: -offset });
        }
        rows
    }
}

impl LabelledFamily for WinningSetRows {
    fn as_rows(&self) -> &dyn RowFamily {
        self
    }

    fn label(&self, k: usize) -> RowLabel {
        match self.sets.get(k) {
            Some(s) => RowLabel::Set(s.clone()),
            None => RowLabel::Vertex(k - self.sets.len()),
        }
    }

    fn sets_are_edges(&self) -> bool {
        self.sets.iter().all(|s| s.len() == 2)
    }
}
