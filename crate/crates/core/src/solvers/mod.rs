//! Least-core, nucleolus, and matching-intercept equilibria.

mod convex;
mod least_core;
mod mig;
mod nucleolus;
pub(crate) mod sequential;

use num_traits::Zero;

use crate::error::Result;
use crate::game::TcmGame;
use crate::graph::{Coalition, Graph};
use crate::matching::Matching;
use crate::Rational;

pub use convex::{uniform_convex_combination, ConvexWitness};
pub use least_core::{
    bipartite_least_core, ecg_least_core, least_core, least_core_with, verify_least_core_membership,
    LeastCoreMethod, LeastCoreResult, LeastCoreSource, MembershipVerdict,
};
pub use mig::{mig_equilibrium, mig_equilibrium_with, MigEquilibrium};
pub use nucleolus::{nucleolus, nucleolus_with, NucleolusMethod, NucleolusResult, NucleolusRound, NucleolusSource};
pub(crate) use nucleolus::{run_family, CoalitionRows, WinningSetRows};

/// Limits for the exhaustive paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest `n` the `2^n` coalition LPs accept.
    pub oracle_cap: usize,
    /// Largest `T` sent down the minimal-winning-coalition nucleolus path.
    pub essential_max_threshold: usize,
    /// Largest number of size-`T` matchings any enumeration may produce.
    pub enumeration_cap: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            oracle_cap: crate::oracle::DEFAULT_ORACLE_CAP,
            essential_max_threshold: 3,
            enumeration_cap: 100_000,
        }
    }
}

/// A game with its isolated vertices removed. An isolated player adds
/// nothing to any coalition and is paid zero by every solution here.
pub(crate) struct Reduced {
    pub game: TcmGame,
    /// Original index of each kept vertex.
    pub kept: Vec<usize>,
    pub n: usize,
}

impl Reduced {
    pub fn new(game: &TcmGame) -> Result<Reduced> {
        let g = game.graph();
        let n = g.vertex_count();
        let isolated = g.isolated_vertices();
        if isolated.is_empty() {
            return Ok(Reduced {
                game: game.clone(),
                kept: (0..n).collect(),
                n,
            });
        }
        let keep = isolated.complement(n);
        let (sub, kept) = g.induced_subgraph(&keep)?;
        Ok(Reduced {
            game: TcmGame::new(sub, game.threshold())?,
            kept,
            n,
        })
    }

    /// The game as is, with no vertex removed.
    pub fn identity(game: &TcmGame) -> Reduced {
        let n = game.player_count();
        Reduced {
            game: game.clone(),
            kept: (0..n).collect(),
            n,
        }
    }

    pub fn graph(&self) -> &Graph {
        self.game.graph()
    }

    pub fn lift_point(&self, x: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n];
        for (k, v) in x.iter().enumerate() {
            out[self.kept[k]] = v.clone();
        }
        out
    }

    pub fn lift_matching(&self, m: &Matching) -> Matching {
        m.mapped(&self.kept)
    }

    pub fn lift_coalition(&self, s: &Coalition) -> Coalition {
        s.iter().map(|k| self.kept[k]).collect()
    }
}
