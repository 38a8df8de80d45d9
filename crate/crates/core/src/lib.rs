//! Threshold cardinality matching games: a coalition of vertices wins when
//! its induced subgraph has a matching of at least `T` edges.
//!
//! Everything is exact. Payoffs, excesses and LP values are arbitrary
//! precision rationals from [`tcmg_lp`].

pub mod error;
pub mod game;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod solvers;

pub use error::{GraphError, ImputationError, Result, TcmgError};
pub use game::{CoreDescription, EssentialFamily, Imputation, TcmGame};
pub use graph::{Coalition, Edge, Graph, GraphFormat, Position};
pub use matching::{
    enumerate_matchings_of_size, gallai_edmonds, max_matching_size_in, maximum_matching,
    min_cost_matching_of_size, GedDecomposition, Matching, MatchingEnumeration,
};
pub use tcmg_lp::Rational;
pub use solvers::{
    bipartite_least_core, ecg_least_core, least_core, least_core_with, mig_equilibrium,
    mig_equilibrium_with, nucleolus, nucleolus_with, uniform_convex_combination,
    verify_least_core_membership, ConvexWitness, LeastCoreMethod, LeastCoreResult,
    LeastCoreSource, MembershipVerdict, MigEquilibrium, NucleolusMethod, NucleolusResult,
    NucleolusRound, NucleolusSource, SolverConfig,
};

/// Largest vertex count accepted by the exhaustive `2^n` paths.
pub const BRUTE_FORCE_MAX_N: usize = 24;
