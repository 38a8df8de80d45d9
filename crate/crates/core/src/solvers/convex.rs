use num_traits::{One, Zero};

use tcmg_lp::{solve, LinearProgram, LpSolution, Relation};

use crate::error::{Result, TcmgError};
use crate::game::TcmGame;
use crate::matching::{enumerate_matchings_of_size, Matching};
use crate::Rational;

/// Weights writing the uniform vector `2T/n` as a convex combination of
/// indicator vectors of size-`T` matchings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexWitness {
    /// Matchings with positive weight.
    pub weights: Vec<(Matching, Rational)>,
    /// Positions of those matchings in the enumeration order. Each is tight
    /// at the first nucleolus round.
    pub forced_tight: Vec<usize>,
}

/// `None` when no convex combination exists.
pub fn uniform_convex_combination(game: &TcmGame, cap: usize) -> Result<Option<ConvexWitness>> {
    let g = game.graph();
    let n = g.vertex_count();
    let t = game.threshold();
    let listed = enumerate_matchings_of_size(g, t, Some(cap));
    if listed.truncated {
        return Err(TcmgError::CapExceeded {
            what: format!("number of matchings of size {t}"),
            cap,
        });
    }
    let m = listed.matchings.len();
    let target = Rational::new((2 * t as i64).into(), (n as i64).into());
    let mut lp = LinearProgram::new(m);
    for i in 0..n {
        let row = listed
            .matchings
            .iter()
            .map(|mt| if mt.covered().contains(i) { Rational::one() } else { Rational::zero() })
            .collect();
        lp.add(row, Relation::Eq, target.clone(), format!("vertex{i}"))?;
    }
    lp.add(vec![Rational::one(); m], Relation::Eq, Rational::one(), "convex")?;
    let opt = match solve(&lp)? {
        LpSolution::Optimal(opt) => opt,
        _ => return Ok(None),
    };
    let forced_tight: Vec<usize> = (0..m).filter(|&j| !opt.point[j].is_zero()).collect();
    let weights = forced_tight
        .iter()
        .map(|&j| (listed.matchings[j].clone(), opt.point[j].clone()))
        .collect();
    Ok(Some(ConvexWitness { weights, forced_tight }))
}
