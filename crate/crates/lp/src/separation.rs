use std::fmt::Display;

use crate::error::LpError;
use crate::program::{Constraint, LinearProgram, Relation};
use crate::simplex::{solve_with_limit, LpSolution, DEFAULT_PIVOT_LIMIT};
use crate::Rational;

/// Default safety cap on generated cuts.
pub const DEFAULT_CUT_LIMIT: usize = 10_000;

#[derive(Clone, Copy, Debug)]
pub struct SeparationLimits {
    pub pivots_per_solve: usize,
    pub cuts: usize,
}

impl Default for SeparationLimits {
    fn default() -> Self {
        SeparationLimits {
            pivots_per_solve: DEFAULT_PIVOT_LIMIT,
            cuts: DEFAULT_CUT_LIMIT,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SeparationOutcome {
    pub solution: LpSolution,
    /// Cuts in the order the oracle produced them.
    pub cuts: Vec<Constraint>,
    /// The base program with every generated cut appended.
    pub program: LinearProgram,
}

/// Constraint generation: solve, ask the oracle for a violated row, add it,
/// repeat until the oracle is satisfied.
///
/// The oracle must be exact. A returned row that the current point already
/// satisfies is rejected, since it would loop forever.
pub fn solve_with_separation<F, E>(
    base: &LinearProgram,
    oracle: F,
) -> Result<SeparationOutcome, LpError>
where
    F: FnMut(&[Rational]) -> Result<Option<Constraint>, E>,
    E: Display,
{
    solve_with_separation_limits(base, oracle, SeparationLimits::default())
}

pub fn solve_with_separation_limits<F, E>(
    base: &LinearProgram,
    mut oracle: F,
    limits: SeparationLimits,
) -> Result<SeparationOutcome, LpError>
where
    F: FnMut(&[Rational]) -> Result<Option<Constraint>, E>,
    E: Display,
{
    let mut program = base.clone();
    let mut cuts = Vec::new();
    loop {
        let solution = solve_with_limit(&program, limits.pivots_per_solve)?;
        let point = match &solution {
            LpSolution::Optimal(opt) => &opt.point,
            _ => {
                return Ok(SeparationOutcome {
                    solution,
                    cuts,
                    program,
                })
            }
        };
        let cut = oracle(point).map_err(|e| LpError::Oracle(e.to_string()))?;
        let Some(cut) = cut else {
            return Ok(SeparationOutcome {
                solution,
                cuts,
                program,
            });
        };
        if cut.is_satisfied(point) {
            return Err(LpError::NonViolatedCut(cut.label));
        }
        if cuts.len() == limits.cuts {
            return Err(LpError::CutLimit(limits.cuts));
        }
        program.add_constraint(cut.clone())?;
        cuts.push(cut);
    }
}

/// Maximum of `probe · x` over the optimal face of `lp`, i.e. over feasible
/// points whose objective equals `opt_value`.
pub fn max_over_optimal_face(
    lp: &LinearProgram,
    opt_value: &Rational,
    probe: &[Rational],
) -> Result<Rational, LpError> {
    let mut face = lp.clone();
    let mut label = String::from("optimal-face");
    while face.has_label(&label) {
        label.push('\'');
    }
    face.add(
        lp.objective().to_vec(),
        Relation::Eq,
        opt_value.clone(),
        label,
    )?;
    face.set_objective(probe.to_vec())?;
    match solve_with_limit(&face, DEFAULT_PIVOT_LIMIT)? {
        LpSolution::Optimal(opt) => Ok(opt.value),
        LpSolution::Infeasible => Err(LpError::FaceEmpty),
        LpSolution::Unbounded => Err(LpError::UnboundedProbe),
    }
}

/// Minimum of `probe · x` over the optimal face.
pub fn min_over_optimal_face(
    lp: &LinearProgram,
    opt_value: &Rational,
    probe: &[Rational],
) -> Result<Rational, LpError> {
    let negated: Vec<Rational> = probe.iter().map(|p| -p).collect();
    max_over_optimal_face(lp, opt_value, &negated).map(|v| -v)
}
