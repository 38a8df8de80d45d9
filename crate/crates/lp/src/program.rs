use std::collections::HashSet;
use std::fmt;

use num_traits::Zero;

use crate::error::LpError;
use crate::Rational;

/// Sense of a linear constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

/// One labelled row `coeffs · x (relation) rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
    pub label: String,
}

impl Constraint {
    pub fn new(
        coeffs: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
        label: impl Into<String>,
    ) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
            label: label.into(),
        }
    }

    pub fn lhs(&self, point: &[Rational]) -> Rational {
        dot(&self.coeffs, point)
    }

    /// True when `point` satisfies the row exactly.
    pub fn is_satisfied(&self, point: &[Rational]) -> bool {
        let lhs = self.lhs(point);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }

    pub fn is_tight(&self, point: &[Rational]) -> bool {
        self.lhs(point) == self.rhs
    }
}

/// A maximization problem over exact rationals.
///
/// Every variable has an optional lower bound (default `0`, `None` means
/// free) and an optional upper bound. Constraint labels are unique.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    variable_count: usize,
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
    lower: Vec<Option<Rational>>,
    upper: Vec<Option<Rational>>,
    labels: HashSet<String>,
}

impl LinearProgram {
    /// A program with `variable_count` nonnegative variables and a zero
    /// objective.
    pub fn new(variable_count: usize) -> Self {
        LinearProgram {
            variable_count,
            objective: vec![Rational::zero(); variable_count],
            constraints: Vec::new(),
            lower: vec![Some(Rational::zero()); variable_count],
            upper: vec![None; variable_count],
            labels: HashSet::new(),
        }
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn lower_bounds(&self) -> &[Option<Rational>] {
        &self.lower
    }

    pub fn upper_bounds(&self) -> &[Option<Rational>] {
        &self.upper
    }

    pub fn set_objective(&mut self, objective: Vec<Rational>) -> Result<(), LpError> {
        self.check_len(objective.len())?;
        self.objective = objective;
        Ok(())
    }

    pub fn set_lower(&mut self, var: usize, bound: Option<Rational>) -> Result<(), LpError> {
        self.check_var(var)?;
        self.lower[var] = bound;
        Ok(())
    }

    pub fn set_upper(&mut self, var: usize, bound: Option<Rational>) -> Result<(), LpError> {
        self.check_var(var)?;
        self.upper[var] = bound;
        Ok(())
    }

    pub fn add_constraint(&mut self, constraint: Constraint) -> Result<(), LpError> {
        self.check_len(constraint.coeffs.len())?;
        if !self.labels.insert(constraint.label.clone()) {
            return Err(LpError::DuplicateLabel(constraint.label));
        }
        self.constraints.push(constraint);
        Ok(())
    }

    pub fn add(
        &mut self,
        coeffs: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
        label: impl Into<String>,
    ) -> Result<(), LpError> {
        self.add_constraint(Constraint::new(coeffs, relation, rhs, label))
    }

    pub fn has_label(&self, label: &str) -> bool {
        self.labels.contains(label)
    }

    /// Objective value at `point`.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        dot(&self.objective, point)
    }

    /// Exact feasibility test, bounds included.
    pub fn is_feasible(&self, point: &[Rational]) -> bool {
        if point.len() != self.variable_count {
            return false;
        }
        let bounds_ok = point.iter().enumerate().all(|(j, v)| {
            self.lower[j].as_ref().map_or(true, |l| v >= l)
                && self.upper[j].as_ref().map_or(true, |u| v <= u)
        });
        bounds_ok && self.constraints.iter().all(|c| c.is_satisfied(point))
    }

    fn check_var(&self, var: usize) -> Result<(), LpError> {
        if var >= self.variable_count {
            return Err(LpError::DimensionMismatch {
                expected: self.variable_count,
                found: var + 1,
            });
        }
        Ok(())
    }

    fn check_len(&self, len: usize) -> Result<(), LpError> {
        if len != self.variable_count {
            return Err(LpError::DimensionMismatch {
                expected: self.variable_count,
                found: len,
            });
        }
        Ok(())
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, _)| !x.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}
