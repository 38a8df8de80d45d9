//! Dense compact-tableau simplex over exact rationals.
//!
//! The tableau stores only the nonbasic columns, so a program with `m` rows
//! and `n` variables costs `O(m * n)` per pivot. This suits the coalition
//! programs here, which have few variables and many rows.
//!
//! Pivoting uses Bland's rule throughout, so the sequence of vertices is a
//! pure function of the input.

use num_traits::{One, Signed, Zero};

use crate::error::LpError;
use crate::program::{dot, LinearProgram, Relation};
use crate::Rational;

/// Default safety cap on simplex pivots.
pub const DEFAULT_PIVOT_LIMIT: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

impl LpStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
        }
    }
}

/// An optimal vertex together with its dual certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Optimum {
    pub value: Rational,
    pub point: Vec<Rational>,
    /// Labels of the constraints holding with equality at `point`.
    pub tight: Vec<String>,
    /// One multiplier per constraint: `>= 0` on `<=` rows, `<= 0` on `>=`
    /// rows, free on equalities.
    pub row_duals: Vec<Rational>,
    /// One nonnegative multiplier per variable (zero where no upper bound).
    pub upper_duals: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpSolution {
    Optimal(Optimum),
    Infeasible,
    Unbounded,
}

impl LpSolution {
    pub fn status(&self) -> LpStatus {
        match self {
            LpSolution::Optimal(_) => LpStatus::Optimal,
            LpSolution::Infeasible => LpStatus::Infeasible,
            LpSolution::Unbounded => LpStatus::Unbounded,
        }
    }

    pub fn optimum(&self) -> Option<&Optimum> {
        match self {
            LpSolution::Optimal(o) => Some(o),
            _ => None,
        }
    }

    pub fn into_optimum(self) -> Result<Optimum, LpError> {
        match self {
            LpSolution::Optimal(o) => Ok(o),
            other => Err(LpError::NotOptimal(other.status().as_str())),
        }
    }
}

/// Solve `lp` with the default pivot cap.
pub fn solve(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    solve_with_limit(lp, DEFAULT_PIVOT_LIMIT)
}

pub fn solve_with_limit(lp: &LinearProgram, pivot_limit: usize) -> Result<LpSolution, LpError> {
    let mut tableau = Tableau::build(lp);
    let solution = match tableau.run(pivot_limit)? {
        LpStatus::Optimal => LpSolution::Optimal(tableau.extract(lp)),
        LpStatus::Infeasible => LpSolution::Infeasible,
        LpStatus::Unbounded => LpSolution::Unbounded,
    };
    if let LpSolution::Optimal(opt) = &solution {
        check_certificate(lp, opt).map_err(LpError::Certificate)?;
    }
    Ok(solution)
}

/// Exact check that `opt` is primal feasible and that its multipliers form a
/// dual feasible certificate whose value equals the primal objective.
pub fn check_certificate(lp: &LinearProgram, opt: &Optimum) -> Result<(), String> {
    let n = lp.variable_count();
    if !lp.is_feasible(&opt.point) {
        return Err("primal point violates a constraint".into());
    }
    if lp.evaluate(&opt.point) != opt.value {
        return Err("objective value does not match the point".into());
    }
    let mut reduced: Vec<Rational> = lp.objective().to_vec();
    let mut dual_value = Rational::zero();
    for (c, y) in lp.constraints().iter().zip(&opt.row_duals) {
        let sign_ok = match c.relation {
            Relation::Le => !y.is_negative(),
            Relation::Ge => !y.is_positive(),
            Relation::Eq => true,
        };
        if !sign_ok {
            return Err(format!("dual of `{}` has the wrong sign", c.label));
        }
        if y.is_zero() {
            continue;
        }
        dual_value += y * &c.rhs;
        for (r, a) in reduced.iter_mut().zip(&c.coeffs) {
            if !a.is_zero() {
                *r -= y * a;
            }
        }
    }
    for j in 0..n {
        let w = &opt.upper_duals[j];
        if w.is_negative() {
            return Err(format!("upper-bound dual of variable {j} is negative"));
        }
        if !w.is_zero() {
            match &lp.upper_bounds()[j] {
                Some(u) => {
                    dual_value += w * u;
                    reduced[j] -= w;
                }
                None => return Err(format!("variable {j} has no upper bound")),
            }
        }
        match &lp.lower_bounds()[j] {
            None if !reduced[j].is_zero() => {
                return Err(format!("reduced cost of free variable {j} is nonzero"));
            }
            Some(_) if reduced[j].is_positive() => {
                return Err(format!("reduced cost of variable {j} is positive"));
            }
            Some(l) => dual_value += &reduced[j] * l,
            None => {}
        }
    }
    if dual_value != opt.value {
        return Err(format!(
            "dual value {} differs from primal value {}",
            dual_value, opt.value
        ));
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum RowKind {
    /// Nonnegative basic variable; takes part in ratio tests.
    Enforced,
    /// Defines a free variable; never leaves the basis.
    Free,
}

/// What a nonbasic column may do.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum ColKind {
    Normal,
    /// An equality slack or the retired phase-one variable: pinned at zero.
    Pinned,
    /// A free variable that appears in no row.
    Loose,
}

/// Where the rows of the tableau came from.
#[derive(Clone, Copy, Debug)]
enum Origin {
    Row { index: usize, negated: bool },
    Upper { var: usize },
}

struct Tableau {
    /// `basic[i] = rhs[i] - sum_k body[i][k] * nonbasic[k]`
    body: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    row_kind: Vec<RowKind>,
    cols: Vec<usize>,
    col_kind: Vec<ColKind>,
    /// `z = obj_const + sum_k obj[k] * nonbasic[k]`; index 0 is the real
    /// objective, index 1 (when present) the phase-one objective.
    obj: Vec<Vec<Rational>>,
    obj_const: Vec<Rational>,
    structural: usize,
    origins: Vec<Origin>,
    equality_rows: Vec<usize>,
    free_vars: Vec<usize>,
    pivots: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let n = lp.variable_count();
        let shift: Vec<Rational> = lp
            .lower_bounds()
            .iter()
            .map(|l| l.clone().unwrap_or_else(Rational::zero))
            .collect();
        let mut body = Vec::new();
        let mut rhs = Vec::new();
        let mut origins = Vec::new();
        let mut equality_rows = Vec::new();
        for (index, c) in lp.constraints().iter().enumerate() {
            let b = &c.rhs - dot(&c.coeffs, &shift);
            let negated = c.relation == Relation::Ge;
            if negated {
                body.push(c.coeffs.iter().map(|a| -a).collect());
                rhs.push(-b);
            } else {
                body.push(c.coeffs.clone());
                rhs.push(b);
            }
            if c.relation == Relation::Eq {
                equality_rows.push(origins.len());
            }
            origins.push(Origin::Row { index, negated });
        }
        for (var, u) in lp.upper_bounds().iter().enumerate() {
            if let Some(u) = u {
                let mut row = vec![Rational::zero(); n];
                row[var] = Rational::one();
                body.push(row);
                rhs.push(u - &shift[var]);
                origins.push(Origin::Upper { var });
            }
        }
        let m = body.len();
        let free_vars = (0..n).filter(|&j| lp.lower_bounds()[j].is_none()).collect();
        Tableau {
            body,
            rhs,
            basis: (n..n + m).collect(),
            row_kind: vec![RowKind::Enforced; m],
            cols: (0..n).collect(),
            col_kind: vec![ColKind::Normal; n],
            obj: vec![lp.objective().to_vec()],
            obj_const: vec![dot(lp.objective(), &shift)],
            structural: n,
            origins,
            equality_rows,
            free_vars,
            pivots: 0,
        }
    }

    fn slack_id(&self, row: usize) -> usize {
        self.structural + row
    }

    fn phase_one_id(&self) -> usize {
        self.structural + self.origins.len()
    }

    fn pivot(&mut self, r: usize, k: usize, limit: usize) -> Result<(), LpError> {
        self.pivots += 1;
        if self.pivots > limit {
            return Err(LpError::PivotLimit(limit));
        }
        let p = self.body[r][k].clone();
        debug_assert!(!p.is_zero());
        let inv = p.recip();
        let width = self.cols.len();

        let mut pivot_row = std::mem::take(&mut self.body[r]);
        for (j, v) in pivot_row.iter_mut().enumerate() {
            if j == k {
                *v = inv.clone();
            } else if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_rhs = &self.rhs[r] * &inv;

        for i in 0..self.body.len() {
            if i == r {
                continue;
            }
            let f = self.body[i][k].clone();
            if f.is_zero() {
                continue;
            }
            let row = &mut self.body[i];
            for j in 0..width {
                if j == k {
                    row[j] = -(&f * &inv);
                } else if !pivot_row[j].is_zero() {
                    row[j] -= &f * &pivot_row[j];
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        for (o, c) in self.obj.iter_mut().zip(self.obj_const.iter_mut()) {
            let d = o[k].clone();
            if d.is_zero() {
                continue;
            }
            for j in 0..width {
                if j == k {
                    o[j] = -(&d * &inv);
                } else if !pivot_row[j].is_zero() {
                    o[j] -= &d * &pivot_row[j];
                }
            }
            *c += &d * &pivot_rhs;
        }
        self.body[r] = pivot_row;
        self.rhs[r] = pivot_rhs;
        std::mem::swap(&mut self.basis[r], &mut self.cols[k]);
        Ok(())
    }

    fn column_of(&self, var: usize) -> Option<usize> {
        self.cols.iter().position(|&c| c == var)
    }

    fn row_of(&self, var: usize) -> Option<usize> {
        self.basis.iter().position(|&b| b == var)
    }

    /// Returns the final status; on `Optimal` the tableau holds the vertex.
    fn run(&mut self, limit: usize) -> Result<LpStatus, LpError> {
        // Free variables enter the basis first and never leave.
        for var in self.free_vars.clone() {
            let k = self.column_of(var).expect("free variable starts nonbasic");
            let row = (0..self.body.len())
                .find(|&i| self.row_kind[i] == RowKind::Enforced && !self.body[i][k].is_zero());
            match row {
                Some(r) => {
                    self.pivot(r, k, limit)?;
                    self.row_kind[r] = RowKind::Free;
                }
                None => self.col_kind[k] = ColKind::Loose,
            }
        }
        // Equality slacks leave the basis and are pinned at zero.
        for row in self.equality_rows.clone() {
            let slack = self.slack_id(row);
            match self.row_of(slack) {
                Some(r) => {
                    let k = self.lowest_column(|k| !self.body[r][k].is_zero());
                    match k {
                        Some(k) => {
                            self.pivot(r, k, limit)?;
                            let k = self.column_of(slack).expect("slack just left");
                            self.col_kind[k] = ColKind::Pinned;
                        }
                        None if !self.rhs[r].is_zero() => return Ok(LpStatus::Infeasible),
                        None => {}
                    }
                }
                None => {
                    let k = self.column_of(slack).expect("slack is nonbasic");
                    self.col_kind[k] = ColKind::Pinned;
                }
            }
        }

        if !self.phase_one(limit)? {
            return Ok(LpStatus::Infeasible);
        }
        let status = self.optimize(0, limit)?;
        if status == LpStatus::Optimal
            && (0..self.cols.len())
                .any(|k| self.col_kind[k] == ColKind::Loose && !self.obj[0][k].is_zero())
        {
            return Ok(LpStatus::Unbounded);
        }
        Ok(status)
    }

    /// Smallest-id eligible column satisfying `pred`.
    fn lowest_column(&self, pred: impl Fn(usize) -> bool) -> Option<usize> {
        (0..self.cols.len())
            .filter(|&k| self.col_kind[k] == ColKind::Normal && pred(k))
            .min_by_key(|&k| self.cols[k])
    }

    /// Drives every enforced row to a nonnegative value. Returns false when
    /// the program is infeasible.
    fn phase_one(&mut self, limit: usize) -> Result<bool, LpError> {
        let worst = (0..self.body.len())
            .filter(|&i| self.row_kind[i] == RowKind::Enforced && self.rhs[i].is_negative())
            .min_by(|&a, &b| self.rhs[a].cmp(&self.rhs[b]).then(a.cmp(&b)));
        let Some(worst) = worst else {
            return Ok(true);
        };
        let art = self.phase_one_id();
        for i in 0..self.body.len() {
            let coeff = match self.row_kind[i] {
                RowKind::Enforced => -Rational::one(),
                RowKind::Free => Rational::zero(),
            };
            self.body[i].push(coeff);
        }
        self.obj[0].push(Rational::zero());
        let mut aux = vec![Rational::zero(); self.cols.len()];
        aux.push(-Rational::one());
        self.obj.push(aux);
        self.obj_const.push(Rational::zero());
        self.cols.push(art);
        self.col_kind.push(ColKind::Normal);
        let art_col = self.cols.len() - 1;
        self.pivot(worst, art_col, limit)?;

        let status = self.optimize(1, limit)?;
        debug_assert_eq!(status, LpStatus::Optimal);
        let feasible = self.obj_const[1].is_zero();
        if feasible {
            if let Some(r) = self.row_of(art) {
                if let Some(k) = self.lowest_column(|k| !self.body[r][k].is_zero()) {
                    self.pivot(r, k, limit)?;
                }
            }
            if let Some(k) = self.column_of(art) {
                self.col_kind[k] = ColKind::Pinned;
            }
        }
        self.obj.truncate(1);
        self.obj_const.truncate(1);
        Ok(feasible)
    }

    /// Bland's rule on objective row `which`.
    fn optimize(&mut self, which: usize, limit: usize) -> Result<LpStatus, LpError> {
        let art = self.phase_one_id();
        loop {
            let entering = self.lowest_column(|k| self.obj[which][k].is_positive());
            let Some(k) = entering else {
                return Ok(LpStatus::Optimal);
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.body.len() {
                if self.row_kind[i] != RowKind::Enforced || !self.body[i][k].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.body[i][k];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br
                            || (ratio == *br
                                && (self.basis[i] == art
                                    || (self.basis[*bi] != art
                                        && self.basis[i] < self.basis[*bi])))
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, k, limit)?,
                None => return Ok(LpStatus::Unbounded),
            }
        }
    }

    fn extract(&self, lp: &LinearProgram) -> Optimum {
        let n = self.structural;
        let mut point: Vec<Rational> = lp
            .lower_bounds()
            .iter()
            .map(|l| l.clone().unwrap_or_else(Rational::zero))
            .collect();
        for (i, &var) in self.basis.iter().enumerate() {
            if var < n {
                point[var] += &self.rhs[i];
            }
        }
        let mut row_duals = vec![Rational::zero(); lp.constraints().len()];
        let mut upper_duals = vec![Rational::zero(); n];
        for (row, origin) in self.origins.iter().enumerate() {
            let Some(k) = self.column_of(self.slack_id(row)) else {
                continue;
            };
            let pi = -self.obj[0][k].clone();
            match *origin {
                Origin::Row { index, negated } => {
                    row_duals[index] = if negated { -pi } else { pi };
                }
                Origin::Upper { var } => upper_duals[var] = pi,
            }
        }
        let tight = lp
            .constraints()
            .iter()
            .filter(|c| c.is_tight(&point))
            .map(|c| c.label.clone())
            .collect();
        Optimum {
            value: self.obj_const[0].clone(),
            point,
            tight,
            row_duals,
            upper_duals,
        }
    }
}
