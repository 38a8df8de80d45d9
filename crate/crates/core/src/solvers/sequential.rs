//! Sequential LPs for the nucleolus over an explicit excess-row family.
//!
//! Round `r` maximizes `eps` subject to `row . x - base >= eps` for every
//! row not yet settled, with earlier fixed rows held as equalities. The
//! rows fixed at `eps_r` are those whose maximum over the optimal face is
//! still `eps_r`; only rows tight at the returned vertex can qualify, so
//! only those are probed. A free row whose coefficients lie in the span of
//! the equalities is constant on the face and is settled at its value.
//! The loop stops once the equalities pin down a single point, which
//! takes at most `n` rounds since every round adds at least one
//! independent equality.

use num_traits::{One, Zero};

use tcmg_lp::{max_over_optimal_face, solve, LinearProgram, Relation};

use crate::error::{Result, TcmgError};
use crate::Rational;

/// Excess `coeffs . x - base`.
#[derive(Clone, Debug)]
pub(crate) struct Row {
    pub coeffs: Vec<Rational>,
    pub base: Rational,
}

pub(crate) trait RowFamily {
    fn len(&self) -> usize;

    /// Rows as seen at the start of a round. `settled[k]` is the constant
    /// excess of row `k` once it is known; bases may depend on it.
    fn rows(&self, settled: &[Option<Rational>]) -> Vec<Row>;
}

#[derive(Clone, Debug)]
pub(crate) struct Round {
    pub epsilon: Rational,
    /// Row indices fixed at `epsilon`.
    pub fixed: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct Outcome {
    pub point: Vec<Rational>,
    pub rounds: Vec<Round>,
}

pub(crate) fn run(n: usize, family: &dyn RowFamily) -> Result<Outcome> {
    let mut settled: Vec<Option<Rational>> = vec![None; family.len()];
    let mut span = RowSpace::new(n);
    span.insert(vec![Rational::one(); n]);
    let mut equalities: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut zeroed = vec![false; n];
    let mut rounds = Vec::new();

    for (k, row) in family.rows(&settled).iter().enumerate() {
        if span.contains(&row.coeffs) {
            // A multiple of the all-ones row: its excess is that multiple minus the base.
            settled[k] = Some(&row.coeffs[0] - &row.base);
        }
    }

    loop {
        if rounds.len() == n {
            return Err(TcmgError::SelfCheck(format!(
                "no unique point after {n} rounds"
            )));
        }
        let rows = family.rows(&settled);
        let free: Vec<usize> = (0..rows.len()).filter(|&k| settled[k].is_none()).collect();
        if free.is_empty() {
            return Err(TcmgError::SelfCheck(
                "row family leaves the point undetermined".into(),
            ));
        }

        let mut lp = LinearProgram::new(n + 1);
        let mut objective = vec![Rational::zero(); n + 1];
        objective[n] = Rational::one();
        lp.set_objective(objective)?;
        lp.set_lower(n, None)?;
        let widen = |c: &[Rational], eps: i64| {
            let mut v = c.to_vec();
            v.push(Rational::from_integer(eps.into()));
            v
        };
        lp.add(widen(&vec![Rational::one(); n], 0), Relation::Eq, Rational::one(), "sum")?;
        for (j, (c, rhs)) in equalities.iter().enumerate() {
            lp.add(widen(c, 0), Relation::Eq, rhs.clone(), format!("fixed{j}"))?;
        }
        for (i, &z) in zeroed.iter().enumerate() {
            if z {
                lp.set_upper(i, Some(Rational::zero()))?;
            }
        }
        for &k in &free {
            lp.add(widen(&rows[k].coeffs, -1), Relation::Ge, rows[k].base.clone(), format!("row{k}"))?;
        }
        let opt = solve(&lp)?.into_optimum()?;
        let eps = opt.value.clone();
        let x = &opt.point[..n];

        let excess = |row: &Row| -> Rational { dot(&row.coeffs, x) - &row.base };
        let mut fixed = Vec::new();
        for &k in &free {
            if excess(&rows[k]) != eps {
                continue;
            }
            let top = max_over_optimal_face(&lp, &eps, &widen(&rows[k].coeffs, 0))?;
            if top == &rows[k].base + &eps {
                fixed.push(k);
            }
        }
        if fixed.is_empty() {
            return Err(TcmgError::SelfCheck(format!(
                "round {} fixed no row",
                rounds.len() + 1
            )));
        }
        for &k in &fixed {
            settled[k] = Some(eps.clone());
            span.insert(rows[k].coeffs.clone());
            equalities.push((rows[k].coeffs.clone(), &rows[k].base + &eps));
        }
        for i in 0..n {
            if zeroed[i] || !x[i].is_zero() {
                continue;
            }
            let mut unit = vec![Rational::zero(); n];
            unit[i] = Rational::one();
            if span.contains(&unit) {
                continue;
            }
            if max_over_optimal_face(&lp, &eps, &widen(&unit, 0))?.is_zero() {
                zeroed[i] = true;
                span.insert(unit);
            }
        }
        for &k in &free {
            if settled[k].is_none() && span.contains(&rows[k].coeffs) {
                settled[k] = Some(excess(&rows[k]));
            }
        }
        rounds.push(Round {
            epsilon: eps,
            fixed,
        });
        if span.rank() == n {
            return Ok(Outcome {
                point: x.to_vec(),
                rounds,
            });
        }
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).filter(|(p, _)| !p.is_zero()).map(|(p, q)| p * q).sum()
}

/// Row space of a growing set of vectors, kept in reduced echelon form.
struct RowSpace {
    basis: Vec<(usize, Vec<Rational>)>,
}

impl RowSpace {
    fn new(_n: usize) -> Self {
        RowSpace { basis: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        v
    }

    fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; false when it was already in the span.
    fn insert(&mut self, v: Vec<Rational>) -> bool {
        let mut r = self.reduce(&v);
        let Some(pivot) = r.iter().position(|a| !a.is_zero()) else {
            return false;
        };
        let inv = r[pivot].recip();
        for a in r.iter_mut() {
            *a *= &inv;
        }
        for (_, row) in self.basis.iter_mut() {
            if row[pivot].is_zero() {
                continue;
            }
            let f = row[pivot].clone();
            for (a, b) in row.iter_mut().zip(&r) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        self.basis.push((pivot, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tcmg_lp::ratio;

    #[test]
    fn row_space_tracks_rank() {
        let mut s = RowSpace::new(3);
        assert!(s.insert(vec![ratio(1, 1), ratio(1, 1), ratio(1, 1)]));
        assert!(s.insert(vec![ratio(1, 1), ratio(0, 1), ratio(0, 1)]));
        assert!(s.contains(&[ratio(0, 1), ratio(2, 1), ratio(2, 1)]));
        assert!(!s.contains(&[ratio(0, 1), ratio(1, 1), ratio(0, 1)]));
        assert!(!s.insert(vec![ratio(3, 1), ratio(1, 1), ratio(1, 1)]));
        assert_eq!(s.rank(), 2);
    }
}
