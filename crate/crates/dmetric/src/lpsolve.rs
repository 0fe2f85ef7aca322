//! Dense inequality-form linear programming:
//! maximize c.v subject to A v <= b with free variables v.
//!
//! Two-phase tableau simplex. Free variables are split into differences of
//! nonnegatives; rows with negative bounds are negated and given artificial
//! variables, so phase 1 only runs when some bound is negative. Bland's rule
//! picks every pivot, which makes the solver deterministic and immune to
//! cycling on the highly degenerate programs the metric modules produce.

use std::io::Write;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
    pub bounds: Vec<f64>,
}

impl LinearProgram {
    pub fn new(objective: Vec<f64>, rows: Vec<Vec<f64>>, bounds: Vec<f64>) -> Result<Self> {
        let vars = objective.len();
        if vars == 0 || rows.is_empty() {
            return Err(Error::BadInput("LP needs at least one variable and row".into()));
        }
        if rows.len() != bounds.len() {
            return Err(Error::BadInput("row/bound count mismatch".into()));
        }
        if rows.iter().any(|r| r.len() != vars) {
            return Err(Error::BadInput("row length mismatch".into()));
        }
        let finite = objective
            .iter()
            .chain(bounds.iter())
            .chain(rows.iter().flatten())
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::BadInput("non-finite LP data".into()));
        }
        Ok(LinearProgram {
            objective,
            rows,
            bounds,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub value: f64,
    pub solution: Vec<f64>,
    pub iterations: usize,
    /// Dual multipliers of the original rows (meaningful on Optimal).
    pub row_duals: Vec<f64>,
}

const PIVOT_EPS: f64 = 1e-9;
const COST_EPS: f64 = 1e-9;

struct Tableau {
    // rows[r] has width ncols; last column is the RHS
    rows: Vec<Vec<f64>>,
    obj: Vec<f64>,
    basis: Vec<usize>,
    ncols: usize,
    pivots: usize,
    budget: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> f64 {
        self.rows[r][self.ncols - 1]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = 1.0 / self.rows[row][col];
        for j in 0..self.ncols {
            self.rows[row][j] *= inv;
        }
        self.rows[row][col] = 1.0;
        for r in 0..self.rows.len() {
            if r == row {
                continue;
            }
            let factor = self.rows[r][col];
            if factor == 0.0 {
                continue;
            }
            for j in 0..self.ncols {
                self.rows[r][j] -= factor * self.rows[row][j];
            }
            self.rows[r][col] = 0.0;
        }
        let factor = self.obj[col];
        if factor != 0.0 {
            for j in 0..self.ncols {
                self.obj[j] -= factor * self.rows[row][j];
            }
            self.obj[col] = 0.0;
        }
        self.basis[row] = col;
        self.pivots += 1;
    }

    /// Runs simplex on the current objective row. `allowed` marks columns
    /// that may enter the basis.
    fn run(&mut self, allowed: &[bool]) -> Result<LpStatus> {
        loop {
            // Bland: entering column = smallest index with negative reduced cost
            let entering = (0..self.ncols - 1)
                .find(|&j| allowed[j] && self.obj[j] < -COST_EPS);
            let Some(col) = entering else {
                return Ok(LpStatus::Optimal);
            };

            // ratio test; ties broken by smallest basic-variable index
            let mut best: Option<(f64, usize, usize)> = None; // (ratio, basic var, row)
            for r in 0..self.rows.len() {
                let a = self.rows[r][col];
                if a <= PIVOT_EPS {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let candidate = (ratio, self.basis[r], r);
                best = match best {
                    None => Some(candidate),
                    Some(current) => {
                        if ratio < current.0 - PIVOT_EPS
                            || ((ratio - current.0).abs() <= PIVOT_EPS
                                && self.basis[r] < current.1)
                        {
                            Some(candidate)
                        } else {
                            Some(current)
                        }
                    }
                };
            }
            let Some((_, _, row)) = best else {
                return Ok(LpStatus::Unbounded);
            };

            if self.pivots >= self.budget {
                return Err(Error::IterationLimit { pivots: self.pivots });
            }
            self.pivot(row, col);
        }
    }
}

pub fn solve_lp(p: &LinearProgram) -> Result<LpOutcome> {
    solve_lp_traced(p, None)
}

/// Like [`solve_lp`], optionally dumping the tableau shape, pivot count and
/// final state to `trace`.
pub fn solve_lp_traced(p: &LinearProgram, mut trace: Option<&mut dyn Write>) -> Result<LpOutcome> {
    let v = p.num_vars();
    let r = p.num_rows();

    // columns: [p_1..p_V, q_1..q_V, s_1..s_R, artificials..., RHS]
    let structural = 2 * v;
    let slack_base = structural;
    let negated: Vec<bool> = p.bounds.iter().map(|b| *b < 0.0).collect();
    let art_rows: Vec<usize> = (0..r).filter(|i| negated[*i]).collect();
    let art_base = slack_base + r;
    let ncols = art_base + art_rows.len() + 1;

    let mut rows = vec![vec![0.0; ncols]; r];
    for i in 0..r {
        let sign = if negated[i] { -1.0 } else { 1.0 };
        for j in 0..v {
            rows[i][j] = sign * p.rows[i][j];
            rows[i][v + j] = -sign * p.rows[i][j];
        }
        rows[i][slack_base + i] = sign;
        rows[i][ncols - 1] = sign * p.bounds[i];
    }
    let mut basis = vec![0usize; r];
    for (a, &i) in art_rows.iter().enumerate() {
        rows[i][art_base + a] = 1.0;
    }
    for i in 0..r {
        basis[i] = if negated[i] {
            art_base + art_rows.iter().position(|&x| x == i).unwrap()
        } else {
            slack_base + i
        };
    }

    // phase-2 objective in reduced-cost form (entries start at -c)
    let mut obj = vec![0.0; ncols];
    for j in 0..v {
        obj[j] = -p.objective[j];
        obj[v + j] = p.objective[j];
    }

    let mut t = Tableau {
        rows,
        obj,
        basis,
        ncols,
        pivots: 0,
        budget: 50 * (r + v),
    };

    if let Some(w) = trace.as_deref_mut() {
        writeln!(
            w,
            "lp: {r} rows, {v} free vars, {} artificials, {ncols} tableau columns",
            art_rows.len()
        )?;
    }

    if !art_rows.is_empty() {
        // phase 1: maximize -(sum of artificials)
        let saved_obj = t.obj.clone();
        let mut phase1 = vec![0.0; ncols];
        for a in 0..art_rows.len() {
            phase1[art_base + a] = 1.0;
        }
        // zero out reduced costs of the basic artificials
        for &i in &art_rows {
            for j in 0..ncols {
                phase1[j] -= t.rows[i][j];
            }
        }
        t.obj = phase1;
        let allowed: Vec<bool> = (0..ncols - 1).map(|_| true).collect();
        let status = t.run(&allowed)?;
        let infeasibility = -t.obj[ncols - 1];
        if status != LpStatus::Optimal || infeasibility.abs() > 1e-7 {
            if let Some(w) = trace.as_deref_mut() {
                writeln!(w, "phase 1 ended infeasible (residual {infeasibility:e})")?;
            }
            return Ok(LpOutcome {
                status: LpStatus::Infeasible,
                value: 0.0,
                solution: vec![0.0; v],
                iterations: t.pivots,
                row_duals: vec![0.0; r],
            });
        }
        // drive leftover artificials out of the basis
        for row in 0..r {
            if t.basis[row] >= art_base {
                let col = (0..art_base).find(|&j| t.rows[row][j].abs() > PIVOT_EPS);
                if let Some(col) = col {
                    t.pivot(row, col);
                }
            }
        }
        // restore the real objective, eliminating basic columns
        t.obj = saved_obj;
        for row in 0..r {
            let col = t.basis[row];
            let factor = t.obj[col];
            if factor != 0.0 {
                for j in 0..ncols {
                    t.obj[j] -= factor * t.rows[row][j];
                }
                t.obj[col] = 0.0;
            }
        }
    }

    // phase 2: artificials may not enter
    let allowed: Vec<bool> = (0..ncols - 1).map(|j| j < art_base).collect();
    let status = t.run(&allowed)?;

    if status == LpStatus::Unbounded {
        if let Some(w) = trace.as_deref_mut() {
            writeln!(w, "phase 2 unbounded after {} pivots", t.pivots)?;
        }
        return Ok(LpOutcome {
            status: LpStatus::Unbounded,
            value: f64::INFINITY,
            solution: vec![0.0; v],
            iterations: t.pivots,
            row_duals: vec![0.0; r],
        });
    }

    let mut split = vec![0.0; structural];
    for row in 0..r {
        if t.basis[row] < structural {
            split[t.basis[row]] = t.rhs(row);
        }
    }
    let solution: Vec<f64> = (0..v).map(|j| split[j] - split[v + j]).collect();
    let value = t.obj[ncols - 1];

    // duals from the reduced costs over the slack columns; a negated row
    // carries a negated slack column, so the sign flips back
    let row_duals: Vec<f64> = (0..r)
        .map(|i| {
            let d = t.obj[slack_base + i];
            if negated[i] {
                -d
            } else {
                d
            }
        })
        .collect();

    if let Some(w) = trace.as_deref_mut() {
        writeln!(w, "optimal value {value} after {} pivots", t.pivots)?;
        writeln!(w, "basis: {:?}", t.basis)?;
    }

    Ok(LpOutcome {
        status: LpStatus::Optimal,
        value,
        solution,
        iterations: t.pivots,
        row_duals,
    })
}
