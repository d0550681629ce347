//! Exact linear feasibility over the cyclotomic real field, with verified
//! certificates.
//!
//! A single entry point, [`solve_feasibility`], decides whether a system of
//! linear constraints (<=, =, >= rows; free or nonnegative variables) has a
//! solution with coordinates in Q(2cos(pi/m)). Because basic solutions and
//! Farkas multipliers of a field-coefficient system solve field-linear
//! equations, feasibility over the field coincides with feasibility over the
//! reals, so the answer is exact for the real question too.
//!
//! Method: phase-1 simplex. Free variables split into differences of
//! nonnegative pairs, >= rows are negated, slacks turn <= rows into
//! equations, rows are flipped to nonnegative right-hand sides, and one
//! artificial variable per row provides the starting basis. Bland's rule
//! (smallest eligible index enters, smallest basic index among minimal
//! ratios leaves) guarantees termination. Every outcome carries a
//! certificate — a feasible point or Farkas multipliers — and both are
//! re-verified by exact substitution before being returned; a verification
//! failure is a solver bug and panics.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::exactreal::{CycloReal, FieldContext};

/// Direction of a constraint row.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// One linear constraint: coeffs . x  (rel)  rhs.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<CycloReal>,
    pub rel: Relation,
    pub rhs: CycloReal,
}

/// Sign restriction of a variable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarKind {
    Free,
    NonNeg,
}

/// Outcome of a feasibility run.
///
/// `Infeasible` carries one Farkas multiplier per constraint, in input
/// order, certifying that no solution exists: multipliers are >= 0 on Le
/// rows, <= 0 on Ge rows, unrestricted on Eq rows; the combined coefficient
/// vector sum_i lambda_i a_i vanishes on free variables and is >= 0 on
/// nonnegative ones; and sum_i lambda_i b_i < 0.
#[derive(Clone, Debug)]
pub enum LpOutcome {
    Feasible { point: Vec<CycloReal> },
    Infeasible { farkas: Vec<CycloReal> },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible { .. })
    }
}

/// Column roles in the phase-1 tableau.
#[derive(Clone, Copy, Debug)]
enum Col {
    /// Coefficient +1 or -1 of an original variable.
    Var { var: usize, neg: bool },
    /// Slack of (converted) Le row `row`.
    Slack { row: usize },
    /// Artificial of row `row`.
    Artificial { row: usize },
}

/// Decide feasibility of `constraints` over variables of the given kinds.
/// All constraint rows must have `kinds.len()` coefficients.
pub fn solve_feasibility(
    f: &FieldContext,
    kinds: &[VarKind],
    constraints: &[Constraint],
) -> LpOutcome {
    let nvars = kinds.len();
    for c in constraints {
        assert_eq!(c.coeffs.len(), nvars, "constraint width mismatch");
    }
    if constraints.is_empty() {
        return LpOutcome::Feasible { point: alloc::vec![f.zero(); nvars] };
    }

    // Convert Ge rows to Le by negation, remembering the original relation
    // for certificate reporting.
    let rows: Vec<(Vec<CycloReal>, Relation, CycloReal, bool)> = constraints
        .iter()
        .map(|c| match c.rel {
            Relation::Ge => (
                c.coeffs.iter().map(|a| f.neg(a)).collect(),
                Relation::Le,
                f.neg(&c.rhs),
                true,
            ),
            rel => (c.coeffs.clone(), rel, c.rhs.clone(), false),
        })
        .collect();

    // Row flip factors making every right-hand side nonnegative (applied to
    // the equation form, after slacks are introduced).
    let flips: Vec<bool> = rows
        .iter()
        .map(|(_, _, b, _)| f.sign(b) == Ordering::Less)
        .collect();

    // Column layout: variable columns, slack columns, artificial columns.
    let mut cols: Vec<Col> = Vec::new();
    for (v, kind) in kinds.iter().enumerate() {
        cols.push(Col::Var { var: v, neg: false });
        if *kind == VarKind::Free {
            cols.push(Col::Var { var: v, neg: true });
        }
    }
    for (r, (_, rel, _, _)) in rows.iter().enumerate() {
        if *rel == Relation::Le {
            cols.push(Col::Slack { row: r });
        }
    }
    let first_artificial = cols.len();
    for r in 0..rows.len() {
        cols.push(Col::Artificial { row: r });
    }
    let ncols = cols.len();
    let rhs_col = ncols;

    // Build the tableau: one row per constraint, entries followed by rhs.
    let mut t: Vec<Vec<CycloReal>> = Vec::with_capacity(rows.len());
    for (r, (coeffs, _, b, _)) in rows.iter().enumerate() {
        let mut row: Vec<CycloReal> = Vec::with_capacity(ncols + 1);
        for col in &cols {
            let entry = match *col {
                Col::Var { var, neg } => {
                    if neg {
                        f.neg(&coeffs[var])
                    } else {
                        coeffs[var].clone()
                    }
                }
                Col::Slack { row: sr } => {
                    if sr == r {
                        f.one()
                    } else {
                        f.zero()
                    }
                }
                Col::Artificial { row: ar } => {
                    if ar == r {
                        f.one()
                    } else {
                        f.zero()
                    }
                }
            };
            row.push(entry);
        }
        row.push(b.clone());
        if flips[r] {
            // Negate everything except the artificial column (added after
            // the flip so it stays +1).
            for (ci, entry) in row.iter_mut().enumerate() {
                let is_own_artificial = ci == first_artificial + r;
                if !is_own_artificial {
                    *entry = f.neg(entry);
                }
            }
        }
        t.push(row);
    }

    let mut basic: Vec<usize> = (0..rows.len()).map(|r| first_artificial + r).collect();

    // Phase-1 simplex with Bland's rule, minimizing the sum of artificials.
    let iter_cap = 1000 + 50 * (rows.len() + ncols);
    let mut iterations = 0usize;
    loop {
        iterations += 1;
        assert!(iterations <= iter_cap, "simplex iteration cap exceeded (solver bug)");

        // Reduced cost of column j: c_j - sum over artificial-basic rows of
        // T[k][j], with c_j = 1 on artificial columns and 0 elsewhere.
        // Artificial columns never re-enter.
        let art_rows: Vec<usize> = (0..rows.len())
            .filter(|&k| basic[k] >= first_artificial)
            .collect();
        let mut entering: Option<usize> = None;
        for j in 0..first_artificial {
            if basic.contains(&j) {
                continue;
            }
            let mut acc = f.zero();
            for &k in &art_rows {
                acc = f.add(&acc, &t[k][j]);
            }
            // c̄_j = -acc; eligible when c̄_j < 0, i.e. acc > 0.
            if f.sign(&acc) == Ordering::Greater {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else { break };

        // Ratio test over rows with positive entry in column j.
        let mut leave: Option<(usize, CycloReal)> = None; // (row, ratio)
        for k in 0..rows.len() {
            if f.sign(&t[k][j]) != Ordering::Greater {
                continue;
            }
            let ratio = f
                .div(&t[k][rhs_col], &t[k][j])
                .expect("pivot entry is nonzero");
            match &leave {
                None => leave = Some((k, ratio)),
                Some((bk, best)) => match f.cmp(&ratio, best) {
                    Ordering::Less => leave = Some((k, ratio)),
                    Ordering::Equal if basic[k] < basic[*bk] => leave = Some((k, ratio)),
                    _ => {}
                },
            }
        }
        let (k, _) = leave.expect("phase-1 objective is bounded; a pivot row must exist");

        // Pivot on (k, j).
        let pivot = t[k][j].clone();
        let inv = f.inv(&pivot).expect("pivot is nonzero");
        for e in t[k].iter_mut() {
            *e = f.mul(e, &inv);
        }
        for r in 0..rows.len() {
            if r == k || t[r][j].is_zero() {
                continue;
            }
            let factor = t[r][j].clone();
            for c in 0..=ncols {
                let delta = f.mul(&factor, &t[k][c]);
                t[r][c] = f.sub(&t[r][c], &delta);
            }
        }
        basic[k] = j;
    }

    // Optimal. Objective value = sum of basic artificial values.
    let mut w = f.zero();
    for k in 0..rows.len() {
        if basic[k] >= first_artificial {
            w = f.add(&w, &t[k][rhs_col]);
        }
    }

    match f.sign(&w) {
        Ordering::Equal => {
            // Feasible: read variable values off the basis.
            let mut point = alloc::vec![f.zero(); nvars];
            for k in 0..rows.len() {
                if let Col::Var { var, neg } = cols[basic[k]] {
                    let val = &t[k][rhs_col];
                    point[var] = if neg {
                        f.sub(&point[var], val)
                    } else {
                        f.add(&point[var], val)
                    };
                }
            }
            verify_point(f, kinds, constraints, &point);
            LpOutcome::Feasible { point }
        }
        Ordering::Greater => {
            // Infeasible: y_i = (phase-1 costs of basis) B^{-1} e_i is read
            // off the artificial columns; the reported multiplier for row i
            // is -flip_i * y_i, then negated again on originally-Ge rows.
            let mut farkas: Vec<CycloReal> = Vec::with_capacity(rows.len());
            for i in 0..rows.len() {
                let mut y = f.zero();
                for k in 0..rows.len() {
                    if basic[k] >= first_artificial {
                        y = f.add(&y, &t[k][first_artificial + i]);
                    }
                }
                let mut lambda = f.neg(&y);
                if flips[i] {
                    lambda = f.neg(&lambda);
                }
                if rows[i].3 {
                    lambda = f.neg(&lambda);
                }
                farkas.push(lambda);
            }
            verify_farkas(f, kinds, constraints, &farkas);
            LpOutcome::Infeasible { farkas }
        }
        Ordering::Less => unreachable!("phase-1 objective is a sum of nonnegative basics"),
    }
}

/// Exact substitution check of a claimed feasible point.
fn verify_point(
    f: &FieldContext,
    kinds: &[VarKind],
    constraints: &[Constraint],
    point: &[CycloReal],
) {
    for (v, kind) in kinds.iter().enumerate() {
        if *kind == VarKind::NonNeg {
            assert_ne!(
                f.sign(&point[v]),
                Ordering::Less,
                "solver bug: nonnegative variable went negative"
            );
        }
    }
    for c in constraints {
        let mut lhs = f.zero();
        for (a, x) in c.coeffs.iter().zip(point) {
            lhs = f.add(&lhs, &f.mul(a, x));
        }
        let s = f.cmp(&lhs, &c.rhs);
        let ok = match c.rel {
            Relation::Le => s != Ordering::Greater,
            Relation::Ge => s != Ordering::Less,
            Relation::Eq => s == Ordering::Equal,
        };
        assert!(ok, "solver bug: claimed feasible point violates a constraint");
    }
}

/// Exact check of a claimed Farkas certificate (see [`LpOutcome`] for its
/// sign conventions).
fn verify_farkas(
    f: &FieldContext,
    kinds: &[VarKind],
    constraints: &[Constraint],
    farkas: &[CycloReal],
) {
    assert_eq!(farkas.len(), constraints.len());
    for (lambda, c) in farkas.iter().zip(constraints) {
        let s = f.sign(lambda);
        let ok = match c.rel {
            Relation::Le => s != Ordering::Less,
            Relation::Ge => s != Ordering::Greater,
            Relation::Eq => true,
        };
        assert!(ok, "solver bug: Farkas multiplier has the wrong sign");
    }
    for (v, kind) in kinds.iter().enumerate() {
        let mut acc = f.zero();
        for (lambda, c) in farkas.iter().zip(constraints) {
            acc = f.add(&acc, &f.mul(lambda, &c.coeffs[v]));
        }
        let ok = match kind {
            VarKind::Free => acc.is_zero(),
            VarKind::NonNeg => f.sign(&acc) != Ordering::Less,
        };
        assert!(ok, "solver bug: Farkas combination does not eliminate variable {v}");
    }
    let mut total = f.zero();
    for (lambda, c) in farkas.iter().zip(constraints) {
        total = f.add(&total, &f.mul(lambda, &c.rhs));
    }
    assert_eq!(
        f.sign(&total),
        Ordering::Less,
        "solver bug: Farkas certificate does not reach a contradiction"
    );
}
