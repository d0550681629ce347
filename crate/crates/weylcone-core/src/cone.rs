//! The side-length cone: inequality system, membership, certified
//! irredundancy, projection, and extreme rays.
//!
//! A point of the ambient space R^{2n} lists the fundamental-chamber
//! coordinates (a_i, b_i) of n side-length values. The cone is cut out by
//!
//! - one homogeneous row per admissible direction tuple (see
//!   [`crate::functionals`]): sum_i <x_i, e(d_i)> <= 0, and
//! - the 2n coordinate rows -x_j <= 0.
//!
//! Irredundancy of a row is decided by the conic-combination criterion: a
//! row L is implied by the others exactly when L is a nonnegative
//! combination of them (homogeneous Farkas). Both outcomes carry exact
//! certificates — the combination itself, or a separating point satisfying
//! every other row while strictly violating L. The primal facet-point LP
//! (a point on L's hyperplane with all other rows strictly slack) is also
//! provided; the two tests agree on full-dimensional cones, and the test
//! suites check that agreement on the systems built here.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::coxeter::Apartment;
use crate::exactreal::{CycloReal, FieldContext};
use crate::functionals;
use crate::lp::{solve_feasibility, Constraint, LpOutcome, Relation, VarKind};

/// Where a point sits relative to the cone. Boundary reports every row with
/// value exactly zero; Outside reports every strictly violated row. Indices
/// refer to functional-row order and coordinate order respectively.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Membership {
    Interior,
    Boundary { active_functionals: Vec<usize>, active_coordinates: Vec<usize> },
    Outside { violated_functionals: Vec<usize>, violated_coordinates: Vec<usize> },
}

impl Membership {
    pub fn is_interior(&self) -> bool {
        matches!(self, Membership::Interior)
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, Membership::Boundary { .. })
    }

    pub fn is_outside(&self) -> bool {
        matches!(self, Membership::Outside { .. })
    }
}

/// Verdict on a single row, with an exact certificate either way.
#[derive(Clone, Debug)]
pub enum RowVerdict {
    /// The row cannot be dropped: `witness` satisfies every other row of the
    /// system but strictly violates this one.
    Irredundant { witness: Vec<CycloReal> },
    /// The row is implied: it equals the nonnegative `combination` of the
    /// other rows (ordered as the generators were passed — for system rows,
    /// the remaining functional rows followed by the coordinate rows).
    Redundant { combination: Vec<CycloReal> },
}

impl RowVerdict {
    pub fn is_irredundant(&self) -> bool {
        matches!(self, RowVerdict::Irredundant { .. })
    }
}

/// The coefficient row of a direction tuple's functional: position i of the
/// tuple contributes (cos(d_i pi/m), cos((d_i - 1) pi/m)) at coordinates
/// (2i, 2i+1).
pub fn functional_row(ap: &Apartment, tuple: &[u32]) -> Vec<CycloReal> {
    let f = ap.field();
    let mut row = Vec::with_capacity(2 * tuple.len());
    for &d in tuple {
        row.push(f.cosmul(d as i64));
        row.push(f.cosmul(d as i64 - 1));
    }
    row
}

/// The 2n coordinate rows -x_j <= 0 expressing that side values stay in the
/// fundamental chamber.
pub fn coordinate_rows(f: &FieldContext, n: usize) -> Vec<Vec<CycloReal>> {
    let d = 2 * n;
    (0..d)
        .map(|j| {
            let mut row = alloc::vec![f.zero(); d];
            row[j] = f.from_int(-1);
            row
        })
        .collect()
}

/// Evaluate a homogeneous row at a point.
pub fn evaluate_row(f: &FieldContext, row: &[CycloReal], point: &[CycloReal]) -> CycloReal {
    assert_eq!(row.len(), point.len());
    let mut acc = f.zero();
    for (a, x) in row.iter().zip(point) {
        acc = f.add(&acc, &f.mul(a, x));
    }
    acc
}

/// The full inequality system of the n-gon side-length cone for one
/// dihedral order.
#[derive(Clone, Debug)]
pub struct ConeSystem {
    ap: Apartment,
    n: usize,
    tuples: Vec<Vec<u32>>,
    rows: Vec<Vec<CycloReal>>,
}

impl ConeSystem {
    /// Build the system from the closed-form tuple enumeration. Functional
    /// rows are ordered deterministically: even-parity tuples first, odd
    /// second, lexicographically within each parity.
    pub fn new(ap: &Apartment, n: usize) -> ConeSystem {
        let tuples_set = functionals::enumerate_tuples_direct(ap.group(), n);
        let mut tuples: Vec<Vec<u32>> = Vec::with_capacity(tuples_set.len());
        for parity in 0..2u32 {
            for t in &tuples_set {
                if t[0] % 2 == parity {
                    tuples.push(t.clone());
                }
            }
        }
        ConeSystem::from_tuples(ap, n, tuples)
    }

    /// Build a system from an explicit tuple list (kept in the given order).
    /// Every tuple must have length n and entries below 2m.
    pub fn from_tuples(ap: &Apartment, n: usize, tuples: Vec<Vec<u32>>) -> ConeSystem {
        let order = 2 * ap.m();
        for t in &tuples {
            assert_eq!(t.len(), n, "tuple length must match n");
            assert!(t.iter().all(|&d| d < order), "direction index out of range");
        }
        let rows = tuples.iter().map(|t| functional_row(ap, t)).collect();
        ConeSystem { ap: ap.clone(), n, tuples, rows }
    }

    pub fn apartment(&self) -> &Apartment {
        &self.ap
    }

    pub fn field(&self) -> &FieldContext {
        self.ap.field()
    }

    pub fn m(&self) -> u32 {
        self.ap.m()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Direction tuples of the functional rows, in row order.
    pub fn tuples(&self) -> &[Vec<u32>] {
        &self.tuples
    }

    /// Functional rows only (without the coordinate rows).
    pub fn functional_rows(&self) -> &[Vec<CycloReal>] {
        &self.rows
    }

    /// Functional rows followed by coordinate rows: the full homogeneous
    /// system, as used by projection and extreme-ray computations.
    pub fn all_rows(&self) -> Vec<Vec<CycloReal>> {
        let mut rows = self.rows.clone();
        rows.extend(coordinate_rows(self.field(), self.n));
        rows
    }

    /// Values of every functional row at a point (length-2n coordinate
    /// vector), in row order.
    pub fn evaluate_all(&self, point: &[CycloReal]) -> Vec<CycloReal> {
        self.rows
            .iter()
            .map(|row| evaluate_row(self.field(), row, point))
            .collect()
    }

    /// Membership of a point: Outside when any functional row is positive or
    /// any coordinate negative (all such rows listed); Boundary when tight
    /// somewhere but violated nowhere (all tight rows listed); Interior
    /// otherwise.
    pub fn member(&self, point: &[CycloReal]) -> Membership {
        assert_eq!(point.len(), 2 * self.n);
        let f = self.field();
        let mut active_functionals = Vec::new();
        let mut active_coordinates = Vec::new();
        let mut violated_functionals = Vec::new();
        let mut violated_coordinates = Vec::new();
        for (j, x) in point.iter().enumerate() {
            match f.sign(x) {
                Ordering::Less => violated_coordinates.push(j),
                Ordering::Equal => active_coordinates.push(j),
                Ordering::Greater => {}
            }
        }
        for (i, row) in self.rows.iter().enumerate() {
            match f.sign(&evaluate_row(f, row, point)) {
                Ordering::Greater => violated_functionals.push(i),
                Ordering::Equal => active_functionals.push(i),
                Ordering::Less => {}
            }
        }
        if !violated_functionals.is_empty() || !violated_coordinates.is_empty() {
            Membership::Outside { violated_functionals, violated_coordinates }
        } else if !active_functionals.is_empty() || !active_coordinates.is_empty() {
            Membership::Boundary { active_functionals, active_coordinates }
        } else {
            Membership::Interior
        }
    }

    /// Verdict for functional row `index` against all remaining rows
    /// (functional and coordinate).
    pub fn row_verdict(&self, index: usize) -> RowVerdict {
        let generators: Vec<Vec<CycloReal>> = self
            .rows
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != index)
            .map(|(_, r)| r.clone())
            .collect();
        self.verdict_against(&self.rows[index], generators)
    }

    /// Verdict for an arbitrary extra row against the whole system (all
    /// functional rows plus the coordinate rows). A dominated appended row
    /// comes back `Redundant` with its conic combination.
    pub fn verdict_for_extra_row(&self, row: &[CycloReal]) -> RowVerdict {
        assert_eq!(row.len(), 2 * self.n);
        self.verdict_against(row, self.rows.clone())
    }

    fn verdict_against(&self, target: &[CycloReal], mut generators: Vec<Vec<CycloReal>>) -> RowVerdict {
        generators.extend(coordinate_rows(self.field(), self.n));
        let refs: Vec<&[CycloReal]> = generators.iter().map(|r| r.as_slice()).collect();
        conic_verdict(self.field(), target, &refs)
    }

    /// True when every functional row is irredundant.
    pub fn all_irredundant(&self) -> bool {
        (0..self.rows.len()).all(|i| self.row_verdict(i).is_irredundant())
    }

    /// The primal facet-point LP for functional row `index`: a point on the
    /// row's hyperplane with every other functional row at most -1 and every
    /// coordinate at least 1. Feasible exactly when the row is irredundant
    /// (the cone is full-dimensional), which the tests cross-check against
    /// [`Self::row_verdict`].
    pub fn facet_interior_point(&self, index: usize) -> Option<Vec<CycloReal>> {
        let f = self.field();
        let d = 2 * self.n;
        let mut constraints = Vec::with_capacity(self.rows.len() + d);
        constraints.push(Constraint {
            coeffs: self.rows[index].clone(),
            rel: Relation::Eq,
            rhs: f.zero(),
        });
        for (i, row) in self.rows.iter().enumerate() {
            if i == index {
                continue;
            }
            constraints.push(Constraint {
                coeffs: row.clone(),
                rel: Relation::Le,
                rhs: f.from_int(-1),
            });
        }
        for j in 0..d {
            let mut coeffs = alloc::vec![f.zero(); d];
            coeffs[j] = f.one();
            constraints.push(Constraint { coeffs, rel: Relation::Ge, rhs: f.one() });
        }
        match solve_feasibility(f, &alloc::vec![VarKind::Free; d], &constraints) {
            LpOutcome::Feasible { point } => Some(point),
            LpOutcome::Infeasible { .. } => None,
        }
    }
}

/// Decide whether `target` lies in the conic hull of `generators`; either
/// way the certificate is verified exactly before being returned.
pub fn conic_verdict(
    f: &FieldContext,
    target: &[CycloReal],
    generators: &[&[CycloReal]],
) -> RowVerdict {
    let d = target.len();
    let kinds = alloc::vec![VarKind::NonNeg; generators.len()];
    let constraints: Vec<Constraint> = (0..d)
        .map(|j| Constraint {
            coeffs: generators.iter().map(|g| g[j].clone()).collect(),
            rel: Relation::Eq,
            rhs: target[j].clone(),
        })
        .collect();
    match solve_feasibility(f, &kinds, &constraints) {
        LpOutcome::Feasible { point } => RowVerdict::Redundant { combination: point },
        LpOutcome::Infeasible { farkas } => {
            // farkas . generator >= 0 for all generators and
            // farkas . target < 0, so the negation separates.
            let witness: Vec<CycloReal> = farkas.iter().map(|y| f.neg(y)).collect();
            for g in generators {
                assert_ne!(
                    f.sign(&evaluate_row(f, g, &witness)),
                    Ordering::Greater,
                    "separating point must satisfy every generator row"
                );
            }
            assert_eq!(
                f.sign(&evaluate_row(f, target, &witness)),
                Ordering::Greater,
                "separating point must violate the target row"
            );
            RowVerdict::Irredundant { witness }
        }
    }
}

/// Rank of a list of row vectors over the field, by exact Gaussian
/// elimination.
pub fn rank(f: &FieldContext, rows: &[Vec<CycloReal>]) -> usize {
    let mut work: Vec<Vec<CycloReal>> = rows.to_vec();
    let width = work.first().map(|r| r.len()).unwrap_or(0);
    let mut r = 0;
    for col in 0..width {
        let Some(pivot) = (r..work.len()).find(|&i| !work[i][col].is_zero()) else {
            continue;
        };
        work.swap(r, pivot);
        let pivot_row = work[r].clone();
        let pivot_val = pivot_row[col].clone();
        for row in work.iter_mut().skip(r + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = f.div(&row[col], &pivot_val).expect("nonzero pivot");
            for (entry, p) in row.iter_mut().zip(&pivot_row) {
                *entry = f.sub(entry, &f.mul(&factor, p));
            }
        }
        r += 1;
        if r == work.len() {
            break;
        }
    }
    r
}

// ---------------------------------------------------------------------------
// row utilities shared by projection and extreme rays
// ---------------------------------------------------------------------------

/// Lexicographic structural order on coefficient vectors (used only for
/// deterministic dedup/sort, not as a numeric order).
fn cmp_rows(a: &[CycloReal], b: &[CycloReal]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.coeffs().cmp(y.coeffs()) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// Scale a vector by the inverse of the absolute value of its first nonzero
/// entry, making that entry +1 or -1. Positive scaling only, so inequality
/// direction and ray direction are preserved. Zero vectors pass through.
fn canonical_scale(f: &FieldContext, row: &[CycloReal]) -> Vec<CycloReal> {
    let Some(first) = row.iter().find(|c| !c.is_zero()) else {
        return row.to_vec();
    };
    let scale = f.inv(&f.abs(first)).expect("nonzero entry");
    row.iter().map(|c| f.mul(c, &scale)).collect()
}

fn sort_dedup_rows(mut rows: Vec<Vec<CycloReal>>) -> Vec<Vec<CycloReal>> {
    rows.sort_by(|a, b| cmp_rows(a, b));
    rows.dedup();
    rows
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin projection
// ---------------------------------------------------------------------------

/// Eliminate coordinate `var` from a homogeneous system of rows row.x <= 0,
/// returning rows over the remaining coordinates (in their original order
/// with `var` removed). Combines each positive-coefficient row with each
/// negative-coefficient row, then prunes: zero rows are dropped, rows are
/// scaled canonically and deduplicated, and rows lying in the conic hull of
/// the others are removed (deterministically, by ascending index).
pub fn project_out(f: &FieldContext, rows: &[Vec<CycloReal>], var: usize) -> Vec<Vec<CycloReal>> {
    let width = rows.first().map(|r| r.len()).unwrap_or(0);
    assert!(var < width, "no such coordinate to eliminate");
    let drop_var = |row: &[CycloReal]| -> Vec<CycloReal> {
        row.iter()
            .enumerate()
            .filter(|(j, _)| *j != var)
            .map(|(_, c)| c.clone())
            .collect()
    };
    let mut pos: Vec<&Vec<CycloReal>> = Vec::new();
    let mut neg: Vec<&Vec<CycloReal>> = Vec::new();
    let mut keep: Vec<Vec<CycloReal>> = Vec::new();
    for row in rows {
        assert_eq!(row.len(), width);
        match f.sign(&row[var]) {
            Ordering::Greater => pos.push(row),
            Ordering::Less => neg.push(row),
            Ordering::Equal => keep.push(drop_var(row)),
        }
    }
    for p in &pos {
        for ng in &neg {
            // coefficient of var: p[var] * n[var] + (-n[var]) * p[var] = 0,
            // with both multipliers positive.
            let cp = &p[var];
            let cn = &ng[var];
            let combined: Vec<CycloReal> = p
                .iter()
                .zip(ng.iter())
                .enumerate()
                .filter(|(j, _)| *j != var)
                .map(|(_, (pc, nc))| {
                    f.sub(&f.mul(cp, nc), &f.mul(cn, pc))
                })
                .collect();
            keep.push(combined);
        }
    }
    // Prune: drop zero rows, canonicalize, dedup, then remove conically
    // implied rows one at a time.
    let keep: Vec<Vec<CycloReal>> = keep
        .into_iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .map(|r| canonical_scale(f, &r))
        .collect();
    let mut keep = sort_dedup_rows(keep);
    let mut i = 0;
    while i < keep.len() {
        let others: Vec<&[CycloReal]> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, r)| r.as_slice())
            .collect();
        if others.is_empty() {
            break;
        }
        match conic_verdict(f, &keep[i], &others) {
            RowVerdict::Redundant { .. } => {
                keep.remove(i);
            }
            RowVerdict::Irredundant { .. } => i += 1,
        }
    }
    keep
}

/// Project a homogeneous system onto the coordinates in `keep_coords`
/// (eliminating all others, highest index first so positions stay stable).
/// Returned rows are over the kept coordinates in their original relative
/// order.
pub fn project_to_coords(
    f: &FieldContext,
    rows: &[Vec<CycloReal>],
    keep_coords: &[usize],
) -> Vec<Vec<CycloReal>> {
    let width = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut current: Vec<Vec<CycloReal>> = rows.to_vec();
    let mut dropped: Vec<usize> = (0..width).filter(|j| !keep_coords.contains(j)).collect();
    dropped.sort_unstable();
    for &var in dropped.iter().rev() {
        current = project_out(f, &current, var);
    }
    current
}

// ---------------------------------------------------------------------------
// double description (extreme rays)
// ---------------------------------------------------------------------------

/// Maximum ambient dimension for [`extreme_rays`].
pub const MAX_RAY_DIM: usize = 8;
/// Maximum number of rows for [`extreme_rays`].
pub const MAX_RAY_ROWS: usize = 128;

/// Extreme rays of the pointed cone {x : row.x <= 0 for all rows}, which
/// must include the coordinate rows -x_j <= 0 (so the cone sits inside the
/// nonnegative orthant and is pointed). Double description: start from the
/// orthant's rays, add the remaining rows one at a time, keep satisfying and
/// tight rays, and combine adjacent violating/satisfying pairs. Rays are
/// returned canonically scaled (first nonzero coordinate 1) and sorted.
pub fn extreme_rays(f: &FieldContext, rows: &[Vec<CycloReal>]) -> Vec<Vec<CycloReal>> {
    let d = rows.first().map(|r| r.len()).unwrap_or(0);
    assert!(d > 0 && d <= MAX_RAY_DIM, "dimension out of range for ray enumeration");
    assert!(rows.len() <= MAX_RAY_ROWS, "too many rows for ray enumeration");
    let canonical: Vec<Vec<CycloReal>> = rows.iter().map(|r| canonical_scale(f, r)).collect();
    let mut is_coord_row = alloc::vec![false; rows.len()];
    let mut coords_seen = alloc::vec![false; d];
    for (i, row) in canonical.iter().enumerate() {
        let nonzero: Vec<usize> = (0..d).filter(|&j| !row[j].is_zero()).collect();
        if nonzero.len() == 1 && f.sign(&row[nonzero[0]]) == Ordering::Less {
            is_coord_row[i] = true;
            coords_seen[nonzero[0]] = true;
        }
    }
    assert!(
        coords_seen.iter().all(|&s| s),
        "ray enumeration needs every coordinate row -x_j <= 0 present"
    );

    // Start with the orthant's extreme rays: the standard basis.
    let mut rays: Vec<Vec<CycloReal>> = (0..d)
        .map(|j| {
            let mut r = alloc::vec![f.zero(); d];
            r[j] = f.one();
            r
        })
        .collect();
    // Rows already enforced (the coordinate rows), for tightness masks.
    let mut active: Vec<&Vec<CycloReal>> = canonical
        .iter()
        .enumerate()
        .filter(|(i, _)| is_coord_row[*i])
        .map(|(_, r)| r)
        .collect();

    for (i, row) in canonical.iter().enumerate() {
        if is_coord_row[i] {
            continue;
        }
        let values: Vec<Ordering> = rays
            .iter()
            .map(|r| f.sign(&evaluate_row(f, row, r)))
            .collect();
        let violating: Vec<usize> = (0..rays.len())
            .filter(|&k| values[k] == Ordering::Greater)
            .collect();
        if violating.is_empty() {
            active.push(row);
            continue;
        }
        let keeping: Vec<usize> = (0..rays.len())
            .filter(|&k| values[k] != Ordering::Greater)
            .collect();

        // Tightness masks against the rows active so far plus this one.
        let mut mask_rows: Vec<&Vec<CycloReal>> = active.clone();
        mask_rows.push(row);
        let mask = |ray: &Vec<CycloReal>| -> u128 {
            let mut msk = 0u128;
            for (b, mrow) in mask_rows.iter().enumerate() {
                if evaluate_row(f, mrow, ray).is_zero() {
                    msk |= 1 << b;
                }
            }
            msk
        };
        let masks: Vec<u128> = rays.iter().map(&mask).collect();

        let mut next: Vec<Vec<CycloReal>> = keeping.iter().map(|&k| rays[k].clone()).collect();
        for &p in &violating {
            for &q in &keeping {
                if values[q] != Ordering::Less {
                    continue;
                }
                // Adjacency: no third ray is tight on everything both are
                // tight on (masks computed against rows seen so far).
                let common = masks[p] & masks[q];
                let adjacent = (0..rays.len())
                    .all(|r| r == p || r == q || masks[r] & common != common);
                if !adjacent {
                    continue;
                }
                // Positive combination vanishing on the new row.
                let vp = evaluate_row(f, row, &rays[p]);
                let vq = evaluate_row(f, row, &rays[q]);
                let combined: Vec<CycloReal> = rays[p]
                    .iter()
                    .zip(rays[q].iter())
                    .map(|(pc, qc)| f.sub(&f.mul(&vp, qc), &f.mul(&vq, pc)))
                    .collect();
                debug_assert!(evaluate_row(f, row, &combined).is_zero());
                next.push(canonical_scale(f, &combined));
            }
        }
        rays = sort_dedup_rows(next.into_iter().map(|r| canonical_scale(f, &r)).collect());
        active.push(row);
    }
    sort_dedup_rows(rays)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactreal::big_rat;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn system(m: u32, n: usize) -> ConeSystem {
        let ap = Apartment::new(m).unwrap();
        ConeSystem::new(&ap, n)
    }

    /// Coordinates of the point whose n sides all equal a*e(0) + b*e(1).
    fn uniform_point(f: &FieldContext, n: usize, a: i64, b: i64) -> Vec<CycloReal> {
        let mut p = Vec::with_capacity(2 * n);
        for _ in 0..n {
            p.push(f.from_int(a));
            p.push(f.from_int(b));
        }
        p
    }

    #[test]
    fn functional_row_coefficients() {
        let ap = Apartment::new(3).unwrap();
        let f = ap.field();
        let row = functional_row(&ap, &[0, 4, 4]);
        assert_eq!(row[0], f.cosmul(0));
        assert_eq!(row[1], f.cosmul(-1));
        assert_eq!(row[2], f.cosmul(4));
        assert_eq!(row[3], f.cosmul(3));
        assert_eq!(row.len(), 6);
    }

    #[test]
    fn system_row_order_is_parity_then_lex() {
        let sys = system(3, 3);
        assert_eq!(sys.tuples().len(), 12);
        // Even tuples first, lexicographic; then odd.
        let parities: Vec<u32> = sys.tuples().iter().map(|t| t[0] % 2).collect();
        let split = parities.iter().filter(|&&p| p == 0).count();
        assert!(parities[..split].iter().all(|&p| p == 0));
        assert!(parities[split..].iter().all(|&p| p == 1));
        for w in sys.tuples()[..split].windows(2) {
            assert!(w[0] < w[1]);
        }
        for w in sys.tuples()[split..].windows(2) {
            assert!(w[0] < w[1]);
        }
        assert_eq!(sys.tuples()[0], alloc::vec![0, 4, 4]);
    }

    #[test]
    fn equilateral_boundary_point_saturates_expected_rows() {
        let sys = system(3, 3);
        let f = sys.field();
        // All three sides equal to e(0).
        let p = uniform_point(f, 3, 1, 0);
        let minus_three_half = f.from_rational(BigRational::new(BigInt::from(-3), BigInt::from(2)));
        let mut expect_active = Vec::new();
        for (i, (tuple, value)) in sys.tuples().iter().zip(sys.evaluate_all(&p)).enumerate() {
            let mut sorted = tuple.clone();
            sorted.sort_unstable();
            let expect_zero = sorted == alloc::vec![0, 4, 4] || sorted == alloc::vec![3, 5, 5];
            if expect_zero {
                assert!(value.is_zero(), "tuple {tuple:?} should be tight");
                expect_active.push(i);
            } else {
                assert_eq!(value, minus_three_half, "tuple {tuple:?}");
            }
        }
        assert_eq!(
            sys.member(&p),
            Membership::Boundary {
                active_functionals: expect_active,
                active_coordinates: alloc::vec![1, 3, 5],
            }
        );
    }

    #[test]
    fn interior_point_has_all_rows_strictly_negative() {
        let sys = system(3, 3);
        let f = sys.field();
        let p = uniform_point(f, 3, 1, 1);
        assert!(sys.member(&p).is_interior());
        let minus_three_half = f.from_rational(BigRational::new(BigInt::from(-3), BigInt::from(2)));
        for value in sys.evaluate_all(&p) {
            assert_eq!(value, minus_three_half);
        }
    }

    #[test]
    fn outside_point_detected() {
        let sys = system(3, 3);
        let f = sys.field();
        // One side e(0), the others zero: the (0,4,4) row evaluates to 1.
        let mut p = uniform_point(f, 3, 0, 0);
        p[0] = f.one();
        let Membership::Outside { violated_functionals, violated_coordinates } = sys.member(&p)
        else {
            panic!("single nonzero side cannot close up");
        };
        assert!(violated_coordinates.is_empty());
        // Exactly the rows whose value is positive are reported.
        let positive: Vec<usize> = sys
            .evaluate_all(&p)
            .iter()
            .enumerate()
            .filter(|(_, v)| f.is_positive(v))
            .map(|(i, _)| i)
            .collect();
        assert_eq!(violated_functionals, positive);
        assert!(violated_functionals.contains(&0), "(0,4,4) row must be violated");
        // Negative coordinate: outside regardless of functionals.
        let mut q = uniform_point(f, 3, 1, 1);
        q[3] = f.from_int(-1);
        let Membership::Outside { violated_coordinates, .. } = sys.member(&q) else {
            panic!("negative coordinate is outside");
        };
        assert_eq!(violated_coordinates, alloc::vec![3]);
        // Origin: every row tight.
        assert_eq!(
            sys.member(&uniform_point(f, 3, 0, 0)),
            Membership::Boundary {
                active_functionals: (0..12).collect(),
                active_coordinates: (0..6).collect(),
            }
        );
    }

    #[test]
    fn facet_point_is_boundary_with_single_active_row() {
        let sys = system(3, 3);
        for i in 0..sys.functional_rows().len() {
            let point = sys.facet_interior_point(i).expect("every row is a facet");
            assert_eq!(
                sys.member(&point),
                Membership::Boundary {
                    active_functionals: alloc::vec![i],
                    active_coordinates: alloc::vec![],
                },
                "row {i}"
            );
        }
    }

    #[test]
    fn all_rows_irredundant_m3_triangles() {
        let sys = system(3, 3);
        for i in 0..sys.functional_rows().len() {
            let verdict = sys.row_verdict(i);
            assert!(verdict.is_irredundant(), "row {i} ({:?})", sys.tuples()[i]);
        }
        assert!(sys.all_irredundant());
    }

    #[test]
    fn conic_and_primal_irredundancy_agree_m3() {
        let sys = system(3, 3);
        for i in 0..sys.functional_rows().len() {
            let conic = sys.row_verdict(i).is_irredundant();
            let primal = sys.facet_interior_point(i).is_some();
            assert_eq!(conic, primal, "row {i}");
        }
    }

    #[test]
    fn appended_dominated_row_is_redundant_with_exact_combination() {
        let sys = system(3, 3);
        let f = sys.field();
        let extra = functional_row(sys.apartment(), &[4, 4, 4]);
        let RowVerdict::Redundant { combination } = sys.verdict_for_extra_row(&extra) else {
            panic!("dominated row must be redundant");
        };
        // Reconstruct the target from the combination: functional rows then
        // coordinate rows.
        let mut generators: Vec<Vec<CycloReal>> = sys.functional_rows().to_vec();
        generators.extend(coordinate_rows(f, sys.n()));
        assert_eq!(combination.len(), generators.len());
        for j in 0..extra.len() {
            let mut acc = f.zero();
            for (lambda, g) in combination.iter().zip(&generators) {
                acc = f.add(&acc, &f.mul(lambda, &g[j]));
            }
            assert_eq!(acc, extra[j], "coordinate {j}");
        }
    }

    #[test]
    fn dropping_context_makes_other_rows_redundant_check() {
        // Sanity for the extra-row path: a row already in the system is
        // trivially redundant against the full system.
        let sys = system(3, 3);
        let row = sys.functional_rows()[0].clone();
        assert!(!sys.verdict_for_extra_row(&row).is_irredundant());
    }

    #[test]
    fn projection_drops_bounded_directions_handmade() {
        // Cone {0 <= x <= y <= 2x}: eliminating y leaves x >= 0.
        let f = FieldContext::new(3).unwrap();
        let rows = alloc::vec![
            alloc::vec![f.from_int(-1), f.zero()],
            alloc::vec![f.from_int(1), f.from_int(-1)],
            alloc::vec![f.from_int(-2), f.from_int(1)],
        ];
        let projected = project_out(&f, &rows, 1);
        assert_eq!(projected.len(), 1);
        assert_eq!(projected[0], alloc::vec![f.from_int(-1)]);
    }

    #[test]
    fn projection_pinches_antisymmetric_pair_to_origin_ray() {
        // {x >= 0, y >= 0, x + y <= 0} projected onto x keeps both bounds:
        // x >= 0 and x <= 0.
        let f = FieldContext::new(3).unwrap();
        let rows = alloc::vec![
            alloc::vec![f.from_int(-1), f.zero()],
            alloc::vec![f.zero(), f.from_int(-1)],
            alloc::vec![f.one(), f.one()],
        ];
        let projected = project_out(&f, &rows, 1);
        let expected = sort_dedup_rows(alloc::vec![
            alloc::vec![f.from_int(-1)],
            alloc::vec![f.one()],
        ]);
        assert_eq!(projected, expected);
    }

    #[test]
    fn projection_keeping_every_coordinate_is_identity() {
        let sys = system(3, 2);
        let f = sys.field();
        let rows = sys.all_rows();
        let projected = project_to_coords(f, &rows, &[0, 1, 2, 3]);
        assert_eq!(projected, rows);
    }

    #[test]
    fn pair_system_projects_to_quadrant() {
        // Any single side value extends to a closed pair, so projecting the
        // pair cone onto the first side's coordinates gives the quadrant.
        let sys = system(3, 2);
        let f = sys.field();
        let projected = project_to_coords(f, &sys.all_rows(), &[0, 1]);
        let expected = alloc::vec![
            alloc::vec![f.from_int(-1), f.zero()],
            alloc::vec![f.zero(), f.from_int(-1)],
        ];
        assert_eq!(sort_dedup_rows(projected), sort_dedup_rows(expected));
    }

    #[test]
    fn pair_cone_has_exactly_two_extreme_rays() {
        let sys = system(3, 2);
        let f = sys.field();
        let rays = extreme_rays(f, &sys.all_rows());
        let expected = sort_dedup_rows(alloc::vec![
            alloc::vec![f.one(), f.zero(), f.zero(), f.one()],
            alloc::vec![f.zero(), f.one(), f.one(), f.zero()],
        ]);
        assert_eq!(rays, expected);
    }

    #[test]
    fn orthant_rays_are_the_basis() {
        let f = FieldContext::new(5).unwrap();
        let rows = coordinate_rows(&f, 2);
        let rays = extreme_rays(&f, &rows);
        assert_eq!(rays.len(), 4);
        for ray in &rays {
            assert_eq!(ray.iter().filter(|c| !c.is_zero()).count(), 1);
        }
    }

    #[test]
    fn halfspace_cut_removes_one_ray() {
        let f = FieldContext::new(3).unwrap();
        let mut rows = coordinate_rows(&f, 1); // -x1 <= 0, -x2 <= 0
        rows.push(alloc::vec![f.one(), f.from_int(-1)]); // x1 <= x2
        let rays = extreme_rays(&f, &rows);
        // Quadrant cut by x1 <= x2: rays (0,1) and (1,1).
        let expected = sort_dedup_rows(alloc::vec![
            alloc::vec![f.zero(), f.one()],
            alloc::vec![f.one(), f.one()],
        ]);
        assert_eq!(rays, expected);
    }

    #[test]
    fn extreme_rays_satisfy_all_rows_and_are_tight_enough() {
        // Every returned ray of the triangle cone satisfies the full system
        // and saturates at least dim-1 independent rows (extremality is
        // implied by the double-description construction; spot-check
        // feasibility and nontriviality here).
        let sys = system(3, 2);
        let f = sys.field();
        let rows = sys.all_rows();
        for ray in extreme_rays(f, &rows) {
            assert!(ray.iter().any(|c| !c.is_zero()));
            for row in &rows {
                assert_ne!(
                    f.sign(&evaluate_row(f, row, &ray)),
                    Ordering::Greater,
                    "ray violates a row"
                );
            }
        }
    }

    #[test]
    fn triangle_cone_rays_are_one_dimensional_faces() {
        // Every extreme ray of the triangle cone satisfies the system, sits
        // on the boundary, and saturates rows of rank dim - 1.
        let sys = system(3, 3);
        let f = sys.field();
        let rows = sys.all_rows();
        let rays = extreme_rays(f, &rows);
        assert!(!rays.is_empty());
        for ray in &rays {
            assert!(sys.member(ray).is_boundary());
            let tight: Vec<Vec<CycloReal>> = rows
                .iter()
                .filter(|row| evaluate_row(f, row, ray).is_zero())
                .cloned()
                .collect();
            assert!(tight.len() >= 5);
            assert_eq!(rank(f, &tight), 5, "ray {ray:?}");
        }
    }

    #[test]
    fn canonical_scale_normalizes_leading_entry() {
        let f = FieldContext::new(5).unwrap();
        let g = f.generator();
        let row = alloc::vec![f.zero(), f.neg(&g), f.one()];
        let scaled = canonical_scale(&f, &row);
        assert_eq!(scaled[1], f.from_int(-1));
        // Rescaling is idempotent.
        assert_eq!(canonical_scale(&f, &scaled), scaled);
        // Positive scaling only: sign pattern preserved.
        assert_eq!(f.sign(&scaled[2]), Ordering::Greater);
        let zero_row = alloc::vec![f.zero(), f.zero()];
        assert_eq!(canonical_scale(&f, &zero_row), zero_row);
        let _ = big_rat(1);
    }
}
