//! Direction tuples and the wall-cover combinatorics that select the
//! inequality system.
//!
//! To a tuple (d_1, ..., d_n) of direction indices of equal parity one
//! attaches the linear functional summing, over positions, the inner product
//! of the i-th side length with the unit vector e(d_i). The inequalities
//! "functional <= 0" that cut out the cone of closed-polygon side lengths are
//! indexed by the tuples admitting a *wall cover*: an assignment of one group
//! element per position, each carrying that position's direction to the base
//! direction (0 or 1, the tuple's parity), whose matched-wall sets partition
//! the full wall set of the base direction.
//!
//! Everything in this module is integer combinatorics over the dihedral
//! group; no field arithmetic is needed. Wall sets are bitmasks over the m
//! wall indices. Two facts give the enumeration its shape:
//!
//! - the matched-wall set of a group element depends only on its chamber, is
//!   empty exactly when that chamber touches the direction opposite the base,
//!   and is the full wall set exactly when the chamber touches the base;
//! - listed in the angular order starting just after the base direction's own
//!   wall, every matched-wall set is a prefix or a suffix, so any pairwise
//!   disjoint family has at most one nonempty prefix and one nonempty suffix.
//!
//! Consequently every admissible tuple arises from an ordered pair of
//! positions carrying a chamber and its antipode (their matched sets always
//! split the wall set in two), with all remaining positions assigned chambers
//! touching the opposite of the base direction. That closed form is
//! [`enumerate_tuples_direct`]; the definition-driven filter over all
//! equal-parity tuples is [`enumerate_tuples_filtered`]; their agreement is a
//! theorem that the test suite checks exhaustively for small m and n.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::coxeter::{DihedralGroup, WeylElement};

/// Largest m for which wall sets fit the u128 bitmask representation.
pub const MAX_WALL_ORDER: u32 = 120;

/// Parity shared by all entries of a tuple, if any: the base direction the
/// wall-cover machinery works against.
pub fn tuple_parity(tuple: &[u32]) -> Option<u32> {
    let first = *tuple.first()?;
    let p = first % 2;
    if tuple.iter().all(|&d| d % 2 == p) {
        Some(p)
    } else {
        None
    }
}

/// Fold a direction index onto 0..=m: the angular distance to direction 0 in
/// units of pi/m. cos(t pi/m) is strictly decreasing in `fold_index(t)`, so
/// cosine comparisons reduce to integer comparisons.
pub fn fold_index(group: &DihedralGroup, t: i64) -> u32 {
    let r = group.normalize_dir(t);
    r.min(2 * group.m() - r)
}

/// True when the functional of tuple `s` is at least the functional of tuple
/// `t` at every point of the fundamental-chamber power (same length, equal
/// parity positions compared via folded cosines at both extreme rays).
pub fn dominates_pointwise(group: &DihedralGroup, s: &[u32], t: &[u32]) -> bool {
    s.len() == t.len()
        && s.iter().zip(t).all(|(&a, &b)| {
            fold_index(group, a as i64) <= fold_index(group, b as i64)
                && fold_index(group, a as i64 - 1) <= fold_index(group, b as i64 - 1)
        })
}

/// Precomputed wall-set tables for one parity class.
struct ParityTables {
    eta: u32,
    /// Bitmask of the full wall set of the base direction (all walls not
    /// through it).
    full: u128,
    /// Matched-wall set of any element whose chamber is c, indexed by c.
    chamber_mask: Vec<u128>,
    /// For each direction value d of this parity, the two elements carrying
    /// d to the base direction (rotation first), with their matched sets.
    candidates: Vec<[(WeylElement, u128); 2]>,
}

impl ParityTables {
    fn new(group: &DihedralGroup, eta: u32) -> ParityTables {
        let m = group.m();
        assert!(m <= MAX_WALL_ORDER, "wall sets are limited to m <= {MAX_WALL_ORDER}");
        debug_assert!(eta < 2);
        let mut full: u128 = 0;
        for j in 0..m {
            if j % m != eta % m {
                full |= 1 << j;
            }
        }
        let chamber_mask: Vec<u128> = (0..2 * m)
            .map(|c| {
                let mut mask = 0u128;
                for j in 0..m {
                    if j % m == eta % m {
                        continue;
                    }
                    if group.side_of_wall(eta, j) == group.chamber_side(c, j) {
                        mask |= 1 << j;
                    }
                }
                mask
            })
            .collect();
        let candidates: Vec<[(WeylElement, u128); 2]> = (0..2 * m)
            .map(|d| {
                if d % 2 != eta {
                    // Unused slot for off-parity directions.
                    let id = WeylElement::identity();
                    return [(id, 0), (id, 0)];
                }
                let mut found: Vec<(WeylElement, u128)> = Vec::with_capacity(2);
                for w in group.elements() {
                    if group.apply(w, d) == eta {
                        found.push((w, chamber_mask[group.chamber(w) as usize]));
                    }
                }
                assert_eq!(found.len(), 2, "exactly one rotation and one reflection qualify");
                [found[0], found[1]]
            })
            .collect();
        ParityTables { eta, full, chamber_mask, candidates }
    }

    /// The direction value sent to the base direction by the inverse of the
    /// chamber-c element.
    fn base_preimage(&self, group: &DihedralGroup, c: u32) -> u32 {
        group.apply(group.inverse(group.chamber_element(c)), self.eta)
    }
}

/// Witness that a tuple's inequality belongs to the defining system: one
/// group element per position, each carrying that position's direction to
/// the base direction, whose matched-wall sets are pairwise disjoint and
/// cover the full wall set. `None` for mixed-parity tuples and for tuples
/// admitting no such cover.
///
/// Deterministic: positions are resolved left to right, trying the rotation
/// candidate before the reflection.
pub fn wall_partition_witness(
    group: &DihedralGroup,
    tuple: &[u32],
) -> Option<Vec<WeylElement>> {
    let eta = tuple_parity(tuple)?;
    let tables = ParityTables::new(group, eta);
    let cands: Vec<&[(WeylElement, u128); 2]> = tuple
        .iter()
        .map(|&d| &tables.candidates[d as usize])
        .collect();
    let mut chosen: Vec<WeylElement> = Vec::with_capacity(tuple.len());
    if search_cover(&cands, 0, 0, tables.full, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

/// Depth-first search over per-position candidates keeping masks pairwise
/// disjoint, demanding the union equal `full` at the end.
fn search_cover(
    cands: &[&[(WeylElement, u128); 2]],
    pos: usize,
    acc: u128,
    full: u128,
    chosen: &mut Vec<WeylElement>,
) -> bool {
    if pos == cands.len() {
        return acc == full;
    }
    for &(w, mask) in cands[pos].iter() {
        if acc & mask != 0 {
            continue;
        }
        chosen.push(w);
        if search_cover(cands, pos + 1, acc | mask, full, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Check a claimed wall cover: per-position carrying property, pairwise
/// disjointness, and full union.
pub fn verify_wall_partition(
    group: &DihedralGroup,
    tuple: &[u32],
    witness: &[WeylElement],
) -> bool {
    let Some(eta) = tuple_parity(tuple) else { return false };
    if witness.len() != tuple.len() {
        return false;
    }
    let tables = ParityTables::new(group, eta);
    let mut acc: u128 = 0;
    for (&d, &w) in tuple.iter().zip(witness) {
        if group.apply(w, d) != eta {
            return false;
        }
        let mask = tables.chamber_mask[group.chamber(w) as usize];
        if acc & mask != 0 {
            return false;
        }
        acc |= mask;
    }
    acc == tables.full
}

/// All admissible tuples of length n, by filtering every equal-parity tuple
/// through the wall-cover search. Exponential in n (grid of size 2 m^n); the
/// reference route used to validate [`enumerate_tuples_direct`].
pub fn enumerate_tuples_filtered(group: &DihedralGroup, n: usize) -> BTreeSet<Vec<u32>> {
    assert!(n >= 2, "tuples need at least two positions");
    let m = group.m();
    let mut out = BTreeSet::new();
    for eta in 0..2u32 {
        let tables = ParityTables::new(group, eta);
        // Odometer over {eta, eta+2, ..., eta+2(m-1)}^n.
        let mut idx = alloc::vec![0u32; n];
        loop {
            let tuple: Vec<u32> = idx.iter().map(|&i| eta + 2 * i).collect();
            let cands: Vec<&[(WeylElement, u128); 2]> = tuple
                .iter()
                .map(|&d| &tables.candidates[d as usize])
                .collect();
            let mut chosen = Vec::with_capacity(n);
            if search_cover(&cands, 0, 0, tables.full, &mut chosen) {
                out.insert(tuple);
            }
            // Advance the odometer.
            let mut pos = 0;
            loop {
                if pos == n {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < m {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
    }
    out
}

/// All admissible tuples of length n by the closed-form construction: an
/// ordered pair of positions receives a chamber and its antipode (whose
/// matched-wall sets always split the full wall set), every other position a
/// chamber touching the opposite of the base direction (matched set empty).
pub fn enumerate_tuples_direct(group: &DihedralGroup, n: usize) -> BTreeSet<Vec<u32>> {
    assert!(n >= 2, "tuples need at least two positions");
    let m = group.m();
    let order = 2 * m;
    let mut out = BTreeSet::new();
    for eta in 0..2u32 {
        let tables = ParityTables::new(group, eta);
        // Both chambers touching the opposite direction yield the same
        // preimage value for the filler positions.
        let opp1 = (eta + m - 1) % order;
        let opp2 = (eta + m) % order;
        let filler = tables.base_preimage(group, opp1);
        debug_assert_eq!(filler, tables.base_preimage(group, opp2));
        debug_assert_eq!(tables.chamber_mask[opp1 as usize], 0);
        for j in 0..n {
            for j2 in 0..n {
                if j == j2 {
                    continue;
                }
                for c in 0..order {
                    let mut tuple = alloc::vec![filler; n];
                    tuple[j] = tables.base_preimage(group, c);
                    tuple[j2] = tables.base_preimage(group, (c + m) % order);
                    out.insert(tuple);
                }
            }
        }
    }
    out
}

/// For a tuple whose inequality holds on the cone but is not itself
/// admissible, produce an admissible tuple whose functional dominates it
/// pointwise on the fundamental-chamber power (so the given inequality is
/// implied). Returns the tuple itself when it is already admissible, and
/// `None` when the tuple has mixed parity or admits no pairwise-disjoint
/// assignment at all (in which case its inequality is not part of the
/// implied family).
///
/// Search: over assignments with pairwise disjoint matched sets; disjointness
/// confines the nonempty sets to at most two positions, and replacing the
/// direction at one of them by the antipodal-chamber preimage completes the
/// cover. The first candidate (in a fixed deterministic order) that is
/// admissible and dominates is returned.
pub fn dominating_tuple(group: &DihedralGroup, tuple: &[u32]) -> Option<Vec<u32>> {
    let eta = tuple_parity(tuple)?;
    if wall_partition_witness(group, tuple).is_some() {
        return Some(tuple.to_vec());
    }
    let n = tuple.len();
    let tables = ParityTables::new(group, eta);
    let cands: Vec<&[(WeylElement, u128); 2]> = tuple
        .iter()
        .map(|&d| &tables.candidates[d as usize])
        .collect();
    // Enumerate pairwise-disjoint assignments (union not required) in the
    // same deterministic order as the cover search.
    let mut stack: Vec<(Vec<WeylElement>, u128)> = alloc::vec![(Vec::new(), 0u128)];
    let mut assignments: Vec<Vec<WeylElement>> = Vec::new();
    while let Some((chosen, acc)) = stack.pop() {
        if chosen.len() == n {
            assignments.push(chosen);
            continue;
        }
        // Push in reverse so the rotation candidate is explored first.
        for &(w, mask) in cands[chosen.len()].iter().rev() {
            if acc & mask != 0 {
                continue;
            }
            let mut next = chosen.clone();
            next.push(w);
            stack.push((next, acc | mask));
        }
    }
    for assignment in &assignments {
        for j in 0..n {
            for j2 in 0..n {
                if j == j2 {
                    continue;
                }
                // Positions outside the pair must contribute nothing.
                let outside_empty = (0..n).all(|i| {
                    i == j
                        || i == j2
                        || tables.chamber_mask[group.chamber(assignment[i]) as usize] == 0
                });
                if !outside_empty {
                    continue;
                }
                let cj = group.chamber(assignment[j]);
                let replaced = tables.base_preimage(group, (cj + group.m()) % (2 * group.m()));
                let mut candidate = tuple.to_vec();
                candidate[j2] = replaced;
                if dominates_pointwise(group, &candidate, tuple)
                    && wall_partition_witness(group, &candidate).is_some()
                {
                    return Some(candidate);
                }
            }
        }
    }
    None
}

/// The common direction value taken by filler positions (those whose matched
/// set is empty) for the given parity: the preimage of the base direction
/// under the chambers touching its opposite.
pub fn filler_direction(group: &DihedralGroup, eta: u32) -> u32 {
    let tables = ParityTables::new(group, eta % 2);
    tables.base_preimage(group, (eta % 2 + group.m() - 1) % (2 * group.m()))
}
