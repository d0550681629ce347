//! Independent oracles that cross-check the exact inequality system.
//!
//! Three kinds of evidence, none of which reuses the exact cone machinery it
//! is checking:
//!
//! * [`hermitian_sample`] draws random traceless Hermitian 3x3 pairs (A, B),
//!   takes sorted spectra of A, B and -(A+B) with floating-point eigensolves,
//!   and [`check_triples`] evaluates float shadows of every defining row on
//!   the resulting side-length triples. Genuine members of the cone must
//!   never violate a row beyond solver noise.
//! * [`apartment_sample`] builds random closed polygons with rational
//!   vertices directly in the model plane and verifies membership exactly.
//! * [`facet_witness`] constructs, for one defining row, an explicit closed
//!   polygon whose side-length vector saturates exactly that row, proving
//!   the row touches the cone it bounds.

use nalgebra::Matrix6;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::cmp::Ordering;
use std::fmt;

use weylcone_core::cone::{evaluate_row, ConeSystem, Membership};
use weylcone_core::coxeter::{Vec2, WeylElement};
use weylcone_core::exactreal::CycloReal;
use weylcone_core::functionals::{tuple_parity, wall_partition_witness};

/// Errors from oracle construction or input validation.
#[derive(Clone, Debug, PartialEq)]
pub enum OracleError {
    /// A spectrum handed to [`spectrum_to_delta`] was not sorted descending.
    UnsortedSpectrum { spectrum: [f64; 3] },
    /// The tuple admits no disjoint wall-set cover, so it does not define a
    /// row of the canonical system and no saturating polygon is built.
    NoWallPartition { tuple: Vec<u32> },
    /// No pair of positions admits carrier elements with antipodal chambers,
    /// so the two-long-sides closure scheme does not apply.
    NoAntipodalPair { tuple: Vec<u32> },
    /// Doubling the long-side scale never placed the balancing side strictly
    /// inside its chamber.
    ScaleOverflow { tuple: Vec<u32> },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::UnsortedSpectrum { spectrum } => {
                write!(f, "spectrum {spectrum:?} is not sorted in descending order")
            }
            OracleError::NoWallPartition { tuple } => {
                write!(f, "tuple {tuple:?} admits no disjoint wall-set cover")
            }
            OracleError::NoAntipodalPair { tuple } => {
                write!(f, "tuple {tuple:?} has no carrier pair with antipodal chambers")
            }
            OracleError::ScaleOverflow { tuple } => {
                write!(f, "closure scale overflow while balancing tuple {tuple:?}")
            }
        }
    }
}

impl std::error::Error for OracleError {}

/// Sorted descending spectra of a random traceless Hermitian pair (A, B)
/// and of C = -(A+B). All three sum to (numerical) zero.
#[derive(Clone, Copy, Debug)]
pub struct SpectralTriple {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub c: [f64; 3],
}

/// One Hermitian 3x3 matrix as separate real and imaginary parts
/// (`re` symmetric, `im` antisymmetric).
#[derive(Clone, Copy, Debug)]
struct Hermitian {
    re: [[f64; 3]; 3],
    im: [[f64; 3]; 3],
}

impl Hermitian {
    fn random(rng: &mut ChaCha8Rng) -> Hermitian {
        let mut re = [[0.0; 3]; 3];
        let mut im = [[0.0; 3]; 3];
        for (i, row) in re.iter_mut().enumerate() {
            row[i] = rng.sample::<f64, _>(StandardNormal);
        }
        let third = (re[0][0] + re[1][1] + re[2][2]) / 3.0;
        for (i, row) in re.iter_mut().enumerate() {
            row[i] -= third;
        }
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let x = rng.sample::<f64, _>(StandardNormal);
            let y = rng.sample::<f64, _>(StandardNormal);
            re[i][j] = x;
            re[j][i] = x;
            im[i][j] = y;
            im[j][i] = -y;
        }
        Hermitian { re, im }
    }

    fn neg_sum(&self, other: &Hermitian) -> Hermitian {
        let mut re = [[0.0; 3]; 3];
        let mut im = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                re[i][j] = -(self.re[i][j] + other.re[i][j]);
                im[i][j] = -(self.im[i][j] + other.im[i][j]);
            }
        }
        Hermitian { re, im }
    }

    /// Sorted (descending) eigenvalues via the real 6x6 embedding
    /// [[Re, -Im], [Im, Re]], in which every eigenvalue appears twice.
    fn spectrum(&self) -> [f64; 3] {
        let mut m = Matrix6::<f64>::zeros();
        for i in 0..3 {
            for j in 0..3 {
                m[(i, j)] = self.re[i][j];
                m[(i + 3, j + 3)] = self.re[i][j];
                m[(i, j + 3)] = -self.im[i][j];
                m[(i + 3, j)] = self.im[i][j];
            }
        }
        let eigen = m.symmetric_eigen();
        let mut vals = [0.0f64; 6];
        for (slot, v) in vals.iter_mut().zip(eigen.eigenvalues.iter()) {
            *slot = *v;
        }
        vals.sort_by(|x, y| y.partial_cmp(x).unwrap_or(Ordering::Equal));
        [vals[0], vals[2], vals[4]]
    }
}

/// Draw `count` random traceless Hermitian pairs and return the sorted
/// spectra of A, B and -(A+B). Deterministic for a fixed seed.
pub fn hermitian_sample(seed: u64, count: usize) -> Vec<SpectralTriple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a = Hermitian::random(&mut rng);
            let b = Hermitian::random(&mut rng);
            let c = a.neg_sum(&b);
            SpectralTriple { a: a.spectrum(), b: b.spectrum(), c: c.spectrum() }
        })
        .collect()
}

/// Spectra of a commuting pair given by aligned diagonals (in any order):
/// C's diagonal is the negated elementwise sum, and all three spectra are
/// then sorted descending.
pub fn commuting_triple(a_diag: [f64; 3], b_diag: [f64; 3]) -> SpectralTriple {
    let desc = |mut s: [f64; 3]| {
        s.sort_by(|x, y| y.partial_cmp(x).unwrap_or(Ordering::Equal));
        s
    };
    let c_diag = [
        -(a_diag[0] + b_diag[0]),
        -(a_diag[1] + b_diag[1]),
        -(a_diag[2] + b_diag[2]),
    ];
    SpectralTriple { a: desc(a_diag), b: desc(b_diag), c: desc(c_diag) }
}

fn check_sorted(spectrum: &[f64; 3]) -> Result<(), OracleError> {
    if spectrum[0] < spectrum[1] || spectrum[1] < spectrum[2] {
        return Err(OracleError::UnsortedSpectrum { spectrum: *spectrum });
    }
    Ok(())
}

/// Side-length coordinates of a sorted spectrum:
/// (l1 - l2, l2 - l3) scaled by sqrt(2/3).
pub fn spectrum_to_delta(spectrum: &[f64; 3]) -> Result<[f64; 2], OracleError> {
    check_sorted(spectrum)?;
    let s = (2.0f64 / 3.0).sqrt();
    Ok([(spectrum[0] - spectrum[1]) * s, (spectrum[1] - spectrum[2]) * s])
}

/// The six side-length coordinates of one spectral triple, in system order.
pub fn triple_point(triple: &SpectralTriple) -> Result<[f64; 6], OracleError> {
    let da = spectrum_to_delta(&triple.a)?;
    let db = spectrum_to_delta(&triple.b)?;
    let dc = spectrum_to_delta(&triple.c)?;
    Ok([da[0], da[1], db[0], db[1], dc[0], dc[1]])
}

/// Float shadows of the system's defining rows (functional rows only).
pub fn float_rows(system: &ConeSystem) -> Vec<Vec<f64>> {
    let f = system.field();
    system
        .functional_rows()
        .iter()
        .map(|row| row.iter().map(|c| f.approx_f64(c)).collect())
        .collect()
}

fn float_value(row: &[f64], point: &[f64]) -> f64 {
    row.iter().zip(point.iter()).map(|(c, x)| c * x).sum()
}

/// One row value that exceeded the tolerance on one sample.
#[derive(Clone, Copy, Debug)]
pub struct Violation {
    pub sample: usize,
    pub row: usize,
    pub value: f64,
}

/// Outcome of checking spectral triples against the float shadow of the
/// system: violation list plus, per row, the largest value seen (how close
/// any sample came to saturating that row from below).
#[derive(Clone, Debug)]
pub struct SampleReport {
    pub count: usize,
    pub tolerance: f64,
    pub violations: Vec<Violation>,
    pub worst_by_row: Vec<f64>,
}

impl SampleReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluate every defining row (float shadow) on every spectral triple.
/// The system must be the triangle system at m = 3.
pub fn check_triples(
    system: &ConeSystem,
    triples: &[SpectralTriple],
    tolerance: f64,
) -> Result<SampleReport, OracleError> {
    assert_eq!(system.m(), 3, "spectral triples live over the m = 3 system");
    assert_eq!(system.n(), 3, "spectral triples have three sides");
    let rows = float_rows(system);
    let mut violations = Vec::new();
    let mut worst_by_row = vec![f64::NEG_INFINITY; rows.len()];
    for (sample, triple) in triples.iter().enumerate() {
        let point = triple_point(triple)?;
        for (row_index, row) in rows.iter().enumerate() {
            let value = float_value(row, &point);
            if value > worst_by_row[row_index] {
                worst_by_row[row_index] = value;
            }
            if value > tolerance {
                violations.push(Violation { sample, row: row_index, value });
            }
        }
    }
    Ok(SampleReport { count: triples.len(), tolerance, violations, worst_by_row })
}

/// One random polygon that landed outside the cone (must never happen).
#[derive(Clone, Debug)]
pub struct ApartmentViolation {
    pub sample: usize,
    pub violated_functionals: Vec<usize>,
    pub violated_coordinates: Vec<usize>,
}

/// Outcome of the exact random-polygon check.
#[derive(Clone, Debug)]
pub struct ApartmentReport {
    pub count: usize,
    /// Samples whose side-length vector sat on the cone's boundary
    /// (degenerate or wall-aligned sides).
    pub boundary_hits: usize,
    pub violations: Vec<ApartmentViolation>,
}

impl ApartmentReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num = rng.gen_range(-12i64..=12);
    let den = rng.gen_range(1i64..=8);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Draw `count` random closed polygons with rational vertices in the model
/// plane and check their side-length vectors against the system exactly.
/// Closure is by construction (sides are consecutive vertex differences,
/// cyclically), so every sample must be a member.
pub fn apartment_sample(system: &ConeSystem, seed: u64, count: usize) -> ApartmentReport {
    let ap = system.apartment();
    let f = system.field();
    let n = system.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut boundary_hits = 0usize;
    let mut violations = Vec::new();
    for sample in 0..count {
        let vertices: Vec<Vec2> = (0..n)
            .map(|_| Vec2 {
                x: f.from_rational(random_rational(&mut rng)),
                y: f.from_rational(random_rational(&mut rng)),
            })
            .collect();
        let mut point: Vec<CycloReal> = Vec::with_capacity(2 * n);
        for i in 0..n {
            let side = ap.vec_sub(&vertices[(i + 1) % n], &vertices[i]);
            let rep = ap.chamber_representative(&side).0;
            point.push(rep.x);
            point.push(rep.y);
        }
        match system.member(&point) {
            Membership::Interior => {}
            Membership::Boundary { .. } => boundary_hits += 1,
            Membership::Outside { violated_functionals, violated_coordinates } => {
                violations.push(ApartmentViolation {
                    sample,
                    violated_functionals,
                    violated_coordinates,
                });
            }
        }
    }
    ApartmentReport { count, boundary_hits, violations }
}

/// A closed polygon saturating exactly the requested defining row: vertices
/// (starting at the origin), its sides, the group element placing each
/// side's chamber, and the side-length vector, which the constructor has
/// verified to be a boundary member with the target row's value exactly 0.
#[derive(Clone, Debug)]
pub struct FacetWitness {
    pub vertices: Vec<Vec2>,
    pub sides: Vec<Vec2>,
    pub elements: Vec<WeylElement>,
    pub point: Vec<CycloReal>,
}

/// Strictly-positive integer chamber coordinates used for the free
/// positions; any interior values work, varied to avoid accidental
/// alignments.
const GENERIC_COORDS: [(i64, i64); 8] =
    [(2, 3), (3, 5), (5, 7), (7, 11), (4, 9), (9, 4), (6, 13), (13, 6)];

fn generic_delta(i: usize) -> (i64, i64) {
    if i < GENERIC_COORDS.len() {
        GENERIC_COORDS[i]
    } else {
        (i as i64 + 2, 2 * i as i64 + 5)
    }
}

/// Build a closed polygon whose side-length vector saturates the defining
/// row at `index` and lies in the cone, witnessing that the row supports an
/// actual face.
///
/// Each side i is placed in the open chamber cone of a group element
/// carrying the tuple's direction at position i to the base direction, so
/// the row's value telescopes to the pairing of the base direction with the
/// side sum — exactly 0 on a closed polygon. Two positions with antipodal
/// carrier chambers absorb the closure: one side is a long interior
/// direction t·d, the other is -t·d - (sum of the remaining sides), with t
/// doubled until the balancing side is strictly inside its chamber.
pub fn facet_witness(system: &ConeSystem, index: usize) -> Result<FacetWitness, OracleError> {
    let ap = system.apartment();
    let group = ap.group();
    let f = ap.field();
    let tuple = &system.tuples()[index];
    let n = tuple.len();
    let eta = tuple_parity(tuple).ok_or_else(|| OracleError::NoWallPartition {
        tuple: tuple.clone(),
    })?;
    let base = wall_partition_witness(group, tuple)
        .ok_or_else(|| OracleError::NoWallPartition { tuple: tuple.clone() })?;

    // Both carriers of each position's direction to the base direction,
    // base (wall-partition) choice first.
    let candidates: Vec<[WeylElement; 2]> = tuple
        .iter()
        .zip(base.iter())
        .map(|(&d, &w)| {
            let other = group
                .elements()
                .into_iter()
                .find(|&g| g != w && group.apply(g, d) == eta)
                .expect("each direction has a rotation and a reflection carrier");
            [w, other]
        })
        .collect();

    // First position pair (lexicographic, base choices preferred) whose
    // carrier chambers are antipodal.
    let mut placed: Option<(usize, usize, WeylElement, WeylElement)> = None;
    'outer: for j in 0..n {
        for jp in 0..n {
            if jp == j {
                continue;
            }
            for &u in &candidates[j] {
                for &v in &candidates[jp] {
                    if group.chamber(v) == group.antipodal_chamber(group.chamber(u)) {
                        placed = Some((j, jp, u, v));
                        break 'outer;
                    }
                }
            }
        }
    }
    let (j, jp, uj, ujp) =
        placed.ok_or_else(|| OracleError::NoAntipodalPair { tuple: tuple.clone() })?;

    let mut elements: Vec<WeylElement> = base;
    elements[j] = uj;
    elements[jp] = ujp;

    // Fixed generic sides at all other positions, and their sum.
    let mut sides: Vec<Vec2> = vec![ap.vec_zero(); n];
    let mut rest_sum = ap.vec_zero();
    for (i, side) in sides.iter_mut().enumerate() {
        if i == j || i == jp {
            continue;
        }
        let (a, b) = generic_delta(i);
        let delta = Vec2 { x: f.from_int(a), y: f.from_int(b) };
        *side = ap.apply_weyl(elements[i], &delta);
        rest_sum = ap.vec_add(&rest_sum, side);
    }

    // Long side t·d against balancing side -t·d - rest_sum, t doubled until
    // the balancing side is strictly inside its carrier's chamber.
    let interior = Vec2 { x: f.one(), y: f.one() };
    let direction = ap.apply_weyl(uj, &interior);
    let inv_jp = group.inverse(ujp);
    let mut t = BigRational::from(BigInt::from(1));
    let mut done = false;
    for _ in 0..64 {
        let long = ap.vec_scale_rat(&t, &direction);
        let balance = ap.vec_neg(&ap.vec_add(&long, &rest_sum));
        let pulled = ap.apply_weyl(inv_jp, &balance);
        if f.is_positive(&pulled.x) && f.is_positive(&pulled.y) {
            sides[j] = long;
            sides[jp] = balance;
            done = true;
            break;
        }
        t *= BigRational::from(BigInt::from(2));
    }
    if !done {
        return Err(OracleError::ScaleOverflow { tuple: tuple.clone() });
    }

    // Vertices by prefix sums; the final sum returns to the origin exactly.
    let mut vertices: Vec<Vec2> = Vec::with_capacity(n);
    let mut acc = ap.vec_zero();
    for side in &sides {
        vertices.push(acc.clone());
        acc = ap.vec_add(&acc, side);
    }
    assert!(ap.vec_is_zero(&acc), "witness polygon must close");

    let mut point: Vec<CycloReal> = Vec::with_capacity(2 * n);
    for side in &sides {
        let rep = ap.chamber_representative(side).0;
        point.push(rep.x);
        point.push(rep.y);
    }

    let value = evaluate_row(f, &system.functional_rows()[index], &point);
    assert!(value.is_zero(), "witness must saturate its row exactly");
    match system.member(&point) {
        Membership::Boundary { active_functionals, .. } => {
            assert!(
                active_functionals.contains(&index),
                "target row must be active on the witness"
            );
        }
        other => panic!("witness must be a boundary member, got {other:?}"),
    }

    Ok(FacetWitness { vertices, sides, elements, point })
}
