//! Polygons and billiard paths in the model plane: side-length data, the
//! opening construction, folding onto the fundamental chamber, and
//! straightening of billiard paths.
//!
//! The model is the Euclidean plane acted on by the dihedral group together
//! with *all* translations, so every point's stabilizer direction-group is
//! the full dihedral group. A closed polygon is a cyclic vertex list; its
//! side data is the tuple of fundamental-chamber values of the side vectors.
//! Opening lays side data down in the plane, twisting by per-vertex
//! transition elements; folding maps a straight path to its accordion image
//! in the closed fundamental chamber; straightening turns a billiard path
//! (consecutive segments whose directions agree up to the group action) into
//! a single straight segment via pointwise-fixing affine isometries.

use alloc::vec::Vec;
use core::fmt;

use crate::coxeter::{Apartment, DihedralGroup, Vec2, WeylElement};
use crate::exactreal::CycloReal;

/// Errors from polygon and path constructions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PolygonError {
    /// `open_polygon` needs exactly one transition per side.
    LengthMismatch { sides: usize, transitions: usize },
    /// The path fails the billiard property at this break (1-based index
    /// into the path's interior points): no group element carries the
    /// outgoing direction to the incoming one's continuation.
    NotBilliard { break_index: usize },
    /// A path must contain at least one point after the apex.
    EmptyPath,
}

impl fmt::Display for PolygonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolygonError::LengthMismatch { sides, transitions } => write!(
                f,
                "side/transition count mismatch: {sides} sides, {transitions} transitions"
            ),
            PolygonError::NotBilliard { break_index } => {
                write!(f, "path is not a billiard path at break {break_index}")
            }
            PolygonError::EmptyPath => write!(f, "path has no points"),
        }
    }
}

/// A closed polygon given by its vertex cycle (the side from the last vertex
/// back to the first is implicit). Degenerate (zero) sides are permitted;
/// [`Polygon::degenerate_sides`] reports them.
#[derive(Clone, Debug)]
pub struct Polygon {
    vertices: Vec<Vec2>,
}

impl Polygon {
    pub fn new(vertices: Vec<Vec2>) -> Polygon {
        Polygon { vertices }
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Side vector i: vertex i+1 (cyclically) minus vertex i.
    pub fn side(&self, ap: &Apartment, i: usize) -> Vec2 {
        let n = self.vertices.len();
        ap.vec_sub(&self.vertices[(i + 1) % n], &self.vertices[i])
    }

    /// Indices of zero sides.
    pub fn degenerate_sides(&self, ap: &Apartment) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| ap.vec_is_zero(&self.side(ap, i)))
            .collect()
    }
}

/// An affine isometry x -> linear(x) + translation of the model plane, with
/// linear part in the dihedral group.
#[derive(Clone, Debug)]
pub struct AffineIsometry {
    pub linear: WeylElement,
    pub translation: Vec2,
}

impl AffineIsometry {
    pub fn identity(ap: &Apartment) -> AffineIsometry {
        AffineIsometry { linear: WeylElement::identity(), translation: ap.vec_zero() }
    }

    /// The isometry with the given linear part fixing `fixed`: translation
    /// is fixed - linear(fixed).
    pub fn fixing(ap: &Apartment, linear: WeylElement, fixed: &Vec2) -> AffineIsometry {
        let translation = ap.vec_sub(fixed, &ap.apply_weyl(linear, fixed));
        AffineIsometry { linear, translation }
    }

    pub fn apply(&self, ap: &Apartment, x: &Vec2) -> Vec2 {
        ap.vec_add(&ap.apply_weyl(self.linear, x), &self.translation)
    }

    /// The composite map x -> a(b(x)): (g1,t1)(g2,t2) = (g1 g2, g1 t2 + t1).
    pub fn compose(ap: &Apartment, a: &AffineIsometry, b: &AffineIsometry) -> AffineIsometry {
        AffineIsometry {
            linear: ap.group().compose(a.linear, b.linear),
            translation: ap.vec_add(&ap.apply_weyl(a.linear, &b.translation), &a.translation),
        }
    }

    /// The inverse isometry (g^-1, -g^-1 t).
    pub fn inverse(&self, ap: &Apartment) -> AffineIsometry {
        let inv = ap.group().inverse(self.linear);
        AffineIsometry {
            linear: inv,
            translation: ap.vec_neg(&ap.apply_weyl(inv, &self.translation)),
        }
    }
}

/// A path meant to satisfy the billiard property: `apex` is the start point
/// y0, `points` are y1..yk. At every interior point the incoming and
/// outgoing segment directions must agree up to the group action.
#[derive(Clone, Debug)]
pub struct BilliardPath {
    pub apex: Vec2,
    pub points: Vec<Vec2>,
}

/// Result of straightening a billiard path.
#[derive(Clone, Debug)]
pub struct Straightened {
    /// Image of the last path point under the composed isometries: the far
    /// end of the straightened segment.
    pub endpoint: Vec2,
    /// One isometry per interior break, in path order. Isometry i fixes
    /// break point i and its linear part carries the outgoing direction onto
    /// the incoming one's continuation (lexicographically least such element
    /// when the direction is singular).
    pub isometries: Vec<AffineIsometry>,
    /// Inverse of the ordered product of the isometries' linear parts.
    pub holonomy: WeylElement,
}

/// The fundamental-chamber value of a vector: its orbit representative with
/// both coordinates nonnegative. Zero for the zero vector.
pub fn sigma_vector(ap: &Apartment, v: &Vec2) -> Vec2 {
    ap.chamber_representative(v).0
}

/// Side-length value of the segment from x to y.
pub fn sigma_side(ap: &Apartment, x: &Vec2, y: &Vec2) -> Vec2 {
    sigma_vector(ap, &ap.vec_sub(y, x))
}

/// Side-length values of a closed polygon, one per side around the cycle.
pub fn sigma(ap: &Apartment, p: &Polygon) -> Vec<Vec2> {
    (0..p.len()).map(|i| sigma_vector(ap, &p.side(ap, i))).collect()
}

/// The reversal involution on fundamental-chamber values: the value of -v in
/// terms of the value of v. For odd group order the antipodal map composes
/// with a reflection that swaps the two chamber coordinates; for even order
/// the rotation by a half-turn is in the group, so the value is unchanged.
pub fn reverse_delta(ap: &Apartment, delta: &Vec2) -> Vec2 {
    if ap.m() % 2 == 1 {
        Vec2 { x: delta.y.clone(), y: delta.x.clone() }
    } else {
        delta.clone()
    }
}

/// A chamber whose closure contains v (canonical choice: the chamber of the
/// inverse of the representative element). Placing sigma_vector(v) into this
/// chamber with [`DihedralGroup::chamber_element`] reproduces v exactly.
pub fn side_chamber(ap: &Apartment, v: &Vec2) -> u32 {
    let (_, w) = ap.chamber_representative(v);
    ap.group().chamber(ap.group().inverse(w))
}

/// Lay side data down in the plane: starting at the origin, consume one
/// transition per vertex (multiplying the running product on the right),
/// place each side value into its chamber, and advance by the running
/// product's image of the placed vector. Returns the n+1 path points and the
/// ordered product of all transitions.
pub fn open_polygon(
    ap: &Apartment,
    sides: &[(Vec2, u32)],
    transitions: &[WeylElement],
) -> Result<(Vec<Vec2>, WeylElement), PolygonError> {
    if sides.len() != transitions.len() {
        return Err(PolygonError::LengthMismatch {
            sides: sides.len(),
            transitions: transitions.len(),
        });
    }
    let group = ap.group();
    let mut path = Vec::with_capacity(sides.len() + 1);
    path.push(ap.vec_zero());
    let mut acc = WeylElement::identity();
    for ((delta, chamber), &t) in sides.iter().zip(transitions) {
        acc = group.compose(acc, t);
        let placed = ap.apply_weyl(group.chamber_element(chamber % group.order()), delta);
        let step = ap.apply_weyl(acc, &placed);
        let next = ap.vec_add(path.last().expect("nonempty"), &step);
        path.push(next);
    }
    Ok((path, acc))
}

/// Straighten a billiard path: at each interior break, find the group
/// element carrying the outgoing direction onto the continuation of the
/// incoming one (lexicographically least when several qualify), fix the
/// break point with it, and accumulate. The straightened segments all
/// continue the first segment's direction; zero-length segments at a break
/// make the break fail.
pub fn straighten(ap: &Apartment, path: &BilliardPath) -> Result<Straightened, PolygonError> {
    if path.points.is_empty() {
        return Err(PolygonError::EmptyPath);
    }
    let group = ap.group();
    let mut segments = Vec::with_capacity(path.points.len());
    let mut prev = &path.apex;
    for p in &path.points {
        segments.push(ap.vec_sub(p, prev));
        prev = p;
    }
    let mut isometries = Vec::new();
    for i in 1..path.points.len() {
        let incoming = &segments[i - 1];
        let outgoing = &segments[i];
        if ap.vec_is_zero(incoming) || ap.vec_is_zero(outgoing) {
            return Err(PolygonError::NotBilliard { break_index: i });
        }
        let mut found = None;
        for g in group.elements() {
            let image = ap.apply_weyl(g, outgoing);
            if ap.is_positive_multiple(&image, incoming) {
                found = Some(g);
                break;
            }
        }
        let Some(g) = found else {
            return Err(PolygonError::NotBilliard { break_index: i });
        };
        isometries.push(AffineIsometry::fixing(ap, g, &path.points[i - 1]));
    }
    let mut composed = AffineIsometry::identity(ap);
    for mu in &isometries {
        composed = AffineIsometry::compose(ap, &composed, mu);
    }
    let endpoint = composed.apply(ap, path.points.last().expect("nonempty"));
    let holonomy = group.inverse(composed.linear);
    Ok(Straightened { endpoint, isometries, holonomy })
}

/// One piece of a folded segment: the accordion images of its endpoints
/// (both in the closed fundamental chamber) and the fundamental-chamber
/// value of its difference vector, a positive multiple of the whole
/// segment's value.
#[derive(Clone, Debug)]
pub struct FoldedPiece {
    pub start: Vec2,
    pub end: Vec2,
    pub value: Vec2,
}

/// Fold a piecewise-straight path onto the closed fundamental chamber: each
/// segment is subdivided at its crossings of the walls through the origin,
/// and every piece is mapped by the group element of the chamber containing
/// it. Returns one piece list per input segment; consecutive folded pieces
/// share endpoints, and each piece's value is a positive multiple of its
/// segment's value.
pub fn fold_onto_chamber(ap: &Apartment, path: &[Vec2]) -> Vec<Vec<FoldedPiece>> {
    let f = ap.field();
    let m = ap.m() as i64;
    let mut out = Vec::new();
    for pair in path.windows(2) {
        let x = &pair[0];
        let v = ap.vec_sub(&pair[1], &pair[0]);
        if ap.vec_is_zero(&v) {
            let rep = sigma_vector(ap, x);
            out.push(alloc::vec![FoldedPiece {
                start: rep.clone(),
                end: rep,
                value: ap.vec_zero(),
            }]);
            continue;
        }
        // Crossing times of the origin walls, strictly inside (0, 1).
        let mut times: Vec<CycloReal> = Vec::new();
        for j in 0..m {
            let wall = ap.unit_vector(j);
            let denom = ap.cross_coef(&wall, &v);
            if denom.is_zero() {
                continue;
            }
            let numer = f.neg(&ap.cross_coef(&wall, x));
            let t = f.div(&numer, &denom).expect("nonzero denominator");
            if f.is_positive(&t) && f.is_negative(&f.sub(&t, &f.one())) {
                if !times.iter().any(|s| s == &t) {
                    times.push(t);
                }
            }
        }
        times.sort_by(|a, b| f.cmp(a, b));
        let mut cuts = Vec::with_capacity(times.len() + 2);
        cuts.push(f.zero());
        cuts.extend(times);
        cuts.push(f.one());
        let point_at = |t: &CycloReal| ap.vec_add(x, &ap.vec_scale(t, &v));
        let half = f.from_rational(num_rational::BigRational::new(
            num_bigint::BigInt::from(1),
            num_bigint::BigInt::from(2),
        ));
        let mut pieces = Vec::with_capacity(cuts.len() - 1);
        for w in cuts.windows(2) {
            let (ta, tb) = (&w[0], &w[1]);
            let pa = point_at(ta);
            let pb = point_at(tb);
            let mid = point_at(&f.mul(&f.add(ta, tb), &half));
            let (_, g) = ap.chamber_representative(&mid);
            let start = ap.apply_weyl(g, &pa);
            let end = ap.apply_weyl(g, &pb);
            let value = sigma_vector(ap, &ap.vec_sub(&end, &start));
            pieces.push(FoldedPiece { start, end, value });
        }
        out.push(pieces);
    }
    out
}

/// Directions fixed by a group element.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FixedDirections {
    /// The identity fixes every direction.
    All,
    /// A reflection fixes exactly the two directions on its axis.
    Axis(u32, u32),
    /// A nontrivial rotation fixes no direction.
    None,
}

/// Which maximal singular directions an element fixes.
pub fn fixed_directions(group: &DihedralGroup, g: WeylElement) -> FixedDirections {
    match group.canonical(g) {
        WeylElement::Rotation(0) => FixedDirections::All,
        WeylElement::Rotation(_) => FixedDirections::None,
        WeylElement::Reflection(j) => FixedDirections::Axis(j, j + group.m()),
    }
}

/// Sum of <step, e(eta)> over the steps of an open path: telescopes to
/// <end - start, e(eta)>, and vanishes identically on closed paths. Computed
/// term by term so the telescoping is an actual checked identity.
pub fn path_functional_value(ap: &Apartment, path: &[Vec2], eta: i64) -> CycloReal {
    let f = ap.field();
    let mut acc = f.zero();
    for pair in path.windows(2) {
        let step = ap.vec_sub(&pair[1], &pair[0]);
        acc = f.add(&acc, &ap.eval_dir(eta, &step));
    }
    acc
}

/// The same sum around a closed polygon's cycle; always exactly zero.
pub fn polygon_functional_value(ap: &Apartment, p: &Polygon, eta: i64) -> CycloReal {
    let f = ap.field();
    let mut acc = f.zero();
    for i in 0..p.len() {
        acc = f.add(&acc, &ap.eval_dir(eta, &p.side(ap, i)));
    }
    acc
}
