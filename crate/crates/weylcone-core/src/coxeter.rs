//! The dihedral Coxeter group I2(m) and its exact apartment model.
//!
//! Directions in the plane that matter here are the 2m rays at angles
//! k*pi/m, indexed by k mod 2m. The group acts on direction indices:
//! rotation_j sends k to k + 2j, reflection_j sends k to 2j - k (so
//! reflection_j fixes the wall through directions j and j + m). Chambers are
//! the open arcs (c, c+1); the fundamental chamber is c = 0, and
//! `chamber_element(c)` is the unique group element mapping it to chamber c.
//!
//! The apartment itself is modeled exactly: vectors carry coordinates in the
//! basis (e(0), e(1)) of unit vectors spanning the fundamental chamber, with
//! entries in Q(2cos(pi/m)). The Gram matrix of that basis has off-diagonal
//! cos(pi/m), which makes `pairing(e(a), e(b)) = cos((a-b) pi/m)` — the
//! identity that ties the direction combinatorics to the field arithmetic.

use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;

use crate::exactreal::{CycloReal, ExactError, FieldContext};

/// An element of the dihedral group of order 2m, stored with j reduced
/// mod m. The derived order (rotations before reflections, then by j) is the
/// canonical enumeration order used everywhere a deterministic choice among
/// group elements is needed.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum WeylElement {
    /// k |-> k + 2j on direction indices.
    Rotation(u32),
    /// k |-> 2j - k on direction indices; fixes the wall {j, j+m}.
    Reflection(u32),
}

impl WeylElement {
    pub fn identity() -> WeylElement {
        WeylElement::Rotation(0)
    }

    pub fn is_rotation(&self) -> bool {
        matches!(self, WeylElement::Rotation(_))
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylElement::Rotation(j) => write!(f, "rot{j}"),
            WeylElement::Reflection(j) => write!(f, "ref{j}"),
        }
    }
}

/// Which side of a wall a direction or chamber lies on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WallSide {
    Plus,
    Minus,
    On,
}

/// The dihedral group I2(m) acting on direction indices mod 2m.
///
/// Pure integer combinatorics; the exact field only enters through
/// [`Apartment`]. Construction asserts m >= 3 (callers validate m through
/// [`FieldContext::new`] first).
#[derive(Clone, Copy, Debug)]
pub struct DihedralGroup {
    m: u32,
}

impl DihedralGroup {
    pub fn new(m: u32) -> DihedralGroup {
        assert!(m >= 3, "dihedral order parameter must be at least 3");
        DihedralGroup { m }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Group order (= number of chambers = number of directions).
    pub fn order(&self) -> u32 {
        2 * self.m
    }

    /// Reduce an arbitrary integer direction index to 0..2m.
    pub fn normalize_dir(&self, k: i64) -> u32 {
        k.rem_euclid(2 * self.m as i64) as u32
    }

    /// Canonical form of an element (j reduced mod m).
    pub fn canonical(&self, e: WeylElement) -> WeylElement {
        match e {
            WeylElement::Rotation(j) => WeylElement::Rotation(j % self.m),
            WeylElement::Reflection(j) => WeylElement::Reflection(j % self.m),
        }
    }

    /// All 2m elements in canonical order: rotations j = 0..m, then
    /// reflections j = 0..m.
    pub fn elements(&self) -> Vec<WeylElement> {
        let mut out = Vec::with_capacity(self.order() as usize);
        for j in 0..self.m {
            out.push(WeylElement::Rotation(j));
        }
        for j in 0..self.m {
            out.push(WeylElement::Reflection(j));
        }
        out
    }

    /// Action on a direction index.
    pub fn apply(&self, e: WeylElement, k: u32) -> u32 {
        debug_assert!(k < self.order());
        let k = k as i64;
        let v = match e {
            WeylElement::Rotation(j) => k + 2 * j as i64,
            WeylElement::Reflection(j) => 2 * j as i64 - k,
        };
        self.normalize_dir(v)
    }

    /// Composition a * b, acting as (a * b)(k) = a(b(k)).
    pub fn compose(&self, a: WeylElement, b: WeylElement) -> WeylElement {
        use WeylElement::{Reflection, Rotation};
        let m = self.m as i64;
        let red = |j: i64| j.rem_euclid(m) as u32;
        match (a, b) {
            (Rotation(p), Rotation(q)) => Rotation(red(p as i64 + q as i64)),
            (Rotation(p), Reflection(q)) => Reflection(red(p as i64 + q as i64)),
            (Reflection(p), Rotation(q)) => Reflection(red(p as i64 - q as i64)),
            (Reflection(p), Reflection(q)) => Rotation(red(p as i64 - q as i64)),
        }
    }

    pub fn inverse(&self, e: WeylElement) -> WeylElement {
        match e {
            WeylElement::Rotation(j) => WeylElement::Rotation((self.m - j % self.m) % self.m),
            WeylElement::Reflection(j) => WeylElement::Reflection(j % self.m),
        }
    }

    /// The unique element mapping the fundamental chamber (the arc (0,1)) to
    /// chamber c (the arc (c, c+1)).
    pub fn chamber_element(&self, c: u32) -> WeylElement {
        debug_assert!(c < self.order());
        if c % 2 == 0 {
            WeylElement::Rotation(c / 2)
        } else {
            WeylElement::Reflection(((c + 1) / 2) % self.m)
        }
    }

    /// Inverse of [`Self::chamber_element`]: the chamber this element maps the
    /// fundamental chamber onto.
    pub fn chamber(&self, e: WeylElement) -> u32 {
        match self.canonical(e) {
            WeylElement::Rotation(j) => 2 * j,
            WeylElement::Reflection(j) => (2 * j + 2 * self.m - 1) % (2 * self.m),
        }
    }

    /// The chamber opposite to c (rotated by pi).
    pub fn antipodal_chamber(&self, c: u32) -> u32 {
        (c + self.m) % (2 * self.m)
    }

    /// Side of the wall {j, j+m} (the fixed line of reflection_j) that the
    /// direction k lies on.
    pub fn side_of_wall(&self, k: u32, j: u32) -> WallSide {
        let m = self.m as i64;
        let d = (k as i64 - j as i64).rem_euclid(2 * m);
        if d == 0 || d == m {
            WallSide::On
        } else if d < m {
            WallSide::Plus
        } else {
            WallSide::Minus
        }
    }

    /// Side of the wall {j, j+m} containing chamber c. Chambers never lie on
    /// a wall, so the answer is always Plus or Minus.
    pub fn chamber_side(&self, c: u32, j: u32) -> WallSide {
        let m = self.m as i64;
        let d = (c as i64 - j as i64).rem_euclid(2 * m);
        if d < m {
            WallSide::Plus
        } else {
            WallSide::Minus
        }
    }

    /// True when chamber c has the direction k in its closure (k = c or c+1).
    pub fn chamber_adjacent_to(&self, c: u32, k: u32) -> bool {
        c == k || (c + 1) % (2 * self.m) == k
    }
}

/// A vector in the apartment plane, in coordinates over the basis
/// (e(0), e(1)) of the fundamental chamber's extreme unit rays. A vector lies
/// in the closed fundamental chamber exactly when both coordinates are >= 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vec2 {
    pub x: CycloReal,
    pub y: CycloReal,
}

/// The exact apartment: field arithmetic plus the dihedral action on actual
/// vectors. Unit vectors e(k) for all 2m directions are tabulated at
/// construction via e(k+1) = g*e(k) - e(k-1), g = 2cos(pi/m).
#[derive(Clone, Debug)]
pub struct Apartment {
    field: FieldContext,
    group: DihedralGroup,
    units: Vec<Vec2>,
}

impl Apartment {
    pub fn new(m: u32) -> Result<Apartment, ExactError> {
        let field = FieldContext::new(m)?;
        Ok(Apartment::from_field(field))
    }

    pub fn from_field(field: FieldContext) -> Apartment {
        let m = field.m();
        let group = DihedralGroup::new(m);
        let g = field.generator();
        let mut units: Vec<Vec2> = Vec::with_capacity(2 * m as usize);
        units.push(Vec2 { x: field.one(), y: field.zero() });
        units.push(Vec2 { x: field.zero(), y: field.one() });
        for k in 2..2 * m as usize {
            let prev = &units[k - 1];
            let prev2 = &units[k - 2];
            units.push(Vec2 {
                x: field.sub(&field.mul(&g, &prev.x), &prev2.x),
                y: field.sub(&field.mul(&g, &prev.y), &prev2.y),
            });
        }
        Apartment { field, group, units }
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn group(&self) -> &DihedralGroup {
        &self.group
    }

    pub fn m(&self) -> u32 {
        self.group.m()
    }

    /// The unit vector e(k) pointing along direction k (any integer index).
    pub fn unit_vector(&self, k: i64) -> Vec2 {
        self.units[self.group.normalize_dir(k) as usize].clone()
    }

    // ----- plain vector arithmetic ----------------------------------------

    pub fn vec_zero(&self) -> Vec2 {
        Vec2 { x: self.field.zero(), y: self.field.zero() }
    }

    pub fn vec_add(&self, u: &Vec2, v: &Vec2) -> Vec2 {
        Vec2 { x: self.field.add(&u.x, &v.x), y: self.field.add(&u.y, &v.y) }
    }

    pub fn vec_sub(&self, u: &Vec2, v: &Vec2) -> Vec2 {
        Vec2 { x: self.field.sub(&u.x, &v.x), y: self.field.sub(&u.y, &v.y) }
    }

    pub fn vec_neg(&self, v: &Vec2) -> Vec2 {
        Vec2 { x: self.field.neg(&v.x), y: self.field.neg(&v.y) }
    }

    pub fn vec_scale(&self, c: &CycloReal, v: &Vec2) -> Vec2 {
        Vec2 { x: self.field.mul(c, &v.x), y: self.field.mul(c, &v.y) }
    }

    pub fn vec_scale_rat(&self, q: &BigRational, v: &Vec2) -> Vec2 {
        Vec2 { x: self.field.mul_rat(&v.x, q), y: self.field.mul_rat(&v.y, q) }
    }

    pub fn vec_is_zero(&self, v: &Vec2) -> bool {
        v.x.is_zero() && v.y.is_zero()
    }

    // ----- metric structure ------------------------------------------------

    /// Euclidean inner product, through the Gram matrix of (e(0), e(1)):
    /// <(a,b),(c,d)> = ac + bd + (ad + bc) cos(pi/m).
    pub fn pairing(&self, u: &Vec2, v: &Vec2) -> CycloReal {
        let f = &self.field;
        let diag = f.add(&f.mul(&u.x, &v.x), &f.mul(&u.y, &v.y));
        let off = f.add(&f.mul(&u.x, &v.y), &f.mul(&u.y, &v.x));
        f.add(&diag, &f.mul(&off, &f.cosmul(1)))
    }

    /// Coefficient of the planar cross product: the true signed area form is
    /// this value times sin(pi/m) > 0, so its sign and zero set are exact.
    pub fn cross_coef(&self, u: &Vec2, v: &Vec2) -> CycloReal {
        let f = &self.field;
        f.sub(&f.mul(&u.x, &v.y), &f.mul(&u.y, &v.x))
    }

    /// Value of the linear functional <., e(k)> at v.
    pub fn eval_dir(&self, k: i64, v: &Vec2) -> CycloReal {
        let f = &self.field;
        let kk = self.group.normalize_dir(k) as i64;
        f.add(
            &f.mul(&v.x, &f.cosmul(kk)),
            &f.mul(&v.y, &f.cosmul(kk - 1)),
        )
    }

    /// Apply a group element as a linear map (its matrix has columns
    /// e(w.0) and e(w.1)).
    pub fn apply_weyl(&self, w: WeylElement, v: &Vec2) -> Vec2 {
        let col0 = &self.units[self.group.apply(w, 0) as usize];
        let col1 = &self.units[self.group.apply(w, 1) as usize];
        self.vec_add(&self.vec_scale(&v.x, col0), &self.vec_scale(&v.y, col1))
    }

    /// True when v lies in the closed fundamental chamber (both coordinates
    /// nonnegative).
    pub fn in_fundamental_chamber(&self, v: &Vec2) -> bool {
        !self.field.is_negative(&v.x) && !self.field.is_negative(&v.y)
    }

    /// The canonical representative of v in the closed fundamental chamber,
    /// together with the first group element (in canonical order) carrying v
    /// onto it. Deterministic: ties on walls resolve to the earliest element.
    pub fn chamber_representative(&self, v: &Vec2) -> (Vec2, WeylElement) {
        for w in self.group.elements() {
            let image = self.apply_weyl(w, v);
            if self.in_fundamental_chamber(&image) {
                return (image, w);
            }
        }
        unreachable!("the chambers cover the plane");
    }

    /// True when v = t * u for some t > 0 (u, v nonzero).
    pub fn is_positive_multiple(&self, v: &Vec2, u: &Vec2) -> bool {
        self.cross_coef(u, v).is_zero() && self.field.is_positive(&self.pairing(u, v))
    }
}
