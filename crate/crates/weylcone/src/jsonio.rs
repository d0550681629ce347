//! JSON formats for inequality systems, points, polygon paths, and reports.
//!
//! Every exact field element travels as its rational coefficient vector in
//! the power basis of the field generator (strings like `"-3/2"`), paired
//! with an advisory float shadow that is ignored on load. All structures use
//! fixed field order and ordered containers, so serialization is
//! deterministic: equal data produces byte-identical JSON.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use weylcone_core::coxeter::{Apartment, Vec2, WeylElement};
use weylcone_core::exactreal::{CycloReal, FieldContext};
use weylcone_core::cone::ConeSystem;
use weylcone_core::polygonlab::BilliardPath;

/// Errors from loading or validating JSON data.
#[derive(Debug)]
pub enum JsonError {
    /// Malformed JSON syntax.
    Syntax(serde_json::Error),
    /// Structurally valid JSON that violates a format constraint.
    Invalid(String),
}

impl fmt::Display for JsonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JsonError::Syntax(e) => write!(f, "malformed JSON: {e}"),
            JsonError::Invalid(msg) => write!(f, "invalid data: {msg}"),
        }
    }
}

impl std::error::Error for JsonError {}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> JsonError {
        JsonError::Syntax(e)
    }
}

fn invalid(msg: impl Into<String>) -> JsonError {
    JsonError::Invalid(msg.into())
}

/// One exact field element: rational coefficients of the generator powers,
/// plus a float shadow for human readers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonScalar {
    pub coeffs: Vec<String>,
    pub approx: f64,
}

pub fn scalar_to_json(f: &FieldContext, x: &CycloReal) -> JsonScalar {
    JsonScalar {
        coeffs: x.coeffs().iter().map(|c| c.to_string()).collect(),
        approx: f.approx_f64(x),
    }
}

pub fn scalar_from_json(f: &FieldContext, js: &JsonScalar) -> Result<CycloReal, JsonError> {
    if js.coeffs.len() > f.degree() {
        return Err(invalid(format!(
            "coefficient vector of length {} exceeds field degree {}",
            js.coeffs.len(),
            f.degree()
        )));
    }
    let coeffs: Vec<BigRational> = js
        .coeffs
        .iter()
        .map(|s| {
            BigRational::from_str(s).map_err(|e| invalid(format!("bad rational '{s}': {e}")))
        })
        .collect::<Result<_, _>>()?;
    Ok(f.from_coeffs(coeffs))
}

/// A point of the model plane in basis coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonVec2 {
    pub x: JsonScalar,
    pub y: JsonScalar,
}

pub fn vec2_to_json(f: &FieldContext, v: &Vec2) -> JsonVec2 {
    JsonVec2 { x: scalar_to_json(f, &v.x), y: scalar_to_json(f, &v.y) }
}

pub fn vec2_from_json(f: &FieldContext, js: &JsonVec2) -> Result<Vec2, JsonError> {
    Ok(Vec2 { x: scalar_from_json(f, &js.x)?, y: scalar_from_json(f, &js.y)? })
}

/// A dihedral group element: `kind` is `"rot"` or `"ref"`, `j` the index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonElement {
    pub kind: String,
    pub j: u32,
}

pub fn element_to_json(e: WeylElement) -> JsonElement {
    match e {
        WeylElement::Rotation(j) => JsonElement { kind: String::from("rot"), j },
        WeylElement::Reflection(j) => JsonElement { kind: String::from("ref"), j },
    }
}

pub fn element_from_json(m: u32, js: &JsonElement) -> Result<WeylElement, JsonError> {
    if js.j >= m {
        return Err(invalid(format!("element index {} out of range for m = {m}", js.j)));
    }
    match js.kind.as_str() {
        "rot" => Ok(WeylElement::Rotation(js.j)),
        "ref" => Ok(WeylElement::Reflection(js.j)),
        other => Err(invalid(format!("unknown element kind '{other}'"))),
    }
}

/// A defining inequality system: the tuples generating the rows and the
/// rows' exact coefficient vectors. The rows are redundant with the tuples
/// and are re-derived and cross-checked on load.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonSystem {
    pub m: u32,
    pub n: usize,
    pub tuples: Vec<Vec<u32>>,
    pub rows: Vec<Vec<JsonScalar>>,
}

pub fn system_to_json(sys: &ConeSystem) -> JsonSystem {
    let f = sys.field();
    JsonSystem {
        m: sys.m(),
        n: sys.n(),
        tuples: sys.tuples().to_vec(),
        rows: sys
            .functional_rows()
            .iter()
            .map(|row| row.iter().map(|c| scalar_to_json(f, c)).collect())
            .collect(),
    }
}

pub fn system_from_json(ap: &Apartment, js: &JsonSystem) -> Result<ConeSystem, JsonError> {
    if js.m != ap.m() {
        return Err(invalid(format!("system has m = {}, apartment has m = {}", js.m, ap.m())));
    }
    if js.n < 2 {
        return Err(invalid(format!("polygons need at least two sides, got n = {}", js.n)));
    }
    let order = 2 * js.m;
    for tuple in &js.tuples {
        if tuple.len() != js.n {
            return Err(invalid(format!("tuple {tuple:?} does not have length {}", js.n)));
        }
        if let Some(&d) = tuple.iter().find(|&&d| d >= order) {
            return Err(invalid(format!("direction {d} out of range in tuple {tuple:?}")));
        }
    }
    let sys = ConeSystem::from_tuples(ap, js.n, js.tuples.clone());
    if !js.rows.is_empty() {
        let f = sys.field();
        if js.rows.len() != sys.tuples().len() {
            return Err(invalid(format!(
                "{} rows for {} tuples",
                js.rows.len(),
                sys.tuples().len()
            )));
        }
        for (k, (stored, derived)) in js.rows.iter().zip(sys.functional_rows()).enumerate() {
            if stored.len() != derived.len() {
                return Err(invalid(format!("row {k} does not have length {}", derived.len())));
            }
            for (s, d) in stored.iter().zip(derived) {
                let parsed = scalar_from_json(f, s)?;
                if !f.sub(&parsed, d).is_zero() {
                    return Err(invalid(format!("row {k} disagrees with its tuple")));
                }
            }
        }
    }
    Ok(sys)
}

/// A side-length vector (2n coordinates, chamber pairs per side).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonPoint {
    pub m: u32,
    pub coords: Vec<JsonScalar>,
}

pub fn point_to_json(f: &FieldContext, coords: &[CycloReal]) -> JsonPoint {
    JsonPoint { m: f.m(), coords: coords.iter().map(|c| scalar_to_json(f, c)).collect() }
}

pub fn point_from_json(f: &FieldContext, js: &JsonPoint) -> Result<Vec<CycloReal>, JsonError> {
    if js.m != f.m() {
        return Err(invalid(format!("point has m = {}, system has m = {}", js.m, f.m())));
    }
    js.coords.iter().map(|c| scalar_from_json(f, c)).collect()
}

/// A piecewise-straight path: start point (apex) followed by the points
/// after each segment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonPath {
    pub m: u32,
    pub apex: JsonVec2,
    pub points: Vec<JsonVec2>,
}

pub fn path_to_json(f: &FieldContext, path: &BilliardPath) -> JsonPath {
    JsonPath {
        m: f.m(),
        apex: vec2_to_json(f, &path.apex),
        points: path.points.iter().map(|p| vec2_to_json(f, p)).collect(),
    }
}

pub fn path_from_json(ap: &Apartment, js: &JsonPath) -> Result<BilliardPath, JsonError> {
    let f = ap.field();
    if js.m != f.m() {
        return Err(invalid(format!("path has m = {}, apartment has m = {}", js.m, f.m())));
    }
    Ok(BilliardPath {
        apex: vec2_from_json(f, &js.apex)?,
        points: js
            .points
            .iter()
            .map(|p| vec2_from_json(f, p))
            .collect::<Result<_, _>>()?,
    })
}

/// One side of a polygon to lay down: chamber value and the chamber to
/// place it in.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonSide {
    pub delta: JsonVec2,
    pub chamber: u32,
}

/// Side data plus per-side transition elements for laying a closed polygon
/// down in the plane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonOpenInput {
    pub m: u32,
    pub sides: Vec<JsonSide>,
    pub transitions: Vec<JsonElement>,
}

pub fn open_input_from_json(
    ap: &Apartment,
    js: &JsonOpenInput,
) -> Result<(Vec<(Vec2, u32)>, Vec<WeylElement>), JsonError> {
    let f = ap.field();
    if js.m != f.m() {
        return Err(invalid(format!("input has m = {}, apartment has m = {}", js.m, f.m())));
    }
    let order = ap.group().order();
    let sides = js
        .sides
        .iter()
        .map(|s| {
            if s.chamber >= order {
                return Err(invalid(format!("chamber {} out of range", s.chamber)));
            }
            Ok((vec2_from_json(f, &s.delta)?, s.chamber))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let transitions = js
        .transitions
        .iter()
        .map(|e| element_from_json(f.m(), e))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((sides, transitions))
}

/// An affine isometry: linear part and translation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonAffine {
    pub linear: JsonElement,
    pub translation: JsonVec2,
}

/// One exact row value in a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonRowValue {
    pub row: usize,
    pub tuple: Vec<u32>,
    pub value: JsonScalar,
}

/// Output of the `check` command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutput {
    pub m: u32,
    pub n: usize,
    pub status: String,
    pub active_functionals: Vec<usize>,
    pub active_coordinates: Vec<usize>,
    pub violated_functionals: Vec<usize>,
    pub violated_coordinates: Vec<usize>,
    pub values: Vec<JsonRowValue>,
}

/// One row's verdict in the `irredundant` command output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IrredundantRow {
    pub row: usize,
    pub tuple: Vec<u32>,
    pub irredundant: bool,
    /// For an irredundant row: a point satisfying every other row but
    /// violating this one.
    pub witness: Option<Vec<JsonScalar>>,
    /// For a redundant row: conic coefficients over the other rows
    /// reproducing it.
    pub combination: Option<Vec<JsonScalar>>,
}

/// Output of the `irredundant` command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IrredundantOutput {
    pub m: u32,
    pub n: usize,
    pub all_irredundant: bool,
    pub rows: Vec<IrredundantRow>,
}

/// One violation in a sampling report; float fields are set by the
/// spectral oracle, exact row lists by the apartment oracle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleViolation {
    pub sample: usize,
    pub row: Option<usize>,
    pub value: Option<f64>,
    pub violated_functionals: Option<Vec<usize>>,
    pub violated_coordinates: Option<Vec<usize>>,
}

/// Output of the `sample` command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleOutput {
    pub oracle: String,
    pub m: u32,
    pub n: usize,
    pub seed: u64,
    pub count: usize,
    pub tolerance: Option<f64>,
    pub boundary_hits: Option<usize>,
    pub violation_count: usize,
    pub violations: Vec<SampleViolation>,
    /// Largest value each row attained over the run (spectral oracle).
    pub worst_by_row: Option<Vec<f64>>,
}

/// One folded piece of a path segment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonPiece {
    pub start: JsonVec2,
    pub end: JsonVec2,
    pub value: JsonVec2,
}

/// Output of the `fold` command on a billiard path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoldOutput {
    pub m: u32,
    /// One isometry per interior break, fixing that break point.
    pub breaks: Vec<JsonAffine>,
    pub holonomy: JsonElement,
    pub endpoint: JsonVec2,
    /// Whether the recomposed isometry product reproduces the endpoint and
    /// holonomy exactly.
    pub identity_verified: bool,
    /// Per input segment, its folded pieces in the closed chamber.
    pub pieces: Vec<Vec<JsonPiece>>,
}

/// Failure report of the `fold` command on a non-billiard path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoldFailure {
    pub error: String,
    pub break_index: usize,
}

/// Output of the `open` command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OpenOutput {
    pub m: u32,
    pub points: Vec<JsonVec2>,
    pub holonomy: JsonElement,
    /// Whether the returned holonomy equals the recomposed transition
    /// product exactly.
    pub identity_verified: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use num_bigint::BigInt;

    fn apartment(m: u32) -> Apartment {
        Apartment::new(m).unwrap()
    }

    #[test]
    fn scalar_round_trips_through_json_text() {
        let ap = apartment(5);
        let f = ap.field();
        let x = f.add(&f.generator(), &f.from_rational(BigRational::new(
            BigInt::from(-7),
            BigInt::from(3),
        )));
        let js = scalar_to_json(f, &x);
        let text = serde_json::to_string(&js).unwrap();
        let back: JsonScalar = serde_json::from_str(&text).unwrap();
        let y = scalar_from_json(f, &back).unwrap();
        assert!(f.sub(&x, &y).is_zero());
    }

    #[test]
    fn scalar_rejects_oversized_and_malformed_input() {
        let ap = apartment(3);
        let f = ap.field();
        let too_long = JsonScalar { coeffs: vec![String::from("1"), String::from("2")], approx: 0.0 };
        assert!(scalar_from_json(f, &too_long).is_err());
        let garbage = JsonScalar { coeffs: vec![String::from("x/y")], approx: 0.0 };
        assert!(scalar_from_json(f, &garbage).is_err());
    }

    #[test]
    fn element_round_trips_and_validates() {
        let rot = WeylElement::Rotation(2);
        let refl = WeylElement::Reflection(0);
        assert_eq!(element_from_json(3, &element_to_json(rot)).unwrap(), rot);
        assert_eq!(element_from_json(3, &element_to_json(refl)).unwrap(), refl);
        assert!(element_from_json(3, &JsonElement { kind: String::from("rot"), j: 3 }).is_err());
        assert!(element_from_json(3, &JsonElement { kind: String::from("spin"), j: 0 }).is_err());
    }

    #[test]
    fn system_round_trips_and_detects_tampered_rows() {
        let ap = apartment(3);
        let sys = ConeSystem::new(&ap, 3);
        let js = system_to_json(&sys);
        let text = serde_json::to_string_pretty(&js).unwrap();
        let parsed: JsonSystem = serde_json::from_str(&text).unwrap();
        let back = system_from_json(&ap, &parsed).unwrap();
        assert_eq!(back.tuples(), sys.tuples());

        let mut tampered = js.clone();
        tampered.rows[0][0].coeffs[0] = String::from("17");
        assert!(system_from_json(&ap, &tampered).is_err());

        let mut bad_dir = js;
        bad_dir.tuples[0][0] = 6;
        bad_dir.rows.clear();
        assert!(system_from_json(&ap, &bad_dir).is_err());
    }

    #[test]
    fn point_and_path_round_trip() {
        let ap = apartment(5);
        let f = ap.field();
        let coords: Vec<CycloReal> = (0..4).map(|v| f.from_int(v)).collect();
        let jp = point_to_json(f, &coords);
        let back = point_from_json(f, &jp).unwrap();
        assert!(coords.iter().zip(&back).all(|(a, b)| f.sub(a, b).is_zero()));

        let path = BilliardPath {
            apex: Vec2 { x: f.from_int(0), y: f.from_int(0) },
            points: vec![Vec2 { x: f.generator(), y: f.from_int(2) }],
        };
        let jpath = path_to_json(f, &path);
        let back = path_from_json(&ap, &jpath).unwrap();
        assert!(f.sub(&back.points[0].x, &path.points[0].x).is_zero());
    }

    #[test]
    fn open_input_validates_chambers_and_kinds() {
        let ap = apartment(3);
        let f = ap.field();
        let delta = vec2_to_json(f, &Vec2 { x: f.from_int(1), y: f.from_int(0) });
        let good = JsonOpenInput {
            m: 3,
            sides: vec![JsonSide { delta: delta.clone(), chamber: 5 }],
            transitions: vec![JsonElement { kind: String::from("rot"), j: 0 }],
        };
        assert!(open_input_from_json(&ap, &good).is_ok());
        let bad = JsonOpenInput {
            m: 3,
            sides: vec![JsonSide { delta, chamber: 6 }],
            transitions: vec![JsonElement { kind: String::from("rot"), j: 0 }],
        };
        assert!(open_input_from_json(&ap, &bad).is_err());
    }

    proptest! {
        #[test]
        fn random_scalars_round_trip(nums in proptest::collection::vec(-50i64..50, 2), dens in proptest::collection::vec(1i64..20, 2)) {
            let ap = apartment(5);
            let f = ap.field();
            let coeffs: Vec<BigRational> = nums
                .iter()
                .zip(&dens)
                .map(|(&n, &d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect();
            let x = f.from_coeffs(coeffs);
            let text = serde_json::to_string(&scalar_to_json(f, &x)).unwrap();
            let back: JsonScalar = serde_json::from_str(&text).unwrap();
            let y = scalar_from_json(f, &back).unwrap();
            prop_assert!(f.sub(&x, &y).is_zero());
        }
    }
}
