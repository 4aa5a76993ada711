//! The regular ideal cube, ball-to-half-space conversion, Mobius maps from
//! point triples, and numerical relator checks.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::pairings::{FacePairing, PairingScheme, RelatorWord};
use crate::polytope::{AbstractPolyhedron, VertexId};

type C = Complex64;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("point is off the ideal sphere: height {0:e} after inversion")]
    OffSphere(f64),
    #[error("reference points coincide")]
    Degenerate,
    #[error("matrix is singular (|det| = {0:e})")]
    Singular(f64),
    #[error("pairing {gen}: vertex `{vertex}` lands {distance:e} away from its partner")]
    FourthVertex { gen: String, vertex: String, distance: f64 },
    #[error("unknown generator `{0}`")]
    UnknownLetter(String),
    #[error("vertex `{0}` has no placement on the regular ideal cube")]
    NoPlacement(String),
    #[error("realization: {0}")]
    Realization(String),
}

/// Numerical tolerances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Point agreement and planarity.
    pub geo: f64,
    /// Projective identity.
    pub id: f64,
    /// Trace classification.
    pub cls: f64,
    /// Smallest acceptable |det|.
    pub det: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { geo: 1e-9, id: 1e-9, cls: 1e-8, det: 1e-12 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }
    pub fn dist(&self, o: &Point3) -> f64 {
        ((self.x - o.x).powi(2) + (self.y - o.y).powi(2) + (self.z - o.z).powi(2)).sqrt()
    }
}

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedComplex {
    Finite(C),
    Infinity,
}

pub use ExtendedComplex::{Finite, Infinity};

impl ExtendedComplex {
    pub fn finite(re: f64, im: f64) -> Self {
        Finite(C::new(re, im))
    }

    /// Chordal distance on the unit Riemann sphere; Euclidean-like near 0.
    pub fn chordal(&self, o: &Self) -> f64 {
        match (self, o) {
            (Infinity, Infinity) => 0.0,
            (Finite(a), Infinity) | (Infinity, Finite(a)) => 2.0 / (1.0 + a.norm_sqr()).sqrt(),
            (Finite(a), Finite(b)) => 2.0 * (a - b).norm() / ((1.0 + a.norm_sqr()) * (1.0 + b.norm_sqr())).sqrt(),
        }
    }

    /// |a - b| for finite points, chordal distance otherwise.
    pub fn distance(&self, o: &Self) -> f64 {
        match (self, o) {
            (Finite(a), Finite(b)) => (a - b).norm(),
            _ => self.chordal(o),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Finite(z) => serde_json::json!([z.re, z.im]),
            Infinity => serde_json::json!("inf"),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Option<Self> {
        if v.as_str() == Some("inf") {
            return Some(Infinity);
        }
        let a = v.as_array()?;
        if a.len() != 2 {
            return None;
        }
        Some(Finite(C::new(a[0].as_f64()?, a[1].as_f64()?)))
    }
}

impl fmt::Display for ExtendedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(z) => write!(f, "{z}"),
            Infinity => f.write_str("inf"),
        }
    }
}

/// z -> (az + b) / (cz + d)
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    pub a: C,
    pub b: C,
    pub c: C,
    pub d: C,
}

impl MobiusMap {
    pub fn new(a: C, b: C, c: C, d: C) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(C::new(1.0, 0.0), C::zero(), C::zero(), C::new(1.0, 0.0))
    }

    pub fn det(&self) -> C {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> C {
        self.a + self.d
    }

    /// Matrix product: `self` applied after `o`.
    pub fn compose(&self, o: &Self) -> Self {
        Self::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    /// Adjugate, which is the inverse up to scale.
    pub fn inverse(&self) -> Self {
        let det = self.det();
        Self::new(self.d / det, -self.b / det, -self.c / det, self.a / det)
    }

    pub fn scale(&self, s: C) -> Self {
        Self::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    /// Rescaled to determinant 1 (the sign stays ambiguous).
    pub fn normalized(&self, tol: &Tolerances) -> Result<Self, GeometryError> {
        let det = self.det();
        if det.norm() <= tol.det {
            return Err(GeometryError::Singular(det.norm()));
        }
        Ok(self.scale(det.sqrt().inv()))
    }

    /// Determinant 1 and first non-negligible entry with positive real part
    /// (or, if purely imaginary, positive imaginary part).
    pub fn sign_fixed(&self, tol: &Tolerances) -> Result<Self, GeometryError> {
        let m = self.normalized(tol)?;
        let lead = [m.a, m.b, m.c, m.d].into_iter().find(|z| z.norm() > tol.id).unwrap_or(m.a);
        let flip = lead.re < -tol.id || (lead.re.abs() <= tol.id && lead.im < 0.0);
        Ok(if flip { m.scale(C::new(-1.0, 0.0)) } else { m })
    }

    pub fn apply(&self, z: ExtendedComplex) -> ExtendedComplex {
        match z {
            Infinity => {
                if self.c.norm() == 0.0 {
                    Infinity
                } else {
                    Finite(self.a / self.c)
                }
            }
            Finite(z) => {
                let den = self.c * z + self.d;
                if den.norm() == 0.0 {
                    Infinity
                } else {
                    Finite((self.a * z + self.b) / den)
                }
            }
        }
    }

    fn max_entry_diff(&self, o: &Self) -> f64 {
        [self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d].iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// min(|M - I|, |M + I|) after det normalization, entrywise max norm.
    pub fn identity_defect(&self, tol: &Tolerances) -> Result<f64, GeometryError> {
        self.projective_distance(&Self::identity(), tol)
    }

    pub fn projective_distance(&self, o: &Self, tol: &Tolerances) -> Result<f64, GeometryError> {
        let (m, n) = (self.normalized(tol)?, o.normalized(tol)?);
        Ok(m.max_entry_diff(&n).min(m.max_entry_diff(&n.scale(C::new(-1.0, 0.0)))))
    }

    pub fn projectively_equal(&self, o: &Self, tol: &Tolerances) -> Result<bool, GeometryError> {
        Ok(self.projective_distance(o, tol)? <= tol.id)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let e = |z: C| serde_json::json!([z.re, z.im]);
        serde_json::json!({"a": e(self.a), "b": e(self.b), "c": e(self.c), "d": e(self.d)})
    }
}

/// Vertices of the cube inscribed in the unit sphere about (0, 0, 1).
pub fn inscribed_cube_vertices() -> Vec<Point3> {
    let s = 1.0 / 3f64.sqrt();
    let mut out = Vec::with_capacity(8);
    for sx in [-1.0, 1.0] {
        for sy in [-1.0, 1.0] {
            for sz in [-1.0, 1.0] {
                out.push(Point3::new(sx * s, sy * s, 1.0 + sz * s));
            }
        }
    }
    out
}

/// Sign pattern (x, y, z) on the inscribed cube for each named vertex of the
/// bundled cube. Front faces -x, right faces +y, top faces +z (toward the
/// north pole, which goes to infinity). Fixed so that the FD(1) gluings give
/// the published generators.
pub const CUBE_BALL_PLACEMENT: [(&str, [i8; 3]); 8] = [
    ("FBL", [1, -1, -1]),
    ("FBR", [1, 1, -1]),
    ("FTL", [1, -1, 1]),
    ("FTR", [1, 1, 1]),
    ("BBL", [-1, -1, -1]),
    ("BBR", [-1, 1, -1]),
    ("BTL", [-1, -1, 1]),
    ("BTR", [-1, 1, 1]),
];

/// Invert in the sphere of radius 2 about (0, 0, 2), then reflect in the
/// xy-plane; ideal points of the ball land on the plane z = 0.
pub fn ball_to_uhs(p: Point3, tol: &Tolerances) -> Result<ExtendedComplex, GeometryError> {
    let (dx, dy, dz) = (p.x, p.y, p.z - 2.0);
    let r2 = dx * dx + dy * dy + dz * dz;
    if r2 <= tol.geo * tol.geo {
        return Ok(Infinity);
    }
    let k = 4.0 / r2;
    let (x, y, z) = (k * dx, k * dy, -(2.0 + k * dz));
    if z.abs() > tol.geo {
        return Err(GeometryError::OffSphere(z));
    }
    Ok(Finite(C::new(x, y)))
}

/// Ideal vertex positions per vertex id.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealRealization {
    pub points: Vec<ExtendedComplex>,
}

impl IdealRealization {
    pub fn to_json(&self, p: &AbstractPolyhedron) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> =
            p.vertices().iter().zip(&self.points).map(|(n, z)| (n.clone(), z.to_json())).collect();
        serde_json::Value::Object(map)
    }

    pub fn from_json(p: &AbstractPolyhedron, v: &serde_json::Value) -> Result<Self, GeometryError> {
        let obj = v.as_object().ok_or_else(|| GeometryError::Realization("expected an object".into()))?;
        let mut points = Vec::with_capacity(p.vertex_count());
        for name in p.vertices() {
            let z = obj
                .get(name)
                .and_then(ExtendedComplex::from_json)
                .ok_or_else(|| GeometryError::Realization(format!("vertex `{name}` missing or malformed")))?;
            points.push(z);
        }
        let r = Self { points };
        r.check_distinct(&Tolerances::default())?;
        Ok(r)
    }

    pub fn check_distinct(&self, tol: &Tolerances) -> Result<(), GeometryError> {
        for i in 0..self.points.len() {
            for j in 0..i {
                if self.points[i].chordal(&self.points[j]) <= tol.geo {
                    return Err(GeometryError::Realization(format!("vertices {j} and {i} coincide")));
                }
            }
        }
        Ok(())
    }
}

/// Place the bundled cube's vertices as the regular ideal cube in the upper
/// half-space.
pub fn regular_ideal_cube(p: &AbstractPolyhedron, tol: &Tolerances) -> Result<IdealRealization, GeometryError> {
    let s = 1.0 / 3f64.sqrt();
    let mut points = Vec::with_capacity(p.vertex_count());
    for name in p.vertices() {
        let (_, sg) = CUBE_BALL_PLACEMENT
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| GeometryError::NoPlacement(name.clone()))?;
        let q = Point3::new(sg[0] as f64 * s, sg[1] as f64 * s, 1.0 + sg[2] as f64 * s);
        points.push(ball_to_uhs(q, tol)?);
    }
    Ok(IdealRealization { points })
}

/// Matrix of z -> [z, p1, p2, p3], sending p2 -> 0, p1 -> 1, p3 -> inf.
fn reference_map(p1: ExtendedComplex, p2: ExtendedComplex, p3: ExtendedComplex, tol: &Tolerances) -> Result<MobiusMap, GeometryError> {
    let one = C::new(1.0, 0.0);
    let zero = C::zero();
    for (x, y) in [(p1, p2), (p1, p3), (p2, p3)] {
        if x.chordal(&y) <= tol.geo {
            return Err(GeometryError::Degenerate);
        }
    }
    Ok(match (p1, p2, p3) {
        (Finite(a), Finite(b), Finite(c)) => MobiusMap::new(a - c, -b * (a - c), a - b, -c * (a - b)),
        (Infinity, Finite(b), Finite(c)) => MobiusMap::new(one, -b, one, -c),
        (Finite(a), Infinity, Finite(c)) => MobiusMap::new(zero, a - c, one, -c),
        (Finite(a), Finite(b), Infinity) => MobiusMap::new(one, -b, zero, a - b),
        _ => return Err(GeometryError::Degenerate),
    })
}

/// (z - p2)(p1 - p3) / ((z - p3)(p1 - p2)), with the factors containing an
/// infinite point cancelled.
pub fn cross_ratio(
    z: ExtendedComplex,
    p1: ExtendedComplex,
    p2: ExtendedComplex,
    p3: ExtendedComplex,
    tol: &Tolerances,
) -> Result<ExtendedComplex, GeometryError> {
    Ok(reference_map(p1, p2, p3, tol)?.apply(z))
}

/// The map sending src[i] to dst[i], as Y^-1 X with X, Y the cross-ratio maps
/// of the two triples, normalized to determinant 1.
pub fn mobius_from_triples(
    src: [ExtendedComplex; 3],
    dst: [ExtendedComplex; 3],
    tol: &Tolerances,
) -> Result<MobiusMap, GeometryError> {
    let x = reference_map(src[0], src[1], src[2], tol)?;
    let y = reference_map(dst[0], dst[1], dst[2], tol)?;
    y.inverse().compose(&x).normalized(tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementType {
    Identity,
    Elliptic,
    Parabolic,
    Loxodromic,
}

/// By tr^2 of the det-1 matrix.
pub fn classify_element(m: &MobiusMap, tol: &Tolerances) -> Result<ElementType, GeometryError> {
    if m.identity_defect(tol)? <= tol.id {
        return Ok(ElementType::Identity);
    }
    let n = m.normalized(tol)?;
    let tau = n.trace() * n.trace();
    Ok(if (tau - C::new(4.0, 0.0)).norm() <= tol.cls {
        ElementType::Parabolic
    } else if tau.im.abs() <= tol.cls && tau.re >= -tol.cls && tau.re < 4.0 {
        ElementType::Elliptic
    } else {
        ElementType::Loxodromic
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelatorCheck {
    pub word: String,
    pub defect: f64,
    pub kind: ElementType,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupPresentation {
    pub generators: BTreeMap<String, MobiusMap>,
    pub relators: Vec<RelatorWord>,
    pub verification: Vec<RelatorCheck>,
}

impl GroupPresentation {
    pub fn from_generators(generators: BTreeMap<String, MobiusMap>) -> Self {
        Self { generators, relators: Vec::new(), verification: Vec::new() }
    }

    /// Every relator evaluated to the identity.
    pub fn confirmed(&self) -> bool {
        !self.verification.is_empty() && self.verification.iter().all(|c| c.kind == ElementType::Identity)
    }
}

/// Three consecutive boundary vertices starting at the lowest vertex id.
fn reference_triple(p: &AbstractPolyhedron, fp: &FacePairing) -> [VertexId; 3] {
    let cyc = &p.faces()[fp.source];
    let k = cyc.len();
    let i = (0..k).min_by_key(|&i| cyc[i]).expect("nonempty face");
    [cyc[i], cyc[(i + 1) % k], cyc[(i + 2) % k]]
}

/// The Mobius map realizing one face pairing, checked on every boundary vertex.
pub fn pairing_map(
    r: &IdealRealization,
    p: &AbstractPolyhedron,
    fp: &FacePairing,
    tol: &Tolerances,
) -> Result<MobiusMap, GeometryError> {
    let t = reference_triple(p, fp);
    let src = t.map(|v| r.points[v]);
    let dst = t.map(|v| r.points[fp.map[&v]]);
    let m = mobius_from_triples(src, dst, tol)?;
    for &v in &p.faces()[fp.source] {
        let d = m.apply(r.points[v]).distance(&r.points[fp.map[&v]]);
        if d.is_nan() || d > tol.geo {
            return Err(GeometryError::FourthVertex { gen: fp.gen.clone(), vertex: p.vertices()[v].clone(), distance: d });
        }
    }
    Ok(m)
}

pub fn face_pairing_maps(
    r: &IdealRealization,
    p: &AbstractPolyhedron,
    s: &PairingScheme,
    tol: &Tolerances,
) -> Result<GroupPresentation, GeometryError> {
    let mut generators = BTreeMap::new();
    for fp in &s.pairings {
        generators.insert(fp.gen.clone(), pairing_map(r, p, fp, tol)?);
    }
    Ok(GroupPresentation::from_generators(generators))
}

/// Product of a word with its first letter applied first, i.e. the matrix
/// L_n ... L_2 L_1; this is the order in which an edge cycle applies its
/// gluings. Det-normalized.
pub fn relator_product(
    generators: &BTreeMap<String, MobiusMap>,
    w: &RelatorWord,
    tol: &Tolerances,
) -> Result<MobiusMap, GeometryError> {
    let mut m = MobiusMap::identity();
    for l in &w.letters {
        let g = generators.get(&l.gen).ok_or_else(|| GeometryError::UnknownLetter(l.gen.clone()))?;
        let g = if l.inverse { g.inverse() } else { *g };
        m = g.compose(&m).normalized(tol)?;
    }
    Ok(m)
}

/// Evaluate the given relators against generators built on the realization.
pub fn verify_words(
    generators: BTreeMap<String, MobiusMap>,
    words: &[RelatorWord],
    tol: &Tolerances,
) -> Result<GroupPresentation, GeometryError> {
    let mut verification = Vec::with_capacity(words.len());
    for w in words {
        let m = relator_product(&generators, w, tol)?;
        verification.push(RelatorCheck { word: w.to_string(), defect: m.identity_defect(tol)?, kind: classify_element(&m, tol)? });
    }
    Ok(GroupPresentation { generators, relators: words.to_vec(), verification })
}

/// Build generators for the scheme on the realization and evaluate each edge
/// relator.
pub fn verify_candidate(
    r: &IdealRealization,
    p: &AbstractPolyhedron,
    s: &PairingScheme,
    words: &[RelatorWord],
    tol: &Tolerances,
) -> Result<GroupPresentation, GeometryError> {
    let g = face_pairing_maps(r, p, s, tol)?;
    verify_words(g.generators, words, tol)
}

/// The generators of the FD(1) group, as published.
pub fn reference_fd1_generators() -> BTreeMap<String, MobiusMap> {
    let r3 = 3f64.sqrt();
    let i = C::new(0.0, 1.0);
    let one = C::new(1.0, 0.0);
    let a = MobiusMap::new(i - r3, C::new(4.0, 0.0), one, i - r3);
    let b = MobiusMap::new(one - r3 * i, C::new(4.0, 0.0), -one, one - r3 * i);
    let c = MobiusMap::new((1.0 - r3) * (one - i), C::zero(), C::zero(), -(1.0 + r3) * (one + i));
    BTreeMap::from([("A".to_string(), a), ("B".to_string(), b), ("C".to_string(), c)])
}

/// The generators of the FD(2) group, as published.
pub fn reference_fd2_generators() -> BTreeMap<String, MobiusMap> {
    let r3 = 3f64.sqrt();
    let z = |re: f64, im: f64| C::new(re, im);
    let p = MobiusMap::new(z(2.0, 2.0), z(-4.0 * r3, -4.0 * r3), z(-r3, -r3), z(2.0, 2.0));
    let q = MobiusMap::new(
        z(2.0 + 2.0 * r3, -2.0 + 2.0 * r3),
        z(20.0 + 12.0 * r3, 4.0 + 4.0 * r3),
        z(r3 - 1.0, -1.0 - r3),
        z(-2.0 * r3 - 2.0, 10.0 + 6.0 * r3),
    );
    let r = MobiusMap::new(
        z(10.0 * r3 - 18.0, 6.0 * r3 - 10.0),
        z(-12.0 * r3 + 20.0, 20.0 * r3 - 36.0),
        z(r3 - 3.0, -1.0 + r3),
        z(2.0 * r3 - 2.0, 6.0 - 2.0 * r3),
    );
    BTreeMap::from([("P".to_string(), p), ("Q".to_string(), q), ("R".to_string(), r)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn inscribed_vertices_on_sphere() {
        let vs = inscribed_cube_vertices();
        let centre = Point3::new(0.0, 0.0, 1.0);
        for v in &vs {
            assert!((v.dist(&centre) - 1.0).abs() < 1e-15);
        }
        // nearest neighbours at 2/sqrt(3), twelve such pairs
        let mut near = 0;
        for i in 0..8 {
            for j in 0..i {
                let d = vs[i].dist(&vs[j]);
                assert!(d > 2.0 / 3f64.sqrt() - 1e-12);
                if (d - 2.0 / 3f64.sqrt()).abs() < 1e-12 {
                    near += 1;
                }
            }
        }
        assert_eq!(near, 12);
        // quarter turn about the vertical axis through (0,0,1) permutes them
        for v in &vs {
            let r = Point3::new(-v.y, v.x, v.z);
            assert!(vs.iter().any(|w| w.dist(&r) < 1e-15));
        }
    }

    #[test]
    fn ball_to_uhs_examples() {
        let s = 1.0 / 3f64.sqrt();
        let z = ball_to_uhs(Point3::new(s, s, 1.0 + s), &tol()).unwrap();
        let want = 1.0 + 3f64.sqrt();
        assert!(z.distance(&ExtendedComplex::finite(want, want)) < 1e-12);
        assert_eq!(ball_to_uhs(Point3::new(0.0, 0.0, 0.0), &tol()).unwrap(), ExtendedComplex::finite(0.0, 0.0));
        assert_eq!(ball_to_uhs(Point3::new(0.0, 0.0, 2.0), &tol()).unwrap(), Infinity);
        assert!(matches!(ball_to_uhs(Point3::new(0.0, 0.0, 0.5), &tol()), Err(GeometryError::OffSphere(_))));
    }

    #[test]
    fn cross_ratio_conventions() {
        let t = tol();
        let (p1, p2, p3) = (ExtendedComplex::finite(1.0, 2.0), ExtendedComplex::finite(-3.0, 0.5), ExtendedComplex::finite(0.0, -1.0));
        assert!(cross_ratio(p2, p1, p2, p3, &t).unwrap().distance(&ExtendedComplex::finite(0.0, 0.0)) < 1e-12);
        assert!(cross_ratio(p1, p1, p2, p3, &t).unwrap().distance(&ExtendedComplex::finite(1.0, 0.0)) < 1e-12);
        assert_eq!(cross_ratio(p3, p1, p2, p3, &t).unwrap(), Infinity);
        let z = ExtendedComplex::finite(0.3, -0.7);
        let one = ExtendedComplex::finite(1.0, 0.0);
        let zero = ExtendedComplex::finite(0.0, 0.0);
        assert!(cross_ratio(z, one, zero, Infinity, &t).unwrap().distance(&z) < 1e-15);
        assert!(matches!(cross_ratio(z, one, one, Infinity, &t), Err(GeometryError::Degenerate)));
    }

    #[test]
    fn triples_to_themselves_give_identity() {
        let t = tol();
        let tri = [ExtendedComplex::finite(0.0, 0.0), ExtendedComplex::finite(1.0, 0.0), Infinity];
        let m = mobius_from_triples(tri, tri, &t).unwrap();
        assert!(m.identity_defect(&t).unwrap() < 1e-15);
    }

    #[test]
    fn classify_standard_forms() {
        let t = tol();
        let one = C::new(1.0, 0.0);
        let zero = C::zero();
        let translate = MobiusMap::new(one, one, zero, one);
        assert_eq!(classify_element(&translate, &t).unwrap(), ElementType::Parabolic);
        let dilate = MobiusMap::new(C::new(2.0, 0.0), zero, zero, one);
        assert_eq!(classify_element(&dilate, &t).unwrap(), ElementType::Loxodromic);
        let half_turn = MobiusMap::new(zero, -one, one, zero);
        assert_eq!(classify_element(&half_turn, &t).unwrap(), ElementType::Elliptic);
        assert_eq!(classify_element(&MobiusMap::identity().scale(C::new(0.0, 3.0)), &t).unwrap(), ElementType::Identity);
    }

    #[test]
    fn fd1_reproduces_published_generators() {
        let t = tol();
        let p = data::cube();
        let s = PairingScheme::from_doc(&p, &data::fd1_doc()).unwrap();
        let r = regular_ideal_cube(&p, &t).unwrap();
        let g = face_pairing_maps(&r, &p, &s, &t).unwrap();
        for (name, m) in reference_fd1_generators() {
            assert!(g.generators[&name].projective_distance(&m, &t).unwrap() < 1e-12, "{name}");
        }
    }

    #[test]
    fn fd2_reproduces_published_generators() {
        let t = tol();
        let p = data::cube();
        let s = PairingScheme::from_doc(&p, &data::fd2_doc()).unwrap();
        let r = regular_ideal_cube(&p, &t).unwrap();
        let g = face_pairing_maps(&r, &p, &s, &t).unwrap();
        for (name, m) in reference_fd2_generators() {
            assert!(g.generators[&name].projective_distance(&m, &t).unwrap() < 1e-12, "{name}");
        }
    }

    #[test]
    fn empty_word_is_identity() {
        let t = tol();
        let m = relator_product(&reference_fd1_generators(), &RelatorWord { letters: vec![] }, &t).unwrap();
        assert!(m.identity_defect(&t).unwrap() == 0.0);
        assert!(matches!(
            relator_product(&reference_fd1_generators(), &RelatorWord::parse("AZ"), &t),
            Err(GeometryError::UnknownLetter(_))
        ));
    }

    #[test]
    fn fourth_vertex_mismatch_is_reported() {
        let t = tol();
        let p = data::cube();
        let mut s = PairingScheme::from_doc(&p, &data::fd1_doc()).unwrap();
        let r = regular_ideal_cube(&p, &t).unwrap();
        // swap two images on the last vertex of the reference triple's face
        let fp = &mut s.pairings[0];
        let tri = reference_triple(&p, fp);
        let last = *p.faces()[fp.source].iter().find(|v| !tri.contains(v)).unwrap();
        let other = tri[0];
        let (x, y) = (fp.map[&last], fp.map[&other]);
        fp.map.insert(last, y);
        fp.map.insert(other, x);
        match pairing_map(&r, &p, &s.pairings[0], &t) {
            Err(GeometryError::FourthVertex { .. }) => {}
            other => panic!("expected a mismatch, got {other:?}"),
        }
    }

    #[test]
    fn realization_json_round_trip() {
        let p = data::cube();
        let r = regular_ideal_cube(&p, &tol()).unwrap();
        let j = r.to_json(&p);
        assert_eq!(IdealRealization::from_json(&p, &j).unwrap(), r);
    }
}
