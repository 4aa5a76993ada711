//! Face-pairing schemes: validation, edge and vertex orbits, relator words,
//! forced elliptic generators, and canonical forms under symmetry.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polytope::{isomorphisms, AbstractPolyhedron, EdgeId, FaceId, Isomorphism, PolytopeError, VertexId};

#[derive(Debug, Error)]
pub enum PairingError {
    #[error("face `{0}` is paired more than once")]
    FaceReused(String),
    #[error("face `{0}` is not paired")]
    FaceUncovered(String),
    #[error("face `{0}` is paired with itself")]
    SelfPaired(String),
    #[error("faces `{from}` and `{to}` have different lengths")]
    LengthMismatch { from: String, to: String },
    #[error("generator `{0}` is used twice")]
    DuplicateGenerator(String),
    #[error("pairing {gen}: {detail}")]
    BadCorrespondence { gen: String, detail: String },
    #[error("pairing {gen} ({from} -> {to}) does not reverse orientation")]
    Orientation { gen: String, from: String, to: String },
    #[error("twist shorthand: {0}")]
    Sugar(String),
    #[error("census inconsistency: V = {v} but V - E + F - P = {q}")]
    Census { v: usize, q: i64 },
    #[error("edge traversal did not close (internal)")]
    Traversal,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("cannot parse scheme document: {0}")]
    Parse(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Cw,
    Ccw,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingDoc {
    pub gen: String,
    pub from: String,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist_quarter_turns: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sense: Option<Sense>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub pairings: Vec<PairingDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FacePairing {
    pub gen: String,
    pub source: FaceId,
    pub target: FaceId,
    /// Source boundary vertex -> target boundary vertex.
    pub map: BTreeMap<VertexId, VertexId>,
}

impl FacePairing {
    pub fn inverse_map(&self) -> BTreeMap<VertexId, VertexId> {
        self.map.iter().map(|(&a, &b)| (b, a)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairingScheme {
    pub pairings: Vec<FacePairing>,
}

impl PairingScheme {
    pub fn from_doc(p: &AbstractPolyhedron, doc: &SchemeDoc) -> Result<Self, PairingError> {
        let mut pairings = Vec::with_capacity(doc.pairings.len());
        for pd in &doc.pairings {
            let source = p.face_id(&pd.from)?;
            let target = p.face_id(&pd.to)?;
            let map = match (&pd.map, pd.twist_quarter_turns) {
                (Some(m), None) => {
                    let mut out = BTreeMap::new();
                    for (a, b) in m {
                        let va = p.vertex_id(a).ok_or_else(|| bad(&pd.gen, format!("unknown vertex `{a}`")))?;
                        let vb = p.vertex_id(b).ok_or_else(|| bad(&pd.gen, format!("unknown vertex `{b}`")))?;
                        out.insert(va, vb);
                    }
                    out
                }
                (None, Some(k)) => expand_cube_twist(p, source, target, k, pd.sense.unwrap_or(Sense::Cw))?,
                _ => return Err(bad(&pd.gen, "give exactly one of `map` or `twist_quarter_turns`".into())),
            };
            pairings.push(FacePairing { gen: pd.gen.clone(), source, target, map });
        }
        Ok(Self { pairings })
    }

    pub fn parse(p: &AbstractPolyhedron, text: &str) -> Result<Self, PairingError> {
        Self::from_doc(p, &serde_json::from_str(text)?)
    }

    /// Explicit-map form.
    pub fn to_doc(&self, p: &AbstractPolyhedron, name: Option<String>) -> SchemeDoc {
        let names = p.vertices();
        SchemeDoc {
            name,
            pairings: self
                .pairings
                .iter()
                .map(|fp| PairingDoc {
                    gen: fp.gen.clone(),
                    from: p.face_names()[fp.source].clone(),
                    to: p.face_names()[fp.target].clone(),
                    map: Some(fp.map.iter().map(|(&a, &b)| (names[a].clone(), names[b].clone())).collect()),
                    twist_quarter_turns: None,
                    sense: None,
                })
                .collect(),
        }
    }

    pub fn pairing_of_face(&self, faces: usize) -> Vec<Option<(usize, bool)>> {
        let mut out = vec![None; faces];
        for (i, fp) in self.pairings.iter().enumerate() {
            out[fp.source] = Some((i, true));
            out[fp.target] = Some((i, false));
        }
        out
    }
}

fn bad(gen: &str, detail: String) -> PairingError {
    PairingError::BadCorrespondence { gen: gen.to_string(), detail }
}

/// Coverage, lengths, and that each correspondence carries the source cycle
/// onto the target cycle in one direction or the other.
pub fn check_structure(p: &AbstractPolyhedron, s: &PairingScheme) -> Result<(), PairingError> {
    let fname = |f: FaceId| p.face_names()[f].clone();
    let mut used = vec![false; p.face_count()];
    let mut gens = BTreeSet::new();
    for fp in &s.pairings {
        if !gens.insert(fp.gen.clone()) {
            return Err(PairingError::DuplicateGenerator(fp.gen.clone()));
        }
        if fp.source == fp.target {
            return Err(PairingError::SelfPaired(fname(fp.source)));
        }
        for f in [fp.source, fp.target] {
            if std::mem::replace(&mut used[f], true) {
                return Err(PairingError::FaceReused(fname(f)));
            }
        }
        let (sc, tc) = (&p.faces()[fp.source], &p.faces()[fp.target]);
        if sc.len() != tc.len() {
            return Err(PairingError::LengthMismatch { from: fname(fp.source), to: fname(fp.target) });
        }
        let keys: BTreeSet<_> = fp.map.keys().copied().collect();
        let vals: BTreeSet<_> = fp.map.values().copied().collect();
        if keys != sc.iter().copied().collect() || vals != tc.iter().copied().collect() || fp.map.len() != sc.len() {
            return Err(bad(&fp.gen, "not a bijection between the two boundaries".into()));
        }
        let k = sc.len();
        for i in 0..k {
            let (a, b) = (fp.map[&sc[i]], fp.map[&sc[(i + 1) % k]]);
            let j = tc.iter().position(|&x| x == a).expect("in target");
            if tc[(j + 1) % k] != b && tc[(j + k - 1) % k] != b {
                return Err(bad(&fp.gen, "consecutive boundary vertices are not sent to consecutive ones".into()));
            }
        }
    }
    if let Some(f) = used.iter().position(|u| !u) {
        return Err(PairingError::FaceUncovered(fname(f)));
    }
    Ok(())
}

/// True when m(next(x)) = prev(m(x)) around the whole source cycle.
pub fn reverses_orientation(p: &AbstractPolyhedron, fp: &FacePairing) -> bool {
    let (sc, tc) = (&p.faces()[fp.source], &p.faces()[fp.target]);
    let k = sc.len();
    (0..k).all(|i| {
        let a = fp.map[&sc[i]];
        let j = tc.iter().position(|&x| x == a).expect("in target");
        fp.map[&sc[(i + 1) % k]] == tc[(j + k - 1) % k]
    })
}

/// Full validation, including orientation reversal of every gluing.
pub fn validate_scheme(p: &AbstractPolyhedron, s: &PairingScheme) -> Result<(), PairingError> {
    check_structure(p, s)?;
    for fp in &s.pairings {
        if !reverses_orientation(p, fp) {
            return Err(PairingError::Orientation {
                gen: fp.gen.clone(),
                from: p.face_names()[fp.source].clone(),
                to: p.face_names()[fp.target].clone(),
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub gen: String,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: &str, inverse: bool) -> Self {
        Self { gen: gen.to_string(), inverse }
    }
    pub fn inv(&self) -> Self {
        Self { gen: self.gen.clone(), inverse: !self.inverse }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.gen)
        } else {
            f.write_str(&self.gen)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub edge: EdgeId,
    pub face: FaceId,
    pub letter: Letter,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeOrbit {
    pub steps: Vec<Step>,
}

impl EdgeOrbit {
    pub fn size(&self) -> usize {
        self.steps.len()
    }
    pub fn edges(&self) -> Vec<EdgeId> {
        self.steps.iter().map(|s| s.edge).collect()
    }
}

/// Flag traversal. From (edge, face) apply the pairing defined on that face;
/// the image edge's other face gives the next flag. Each orbit starts at the
/// lowest unvisited edge on its lower-id face.
pub fn edge_orbits(p: &AbstractPolyhedron, s: &PairingScheme) -> Result<Vec<EdgeOrbit>, PairingError> {
    check_structure(p, s)?;
    let inc = p.incidence();
    let owner = s.pairing_of_face(p.face_count());
    let inverses: Vec<_> = s.pairings.iter().map(FacePairing::inverse_map).collect();
    let mut visited = vec![false; p.edge_count()];
    let mut out = Vec::new();
    for e0 in 0..p.edge_count() {
        if visited[e0] {
            continue;
        }
        let start = (e0, inc.edge_faces[e0][0]);
        let mut cur = start;
        let mut steps = Vec::new();
        loop {
            let (e, f) = cur;
            let (pi, is_source) = owner[f].expect("covered");
            let fp = &s.pairings[pi];
            let (map, dest) = if is_source { (&fp.map, fp.target) } else { (&inverses[pi], fp.source) };
            let [a, b] = inc.edges[e];
            let e2 = inc.edge_between(map[&a], map[&b]).ok_or(PairingError::Traversal)?;
            steps.push(Step { edge: e, face: f, letter: Letter::new(&fp.gen, !is_source) });
            visited[e] = true;
            cur = (e2, inc.other_face(e2, dest));
            if cur == start {
                break;
            }
            if steps.len() > 2 * p.edge_count() {
                return Err(PairingError::Traversal);
            }
        }
        out.push(EdgeOrbit { steps });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RelatorWord {
    pub letters: Vec<Letter>,
}

impl RelatorWord {
    pub fn parse(text: &str) -> Self {
        // single-letter generators, `'` or `^-1` marks an inverse
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let g = chars[i].to_string();
            i += 1;
            let mut inverse = false;
            if chars.get(i) == Some(&'\'') {
                inverse = true;
                i += 1;
            } else if chars[i..].starts_with(&['^', '-', '1']) {
                inverse = true;
                i += 3;
            }
            letters.push(Letter { gen: g, inverse });
        }
        Self { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self { letters: self.letters.iter().rev().map(Letter::inv).collect() }
    }

    pub fn rotated(&self, r: usize) -> Self {
        let n = self.letters.len();
        Self { letters: (0..n).map(|i| self.letters[(i + r) % n].clone()).collect() }
    }

    /// No X X^-1 anywhere in the cyclic word.
    pub fn is_cyclically_reduced(&self) -> bool {
        let n = self.letters.len();
        n < 2 || (0..n).all(|i| self.letters[(i + 1) % n] != self.letters[i].inv())
    }
}

impl fmt::Display for RelatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for l in &self.letters {
            if l.inverse {
                write!(f, "{}'", l.gen)?;
            } else {
                write!(f, "{}", l.gen)?;
            }
        }
        Ok(())
    }
}

pub fn relator_word(o: &EdgeOrbit) -> RelatorWord {
    RelatorWord { letters: o.steps.iter().map(|s| s.letter.clone()).collect() }
}

/// Equal up to cyclic rotation, formal inversion, and a consistent renaming
/// of generators in which each generator may also be replaced by its inverse.
pub fn words_equivalent(a: &RelatorWord, b: &RelatorWord) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let try_align = |x: &RelatorWord, y: &RelatorWord| -> bool {
        let mut fwd: BTreeMap<&str, (&str, bool)> = BTreeMap::new();
        let mut back: BTreeMap<&str, &str> = BTreeMap::new();
        for (l, m) in x.letters.iter().zip(&y.letters) {
            let flip = l.inverse != m.inverse;
            match fwd.get(l.gen.as_str()) {
                Some(&(g, f)) if g != m.gen || f != flip => return false,
                Some(_) => {}
                None => {
                    if back.get(m.gen.as_str()).is_some_and(|&g| g != l.gen) {
                        return false;
                    }
                    fwd.insert(&l.gen, (&m.gen, flip));
                    back.insert(&m.gen, &l.gen);
                }
            }
        }
        true
    };
    [b.clone(), b.inverse()].iter().any(|bb| (0..bb.len()).any(|r| try_align(a, &bb.rotated(r))))
}

/// Classes of vertices under all correspondences.
pub fn vertex_orbits(p: &AbstractPolyhedron, s: &PairingScheme) -> Vec<Vec<VertexId>> {
    let n = p.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for fp in &s.pairings {
        for (&a, &b) in &fp.map {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuotientCensus {
    #[serde(rename = "V")]
    pub v: usize,
    #[serde(rename = "E")]
    pub e: usize,
    #[serde(rename = "F")]
    pub f: usize,
    #[serde(rename = "P")]
    pub p: usize,
    /// Euler characteristic V - E + F - P.
    pub q: i64,
}

impl QuotientCensus {
    pub fn count(p: &AbstractPolyhedron, s: &PairingScheme, orbits: &[EdgeOrbit]) -> Self {
        let v = vertex_orbits(p, s).len();
        let e = orbits.len();
        let f = s.pairings.len();
        let q = v as i64 - e as i64 + f as i64 - 1;
        Self { v, e, f, p: 1, q }
    }
}

/// Census with the identity V = q enforced.
pub fn quotient_census(
    p: &AbstractPolyhedron,
    s: &PairingScheme,
    orbits: &[EdgeOrbit],
) -> Result<QuotientCensus, PairingError> {
    let c = QuotientCensus::count(p, s, orbits);
    if c.v as i64 != c.q || 2 * c.f != p.face_count() {
        return Err(PairingError::Census { v: c.v, q: c.q });
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EllipticFlag {
    pub pairing: usize,
    pub gen: String,
    pub edge: EdgeId,
}

/// Pairings between adjacent faces that send a shared edge to itself.
pub fn detect_elliptic_generator(p: &AbstractPolyhedron, s: &PairingScheme) -> Vec<EllipticFlag> {
    let inc = p.incidence();
    let mut out = Vec::new();
    for (i, fp) in s.pairings.iter().enumerate() {
        for e in p.shared_edges(fp.source, fp.target) {
            let [a, b] = inc.edges[e];
            let (ma, mb) = (fp.map.get(&a), fp.map.get(&b));
            if let (Some(&ma), Some(&mb)) = (ma, mb) {
                if (ma.min(mb), ma.max(mb)) == (a.min(b), a.max(b)) {
                    out.push(EllipticFlag { pairing: i, gen: fp.gen.clone(), edge: e });
                }
            }
        }
    }
    out
}

pub fn symmetry_group(p: &AbstractPolyhedron) -> Vec<Isomorphism> {
    isomorphisms(p, p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupChoice {
    Rotations,
    All,
}

impl std::str::FromStr for GroupChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rotations" => Ok(Self::Rotations),
            "all" => Ok(Self::All),
            other => Err(format!("unknown group `{other}` (expected rotations|all)")),
        }
    }
}

/// Unordered face pairs of a scheme.
pub fn face_matching(s: &PairingScheme) -> BTreeSet<(FaceId, FaceId)> {
    s.pairings.iter().map(|fp| (fp.source.min(fp.target), fp.source.max(fp.target))).collect()
}

/// Whether some automorphism carries the face matching of `a` onto that of `b`.
pub fn same_face_matching(group: &[Isomorphism], a: &PairingScheme, b: &PairingScheme) -> bool {
    let target = face_matching(b);
    group.iter().any(|g| {
        let img: BTreeSet<_> = face_matching(a)
            .into_iter()
            .map(|(x, y)| {
                let (u, v) = (g.face_map[x], g.face_map[y]);
                (u.min(v), u.max(v))
            })
            .collect();
        img == target
    })
}

type KeyEntry = (FaceId, FaceId, Vec<(VertexId, VertexId)>);

fn transformed_key(s: &PairingScheme, sigma: &Isomorphism) -> Vec<KeyEntry> {
    let mut entries: Vec<KeyEntry> = s
        .pairings
        .iter()
        .map(|fp| {
            let (mut a, mut b) = (sigma.face_map[fp.source], sigma.face_map[fp.target]);
            let mut m: Vec<(VertexId, VertexId)> =
                fp.map.iter().map(|(&x, &y)| (sigma.vertex_map[x], sigma.vertex_map[y])).collect();
            if a > b {
                std::mem::swap(&mut a, &mut b);
                m = m.into_iter().map(|(x, y)| (y, x)).collect();
            }
            m.sort_unstable();
            (a, b, m)
        })
        .collect();
    entries.sort();
    entries
}

/// Smallest serialized form over the chosen automorphism subgroup. Generator
/// symbols and pairing directions are not part of the key.
pub fn canonicalize(s: &PairingScheme, group: &[Isomorphism], choice: GroupChoice) -> Vec<u8> {
    let best = group
        .iter()
        .filter(|g| choice == GroupChoice::All || g.orientation_preserving)
        .map(|g| transformed_key(s, g))
        .min()
        .unwrap_or_default();
    let mut out = String::new();
    for (a, b, m) in best {
        out.push_str(&format!("{a}>{b}:"));
        let parts: Vec<String> = m.iter().map(|(x, y)| format!("{x}={y}")).collect();
        out.push_str(&parts.join(","));
        out.push(';');
    }
    out.into_bytes()
}

/// Position of a vertex of the bundled cube, from its front/back, bottom/top,
/// left/right name, in coordinates +-1.
pub fn cube_position(name: &str) -> Option<[i32; 3]> {
    let c: Vec<char> = name.chars().collect();
    if c.len() != 3 {
        return None;
    }
    let z = match c[0] {
        'F' => -1,
        'B' => 1,
        _ => return None,
    };
    let y = match c[1] {
        'B' => -1,
        'T' => 1,
        _ => return None,
    };
    let x = match c[2] {
        'L' => -1,
        'R' => 1,
        _ => return None,
    };
    Some([x, y, z])
}

pub fn cube_face_normal(name: &str) -> Option<[i32; 3]> {
    Some(match name {
        "left" => [-1, 0, 0],
        "right" => [1, 0, 0],
        "bottom" => [0, -1, 0],
        "top" => [0, 1, 0],
        "front" => [0, 0, -1],
        "back" => [0, 0, 1],
        _ => return None,
    })
}

/// The fixed viewpoint against which "clockwise" is read: outside the
/// left-bottom-back corner. Chosen so that the FD(1) and FD(2) shorthands
/// reproduce their drawn edge classes.
pub const TWIST_VIEWER: [i32; 3] = [-1, -1, 1];

fn cross(a: [i32; 3], b: [i32; 3]) -> [i32; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn idot(a: [i32; 3], b: [i32; 3]) -> i32 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn add(a: [i32; 3], b: [i32; 3]) -> [i32; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: [i32; 3], b: [i32; 3]) -> [i32; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Quarter turn of `p` about the axis `n` through `o`; `sign` +1 is
/// counterclockwise seen from the tip of `n`.
fn quarter_turn(p: [i32; 3], n: [i32; 3], o: [i32; 3], sign: i32) -> [i32; 3] {
    let d = sub(p, o);
    let c = cross(n, d);
    let along = idot(n, d);
    add(o, [sign * c[0] + n[0] * along, sign * c[1] + n[1] * along, sign * c[2] + n[2] * along])
}

/// Expand "src -> dst with k quarter twists" on the bundled cube.
///
/// Untwisted, opposite faces are glued by translation and adjacent faces by
/// folding about their shared edge. The twist then turns the image within
/// `dst`, clockwise or counterclockwise as seen from [`TWIST_VIEWER`].
pub fn expand_cube_twist(
    p: &AbstractPolyhedron,
    src: FaceId,
    dst: FaceId,
    k: u8,
    sense: Sense,
) -> Result<BTreeMap<VertexId, VertexId>, PairingError> {
    let sugar = |m: String| PairingError::Sugar(m);
    let normal = |f: FaceId| {
        cube_face_normal(&p.face_names()[f])
            .ok_or_else(|| sugar(format!("face `{}` is not a named cube face", p.face_names()[f])))
    };
    let (ns, nd) = (normal(src)?, normal(dst)?);
    let mut pos = Vec::with_capacity(p.vertex_count());
    for v in p.vertices() {
        pos.push(cube_position(v).ok_or_else(|| sugar(format!("vertex `{v}` has no cube position")))?);
    }
    for (f, cyc) in p.faces().iter().enumerate() {
        let n = normal(f)?;
        if cyc.len() != 4 || cyc.iter().any(|&v| idot(pos[v], n) != 1) {
            return Err(sugar(format!("face `{}` does not match its position", p.face_names()[f])));
        }
    }
    if k > 3 {
        return Err(sugar(format!("{k} quarter turns; expected 0..=3")));
    }
    let relation = idot(ns, nd);
    if relation == 1 {
        return Err(sugar("source and target coincide".into()));
    }
    let facing = idot(nd, TWIST_VIEWER) > 0;
    let mut sign = if facing { -1 } else { 1 };
    if sense == Sense::Ccw {
        sign = -sign;
    }
    let mut out = BTreeMap::new();
    for &v in &p.faces()[src] {
        let mut x = if relation == -1 {
            add(pos[v], [2 * nd[0], 2 * nd[1], 2 * nd[2]])
        } else {
            quarter_turn(pos[v], cross(ns, nd), add(ns, nd), -1)
        };
        for _ in 0..k {
            x = quarter_turn(x, nd, nd, sign);
        }
        let w = pos.iter().position(|&q| q == x).ok_or_else(|| sugar("image is not a vertex".into()))?;
        if !p.faces()[dst].contains(&w) {
            return Err(sugar("image left the target face".into()));
        }
        out.insert(v, w);
    }
    Ok(out)
}
