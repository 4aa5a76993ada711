//! Exhaustive search over face-pairing schemes, the torsion-free filters, and
//! grouping of survivors under symmetry.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angles::{
    assemble_system, feasible, required_class_count, solve_exact, AngleAssignment, AngleError, FeasibilityLimits,
    RivinContext, SolutionSet, SolutionStatus,
};
use crate::pairings::{
    canonicalize, detect_elliptic_generator, edge_orbits, quotient_census, relator_word, symmetry_group,
    validate_scheme, EdgeOrbit, FacePairing, GroupChoice, PairingError, PairingScheme, QuotientCensus, RelatorWord,
    SchemeDoc,
};
use crate::polytope::{AbstractPolyhedron, FaceId, Isomorphism, PolyhedronDoc, PolytopeError, VertexId, DEFAULT_CIRCUIT_CAP};

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("{0} faces cannot be perfectly matched")]
    OddFaceCount(usize),
    #[error("search space of {count} schemes exceeds the cap of {cap}")]
    TooManySchemes { count: String, cap: u128 },
    #[error(transparent)]
    Angle(#[from] AngleError),
    #[error(transparent)]
    Pairing(#[from] PairingError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("candidate document: {0}")]
    Document(String),
}

/// Generator symbol for the i-th pairing: A..Z, then G26, G27, ...
pub fn generator_name(i: usize) -> String {
    if i < 26 {
        ((b'A' + i as u8) as char).to_string()
    } else {
        format!("G{i}")
    }
}

/// Perfect matchings of faces into pairs of equal length, each pair listed
/// lower id first, matchings in lexicographic order.
pub fn face_matchings(p: &AbstractPolyhedron) -> Result<Vec<Vec<(FaceId, FaceId)>>, EnumerateError> {
    let n = p.face_count();
    if n % 2 != 0 {
        return Err(EnumerateError::OddFaceCount(n));
    }
    fn rec(p: &AbstractPolyhedron, used: &mut [bool], cur: &mut Vec<(FaceId, FaceId)>, out: &mut Vec<Vec<(FaceId, FaceId)>>) {
        let Some(a) = used.iter().position(|u| !u) else {
            out.push(cur.clone());
            return;
        };
        used[a] = true;
        for b in a + 1..used.len() {
            if !used[b] && p.faces()[a].len() == p.faces()[b].len() {
                used[b] = true;
                cur.push((a, b));
                rec(p, used, cur, out);
                cur.pop();
                used[b] = false;
            }
        }
        used[a] = false;
    }
    let mut out = Vec::new();
    rec(p, &mut vec![false; n], &mut Vec::new(), &mut out);
    Ok(out)
}

/// The k orientation-reversing vertex correspondences from face `f` onto face
/// `g` (both of length k): f[i] -> g[(s - i) mod k] for s = 0..k.
pub fn reversing_correspondences(p: &AbstractPolyhedron, f: FaceId, g: FaceId) -> Vec<BTreeMap<VertexId, VertexId>> {
    let (fc, gc) = (&p.faces()[f], &p.faces()[g]);
    let k = fc.len();
    (0..k).map(|s| (0..k).map(|i| (fc[i], gc[(s + k - i) % k])).collect()).collect()
}

/// Size of the search space without enumerating it.
pub fn count_schemes(p: &AbstractPolyhedron) -> Result<u128, EnumerateError> {
    let n = p.face_count();
    if n % 2 != 0 {
        return Err(EnumerateError::OddFaceCount(n));
    }
    let mut by_len: BTreeMap<usize, u32> = BTreeMap::new();
    for f in p.faces() {
        *by_len.entry(f.len()).or_default() += 1;
    }
    let mut total: u128 = 1;
    for (&k, &m) in &by_len {
        if m % 2 != 0 {
            return Ok(0);
        }
        let mut dfact: u128 = 1;
        let mut i = m as u128 - 1;
        while i > 1 {
            dfact = dfact.saturating_mul(i);
            i -= 2;
        }
        total = total.saturating_mul(dfact).saturating_mul((k as u128).saturating_pow(m / 2));
    }
    Ok(total)
}

/// Every perfect matching times every orientation-reversing correspondence
/// per pair, exactly once each. Pairings run lower face -> higher face and
/// are named A, B, C, ... in matching order.
pub fn enumerate_schemes(p: &AbstractPolyhedron) -> Result<Vec<PairingScheme>, EnumerateError> {
    let mut out = Vec::new();
    for m in face_matchings(p)? {
        let choices: Vec<_> = m.iter().map(|&(a, b)| reversing_correspondences(p, a, b)).collect();
        let mut idx = vec![0usize; m.len()];
        'odometer: loop {
            let pairings = m
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| FacePairing { gen: generator_name(i), source: a, target: b, map: choices[i][idx[i]].clone() })
                .collect();
            out.push(PairingScheme { pairings });
            // last pair turns fastest
            let mut j = m.len();
            loop {
                if j == 0 {
                    break 'odometer;
                }
                j -= 1;
                idx[j] += 1;
                if idx[j] < choices[j].len() {
                    break;
                }
                idx[j] = 0;
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    /// Coverage, bijective boundary maps, orientation reversal.
    Validity,
    /// A pairing of adjacent faces fixes a shared edge.
    Elliptic,
    /// Number of edge orbits differs from the required class count.
    ClassCount,
    /// Angle system malformed (class of size below 3) or inconsistent.
    Solve,
    /// No solution satisfies the strict Rivin inequalities.
    Strict,
}

impl Filter {
    pub const ALL: [Filter; 5] = [Filter::Validity, Filter::Elliptic, Filter::ClassCount, Filter::Solve, Filter::Strict];

    pub fn name(&self) -> &'static str {
        match self {
            Filter::Validity => "validity",
            Filter::Elliptic => "elliptic",
            Filter::ClassCount => "class-count",
            Filter::Solve => "solve",
            Filter::Strict => "strict",
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    pub order: Vec<Filter>,
    pub circuit_cap: usize,
    pub limits: FeasibilityLimits,
    pub scheme_cap: u128,
}

pub const DEFAULT_SCHEME_CAP: u128 = 200_000;

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            order: Filter::ALL.to_vec(),
            circuit_cap: DEFAULT_CIRCUIT_CAP,
            limits: FeasibilityLimits::default(),
            scheme_cap: DEFAULT_SCHEME_CAP,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CandidateDomain {
    pub scheme: PairingScheme,
    pub orbits: Vec<EdgeOrbit>,
    pub words: Vec<RelatorWord>,
    pub solution: SolutionSet,
    /// A point of the open solution region.
    pub witness: AngleAssignment,
    pub census: QuotientCensus,
    pub key_rotations: String,
    pub key_all: String,
}

impl CandidateDomain {
    pub fn orbit_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.orbits.iter().map(EdgeOrbit::size).collect();
        s.sort_unstable();
        s
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        self.orbits.iter().map(EdgeOrbit::edges).collect()
    }

    /// Contains the constant assignment V/E.
    pub fn admits_uniform(&self, p: &AbstractPolyhedron) -> bool {
        let u = AngleAssignment::uniform(
            p.edge_count(),
            crate::angles::q(p.vertex_count() as i64, p.edge_count() as i64),
        );
        assemble_system(p, &self.classes()).map(|s| s.satisfied_by(&u)).unwrap_or(false)
    }

    /// Self-contained document: polyhedron, explicit scheme, and derived data.
    pub fn to_json(&self, p: &AbstractPolyhedron) -> serde_json::Value {
        serde_json::json!({
            "polyhedron": p.to_doc(),
            "scheme": self.scheme.to_doc(p, None),
            "orbits": self.orbits.iter().map(|o| o.steps.iter().map(|s| p.edge_label(s.edge)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "orbit_sizes": self.orbit_sizes(),
            "words": self.words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "solution": self.solution.to_json(),
            "witness": self.witness.to_json(),
            "census": self.census,
            "key_rotations": self.key_rotations,
            "key_all": self.key_all,
        })
    }
}

/// Reads the polyhedron and scheme back from a candidate (or plain
/// `{polyhedron, scheme}`) document.
pub fn read_candidate_doc(v: &serde_json::Value) -> Result<(AbstractPolyhedron, PairingScheme), EnumerateError> {
    let pd: PolyhedronDoc = serde_json::from_value(v.get("polyhedron").cloned().ok_or_else(|| EnumerateError::Document("missing `polyhedron`".into()))?)
        .map_err(|e| EnumerateError::Document(e.to_string()))?;
    let p = AbstractPolyhedron::from_doc(&pd)?;
    let sd: SchemeDoc = serde_json::from_value(v.get("scheme").cloned().ok_or_else(|| EnumerateError::Document("missing `scheme`".into()))?)
        .map_err(|e| EnumerateError::Document(e.to_string()))?;
    let s = PairingScheme::from_doc(&p, &sd)?;
    Ok((p, s))
}

/// Reusable state for running filters on one polyhedron.
pub struct Classifier<'a> {
    pub p: &'a AbstractPolyhedron,
    pub ctx: RivinContext,
    pub group: Vec<Isomorphism>,
    pub required: usize,
    pub limits: FeasibilityLimits,
}

#[derive(Default)]
struct Work {
    orbits: Option<Result<Vec<EdgeOrbit>, ()>>,
    solved: Option<Option<SolutionSet>>,
    strict: Option<Option<AngleAssignment>>,
}

#[derive(Debug, Clone)]
pub enum Outcome {
    Rejected(Filter),
    Survived(Box<CandidateDomain>),
}

impl<'a> Classifier<'a> {
    pub fn new(p: &'a AbstractPolyhedron, circuit_cap: usize, limits: FeasibilityLimits) -> Result<Self, EnumerateError> {
        Ok(Self { p, ctx: RivinContext::new(p, circuit_cap)?, group: symmetry_group(p), required: required_class_count(p)?, limits })
    }

    fn orbits<'w>(&self, s: &PairingScheme, w: &'w mut Work) -> Option<&'w Vec<EdgeOrbit>> {
        w.orbits.get_or_insert_with(|| edge_orbits(self.p, s).map_err(|_| ())).as_ref().ok()
    }

    fn solved(&self, s: &PairingScheme, w: &mut Work) -> Option<SolutionSet> {
        if w.solved.is_none() {
            let r = self.orbits(s, w).and_then(|o| {
                let classes: Vec<_> = o.iter().map(EdgeOrbit::edges).collect();
                let sys = assemble_system(self.p, &classes).ok()?;
                let sol = solve_exact(&sys);
                (sol.status != SolutionStatus::Infeasible).then_some(sol)
            });
            w.solved = Some(r);
        }
        w.solved.clone().flatten()
    }

    fn strict(&self, s: &PairingScheme, w: &mut Work) -> Result<Option<AngleAssignment>, EnumerateError> {
        if w.strict.is_none() {
            let r = match self.orbits(s, w) {
                None => None,
                Some(o) => {
                    let classes: Vec<_> = o.iter().map(EdgeOrbit::edges).collect();
                    match assemble_system(self.p, &classes) {
                        Err(_) => None,
                        Ok(sys) => {
                            let f = feasible(&self.ctx, &sys, self.limits)?;
                            f.witness.filter(|_| f.feasible)
                        }
                    }
                }
            };
            w.strict = Some(r);
        }
        Ok(w.strict.clone().flatten())
    }

    fn passes(&self, f: Filter, s: &PairingScheme, w: &mut Work) -> Result<bool, EnumerateError> {
        Ok(match f {
            Filter::Validity => validate_scheme(self.p, s).is_ok(),
            Filter::Elliptic => detect_elliptic_generator(self.p, s).is_empty(),
            Filter::ClassCount => self.orbits(s, w).is_some_and(|o| o.len() == self.required),
            Filter::Solve => self.solved(s, w).is_some(),
            Filter::Strict => self.strict(s, w)?.is_some(),
        })
    }

    /// One filter in isolation.
    pub fn check(&self, f: Filter, s: &PairingScheme) -> Result<bool, EnumerateError> {
        self.passes(f, s, &mut Work::default())
    }

    /// Filters in the given order; the first failure rejects.
    pub fn evaluate(&self, s: &PairingScheme, order: &[Filter]) -> Result<Outcome, EnumerateError> {
        let mut w = Work::default();
        for &f in order {
            if !self.passes(f, s, &mut w)? {
                return Ok(Outcome::Rejected(f));
            }
        }
        // complete whatever the order skipped
        for f in Filter::ALL {
            if !self.passes(f, s, &mut w)? {
                return Ok(Outcome::Rejected(f));
            }
        }
        let orbits = self.orbits(s, &mut w).cloned().expect("passed");
        let solution = self.solved(s, &mut w).expect("passed");
        let witness = self.strict(s, &mut w)?.expect("passed");
        let census = quotient_census(self.p, s, &orbits)?;
        let words = orbits.iter().map(relator_word).collect();
        let key = |c| String::from_utf8(canonicalize(s, &self.group, c)).expect("ascii");
        Ok(Outcome::Survived(Box::new(CandidateDomain {
            scheme: s.clone(),
            orbits,
            words,
            solution,
            witness,
            census,
            key_rotations: key(GroupChoice::Rotations),
            key_all: key(GroupChoice::All),
        })))
    }

    /// Analysis of a scheme that passes every filter, or the first filter it
    /// fails in the default order.
    pub fn analyze(&self, s: &PairingScheme) -> Result<Result<CandidateDomain, Filter>, EnumerateError> {
        Ok(match self.evaluate(s, &Filter::ALL)? {
            Outcome::Survived(c) => Ok(*c),
            Outcome::Rejected(f) => Err(f),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Family {
    pub key: String,
    /// Indices into `EnumerationReport::candidates`.
    pub members: Vec<usize>,
    /// Rotation-class keys inside this family (full-group families only).
    pub rotation_classes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct EnumerationReport {
    pub polyhedron: String,
    pub total: usize,
    pub order: Vec<Filter>,
    pub rejected: BTreeMap<Filter, usize>,
    pub candidates: Vec<CandidateDomain>,
    /// Index of each candidate in enumeration order.
    pub scheme_index: Vec<usize>,
    pub families_rotations: Vec<Family>,
    pub families_all: Vec<Family>,
}

impl EnumerationReport {
    pub fn survivors(&self) -> usize {
        self.candidates.len()
    }

    pub fn family_of(&self, key_all: &str) -> Option<&Family> {
        self.families_all.iter().find(|f| f.key == key_all)
    }

    pub fn to_json(&self, group: GroupChoice) -> serde_json::Value {
        let rejected: serde_json::Map<String, serde_json::Value> =
            self.rejected.iter().map(|(f, n)| (f.name().to_string(), (*n).into())).collect();
        let fam = |fs: &[Family]| {
            fs.iter()
                .map(|f| {
                    serde_json::json!({
                        "key": f.key,
                        "members": f.members.iter().map(|&i| format!("candidate_{:04}", self.scheme_index[i])).collect::<Vec<_>>(),
                        "rotation_classes": f.rotation_classes,
                    })
                })
                .collect::<Vec<_>>()
        };
        let primary = match group {
            GroupChoice::All => fam(&self.families_all),
            GroupChoice::Rotations => fam(&self.families_rotations),
        };
        serde_json::json!({
            "polyhedron": self.polyhedron,
            "total": self.total,
            "filter_order": self.order.iter().map(Filter::name).collect::<Vec<_>>(),
            "rejected": rejected,
            "survivors": self.survivors(),
            "group": group,
            "families": primary,
            "families_rotations": fam(&self.families_rotations),
            "families_all": fam(&self.families_all),
        })
    }
}

fn group_by<'k>(keys: impl Iterator<Item = (usize, &'k str)>) -> BTreeMap<String, Vec<usize>> {
    let mut m: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, k) in keys {
        m.entry(k.to_string()).or_default().push(i);
    }
    m
}

/// Enumerate every scheme, run the filters, and group survivors.
pub fn classify(p: &AbstractPolyhedron, opts: &ClassifyOptions) -> Result<EnumerationReport, EnumerateError> {
    let count = count_schemes(p)?;
    if count > opts.scheme_cap {
        return Err(EnumerateError::TooManySchemes { count: count.to_string(), cap: opts.scheme_cap });
    }
    let c = Classifier::new(p, opts.circuit_cap, opts.limits)?;
    let schemes = enumerate_schemes(p)?;
    let mut rejected: BTreeMap<Filter, usize> = Filter::ALL.iter().map(|&f| (f, 0)).collect();
    let mut candidates = Vec::new();
    let mut scheme_index = Vec::new();
    for (i, s) in schemes.iter().enumerate() {
        match c.evaluate(s, &opts.order)? {
            Outcome::Rejected(f) => *rejected.get_mut(&f).expect("all filters") += 1,
            Outcome::Survived(cd) => {
                candidates.push(*cd);
                scheme_index.push(i);
            }
        }
    }
    let rot = group_by(candidates.iter().enumerate().map(|(i, c)| (i, c.key_rotations.as_str())));
    let all = group_by(candidates.iter().enumerate().map(|(i, c)| (i, c.key_all.as_str())));
    let families_rotations = rot.into_iter().map(|(key, members)| Family { key, members, rotation_classes: vec![] }).collect();
    let families_all = all
        .into_iter()
        .map(|(key, members)| {
            let mut rc: Vec<String> = members.iter().map(|&i| candidates[i].key_rotations.clone()).collect();
            rc.sort();
            rc.dedup();
            Family { key, members, rotation_classes: rc }
        })
        .collect();
    Ok(EnumerationReport {
        polyhedron: p.name().to_string(),
        total: schemes.len(),
        order: opts.order.clone(),
        rejected,
        candidates,
        scheme_index,
        families_rotations,
        families_all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;
    use crate::pairings::reverses_orientation;
    use crate::polytope::load_polyhedron;
    use std::collections::BTreeSet;

    #[test]
    fn search_space_sizes() {
        let cube = data::cube();
        assert_eq!(face_matchings(&cube).unwrap().len(), 15);
        assert_eq!(enumerate_schemes(&cube).unwrap().len(), 960);
        assert_eq!(count_schemes(&cube).unwrap(), 960);
        let tet = data::platonic("tetrahedron").unwrap();
        assert_eq!(enumerate_schemes(&tet).unwrap().len(), 27);
        assert_eq!(count_schemes(&data::platonic("icosahedron").unwrap()).unwrap(), 654_729_075 * 3u128.pow(10));
    }

    #[test]
    fn schemes_are_distinct_and_reversing() {
        let cube = data::cube();
        let all = enumerate_schemes(&cube).unwrap();
        let set: BTreeSet<_> = all.iter().map(|s| format!("{:?}", s.pairings)).collect();
        assert_eq!(set.len(), all.len());
        for s in &all {
            validate_scheme(&cube, s).unwrap();
            assert!(s.pairings.iter().all(|fp| reverses_orientation(&cube, fp)));
        }
    }

    #[test]
    fn odd_face_count_rejected() {
        // square pyramid: five faces
        let pyr = load_polyhedron(
            r#"{"name":"pyramid","vertices":["a","b","c","d","t"],
                "faces":[["a","d","c","b"],["a","b","t"],["b","c","t"],["c","d","t"],["d","a","t"]]}"#,
        )
        .unwrap();
        assert!(matches!(enumerate_schemes(&pyr), Err(EnumerateError::OddFaceCount(5))));
    }

    #[test]
    fn scheme_cap_guards_icosahedron() {
        let ico = data::platonic("icosahedron").unwrap();
        assert!(matches!(classify(&ico, &ClassifyOptions::default()), Err(EnumerateError::TooManySchemes { .. })));
    }

    #[test]
    fn tetrahedron_survivors_have_single_class() {
        let tet = data::platonic("tetrahedron").unwrap();
        let r = classify(&tet, &ClassifyOptions::default()).unwrap();
        assert_eq!(r.total, 27);
        assert_eq!(r.rejected.values().sum::<usize>() + r.survivors(), 27);
        for c in &r.candidates {
            assert_eq!(c.orbits.len(), 1);
        }
    }

    #[test]
    fn fd1_is_a_candidate() {
        let cube = data::cube();
        let c = Classifier::new(&cube, DEFAULT_CIRCUIT_CAP, FeasibilityLimits::default()).unwrap();
        let s = PairingScheme::from_doc(&cube, &data::fd1_doc()).unwrap();
        let cd = c.analyze(&s).unwrap().unwrap();
        assert_eq!(cd.orbit_sizes(), vec![6, 6]);
        assert!(cd.admits_uniform(&cube));
        let fd3 = PairingScheme::from_doc(&cube, &data::fd3_figure_doc()).unwrap();
        assert_eq!(c.analyze(&fd3).unwrap().unwrap_err(), Filter::Validity);
    }

    #[test]
    fn candidate_document_round_trip() {
        let cube = data::cube();
        let c = Classifier::new(&cube, DEFAULT_CIRCUIT_CAP, FeasibilityLimits::default()).unwrap();
        let s = PairingScheme::from_doc(&cube, &data::fd2_doc()).unwrap();
        let cd = c.analyze(&s).unwrap().unwrap();
        let j = cd.to_json(&cube);
        let (p2, s2) = read_candidate_doc(&j).unwrap();
        assert_eq!(p2.to_doc(), cube.to_doc());
        assert_eq!(s2, s);
    }

    #[test]
    fn cube_census() {
        let cube = data::cube();
        let r = classify(&cube, &ClassifyOptions::default()).unwrap();
        assert_eq!(r.total, 960);
        assert_eq!(r.rejected.values().sum::<usize>() + r.survivors(), 960);
        assert_eq!(r.survivors(), 30);
        assert_eq!(r.families_all.len(), 3);
        let mut sizes: Vec<_> = r.families_all.iter().map(|f| (f.members.len(), f.rotation_classes.len())).collect();
        sizes.sort();
        assert_eq!(sizes, vec![(6, 2), (12, 1), (12, 2)]);
        for c in &r.candidates {
            assert!(c.orbit_sizes().iter().all(|&n| n >= 3));
        }
    }
}
