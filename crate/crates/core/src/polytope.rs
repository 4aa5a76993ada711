//! Combinatorial polyhedra: faces as vertex cycles, derived incidences, the
//! dual graph and its simple circuits.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

/// Default upper bound on the number of simple circuits enumerated.
pub const DEFAULT_CIRCUIT_CAP: usize = 100_000;

#[derive(Debug, Error)]
pub enum PolytopeError {
    #[error("cannot parse polyhedron document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("duplicate vertex identifier `{0}`")]
    DuplicateVertex(String),
    #[error("face {face} references unknown vertex `{vertex}`")]
    UnknownVertex { face: usize, vertex: String },
    #[error("face {face} has {len} vertices; at least 3 are required")]
    ShortFace { face: usize, len: usize },
    #[error("face {face} repeats vertex `{vertex}`")]
    RepeatedVertex { face: usize, vertex: String },
    #[error("edge {a}-{b} borders {count} faces; every edge must border exactly 2")]
    NonManifold { a: String, b: String, count: usize },
    #[error("edge {a}-{b} is traversed in the same direction by two faces; face cycles are not consistently oriented")]
    InconsistentOrientation { a: String, b: String },
    #[error("Euler characteristic is {chi}, expected 2 (V={v}, E={e}, F={f})")]
    Euler { v: usize, e: usize, f: usize, chi: i64 },
    #[error("face-adjacency graph is disconnected")]
    Disconnected,
    #[error("face_names has {got} entries for {faces} faces, or contains duplicates")]
    FaceNames { got: usize, faces: usize },
    #[error("unknown face `{0}`")]
    UnknownFace(String),
    #[error("no bundled polyhedron named `{0}`")]
    UnknownSolid(String),
    #[error("simple circuit count exceeds the cap of {cap}")]
    CircuitCap { cap: usize },
}

/// On-disk form of a polyhedron.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedronDoc {
    pub name: String,
    pub vertices: Vec<String>,
    pub faces: Vec<Vec<String>>,
    /// Optional human names for faces, parallel to `faces`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face_names: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceData {
    /// Endpoints of each edge, in the order first met along a face cycle.
    pub edges: Vec<[VertexId; 2]>,
    /// The two faces bordering each edge; the first is always the lower id.
    pub edge_faces: Vec<[FaceId; 2]>,
    /// Sorted incident edges per vertex.
    pub vertex_edges: Vec<Vec<EdgeId>>,
    /// `face_edges[f][i]` joins `faces[f][i]` and `faces[f][i+1]`.
    pub face_edges: Vec<Vec<EdgeId>>,
    lookup: HashMap<(VertexId, VertexId), EdgeId>,
}

impl IncidenceData {
    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.lookup.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn other_face(&self, e: EdgeId, f: FaceId) -> FaceId {
        let [x, y] = self.edge_faces[e];
        if x == f {
            y
        } else {
            x
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// A validated, immutable polyhedron.
#[derive(Debug, Clone)]
pub struct AbstractPolyhedron {
    name: String,
    vertices: Vec<String>,
    faces: Vec<Vec<VertexId>>,
    face_names: Vec<String>,
    vertex_index: HashMap<String, VertexId>,
    incidence: IncidenceData,
}

impl AbstractPolyhedron {
    pub fn from_doc(doc: &PolyhedronDoc) -> Result<Self, PolytopeError> {
        let mut vertex_index = HashMap::new();
        for (i, v) in doc.vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(PolytopeError::DuplicateVertex(v.clone()));
            }
        }
        let mut faces = Vec::with_capacity(doc.faces.len());
        for (fi, f) in doc.faces.iter().enumerate() {
            if f.len() < 3 {
                return Err(PolytopeError::ShortFace { face: fi, len: f.len() });
            }
            let mut seen = BTreeSet::new();
            let mut cyc = Vec::with_capacity(f.len());
            for name in f {
                let v = *vertex_index.get(name).ok_or_else(|| PolytopeError::UnknownVertex {
                    face: fi,
                    vertex: name.clone(),
                })?;
                if !seen.insert(v) {
                    return Err(PolytopeError::RepeatedVertex { face: fi, vertex: name.clone() });
                }
                cyc.push(v);
            }
            faces.push(cyc);
        }
        let face_names = match &doc.face_names {
            Some(names) => {
                let distinct: BTreeSet<_> = names.iter().collect();
                if names.len() != faces.len() || distinct.len() != names.len() {
                    return Err(PolytopeError::FaceNames { got: names.len(), faces: faces.len() });
                }
                names.clone()
            }
            None => (0..faces.len()).map(|i| format!("f{i}")).collect(),
        };
        let incidence = derive_incidence(&doc.vertices, &faces)?;

        let (v, e, f) = (doc.vertices.len(), incidence.edges.len(), faces.len());
        let chi = v as i64 - e as i64 + f as i64;
        if chi != 2 {
            return Err(PolytopeError::Euler { v, e, f, chi });
        }
        if !faces_connected(f, &incidence) {
            return Err(PolytopeError::Disconnected);
        }
        Ok(Self {
            name: doc.name.clone(),
            vertices: doc.vertices.clone(),
            faces,
            face_names,
            vertex_index,
            incidence,
        })
    }

    pub fn to_doc(&self) -> PolyhedronDoc {
        let default_names = self.face_names.iter().enumerate().all(|(i, n)| *n == format!("f{i}"));
        PolyhedronDoc {
            name: self.name.clone(),
            vertices: self.vertices.clone(),
            faces: self
                .faces
                .iter()
                .map(|f| f.iter().map(|&v| self.vertices[v].clone()).collect())
                .collect(),
            face_names: (!default_names).then(|| self.face_names.clone()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn faces(&self) -> &[Vec<VertexId>] {
        &self.faces
    }
    pub fn face_names(&self) -> &[String] {
        &self.face_names
    }
    pub fn incidence(&self) -> &IncidenceData {
        &self.incidence
    }
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    pub fn edge_count(&self) -> usize {
        self.incidence.edges.len()
    }
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    /// Resolve a face by name, or by its numeric index.
    pub fn face_id(&self, name: &str) -> Result<FaceId, PolytopeError> {
        if let Some(i) = self.face_names.iter().position(|n| n == name) {
            return Ok(i);
        }
        match name.parse::<usize>() {
            Ok(i) if i < self.faces.len() => Ok(i),
            _ => Err(PolytopeError::UnknownFace(name.to_string())),
        }
    }

    /// Position of `v` in the cycle of face `f`.
    pub fn position_in_face(&self, f: FaceId, v: VertexId) -> Option<usize> {
        self.faces[f].iter().position(|&x| x == v)
    }

    /// Faces sharing at least one edge.
    pub fn faces_adjacent(&self, a: FaceId, b: FaceId) -> bool {
        self.shared_edges(a, b).next().is_some()
    }

    pub fn shared_edges(&self, a: FaceId, b: FaceId) -> impl Iterator<Item = EdgeId> + '_ {
        self.incidence.face_edges[a]
            .iter()
            .copied()
            .filter(move |&e| self.incidence.other_face(e, a) == b)
    }

    pub fn edge_label(&self, e: EdgeId) -> String {
        let [a, b] = self.incidence.edges[e];
        format!("{}-{}", self.vertices[a], self.vertices[b])
    }
}

fn derive_incidence(names: &[String], faces: &[Vec<VertexId>]) -> Result<IncidenceData, PolytopeError> {
    let mut edges = Vec::new();
    let mut lookup = HashMap::new();
    let mut borders: Vec<Vec<FaceId>> = Vec::new();
    let mut directed = HashMap::new();
    let mut face_edges = Vec::with_capacity(faces.len());
    for (fi, f) in faces.iter().enumerate() {
        let mut fe = Vec::with_capacity(f.len());
        for i in 0..f.len() {
            let (a, b) = (f[i], f[(i + 1) % f.len()]);
            if directed.insert((a, b), fi).is_some() {
                return Err(PolytopeError::InconsistentOrientation {
                    a: names[a].clone(),
                    b: names[b].clone(),
                });
            }
            let key = (a.min(b), a.max(b));
            let id = *lookup.entry(key).or_insert_with(|| {
                edges.push([a, b]);
                borders.push(Vec::new());
                edges.len() - 1
            });
            borders[id].push(fi);
            fe.push(id);
        }
        face_edges.push(fe);
    }
    let mut edge_faces = Vec::with_capacity(edges.len());
    for (id, b) in borders.iter().enumerate() {
        if b.len() != 2 || b[0] == b[1] {
            let [x, y] = edges[id];
            return Err(PolytopeError::NonManifold {
                a: names[x].clone(),
                b: names[y].clone(),
                count: b.len(),
            });
        }
        edge_faces.push([b[0], b[1]]);
    }
    let mut vertex_edges = vec![Vec::new(); names.len()];
    for (id, &[a, b]) in edges.iter().enumerate() {
        vertex_edges[a].push(id);
        vertex_edges[b].push(id);
    }
    Ok(IncidenceData { edges, edge_faces, vertex_edges, face_edges, lookup })
}

fn faces_connected(n: usize, inc: &IncidenceData) -> bool {
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(f) = queue.pop_front() {
        for &e in &inc.face_edges[f] {
            let g = inc.other_face(e, f);
            if !seen[g] {
                seen[g] = true;
                queue.push_back(g);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub fn load_polyhedron(text: &str) -> Result<AbstractPolyhedron, PolytopeError> {
    let doc: PolyhedronDoc = serde_json::from_str(text)?;
    AbstractPolyhedron::from_doc(&doc)
}

pub fn build_incidence(p: &AbstractPolyhedron) -> IncidenceData {
    p.incidence.clone()
}

/// Faces as nodes, primal edges as links.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub node_count: usize,
    /// `links[e]` joins the two faces bordering primal edge `e`.
    pub links: Vec<[FaceId; 2]>,
    /// Per primal vertex: its incident edges in counterclockwise order seen from outside.
    pub facial_cycles: Vec<Vec<EdgeId>>,
}

impl DualGraph {
    /// Which primal vertex, if any, a set of links surrounds.
    pub fn facial_vertex(&self, links: &[EdgeId]) -> Option<VertexId> {
        let mut s = links.to_vec();
        s.sort_unstable();
        self.facial_cycles.iter().position(|c| {
            let mut t = c.clone();
            t.sort_unstable();
            t == s
        })
    }
}

pub fn build_dual(p: &AbstractPolyhedron) -> DualGraph {
    let inc = &p.incidence;
    let facial_cycles = (0..p.vertex_count())
        .map(|v| vertex_rotation(p, v).into_iter().map(|(_, e)| e).collect())
        .collect();
    DualGraph { node_count: p.face_count(), links: inc.edge_faces.clone(), facial_cycles }
}

/// Faces around `v` in counterclockwise order seen from outside, each with
/// the edge crossed to leave it.
fn vertex_rotation(p: &AbstractPolyhedron, v: VertexId) -> Vec<(FaceId, EdgeId)> {
    let inc = &p.incidence;
    let deg = inc.vertex_edges[v].len();
    let start = inc.edge_faces[inc.vertex_edges[v][0]][0];
    let mut out = Vec::with_capacity(deg);
    let mut f = start;
    loop {
        let cyc = &p.faces[f];
        let i = p.position_in_face(f, v).expect("vertex on face");
        let prev = cyc[(i + cyc.len() - 1) % cyc.len()];
        let e = inc.edge_between(prev, v).expect("edge on face");
        out.push((f, e));
        f = inc.other_face(e, f);
        if f == start || out.len() > deg {
            break;
        }
    }
    out
}

/// The dual polyhedron: one vertex per face (named after the face), one face per vertex.
pub fn dual_polyhedron(p: &AbstractPolyhedron) -> AbstractPolyhedron {
    let doc = PolyhedronDoc {
        name: format!("dual of {}", p.name),
        vertices: p.face_names.clone(),
        faces: (0..p.vertex_count())
            .map(|v| vertex_rotation(p, v).into_iter().map(|(f, _)| p.face_names[f].clone()).collect())
            .collect(),
        face_names: Some(p.vertices.clone()),
    };
    AbstractPolyhedron::from_doc(&doc).expect("dual of a valid polyhedron is valid")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Circuit {
    /// Links (primal edge ids) in traversal order.
    pub links: Vec<EdgeId>,
    /// Nodes (faces) in traversal order, starting at the lowest id.
    pub nodes: Vec<FaceId>,
    /// The primal vertex this circuit surrounds, if it is facial.
    pub facial: Option<VertexId>,
}

/// Every simple circuit of the dual graph, each exactly once.
pub fn simple_circuits(d: &DualGraph, cap: usize) -> Result<Vec<Circuit>, PolytopeError> {
    let mut adj: Vec<Vec<(EdgeId, FaceId)>> = vec![Vec::new(); d.node_count];
    for (e, &[a, b]) in d.links.iter().enumerate() {
        adj[a].push((e, b));
        adj[b].push((e, a));
    }
    let facial_index: BTreeMap<Vec<EdgeId>, VertexId> = d
        .facial_cycles
        .iter()
        .enumerate()
        .map(|(v, c)| {
            let mut s = c.clone();
            s.sort_unstable();
            (s, v)
        })
        .collect();

    struct Search<'a> {
        adj: &'a [Vec<(EdgeId, FaceId)>],
        facial_index: &'a BTreeMap<Vec<EdgeId>, VertexId>,
        cap: usize,
        out: Vec<Circuit>,
        on_path: Vec<bool>,
        nodes: Vec<FaceId>,
        links: Vec<EdgeId>,
    }
    impl Search<'_> {
        fn dfs(&mut self, start: FaceId, cur: FaceId) -> Result<(), PolytopeError> {
            for &(e, nx) in &self.adj[cur] {
                if nx == start {
                    // close; the orientation filter keeps one of the two traversals
                    if !self.links.is_empty() && self.links[0] < e && !self.links.contains(&e) {
                        if self.out.len() >= self.cap {
                            return Err(PolytopeError::CircuitCap { cap: self.cap });
                        }
                        let mut links = self.links.clone();
                        links.push(e);
                        let mut key = links.clone();
                        key.sort_unstable();
                        self.out.push(Circuit {
                            facial: self.facial_index.get(&key).copied(),
                            links,
                            nodes: self.nodes.clone(),
                        });
                    }
                } else if nx > start && !self.on_path[nx] {
                    self.on_path[nx] = true;
                    self.nodes.push(nx);
                    self.links.push(e);
                    self.dfs(start, nx)?;
                    self.links.pop();
                    self.nodes.pop();
                    self.on_path[nx] = false;
                }
            }
            Ok(())
        }
    }

    let mut s = Search {
        adj: &adj,
        facial_index: &facial_index,
        cap,
        out: Vec::new(),
        on_path: vec![false; d.node_count],
        nodes: Vec::new(),
        links: Vec::new(),
    };
    for start in 0..d.node_count {
        s.on_path[start] = true;
        s.nodes.push(start);
        s.dfs(start, start)?;
        s.nodes.pop();
        s.on_path[start] = false;
    }
    Ok(s.out)
}

/// Link sets of the non-facial simple circuits.
pub fn nonfacial_circuits(d: &DualGraph, cap: usize) -> Result<Vec<Vec<EdgeId>>, PolytopeError> {
    Ok(simple_circuits(d, cap)?.into_iter().filter(|c| c.facial.is_none()).map(|c| c.links).collect())
}

/// A combinatorial automorphism (or isomorphism) as a vertex map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isomorphism {
    pub vertex_map: Vec<VertexId>,
    pub face_map: Vec<FaceId>,
    pub orientation_preserving: bool,
}

/// All face-cycle-preserving vertex bijections from `a` onto `b`.
///
/// Each candidate is fixed by where face 0 goes (target face, rotation and
/// direction) and is then propagated across face adjacencies.
pub fn isomorphisms(a: &AbstractPolyhedron, b: &AbstractPolyhedron) -> Vec<Isomorphism> {
    let mut out = Vec::new();
    if a.vertex_count() != b.vertex_count()
        || a.edge_count() != b.edge_count()
        || a.face_count() != b.face_count()
    {
        return out;
    }
    let mut directed: HashMap<(VertexId, VertexId), FaceId> = HashMap::new();
    for (fi, f) in b.faces.iter().enumerate() {
        for i in 0..f.len() {
            directed.insert((f[i], f[(i + 1) % f.len()]), fi);
        }
    }
    let f0 = &a.faces[0];
    for (gi, g) in b.faces.iter().enumerate() {
        if g.len() != f0.len() {
            continue;
        }
        for shift in 0..g.len() {
            for preserve in [true, false] {
                if let Some(iso) = propagate(a, b, &directed, gi, shift, preserve) {
                    out.push(iso);
                }
            }
        }
    }
    out.sort();
    out
}

fn propagate(
    a: &AbstractPolyhedron,
    b: &AbstractPolyhedron,
    directed: &HashMap<(VertexId, VertexId), FaceId>,
    g0: FaceId,
    shift: usize,
    preserve: bool,
) -> Option<Isomorphism> {
    let n = a.vertex_count();
    let mut vmap = vec![usize::MAX; n];
    let mut fmap = vec![usize::MAX; a.face_count()];
    let mut queue = VecDeque::new();

    // assign face f onto face g, anchoring f[i] at g[j]
    let assign = |f: FaceId, g: FaceId, i: usize, j: usize, vmap: &mut Vec<usize>| -> bool {
        let (fc, gc) = (&a.faces[f], &b.faces[g]);
        if fc.len() != gc.len() {
            return false;
        }
        let k = fc.len();
        for t in 0..k {
            let src = fc[(i + t) % k];
            let dst = if preserve { gc[(j + t) % k] } else { gc[(j + k * k - t) % k] };
            if vmap[src] == usize::MAX {
                vmap[src] = dst;
            } else if vmap[src] != dst {
                return false;
            }
        }
        true
    };

    if !assign(0, g0, 0, shift, &mut vmap) {
        return None;
    }
    fmap[0] = g0;
    queue.push_back(0);
    while let Some(f) = queue.pop_front() {
        let fc = &a.faces[f];
        for i in 0..fc.len() {
            let (u, v) = (fc[i], fc[(i + 1) % fc.len()]);
            // the neighbouring face traverses v -> u
            let h = a.incidence.edge_between(u, v).map(|e| a.incidence.other_face(e, f))?;
            let (iu, iv) = (vmap[u], vmap[v]);
            let key = if preserve { (iv, iu) } else { (iu, iv) };
            let g = *directed.get(&key)?;
            if fmap[h] == usize::MAX {
                let hi = a.position_in_face(h, v)?;
                let gj = b.position_in_face(g, iv)?;
                if !assign(h, g, hi, gj, &mut vmap) {
                    return None;
                }
                fmap[h] = g;
                queue.push_back(h);
            } else if fmap[h] != g {
                return None;
            }
        }
    }
    let distinct: BTreeSet<_> = vmap.iter().copied().collect();
    if distinct.len() != n || vmap.contains(&usize::MAX) {
        return None;
    }
    Some(Isomorphism { vertex_map: vmap, face_map: fmap, orientation_preserving: preserve })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    #[test]
    fn platonic_counts() {
        for (name, v, e, f) in [
            ("tetrahedron", 4, 6, 4),
            ("cube", 8, 12, 6),
            ("octahedron", 6, 12, 8),
            ("dodecahedron", 20, 30, 12),
            ("icosahedron", 12, 30, 20),
        ] {
            let p = data::platonic(name).unwrap();
            assert_eq!((p.vertex_count(), p.edge_count(), p.face_count()), (v, e, f), "{name}");
        }
    }

    #[test]
    fn cube_vertices_have_degree_three() {
        let p = data::cube();
        assert!(p.incidence().vertex_edges.iter().all(|es| es.len() == 3));
    }

    #[test]
    fn edge_ids_follow_first_encounter() {
        let p = data::cube();
        let inc = p.incidence();
        // first face is top: FTL BTL BTR FTR
        let top = &p.faces()[0];
        for i in 0..4 {
            assert_eq!(inc.edge_between(top[i], top[(i + 1) % 4]), Some(i));
        }
        assert!(inc.edge_faces.iter().all(|[a, b]| a < b));
    }

    #[test]
    fn three_faces_on_one_edge_is_non_manifold() {
        let text = r#"{"name":"bad","vertices":["a","b","c","d","e"],
            "faces":[["a","b","c"],["b","a","d"],["a","b","e"]]}"#;
        assert!(matches!(
            load_polyhedron(text),
            Err(PolytopeError::NonManifold { .. } | PolytopeError::InconsistentOrientation { .. })
        ));
        // same-direction reuse is caught as orientation; three borders with mixed
        // directions is caught by the border count
        let text = r#"{"name":"bad","vertices":["a","b","c","d","e","f"],
            "faces":[["a","b","c"],["b","a","d"],["e","f","a","b"]]}"#;
        assert!(load_polyhedron(text).is_err());
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(load_polyhedron("{"), Err(PolytopeError::Parse(_))));
        let two_tetrahedra = r#"{"name":"x","vertices":["a","b","c","d","e","f","g","h"],"faces":[
            ["a","b","c"],["a","c","d"],["a","d","b"],["b","d","c"],
            ["e","f","g"],["e","g","h"],["e","h","f"],["f","h","g"]]}"#;
        assert!(matches!(load_polyhedron(two_tetrahedra), Err(PolytopeError::Euler { chi: 4, .. })));
        let unknown = r#"{"name":"x","vertices":["a"],"faces":[["a","b","c"]]}"#;
        assert!(matches!(load_polyhedron(unknown), Err(PolytopeError::UnknownVertex { .. })));
    }

    #[test]
    fn disconnected_is_rejected() {
        // two tetrahedra side by side: chi = 4, so build a doc that passes Euler
        // but has two components is impossible for closed surfaces; check the
        // helper directly instead
        let p = data::cube();
        assert!(faces_connected(p.face_count(), p.incidence()));
        let mut inc = p.incidence().clone();
        for fe in inc.face_edges.iter_mut() {
            fe.clear();
        }
        assert!(!faces_connected(p.face_count(), &inc));
    }

    #[test]
    fn cube_dual_is_octahedral() {
        let d = build_dual(&data::cube());
        assert_eq!((d.node_count, d.links.len()), (6, 12));
        let mut deg = vec![0; 6];
        for [a, b] in &d.links {
            deg[*a] += 1;
            deg[*b] += 1;
        }
        assert!(deg.iter().all(|&x| x == 4));
        assert!(d.facial_cycles.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn facial_cycles_are_vertex_stars() {
        for p in data::platonic_solids() {
            let d = build_dual(&p);
            for (v, c) in d.facial_cycles.iter().enumerate() {
                let mut s = c.clone();
                s.sort_unstable();
                assert_eq!(s, p.incidence().vertex_edges[v]);
                // consecutive links share a face
                for i in 0..c.len() {
                    let (x, y) = (d.links[c[i]], d.links[c[(i + 1) % c.len()]]);
                    assert!(x.iter().any(|f| y.contains(f)));
                }
            }
        }
    }

    #[test]
    fn cube_circuit_census() {
        let d = build_dual(&data::cube());
        let cs = simple_circuits(&d, DEFAULT_CIRCUIT_CAP).unwrap();
        let facial = cs.iter().filter(|c| c.facial.is_some()).count();
        assert_eq!(facial, 8);
        assert!(cs.iter().filter(|c| c.facial.is_none()).all(|c| c.links.len() >= 4));
    }

    #[test]
    fn tetrahedron_triangles_are_facial() {
        let d = build_dual(&data::platonic("tetrahedron").unwrap());
        let cs = simple_circuits(&d, DEFAULT_CIRCUIT_CAP).unwrap();
        assert!(cs.iter().filter(|c| c.links.len() == 3).all(|c| c.facial.is_some()));
    }

    #[test]
    fn circuit_cap_is_enforced() {
        let d = build_dual(&data::cube());
        assert!(matches!(simple_circuits(&d, 10), Err(PolytopeError::CircuitCap { cap: 10 })));
    }

    #[test]
    fn face_lookup_by_name_and_index() {
        let p = data::cube();
        assert_eq!(p.face_id("top").unwrap(), 0);
        assert_eq!(p.face_id("5").unwrap(), 5);
        assert!(p.face_id("side").is_err());
    }
}
