mod common;

use hypdom::data;
use hypdom::polytope::{
    build_dual, dual_polyhedron, isomorphisms, nonfacial_circuits, simple_circuits, AbstractPolyhedron, PolyhedronDoc,
    DEFAULT_CIRCUIT_CAP,
};
use proptest::prelude::*;

#[test]
fn dual_of_dual_is_isomorphic() {
    for p in data::platonic_solids() {
        let dd = dual_polyhedron(&dual_polyhedron(&p));
        let isos = isomorphisms(&p, &dd);
        assert!(isos.iter().any(|i| i.orientation_preserving), "{}", p.name());
    }
}

#[test]
fn euler_and_duality_counts() {
    for p in data::platonic_solids() {
        let d = dual_polyhedron(&p);
        assert_eq!(common::euler(&p), 2);
        assert_eq!((d.vertex_count(), d.edge_count(), d.face_count()), (p.face_count(), p.edge_count(), p.vertex_count()));
        let degree_sum: usize = p.incidence().vertex_edges.iter().map(Vec::len).sum();
        assert_eq!(degree_sum, 2 * p.edge_count());
        let side_sum: usize = p.faces().iter().map(Vec::len).sum();
        assert_eq!(side_sum, 2 * p.edge_count());
    }
}

#[test]
fn circuits_match_brute_force() {
    for name in ["tetrahedron", "cube", "octahedron"] {
        let p = data::platonic(name).unwrap();
        let d = build_dual(&p);
        let mut got: Vec<Vec<usize>> = simple_circuits(&d, DEFAULT_CIRCUIT_CAP)
            .unwrap()
            .into_iter()
            .map(|c| {
                let mut l = c.links;
                l.sort_unstable();
                l
            })
            .collect();
        let n = got.len();
        got.sort();
        got.dedup();
        assert_eq!(got.len(), n, "{name}: duplicate circuits");
        let oracle: Vec<Vec<usize>> = common::brute_force_cycles(&d).into_iter().collect();
        assert_eq!(got, oracle, "{name}");
        // facial circuits are exactly one per vertex
        let nonfacial = nonfacial_circuits(&d, DEFAULT_CIRCUIT_CAP).unwrap();
        assert_eq!(nonfacial.len() + p.vertex_count(), oracle.len(), "{name}");
    }
}

#[test]
fn automorphism_counts() {
    let expect = [("tetrahedron", 24), ("cube", 48), ("octahedron", 48), ("dodecahedron", 120), ("icosahedron", 120)];
    for (name, n) in expect {
        let p = data::platonic(name).unwrap();
        let g = isomorphisms(&p, &p);
        assert_eq!(g.len(), n, "{name}");
        assert_eq!(g.iter().filter(|i| i.orientation_preserving).count(), n / 2, "{name}");
    }
}

fn relabel(p: &AbstractPolyhedron, perm: &[usize], face_shift: usize) -> AbstractPolyhedron {
    let doc = p.to_doc();
    let name = |v: &str| format!("v{}", perm[p.vertex_id(v).unwrap()]);
    let faces: Vec<Vec<String>> = doc
        .faces
        .iter()
        .map(|f| {
            let k = f.len();
            (0..k).map(|i| name(&f[(i + face_shift) % k])).collect()
        })
        .collect();
    let mut vertices: Vec<String> = doc.vertices.iter().map(|v| name(v)).collect();
    vertices.sort();
    AbstractPolyhedron::from_doc(&PolyhedronDoc { name: "relabelled".into(), vertices, faces, face_names: None }).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn relabelling_preserves_structure(perm in Just((0..8).collect::<Vec<usize>>()).prop_shuffle(), shift in 0usize..4) {
        let cube = data::cube();
        let q = relabel(&cube, &perm, shift);
        prop_assert_eq!(common::euler(&q), 2);
        prop_assert_eq!(isomorphisms(&cube, &q).len(), 48);
        let cq = simple_circuits(&build_dual(&q), DEFAULT_CIRCUIT_CAP).unwrap();
        let cc = simple_circuits(&build_dual(&cube), DEFAULT_CIRCUIT_CAP).unwrap();
        prop_assert_eq!(cq.len(), cc.len());
        prop_assert_eq!(
            cq.iter().filter(|c| c.facial.is_some()).count(),
            cc.iter().filter(|c| c.facial.is_some()).count()
        );
    }
}
