//! Bundled polyhedra and face-pairing schemes.

use crate::pairings::SchemeDoc;
use crate::polytope::{load_polyhedron, AbstractPolyhedron, PolytopeError};

pub const TETRAHEDRON: &str = include_str!("../data/tetrahedron.json");
/// Vertex names read front/back, bottom/top, left/right; faces are named.
pub const CUBE: &str = include_str!("../data/cube.json");
pub const OCTAHEDRON: &str = include_str!("../data/octahedron.json");
pub const DODECAHEDRON: &str = include_str!("../data/dodecahedron.json");
pub const ICOSAHEDRON: &str = include_str!("../data/icosahedron.json");

/// Three opposite-face identifications, each with a clockwise quarter twist.
pub const FD1: &str = include_str!("../data/fd1.json");
/// FD1 with every twist reversed.
pub const FD1_MIRROR: &str = include_str!("../data/fd1_mirror.json");
/// Two adjacent-face identifications plus a half-turn between front and back.
pub const FD2: &str = include_str!("../data/fd2.json");
/// The 5/7 gluing exactly as drawn; its left/right correspondence keeps orientation.
pub const FD3_FIGURE: &str = include_str!("../data/fd3_figure.json");

pub const PLATONIC_NAMES: [&str; 5] = ["tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"];

pub fn platonic(name: &str) -> Result<AbstractPolyhedron, PolytopeError> {
    let text = match name {
        "tetrahedron" => TETRAHEDRON,
        "cube" => CUBE,
        "octahedron" => OCTAHEDRON,
        "dodecahedron" => DODECAHEDRON,
        "icosahedron" => ICOSAHEDRON,
        other => return Err(PolytopeError::UnknownSolid(other.to_string())),
    };
    load_polyhedron(text)
}

pub fn platonic_solids() -> Vec<AbstractPolyhedron> {
    PLATONIC_NAMES.iter().map(|n| platonic(n).expect("bundled solid")).collect()
}

pub fn cube() -> AbstractPolyhedron {
    load_polyhedron(CUBE).expect("bundled cube")
}

fn scheme_doc(text: &str) -> SchemeDoc {
    serde_json::from_str(text).expect("bundled scheme")
}

pub fn fd1_doc() -> SchemeDoc {
    scheme_doc(FD1)
}
pub fn fd1_mirror_doc() -> SchemeDoc {
    scheme_doc(FD1_MIRROR)
}
pub fn fd2_doc() -> SchemeDoc {
    scheme_doc(FD2)
}
pub fn fd3_figure_doc() -> SchemeDoc {
    scheme_doc(FD3_FIGURE)
}
