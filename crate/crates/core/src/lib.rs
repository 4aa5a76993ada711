//! Candidate fundamental domains for torsion-free Kleinian groups on ideal
//! polyhedra.
//!
//! The pipeline: enumerate face-pairing schemes on a combinatorial
//! polyhedron ([`polytope`], [`pairings`]), reject schemes that force
//! elliptic generators or have the wrong number of edge classes, solve the
//! dihedral-angle system exactly and decide strict feasibility ([`angles`]),
//! group survivors under symmetry ([`enumerate`]), then realize the regular
//! ideal cube and check relators numerically ([`geometry`]). [`grouplab`]
//! holds predicates relating relator shapes to the combinatorics.

pub mod angles;
pub mod data;
pub mod enumerate;
pub mod geometry;
pub mod grouplab;
pub mod pairings;
pub mod polytope;

pub use angles::{AngleAssignment, LinearSystem, SolutionSet, SolutionStatus};
pub use pairings::{EdgeOrbit, FacePairing, GroupChoice, PairingScheme, RelatorWord};
pub use polytope::{AbstractPolyhedron, DualGraph};
