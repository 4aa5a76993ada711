//! Independent oracles shared by the integration and acceptance targets.
#![allow(dead_code)]

use std::collections::BTreeSet;

use hypdom::angles::{Q, StrictIneq};
use hypdom::geometry::{ExtendedComplex, MobiusMap, Point3};
use hypdom::polytope::{AbstractPolyhedron, DualGraph};
use num_bigint::BigInt;
use num_complex::Complex64 as C;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Cross ratio from the textbook formula, finite points only.
pub fn cross_ratio_formula(z: C, p1: C, p2: C, p3: C) -> C {
    (z - p2) * (p1 - p3) / ((z - p3) * (p1 - p2))
}

pub fn random_point(r: &mut ChaCha8Rng) -> C {
    C::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0))
}

/// Well-conditioned random Mobius map.
pub fn random_mobius(r: &mut ChaCha8Rng) -> MobiusMap {
    loop {
        let m = MobiusMap::new(random_point(r), random_point(r), random_point(r), random_point(r));
        if m.det().norm() > 0.5 {
            return m;
        }
    }
}

/// Sphere inversion about (0, 0, 2) with radius 2, reflected: returns the
/// height of the image point, which is zero for points of the unit sphere
/// about (0, 0, 1).
pub fn inversion_height(p: Point3) -> f64 {
    let d = [p.x, p.y, p.z - 2.0];
    let r2: f64 = d.iter().map(|x| x * x).sum();
    -(2.0 + 4.0 * d[2] / r2)
}

/// Sets of dual links forming simple cycles, by testing every link subset:
/// connected, every node of even degree 2.
pub fn brute_force_cycles(d: &DualGraph) -> BTreeSet<Vec<usize>> {
    let m = d.links.len();
    assert!(m <= 20, "brute force only for small graphs");
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << m) {
        let links: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
        let mut deg = vec![0usize; d.node_count];
        for &l in &links {
            let [a, b] = d.links[l];
            deg[a] += 1;
            deg[b] += 1;
        }
        if deg.iter().any(|&x| x != 0 && x != 2) {
            continue;
        }
        // connected?
        let nodes: Vec<usize> = (0..d.node_count).filter(|&v| deg[v] > 0).collect();
        let mut seen = BTreeSet::from([nodes[0]]);
        let mut stack = vec![nodes[0]];
        while let Some(v) = stack.pop() {
            for &l in &links {
                let [a, b] = d.links[l];
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        if seen.len() == nodes.len() {
            out.insert(links);
        }
    }
    out
}

pub fn euler(p: &AbstractPolyhedron) -> i64 {
    p.vertex_count() as i64 - p.edge_count() as i64 + p.face_count() as i64
}

fn rat(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Random strict system a.t > b in k variables with small integer data.
pub fn random_system(r: &mut ChaCha8Rng, k: usize, rows: usize) -> Vec<StrictIneq> {
    (0..rows)
        .map(|_| StrictIneq {
            coeffs: (0..k).map(|_| rat(r.gen_range(-3..=3), 1)).collect(),
            bound: rat(r.gen_range(-6..=6), r.gen_range(1..=3)),
        })
        .collect()
}

/// Search for a rational point by sampling a box; Some(point) if found.
pub fn sample_feasible(r: &mut ChaCha8Rng, cons: &[StrictIneq], k: usize, tries: usize) -> Option<Vec<Q>> {
    for _ in 0..tries {
        let t: Vec<Q> = (0..k).map(|_| rat(r.gen_range(-400..=400), r.gen_range(1..=40))).collect();
        if cons.iter().all(|c| c.holds(&t)) {
            return Some(t);
        }
    }
    None
}

pub fn ext(z: C) -> ExtendedComplex {
    ExtendedComplex::Finite(z)
}
