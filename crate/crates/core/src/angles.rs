//! Exterior dihedral angles in exact rational multiples of pi: the linear
//! system of vertex and edge-class sums, its exact solution space, and strict
//! feasibility of Rivin's inequalities on that space.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::polytope::{
    build_dual, nonfacial_circuits, AbstractPolyhedron, DualGraph, EdgeId, PolytopeError, VertexId,
};

pub type Q = BigRational;

#[derive(Debug, Error)]
pub enum AngleError {
    #[error("E - V = {0} is odd; no torsion-free domain can exist")]
    Parity(i64),
    #[error("E - V = {0} is not positive")]
    NonPositive(i64),
    #[error("classes do not partition the edges: {0}")]
    Partition(String),
    #[error("class {class} has {size} edges; classes need at least 3")]
    ClassSize { class: usize, size: usize },
    #[error("solution space has {dim} free variables, above the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("elimination produced {count} constraints, above the cap of {cap}")]
    ConstraintCap { count: usize, cap: usize },
    #[error("angle document: {0}")]
    Document(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn qi(n: usize) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Exterior angle per edge, in units of pi, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleAssignment {
    pub values: Vec<Q>,
}

impl AngleAssignment {
    pub fn uniform(edges: usize, value: Q) -> Self {
        Self { values: vec![value; edges] }
    }

    /// `{"edge_id": "p/q"}`, lowest terms.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .values
            .iter()
            .enumerate()
            .map(|(e, v)| (e.to_string(), serde_json::Value::String(v.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }

    pub fn from_json(value: &serde_json::Value, edges: usize) -> Result<Self, AngleError> {
        let obj = value.as_object().ok_or_else(|| AngleError::Document("expected an object".into()))?;
        let mut values = vec![None; edges];
        for (k, v) in obj {
            let e: usize = k.parse().map_err(|_| AngleError::Document(format!("bad edge id `{k}`")))?;
            if e >= edges {
                return Err(AngleError::Document(format!("edge id {e} out of range")));
            }
            let s = v.as_str().ok_or_else(|| AngleError::Document(format!("edge {e}: expected a string")))?;
            let r: Q = s.parse().map_err(|_| AngleError::Document(format!("edge {e}: bad rational `{s}`")))?;
            values[e] = Some(r);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(e, v)| v.ok_or_else(|| AngleError::Document(format!("edge {e} missing"))))
            .collect::<Result<_, _>>()?;
        Ok(Self { values })
    }
}

/// Number of edge classes a torsion-free domain must have: (E - V) / 2.
pub fn required_class_count(p: &AbstractPolyhedron) -> Result<usize, AngleError> {
    let diff = p.edge_count() as i64 - p.vertex_count() as i64;
    if diff <= 0 {
        return Err(AngleError::NonPositive(diff));
    }
    if diff % 2 != 0 {
        return Err(AngleError::Parity(diff));
    }
    Ok((diff / 2) as usize)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RowSource {
    Vertex(VertexId),
    Class(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<Q>,
    pub rhs: Q,
    pub source: RowSource,
}

/// Equations in one unknown per edge (column = edge id).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub columns: usize,
    pub rows: Vec<Row>,
}

impl LinearSystem {
    pub fn satisfied_by(&self, a: &AngleAssignment) -> bool {
        self.rows.iter().all(|r| dot(&r.coeffs, &a.values) == r.rhs)
    }
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Vertex rows (sum 2 around each vertex) followed by one row per class
/// (sum n_i - 2 over the class).
pub fn assemble_system(p: &AbstractPolyhedron, classes: &[Vec<EdgeId>]) -> Result<LinearSystem, AngleError> {
    let n = p.edge_count();
    let mut owner = vec![None; n];
    for (ci, c) in classes.iter().enumerate() {
        for &e in c {
            if e >= n {
                return Err(AngleError::Partition(format!("edge id {e} out of range")));
            }
            if let Some(prev) = owner[e].replace(ci) {
                return Err(AngleError::Partition(format!("edge {e} in classes {prev} and {ci}")));
            }
        }
    }
    if let Some(e) = owner.iter().position(Option::is_none) {
        return Err(AngleError::Partition(format!("edge {e} is in no class")));
    }
    if let Some((ci, c)) = classes.iter().enumerate().find(|(_, c)| c.len() < 3) {
        return Err(AngleError::ClassSize { class: ci, size: c.len() });
    }
    let indicator = |edges: &[EdgeId]| {
        let mut row = vec![Q::zero(); n];
        for &e in edges {
            row[e] = Q::one();
        }
        row
    };
    let mut rows: Vec<Row> = p
        .incidence()
        .vertex_edges
        .iter()
        .enumerate()
        .map(|(v, es)| Row { coeffs: indicator(es), rhs: qi(2), source: RowSource::Vertex(v) })
        .collect();
    rows.extend(classes.iter().enumerate().map(|(ci, c)| Row {
        coeffs: indicator(c),
        rhs: qi(c.len()) - qi(2),
        source: RowSource::Class(ci),
    }));
    Ok(LinearSystem { columns: n, rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolutionStatus {
    Infeasible,
    Unique,
    AffineFamily,
}

impl fmt::Display for SolutionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Infeasible => "infeasible",
            Self::Unique => "unique",
            Self::AffineFamily => "affine-family",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    pub status: SolutionStatus,
    /// Free variables set to zero.
    pub particular: Option<AngleAssignment>,
    pub null_basis: Vec<Vec<Q>>,
    /// Rank of the coefficient matrix.
    pub rank: usize,
}

impl SolutionSet {
    pub fn to_json(&self) -> serde_json::Value {
        let vec = |v: &[Q]| serde_json::Value::Array(v.iter().map(|x| serde_json::Value::String(x.to_string())).collect());
        serde_json::json!({
            "status": self.status.to_string(),
            "rank": self.rank,
            "particular": self.particular.as_ref().map(|a| vec(&a.values)),
            "null_basis": self.null_basis.iter().map(|b| vec(b)).collect::<Vec<_>>(),
        })
    }

    /// particular + sum t_k basis_k
    pub fn point(&self, t: &[Q]) -> Option<AngleAssignment> {
        let mut values = self.particular.as_ref()?.values.clone();
        for (tk, b) in t.iter().zip(&self.null_basis) {
            for (v, bv) in values.iter_mut().zip(b) {
                *v += tk * bv;
            }
        }
        Some(AngleAssignment { values })
    }
}

/// Gauss-Jordan elimination over the rationals.
pub fn solve_exact(sys: &LinearSystem) -> SolutionSet {
    let n = sys.columns;
    let mut m: Vec<Vec<Q>> = sys
        .rows
        .iter()
        .map(|r| {
            let mut v = r.coeffs.clone();
            v.push(r.rhs.clone());
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let rank = pivots.len();
    if m[rank..].iter().any(|row| !row[n].is_zero()) {
        return SolutionSet { status: SolutionStatus::Infeasible, particular: None, null_basis: vec![], rank };
    }
    let mut particular = vec![Q::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = m[i][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let null_basis: Vec<Vec<Q>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); n];
            v[f] = Q::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -m[i][f].clone();
            }
            v
        })
        .collect();
    let status = if null_basis.is_empty() { SolutionStatus::Unique } else { SolutionStatus::AffineFamily };
    SolutionSet { status, particular: Some(AngleAssignment { values: particular }), null_basis, rank }
}

/// Dual graph plus the non-facial circuits used by the third Rivin condition.
#[derive(Debug, Clone)]
pub struct RivinContext {
    pub dual: DualGraph,
    pub nonfacial: Vec<Vec<EdgeId>>,
    pub edges: usize,
    pub vertices: usize,
}

impl RivinContext {
    pub fn new(p: &AbstractPolyhedron, circuit_cap: usize) -> Result<Self, AngleError> {
        let dual = build_dual(p);
        let nonfacial = nonfacial_circuits(&dual, circuit_cap)?;
        Ok(Self { dual, nonfacial, edges: p.edge_count(), vertices: p.vertex_count() })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    EdgeOutOfRange { edge: EdgeId, value: String },
    Circuit { links: Vec<EdgeId>, sum: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub pass: bool,
    pub violations: Vec<Violation>,
    /// Smallest sum over a non-facial circuit, if there is any such circuit.
    pub min_circuit_sum: Option<String>,
}

/// 0 < q < 1 on every edge and sum > 2 around every non-facial circuit.
pub fn check_inequalities(ctx: &RivinContext, a: &AngleAssignment) -> InequalityReport {
    let zero = Q::zero();
    let one = Q::one();
    let two = qi(2);
    let mut violations = Vec::new();
    for (e, v) in a.values.iter().enumerate() {
        if *v <= zero || *v >= one {
            violations.push(Violation::EdgeOutOfRange { edge: e, value: v.to_string() });
        }
    }
    let mut min_sum: Option<Q> = None;
    for c in &ctx.nonfacial {
        let s = c.iter().fold(Q::zero(), |acc, &e| acc + &a.values[e]);
        if s <= two {
            violations.push(Violation::Circuit { links: c.clone(), sum: s.to_string() });
        }
        if min_sum.as_ref().map_or(true, |m| s < *m) {
            min_sum = Some(s);
        }
    }
    InequalityReport {
        pass: violations.is_empty(),
        violations,
        min_circuit_sum: min_sum.map(|s| s.to_string()),
    }
}

/// `coeffs . t > bound`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictIneq {
    pub coeffs: Vec<Q>,
    pub bound: Q,
}

impl StrictIneq {
    pub fn holds(&self, t: &[Q]) -> bool {
        dot(&self.coeffs, t) > self.bound
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeasibilityLimits {
    pub max_free_vars: usize,
    pub max_constraints: usize,
}

impl Default for FeasibilityLimits {
    fn default() -> Self {
        Self { max_free_vars: 16, max_constraints: 200_000 }
    }
}

/// Scale so the first nonzero coefficient is +-1; duplicates keep the largest bound.
fn prune(cons: Vec<StrictIneq>) -> Vec<StrictIneq> {
    let mut best: HashMap<Vec<Q>, Q> = HashMap::new();
    let mut order = Vec::new();
    for c in cons {
        let (coeffs, bound) = match c.coeffs.iter().find(|x| !x.is_zero()) {
            Some(lead) => {
                let s = lead.abs().recip();
                (c.coeffs.iter().map(|x| x * &s).collect::<Vec<_>>(), c.bound * &s)
            }
            None => (c.coeffs, c.bound),
        };
        match best.get_mut(&coeffs) {
            Some(b) => {
                if bound > *b {
                    *b = bound;
                }
            }
            None => {
                order.push(coeffs.clone());
                best.insert(coeffs, bound);
            }
        }
    }
    order
        .into_iter()
        .map(|c| {
            let bound = best.remove(&c).expect("present");
            StrictIneq { coeffs: c, bound }
        })
        .collect()
}

/// Decide `{t : every c holds}` nonempty by Fourier-Motzkin elimination and
/// return a rational point of it.
pub fn fourier_motzkin(
    cons: &[StrictIneq],
    vars: usize,
    limits: FeasibilityLimits,
) -> Result<Option<Vec<Q>>, AngleError> {
    if vars > limits.max_free_vars {
        return Err(AngleError::DimensionCap { dim: vars, cap: limits.max_free_vars });
    }
    let mut current = prune(cons.to_vec());
    // stages[j] holds the system over t_0..=t_j, before t_j is eliminated
    let mut stages = Vec::with_capacity(vars);
    for j in (0..vars).rev() {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in &current {
            if c.coeffs[j].is_positive() {
                pos.push(c);
            } else if c.coeffs[j].is_negative() {
                neg.push(c);
            } else {
                rest.push(c.clone());
            }
        }
        let count = rest.len() + pos.len() * neg.len();
        if count > limits.max_constraints {
            return Err(AngleError::ConstraintCap { count, cap: limits.max_constraints });
        }
        for p in &pos {
            for n in &neg {
                let (lp, ln) = (&p.coeffs[j], -n.coeffs[j].clone());
                let coeffs = p.coeffs.iter().zip(&n.coeffs).map(|(a, b)| a * &ln + b * lp).collect();
                rest.push(StrictIneq { coeffs, bound: &p.bound * &ln + &n.bound * lp });
            }
        }
        stages.push(std::mem::replace(&mut current, prune(rest)));
    }
    if current.iter().any(|c| c.bound >= Q::zero()) {
        return Ok(None);
    }
    stages.reverse();
    let mut t = vec![Q::zero(); vars];
    for (j, stage) in stages.iter().enumerate() {
        let (mut lo, mut hi): (Option<Q>, Option<Q>) = (None, None);
        for c in stage {
            let a = &c.coeffs[j];
            if a.is_zero() {
                continue;
            }
            let known = dot(&c.coeffs[..j], &t[..j]);
            let limit = (&c.bound - known) / a;
            if a.is_positive() {
                if lo.as_ref().map_or(true, |l| limit > *l) {
                    lo = Some(limit);
                }
            } else if hi.as_ref().map_or(true, |h| limit < *h) {
                hi = Some(limit);
            }
        }
        t[j] = match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / qi(2),
            (Some(l), None) => l + Q::one(),
            (None, Some(h)) => h - Q::one(),
            (None, None) => Q::zero(),
        };
    }
    debug_assert!(cons.iter().all(|c| c.holds(&t)));
    Ok(Some(t))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Feasibility {
    pub solution: SolutionSet,
    pub feasible: bool,
    /// A point satisfying every row and every strict inequality.
    pub witness: Option<AngleAssignment>,
}

/// Exact solve, then strict feasibility of the open Rivin polytope on the
/// solution space. The constant assignment V/E is preferred as witness when it
/// qualifies; otherwise the elimination's back-substituted point is used.
pub fn feasible(ctx: &RivinContext, sys: &LinearSystem, limits: FeasibilityLimits) -> Result<Feasibility, AngleError> {
    let solution = solve_exact(sys);
    let Some(part) = solution.particular.clone() else {
        return Ok(Feasibility { solution, feasible: false, witness: None });
    };
    let k = solution.null_basis.len();
    let n = sys.columns;
    // q_e = part_e + sum_k basis_k[e] t_k
    let edge_row = |e: usize| -> Vec<Q> { solution.null_basis.iter().map(|b| b[e].clone()).collect() };
    let mut cons = Vec::with_capacity(2 * n + ctx.nonfacial.len());
    for e in 0..n {
        let row = edge_row(e);
        cons.push(StrictIneq { coeffs: row.clone(), bound: -part.values[e].clone() });
        cons.push(StrictIneq { coeffs: row.iter().map(|x| -x).collect(), bound: &part.values[e] - Q::one() });
    }
    for c in &ctx.nonfacial {
        let mut coeffs = vec![Q::zero(); k];
        let mut base = Q::zero();
        for &e in c {
            for (i, b) in solution.null_basis.iter().enumerate() {
                coeffs[i] += &b[e];
            }
            base += &part.values[e];
        }
        cons.push(StrictIneq { coeffs, bound: qi(2) - base });
    }
    let t = fourier_motzkin(&cons, k, limits)?;
    let Some(t) = t else {
        return Ok(Feasibility { solution, feasible: false, witness: None });
    };
    let uniform = AngleAssignment::uniform(n, Q::new(BigInt::from(ctx.vertices), BigInt::from(ctx.edges)));
    let witness = if sys.satisfied_by(&uniform) && check_inequalities(ctx, &uniform).pass {
        uniform
    } else {
        solution.point(&t).expect("particular exists")
    };
    Ok(Feasibility { solution, feasible: true, witness: Some(witness) })
}

/// Class id per edge, from a list of classes.
pub fn class_of_edge(classes: &[Vec<EdgeId>], edges: usize) -> Vec<usize> {
    let mut out = vec![usize::MAX; edges];
    for (ci, c) in classes.iter().enumerate() {
        for &e in c {
            out[e] = ci;
        }
    }
    out
}

/// Sum of the assignment over each class.
pub fn class_sums(classes: &[Vec<EdgeId>], a: &AngleAssignment) -> BTreeMap<usize, Q> {
    classes
        .iter()
        .enumerate()
        .map(|(ci, c)| (ci, c.iter().fold(Q::zero(), |acc, &e| acc + &a.values[e])))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;
    use crate::polytope::DEFAULT_CIRCUIT_CAP;

    fn cube_ctx() -> (AbstractPolyhedron, RivinContext) {
        let p = data::cube();
        let ctx = RivinContext::new(&p, DEFAULT_CIRCUIT_CAP).unwrap();
        (p, ctx)
    }

    fn edge(p: &AbstractPolyhedron, a: &str, b: &str) -> EdgeId {
        p.incidence().edge_between(p.vertex_id(a).unwrap(), p.vertex_id(b).unwrap()).unwrap()
    }

    #[test]
    fn platonic_class_counts() {
        let got: Vec<_> = data::platonic_solids().iter().map(|p| required_class_count(p).unwrap()).collect();
        assert_eq!(got, vec![1, 2, 3, 5, 9]);
    }

    #[test]
    fn class_count_guards() {
        // a triangular prism: V=6, E=9, odd difference
        let prism = crate::polytope::load_polyhedron(
            r#"{"name":"prism","vertices":["a","b","c","d","e","f"],
            "faces":[["a","b","c"],["d","f","e"],["a","d","e","b"],["b","e","f","c"],["c","f","d","a"]]}"#,
        )
        .unwrap();
        assert!(matches!(required_class_count(&prism), Err(AngleError::Parity(3))));
    }

    #[test]
    fn size_two_class_is_rejected() {
        let p = data::cube();
        let mut classes = vec![vec![0, 1], (2..12).collect()];
        assert!(matches!(assemble_system(&p, &classes), Err(AngleError::ClassSize { class: 0, size: 2 })));
        classes[0].push(2);
        assert!(matches!(assemble_system(&p, &classes), Err(AngleError::Partition(_))));
    }

    #[test]
    fn contradictory_rows_are_infeasible() {
        let sys = LinearSystem {
            columns: 2,
            rows: vec![
                Row { coeffs: vec![q(1, 1), q(1, 1)], rhs: q(2, 1), source: RowSource::Vertex(0) },
                Row { coeffs: vec![q(1, 1), q(1, 1)], rhs: q(3, 1), source: RowSource::Class(0) },
            ],
        };
        let s = solve_exact(&sys);
        assert_eq!(s.status, SolutionStatus::Infeasible);
        assert_eq!(s.rank, 1);
    }

    #[test]
    fn unique_solution_and_nullspace() {
        let sys = LinearSystem {
            columns: 2,
            rows: vec![
                Row { coeffs: vec![q(1, 1), q(1, 1)], rhs: q(1, 1), source: RowSource::Vertex(0) },
                Row { coeffs: vec![q(1, 1), q(-1, 1)], rhs: q(1, 3), source: RowSource::Vertex(1) },
            ],
        };
        let s = solve_exact(&sys);
        assert_eq!(s.status, SolutionStatus::Unique);
        assert_eq!(s.particular.unwrap().values, vec![q(2, 3), q(1, 3)]);
    }

    #[test]
    fn waist_circuit_at_two_fails() {
        let (p, ctx) = cube_ctx();
        // vertical edges 1/2, horizontal 3/4: vertex sums are 2, the waist sums to 2
        let vertical = [("FBL", "FTL"), ("FBR", "FTR"), ("BBL", "BTL"), ("BBR", "BTR")];
        let mut a = AngleAssignment::uniform(12, q(3, 4));
        for (x, y) in vertical {
            a.values[edge(&p, x, y)] = q(1, 2);
        }
        assert!(p.incidence().vertex_edges.iter().all(|es| es.iter().fold(Q::zero(), |s, &e| s + &a.values[e]) == q(2, 1)));
        let r = check_inequalities(&ctx, &a);
        assert!(!r.pass);
        let mut waist: Vec<_> = vertical.iter().map(|(x, y)| edge(&p, x, y)).collect();
        waist.sort_unstable();
        assert!(r.violations.iter().any(|v| match v {
            Violation::Circuit { links, sum } => {
                let mut l = links.clone();
                l.sort_unstable();
                l == waist && sum == "2"
            }
            _ => false,
        }));
    }

    #[test]
    fn out_of_range_edge_is_reported() {
        let (_, ctx) = cube_ctx();
        let mut a = AngleAssignment::uniform(12, q(2, 3));
        a.values[5] = q(1, 1);
        let r = check_inequalities(&ctx, &a);
        assert!(r.violations.contains(&Violation::EdgeOutOfRange { edge: 5, value: "1".into() }));
    }

    #[test]
    fn uniform_two_thirds_passes_on_cube() {
        let (_, ctx) = cube_ctx();
        let r = check_inequalities(&ctx, &AngleAssignment::uniform(12, q(2, 3)));
        assert!(r.pass);
        assert_eq!(r.min_circuit_sum.as_deref(), Some("8/3"));
    }

    #[test]
    fn opposite_vertex_stars_in_nine_class_are_infeasible() {
        let (p, ctx) = cube_ctx();
        let inc = p.incidence();
        let (u, w) = (p.vertex_id("FBL").unwrap(), p.vertex_id("BTR").unwrap());
        let mut big: Vec<EdgeId> = inc.vertex_edges[u].iter().chain(&inc.vertex_edges[w]).copied().collect();
        let rest: Vec<EdgeId> = (0..12).filter(|e| !big.contains(e)).collect();
        big.extend(&rest[..3]);
        let small = rest[3..].to_vec();
        let sys = assemble_system(&p, &[small, big]).unwrap();
        let f = feasible(&ctx, &sys, FeasibilityLimits::default()).unwrap();
        assert!(!f.feasible);
    }

    #[test]
    fn single_vertex_toy_system() {
        // three edges meeting at one vertex, no circuits
        let sys = LinearSystem {
            columns: 3,
            rows: vec![Row { coeffs: vec![q(1, 1); 3], rhs: q(2, 1), source: RowSource::Vertex(0) }],
        };
        let ctx = RivinContext { dual: DualGraph { node_count: 0, links: vec![], facial_cycles: vec![] }, nonfacial: vec![], edges: 3, vertices: 1 };
        let f = feasible(&ctx, &sys, FeasibilityLimits::default()).unwrap();
        assert!(f.feasible);
        let w = f.witness.unwrap();
        assert!(sys.satisfied_by(&w));
        assert!(w.values.iter().all(|v| *v > Q::zero() && *v < Q::one()));
        // grid oracle: some point with denominator 6 is strictly inside
        let grid_hit = (1..6).any(|a| (1..6).any(|b| {
            let c = 12 - a - b;
            (1..6).contains(&c)
        }));
        assert!(grid_hit);
    }

    #[test]
    fn fm_detects_empty_strip() {
        // t > 1 and t < 0
        let cons = vec![
            StrictIneq { coeffs: vec![q(1, 1)], bound: q(1, 1) },
            StrictIneq { coeffs: vec![q(-1, 1)], bound: q(0, 1) },
        ];
        assert_eq!(fourier_motzkin(&cons, 1, FeasibilityLimits::default()).unwrap(), None);
        // 0 < t < 1 touches nothing at the boundary
        let cons = vec![
            StrictIneq { coeffs: vec![q(1, 1)], bound: q(0, 1) },
            StrictIneq { coeffs: vec![q(-1, 1)], bound: q(-1, 1) },
        ];
        assert_eq!(fourier_motzkin(&cons, 1, FeasibilityLimits::default()).unwrap(), Some(vec![q(1, 2)]));
        // t > 0 and t < 0 share only a boundary
        let cons = vec![
            StrictIneq { coeffs: vec![q(2, 1)], bound: q(0, 1) },
            StrictIneq { coeffs: vec![q(-1, 1)], bound: q(0, 1) },
        ];
        assert_eq!(fourier_motzkin(&cons, 1, FeasibilityLimits::default()).unwrap(), None);
    }

    #[test]
    fn dimension_cap() {
        let r = fourier_motzkin(&[], 3, FeasibilityLimits { max_free_vars: 2, max_constraints: 10 });
        assert!(matches!(r, Err(AngleError::DimensionCap { dim: 3, cap: 2 })));
    }

    #[test]
    fn angle_json_round_trip() {
        let a = AngleAssignment { values: vec![q(3, 5), q(4, 5), q(2, 3)] };
        let j = a.to_json();
        assert_eq!(j["1"], "4/5");
        assert_eq!(AngleAssignment::from_json(&j, 3).unwrap(), a);
        assert!(AngleAssignment::from_json(&j, 4).is_err());
    }
}
