//! Predicates tying relator shapes to the combinatorics of a scheme: squared
//! letters, Y^2 Z relators, the edge bound, parity, and numerical commutation.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::enumerate::{enumerate_schemes, Classifier, EnumerateError, Filter};
use crate::geometry::{GeometryError, MobiusMap, Tolerances};
use crate::pairings::{edge_orbits, relator_word, EdgeOrbit, Letter, PairingScheme, RelatorWord};
use crate::polytope::AbstractPolyhedron;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquaredWitness {
    pub word: usize,
    pub position: usize,
    pub letter: String,
}

/// Positions where a cyclic word repeats the same signed letter.
pub fn squared_terms(words: &[RelatorWord]) -> Vec<SquaredWitness> {
    let mut out = Vec::new();
    for (wi, w) in words.iter().enumerate() {
        let n = w.letters.len();
        if n < 2 {
            continue;
        }
        for i in 0..n {
            if w.letters[i] == w.letters[(i + 1) % n] {
                out.push(SquaredWitness { word: wi, position: i, letter: w.letters[i].to_string() });
            }
        }
    }
    out
}

pub fn has_squared_term(words: &[RelatorWord]) -> bool {
    !squared_terms(words).is_empty()
}

/// Y Y Z up to cyclic rotation: three letters, two cyclically adjacent ones equal.
pub fn is_y2z(w: &RelatorWord) -> Option<(Letter, Letter)> {
    if w.letters.len() != 3 {
        return None;
    }
    (0..3).find_map(|r| {
        let l = &w.letters;
        (l[r] == l[(r + 1) % 3]).then(|| (l[r].clone(), l[(r + 2) % 3].clone()))
    })
}

/// Some pairing joins two faces that share an edge.
pub fn adjacent_identified_sharing_edge(p: &AbstractPolyhedron, s: &PairingScheme) -> bool {
    s.pairings.iter().any(|fp| p.faces_adjacent(fp.source, fp.target))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Y2zVerdict {
    pub has_size3_class: bool,
    pub has_y2z_word: bool,
    pub consistent: bool,
    /// Orbit indices of size 3.
    pub size3_orbits: Vec<usize>,
    /// Word indices of shape Y^2 Z.
    pub y2z_words: Vec<usize>,
}

/// Compares (some orbit has size 3) with (some word is Y^2 Z).
pub fn y2z_class_link(orbits: &[EdgeOrbit], words: &[RelatorWord]) -> Y2zVerdict {
    let size3_orbits: Vec<usize> = orbits.iter().enumerate().filter(|(_, o)| o.size() == 3).map(|(i, _)| i).collect();
    let y2z_words: Vec<usize> = words.iter().enumerate().filter(|(_, w)| is_y2z(w).is_some()).map(|(i, _)| i).collect();
    let (a, b) = (!size3_orbits.is_empty(), !y2z_words.is_empty());
    Y2zVerdict { has_size3_class: a, has_y2z_word: b, consistent: a == b, size3_orbits, y2z_words }
}

/// g1 g2 g1^-1 g2^-1 is +-I.
pub fn commute_numeric(g1: &MobiusMap, g2: &MobiusMap, tol: &Tolerances) -> Result<bool, GeometryError> {
    let c = g1.compose(g2).compose(&g1.inverse()).compose(&g2.inverse());
    Ok(c.identity_defect(tol)? <= tol.id)
}

/// E <= 2V.
pub fn edge_bound_check(p: &AbstractPolyhedron) -> bool {
    p.edge_count() <= 2 * p.vertex_count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityVerdict {
    pub squared_term: bool,
    pub orbit_sizes_even: bool,
    pub edges_even: bool,
    pub vertices_even: bool,
    /// Without a squared term everything above must be even.
    pub consistent: bool,
}

pub fn parity_check(p: &AbstractPolyhedron, orbits: &[EdgeOrbit], words: &[RelatorWord]) -> ParityVerdict {
    let squared_term = has_squared_term(words);
    let orbit_sizes_even = orbits.iter().all(|o| o.size() % 2 == 0);
    let edges_even = p.edge_count() % 2 == 0;
    let vertices_even = p.vertex_count() % 2 == 0;
    ParityVerdict {
        squared_term,
        orbit_sizes_even,
        edges_even,
        vertices_even,
        consistent: squared_term || (orbit_sizes_even && edges_even && vertices_even),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutationCheck {
    pub y: String,
    pub z: String,
    pub commute: bool,
}

/// For each Y^2 Z word, whether the realized Y and Z commute.
pub fn y2z_commutation(
    words: &[RelatorWord],
    maps: &BTreeMap<String, MobiusMap>,
    tol: &Tolerances,
) -> Result<Vec<CommutationCheck>, GeometryError> {
    let get = |l: &Letter| -> Result<MobiusMap, GeometryError> {
        let m = maps.get(&l.gen).ok_or_else(|| GeometryError::UnknownLetter(l.gen.clone()))?;
        Ok(if l.inverse { m.inverse() } else { *m })
    };
    let mut out = Vec::new();
    for w in words {
        if let Some((y, z)) = is_y2z(w) {
            out.push(CommutationCheck { y: y.to_string(), z: z.to_string(), commute: commute_numeric(&get(&y)?, &get(&z)?, tol)? });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestrictionReport {
    pub has_size3_class: bool,
    #[serde(rename = "has_Y2Z_relator")]
    pub has_y2z_relator: bool,
    pub squared_term_relators: Vec<String>,
    pub adjacent_identified_sharing_edge: bool,
    pub edge_bound_ok: bool,
    pub parity_ok: bool,
    /// Generator pairs that commute numerically; only with realized maps.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commuting_generator_pairs: Option<Vec<(String, String)>>,
}

pub fn restrict(
    p: &AbstractPolyhedron,
    s: &PairingScheme,
    maps: Option<&BTreeMap<String, MobiusMap>>,
    tol: &Tolerances,
) -> Result<RestrictionReport, EnumerateError> {
    let orbits = edge_orbits(p, s)?;
    let words: Vec<RelatorWord> = orbits.iter().map(relator_word).collect();
    let link = y2z_class_link(&orbits, &words);
    let sq = squared_terms(&words);
    let mut sq_words: Vec<usize> = sq.iter().map(|w| w.word).collect();
    sq_words.dedup();
    let commuting = match maps {
        None => None,
        Some(m) => {
            let names: Vec<&String> = m.keys().collect();
            let mut pairs = Vec::new();
            for i in 0..names.len() {
                for j in i + 1..names.len() {
                    if commute_numeric(&m[names[i]], &m[names[j]], tol).unwrap_or(false) {
                        pairs.push((names[i].clone(), names[j].clone()));
                    }
                }
            }
            Some(pairs)
        }
    };
    Ok(RestrictionReport {
        has_size3_class: link.has_size3_class,
        has_y2z_relator: link.has_y2z_word,
        squared_term_relators: sq_words.iter().map(|&i| words[i].to_string()).collect(),
        adjacent_identified_sharing_edge: adjacent_identified_sharing_edge(p, s),
        edge_bound_ok: edge_bound_check(p),
        parity_ok: parity_check(p, &orbits, &words).consistent,
        commuting_generator_pairs: commuting,
    })
}

/// Exhaustive check of the relator/combinatorics equivalences over all
/// schemes passing the validity, elliptic and class-count filters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PopulationCheck {
    pub examined: usize,
    pub population: usize,
    /// Scheme indices where squared term and adjacent-sharing disagree.
    pub squared_vs_adjacent: Vec<usize>,
    /// Scheme indices where size-3 orbit and Y^2 Z word disagree.
    pub size3_vs_y2z: Vec<usize>,
    /// Scheme indices without squared terms but with odd orbit sizes.
    pub parity: Vec<usize>,
}

pub fn population_check(p: &AbstractPolyhedron, c: &Classifier) -> Result<PopulationCheck, EnumerateError> {
    let schemes = enumerate_schemes(p)?;
    let mut out = PopulationCheck {
        examined: schemes.len(),
        population: 0,
        squared_vs_adjacent: vec![],
        size3_vs_y2z: vec![],
        parity: vec![],
    };
    for (i, s) in schemes.iter().enumerate() {
        let mut ok = true;
        for f in [Filter::Validity, Filter::Elliptic, Filter::ClassCount] {
            ok = ok && c.check(f, s)?;
        }
        if !ok {
            continue;
        }
        out.population += 1;
        let orbits = edge_orbits(p, s)?;
        let words: Vec<RelatorWord> = orbits.iter().map(relator_word).collect();
        if has_squared_term(&words) != adjacent_identified_sharing_edge(p, s) {
            out.squared_vs_adjacent.push(i);
        }
        if !y2z_class_link(&orbits, &words).consistent {
            out.size3_vs_y2z.push(i);
        }
        if !parity_check(p, &orbits, &words).consistent {
            out.parity.push(i);
        }
    }
    Ok(out)
}
