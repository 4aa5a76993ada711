//! `hypdom`: command-line driver for the candidate-domain pipeline.
//!
//! Exit codes: 0 ran, 2 invalid input, 3 internal invariant breach.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use hypdom::angles::{
    assemble_system, check_inequalities, feasible, required_class_count, AngleError, FeasibilityLimits, RivinContext,
};
use hypdom::data;
use hypdom::enumerate::{classify, read_candidate_doc, CandidateDomain, Classifier, ClassifyOptions, EnumerateError};
use hypdom::geometry::{
    face_pairing_maps, regular_ideal_cube, verify_words, GeometryError, IdealRealization, Tolerances,
};
use hypdom::grouplab::{edge_bound_check, restrict};
use hypdom::pairings::{edge_orbits, relator_word, same_face_matching, GroupChoice, PairingError, PairingScheme};
use hypdom::polytope::{load_polyhedron, AbstractPolyhedron, PolytopeError, DEFAULT_CIRCUIT_CAP};

#[derive(Parser)]
#[command(name = "hypdom", version, about = "Candidate fundamental domains on ideal polyhedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    cfg: Config,
}

#[derive(Args, Clone)]
struct Config {
    /// Symmetry group for grouping candidates.
    #[arg(long, global = true, default_value = "all")]
    group: GroupChoice,
    /// Output directory; without it results go to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Projective identity tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_id: f64,
    /// Point agreement tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_geo: f64,
    /// Maximum number of dual circuits to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_CIRCUIT_CAP)]
    circuit_cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Counts, required edge classes, and the E <= 2V check.
    Info {
        /// Polyhedron JSON file or bundled solid name.
        poly: String,
        #[arg(long)]
        json: bool,
    },
    /// Search every pairing scheme and write report.json plus one document per survivor.
    Enumerate { poly: String },
    /// Exact angle system and strict feasibility for one scheme.
    Angles {
        /// Candidate document, or a polyhedron followed by a scheme file.
        input: String,
        scheme: Option<PathBuf>,
    },
    /// Relator-shape predicates for a scheme, or the edge bound for a polyhedron.
    Restrict { input: String, scheme: Option<PathBuf> },
    /// Regular ideal cube vertices in the upper half-space.
    Realize { poly: String },
    /// Build generators on a realization and evaluate the edge relators.
    Verify {
        input: String,
        scheme: Option<PathBuf>,
        /// Realization JSON (defaults to the regular ideal cube).
        #[arg(long)]
        realization: Option<PathBuf>,
    },
    /// enumerate -> angles -> restrict -> realize/verify, into one report.
    Pipeline { poly: String },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<PolytopeError> for Failure {
    fn from(e: PolytopeError) -> Self {
        Failure::Input(e.to_string())
    }
}
impl From<PairingError> for Failure {
    fn from(e: PairingError) -> Self {
        match e {
            PairingError::Census { .. } | PairingError::Traversal => Failure::Internal(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}
impl From<AngleError> for Failure {
    fn from(e: AngleError) -> Self {
        Failure::Input(e.to_string())
    }
}
impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        Failure::Input(e.to_string())
    }
}
impl From<EnumerateError> for Failure {
    fn from(e: EnumerateError) -> Self {
        match e {
            EnumerateError::Pairing(p) => p.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}
impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

impl Config {
    fn tolerances(&self) -> Res<Tolerances> {
        if !(self.tol_id > 0.0 && self.tol_geo > 0.0) {
            return Err(Failure::Input("tolerances must be positive".into()));
        }
        if self.circuit_cap == 0 {
            return Err(Failure::Input("circuit cap must be positive".into()));
        }
        Ok(Tolerances { id: self.tol_id, geo: self.tol_geo, ..Tolerances::default() })
    }
}

fn read_text(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Res<Value> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// A file path, or the name of a bundled solid.
fn load_poly(arg: &str) -> Res<AbstractPolyhedron> {
    let path = Path::new(arg);
    if !path.exists() && data::PLATONIC_NAMES.contains(&arg) {
        return Ok(data::platonic(arg)?);
    }
    Ok(load_polyhedron(&read_text(path)?)?)
}

/// Candidate document, or polyhedron plus scheme file.
fn load_scheme_input(input: &str, scheme: Option<&Path>) -> Res<(AbstractPolyhedron, PairingScheme)> {
    match scheme {
        Some(sp) => {
            let p = load_poly(input)?;
            let s = PairingScheme::parse(&p, &read_text(sp)?)?;
            Ok((p, s))
        }
        None => Ok(read_candidate_doc(&read_json(Path::new(input))?)?),
    }
}

fn emit(cfg: &Config, file: &str, v: &Value) -> Res<()> {
    let text = serde_json::to_string_pretty(v).expect("serializable") + "\n";
    match &cfg.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join(file), text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn info_json(p: &AbstractPolyhedron) -> Value {
    let required = required_class_count(p);
    let mut warnings = Vec::new();
    if !edge_bound_check(p) {
        warnings.push(format!(
            "E = {} exceeds 2V = {}: any torsion-free domain here needs commuting generators",
            p.edge_count(),
            2 * p.vertex_count()
        ));
    }
    json!({
        "name": p.name(),
        "V": p.vertex_count(),
        "E": p.edge_count(),
        "F": p.face_count(),
        "required_class_count": required.as_ref().ok(),
        "required_class_count_error": required.as_ref().err().map(|e| e.to_string()),
        "edge_bound_ok": edge_bound_check(p),
        "warnings": warnings,
    })
}

fn cmd_info(cfg: &Config, poly: &str, as_json: bool) -> Res<()> {
    let p = load_poly(poly)?;
    let v = info_json(&p);
    if as_json || cfg.out.is_some() {
        return emit(cfg, "info.json", &v);
    }
    println!("polyhedron: {}", p.name());
    println!("V = {}, E = {}, F = {}", p.vertex_count(), p.edge_count(), p.face_count());
    match required_class_count(&p) {
        Ok(n) => println!("edge classes required: {n}"),
        Err(e) => println!("edge classes required: none ({e})"),
    }
    for w in v["warnings"].as_array().into_iter().flatten() {
        println!("warning: {}", w.as_str().unwrap_or_default());
    }
    Ok(())
}

fn options(cfg: &Config) -> ClassifyOptions {
    ClassifyOptions { circuit_cap: cfg.circuit_cap, ..ClassifyOptions::default() }
}

fn cmd_enumerate(cfg: &Config, poly: &str) -> Res<()> {
    cfg.tolerances()?;
    let p = load_poly(poly)?;
    let r = classify(&p, &options(cfg))?;
    let report = r.to_json(cfg.group);
    match &cfg.out {
        Some(_) => {
            emit(cfg, "report.json", &report)?;
            for (cd, idx) in r.candidates.iter().zip(&r.scheme_index) {
                emit(cfg, &format!("candidate_{idx:04}.json"), &cd.to_json(&p))?;
            }
            eprintln!("{} schemes, {} survivors, {} families", r.total, r.survivors(), r.families_all.len());
            Ok(())
        }
        None => emit(cfg, "report.json", &report),
    }
}

fn angles_json(p: &AbstractPolyhedron, s: &PairingScheme, cfg: &Config) -> Res<Value> {
    let orbits = edge_orbits(p, s)?;
    let classes: Vec<Vec<usize>> = orbits.iter().map(|o| o.edges()).collect();
    let labels: Vec<Vec<String>> = classes.iter().map(|c| c.iter().map(|&e| p.edge_label(e)).collect()).collect();
    let sys = assemble_system(p, &classes)?;
    let ctx = RivinContext::new(p, cfg.circuit_cap)?;
    let f = feasible(&ctx, &sys, FeasibilityLimits::default())?;
    let mut out = json!({
        "classes": labels,
        "solution": f.solution.to_json(),
        "feasible": f.feasible,
        "witness": f.witness.as_ref().map(|w| w.to_json()),
    });
    if let Some(w) = &f.witness {
        out["inequalities"] = serde_json::to_value(check_inequalities(&ctx, w)).expect("serializable");
    }
    Ok(out)
}

fn cmd_angles(cfg: &Config, input: &str, scheme: Option<&Path>) -> Res<()> {
    cfg.tolerances()?;
    let (p, s) = load_scheme_input(input, scheme)?;
    emit(cfg, "angles.json", &angles_json(&p, &s, cfg)?)
}

/// Generators on the regular ideal cube when the scheme admits the
/// all-equal angles; None otherwise.
fn regular_maps(p: &AbstractPolyhedron, s: &PairingScheme, t: &Tolerances) -> Option<hypdom::geometry::GroupPresentation> {
    let r = regular_ideal_cube(p, t).ok()?;
    let classes: Vec<_> = edge_orbits(p, s).ok()?.iter().map(|o| o.edges()).collect();
    let sys = assemble_system(p, &classes).ok()?;
    let u = hypdom::angles::AngleAssignment::uniform(p.edge_count(), hypdom::angles::q(2, 3));
    if !sys.satisfied_by(&u) {
        return None;
    }
    face_pairing_maps(&r, p, s, t).ok()
}

fn cmd_restrict(cfg: &Config, input: &str, scheme: Option<&Path>) -> Res<()> {
    let t = cfg.tolerances()?;
    let is_candidate = scheme.is_some() || read_json(Path::new(input)).is_ok_and(|v| v.get("scheme").is_some());
    if !is_candidate {
        let p = load_poly(input)?;
        return emit(cfg, "restrict.json", &json!({"polyhedron": p.name(), "edge_bound_ok": edge_bound_check(&p)}));
    }
    let (p, s) = load_scheme_input(input, scheme)?;
    let maps = regular_maps(&p, &s, &t);
    let rep = restrict(&p, &s, maps.as_ref().map(|g| &g.generators), &t)?;
    emit(cfg, "restrict.json", &serde_json::to_value(rep).expect("serializable"))
}

fn cmd_realize(cfg: &Config, poly: &str) -> Res<()> {
    let t = cfg.tolerances()?;
    let p = load_poly(poly)?;
    let r = regular_ideal_cube(&p, &t)?;
    emit(cfg, "realization.json", &r.to_json(&p))
}

fn verification_json(g: &hypdom::geometry::GroupPresentation) -> Value {
    json!({
        "status": if g.confirmed() { "CONFIRMED" } else { "NOT CONFIRMED" },
        "generators": g.generators.iter().map(|(k, m)| (k.clone(), m.to_json())).collect::<BTreeMap<_, _>>(),
        "relators": g.verification,
    })
}

fn cmd_verify(cfg: &Config, input: &str, scheme: Option<&Path>, realization: Option<&Path>) -> Res<()> {
    let t = cfg.tolerances()?;
    let (p, s) = load_scheme_input(input, scheme)?;
    let r = match realization {
        Some(path) => IdealRealization::from_json(&p, &read_json(path)?)?,
        None => regular_ideal_cube(&p, &t)?,
    };
    let words: Vec<_> = edge_orbits(&p, &s)?.iter().map(relator_word).collect();
    let g = face_pairing_maps(&r, &p, &s, &t)?;
    let g = verify_words(g.generators, &words, &t)?;
    emit(cfg, "verify.json", &verification_json(&g))
}

/// Names for the families of the bundled cube that match published domains.
fn published_labels(p: &AbstractPolyhedron, c: &Classifier) -> BTreeMap<String, &'static str> {
    let mut out = BTreeMap::new();
    if p.to_doc() != data::cube().to_doc() {
        return out;
    }
    for (doc, label) in [(data::fd1_doc(), "FD(1)"), (data::fd2_doc(), "FD(2)")] {
        if let Ok(s) = PairingScheme::from_doc(p, &doc) {
            if let Ok(Ok(cd)) = c.analyze(&s) {
                out.insert(cd.key_all, label);
            }
        }
    }
    out
}

fn resembles_fd3(p: &AbstractPolyhedron, c: &Classifier, s: &PairingScheme) -> bool {
    if p.to_doc() != data::cube().to_doc() {
        return false;
    }
    PairingScheme::from_doc(p, &data::fd3_figure_doc()).is_ok_and(|fd3| same_face_matching(&c.group, s, &fd3))
}

fn candidate_stage(p: &AbstractPolyhedron, cd: &CandidateDomain, cfg: &Config, t: &Tolerances) -> Value {
    let mut v = json!({
        "orbit_sizes": cd.orbit_sizes(),
        "words": cd.words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "key_rotations": cd.key_rotations,
        "key_all": cd.key_all,
    });
    v["angles"] = angles_json(p, &cd.scheme, cfg).unwrap_or_else(|e| json!({"error": failure_text(&e)}));
    let maps = regular_maps(p, &cd.scheme, t);
    v["restrict"] = match restrict(p, &cd.scheme, maps.as_ref().map(|g| &g.generators), t) {
        Ok(r) => serde_json::to_value(r).expect("serializable"),
        Err(e) => json!({"error": e.to_string()}),
    };
    v["verification"] = match maps {
        Some(g) => match verify_words(g.generators, &cd.words, t) {
            Ok(g) => verification_json(&g),
            Err(e) => json!({"status": "ERROR", "error": e.to_string()}),
        },
        None => json!({"status": "geometric verification out of scope"}),
    };
    v
}

fn failure_text(f: &Failure) -> String {
    match f {
        Failure::Input(s) | Failure::Internal(s) => s.clone(),
    }
}

fn cmd_pipeline(cfg: &Config, poly: &str) -> Res<()> {
    let t = cfg.tolerances()?;
    let p = load_poly(poly)?;
    let mut report = json!({ "info": info_json(&p) });
    match classify(&p, &options(cfg)) {
        Err(e) => report["enumeration"] = json!({"error": e.to_string()}),
        Ok(r) => {
            let c = Classifier::new(&p, cfg.circuit_cap, FeasibilityLimits::default())?;
            let labels = published_labels(&p, &c);
            let families = match cfg.group {
                GroupChoice::All => &r.families_all,
                GroupChoice::Rotations => &r.families_rotations,
            };
            let fams: Vec<Value> = families
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    let full_key = &r.candidates[f.members[0]].key_all;
                    let label = labels.get(full_key).map(|s| s.to_string()).unwrap_or_else(|| format!("family {}", i + 1));
                    let members: Vec<Value> = f
                        .members
                        .iter()
                        .map(|&m| {
                            let mut v = candidate_stage(&p, &r.candidates[m], cfg, &t);
                            v["id"] = json!(format!("candidate_{:04}", r.scheme_index[m]));
                            v
                        })
                        .collect();
                    let status = if members.iter().all(|m| m["verification"]["status"] == "CONFIRMED") {
                        "CONFIRMED".to_string()
                    } else {
                        members[0]["verification"]["status"].as_str().unwrap_or("mixed").to_string()
                    };
                    let mut note = Value::Null;
                        if !labels.contains_key(full_key) && resembles_fd3(&p, &c, &r.candidates[f.members[0]].scheme) {
                        note = json!(format!(
                            "face matching of FD(3); edge classes {:?} rather than [5, 7]",
                            r.candidates[f.members[0]].orbit_sizes()
                        ));
                    }
                    json!({
                        "label": label,
                        "note": note,
                        "key": f.key,
                        "size": f.members.len(),
                        "rotation_classes": f.rotation_classes.len(),
                        "status": status,
                        "members": members,
                    })
                })
                .collect();
            report["enumeration"] = r.to_json(cfg.group);
            report["families"] = Value::Array(fams);
        }
    }
    emit(cfg, "report.json", &report)
}

fn run(cli: Cli) -> Res<()> {
    let cfg = &cli.cfg;
    match &cli.command {
        Command::Info { poly, json } => cmd_info(cfg, poly, *json),
        Command::Enumerate { poly } => cmd_enumerate(cfg, poly),
        Command::Angles { input, scheme } => cmd_angles(cfg, input, scheme.as_deref()),
        Command::Restrict { input, scheme } => cmd_restrict(cfg, input, scheme.as_deref()),
        Command::Realize { poly } => cmd_realize(cfg, poly),
        Command::Verify { input, scheme, realization } => cmd_verify(cfg, input, scheme.as_deref(), realization.as_deref()),
        Command::Pipeline { poly } => cmd_pipeline(cfg, poly),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}
