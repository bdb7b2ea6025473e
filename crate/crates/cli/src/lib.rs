//! Command-line front end: argument parsing and report formatting.
//!
//! [`run_cli`] does all the work and returns the exit code together with the
//! text for stdout and stderr, so the binary is a thin wrapper and tests can
//! drive the tool in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use gemcore::complex::{
    check_3manifold, check_residues_sphere, check_surface, homology, homology_by_component,
    CellComplex, HomologyProfile,
};
use gemcore::embedding::{all_embeddings, embedding_report, CyclicOrder, EmbeddingReport};
use gemcore::gemfile::{parse_gem, write_gem};
use gemcore::graph::{canonical_code, canonical_code_with, residue_stats, CanonMode, ResidueStats};
use gemcore::search::{search_gems, SearchSpec};
use gemcore::types::{enumerate_types, EnumerateOptions, TypeSequence};
use gemcore::ColoredGraph;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "gemtool",
    version,
    about = "Colored graphs encoding manifolds: types, embeddings, homology, search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the semi-equivelar types a surface of Euler characteristic χ admits.
    Types(TypesArgs),
    /// Validate a GEM file and run every check that applies to it.
    Verify(FileArgs),
    /// Regular embeddings of a GEM file.
    Embed(EmbedArgs),
    /// Integer homology of the complex a GEM file encodes.
    Homology(FileArgs),
    /// Search for graphs of a given type.
    Search(SearchArgs),
    /// Print the canonical code of a GEM file.
    Canon(CanonArgs),
}

#[derive(Debug, Args)]
struct TypesArgs {
    #[arg(long, allow_negative_numbers = true)]
    chi: i64,
    /// Only this many colors.
    #[arg(long)]
    colors: Option<usize>,
    /// Every face size divides the vertex count (the default).
    #[arg(long, conflicts_with = "no_face_divisibility")]
    require_face_divisibility: bool,
    #[arg(long)]
    no_face_divisibility: bool,
    /// Keep solutions with fewer vertices than the dimension.
    #[arg(long)]
    allow_small_vertex_count: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct FileArgs {
    file: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct EmbedArgs {
    file: PathBuf,
    /// Cyclic color order, e.g. 0,2,1,3.
    #[arg(long, value_delimiter = ',', conflicts_with = "all_perms")]
    perm: Option<Vec<usize>>,
    #[arg(long)]
    all_perms: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Face sizes aligned with the color order 0,1,…,d.
    #[arg(long = "type", value_delimiter = ',', required = true)]
    seq: Vec<usize>,
    #[arg(long)]
    vertices: usize,
    #[arg(long)]
    require_bipartite: bool,
    #[arg(long)]
    require_3manifold: bool,
    #[arg(long)]
    require_residues_sphere: bool,
    /// Keep disconnected graphs.
    #[arg(long)]
    allow_disconnected: bool,
    /// Also identify graphs that differ by a symmetry of the cyclic color order.
    #[arg(long)]
    color_symmetry: bool,
    /// Stop after this many solutions (default 1).
    #[arg(long, conflicts_with = "all")]
    max: Option<usize>,
    /// Enumerate every solution.
    #[arg(long)]
    all: bool,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    budget: Option<f64>,
    /// Write one GEM file per solution here instead of printing them.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct CanonArgs {
    file: PathBuf,
    #[arg(long)]
    color_symmetry: bool,
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String) -> Self {
        CliOutput {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn failed(stdout: String, stderr: String) -> Self {
        CliOutput {
            code: EXIT_FAILED,
            stdout,
            stderr,
        }
    }

    fn usage(stderr: String) -> Self {
        CliOutput {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Runs the tool on `args`, whose first element is the program name.
pub fn run_cli<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput::usage(text)
            } else {
                CliOutput::ok(text)
            };
        }
    };
    let result = match cli.command {
        Command::Types(a) => types(a),
        Command::Verify(a) => verify(a),
        Command::Embed(a) => embed(a),
        Command::Homology(a) => homology_cmd(a),
        Command::Search(a) => search(a),
        Command::Canon(a) => canon(a),
    };
    result.unwrap_or_else(CliOutput::usage)
}

type Outcome = Result<CliOutput, String>;

fn load(path: &Path) -> Result<ColoredGraph, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("error: cannot read {}: {e}\n", path.display()))?;
    parse_gem(&text).map_err(|e| format!("error: {}: {e}\n", path.display()))
}

fn json_line(out: &mut String, v: &Value) {
    out.push_str(&v.to_string());
    out.push('\n');
}

fn types(a: TypesArgs) -> Outcome {
    let opts = EnumerateOptions {
        color_count: a.colors,
        require_face_divisibility: !a.no_face_divisibility,
        require_vertices_at_least_dimension: !a.allow_small_vertex_count,
    };
    let found = enumerate_types(a.chi, &opts).map_err(|e| format!("error: {e}\n"))?;
    let mut out = String::new();
    for t in &found {
        if a.json {
            json_line(
                &mut out,
                &json!({
                    "seq": t.seq.faces(),
                    "notation": t.seq.notation(),
                    "p": t.vertex_count,
                    "colors": t.color_count,
                    "chi": t.chi,
                }),
            );
        } else {
            let _ = writeln!(out, "{t}\tcolors={}", t.color_count);
        }
    }
    Ok(CliOutput::ok(out))
}

fn g_counts(stats: &ResidueStats) -> Value {
    let map: serde_json::Map<String, Value> = stats
        .counts
        .iter()
        .map(|(set, n)| (format!("g{set}"), json!(n)))
        .collect();
    Value::Object(map)
}

fn g_counts_text(stats: &ResidueStats) -> String {
    let mut counts: Vec<_> = stats.counts.iter().collect();
    counts.sort_by_key(|(set, _)| (set.len(), set.iter().collect::<Vec<_>>()));
    counts
        .into_iter()
        .map(|(set, n)| format!("g{set}={n}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn homology_json(h: &HomologyProfile) -> Value {
    json!({
        "betti": h.betti(),
        "torsion": h
            .groups
            .iter()
            .map(|g| serde_json::to_value(g).map(|v| v["torsion"].clone()).unwrap_or_default())
            .collect::<Vec<_>>(),
        "text": h.to_string(),
    })
}

fn embedding_json(r: &EmbeddingReport) -> Value {
    json!({
        "order": r.order,
        "chi": r.chi,
        "orientable": r.orientable,
        "genus": r.genus,
        "surface": r.surface_name(),
        "faces": r.faces,
        "has_bigons": r.has_bigons,
        "seq": r.se_type.as_ref().map(|t| &t.raw),
        "type": r.se_type.as_ref().map(|t| t.canonical.notation()),
    })
}

fn embedding_text(out: &mut String, r: &EmbeddingReport) {
    let ty = match &r.se_type {
        Some(t) => format!("type {} seq {:?}", t.canonical.notation(), t.raw),
        None => "not semi-equivelar".to_string(),
    };
    let _ = writeln!(
        out,
        "order {}: V={} E={} F={} chi={} {} {}{}",
        r.order,
        r.vertices,
        r.edges,
        r.faces,
        r.chi,
        r.surface_name(),
        ty,
        if r.has_bigons { " (bigons)" } else { "" }
    );
}

fn verify(a: FileArgs) -> Outcome {
    let g = load(&a.file)?;
    let n = g.color_count();
    let connected = g.is_connected();
    let bipartite = g.is_bipartite();
    let stats = residue_stats(&g);
    let h = homology(&CellComplex::build(&g));
    let mut problems: Vec<String> = Vec::new();
    if !connected {
        problems.push("graph is not connected".into());
    }

    let mut text = String::new();
    let _ = writeln!(
        text,
        "colors {n}, vertices {}, dimension {}",
        g.vertex_count(),
        g.dimension()
    );
    let _ = writeln!(text, "connected: {connected}");
    let _ = writeln!(text, "bipartite (orientable): {bipartite}");
    let _ = writeln!(text, "residues: {}", g_counts_text(&stats));
    let _ = writeln!(text, "homology: {h}");
    let mut record = json!({
        "colors": n,
        "p": g.vertex_count(),
        "dimension": g.dimension(),
        "connected": connected,
        "orientable": bipartite,
        "residues": g_counts(&stats),
        "homology": homology_json(&h),
    });

    match n {
        3 if connected => {
            let s = check_surface(&g).map_err(|e| format!("error: {e}\n"))?;
            let _ = writeln!(text, "surface: {s} (chi={})", s.chi);
            record["surface"] = json!({"chi": s.chi, "orientable": s.orientable, "genus": s.genus, "name": s.to_string()});
        }
        4 => {
            let r = check_3manifold(&g).map_err(|e| format!("error: {e}\n"))?;
            for (i, c) in r.components.iter().enumerate() {
                for t in &c.triples {
                    let _ = writeln!(
                        text,
                        "3-manifold check component {i} colors {:?}: {} {} {}",
                        t.colors,
                        t.lhs,
                        if t.holds { "=" } else { "!=" },
                        t.rhs
                    );
                }
            }
            let _ = writeln!(text, "3-manifold: {}", r.holds);
            if !r.holds {
                problems.push("3-manifold criterion fails".into());
            }
            record["three_manifold"] = json!(r.holds);
        }
        5 => {
            let r = check_residues_sphere(&g).map_err(|e| format!("error: {e}\n"))?;
            for c in &r.residues {
                let _ = writeln!(
                    text,
                    "residue without color {} on {} vertices: 3-manifold {} homology {}",
                    c.missing_color,
                    c.vertices.len(),
                    c.three_manifold,
                    c.homology
                );
            }
            let _ = writeln!(text, "residues homology-S^3: {}", r.holds);
            for f in r.failures() {
                problems.push(format!(
                    "residue without color {} containing vertex {} is not a homology 3-sphere",
                    f.missing_color, f.vertices[0]
                ));
            }
            record["residues_sphere"] = json!(r.holds);
        }
        _ => {}
    }

    if connected {
        let all = all_embeddings(&g).map_err(|e| format!("error: {e}\n"))?;
        let mut list = Vec::new();
        for r in all.values() {
            embedding_text(&mut text, r);
            list.push(embedding_json(r));
        }
        record["embeddings"] = Value::Array(list);
    }

    let holds = problems.is_empty();
    record["ok"] = json!(holds);
    let stdout = if a.json {
        let mut s = String::new();
        json_line(&mut s, &record);
        s
    } else {
        let _ = writeln!(text, "{}", if holds { "OK" } else { "FAILED" });
        text
    };
    if holds {
        Ok(CliOutput::ok(stdout))
    } else {
        let stderr = problems.iter().map(|p| format!("{p}\n")).collect();
        // no success text on failure
        Ok(CliOutput::failed(
            if a.json { stdout } else { String::new() },
            stderr,
        ))
    }
}

fn embed(a: EmbedArgs) -> Outcome {
    let g = load(&a.file)?;
    let reports: Vec<EmbeddingReport> = if a.all_perms {
        all_embeddings(&g)
            .map_err(|e| format!("error: {e}\n"))?
            .into_values()
            .collect()
    } else {
        let order = match &a.perm {
            Some(p) => CyclicOrder::new(p).map_err(|e| format!("error: --perm: {e}\n"))?,
            None => CyclicOrder::identity(g.color_count()),
        };
        vec![embedding_report(&g, &order).map_err(|e| format!("error: {e}\n"))?]
    };
    let mut out = String::new();
    for r in &reports {
        if a.json {
            json_line(&mut out, &embedding_json(r));
        } else {
            embedding_text(&mut out, r);
        }
    }
    Ok(CliOutput::ok(out))
}

fn homology_cmd(a: FileArgs) -> Outcome {
    let g = load(&a.file)?;
    let mut out = String::new();
    let h = homology(&CellComplex::build(&g));
    if a.json {
        let mut record = homology_json(&h);
        if !g.is_connected() {
            let comps: Vec<Value> = homology_by_component(&g)
                .iter()
                .map(|(vs, h)| json!({"vertices": vs, "homology": homology_json(h)}))
                .collect();
            record["components"] = Value::Array(comps);
        }
        json_line(&mut out, &record);
    } else {
        let _ = writeln!(out, "{h}");
        if !g.is_connected() {
            for (vs, h) in homology_by_component(&g) {
                let _ = writeln!(
                    out,
                    "component of {} vertices from {}: {h}",
                    vs.len(),
                    vs[0]
                );
            }
        }
    }
    Ok(CliOutput::ok(out))
}

/// File name stem for a solution: a hash prefix of its canonical code.
pub fn solution_name(code: &str) -> String {
    let digest = Sha256::digest(code.as_bytes());
    hex::encode(&digest[..8])
}

fn search(a: SearchArgs) -> Outcome {
    let mut spec = SearchSpec::new(&a.seq, a.vertices);
    spec.filters.require_bipartite = a.require_bipartite;
    spec.filters.require_3manifold = a.require_3manifold;
    spec.filters.require_residues_sphere = a.require_residues_sphere;
    spec.filters.require_connected = !a.allow_disconnected;
    spec.limits.max_solutions = if a.all {
        None
    } else {
        Some(a.max.unwrap_or(1))
    };
    if let Some(secs) = a.budget {
        let d = Duration::try_from_secs_f64(secs)
            .map_err(|_| format!("error: invalid budget {secs}\n"))?;
        spec.limits.budget = Some(d);
    }
    let mode = if a.color_symmetry {
        CanonMode::CyclicColorSymmetry
    } else {
        CanonMode::ColorPreserving
    };
    spec.canon_mode = mode;
    let out = search_gems(&spec).map_err(|e| format!("error: {e}\n"))?;
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir)
            .map_err(|e| format!("error: cannot create {}: {e}\n", dir.display()))?;
    }

    let notation = TypeSequence::normalize(&a.seq)
        .map(|t| t.notation())
        .unwrap_or_default();
    let mut stdout = String::new();
    for (i, g) in out.solutions.iter().enumerate() {
        let code = canonical_code_with(g, mode);
        let name = format!("{}.gem", solution_name(code.as_str()));
        let h = homology(&CellComplex::build(g));
        let header = format!(
            "# type {notation} seq {:?} p={}\n# canonical {code}\n# homology {h}\n",
            a.seq, a.vertices
        );
        let body = write_gem(g);
        let path = match &a.out {
            Some(dir) => {
                let path = dir.join(&name);
                fs::write(&path, format!("{header}{body}"))
                    .map_err(|e| format!("error: cannot write {}: {e}\n", path.display()))?;
                Some(path)
            }
            None => None,
        };
        if a.json {
            json_line(
                &mut stdout,
                &json!({
                    "index": i,
                    "seq": a.seq,
                    "p": a.vertices,
                    "code": code.as_str(),
                    "file": path.as_ref().map(|p| p.display().to_string()),
                    "orientable": g.is_bipartite(),
                    "homology": homology_json(&h),
                    "residues": g_counts(&residue_stats(g)),
                    "gem": body,
                }),
            );
        } else if let Some(path) = &path {
            let _ = writeln!(stdout, "{}\t{h}", path.display());
        } else {
            let _ = writeln!(stdout, "{header}{body}");
        }
    }

    let stats = &out.stats;
    let summary = format!(
        "{} solution(s), exhausted={}, nodes={}",
        out.solutions.len(),
        out.exhausted,
        stats.nodes
    );
    if a.json {
        json_line(
            &mut stdout,
            &json!({"summary": {"solutions": out.solutions.len(), "exhausted": out.exhausted, "stats": stats}}),
        );
    } else {
        let _ = writeln!(stdout, "# {summary}");
    }

    if out.solutions.is_empty() {
        let why = if out.exhausted {
            "no graph of this type passes the filters"
        } else {
            "no solution found within the budget"
        };
        Ok(CliOutput::failed(
            String::new(),
            format!("{why}; {summary}\n"),
        ))
    } else {
        Ok(CliOutput::ok(stdout))
    }
}

fn canon(a: CanonArgs) -> Outcome {
    let g = load(&a.file)?;
    let code = if a.color_symmetry {
        canonical_code_with(&g, CanonMode::CyclicColorSymmetry)
    } else {
        canonical_code(&g)
    };
    Ok(CliOutput::ok(format!("{code}\n")))
}
