use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use intergroup::catalog::{self, find_entry, ingest_tables, parse_manifest, standard_families, CatalogEntry};
use intergroup::classify::{audit_analysis, ClassificationReport, CSV_HEADER, CSV_VERSION};
use intergroup::lattice::{center, is_nilpotent, is_solvable, is_supersolvable, order_length};
use intergroup::presentation::{todd_coxeter, Presentation};
use intergroup::{Error, FiniteGroup, GroupAnalysis, Limits};

/// Intersection graphs of finite groups: lattices, connectivity, classification audits.
#[derive(Parser)]
#[command(name = "intergroup", version)]
struct Cli {
    /// Largest group order any constructor will build.
    #[arg(long, global = true, env = "INTERGROUP_MAX_ORDER")]
    max_order: Option<usize>,
    /// Largest number of subgroups held in a lattice.
    #[arg(long, global = true, env = "INTERGROUP_MAX_LATTICE")]
    max_lattice: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summary of a group and its intersection graph.
    Info {
        /// Catalog label or a .json / .perm / .pres file.
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Vertex connectivity of the intersection graph.
    Kappa {
        spec: String,
        /// Also print an upward-closed minimum separating set.
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        json: bool,
    },
    /// The intersection graph, as DOT or JSON.
    Graph {
        spec: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// The subgroup lattice as JSON.
    Lattice { spec: String },
    /// Compare computed connectivity with the classification on many groups.
    Audit {
        /// Audit the default catalog (the default when no other source is given).
        #[arg(long)]
        catalog: bool,
        /// Include opt-in catalog entries.
        #[arg(long)]
        all: bool,
        /// Group table files to audit.
        #[arg(long)]
        tables: Vec<PathBuf>,
        /// Manifest file selecting catalog constructions.
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Write the reports as CSV to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Worker threads; output order follows input order regardless.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Print one JSON record per group instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Print the catalog manifest.
    Catalog {
        #[arg(long)]
        all: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_resource_cap() { 3 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut limits = Limits::default();
    if let Some(n) = cli.max_order {
        limits.max_order = n;
    }
    if let Some(n) = cli.max_lattice {
        limits.max_lattice = n;
    }
    let mut out = std::io::stdout().lock();
    match run(cli.command, &limits, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command, limits: &Limits, out: &mut impl Write) -> CliResult<u8> {
    match command {
        Command::Info { spec, json } => info(&spec, json, limits, out),
        Command::Kappa { spec, witness, json } => kappa(&spec, witness, json, limits, out),
        Command::Graph { spec, format } => {
            let a = GroupAnalysis::new(resolve(&spec, limits)?, limits)?;
            match format {
                Format::Dot => out.write_all(a.graph.to_dot().as_bytes())?,
                Format::Json => writeln!(out, "{}", to_json(&a.graph.export()))?,
            }
            Ok(0)
        }
        Command::Lattice { spec } => {
            let g = resolve(&spec, limits)?;
            let l = intergroup::all_subgroups(&g, limits)?;
            writeln!(out, "{}", to_json(&l.export()))?;
            Ok(0)
        }
        Command::Audit { catalog, all, tables, manifest, csv, jobs, json } => {
            let sources = Sources { catalog, all, tables, manifest };
            audit(sources, csv.as_deref(), jobs, json, limits, out)
        }
        Command::Catalog { all } => {
            let entries: Vec<CatalogEntry> = standard_families().into_iter().filter(|e| all || !e.opt_in).collect();
            out.write_all(catalog::manifest(&entries).as_bytes())?;
            Ok(0)
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Resolves a group spec: catalog label first, then a file by extension.
/// A spec that is both a label and an existing file is rejected.
fn resolve(spec: &str, limits: &Limits) -> CliResult<FiniteGroup> {
    let path = Path::new(spec);
    let entry = find_entry(spec);
    if entry.is_some() && path.exists() {
        return Err(input_error(format!("{spec:?} is both a catalog label and a file; rename or qualify the path")));
    }
    if let Some(entry) = entry {
        return Ok(entry.build(limits)?);
    }
    if !path.exists() {
        return Err(input_error(format!("{spec:?} is neither a catalog label nor an existing file")));
    }
    let text = std::fs::read_to_string(path)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("G").to_string();
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => {
            let mut groups = FiniteGroup::parse_group_file(&text, limits)?;
            if groups.len() != 1 {
                return Err(input_error(format!("{spec}: expected one group, found {}", groups.len())));
            }
            Ok(groups.remove(0))
        }
        Some("perm") => {
            let (degree, gens) = intergroup::group::parse_permutation_file(&text)?;
            Ok(FiniteGroup::from_permutation_generators(degree, &gens, limits)?.with_label(stem))
        }
        Some("pres") => {
            let p = Presentation::parse(&text)?;
            Ok(todd_coxeter(&p, limits.max_cosets, limits)?.with_label(stem))
        }
        _ => Err(input_error(format!("{spec}: unknown file type (expected .json, .perm or .pres)"))),
    }
}

#[derive(Serialize)]
struct InfoRecord {
    label: String,
    order: usize,
    order_length: usize,
    solvable: bool,
    nilpotent: bool,
    supersolvable: bool,
    simple: bool,
    subgroups: usize,
    vertices: usize,
    edges: usize,
    kappa: i64,
    minimal_subgroups: usize,
    maximal_subgroups: usize,
    frattini_order: usize,
    center_order: usize,
}

fn info(spec: &str, json: bool, limits: &Limits, out: &mut impl Write) -> CliResult<u8> {
    let a = GroupAnalysis::new(resolve(spec, limits)?, limits)?;
    let g = &a.group;
    let l = &a.lattice;
    let rec = InfoRecord {
        label: g.label().unwrap_or(spec).to_string(),
        order: g.order(),
        order_length: order_length(g),
        solvable: is_solvable(g, limits),
        nilpotent: is_nilpotent(g),
        supersolvable: is_supersolvable(g, limits),
        simple: g.order() > 1 && !intergroup::classify::has_proper_normal(g, l),
        subgroups: l.len(),
        vertices: a.graph.vertex_count(),
        edges: a.graph.edge_count(),
        kappa: a.kappa.0,
        minimal_subgroups: l.minimal_indices().len(),
        maximal_subgroups: l.maximal_indices().len(),
        frattini_order: l.frattini(g).order(),
        center_order: center(g).order(),
    };
    if json {
        writeln!(out, "{}", to_json(&rec))?;
        return Ok(0);
    }
    let value = serde_json::to_value(&rec).expect("serializable");
    for (k, v) in value.as_object().expect("record is an object") {
        let v = v.as_str().map_or_else(|| v.to_string(), str::to_string);
        writeln!(out, "{k}: {v}")?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct WitnessVertex {
    vertex: usize,
    lattice_index: usize,
    order: usize,
    elements: Vec<usize>,
}

fn kappa(spec: &str, witness: bool, json: bool, limits: &Limits, out: &mut impl Write) -> CliResult<u8> {
    let a = GroupAnalysis::new(resolve(spec, limits)?, limits)?;
    // for a complete graph this is the convention witness: all but one minimal vertex
    let sep = if witness { a.separator_witness() } else { None };
    let sep: Option<Vec<WitnessVertex>> = sep.map(|vs| {
        vs.into_iter()
            .map(|v| {
                let li = a.graph.lattice_index(v);
                WitnessVertex {
                    vertex: v,
                    lattice_index: li,
                    order: a.graph.order(v),
                    elements: a.lattice.get(li).elements(),
                }
            })
            .collect()
    });
    if json {
        #[derive(Serialize)]
        struct KappaRecord {
            kappa: i64,
            complete: bool,
            #[serde(skip_serializing_if = "Option::is_none")]
            witness: Option<Vec<WitnessVertex>>,
        }
        let rec = KappaRecord { kappa: a.kappa.0, complete: a.graph.is_complete(), witness: sep };
        writeln!(out, "{}", to_json(&rec))?;
        return Ok(0);
    }
    writeln!(out, "kappa: {}", a.kappa)?;
    if witness {
        match sep {
            None => writeln!(out, "witness: none (empty graph)")?,
            Some(vs) => {
                let note = if a.graph.is_complete() { " (complete graph)" } else { "" };
                writeln!(out, "witness: size {}{note}", vs.len())?;
                for w in vs {
                    writeln!(out, "  v{} order={} subgroup={} elements={:?}", w.vertex, w.order, w.lattice_index, w.elements)?;
                }
            }
        }
    }
    Ok(0)
}

struct Sources {
    catalog: bool,
    all: bool,
    tables: Vec<PathBuf>,
    manifest: Option<PathBuf>,
}

/// A group to audit: either a catalog construction or a parsed table.
enum Job {
    Entry(CatalogEntry),
    Group(FiniteGroup),
}

fn collect_jobs(s: &Sources, limits: &Limits) -> CliResult<Vec<Job>> {
    let mut jobs = Vec::new();
    let use_catalog = s.catalog || s.all || (s.tables.is_empty() && s.manifest.is_none());
    if use_catalog {
        jobs.extend(standard_families().into_iter().filter(|e| s.all || !e.opt_in).map(Job::Entry));
    }
    if let Some(path) = &s.manifest {
        let text = std::fs::read_to_string(path)?;
        jobs.extend(parse_manifest(&text)?.into_iter().map(Job::Entry));
    }
    for path in &s.tables {
        let groups = ingest_tables(path, limits).map_err(|e| {
            let mut f = Failure::from(e);
            f.message = format!("{}: {}", path.display(), f.message);
            f
        })?;
        jobs.extend(groups.into_iter().map(Job::Group));
    }
    Ok(jobs)
}

fn audit_job(job: Job, limits: &Limits) -> intergroup::Result<ClassificationReport> {
    let g = match job {
        Job::Entry(e) => e.build(limits)?,
        Job::Group(g) => g,
    };
    audit_analysis(&GroupAnalysis::new(g, limits)?, limits)
}

#[derive(Serialize)]
struct DiffRecord<'a> {
    kind: &'static str,
    label: &'a str,
    order: usize,
    statements: Vec<&'static str>,
    kappa: i64,
    components: usize,
    report: &'a ClassificationReport,
}

fn audit(
    sources: Sources,
    csv_path: Option<&Path>,
    jobs: usize,
    json: bool,
    limits: &Limits,
    out: &mut impl Write,
) -> CliResult<u8> {
    let work = collect_jobs(&sources, limits)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| input_error(e.to_string()))?;
    let results: Vec<intergroup::Result<ClassificationReport>> =
        pool.install(|| work.into_par_iter().map(|j| audit_job(j, limits)).collect());
    let mut reports = Vec::with_capacity(results.len());
    for r in results {
        reports.push(r?);
    }

    for r in &reports {
        if json {
            writeln!(out, "{}", to_json(r))?;
        } else {
            writeln!(
                out,
                "{:<16} order={:<5} kappa={:<3} A={:<5} B={:<5} C={:<5} {}",
                r.label,
                r.order,
                r.kappa,
                r.csv_record()[5],
                r.csv_record()[6],
                r.csv_record()[7],
                if r.agrees() { "ok" } else { "DISAGREE" }
            )?;
        }
    }
    let bad: Vec<&ClassificationReport> = reports.iter().filter(|r| !r.agrees()).collect();
    for r in &bad {
        let diff = DiffRecord {
            kind: "disagreement",
            label: &r.label,
            order: r.order,
            statements: r.disagreements(),
            kappa: r.kappa,
            components: r.components,
            report: r,
        };
        writeln!(out, "{}", to_json(&diff))?;
    }
    if !json {
        writeln!(out, "groups: {}, disagreements: {}", reports.len(), bad.len())?;
    }

    if let Some(path) = csv_path {
        write_csv(path, &reports)?;
    }
    Ok(if bad.is_empty() { 0 } else { 1 })
}

fn write_csv(path: &Path, reports: &[ClassificationReport]) -> CliResult<()> {
    let mut file = File::create(path)?;
    writeln!(file, "{CSV_VERSION}")?;
    let mut w = csv::Writer::from_writer(file);
    let csv_err = |e: csv::Error| input_error(format!("{}: {e}", path.display()));
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in reports {
        w.write_record(r.csv_record()).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}
