//! Command-line front end: lattice generation, packing ingestion, simplex
//! scoring, tetrahedron-system extraction, star/density reports, and
//! inequality verification.
//!
//! Every command prints a structured text report (or writes it with
//! `--out`) and writes a JSON twin with `--json`.  Exit codes: 0 success,
//! 1 usage, 2 validation failure, 3 inconclusive verification.

mod report;

use clap::{Parser, Subcommand, ValueEnum};
use decstar::geom::{EdgeSimplex, SimplexClass};
use decstar::ival::{self, VerifyBudget};
use decstar::qsys::{standard_regions, Diagonal, Member, MemberKind, Packing, QSystem};
use decstar::score::{self, ScoreBranch, ScorePart};
use decstar::star::{self, StarOptions, StarScore};
use decstar::{constants, lattice};
use report::{num, Report, TextDoc};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "decstar",
    version,
    about = "Sphere-packing decomposition stars: scoring, tetrahedron systems, and verified inequalities"
)]
struct Cli {
    /// Seed for randomized quadrature streams.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the text report (or packing file) here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write a machine-readable JSON twin of the report here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a lattice patch as a packing file.
    Lattice {
        /// Lattice type.
        #[arg(value_enum)]
        kind: LatticeKind,
        /// Number of coordination shells around the central vertex.
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        shells: u32,
    },
    /// Evaluate a scoring function on one simplex given its edge lengths.
    Score {
        /// Function to evaluate.
        #[arg(value_enum)]
        function: ScoreFn,
        /// The six edge lengths y1..y6 (y1,y2,y3 at the distinguished
        /// vertex; y4 opposite y1, y5 opposite y2, y6 opposite y3).
        #[arg(num_args = 6, value_name = "EDGE")]
        edges: Vec<f64>,
    },
    /// Build the tetrahedron system of a packing and report its members.
    Qsystem {
        /// Packing file ("x y z" per line, '#' comments).
        input: PathBuf,
    },
    /// Score the decomposition star at a vertex of a packing.
    Star {
        /// Packing file.
        input: PathBuf,
        /// Center vertex id; defaults to the first interior vertex.
        #[arg(long)]
        center: Option<usize>,
        /// Quadrature samples per batch.
        #[arg(long, default_value_t = 1 << 16)]
        samples: usize,
        /// Independently shifted quadrature batches.
        #[arg(long, default_value_t = 8)]
        batches: usize,
    },
    /// Convert a maximal star score into an upper density bound.
    Density {
        /// Score as a multiple of the point value.
        #[arg(long, value_name = "MULTIPLE")]
        pt_multiple: Option<f64>,
        /// Raw score value.
        #[arg(long, value_name = "VALUE")]
        score: Option<f64>,
        /// Compute the score from a packing file instead.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Center vertex id for --input; defaults to the first interior vertex.
        #[arg(long)]
        center: Option<usize>,
        /// Quadrature samples per batch for --input.
        #[arg(long, default_value_t = 1 << 16)]
        samples: usize,
        /// Quadrature batches for --input.
        #[arg(long, default_value_t = 8)]
        batches: usize,
    },
    /// Verify registered inequalities by interval bisection.
    Verify {
        /// Registry identifiers to verify.
        #[arg(value_name = "ID")]
        ids: Vec<String>,
        /// Verify every registered inequality.
        #[arg(long, conflicts_with = "list")]
        all: bool,
        /// List the registry without verifying.
        #[arg(long)]
        list: bool,
        /// Interval-box budget across the cases of one entry.
        #[arg(long, default_value_t = 200_000)]
        max_boxes: u64,
        /// Bisection depth limit.
        #[arg(long, default_value_t = 48)]
        max_depth: u32,
        /// Sampling-falsification points per entry before bisection.
        #[arg(long, default_value_t = 20_000)]
        samples: u64,
    },
    /// Check the edge-distance certificates behind the exclusion lemmas.
    Certificates,
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeKind {
    Fcc,
    Hcp,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScoreFn {
    /// Compression: averaged analytic Voronoi score.
    Gamma,
    /// Analytic Voronoi score.
    Vor,
    /// Voronoi score truncated at 1.255.
    Vor0,
    /// Quarter score: compression or Voronoi by circumradius branch.
    Mu,
    /// Dihedral angle along edge 1.
    Dih,
    /// Solid angle at the distinguished vertex.
    Sol,
    /// Larger circumradius of the two faces at the diagonal.
    EtaPlus,
}

enum Failure {
    Usage(String),
    Validation(String),
    Inconclusive(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Validation(_) => 2,
            Failure::Inconclusive(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Validation(m) | Failure::Inconclusive(m) => m,
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(f) = run(cli) {
        eprintln!("error: {}", f.message());
        std::process::exit(f.code());
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Cmd::Lattice { kind, shells } => cmd_lattice(&cli, *kind, *shells),
        Cmd::Score { function, edges } => cmd_score(&cli, *function, edges),
        Cmd::Qsystem { input } => cmd_qsystem(&cli, input),
        Cmd::Star {
            input,
            center,
            samples,
            batches,
        } => cmd_star(&cli, input, *center, *samples, *batches),
        Cmd::Density {
            pt_multiple,
            score,
            input,
            center,
            samples,
            batches,
        } => cmd_density(&cli, *pt_multiple, *score, input, *center, *samples, *batches),
        Cmd::Verify {
            ids,
            all,
            list,
            max_boxes,
            max_depth,
            samples,
        } => cmd_verify(&cli, ids, *all, *list, *max_boxes, *max_depth, *samples),
        Cmd::Certificates => cmd_certificates(&cli),
    }
}

/// Writes the text document to `--out` (or stdout) and the JSON twin to
/// `--json` when given.
fn emit<T: Serialize>(cli: &Cli, rep: &Report<T>, text: String) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Validation(format!("writing {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    if let Some(path) = &cli.json {
        std::fs::write(path, rep.to_json())
            .map_err(|e| Failure::Validation(format!("writing {}: {e}", path.display())))?;
    }
    Ok(())
}

fn read_packing(path: &PathBuf) -> Result<Packing, Failure> {
    Packing::read_file(path)
        .map_err(|e| Failure::Validation(format!("reading {}: {e}", path.display())))
}

/// Lowest-id vertex whose constructions cannot reach the patch boundary.
fn default_center(p: &Packing) -> Result<usize, Failure> {
    (0..p.len()).find(|&i| star::is_interior(p, i)).ok_or_else(|| {
        Failure::Validation(
            "packing has no interior vertex; pass --center to override".to_string(),
        )
    })
}

#[derive(Serialize)]
struct LatticeData {
    kind: String,
    shells: u32,
    vertices: usize,
    min_pair_distance: f64,
    interior_vertices: usize,
    points: Vec<[f64; 3]>,
}

fn cmd_lattice(cli: &Cli, kind: LatticeKind, shells: u32) -> Result<(), Failure> {
    let (name, pts) = match kind {
        LatticeKind::Fcc => ("fcc", lattice::fcc_patch(shells)),
        LatticeKind::Hcp => ("hcp", lattice::hcp_patch(shells)),
    };
    let p = Packing::new(pts)
        .map_err(|e| Failure::Validation(format!("generated patch is invalid: {e}")))?;
    let interior = (0..p.len()).filter(|&i| star::is_interior(&p, i)).count();
    let data = LatticeData {
        kind: name.to_string(),
        shells,
        vertices: p.len(),
        min_pair_distance: lattice::min_pair_distance(p.points()),
        interior_vertices: interior,
        points: p.points().to_vec(),
    };
    let rep = Report::new("lattice", cli.seed, data);
    // the text output is the packing file itself
    emit(cli, &rep, p.to_text())
}

#[derive(Serialize)]
struct ScoreData {
    function: String,
    edges: [f64; 6],
    class: String,
    value: f64,
    pt_multiple: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    branch: Option<&'static str>,
    parts: Vec<ScorePart>,
}

fn class_name(c: SimplexClass) -> String {
    match c {
        SimplexClass::QuasiRegular => "quasi-regular tetrahedron".to_string(),
        SimplexClass::UprightQuarter { diagonal } => {
            format!("upright quarter (diagonal edge {diagonal})")
        }
        SimplexClass::FlatQuarter { diagonal } => {
            format!("flat quarter (diagonal edge {diagonal})")
        }
        SimplexClass::Other => "outside the tetrahedron classes".to_string(),
    }
}

fn branch_name(b: ScoreBranch) -> &'static str {
    match b {
        ScoreBranch::Compression => "compression",
        ScoreBranch::Voronoi => "voronoi",
    }
}

fn cmd_score(cli: &Cli, function: ScoreFn, edges: &[f64]) -> Result<(), Failure> {
    let y: [f64; 6] = edges
        .try_into()
        .map_err(|_| Failure::Usage("score expects exactly six edge lengths".to_string()))?;
    let s = EdgeSimplex::new(y).map_err(|e| Failure::Validation(e.to_string()))?;
    let val = |r: Result<f64, score::ScoreError>| -> Result<f64, Failure> {
        r.map_err(|e| Failure::Validation(e.to_string()))
    };

    let mut branch = None;
    let mut parts: Vec<ScorePart> = Vec::new();
    let (fname, value) = match function {
        ScoreFn::Gamma => {
            for (k, p) in s.placements().iter().enumerate() {
                parts.push(ScorePart {
                    label: format!("voronoi score, placement {}", k + 1),
                    value: val(score::vor_analytic(p))?,
                });
            }
            ("gamma", val(score::gamma(&s))?)
        }
        ScoreFn::Vor => ("vor", val(score::vor_analytic(&s))?),
        ScoreFn::Vor0 => ("vor0", val(score::vor0(&s))?),
        ScoreFn::Mu => {
            let (v, b) = score::mu_with_branch(&s)
                .map_err(|e| Failure::Validation(e.to_string()))?;
            branch = Some(branch_name(b));
            ("mu", v)
        }
        ScoreFn::Dih => ("dih", s.dihedral().map_err(|e| Failure::Validation(e.to_string()))?),
        ScoreFn::Sol => (
            "sol",
            s.solid_angle().map_err(|e| Failure::Validation(e.to_string()))?,
        ),
        ScoreFn::EtaPlus => ("eta-plus", val(score::eta_plus(&s))?),
    };

    let data = ScoreData {
        function: fname.to_string(),
        edges: y,
        class: class_name(s.classify()),
        value,
        pt_multiple: value / constants::pt(),
        branch,
        parts,
    };
    let rep = Report::new("score", cli.seed, data);

    let mut doc = TextDoc::new(&rep);
    doc.section("simplex");
    doc.kv("edges", y.map(num).join(" "));
    doc.kv("class", &rep.data.class);
    doc.section(fname);
    doc.kv("value", num(value));
    doc.kv("pt multiple", num(rep.data.pt_multiple));
    if let Some(b) = rep.data.branch {
        doc.kv("branch", b);
    }
    if !rep.data.parts.is_empty() {
        doc.blank();
        let rows: Vec<Vec<String>> = rep
            .data
            .parts
            .iter()
            .map(|p| vec![p.label.clone(), num(p.value)])
            .collect();
        doc.table(&["term", "value"], &rows);
    }
    emit(cli, &rep, doc.finish())
}

#[derive(Serialize)]
struct QSystemData {
    input: String,
    vertices: usize,
    quasi_regular: usize,
    quarters: usize,
    octahedra: usize,
    members: Vec<Member>,
    diagonals: Vec<Diagonal>,
    log: Vec<String>,
}

fn cmd_qsystem(cli: &Cli, input: &PathBuf) -> Result<(), Failure> {
    let p = read_packing(input)?;
    let q = QSystem::build(&p);

    let quasi = q
        .members
        .iter()
        .filter(|m| m.kind == MemberKind::QuasiRegular)
        .count();
    let octs = q
        .diagonals
        .iter()
        .filter(|d| d.selected && d.quarters.len() == 4)
        .count();

    let member_rows: Vec<Vec<String>> = q
        .members
        .iter()
        .map(|m| {
            let verts = m
                .vertices
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let (kind, context) = match m.kind {
                MemberKind::QuasiRegular => ("quasi-regular".to_string(), "-".to_string()),
                MemberKind::Quarter { diagonal } => {
                    let ctx = q
                        .context_of(diagonal)
                        .map(|(a, g)| format!("({a},{g})"))
                        .unwrap_or_else(|| "?".to_string());
                    (format!("quarter {}-{}", diagonal.0, diagonal.1), ctx)
                }
            };
            vec![verts, kind, context]
        })
        .collect();
    let diagonal_rows: Vec<Vec<String>> = q
        .diagonals
        .iter()
        .map(|d| {
            vec![
                format!("{}-{}", d.endpoints.0, d.endpoints.1),
                num(d.length),
                d.anchors.len().to_string(),
                d.quarters.len().to_string(),
                if d.selected { "yes".to_string() } else { "no".to_string() },
                d.exclusion.clone().unwrap_or_else(|| "-".to_string()),
            ]
        })
        .collect();

    let data = QSystemData {
        input: input.display().to_string(),
        vertices: p.len(),
        quasi_regular: quasi,
        quarters: q.members.len() - quasi,
        octahedra: octs,
        members: q.members.clone(),
        diagonals: q.diagonals.clone(),
        log: q.log.clone(),
    };
    let rep = Report::new("qsystem", cli.seed, data);

    let mut doc = TextDoc::new(&rep);
    doc.section("summary");
    doc.kv("input", &rep.data.input);
    doc.kv("vertices", rep.data.vertices);
    doc.kv("quasi-regular tetrahedra", rep.data.quasi_regular);
    doc.kv("quarters", rep.data.quarters);
    doc.kv("octahedra", rep.data.octahedra);
    doc.section("members");
    doc.table(&["vertices", "kind", "context"], &member_rows);
    if !diagonal_rows.is_empty() {
        doc.section("diagonals");
        doc.table(
            &["endpoints", "length", "anchors", "quarters", "selected", "exclusion"],
            &diagonal_rows,
        );
    }
    if !rep.data.log.is_empty() {
        doc.section("decision log");
        for line in &rep.data.log {
            doc.line(line);
        }
    }
    emit(cli, &rep, doc.finish())
}

#[derive(Serialize)]
struct StarRunData {
    input: String,
    samples_per_batch: usize,
    batches: usize,
    radius: f64,
    star: StarScore,
}

fn compute_star(
    input: &PathBuf,
    center: Option<usize>,
    samples: usize,
    batches: usize,
    seed: u64,
) -> Result<(Packing, StarScore), Failure> {
    let p = read_packing(input)?;
    let center = match center {
        Some(c) if c < p.len() => c,
        Some(c) => {
            return Err(Failure::Validation(format!(
                "center {c} out of range for {} vertices",
                p.len()
            )))
        }
        None => default_center(&p)?,
    };
    let q = QSystem::build(&p);
    let sr = standard_regions(&p, center)
        .map_err(|e| Failure::Validation(e.to_string()))?;
    let opts = StarOptions {
        samples_per_batch: samples,
        batches,
        seed,
        ..StarOptions::default()
    };
    let s = star::score_star(&p, &q, &sr, &opts)
        .map_err(|e| Failure::Validation(e.to_string()))?;
    Ok((p, s))
}

fn star_doc<T: Serialize>(rep: &Report<T>, s: &StarScore) -> TextDoc {
    let mut doc = TextDoc::new(rep);
    doc.section("star");
    doc.kv("center", s.center);
    doc.kv("interior", s.interior);
    doc.kv("score", num(s.total));
    doc.kv("score error", num(s.total_err));
    doc.kv("pt multiple", num(s.pt_multiple));
    doc.kv("density bound", num(s.density_bound));
    doc.section("clusters");
    let rows: Vec<Vec<String>> = s
        .clusters
        .iter()
        .map(|c| {
            vec![
                c.region.to_string(),
                c.sides.to_string(),
                c.members.len().to_string(),
                num(c.solid_angle),
                num(c.score),
                num(c.score_err),
            ]
        })
        .collect();
    doc.table(
        &["region", "sides", "members", "solid angle", "score", "error"],
        &rows,
    );
    doc.section("breakdown");
    for c in &s.clusters {
        doc.line(format!("region {} ({} sides)", c.region, c.sides));
        for part in &c.parts {
            doc.line(format!("  {}: {}", part.label, num(part.value)));
        }
    }
    doc
}

fn cmd_star(
    cli: &Cli,
    input: &PathBuf,
    center: Option<usize>,
    samples: usize,
    batches: usize,
) -> Result<(), Failure> {
    let (_, s) = compute_star(input, center, samples, batches, cli.seed)?;
    let data = StarRunData {
        input: input.display().to_string(),
        samples_per_batch: samples,
        batches,
        radius: StarOptions::default().radius,
        star: s,
    };
    let rep = Report::new("star", cli.seed, data);
    let doc = star_doc(&rep, &rep.data.star);
    emit(cli, &rep, doc.finish())
}

#[derive(Serialize)]
struct DensityData {
    source: String,
    score: f64,
    pt_multiple: f64,
    density_bound: f64,
    close_packing_density: f64,
}

fn cmd_density(
    cli: &Cli,
    pt_multiple: Option<f64>,
    score: Option<f64>,
    input: &Option<PathBuf>,
    center: Option<usize>,
    samples: usize,
    batches: usize,
) -> Result<(), Failure> {
    let given = [pt_multiple.is_some(), score.is_some(), input.is_some()]
        .iter()
        .filter(|&&b| b)
        .count();
    if given != 1 {
        return Err(Failure::Usage(
            "density needs exactly one of --pt-multiple, --score, --input".to_string(),
        ));
    }
    let (source, sigma) = if let Some(m) = pt_multiple {
        ("pt-multiple".to_string(), m * constants::pt())
    } else if let Some(v) = score {
        ("score".to_string(), v)
    } else {
        let path = input.as_ref().unwrap();
        let (_, s) = compute_star(path, center, samples, batches, cli.seed)?;
        (format!("star at vertex {} of {}", s.center, path.display()), s.total)
    };

    let data = DensityData {
        source,
        score: sigma,
        pt_multiple: sigma / constants::pt(),
        density_bound: star::delta_eff(sigma),
        close_packing_density: constants::fcc_density(),
    };
    let rep = Report::new("density", cli.seed, data);

    let mut doc = TextDoc::new(&rep);
    doc.section("density");
    doc.kv("source", &rep.data.source);
    doc.kv("score", num(rep.data.score));
    doc.kv("pt multiple", num(rep.data.pt_multiple));
    doc.kv("density bound", num(rep.data.density_bound));
    doc.kv("close packing density", num(rep.data.close_packing_density));
    emit(cli, &rep, doc.finish())
}

#[derive(Serialize)]
struct RegistryRow {
    id: &'static str,
    cases: usize,
    statement: &'static str,
}

#[derive(Serialize)]
struct BudgetEcho {
    max_boxes: u64,
    max_depth: u32,
    samples: u64,
}

#[derive(Serialize)]
struct VerifyData {
    budget: BudgetEcho,
    entries: Vec<ival::VerifyReport>,
}

fn cmd_verify(
    cli: &Cli,
    ids: &[String],
    all: bool,
    list: bool,
    max_boxes: u64,
    max_depth: u32,
    samples: u64,
) -> Result<(), Failure> {
    if list {
        let rows: Vec<RegistryRow> = ival::registry()
            .iter()
            .map(|e| RegistryRow {
                id: e.id,
                cases: e.cases.len(),
                statement: e.statement,
            })
            .collect();
        let rep = Report::new("verify --list", cli.seed, rows);
        let mut doc = TextDoc::new(&rep);
        doc.section("registry");
        let table: Vec<Vec<String>> = rep
            .data
            .iter()
            .map(|r| vec![r.id.to_string(), r.cases.to_string(), r.statement.to_string()])
            .collect();
        doc.table(&["id", "cases", "statement"], &table);
        return emit(cli, &rep, doc.finish());
    }

    let entries: Vec<&'static ival::CalcEntry> = if all {
        ival::registry().iter().collect()
    } else if ids.is_empty() {
        return Err(Failure::Usage(
            "verify needs registry ids, --all, or --list".to_string(),
        ));
    } else {
        let mut found = Vec::new();
        for id in ids {
            found.push(
                ival::lookup(id)
                    .ok_or_else(|| Failure::Validation(format!("unknown registry id {id:?}")))?,
            );
        }
        found
    };

    let budget = VerifyBudget {
        max_boxes,
        max_depth,
        samples,
        seed: cli.seed,
        mode: decstar::Parallelism::default(),
    };
    let reports: Vec<ival::VerifyReport> =
        entries.iter().map(|e| ival::verify(e, &budget)).collect();

    let data = VerifyData {
        budget: BudgetEcho {
            max_boxes,
            max_depth,
            samples,
        },
        entries: reports,
    };
    let rep = Report::new("verify", cli.seed, data);

    let mut doc = TextDoc::new(&rep);
    doc.kv("max boxes", max_boxes);
    doc.kv("max depth", max_depth);
    doc.kv("samples", samples);
    for r in &rep.data.entries {
        doc.section(r.id);
        doc.kv("statement", r.statement);
        match &r.outcome {
            ival::Outcome::Verified => doc.kv("outcome", "verified"),
            ival::Outcome::Falsified {
                case,
                witness,
                margin,
            } => {
                doc.kv("outcome", "falsified");
                doc.kv("case", case);
                doc.kv("witness", witness.map(num).join(" "));
                doc.kv("margin", num(*margin));
            }
            ival::Outcome::Inconclusive { frontier } => {
                doc.kv("outcome", "inconclusive");
                doc.kv("frontier boxes", frontier.len());
                for b in frontier.iter().take(2) {
                    let span: Vec<String> = (0..6)
                        .map(|i| format!("[{}, {}]", num(b.lo[i]), num(b.hi[i])))
                        .collect();
                    doc.line(format!("  {} depth {}: {}", b.case, b.depth, span.join(" ")));
                }
                if frontier.len() > 2 {
                    doc.line(format!(
                        "  ... {} more in the JSON twin",
                        frontier.len() - 2
                    ));
                }
            }
        }
        doc.kv("boxes", r.stats.boxes);
        doc.kv("waves", r.stats.waves);
        doc.kv("max depth reached", r.stats.max_depth_reached);
        doc.kv("samples tested", r.stats.samples_tested);
    }
    emit(cli, &rep, doc.finish())?;

    let falsified: Vec<&str> = rep
        .data
        .entries
        .iter()
        .filter(|r| r.outcome.is_falsified())
        .map(|r| r.id)
        .collect();
    if !falsified.is_empty() {
        return Err(Failure::Validation(format!(
            "falsified: {}",
            falsified.join(", ")
        )));
    }
    let open: Vec<&str> = rep
        .data
        .entries
        .iter()
        .filter(|r| matches!(r.outcome, ival::Outcome::Inconclusive { .. }))
        .map(|r| r.id)
        .collect();
    if !open.is_empty() {
        return Err(Failure::Inconclusive(format!(
            "inconclusive under the given budget: {}",
            open.join(", ")
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct CertData {
    certificates: Vec<ival::CertResult>,
}

fn cmd_certificates(cli: &Cli) -> Result<(), Failure> {
    let results: Vec<ival::CertResult> = ival::distance_certificates()
        .iter()
        .map(ival::check_certificate)
        .collect();
    let data = CertData {
        certificates: results,
    };
    let rep = Report::new("certificates", cli.seed, data);

    let mut doc = TextDoc::new(&rep);
    doc.section("distance certificates");
    let rows: Vec<Vec<String>> = rep
        .data
        .certificates
        .iter()
        .map(|c| {
            vec![
                c.id.to_string(),
                format!("[{}, {}]", num(c.value_lo), num(c.value_hi)),
                num(c.exceeds),
                if c.confirmed { "yes".to_string() } else { "NO".to_string() },
                c.statement.to_string(),
            ]
        })
        .collect();
    doc.table(
        &["id", "enclosure", "exceeds", "confirmed", "statement"],
        &rows,
    );
    emit(cli, &rep, doc.finish())?;

    let failed: Vec<&str> = rep
        .data
        .certificates
        .iter()
        .filter(|c| !c.confirmed)
        .map(|c| c.id)
        .collect();
    if !failed.is_empty() {
        return Err(Failure::Validation(format!(
            "unconfirmed certificates: {}",
            failed.join(", ")
        )));
    }
    Ok(())
}
