//! `connideal`: command-line access to t-connected ideals, their
//! combinatorial invariants and the Betti-number oracle.
//!
//! Exit codes: 0 success, 1 a verification verdict failed, 2 input or
//! resource error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use connideal::decomposition::{
    fig1_reference_order, verify_decomposition, verify_dominating_intersection,
    DecompositionReport,
};
use connideal::graph::{chordality, fixture, random_chordal, Fixture};
use connideal::harness::{
    batch_verify, predict, verify_graph, BatchConfig, GraphDescriptor, GraphFamily,
    VerificationReport, VerifyOptions,
};
use connideal::homology::{
    betti_table_with, homological_invariants, BettiTable, EulerAudit, FieldSpec,
    HomologicalInvariants, OracleOptions, DEFAULT_ORACLE_CAP,
};
use connideal::vertex_set::MAX_VERTICES;
use connideal::{parse_graph, t_clique_ideal, t_connected_ideal, Graph, VertexSet};

const CAP_ENV: &str = "SR_MAX_ORACLE_N";

#[derive(Parser)]
#[command(name = "connideal", version, about = "t-connected ideals of graphs")]
struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Omit the `meta` block (version, timestamp, elapsed time) so identical
    /// invocations print identical bytes.
    #[arg(long, global = true)]
    no_meta: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Combinatorial invariants and predictions for J_t(G).
    Analyze {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        t: usize,
    },
    /// Graded Betti numbers of R/I by the homological oracle.
    Betti {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, value_enum, default_value_t = IdealKind::Connected)]
        ideal: IdealKind,
    },
    /// Check predictions against the oracle on one graph or a random corpus.
    Verify(VerifyArgs),
    /// Write a random chordal graph in edge-list format.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_clique: usize,
        /// Destination file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Source {
    /// Built-in graph: fig1, cycle, path, complete, complete_minus_edge,
    /// clique_star.
    #[arg(long, conflicts_with = "graph")]
    fixture: Option<String>,
    /// Fixture parameters, comma separated.
    #[arg(long, value_delimiter = ',', requires = "fixture")]
    param: Vec<usize>,
    /// Edge-list file.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, default_value = "gf2")]
    field: String,
    /// Largest variable count the oracle accepts (default 12, or the
    /// SR_MAX_ORACLE_N environment variable).
    #[arg(long)]
    cap: Option<usize>,
    /// Run the oracle even above the cap.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdealKind {
    Connected,
    Clique,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OrderKind {
    Default,
    /// The ordering of the worked example on fig1 (x = 5, t = 4).
    Paper,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    /// Block sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    t: Vec<usize>,
    #[command(flatten)]
    oracle: OracleArgs,
    /// Add GF(2), GF(3) and Q oracles and compare them.
    #[arg(long)]
    cross_field: bool,
    /// Verify a random chordal corpus instead of a single graph.
    #[arg(long, conflicts_with_all = ["fixture", "graph"])]
    random: bool,
    #[arg(long, default_value_t = 50, requires = "random")]
    count: usize,
    #[arg(long, default_value_t = 10, requires = "random")]
    n_max: usize,
    #[arg(long, default_value_t = 1, requires = "random")]
    seed: u64,
    #[arg(long, default_value_t = 4, requires = "random")]
    max_clique: usize,
    /// Also check the decomposition identities at this simplicial vertex.
    #[arg(long, conflicts_with = "random")]
    decompose: Option<usize>,
    #[arg(long, value_enum, default_value_t = OrderKind::Default, requires = "decompose")]
    order: OrderKind,
}

/// Input or resource problem; reported on stderr with exit code 2.
struct Fail(String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

type CliResult<T> = Result<T, Fail>;

struct Loaded {
    name: String,
    graph: Graph,
    fixture: Option<Fixture>,
}

impl Source {
    fn load(&self) -> CliResult<Loaded> {
        match (&self.fixture, &self.graph) {
            (Some(name), None) => {
                let fx = if self.param.is_empty() && name.contains('(') {
                    name.parse::<Fixture>()?
                } else {
                    Fixture::from_name(name, &self.param)?
                };
                Ok(Loaded {
                    name: fx.to_string(),
                    graph: fixture(fx)?,
                    fixture: Some(fx),
                })
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Fail(format!("{}: {e}", path.display())))?;
                let graph =
                    parse_graph(&text).map_err(|e| Fail(format!("{}: {e}", path.display())))?;
                Ok(Loaded {
                    name: path.display().to_string(),
                    graph,
                    fixture: None,
                })
            }
            _ => Err(Fail("give exactly one of --fixture or --graph".into())),
        }
    }
}

impl OracleArgs {
    fn field(&self) -> CliResult<FieldSpec> {
        Ok(self.field.parse()?)
    }

    /// Flag, then environment, then the built-in default.
    fn cap(&self) -> CliResult<usize> {
        if let Some(c) = self.cap {
            return Ok(c);
        }
        match std::env::var(CAP_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Fail(format!("{CAP_ENV}={v} is not a non-negative integer"))),
            Err(_) => Ok(DEFAULT_ORACLE_CAP),
        }
    }
}

#[derive(Serialize)]
struct Meta {
    tool: &'static str,
    version: &'static str,
    unix_time: u64,
    elapsed_ms: u64,
}

/// Output document: the payload fields plus an optional `meta` block.
#[derive(Serialize)]
struct Doc<T: Serialize> {
    #[serde(flatten)]
    body: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    meta: Option<Meta>,
}

fn emit<T: Serialize>(body: T, no_meta: bool, start: Instant) -> CliResult<()> {
    let meta = (!no_meta).then(|| Meta {
        tool: "connideal",
        version: env!("CARGO_PKG_VERSION"),
        unix_time: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs()),
        elapsed_ms: start.elapsed().as_millis() as u64,
    });
    let text = serde_json::to_string_pretty(&Doc { body, meta })?;
    println!("{text}");
    Ok(())
}

fn check_t(t: usize) -> CliResult<()> {
    if t < 2 {
        Err(Fail(format!("--t must be at least 2, got {t}")))
    } else {
        Ok(())
    }
}

#[derive(Serialize)]
struct AnalyzeOut {
    graph: String,
    n: usize,
    t: usize,
    is_chordal: bool,
    nu_t: usize,
    height: usize,
    bight: usize,
    unmixed: bool,
    generators_count: usize,
    predicted_reg: Option<usize>,
    predicted_pd: Option<usize>,
    predicted_linear: Option<bool>,
    #[serde(rename = "predicted_CM")]
    predicted_cm: Option<bool>,
    zero_ideal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    notice: Option<String>,
}

fn analyze(source: &Source, t: usize, no_meta: bool, start: Instant) -> CliResult<bool> {
    check_t(t)?;
    let loaded = source.load()?;
    let p = predict(&loaded.graph, t)?;
    let zero = p.zero_ideal();
    let notice = zero.then(|| {
        format!("J_{t} is the zero ideal: no connected {t}-subset exists, so no statement about it is tested")
    });
    emit(
        AnalyzeOut {
            graph: loaded.name,
            n: loaded.graph.n(),
            t,
            is_chordal: p.is_chordal,
            nu_t: p.nu_t,
            height: p.height,
            bight: p.bight,
            unmixed: p.unmixed,
            generators_count: p.generators_count,
            predicted_reg: p.predicted_reg,
            predicted_pd: p.predicted_pd,
            predicted_linear: p.predicted_linear,
            predicted_cm: p.predicted_cm,
            zero_ideal: zero,
            notice,
        },
        no_meta,
        start,
    )?;
    Ok(true)
}

#[derive(Serialize)]
struct BettiOut {
    graph: String,
    t: usize,
    ideal: &'static str,
    betti: BettiTable,
    invariants: HomologicalInvariants,
    audit: EulerAudit,
}

fn betti(
    source: &Source,
    t: usize,
    oracle: &OracleArgs,
    kind: IdealKind,
    no_meta: bool,
    start: Instant,
) -> CliResult<bool> {
    check_t(t)?;
    let loaded = source.load()?;
    let field = oracle.field()?;
    let (ideal, label) = match kind {
        IdealKind::Connected => (t_connected_ideal(&loaded.graph, t)?, "connected"),
        IdealKind::Clique => (t_clique_ideal(&loaded.graph, t)?, "clique"),
    };
    let mut cap = oracle.cap()?;
    if oracle.force {
        cap = cap.max(ideal.n());
    }
    let table = betti_table_with(&ideal, field, OracleOptions { cap })
        .map_err(|e| Fail(format!("{e} (use --force or --cap to override)")))?;
    let height = ideal.cover_stats().height;
    let invariants = homological_invariants(&table, height);
    let audit = table.audit;
    emit(
        BettiOut {
            graph: loaded.name,
            t,
            ideal: label,
            betti: table,
            invariants,
            audit,
        },
        no_meta,
        start,
    )?;
    Ok(audit.passed())
}

#[derive(Serialize)]
struct DecompositionOut {
    x: usize,
    t: usize,
    order: Vec<VertexSet>,
    identities: DecompositionReport,
    dominating: DecompositionReport,
}

#[derive(Serialize)]
struct VerifyOut {
    graph: String,
    reports: Vec<VerificationReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    decomposition: Vec<DecompositionOut>,
    notes: Vec<String>,
}

fn fields_for(args: &VerifyArgs) -> CliResult<Vec<FieldSpec>> {
    let primary = args.oracle.field()?;
    let mut fields = vec![primary];
    if args.cross_field {
        for f in [FieldSpec::GF2, FieldSpec::GF3, FieldSpec::Rationals] {
            if !fields.contains(&f) {
                fields.push(f);
            }
        }
    }
    Ok(fields)
}

fn verify(args: &VerifyArgs, no_meta: bool, start: Instant) -> CliResult<bool> {
    for &t in &args.t {
        check_t(t)?;
    }
    let fields = fields_for(args)?;
    let mut cap = args.oracle.cap()?;
    if args.random {
        if args.n_max > MAX_VERTICES {
            return Err(Fail(format!("--n-max is limited to {MAX_VERTICES}")));
        }
        if args.oracle.force {
            cap = cap.max(args.n_max);
        }
        let config = BatchConfig {
            count: args.count,
            n_max: args.n_max,
            t_set: args.t.clone(),
            seed: args.seed,
            fields,
            family: GraphFamily::Chordal {
                max_clique: args.max_clique,
            },
            cap,
            timing: !no_meta,
        };
        let report = batch_verify(&config)?;
        for r in report.failures() {
            eprintln!("failure reproducer:\n{}", r.reproducer.as_deref().unwrap_or(""));
        }
        let ok = report.summary.fail == 0;
        emit(report, no_meta, start)?;
        return Ok(ok);
    }

    let loaded = args.source.load()?;
    let g = &loaded.graph;
    if args.oracle.force {
        cap = cap.max(g.n());
    }
    let opts = VerifyOptions {
        fields,
        cap,
        timing: !no_meta,
    };
    let reports = args
        .t
        .iter()
        .map(|&t| verify_graph(g, GraphDescriptor::named(&loaded.name, g), t, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    let mut notes = Vec::new();
    if !chordality(g).is_chordal {
        notes.push("graph is not chordal: only the unconditional bounds are tested".to_string());
    }
    for r in &reports {
        if r.predictions.nu_mismatch() {
            notes.push(format!(
                "t = {}: graph-side nu_t = {} but the generator hypergraph gives {}",
                r.t,
                r.predictions.nu_t,
                r.predictions.hypergraph_nu.unwrap_or_default()
            ));
        }
        for v in &r.verdicts {
            if v.reason.contains("strict") {
                notes.push(format!("t = {}: {} holds strictly ({})", r.t, v.statement, v.reason));
            }
        }
    }

    let mut decomposition = Vec::new();
    if let Some(x) = args.decompose {
        let reference = if args.order == OrderKind::Paper {
            let (fx, rx, rt, order) = fig1_reference_order();
            if loaded.fixture != Some(fx) || x != rx || args.t != [rt] {
                return Err(Fail(format!(
                    "--order paper needs --fixture {fx} --t {rt} --decompose {rx}"
                )));
            }
            Some(order)
        } else {
            None
        };
        for &t in &args.t {
            let identities = verify_decomposition(g, x, t, reference.as_deref())?;
            let dominating = verify_dominating_intersection(g, x, t, reference.as_deref())?;
            let order = match &reference {
                Some(o) => o.clone(),
                None => connideal::decomposition::a_x_list(g, x, t, None)?,
            };
            decomposition.push(DecompositionOut {
                x,
                t,
                order,
                identities,
                dominating,
            });
        }
    }

    let ok = reports.iter().all(|r| !r.failed())
        && decomposition
            .iter()
            .all(|d| d.identities.all_pass() && d.dominating.all_pass());
    for r in reports.iter().filter(|r| r.failed()) {
        eprintln!("failure reproducer:\n{}", r.reproducer.as_deref().unwrap_or(""));
    }
    emit(
        VerifyOut {
            graph: loaded.name,
            reports,
            decomposition,
            notes,
        },
        no_meta,
        start,
    )?;
    Ok(ok)
}

fn gen(n: usize, seed: u64, max_clique: usize, out: Option<&PathBuf>) -> CliResult<bool> {
    if n == 0 || n > MAX_VERTICES {
        return Err(Fail(format!("--n must lie in 1..={MAX_VERTICES}")));
    }
    let text = random_chordal(n, seed, max_clique).to_edge_list();
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Fail(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(true)
}

fn run(cli: &Cli) -> CliResult<bool> {
    let start = Instant::now();
    if let Some(k) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build_global()?;
    }
    match &cli.command {
        Command::Analyze { source, t } => analyze(source, *t, cli.no_meta, start),
        Command::Betti {
            source,
            t,
            oracle,
            ideal,
        } => betti(source, *t, oracle, *ideal, cli.no_meta, start),
        Command::Verify(args) => verify(args, cli.no_meta, start),
        Command::Gen {
            n,
            seed,
            max_clique,
            out,
        } => gen(*n, *seed, *max_clique, out.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fail(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
