use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use carowei::bounds::{self, BoundReport};
use carowei::distsim::{
    indistinguishability_demo, simulate_one_round, KeyEncoding, OnlineSession, RoundConfig,
};
use carowei::experiment::{
    parse_fraction, run_experiment, run_tight, sweep_csv, sweep_rho, GenSpec, Instance, RatioReport,
    TightFamily, TightParams, TightReport,
};
use carowei::graph::io::{read_graph, read_weights, EdgeReader};
use carowei::graph::WeightedGraph;
use carowei::{Algorithm, RankMode, VERSION};

/// Turán-type independent set bounds and one-round randomized rules.
#[derive(Parser, Debug)]
#[command(name = "carowei", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Turán, Caro-Wei and weighted bounds of a graph, with the ratio formulas for its maximum degree.
    Bounds(BoundsArgs),
    /// Run one algorithm and compare the achieved ratio with its guarantee.
    Run(RunArgs),
    /// Build a tight family and check that its ratio formula is attained.
    Tight(TightArgs),
    /// Tabulate rho(delta) and the other ratio formulas over a degree range.
    SweepRho(SweepArgs),
    /// Single-pass edge-stream execution of the one-round rule.
    Stream(StreamArgs),
    /// One-round broadcast simulation with bandwidth accounting.
    Simulate(SimulateArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
struct Source {
    /// Edge-list file (`n m` header, then `u v` per line).
    #[arg(long, conflicts_with = "gen")]
    graph: Option<PathBuf>,
    /// Generator spec, e.g. `turan-tight:3`, `reg-bipartite:3,50`, `knn:3,9`.
    #[arg(long = "gen")]
    gen: Option<String>,
    /// Vertex weights, one positive integer per line.
    #[arg(long)]
    weights: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
struct Output {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Serialize)]
struct BoundsArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct RunArgs {
    #[command(flatten)]
    source: Source,
    /// boppana, max, selkow, greedy-min, greedy-max or gwmin2.
    #[arg(long)]
    alg: String,
    #[arg(long, default_value_t = 100_000)]
    trials: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct TightArgs {
    /// turan, cw-regular-bipartite, weighted-bipartite or weighted-knn.
    #[arg(long)]
    family: String,
    #[arg(long)]
    delta: usize,
    /// Side size of the bipartite families; `N` of K_(N,N).
    #[arg(long, alias = "n")]
    side: Option<usize>,
    /// Right-side weight of K_(N,N).
    #[arg(long)]
    q: Option<u64>,
    /// Weight ratio `NUM/DEN` of the weighted bipartite family.
    #[arg(long)]
    beta: Option<String>,
    #[arg(long, default_value_t = 100_000)]
    trials: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct SweepArgs {
    #[arg(long, default_value_t = 2)]
    from: usize,
    #[arg(long, default_value_t = 20)]
    to: usize,
    /// Golden-section bracket width.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Append the `2^(2/3)/3` asymptote as an extra column.
    #[arg(long)]
    with_asymptote: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct StreamArgs {
    #[command(flatten)]
    source: Source,
    /// Rank mode; `weighted` needs weights.
    #[arg(long, value_enum, default_value_t = Mode::Unweighted)]
    mode: Mode,
    /// Log one JSON line per edge to this path (`-` for stdout).
    #[arg(long)]
    evictions: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Unweighted,
    Weighted,
}

#[derive(Args, Debug, Serialize)]
struct SimulateArgs {
    #[command(flatten)]
    source: Source,
    /// Quantize draws to ceil(3 log2 n) bits.
    #[arg(long)]
    strict_keys: bool,
    /// Payload budget per message, in bits.
    #[arg(long, default_value_t = 128)]
    budget: u32,
    /// Instead of a graph, compare views on K_(D+1) and a D-regular bipartite graph.
    #[arg(long, conflicts_with_all = ["graph", "gen", "weights"])]
    demo: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[command(flatten)]
    output: Output,
}

/// A guarantee or internal consistency check failed.
#[derive(Debug)]
struct Violation(String);

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "guarantee violation: {}", self.0)
    }
}

impl std::error::Error for Violation {}

/// Reproducibility stamp embedded in every report.
#[derive(Serialize)]
struct Stamp<'a, C: Serialize> {
    version: &'static str,
    command: &'static str,
    seed: u64,
    config: &'a C,
}

#[derive(Serialize)]
struct Report<'a, C: Serialize, B: Serialize> {
    #[serde(flatten)]
    stamp: Stamp<'a, C>,
    #[serde(flatten)]
    body: B,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Violation>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Bounds(a) => cmd_bounds(&a),
        Command::Run(a) => cmd_run(&a),
        Command::Tight(a) => cmd_tight(&a),
        Command::SweepRho(a) => cmd_sweep(&a),
        Command::Stream(a) => cmd_stream(&a),
        Command::Simulate(a) => cmd_simulate(&a),
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(BufReader::new(file))
}

fn load_weights(path: &Path) -> Result<Vec<u64>> {
    read_weights(open(path)?).with_context(|| format!("invalid weights file {}", path.display()))
}

fn load(source: &Source, seed: u64) -> Result<Instance> {
    let mut instance = match (&source.graph, &source.gen) {
        (Some(path), _) => {
            let g = read_graph(open(path)?).with_context(|| format!("invalid graph file {}", path.display()))?;
            Instance { description: path.display().to_string(), graph: g.into(), alpha: None }
        }
        (None, Some(spec)) => spec.parse::<GenSpec>()?.build(seed)?,
        (None, None) => bail!("one of --graph or --gen is required"),
    };
    if let Some(path) = &source.weights {
        let weights = load_weights(path)?;
        instance.graph = WeightedGraph::new(instance.graph.graph().clone(), weights)?;
        instance.alpha = None;
    }
    Ok(instance)
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) if path.as_os_str() != "-" => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        _ => Box::new(BufWriter::new(io::stdout())),
    })
}

/// Writes a report as pretty JSON, or as CSV followed by a `#` stamp line.
fn emit<C: Serialize, B: Serialize>(
    output: &Output,
    default: Format,
    stamp: Stamp<'_, C>,
    body: B,
    csv: impl FnOnce(&B) -> String,
) -> Result<()> {
    let mut w = sink(&output.out)?;
    match output.format.unwrap_or(default) {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &Report { stamp, body })?;
            writeln!(w)?;
        }
        Format::Csv => {
            write!(w, "{}", csv(&body))?;
            writeln!(w, "# {}", serde_json::to_string(&stamp)?)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Guarantees {
    cw_ratio: f64,
    turan_ratio: f64,
    rho: f64,
    sparse_ratio: f64,
}

#[derive(Serialize)]
struct BoundsBody {
    instance: String,
    weighted: bool,
    alpha: Option<u64>,
    bounds: BoundReport,
    guarantees: Guarantees,
}

fn cmd_bounds(a: &BoundsArgs) -> Result<()> {
    let inst = load(&a.source, a.output.seed)?;
    let wg = &inst.graph;
    let g = wg.graph();
    let delta = g.max_degree();
    let report = BoundReport::new(wg);
    let body = BoundsBody {
        instance: inst.description.clone(),
        weighted: !wg.is_unit(),
        alpha: inst.alpha,
        // Every bound is exact on an edgeless graph.
        guarantees: if delta == 0 {
            Guarantees { cw_ratio: 1.0, turan_ratio: 1.0, rho: 1.0, sparse_ratio: 1.0 }
        } else {
            Guarantees {
                cw_ratio: bounds::cw_ratio(delta),
                turan_ratio: bounds::turan_ratio(delta),
                rho: bounds::rho(delta, 1e-12).rho,
                sparse_ratio: bounds::sparse_ratio(report.avg_degree),
            }
        },
        bounds: report,
    };
    let stamp = Stamp { version: VERSION, command: "bounds", seed: a.output.seed, config: a };
    emit(&a.output, Format::Json, stamp, body, |b| {
        let r = &b.bounds;
        format!(
            "n,m,max_degree,avg_degree,turan,turan_exact,caro_wei,caro_wei_exact,weighted_nbhd,total_weight,cw_ratio,turan_ratio,rho,sparse_ratio\n{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.m,
            r.max_degree,
            r.avg_degree,
            r.turan,
            r.turan_exact,
            r.caro_wei,
            r.caro_wei_exact,
            r.weighted_nbhd,
            r.total_weight,
            b.guarantees.cw_ratio,
            b.guarantees.turan_ratio,
            b.guarantees.rho,
            b.guarantees.sparse_ratio
        )
    })
}

fn cmd_run(a: &RunArgs) -> Result<()> {
    let alg: Algorithm = a.alg.parse()?;
    let inst = load(&a.source, a.output.seed)?;
    let report = run_experiment(&inst, alg, a.trials, a.output.seed)?;
    if let Some(notice) = &report.notice {
        eprintln!("notice: {notice}");
    }
    let violated = report.within_guarantee == Some(false);
    let message = format!(
        "achieved ratio {:?} exceeds guaranteed {:?} + {:?}",
        report.achieved_ratio, report.guaranteed_ratio, report.ratio_tolerance
    );
    let stamp = Stamp { version: VERSION, command: "run", seed: a.output.seed, config: a };
    emit(&a.output, Format::Json, stamp, report, |r: &RatioReport| {
        format!("{}\n{}\n", RatioReport::CSV_HEADER, r.csv_row())
    })?;
    if violated {
        return Err(Violation(message).into());
    }
    Ok(())
}

fn cmd_tight(a: &TightArgs) -> Result<()> {
    let family: TightFamily = a.family.parse()?;
    let mut params = TightParams::new(a.delta);
    params.side = a.side;
    params.q = a.q;
    params.beta = a.beta.as_deref().map(parse_fraction).transpose()?;
    params.trials = a.trials;
    params.seed = a.output.seed;
    let report = run_tight(family, &params)?;
    let ok = report.tight && report.within_guarantee;
    let message = format!(
        "{} family: achieved {} vs predicted {} (guaranteed {}, tolerance {})",
        family.tag(),
        report.achieved_ratio,
        report.predicted_ratio,
        report.guaranteed_ratio,
        report.tolerance
    );
    let stamp = Stamp { version: VERSION, command: "tight", seed: a.output.seed, config: a };
    emit(&a.output, Format::Json, stamp, report, |r: &TightReport| {
        format!(
            "family,instance,n,m,delta,alpha,measured,value,predicted_value,achieved_ratio,predicted_ratio,guaranteed_ratio,tolerance,tight,within_guarantee\n{},\"{}\",{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.family.tag(),
            r.instance,
            r.n,
            r.m,
            r.delta,
            r.alpha,
            r.measured,
            r.value,
            r.predicted_value,
            r.achieved_ratio,
            r.predicted_ratio,
            r.guaranteed_ratio,
            r.tolerance,
            r.tight,
            r.within_guarantee
        )
    })?;
    if !ok {
        return Err(Violation(message).into());
    }
    Ok(())
}

#[derive(Serialize)]
struct SweepRow {
    #[serde(flatten)]
    table: carowei::RatioTable,
    rho_over_delta_plus_1: f64,
}

#[derive(Serialize)]
struct SweepBody {
    asymptote: f64,
    rows: Vec<SweepRow>,
}

fn cmd_sweep(a: &SweepArgs) -> Result<()> {
    let rows = sweep_rho(a.from, a.to, a.tol)?;
    let csv = sweep_csv(&rows, a.with_asymptote);
    let body = SweepBody {
        asymptote: bounds::asymptotic_constant(),
        rows: rows.into_iter().map(|t| SweepRow { rho_over_delta_plus_1: t.rho_over_delta_plus_1(), table: t }).collect(),
    };
    let stamp = Stamp { version: VERSION, command: "sweep-rho", seed: a.output.seed, config: a };
    emit(&a.output, Format::Csv, stamp, body, |_| csv)
}

type EdgeSource = Box<dyn Iterator<Item = carowei::Result<(usize, usize)>>>;

#[derive(Serialize)]
struct StreamBody {
    n: usize,
    edges_processed: u64,
    size: usize,
    weight: u64,
    state_bytes: usize,
    solution: Vec<usize>,
}

fn cmd_stream(a: &StreamArgs) -> Result<()> {
    let seed = a.output.seed;
    let weights = a.source.weights.as_deref().map(load_weights).transpose()?;

    // Files are consumed line by line; generated graphs are streamed in
    // canonical edge order.
    let (n, edges, weights): (usize, EdgeSource, _) =
        match (&a.source.graph, &a.source.gen) {
            (Some(path), _) => {
                let reader = EdgeReader::new(open(path)?)
                    .with_context(|| format!("invalid graph file {}", path.display()))?;
                (reader.n(), Box::new(reader), weights)
            }
            (None, Some(_)) => {
                let inst = load(&a.source, seed)?;
                let wg = inst.graph;
                let n = wg.graph().n();
                let edges: Vec<_> = wg.graph().edges().collect();
                (n, Box::new(edges.into_iter().map(Ok)), Some(wg.weights().to_vec()))
            }
            (None, None) => bail!("one of --graph or --gen is required"),
        };
    if let Some(w) = &weights {
        if w.len() != n {
            bail!("weights file has {} entries for {n} vertices", w.len());
        }
    }
    let rank_mode = match a.mode {
        Mode::Unweighted => RankMode::Unweighted,
        Mode::Weighted => RankMode::Weighted,
    };
    let mut session = OnlineSession::new(n, rank_mode, weights.as_deref(), seed)?;

    let mut log = a.evictions.as_ref().map(|p| sink(&Some(p.clone()))).transpose()?;
    for edge in edges {
        let (u, v) = edge?;
        let eviction = session.add_edge(u, v)?;
        if let Some(w) = log.as_mut() {
            serde_json::to_writer(&mut *w, &eviction)?;
            writeln!(w)?;
        }
    }
    if let Some(mut w) = log {
        w.flush()?;
    }

    let set = session.current_set();
    let weight = match &weights {
        Some(w) => set.iter().map(|v| w[v]).sum(),
        None => set.len() as u64,
    };
    let state = session.state();
    let body = StreamBody {
        n,
        edges_processed: state.edges_processed(),
        size: set.len(),
        weight,
        state_bytes: state.state_bytes(),
        solution: set.iter().collect(),
    };
    let stamp = Stamp { version: VERSION, command: "stream", seed, config: a };
    emit(&a.output, Format::Json, stamp, body, |b| {
        format!(
            "n,edges_processed,size,weight,state_bytes\n{},{},{},{},{}\n",
            b.n, b.edges_processed, b.size, b.weight, b.state_bytes
        )
    })
}

#[derive(Serialize)]
struct SimulateBody {
    instance: String,
    key_bits: u32,
    messages_sent: usize,
    max_message_bits: u32,
    budget_bits: u32,
    size: usize,
    weight: u64,
    matches_library: bool,
    solution: Vec<usize>,
}

fn cmd_simulate(a: &SimulateArgs) -> Result<()> {
    let seed = a.output.seed;
    let stamp = Stamp { version: VERSION, command: "simulate", seed, config: a };
    if let Some(delta) = a.demo {
        let report = indistinguishability_demo(delta, a.trials, seed)?;
        return emit(&a.output, Format::Json, stamp, report, |r| {
            let mut s = String::from("instance,n,alpha,min_view_degree,max_view_degree,join_rate,mean,stderr,ratio\n");
            for v in [&r.clique, &r.bipartite] {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    v.name, v.n, v.alpha, v.view_degree.0, v.view_degree.1, v.join_rate, v.solution.mean, v.solution.stderr, v.ratio
                ));
            }
            s
        });
    }

    if a.source.graph.is_none() && a.source.gen.is_none() {
        bail!("one of --graph, --gen or --demo is required");
    }
    let inst = load(&a.source, seed)?;
    let wg = &inst.graph;
    let g = wg.graph();
    let weighted = !wg.is_unit();
    let weights = weighted.then(|| wg.weights());
    let encoding = if a.strict_keys { KeyEncoding::strict(g.n()) } else { KeyEncoding::Full };
    let config = RoundConfig { encoding, budget_bits: a.budget };
    let (set, trace) = simulate_one_round(g, weights, seed, config)?;

    let library = if weighted { Algorithm::Max } else { Algorithm::Boppana };
    let matches_library = library.run(wg, seed).solution == set;
    let body = SimulateBody {
        instance: inst.description.clone(),
        key_bits: encoding.bits(),
        messages_sent: trace.messages_sent,
        max_message_bits: trace.max_message_bits,
        budget_bits: trace.budget_bits,
        size: set.len(),
        weight: wg.set_weight(&set),
        matches_library,
        solution: set.iter().collect(),
    };
    // Quantized keys may tie where full draws do not; only full keys must match.
    let mismatch = encoding == KeyEncoding::Full && !matches_library;
    let independent = g.is_independent(&set);
    emit(&a.output, Format::Json, stamp, body, |b| {
        format!(
            "n,key_bits,messages_sent,max_message_bits,budget_bits,size,weight,matches_library\n{},{},{},{},{},{},{},{}\n",
            g.n(), b.key_bits, b.messages_sent, b.max_message_bits, b.budget_bits, b.size, b.weight, b.matches_library
        )
    })?;
    if mismatch || !independent {
        return Err(Violation(format!(
            "simulated round disagrees with `{library}` (independent: {independent})"
        ))
        .into());
    }
    Ok(())
}
