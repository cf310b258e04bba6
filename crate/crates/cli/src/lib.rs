//! Command implementations behind the `streamcut` binary.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use streamcut_core::{
    build_stream, generate, predict_random, predict_random_degree, replication_factor,
    run_on_graph, Algorithm, Graph, MetricsReport, OrderKind, RunSpec, StreamOrder, SyntheticSpec,
};

pub const DEFAULT_PARTITIONS: u32 = 48;

#[derive(Debug, Parser)]
#[command(
    name = "streamcut",
    version,
    about = "Streaming vertex-cut graph partitioning"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic power-law graph as an edge list
    Generate(GenerateArgs),
    /// Partition a graph with one heuristic and report its quality
    Partition(PartitionArgs),
    /// Sweep algorithms, orders, partition counts and seeds into a CSV table
    Bench(BenchArgs),
    /// Predict the replication factor of hash-based placement
    Predict(PredictArgs),
}

/// `n,alpha,beta[,max_degree]`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticArg {
    pub vertices: u32,
    pub alpha: f64,
    pub beta: f64,
    pub max_degree: Option<u32>,
}

impl FromStr for SyntheticArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(format!("expected n,alpha,beta[,maxdeg], got {s:?}"));
        }
        let num = |i: usize, what: &str| -> Result<f64, String> {
            parts[i]
                .parse::<f64>()
                .map_err(|_| format!("invalid {what} {:?}", parts[i]))
        };
        let int = |i: usize, what: &str| -> Result<u32, String> {
            parts[i]
                .parse::<u32>()
                .map_err(|_| format!("invalid {what} {:?}", parts[i]))
        };
        Ok(Self {
            vertices: int(0, "vertex count")?,
            alpha: num(1, "alpha")?,
            beta: num(2, "beta")?,
            max_degree: if parts.len() == 4 {
                Some(int(3, "max degree")?)
            } else {
                None
            },
        })
    }
}

impl SyntheticArg {
    pub fn to_spec(self, seed: u64) -> SyntheticSpec {
        let spec = SyntheticSpec::new(self.vertices, self.alpha, self.beta, seed);
        match self.max_degree {
            Some(m) => spec.with_max_degree(m),
            None => spec,
        }
    }
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// Edge-list file ("source target" per line, '#' comments)
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Synthetic graph: n,alpha,beta[,maxdeg]
    #[arg(long)]
    pub synthetic: Option<SyntheticArg>,
}

#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    #[command(flatten)]
    pub source: GraphSource,
    /// Seed for the synthetic generator
    #[arg(long, default_value_t = 1)]
    pub graph_seed: u64,
}

impl GraphArgs {
    pub fn load(&self) -> anyhow::Result<Graph> {
        if let Some(path) = &self.source.input {
            let file =
                File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
            return Graph::read_edge_list(BufReader::new(file))
                .with_context(|| format!("cannot read {}", path.display()));
        }
        let synthetic = self.source.synthetic.context("no graph source given")?;
        Ok(generate(&synthetic.to_spec(self.graph_seed))?)
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// n,alpha,beta[,maxdeg]
    #[arg(long)]
    pub synthetic: SyntheticArg,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output edge-list path
    #[arg(long, short)]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value = "degree-io")]
    pub algorithm: Algorithm,
    #[arg(long, default_value = "rnd")]
    pub order: OrderKind,
    #[arg(long, default_value_t = DEFAULT_PARTITIONS)]
    pub partitions: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write "source target partition" lines here
    #[arg(long)]
    pub emit_assignments: Option<PathBuf>,
    /// Report path (stdout when absent)
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
    /// Record wall-clock runtime in the report (makes reports non-reproducible)
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(
        long = "algorithm",
        value_delimiter = ',',
        default_value = "balance,degree,degree-io"
    )]
    pub algorithms: Vec<Algorithm>,
    #[arg(long = "order", value_delimiter = ',', default_value = "rnd,bfs,dfs")]
    pub orders: Vec<OrderKind>,
    #[arg(long = "partitions", value_delimiter = ',', default_value = "48")]
    pub partitions: Vec<u32>,
    #[arg(long = "seed", value_delimiter = ',', default_value = "0")]
    pub seeds: Vec<u64>,
    /// CSV output path (stdout when absent)
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value_t = DEFAULT_PARTITIONS)]
    pub partitions: u32,
}

pub fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Generate(args) => cmd_generate(&args),
        Command::Partition(args) => cmd_partition(&args),
        Command::Bench(args) => cmd_bench(&args),
        Command::Predict(args) => cmd_predict(&args),
    }
}

pub fn cmd_generate(args: &GenerateArgs) -> anyhow::Result<()> {
    let graph = generate(&args.synthetic.to_spec(args.seed))?;
    let file = File::create(&args.output)
        .with_context(|| format!("cannot create {}", args.output.display()))?;
    graph.write_edge_list(BufWriter::new(file))?;
    println!("vertices {}", graph.vertex_count());
    println!("edges {}", graph.edge_count());
    Ok(())
}

/// One (algorithm, order, p, seed) cell, with Balance on the same stream and
/// seed as the improvement baseline.
pub struct Cell {
    pub report: MetricsReport,
    pub log: streamcut_core::AssignmentLog,
}

pub fn run_cell(
    graph: &Graph,
    algorithm: Algorithm,
    order: OrderKind,
    partitions: u32,
    seed: u64,
    timing: bool,
) -> anyhow::Result<Cell> {
    let stream = build_stream(graph, StreamOrder::new(order, seed));
    let started = Instant::now();
    let (log, state) = run_on_graph(graph, &stream, RunSpec::new(algorithm, partitions, seed))?;
    let elapsed = started.elapsed();
    let baseline = if algorithm == Algorithm::Balance {
        replication_factor(&state)?
    } else {
        let spec = RunSpec::new(Algorithm::Balance, partitions, seed);
        replication_factor(&run_on_graph(graph, &stream, spec)?.1)?
    };
    let mut report = MetricsReport::from_state(&state, algorithm, order, seed, baseline)?;
    if timing {
        report.runtime_ms = Some(elapsed.as_millis() as u64);
    }
    Ok(Cell { report, log })
}

pub fn cmd_partition(args: &PartitionArgs) -> anyhow::Result<()> {
    if args.partitions == 0 {
        bail!("--partitions must be at least 1");
    }
    let graph = args.graph.load()?;
    let cell = run_cell(
        &graph,
        args.algorithm,
        args.order,
        args.partitions,
        args.seed,
        args.timing,
    )?;
    if let Some(path) = &args.emit_assignments {
        let file =
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        cell.log.write_text(&graph, BufWriter::new(file))?;
    }
    let sink = open_sink(args.report.as_deref())?;
    match args.format {
        ReportFormat::Csv => write_csv(sink, std::slice::from_ref(&cell.report))?,
        ReportFormat::Json => write_json(sink, &cell.report)?,
    }
    Ok(())
}

pub fn cmd_bench(args: &BenchArgs) -> anyhow::Result<()> {
    for (name, empty) in [
        ("--algorithm", args.algorithms.is_empty()),
        ("--order", args.orders.is_empty()),
        ("--partitions", args.partitions.is_empty()),
        ("--seed", args.seeds.is_empty()),
    ] {
        if empty {
            bail!("{name} needs at least one value");
        }
    }
    if args.partitions.contains(&0) {
        bail!("--partitions values must be at least 1");
    }
    let graph = args.graph.load()?;
    let mut rows = Vec::new();
    for &order in &args.orders {
        for &p in &args.partitions {
            for &seed in &args.seeds {
                for &algorithm in &args.algorithms {
                    let cell = run_cell(&graph, algorithm, order, p, seed, args.timing)
                        .with_context(|| {
                            format!(
                                "cell algorithm={algorithm} order={order} p={p} seed={seed} failed"
                            )
                        })?;
                    rows.push(cell.report);
                }
            }
        }
    }
    write_csv(open_sink(args.report.as_deref())?, &rows)?;

    let summary = improvement_summary(&rows);
    if args.report.is_some() {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    Ok(())
}

/// Mean improvement over Balance of Degree and DegreeIO per (order, p).
pub fn improvement_summary(rows: &[MetricsReport]) -> String {
    let mut out = String::from("improvement over balance (mean over seeds)\n");
    let mut keys: Vec<(OrderKind, u32)> = Vec::new();
    for r in rows {
        if !keys.contains(&(r.order, r.p)) {
            keys.push((r.order, r.p));
        }
    }
    for (order, p) in keys {
        let mut line = format!("  order={order} p={p}");
        for algorithm in [Algorithm::Degree, Algorithm::DegreeIo] {
            let vals: Vec<f64> = rows
                .iter()
                .filter(|r| r.order == order && r.p == p && r.algorithm == algorithm)
                .map(|r| r.improvement_pct)
                .collect();
            if !vals.is_empty() {
                let mean = vals.iter().sum::<f64>() / vals.len() as f64;
                line.push_str(&format!(" {algorithm}={mean:+.2}%"));
            }
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn cmd_predict(args: &PredictArgs) -> anyhow::Result<()> {
    if args.partitions == 0 {
        bail!("--partitions must be at least 1");
    }
    let graph = args.graph.load()?;
    println!("predict_random {}", predict_random(&graph, args.partitions));
    println!(
        "predict_random_degree {}",
        predict_random_degree(&graph, args.partitions)
    );
    Ok(())
}

fn open_sink(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn write_csv<W: Write>(sink: W, rows: &[MetricsReport]) -> anyhow::Result<()> {
    let mut writer = csv::Writer::from_writer(sink);
    if rows.is_empty() {
        writer.write_record(MetricsReport::CSV_HEADER.split(','))?;
    }
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_csv<R: io::Read>(source: R) -> anyhow::Result<Vec<MetricsReport>> {
    let mut reader = csv::Reader::from_reader(source);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
    if header.join(",") != MetricsReport::CSV_HEADER {
        bail!("unexpected CSV header {:?}", header.join(","));
    }
    Ok(reader.deserialize().collect::<Result<_, _>>()?)
}

pub fn write_json<W: Write>(mut sink: W, report: &MetricsReport) -> anyhow::Result<()> {
    serde_json::to_writer_pretty(&mut sink, report)?;
    writeln!(sink)?;
    sink.flush()?;
    Ok(())
}
