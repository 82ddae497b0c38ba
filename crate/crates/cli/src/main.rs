use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use mmcc::exact::bell;
use mmcc::greedy::{DiscardRule, NeighborTie, SortKey, WorstNodeTie};
use mmcc::harness::{self, default_flip_grid, sweep_instances};
use mmcc::{
    approx_4, approx_4_sparse, brute_force_opt_with, check_feasibility, compute_clb_with,
    greedy_join_guarded, max_disagreement, parse_edge_list, planted_partition_graph,
    run_a_star_with, run_bench, write_edge_list, BenchConfig, ClbSearch, DesignChoices,
    ExactOptions, Instance, IntersectionTable, JoinGuard, ParsedGraph, Partition, SynthSpec,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "mmcc",
    version,
    about = "Min max correlation clustering toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an edge list and print its statistics
    Parse {
        graph: PathBuf,
        /// Write the normalized edge list here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the combinatorial lower bound
    Clb {
        graph: PathBuf,
        /// Write the component partition at the bound here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Search::Bisection)]
        search: Search,
    },
    /// Run the 4-approximation
    Approx4 {
        graph: PathBuf,
        /// Write the partition here
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip the dense intersection table
        #[arg(long)]
        sparse: bool,
    },
    /// Run greedy joining from the 4-approximation
    Greedy(GreedyArgs),
    /// Solve exactly by enumerating all partitions
    Exact {
        graph: PathBuf,
        /// Write the optimal partition here
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest node count to attempt
        #[arg(long, default_value_t = mmcc::exact::DEFAULT_NODE_LIMIT)]
        limit: usize,
        /// Prune with the incumbent instead of enumerating everything
        #[arg(long)]
        pruned: bool,
    },
    /// Generate a planted-partition instance
    Synth {
        #[arg(long, default_value_t = 10)]
        cliques: usize,
        #[arg(long, default_value_t = 10)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        flips: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Defaults to stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Benchmark edge-list files
    Bench {
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
        #[command(flatten)]
        common: BenchArgs,
    },
    /// Benchmark the planted-partition flip sweep
    Sweep {
        /// Flip counts, comma separated. Defaults to 0,50,...,1000
        #[arg(long, value_delimiter = ',')]
        flips: Option<Vec<usize>>,
        #[arg(long, default_value_t = 10)]
        repeats: usize,
        /// Base seed; instance r of flip index i uses seed + i*repeats + r
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: BenchArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Search {
    Bisection,
    Linear,
    CrossChecked,
}

impl From<Search> for ClbSearch {
    fn from(s: Search) -> Self {
        match s {
            Search::Bisection => ClbSearch::Bisection,
            Search::Linear => ClbSearch::Linear,
            Search::CrossChecked => ClbSearch::CrossChecked,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Guard {
    Neighbor,
    Worst,
}

impl From<Guard> for JoinGuard {
    fn from(g: Guard) -> Self {
        match g {
            Guard::Neighbor => JoinGuard::Neighbor,
            Guard::Worst => JoinGuard::Worst,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Named {
    A,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dc1 {
    LargestDegree,
    SmallestDegree,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dc2 {
    IncreasingDegree,
    DecreasingDegree,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dc3 {
    Combined,
    IntersectionOnly,
    NegSymdiffOnly,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dc4 {
    Base,
    Strict,
}

#[derive(Args)]
struct GreedyArgs {
    graph: PathBuf,
    /// Write the partition here
    #[arg(long)]
    out: Option<PathBuf>,
    /// Try all 24 design choices and keep the best
    #[arg(long, conflicts_with_all = ["named", "dc1", "dc2", "dc3", "dc4"])]
    all: bool,
    /// Use a named configuration
    #[arg(long, value_enum, conflicts_with_all = ["dc1", "dc2", "dc3", "dc4"])]
    named: Option<Named>,
    /// Tie-break among worst nodes (defaults follow A)
    #[arg(long, value_enum)]
    dc1: Option<Dc1>,
    /// Tie-break among equally keyed neighbors
    #[arg(long, value_enum)]
    dc2: Option<Dc2>,
    /// Neighbor sort key
    #[arg(long, value_enum)]
    dc3: Option<Dc3>,
    /// Join discard rule
    #[arg(long, value_enum)]
    dc4: Option<Dc4>,
    #[arg(long, value_enum, default_value_t = Guard::Neighbor)]
    guard: Guard,
}

impl GreedyArgs {
    fn choices(&self) -> DesignChoices {
        let mut c = DesignChoices::A;
        if let Some(x) = self.dc1 {
            c.worst_node_tie = match x {
                Dc1::LargestDegree => WorstNodeTie::LargestDegree,
                Dc1::SmallestDegree => WorstNodeTie::SmallestDegree,
            };
        }
        if let Some(x) = self.dc2 {
            c.neighbor_tie = match x {
                Dc2::IncreasingDegree => NeighborTie::IncreasingDegree,
                Dc2::DecreasingDegree => NeighborTie::DecreasingDegree,
            };
        }
        if let Some(x) = self.dc3 {
            c.sort_key = match x {
                Dc3::Combined => SortKey::Combined,
                Dc3::IntersectionOnly => SortKey::IntersectionOnly,
                Dc3::NegSymdiffOnly => SortKey::NegSymdiffOnly,
            };
        }
        if let Some(x) = self.dc4 {
            c.discard = match x {
                Dc4::Base => DiscardRule::Base,
                Dc4::Strict => DiscardRule::Strict,
            };
        }
        c
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct BenchArgs {
    /// Defaults to stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Do not compute the lower bound
    #[arg(long)]
    skip_clb: bool,
    /// Also run all 24 greedy variants
    #[arg(long)]
    all_variants: bool,
    /// Refuse the lower bound above this many nodes
    #[arg(long, default_value_t = mmcc::graph::DEFAULT_TABLE_NODE_LIMIT)]
    limit: usize,
    #[arg(long, value_enum, default_value_t = Guard::Neighbor)]
    guard: Guard,
    /// Run instances concurrently
    #[arg(long)]
    parallel: bool,
}

impl BenchArgs {
    fn config(&self) -> BenchConfig {
        BenchConfig {
            skip_clb: self.skip_clb,
            all_variants: self.all_variants,
            table_node_limit: self.limit,
            guard: self.guard.into(),
            parallel: self.parallel,
            ..BenchConfig::default()
        }
    }
}

fn load(path: &Path) -> Result<ParsedGraph> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let parsed = parse_edge_list(BufReader::new(file))
        .with_context(|| format!("parsing {}", path.display()))?;
    info!(
        "{}: {} nodes, {} edges",
        path.display(),
        parsed.graph.node_count(),
        parsed.graph.edge_count()
    );
    Ok(parsed)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(create(p)?),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn save_partition(path: Option<&Path>, partition: &Partition, parsed: &ParsedGraph) -> Result<()> {
    if let Some(path) = path {
        let mut out = create(path)?;
        partition.write_tsv(Some(&parsed.labels), &mut out)?;
        out.flush()?;
    }
    Ok(())
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn cmd_parse(graph: &Path, out: Option<&Path>) -> Result<()> {
    let parsed = load(graph)?;
    let g = &parsed.graph;
    if let Some(path) = out {
        let mut w = create(path)?;
        write_edge_list(g, Some(&parsed.labels), &mut w)?;
        w.flush()?;
    }
    print_json(&json!({
        "n": g.node_count(),
        "m": g.edge_count(),
        "delta": g.max_degree(),
        "self_loops_dropped": parsed.self_loops_dropped,
        "duplicate_edges": parsed.duplicate_edges,
    }))
}

fn cmd_clb(graph: &Path, out: Option<&Path>, search: Search) -> Result<()> {
    let parsed = load(graph)?;
    let g = &parsed.graph;
    let start = Instant::now();
    let table = IntersectionTable::build(g)?;
    let result = compute_clb_with(g, &table, search.into())?;
    let wall = elapsed_ms(start);
    let cert = &result.certificate;

    // the node that rules out one less than the bound
    let below = (result.bound > 0).then(|| check_feasibility(g, &table, result.bound - 1));
    let witness = below.as_ref().map(|c| {
        let v = c.witness.unwrap_or(0);
        json!({
            "d": c.d,
            "node": parsed.labels[v],
            "bound": c.per_node_bound[v],
            "pi_d_clusters": c.cluster_count(),
            "self_compatible": c.all_self_compatible(),
        })
    });
    save_partition(out, &cert.pi_d, &parsed)?;
    print_json(&json!({
        "d": result.bound,
        "pi_d_clusters": cert.cluster_count(),
        "max_node_bound": cert.max_bound(),
        "infeasible_below": witness,
        "checks": result.checks,
        "wall_time_ms": wall,
    }))
}

fn cmd_approx4(graph: &Path, out: Option<&Path>, sparse: bool) -> Result<()> {
    let parsed = load(graph)?;
    let g = &parsed.graph;
    let start = Instant::now();
    let (partition, stats) = if sparse {
        approx_4_sparse(g)
    } else {
        approx_4(g, &IntersectionTable::build(g)?)
    };
    let wall = elapsed_ms(start);
    save_partition(out, &partition, &parsed)?;
    print_json(&json!({
        "phi": max_disagreement(g, &partition),
        "iterations": stats.iterations,
        "terminated_early": stats.terminated_early,
        "clusters": partition.cluster_count(),
        "wall_time_ms": wall,
    }))
}

fn cmd_greedy(args: &GreedyArgs) -> Result<()> {
    let parsed = load(&args.graph)?;
    let g = &parsed.graph;
    let guard: JoinGuard = args.guard.into();
    let start = Instant::now();
    let (outcome, choices) = if args.all {
        run_a_star_with(g, guard)
    } else {
        let choices = match args.named {
            Some(Named::A) => DesignChoices::A,
            None => args.choices(),
        };
        let (init, _) = approx_4_sparse(g);
        (greedy_join_guarded(g, init, choices, guard), choices)
    };
    let wall = elapsed_ms(start);
    save_partition(args.out.as_deref(), &outcome.partition, &parsed)?;
    print_json(&json!({
        "phi": outcome.phi,
        "joins_performed": outcome.joins,
        "choices": choices.to_string(),
        "guard": guard,
        "wall_time_ms": wall,
    }))
}

fn cmd_exact(graph: &Path, out: Option<&Path>, limit: usize, pruned: bool) -> Result<()> {
    let parsed = load(graph)?;
    let g = &parsed.graph;
    let start = Instant::now();
    let result = brute_force_opt_with(g, ExactOptions { limit, pruned })?;
    let wall = elapsed_ms(start);
    save_partition(out, &result.argmin, &parsed)?;
    print_json(&json!({
        "opt": result.opt,
        "witness_file": out.map(|p| p.display().to_string()),
        "bell_n": bell(g.node_count()).map(|b| b.to_string()),
        "partitions_examined": result.partitions_examined.to_string(),
        "wall_time_ms": wall,
    }))
}

fn cmd_synth(spec: SynthSpec, out: Option<&Path>) -> Result<()> {
    let g = planted_partition_graph(&spec)?;
    let mut w = output(out)?;
    writeln!(
        w,
        "# planted partition: cliques={} size={} flips={} seed={} rng={}",
        spec.cliques,
        spec.clique_size,
        spec.flips,
        spec.seed,
        mmcc::synth::RNG_NAME
    )?;
    write_edge_list(&g, None, &mut w)?;
    w.flush()?;
    Ok(())
}

fn write_records(records: &[mmcc::BenchRecord], args: &BenchArgs) -> Result<()> {
    let mut out = output(args.out.as_deref())?;
    match args.format {
        Format::Csv => harness::write_csv(records, &mut out)?,
        Format::Json => harness::write_json_lines(records, &mut out)?,
    }
    out.flush()?;
    let failed = records.iter().filter(|r| r.error.is_some()).count();
    if failed > 0 {
        log::warn!("{failed} of {} instances reported an error", records.len());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Parse { graph, out } => cmd_parse(&graph, out.as_deref()),
        Command::Clb { graph, out, search } => cmd_clb(&graph, out.as_deref(), search),
        Command::Approx4 { graph, out, sparse } => cmd_approx4(&graph, out.as_deref(), sparse),
        Command::Greedy(args) => cmd_greedy(&args),
        Command::Exact {
            graph,
            out,
            limit,
            pruned,
        } => cmd_exact(&graph, out.as_deref(), limit, pruned),
        Command::Synth {
            cliques,
            size,
            flips,
            seed,
            out,
        } => cmd_synth(
            SynthSpec {
                cliques,
                clique_size: size,
                flips,
                seed,
            },
            out.as_deref(),
        ),
        Command::Bench { graphs, common } => {
            let instances: Vec<Instance> = graphs.into_iter().map(Instance::File).collect();
            write_records(&run_bench(&instances, &common.config()), &common)
        }
        Command::Sweep {
            flips,
            repeats,
            seed,
            common,
        } => {
            let grid = flips.unwrap_or_else(default_flip_grid);
            if repeats == 0 {
                bail!("--repeats must be positive");
            }
            let instances = sweep_instances(&grid, repeats, seed);
            info!("sweep over {} instances", instances.len());
            write_records(&run_bench(&instances, &common.config()), &common)
        }
    }
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
