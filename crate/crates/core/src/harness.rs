//! Benchmark orchestration and result persistence.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clb::{compute_clb_with, ClbSearch};
use crate::error::{Error, Result};
use crate::graph::{parse_edge_list, Graph, IntersectionTable, DEFAULT_TABLE_NODE_LIMIT};
use crate::greedy::{run_a_star_with, run_a_with, DesignChoices, JoinGuard};
use crate::synth::{planted_partition_graph, SynthSpec, RNG_NAME};

/// First line of every results CSV.
pub const CSV_SCHEMA_LINE: &str = "# schema: mmcc-bench/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub instance: String,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub delta: Option<usize>,
    pub clb: Option<usize>,
    pub phi_a: Option<usize>,
    pub phi_a_star: Option<usize>,
    pub choices_a: Option<String>,
    pub best_choices: Option<String>,
    /// Join guard used by both greedy runs.
    pub guard: Option<JoinGuard>,
    pub t_clb_ms: Option<f64>,
    pub t_a_ms: Option<f64>,
    pub t_a_star_ms: Option<f64>,
    pub flips: Option<usize>,
    pub seed: Option<u64>,
    pub rng: Option<String>,
    /// Unix time in milliseconds when the record was produced.
    pub timestamp: u64,
    pub error: Option<String>,
}

impl BenchRecord {
    fn new(instance: String) -> Self {
        Self {
            instance,
            n: None,
            m: None,
            delta: None,
            clb: None,
            phi_a: None,
            phi_a_star: None,
            choices_a: None,
            best_choices: None,
            guard: None,
            t_clb_ms: None,
            t_a_ms: None,
            t_a_star_ms: None,
            flips: None,
            seed: None,
            rng: None,
            timestamp: 0,
            error: None,
        }
    }

    /// `clb ≤ φ(A*) ≤ φ(A)` over whichever of the three are present.
    pub fn is_consistent(&self) -> bool {
        let le = |a: Option<usize>, b: Option<usize>| match (a, b) {
            (Some(a), Some(b)) => a <= b,
            _ => true,
        };
        le(self.clb, self.phi_a_star) && le(self.phi_a_star, self.phi_a) && le(self.clb, self.phi_a)
    }

    /// `φ(A) / max(clb, 1)`, when both are known.
    pub fn gap_ratio(&self) -> Option<f64> {
        Some(self.phi_a? as f64 / self.clb?.max(1) as f64)
    }
}

#[derive(Debug, Clone)]
pub enum Instance {
    File(PathBuf),
    Synthetic(SynthSpec),
}

impl Instance {
    pub fn name(&self) -> String {
        match self {
            Instance::File(path) => path.file_stem().map_or_else(
                || path.display().to_string(),
                |s| s.to_string_lossy().into_owned(),
            ),
            Instance::Synthetic(s) => format!(
                "synth-k{}-s{}-f{}-seed{}",
                s.cliques, s.clique_size, s.flips, s.seed
            ),
        }
    }

    fn load(&self) -> Result<Graph> {
        match self {
            Instance::File(path) => read_graph_file(path),
            Instance::Synthetic(spec) => planted_partition_graph(spec),
        }
    }
}

pub fn read_graph_file(path: &Path) -> Result<Graph> {
    let file = File::open(path)?;
    Ok(parse_edge_list(BufReader::new(file))?.graph)
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub skip_clb: bool,
    pub all_variants: bool,
    pub table_node_limit: usize,
    pub clb_search: ClbSearch,
    pub guard: JoinGuard,
    /// Run instances on the rayon pool. Timings get noisier.
    pub parallel: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            skip_clb: false,
            all_variants: true,
            table_node_limit: DEFAULT_TABLE_NODE_LIMIT,
            clb_search: ClbSearch::Bisection,
            guard: JoinGuard::Neighbor,
            parallel: false,
        }
    }
}

fn now_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_millis() as u64)
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Benchmarks one graph. Timings cover only the algorithm calls.
pub fn bench_graph(name: &str, graph: &Graph, config: &BenchConfig) -> BenchRecord {
    let mut rec = BenchRecord::new(name.to_string());
    rec.n = Some(graph.node_count());
    rec.m = Some(graph.edge_count());
    rec.delta = Some(graph.max_degree());

    if !config.skip_clb {
        let start = Instant::now();
        let bound = IntersectionTable::build_with_limit(graph, config.table_node_limit)
            .and_then(|table| compute_clb_with(graph, &table, config.clb_search));
        match bound {
            Ok(r) => {
                rec.t_clb_ms = Some(elapsed_ms(start));
                rec.clb = Some(r.bound);
            }
            Err(e) => rec.error = Some(format!("clb: {e}")),
        }
    }

    let start = Instant::now();
    let a = run_a_with(graph, config.guard);
    rec.t_a_ms = Some(elapsed_ms(start));
    rec.phi_a = Some(a.phi);
    rec.choices_a = Some(DesignChoices::A.to_string());
    rec.guard = Some(config.guard);

    if config.all_variants {
        let start = Instant::now();
        let (best, choices) = run_a_star_with(graph, config.guard);
        rec.t_a_star_ms = Some(elapsed_ms(start));
        rec.phi_a_star = Some(best.phi);
        rec.best_choices = Some(choices.to_string());
    }
    rec.timestamp = now_ms();
    rec
}

fn bench_instance(instance: &Instance, config: &BenchConfig) -> BenchRecord {
    let name = instance.name();
    let mut rec = match instance.load() {
        Ok(graph) => bench_graph(&name, &graph, config),
        Err(e) => {
            let mut rec = BenchRecord::new(name);
            rec.error = Some(e.to_string());
            rec.timestamp = now_ms();
            rec
        }
    };
    if let Instance::Synthetic(spec) = instance {
        rec.flips = Some(spec.flips);
        rec.seed = Some(spec.seed);
        rec.rng = Some(RNG_NAME.to_string());
    }
    rec
}

/// Benchmarks every instance. Failures end up in the record's `error` field.
pub fn run_bench(instances: &[Instance], config: &BenchConfig) -> Vec<BenchRecord> {
    if config.parallel {
        instances
            .par_iter()
            .map(|i| bench_instance(i, config))
            .collect()
    } else {
        instances
            .iter()
            .map(|i| bench_instance(i, config))
            .collect()
    }
}

/// The sweep grid: for each flip count, `repeats` instances of ten 10-cliques.
/// Row `r` of flip index `i` uses seed `base_seed + i·repeats + r`.
pub fn sweep_instances(f_values: &[usize], repeats: usize, base_seed: u64) -> Vec<Instance> {
    let mut out = Vec::with_capacity(f_values.len() * repeats);
    for (i, &flips) in f_values.iter().enumerate() {
        for r in 0..repeats {
            out.push(Instance::Synthetic(SynthSpec {
                cliques: 10,
                clique_size: 10,
                flips,
                seed: base_seed.wrapping_add((i * repeats + r) as u64),
            }));
        }
    }
    out
}

pub fn sweep_synthetic(
    f_values: &[usize],
    repeats: usize,
    base_seed: u64,
    config: &BenchConfig,
) -> Vec<BenchRecord> {
    run_bench(&sweep_instances(f_values, repeats, base_seed), config)
}

/// `0, 50, …, 1000`.
pub fn default_flip_grid() -> Vec<usize> {
    (0..=1000).step_by(50).collect()
}

pub fn write_csv<W: Write>(records: &[BenchRecord], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_SCHEMA_LINE}")?;
    let mut writer = csv::Writer::from_writer(out);
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<BenchRecord>> {
    let mut reader = BufReader::new(input);
    let mut first = String::new();
    reader.read_line(&mut first)?;
    if first.trim_end() != CSV_SCHEMA_LINE {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected {CSV_SCHEMA_LINE:?}, found {:?}", first.trim_end()),
        });
    }
    let mut csv_reader = csv::Reader::from_reader(reader);
    csv_reader
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}

/// One JSON object per line.
pub fn write_json_lines<W: Write>(records: &[BenchRecord], mut out: W) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        writeln!(out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sizes() {
        assert_eq!(default_flip_grid().len(), 21);
        assert_eq!(sweep_instances(&default_flip_grid(), 10, 0).len(), 210);
    }

    #[test]
    fn zero_flip_batch() {
        let records = sweep_synthetic(&[0], 10, 1, &BenchConfig::default());
        assert_eq!(records.len(), 10);
        for r in &records {
            assert_eq!(r.clb, Some(0));
            assert_eq!(r.phi_a, Some(0));
            assert_eq!(r.phi_a_star, Some(0));
            assert!(r.error.is_none());
        }
    }

    #[test]
    fn missing_file_is_recorded() {
        let recs = run_bench(
            &[Instance::File(PathBuf::from("/nonexistent/x.edges"))],
            &BenchConfig::default(),
        );
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].instance, "x");
        assert!(recs[0].error.is_some());
        assert!(recs[0].phi_a.is_none());
    }

    #[test]
    fn table_limit_skips_clb_only() {
        let config = BenchConfig {
            table_node_limit: 10,
            ..BenchConfig::default()
        };
        let recs = sweep_synthetic(&[0], 1, 1, &config);
        assert!(recs[0].clb.is_none());
        assert_eq!(recs[0].phi_a, Some(0));
        assert!(recs[0].error.as_deref().unwrap().starts_with("clb:"));
    }

    #[test]
    fn csv_rejects_missing_schema() {
        assert!(read_csv("instance,n\n".as_bytes()).is_err());
    }

    #[test]
    fn consistency_check() {
        let mut r = BenchRecord::new("x".into());
        r.clb = Some(3);
        r.phi_a = Some(5);
        r.phi_a_star = Some(4);
        assert!(r.is_consistent());
        r.phi_a_star = Some(6);
        assert!(!r.is_consistent());
        assert_eq!(r.gap_ratio(), Some(5.0 / 3.0));
    }
}
