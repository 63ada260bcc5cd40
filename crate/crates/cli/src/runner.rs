//! The measurement harness: timed query loops over pre-generated workloads.
//!
//! For each structure and query kind, the run is: build the index (timed
//! separately), then for each repetition run the warmup queries untimed and
//! the timed queries under one monotonic clock, dividing by the query count
//! for a per-query mean. Warmup and timed phases use independently seeded
//! workloads. Every repetition replays the same timed workload and folds the
//! answers into a checksum, so a deterministic structure produces identical
//! checksums across repetitions and the compiler cannot discard the loop.

use crate::workload::{self, QueryKind, Workload};
use anyhow::{bail, Result};
use spider_core::{AnyIndex, BitVector, SpaceReport, StructureKind};
use std::hint::black_box;
use std::time::Instant;

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub structures: Vec<StructureKind>,
    /// Label for the dataset (file path or generator description).
    pub dataset: String,
    pub warmup: u64,
    pub queries: u64,
    pub reps: u32,
    pub kinds: Vec<QueryKind>,
    pub seed: u64,
}

/// Aggregated timings for one (structure, kind) pair.
#[derive(Clone, Debug)]
pub struct KindResult {
    pub kind: QueryKind,
    /// Mean nanoseconds per query, one entry per repetition.
    pub rep_ns: Vec<f64>,
    /// Answer checksum per repetition; identical for a fixed workload.
    pub checksums: Vec<u64>,
    /// Mean blocks visited beyond the final one per select query.
    pub mean_wrong_blocks: Option<f64>,
}

impl KindResult {
    pub fn mean_ns(&self) -> f64 {
        self.rep_ns.iter().sum::<f64>() / self.rep_ns.len() as f64
    }
}

/// Everything measured for one structure over one dataset.
#[derive(Clone, Debug)]
pub struct BenchReport {
    pub structure: StructureKind,
    pub dataset: String,
    pub n: u64,
    pub density: f64,
    pub build_ms: f64,
    /// Per-component sizes; `space_pct` is its total relative to the data.
    pub space: SpaceReport,
    pub space_pct: f64,
    pub reps: u32,
    pub seed: u64,
    pub results: Vec<KindResult>,
}

/// The warmup phase draws from its own stream so it never replays the timed
/// queries.
pub fn warmup_seed(seed: u64) -> u64 {
    seed ^ 0x9E37_79B9_7F4A_7C15
}

/// Sums query answers so the loop has an observable result.
pub fn run_queries(idx: &AnyIndex, workload: &Workload) -> u64 {
    let mut sum = 0u64;
    match workload.kind {
        QueryKind::Rank => {
            for &q in &workload.queries {
                sum = sum.wrapping_add(idx.rank(q));
            }
        }
        QueryKind::Select => {
            for &q in &workload.queries {
                sum = sum.wrapping_add(idx.select(q).expect("workload rank out of range"));
            }
        }
    }
    sum
}

/// Mean prediction error (blocks visited beyond the final one) over a select
/// workload; runs outside the timed loops.
pub fn mean_wrong_blocks(idx: &AnyIndex, queries: &[u64]) -> f64 {
    let total: u64 = queries
        .iter()
        .map(|&j| {
            idx.select_instrumented(j)
                .expect("workload rank out of range")
                .1
        })
        .sum();
    total as f64 / queries.len() as f64
}

/// Builds and measures every configured structure.
pub fn run_bench(bv: &BitVector, cfg: &BenchConfig) -> Result<Vec<BenchReport>> {
    if bv.is_empty() {
        bail!("dataset is empty");
    }
    if cfg.queries == 0 || cfg.reps == 0 {
        bail!("query count and repetitions must be positive");
    }
    if cfg.kinds.contains(&QueryKind::Select) && bv.count_ones() == 0 {
        bail!("select workload requested but the dataset has no set bits");
    }
    let density = bv.count_ones() as f64 / bv.len() as f64;
    let mut reports = Vec::with_capacity(cfg.structures.len());
    for &structure in &cfg.structures {
        let start = Instant::now();
        let idx = structure.build(bv);
        let build_ms = start.elapsed().as_secs_f64() * 1e3;
        let space = idx.space();
        let space_pct = space.overhead_pct();

        let mut results = Vec::with_capacity(cfg.kinds.len());
        for &kind in &cfg.kinds {
            let timed = workload::generate(kind, bv.len(), bv.count_ones(), cfg.queries, cfg.seed);
            let warm = workload::generate(
                kind,
                bv.len(),
                bv.count_ones(),
                cfg.warmup,
                warmup_seed(cfg.seed),
            );
            let mut rep_ns = Vec::with_capacity(cfg.reps as usize);
            let mut checksums = Vec::with_capacity(cfg.reps as usize);
            for _ in 0..cfg.reps {
                black_box(run_queries(&idx, &warm));
                let start = Instant::now();
                let sum = black_box(run_queries(&idx, &timed));
                let elapsed = start.elapsed();
                rep_ns.push(elapsed.as_secs_f64() * 1e9 / cfg.queries as f64);
                checksums.push(sum);
            }
            let mean_wrong =
                (kind == QueryKind::Select).then(|| mean_wrong_blocks(&idx, &timed.queries));
            results.push(KindResult {
                kind,
                rep_ns,
                checksums,
                mean_wrong_blocks: mean_wrong,
            });
        }
        reports.push(BenchReport {
            structure,
            dataset: cfg.dataset.clone(),
            n: bv.len(),
            density,
            build_ms,
            space,
            space_pct,
            reps: cfg.reps,
            seed: cfg.seed,
            results,
        });
    }
    Ok(reports)
}
