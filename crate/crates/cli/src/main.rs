use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use spider_cli::report;
use spider_cli::runner::{self, BenchConfig};
use spider_cli::verify::{self, Sample};
use spider_cli::workload::{self, QueryKind};
use spider_core::datagen::{self, CharClassMap, PRESET_NAMES};
use spider_core::{io, StructureKind};
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "spider",
    about = "Succinct rank/select bit-vector indexes: dataset generation, verification, and benchmarks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a bit vector and write it as an SPBV file
    Gen(GenArgs),
    /// Build an index over an SPBV file and write it to disk
    Build(BuildArgs),
    /// Check a structure against the linear-scan reference
    Verify(VerifyArgs),
    /// Time rank/select queries and report space, build time, and accuracy
    Bench(BenchArgs),
    /// Report mean prediction error for select queries
    Accuracy(AccuracyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Number of bits (random mode)
    #[arg(long, conflicts_with_all = ["text_file", "preset"])]
    n: Option<u64>,
    /// Probability that each bit is set (random mode)
    #[arg(long, requires = "n")]
    density: Option<f64>,
    /// Read bytes from this file and map them through a preset (text mode)
    #[arg(long, requires = "preset")]
    text_file: Option<PathBuf>,
    /// Byte-class preset: wikipedia, protein, or protein-even
    #[arg(long)]
    preset: Option<String>,
    /// Seed for the random generator
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output SPBV path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BuildArgs {
    /// Structure to build: spider or ni-spider (the serializable ones)
    #[arg(long)]
    structure: StructureKind,
    /// Input SPBV path
    #[arg(long = "in")]
    input: PathBuf,
    /// Output index path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    structure: StructureKind,
    /// Input SPBV path
    #[arg(long = "in")]
    input: PathBuf,
    /// "full" or a query count per kind
    #[arg(long, default_value = "full")]
    sample: Sample,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated structures (default: all five)
    #[arg(long, alias = "structure", value_delimiter = ',', default_values_t = StructureKind::ALL)]
    structures: Vec<StructureKind>,
    /// Input SPBV path
    #[arg(long = "in")]
    input: PathBuf,
    /// Untimed queries before each timed run
    #[arg(long, default_value_t = 1_000_000)]
    warmup: u64,
    /// Timed queries per repetition
    #[arg(long, default_value_t = 1_000_000)]
    queries: u64,
    /// Repetitions to average over
    #[arg(long, default_value_t = 5)]
    reps: u32,
    /// rank, select, or both
    #[arg(long, default_value = "both")]
    kind: String,
    /// Also write results to this CSV file
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Workload seed (warmup queries derive their own stream from it)
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct AccuracyArgs {
    #[arg(long)]
    structure: StructureKind,
    /// Input SPBV path
    #[arg(long = "in")]
    input: PathBuf,
    /// Select queries to average over
    #[arg(long, default_value_t = 1_000_000)]
    queries: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Gen(args) => gen(args),
        Command::Build(args) => build(args),
        Command::Verify(args) => run_verify(args),
        Command::Bench(args) => bench(args),
        Command::Accuracy(args) => accuracy(args),
    }
}

fn gen(args: GenArgs) -> Result<()> {
    let bv = match (args.n, &args.text_file) {
        (Some(n), None) => {
            let density = args.density.context("--density is required with --n")?;
            if !(0.0..=1.0).contains(&density) {
                bail!("--density must be in [0, 1]");
            }
            if n == 0 {
                bail!("--n must be positive");
            }
            datagen::random_bits(n, density, args.seed)
        }
        (None, Some(path)) => {
            let preset_name = args
                .preset
                .as_deref()
                .context("--preset is required with --text-file")?;
            let map = CharClassMap::preset(preset_name).with_context(|| {
                format!(
                    "unknown preset {preset_name:?} (expected one of: {})",
                    PRESET_NAMES.join(", ")
                )
            })?;
            let bytes =
                std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
            if bytes.is_empty() {
                bail!("text file is empty");
            }
            datagen::text_to_bits(&bytes, &map)
        }
        _ => bail!("pass either --n with --density, or --text-file with --preset"),
    };
    io::save_bitvector(&bv, &args.out)?;
    println!(
        "wrote {} ({} bits, {} ones, density {:.4})",
        args.out.display(),
        bv.len(),
        bv.count_ones(),
        bv.count_ones() as f64 / bv.len() as f64
    );
    Ok(())
}

fn build(args: BuildArgs) -> Result<()> {
    let bv = io::load_bitvector(&args.input)?;
    if bv.is_empty() {
        bail!("cannot index an empty bit vector");
    }
    let start = std::time::Instant::now();
    match args.structure {
        StructureKind::Spider => {
            let idx = spider_core::SpiderIndex::build(&bv);
            io::save_spider_index(&idx, &args.out)?;
        }
        StructureKind::NiSpider => {
            let idx = spider_core::NiSpiderIndex::build(&bv);
            io::save_ni_spider_index(&idx, &args.out)?;
        }
        other => bail!("{other} has no on-disk format; only spider and ni-spider are serializable"),
    }
    println!(
        "built {} over {} bits in {:.1} ms -> {}",
        args.structure,
        bv.len(),
        start.elapsed().as_secs_f64() * 1e3,
        args.out.display()
    );
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Result<()> {
    let bv = io::load_bitvector(&args.input)?;
    if bv.is_empty() {
        bail!("cannot index an empty bit vector");
    }
    let idx = args.structure.build(&bv);
    match verify::verify(&idx, &bv, args.sample, args.seed) {
        Ok(stats) => {
            println!(
                "{}: PASS ({} rank and {} select queries match the reference)",
                args.structure, stats.rank_checked, stats.select_checked
            );
            Ok(())
        }
        Err(mismatch) => {
            println!("{}: FAIL: {mismatch}", args.structure);
            std::process::exit(1);
        }
    }
}

fn bench(args: BenchArgs) -> Result<()> {
    let kinds = match args.kind.as_str() {
        "both" => vec![QueryKind::Rank, QueryKind::Select],
        other => vec![other.parse::<QueryKind>().map_err(anyhow::Error::msg)?],
    };
    let bv = io::load_bitvector(&args.input)?;
    let cfg = BenchConfig {
        structures: args.structures,
        dataset: args.input.display().to_string(),
        warmup: args.warmup,
        queries: args.queries,
        reps: args.reps,
        kinds,
        seed: args.seed,
    };
    let reports = runner::run_bench(&bv, &cfg)?;
    let mut out = std::io::stdout().lock();
    report::print_table(&mut out, &reports)?;
    writeln!(out)?;
    report::print_space_breakdown(&mut out, &reports)?;
    if let Some(path) = args.csv {
        report::write_csv(&path, &reports)?;
        writeln!(out, "wrote {}", path.display())?;
    }
    Ok(())
}

fn accuracy(args: AccuracyArgs) -> Result<()> {
    let bv = io::load_bitvector(&args.input)?;
    if bv.count_ones() == 0 {
        bail!("dataset has no set bits; nothing to select");
    }
    let idx = args.structure.build(&bv);
    let workload = workload::generate(
        QueryKind::Select,
        bv.len(),
        bv.count_ones(),
        args.queries,
        args.seed,
    );
    let mean = runner::mean_wrong_blocks(&idx, &workload.queries);
    let mut out = std::io::stdout().lock();
    writeln!(
        out,
        "{} on {} ({} bits): mean wrong blocks {:.6} over {} select queries (seed {})",
        args.structure,
        args.input.display(),
        bv.len(),
        mean,
        args.queries,
        args.seed
    )?;
    Ok(())
}
