//! Result output: a fixed-schema CSV and a terminal table.
//!
//! CSV columns, one row per (structure, dataset, kind):
//! `structure, dataset, n, density, kind, build_ms, space_pct, mean_ns,
//! mean_wrong_blocks, reps, seed`. `mean_wrong_blocks` is empty on rank
//! rows.

use crate::runner::BenchReport;
use anyhow::Result;
use std::io::Write;
use std::path::Path;

pub const CSV_HEADER: [&str; 11] = [
    "structure",
    "dataset",
    "n",
    "density",
    "kind",
    "build_ms",
    "space_pct",
    "mean_ns",
    "mean_wrong_blocks",
    "reps",
    "seed",
];

pub fn write_csv(path: impl AsRef<Path>, reports: &[BenchReport]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(CSV_HEADER)?;
    for report in reports {
        for result in &report.results {
            w.write_record([
                report.structure.name().to_string(),
                report.dataset.clone(),
                report.n.to_string(),
                format!("{:.6}", report.density),
                result.kind.name().to_string(),
                format!("{:.3}", report.build_ms),
                format!("{:.4}", report.space_pct),
                format!("{:.2}", result.mean_ns()),
                result
                    .mean_wrong_blocks
                    .map(|w| format!("{w:.6}"))
                    .unwrap_or_default(),
                report.reps.to_string(),
                report.seed.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn print_table(out: &mut impl Write, reports: &[BenchReport]) -> Result<()> {
    writeln!(
        out,
        "{:<20} {:>8} {:>12} {:>10} {:>10} {:>12}",
        "structure", "kind", "mean ns", "build ms", "space %", "wrong blocks"
    )?;
    for report in reports {
        for result in &report.results {
            writeln!(
                out,
                "{:<20} {:>8} {:>12.2} {:>10.1} {:>10.3} {:>12}",
                report.structure.name(),
                result.kind.name(),
                result.mean_ns(),
                report.build_ms,
                report.space_pct,
                result
                    .mean_wrong_blocks
                    .map(|w| format!("{w:.6}"))
                    .unwrap_or_else(|| "-".into()),
            )?;
        }
    }
    Ok(())
}

pub fn print_space_breakdown(out: &mut impl Write, reports: &[BenchReport]) -> Result<()> {
    for report in reports {
        writeln!(out, "{} space:", report.structure.name())?;
        writeln!(out, "{}", report.space)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runner::{run_bench, BenchConfig};
    use crate::workload::QueryKind;
    use spider_core::{datagen, StructureKind};

    #[test]
    fn csv_has_one_row_per_structure_and_kind() {
        let bv = datagen::random_bits(100_000, 0.5, 2);
        let cfg = BenchConfig {
            structures: vec![StructureKind::Spider, StructureKind::Strawman],
            dataset: "ds".into(),
            warmup: 10,
            queries: 100,
            reps: 2,
            kinds: vec![QueryKind::Rank, QueryKind::Select],
            seed: 5,
        };
        let reports = run_bench(&bv, &cfg).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_csv(&path, &reports).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 1 + 4);
        assert_eq!(lines[0], CSV_HEADER.join(","));
        assert!(lines[1].starts_with("spider,ds,100000,"));
        let rank_row: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(rank_row[4], "rank");
        assert_eq!(rank_row[8], "", "rank rows leave wrong_blocks empty");
        let select_row: Vec<&str> = lines[2].split(',').collect();
        assert_eq!(select_row[4], "select");
        assert!(!select_row[8].is_empty());
    }
}
