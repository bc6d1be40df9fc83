//! Borda reports over a results directory.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use serde::Serialize;
use xdhh_core::analysis::{borda, BordaReport, RankTable};
use xdhh_core::RunResult;

use crate::plan::MANIFEST;
use crate::results;

pub const SUMMARY: &str = "summary.json";
pub const BORDA_CSV: &str = "borda.csv";

/// Every RunResult JSON in `dir`, sorted by file name.
pub fn read_results(dir: &Path) -> anyhow::Result<Vec<RunResult>> {
    let mut names: Vec<_> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .map(|e| e.map(|e| e.file_name()))
        .collect::<Result<_, _>>()?;
    names.sort();
    let mut out = Vec::new();
    for name in names {
        let Some(name) = name.to_str() else { continue };
        if !name.ends_with(".json") || name == MANIFEST || name == SUMMARY || name.starts_with('.') {
            continue;
        }
        let path = dir.join(name);
        let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        out.push(results::from_json(&text).with_context(|| format!("parsing {}", path.display()))?);
    }
    if out.is_empty() {
        bail!("no run results in {}", dir.display());
    }
    Ok(out)
}

pub fn borda_csv(report: &BordaReport) -> String {
    let mut out = String::from("algorithm,domain,subtotal\n");
    for (domain, totals) in &report.domains {
        for (alg, t) in report.algorithms.iter().zip(totals) {
            out.push_str(&format!("{alg},{domain},{t}\n"));
        }
    }
    for (alg, t) in report.algorithms.iter().zip(&report.overall) {
        out.push_str(&format!("{alg},overall,{t}\n"));
    }
    out
}

#[derive(Debug, Serialize)]
struct RankEntry<'a> {
    domain: &'a str,
    instance: &'a str,
    ranks: BTreeMap<&'a str, u32>,
}

#[derive(Debug, Serialize)]
struct RunEntry<'a> {
    domain: &'a str,
    instance: &'a str,
    algorithm: &'a str,
    seed: u64,
    best_value: f64,
    initial_value: Option<f64>,
    evaluations_used: u64,
}

#[derive(Debug, Serialize)]
struct Summary<'a> {
    algorithms: &'a [String],
    domains: BTreeMap<&'a str, BTreeMap<&'a str, u64>>,
    overall: BTreeMap<&'a str, u64>,
    ranks: Vec<RankEntry<'a>>,
    runs: Vec<RunEntry<'a>>,
}

pub fn summary_json(results: &[RunResult], table: &RankTable, report: &BordaReport) -> String {
    let algs = &report.algorithms;
    let by_alg = |totals: &[u64]| algs.iter().map(String::as_str).zip(totals.iter().copied()).collect();
    let summary = Summary {
        algorithms: algs,
        domains: report.domains.iter().map(|(d, t)| (d.as_str(), by_alg(t))).collect(),
        overall: by_alg(&report.overall),
        ranks: table
            .rows()
            .iter()
            .map(|row| RankEntry {
                domain: &row.domain,
                instance: &row.instance,
                ranks: table
                    .algorithms()
                    .iter()
                    .zip(&row.ranks)
                    .filter_map(|(a, r)| r.map(|r| (a.as_str(), r)))
                    .collect(),
            })
            .collect(),
        runs: results
            .iter()
            .map(|r| RunEntry {
                domain: &r.domain,
                instance: &r.instance,
                algorithm: &r.algorithm,
                seed: r.seed,
                best_value: r.best_value,
                initial_value: r.initial_value(),
                evaluations_used: r.evaluations_used,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&summary).expect("summary serializes");
    s.push('\n');
    s
}

/// Reads `results_dir`, writes `borda.csv` and `summary.json` to `out`.
pub fn write_report(results_dir: &Path, out: &Path) -> anyhow::Result<BordaReport> {
    let runs = read_results(results_dir)?;
    let table = RankTable::from_results(&runs)?;
    let report = borda(&table)?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    results::write_atomic(out, BORDA_CSV, borda_csv(&report).as_bytes())?;
    results::write_atomic(out, SUMMARY, summary_json(&runs, &table, &report).as_bytes())?;
    Ok(report)
}
