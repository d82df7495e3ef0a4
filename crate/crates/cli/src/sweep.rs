//! The `verify` sweep: one classification check per `(n, ℓ)` cell, with
//! per-cell checkpoints so an interrupted sweep resumes where it stopped.

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Args;
use serde_json::{json, Value};

use schubert_core::{verify_theorem, VerifyOptions};

use crate::{io_error, CliError};

/// Bumped whenever the cell format changes, so stale checkpoints are ignored.
const CHECKPOINT_VERSION: u64 = 1;

#[derive(Clone, Debug)]
pub struct Range(RangeInclusive<u32>);

impl FromStr for Range {
    type Err = String;

    /// `"4"`, `"4..6"` or `"4..=6"`, all inclusive.
    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("bad range bound {t:?}"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => (num(s)?, num(s)?),
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Self(lo..=hi))
    }
}

#[derive(Args)]
pub struct VerifyArgs {
    /// sl_n ranks to sweep, e.g. "4..8".
    #[arg(long, value_name = "RANGE")]
    n: Range,
    /// Levels to sweep, e.g. "1..4".
    #[arg(long, value_name = "RANGE")]
    level: Range,
    /// Worker threads.
    #[arg(long, default_value_t = default_jobs(), value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
    /// Stop each rank computation once it exceeds one (the default).
    #[arg(long, overrides_with = "no_early_exit")]
    early_exit: bool,
    /// Compute every rank exactly.
    #[arg(long)]
    no_early_exit: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Directory for per-cell checkpoints.
    #[arg(long, env = "SCHUBERT_CACHE_DIR")]
    checkpoint: Option<PathBuf>,
    /// Also write the records as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn default_jobs() -> u32 {
    std::thread::available_parallelism().map_or(1, |n| n.get() as u32)
}

fn checkpoint_path(dir: &Path, n: u32, level: u32, early_exit: bool) -> PathBuf {
    let mode = if early_exit { "early" } else { "full" };
    dir.join(format!("cell-n{n}-l{level}-{mode}.json"))
}

/// Writes through a temporary sibling and a rename, so readers never see a
/// partial file.
fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).map_err(|e| io_error(&tmp, e))?;
    f.write_all(contents).map_err(|e| io_error(&tmp, e))?;
    f.sync_all().map_err(|e| io_error(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| io_error(path, e))
}

/// A checkpointed cell, if present and made with the same settings.
/// Unreadable or stale files are recomputed rather than trusted.
fn load_cell(path: &Path, n: u32, level: u32, early_exit: bool) -> Option<Value> {
    let text = fs::read_to_string(path).ok()?;
    let v: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("ignoring unreadable checkpoint {}: {e}", path.display());
            return None;
        }
    };
    let matches = v["version"] == CHECKPOINT_VERSION
        && v["early_exit"] == early_exit
        && v["cell"]["n"] == n
        && v["cell"]["level"] == level;
    matches.then(|| v["cell"].clone())
}

fn compute_cell(
    pool: &rayon::ThreadPool,
    n: u32,
    level: u32,
    opts: VerifyOptions,
) -> Result<Value, CliError> {
    let report = pool.install(|| verify_theorem(n as usize, level, opts))?;
    serde_json::to_value(&report).map_err(|e| CliError::Inconsistent(e.to_string()))
}

fn summarize(cell: &Value) -> Value {
    let records = cell["records"].as_array().map_or(&[][..], Vec::as_slice);
    let count = |key: &str| records.iter().filter(|r| r[key] == true).count();
    let rank_one = records
        .iter()
        .filter(|r| r["exact"] == true && r["rank_or_bound"] == 1)
        .count();
    json!({
        "n": cell["n"],
        "level": cell["level"],
        "verdict": cell["verdict"],
        "weights": records.len(),
        "rank_one": rank_one,
        "in_lambda": count("in_lambda"),
        "inconsistent": records.len() - count("consistent"),
    })
}

fn write_csv(path: &Path, records: &[Value]) -> Result<(), CliError> {
    let columns = [
        "n",
        "level",
        "weight",
        "partition",
        "rank_or_bound",
        "exact",
        "in_lambda",
        "dictionary_case",
        "s",
        "consistent",
    ];
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| io_error(path, e);
    w.write_record(columns).map_err(err)?;
    for r in records {
        let field = |c: &str| match (c, &r[c]) {
            ("weight", v) => {
                let coeffs: Vec<String> = v["coeffs"]
                    .as_array()
                    .map_or(&[][..], Vec::as_slice)
                    .iter()
                    .map(Value::to_string)
                    .collect();
                format!("({})", coeffs.join(","))
            }
            (_, Value::String(s)) => s.clone(),
            (_, v) => v.to_string(),
        };
        w.write_record(columns.iter().map(|c| field(c)))
            .map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| io_error(path, e))?;
    write_atomic(path, &bytes)
}

/// Runs the sweep; `Ok(false)` means some cell failed.
pub fn run(args: &VerifyArgs) -> Result<bool, CliError> {
    let early_exit = !args.no_early_exit || args.early_exit;
    let opts = VerifyOptions {
        early_exit,
        parallel: args.jobs > 1,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs as usize)
        .build()
        .map_err(|e| CliError::Inconsistent(e.to_string()))?;
    if let Some(dir) = &args.checkpoint {
        fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    }

    let mut cells = Vec::new();
    let mut records = Vec::new();
    for n in args.n.0.clone() {
        for level in args.level.0.clone() {
            let path = args
                .checkpoint
                .as_deref()
                .map(|dir| checkpoint_path(dir, n, level, early_exit));
            let cached = path
                .as_deref()
                .and_then(|p| load_cell(p, n, level, early_exit));
            let resumed = cached.is_some();
            let cell = match cached {
                Some(c) => c,
                None => {
                    let c = compute_cell(&pool, n, level, opts)?;
                    if let Some(p) = &path {
                        let v = json!({
                            "version": CHECKPOINT_VERSION,
                            "early_exit": early_exit,
                            "cell": c,
                        });
                        write_atomic(p, v.to_string().as_bytes())?;
                    }
                    c
                }
            };
            let summary = summarize(&cell);
            eprintln!(
                "n={n} level={level}: {} ({} weights, {} of rank one){}",
                summary["verdict"].as_str().unwrap_or("?"),
                summary["weights"],
                summary["rank_one"],
                if resumed { " [checkpoint]" } else { "" },
            );
            cells.push(summary);
            if let Some(rs) = cell["records"].as_array() {
                records.extend(rs.iter().cloned());
            }
        }
    }

    let pass = cells.iter().all(|c| c["verdict"] == "PASS");
    let report = json!({
        "verdict": if pass { "PASS" } else { "FAIL" },
        "config": {
            "n_range": [args.n.0.start(), args.n.0.end()],
            "level_range": [args.level.0.start(), args.level.0.end()],
            "early_exit": early_exit,
        },
        "cells": cells,
        "records": records,
    });
    let mut text =
        serde_json::to_string_pretty(&report).map_err(|e| CliError::Inconsistent(e.to_string()))?;
    text.push('\n');
    match &args.output {
        Some(path) => write_atomic(path, text.as_bytes())?,
        None => print!("{text}"),
    }
    if let Some(path) = &args.csv {
        write_csv(path, &records)?;
    }
    eprintln!("verdict: {}", if pass { "PASS" } else { "FAIL" });
    Ok(pass)
}
