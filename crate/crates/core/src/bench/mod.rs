//! Benchmark harness: suite fixtures on disk, timed closure runs, CSV reports.

mod fit;
mod report;

pub use fit::{linear_fit, LinearFit};
pub use report::{read_csv, write_csv, BenchRecord, Run, Suite, CSV_HEADER};

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{compute_closure, instantiate_ruleset, ClosureOptions, RegimeId};
use crate::generator::{build_ts1, build_ts2, build_ts3, generate_ckr, ts1_label, GenError, GenParams};
use crate::model::{assemble_repository, CkrVocabulary, ModelError};
use crate::rdf::{load_dataset, write_dataset, Dataset, Format, RdfError};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Rdf { path: PathBuf, source: RdfError },
    #[error("{path}: {source}")]
    Model { path: PathBuf, source: ModelError },
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error("{path}: invalid fixture metadata: {message}")]
    Meta { path: PathBuf, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Sidecar describing how a fixture file was produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureMeta {
    pub suite: Suite,
    pub label: String,
    #[serde(default)]
    pub seed: u64,
    /// Connections per context in the propagation suites.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connections: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<GenParams>,
}

pub const SIDECAR_EXTENSION: &str = "params";

pub fn sidecar_path(fixture: &Path) -> PathBuf {
    fixture.with_extension(SIDECAR_EXTENSION)
}

pub fn read_meta(fixture: &Path) -> Result<Option<FixtureMeta>, BenchError> {
    let path = sidecar_path(fixture);
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&path).map_err(|source| BenchError::Io {
        path: path.clone(),
        source,
    })?;
    toml::from_str(&text).map(Some).map_err(|e| BenchError::Meta {
        path,
        message: e.message().to_owned(),
    })
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> BenchError + '_ {
    move |source| BenchError::Io {
        path: path.to_owned(),
        source,
    }
}

/// Writes `d` as TriG to `path` together with its sidecar.
pub fn write_fixture(path: &Path, d: &Dataset, meta: &FixtureMeta) -> Result<(), BenchError> {
    if let Some(dir) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    let file = fs::File::create(path).map_err(io_err(path))?;
    let mut sink = std::io::BufWriter::new(file);
    write_dataset(d, Format::TriG, &mut sink).map_err(|source| BenchError::Rdf {
        path: path.to_owned(),
        source,
    })?;
    let side = sidecar_path(path);
    let text = toml::to_string(meta).expect("metadata serializes");
    fs::write(&side, text).map_err(io_err(&side))
}

pub fn load_fixture(path: &Path) -> Result<Dataset, BenchError> {
    let file = fs::File::open(path).map_err(io_err(path))?;
    load_dataset(BufReader::new(file), Format::from_path(path)).map_err(|source| BenchError::Rdf {
        path: path.to_owned(),
        source,
    })
}

/// Connection counts of the desk-scale propagation sweep: even values up to
/// `n - 2`, then `n - 1`.
pub fn desk_sweep(n: usize) -> Vec<usize> {
    let mut ks: Vec<usize> = (0..n.saturating_sub(1)).step_by(2).collect();
    if n > 0 && ks.last() != Some(&(n - 1)) {
        ks.push(n - 1);
    }
    ks
}

/// Connection counts reported for the full-scale propagation sweep:
/// 0, 4, 9, 14, … up to `n - 1`.
pub fn full_sweep(n: usize) -> Vec<usize> {
    std::iter::once(0).chain((4..n).step_by(5)).collect()
}

#[derive(Debug, Clone)]
pub struct SuiteSpec {
    pub suite: Suite,
    pub seeds: Vec<u64>,
    /// Contexts of the propagation suites.
    pub contexts: usize,
    /// Instances per context of the propagation suites.
    pub instances: usize,
    pub connections: Vec<usize>,
}

impl SuiteSpec {
    pub fn desk(suite: Suite) -> Self {
        SuiteSpec {
            suite,
            seeds: vec![0],
            contexts: 20,
            instances: 10,
            connections: desk_sweep(20),
        }
    }
}

/// Generates the fixtures of a suite into `dir`, returning their paths.
pub fn write_suite(spec: &SuiteSpec, dir: &Path) -> Result<Vec<PathBuf>, BenchError> {
    let mut out = Vec::new();
    match spec.suite {
        Suite::Ts1 => {
            for &seed in &spec.seeds {
                for p in build_ts1() {
                    let p = p.with_seed(seed);
                    let label = ts1_label(&p);
                    let path = dir.join(format!("ts1-{label}-seed{seed}.trig"));
                    let meta = FixtureMeta {
                        suite: Suite::Ts1,
                        label,
                        seed,
                        connections: None,
                        params: Some(p.clone()),
                    };
                    write_fixture(&path, &generate_ckr(&p)?, &meta)?;
                    out.push(path);
                }
            }
        }
        Suite::Ts2 | Suite::Ts3 => {
            let (n, m) = (spec.contexts, spec.instances);
            for &k in &spec.connections {
                let d = if spec.suite == Suite::Ts2 {
                    build_ts2(n, k, m)?
                } else {
                    build_ts3(n, k, m)?
                };
                let label = format!("n{n}-k{k}-m{m}");
                let path = dir.join(format!("{}-{label}.trig", spec.suite));
                let meta = FixtureMeta {
                    suite: spec.suite,
                    label,
                    seed: 0,
                    connections: Some(k),
                    params: None,
                };
                write_fixture(&path, &d, &meta)?;
                out.push(path);
            }
        }
        Suite::Custom => {
            return Err(BenchError::Meta {
                path: dir.to_owned(),
                message: "custom suites are generated with `generate`".into(),
            })
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub regimes: Vec<RegimeId>,
    pub runs: usize,
    pub timeout_ms: u64,
    /// Benchmark files concurrently. Each timed run stays sequential.
    pub parallel_files: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            regimes: vec![RegimeId::OwlLocal],
            runs: 3,
            timeout_ms: crate::engine::DEFAULT_BUDGET_MS,
            parallel_files: false,
        }
    }
}

/// Timed runs of one dataset under one regime, followed by their average row.
pub fn bench_dataset(
    d: &Dataset,
    meta: &FixtureMeta,
    regime: RegimeId,
    runs: usize,
    timeout_ms: u64,
) -> Result<Vec<BenchRecord>, ModelError> {
    let repo = assemble_repository(d, &CkrVocabulary::default())?;
    let rules = instantiate_ruleset(regime);
    let opts = ClosureOptions {
        budget_ms: timeout_ms,
        parallel: false,
    };
    let asserted = d.len();
    let mut rows = Vec::with_capacity(runs + 1);
    for run in 0..runs {
        let t = Instant::now();
        let result = compute_closure(&repo, &rules, &opts);
        let ms = t.elapsed().as_secs_f64() * 1e3;
        let inferred = result.inferred_quads().len();
        rows.push(BenchRecord {
            suite: meta.suite,
            config: meta.label.clone(),
            regime,
            asserted,
            total: asserted + inferred,
            inferred,
            ms,
            timed_out: result.timed_out,
            seed: meta.seed,
            run: Run::Index(run),
        });
    }
    if let Some(avg) = BenchRecord::average(&rows) {
        rows.push(avg);
    }
    Ok(rows)
}

fn bench_file(path: &Path, opts: &BenchOptions) -> Result<Vec<BenchRecord>, BenchError> {
    let d = load_fixture(path)?;
    let meta = read_meta(path)?.unwrap_or_else(|| FixtureMeta {
        suite: Suite::Custom,
        label: path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
        seed: 0,
        connections: None,
        params: None,
    });
    let mut rows = Vec::new();
    for &regime in &opts.regimes {
        rows.extend(
            bench_dataset(&d, &meta, regime, opts.runs, opts.timeout_ms).map_err(|source| BenchError::Model {
                path: path.to_owned(),
                source,
            })?,
        );
    }
    Ok(rows)
}

/// Benchmarks every file; rows come out in file order either way.
pub fn bench_files(files: &[PathBuf], opts: &BenchOptions) -> Result<Vec<BenchRecord>, BenchError> {
    let per_file: Vec<Result<Vec<BenchRecord>, BenchError>> = if opts.parallel_files {
        files.par_iter().map(|f| bench_file(f, opts)).collect()
    } else {
        files.iter().map(|f| bench_file(f, opts)).collect()
    };
    let mut rows = Vec::new();
    for r in per_file {
        rows.extend(r?);
    }
    Ok(rows)
}

/// TriG and Turtle files of `dir`, sorted by name.
pub fn suite_files(dir: &Path) -> Result<Vec<PathBuf>, BenchError> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err(dir))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("trig" | "ttl")))
        .collect();
    files.sort();
    Ok(files)
}
