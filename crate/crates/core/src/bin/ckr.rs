use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use ckr::bench::{
    bench_files, desk_sweep, linear_fit, suite_files, write_csv, write_fixture, write_suite, BenchOptions, FixtureMeta,
    Run, Suite, SuiteSpec,
};
use ckr::engine::{
    compute_closure, instantiate_ruleset, stage_millis_map, ClosureOptions, RegimeId, DEFAULT_BUDGET_MS,
};
use ckr::generator::{generate_ckr, GenParams};
use ckr::model::{assemble_repository, parse_assertion, parse_context, CkrRepository, CkrVocabulary};
use ckr::rdf::{load_dataset, write_dataset, Dataset, Format};

const EXIT_FALSE: u8 = 1;
/// Unreadable input, invalid repository, or any other failure.
const EXIT_INPUT: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ckr",
    version,
    about = "Closure, entailment checks and benchmarks for contextualized knowledge repositories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Reasoning {
    /// ckr-rdfs-global, ckr-rdfs-local, ckr-owl-global or ckr-owl-local
    #[arg(long, env = "CKR_DEFAULT_REGIME", default_value = "ckr-owl-local")]
    regime: RegimeId,
    #[arg(long, default_value_t = DEFAULT_BUDGET_MS)]
    timeout_ms: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Materialize the closure of a TriG or Turtle file.
    Closure {
        input: PathBuf,
        #[command(flatten)]
        reasoning: Reasoning,
        /// Where to write the closed dataset as TriG.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Evaluate rules of one round on all cores.
        #[arg(long)]
        parallel: bool,
    },
    /// Check whether an assertion holds in a context.
    Check {
        input: PathBuf,
        #[command(flatten)]
        reasoning: Reasoning,
        /// Context IRI, as `<iri>` or a prefixed name such as `:c0`.
        #[arg(long)]
        context: String,
        /// One Turtle triple, e.g. `:x_1_0 a :D1`.
        #[arg(long)]
        assertion: String,
    },
    /// Generate a random repository from a parameter file.
    Generate {
        /// key = value parameter file.
        #[arg(long)]
        params: PathBuf,
        /// Overrides the seed of the parameter file.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the fixtures of a test suite.
    GenSuite {
        /// ts1, ts2 or ts3
        suite: Suite,
        #[arg(long)]
        out: PathBuf,
        /// Seeds of the scalability suite; one file set per seed.
        #[arg(long = "seed", default_values_t = [0u64])]
        seeds: Vec<u64>,
        #[arg(long, default_value_t = 20)]
        contexts: usize,
        #[arg(long, default_value_t = 10)]
        instances: usize,
        /// Connection counts of the propagation sweep (defaults to 0, 2, 4, .. and n - 1).
        #[arg(long, value_delimiter = ',')]
        connections: Vec<usize>,
    },
    /// Time the closure of every fixture in a directory.
    Bench {
        dir: PathBuf,
        #[arg(
            long = "regime",
            env = "CKR_DEFAULT_REGIME",
            default_value = "ckr-owl-local",
            value_delimiter = ','
        )]
        regimes: Vec<RegimeId>,
        #[arg(long, default_value_t = 3)]
        runs: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET_MS)]
        timeout_ms: u64,
        /// CSV report; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Benchmark files concurrently.
        #[arg(long)]
        parallel: bool,
    },
}

fn load(path: &Path) -> Result<(Dataset, CkrRepository)> {
    let file = fs::File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let d = load_dataset(BufReader::new(file), Format::from_path(path))
        .with_context(|| format!("cannot parse {}", path.display()))?;
    let repo = assemble_repository(&d, &CkrVocabulary::default())
        .with_context(|| format!("invalid repository in {}", path.display()))?;
    Ok((d, repo))
}

fn cmd_closure(input: &Path, reasoning: &Reasoning, out: Option<&Path>, parallel: bool) -> Result<u8> {
    let (d, repo) = load(input)?;
    let regime = instantiate_ruleset(reasoning.regime);
    let opts = ClosureOptions {
        budget_ms: reasoning.timeout_ms,
        parallel,
    };
    let t = Instant::now();
    let result = compute_closure(&repo, &regime, &opts);
    let ms = t.elapsed().as_secs_f64() * 1e3;
    let inferred_quads = result.inferred_quads();
    let report = json!({
        "input": input.display().to_string(),
        "regime": reasoning.regime.as_str(),
        "asserted_facts": result.asserted_count,
        "inferred_facts": result.inferred_count,
        "asserted_triples": d.len(),
        "inferred_triples": inferred_quads.len(),
        "total_triples": d.len() + inferred_quads.len(),
        "contexts": result.contexts.len(),
        "inconsistent_contexts": result.inconsistent_contexts.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "per_stage_ms": stage_millis_map(&result),
        "ms": ms,
        "timed_out": result.timed_out,
    });
    println!("{report}");
    if result.timed_out {
        return Ok(EXIT_TIMEOUT);
    }
    if let Some(out) = out {
        let closed = result.closed_dataset(&d);
        let file = fs::File::create(out).with_context(|| format!("cannot create {}", out.display()))?;
        let mut sink = io::BufWriter::new(file);
        write_dataset(&closed, Format::TriG, &mut sink)?;
        sink.flush()?;
    }
    Ok(0)
}

fn cmd_check(input: &Path, reasoning: &Reasoning, context: &str, assertion: &str) -> Result<u8> {
    let (_, repo) = load(input)?;
    let c = parse_context(context)?;
    let a = parse_assertion(assertion)?;
    let regime = instantiate_ruleset(reasoning.regime);
    let opts = ClosureOptions {
        budget_ms: reasoning.timeout_ms,
        parallel: false,
    };
    let result = compute_closure(&repo, &regime, &opts);
    if result.timed_out {
        eprintln!("closure timed out after {} ms", reasoning.timeout_ms);
        return Ok(EXIT_TIMEOUT);
    }
    let holds = result.entails(&repo, &a, &c)?;
    println!("{holds}");
    Ok(if holds { 0 } else { EXIT_FALSE })
}

fn cmd_generate(params: &Path, seed: Option<u64>, out: &Path) -> Result<u8> {
    let text = fs::read_to_string(params).with_context(|| format!("cannot read {}", params.display()))?;
    let mut p = GenParams::from_config_str(&text)?;
    if let Some(seed) = seed {
        p.seed = seed;
    }
    let d = generate_ckr(&p)?;
    let meta = FixtureMeta {
        suite: Suite::Custom,
        label: out
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
        seed: p.seed,
        connections: None,
        params: Some(p),
    };
    write_fixture(out, &d, &meta)?;
    Ok(0)
}

fn cmd_bench(dir: &Path, opts: &BenchOptions, out: Option<&Path>) -> Result<u8> {
    let files = suite_files(dir)?;
    if files.is_empty() {
        bail!("no .trig or .ttl files in {}", dir.display());
    }
    let rows = bench_files(&files, opts)?;
    match out {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            write_csv(&rows, file)?;
        }
        None => write_csv(&rows, io::stdout().lock())?,
    }
    // Timing against connection count for the propagation suites.
    for regime in &opts.regimes {
        let points: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.run == Run::Average && &r.regime == regime && !r.timed_out)
            .filter(|r| matches!(r.suite, Suite::Ts2 | Suite::Ts3))
            .filter_map(|r| {
                let k = r
                    .config
                    .split('-')
                    .find_map(|p| p.strip_prefix('k')?.parse::<f64>().ok())?;
                Some((k, r.ms))
            })
            .collect();
        let (xs, ys): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
        if let Some(fit) = linear_fit(&xs, &ys) {
            eprintln!(
                "{regime}: ms = {:.3} * k + {:.3}, R^2 = {:.4}",
                fit.slope, fit.intercept, fit.r2
            );
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Closure {
            input,
            reasoning,
            out,
            parallel,
        } => cmd_closure(&input, &reasoning, out.as_deref(), parallel),
        Command::Check {
            input,
            reasoning,
            context,
            assertion,
        } => cmd_check(&input, &reasoning, &context, &assertion),
        Command::Generate { params, seed, out } => cmd_generate(&params, seed, &out),
        Command::GenSuite {
            suite,
            out,
            seeds,
            contexts,
            instances,
            connections,
        } => {
            let connections = if connections.is_empty() {
                desk_sweep(contexts)
            } else {
                connections
            };
            let spec = SuiteSpec {
                suite,
                seeds,
                contexts,
                instances,
                connections,
            };
            let files = write_suite(&spec, &out)?;
            eprintln!("wrote {} fixtures to {}", files.len(), out.display());
            Ok(0)
        }
        Command::Bench {
            dir,
            regimes,
            runs,
            timeout_ms,
            out,
            parallel,
        } => {
            let opts = BenchOptions {
                regimes,
                runs,
                timeout_ms,
                parallel_files: parallel,
            };
            cmd_bench(&dir, &opts, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
