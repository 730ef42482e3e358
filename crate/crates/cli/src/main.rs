use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, ValueEnum};

use stpvnd::bench::{self, BenchConfig};
use stpvnd::reduce::{ReduceConfig, ReductionTest};
use stpvnd::solve::SolveConfig;
use stpvnd::steinlib::{load_optima, OptimaTable};
use stpvnd::vnd::VndParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Csv,
    Json,
}

/// Solve SteinLib instances and report costs against best-known values.
#[derive(Debug, Parser)]
#[command(name = "stpvnd", version)]
struct Args {
    /// Instance file (repeatable).
    #[arg(long = "instance", value_name = "PATH")]
    instances: Vec<PathBuf>,
    /// Directory whose `.stp` files are all run.
    #[arg(long, value_name = "PATH")]
    dir: Option<PathBuf>,
    /// Runs per instance.
    #[arg(long, default_value_t = 8)]
    runs: usize,
    /// Seed of the first run; run i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Time limit per run in seconds.
    #[arg(long, default_value_t = 60.0, value_name = "SECONDS")]
    time_limit: f64,
    #[arg(long, default_value_t = 1)]
    bmin: usize,
    #[arg(long, default_value_t = 256)]
    bmax: usize,
    /// Score restarts per local search.
    #[arg(long, default_value_t = 5)]
    restarts: usize,
    /// Extra descents from the incumbent after the first one runs dry.
    #[arg(long, default_value_t = 10)]
    outer_restarts: usize,
    /// Nearest terminals used by the special-distance test.
    #[arg(long, default_value_t = 10, value_name = "K")]
    sd_cap: usize,
    /// Single worker with reductions at fixed points; output is reproducible.
    #[arg(long)]
    deterministic: bool,
    /// Disable a reduction test (repeatable).
    #[arg(long = "no-reduce", value_name = "TEST", value_parser = parse_test)]
    no_reduce: Vec<ReductionTest>,
    /// Solve exactly when there are at most 12 terminals.
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value_t = Emit::Csv)]
    emit: Emit,
    /// Extra best-known costs (`name,cost,is_optimal`), overriding the bundled table.
    #[arg(long, value_name = "CSV")]
    optima: Option<PathBuf>,
}

fn parse_test(s: &str) -> Result<ReductionTest, String> {
    s.parse::<ReductionTest>().map_err(|e| e.to_string())
}

impl Args {
    fn bench_config(&self) -> Result<BenchConfig> {
        if !(self.time_limit.is_finite() && self.time_limit > 0.0) {
            bail!("--time-limit must be positive");
        }
        if self.runs == 0 {
            bail!("--runs must be at least 1");
        }
        let vnd = VndParams {
            b_min: self.bmin,
            b_max: self.bmax,
            max_restarts: self.restarts,
            seed: self.seed,
            ..VndParams::default()
        };
        vnd.validate().map_err(anyhow::Error::msg)?;
        Ok(BenchConfig {
            solve: SolveConfig {
                vnd,
                time_limit: self.time_limit,
                deterministic: self.deterministic,
                reduce: ReduceConfig {
                    disabled: self.no_reduce.clone(),
                    sd_cap: self.sd_cap,
                },
                max_outer_restarts: self.outer_restarts,
                ..SolveConfig::default()
            },
            runs: self.runs,
            oracle: self.oracle,
        })
    }

    fn paths(&self) -> Result<Vec<PathBuf>> {
        let mut paths = self.instances.clone();
        if let Some(dir) = &self.dir {
            paths.extend(stp_files(dir)?);
        }
        if paths.is_empty() {
            bail!("nothing to run: pass --instance or --dir");
        }
        Ok(paths)
    }

    fn optima(&self) -> Result<OptimaTable> {
        let mut table = OptimaTable::bundled();
        if let Some(path) = &self.optima {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            table.merge(load_optima(&text).with_context(|| format!("parsing {}", path.display()))?);
        }
        Ok(table)
    }
}

fn stp_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
        let path = entry?.path();
        let is_stp = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("stp"));
        if is_stp && path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    let setup = (|| Ok::<_, anyhow::Error>((args.bench_config()?, args.paths()?, args.optima()?)))();
    let (config, paths, optima) = match setup {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };

    let outcome = bench::run_benchmark(&paths, &config, &optima);
    let report = match args.emit {
        Emit::Csv => bench::to_csv(&outcome.reports, args.deterministic),
        Emit::Json => {
            let json = bench::to_json(&outcome.reports, args.deterministic);
            serde_json::to_string_pretty(&json).expect("json serializes") + "\n"
        }
    };
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(report.as_bytes());
    for f in &outcome.failures {
        eprintln!("error: {}: {}", f.path.display(), f.message);
    }
    if outcome.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
