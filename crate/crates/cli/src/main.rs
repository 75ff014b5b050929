//! cutbench: fetch Gset instances, inspect them, certify solutions, run
//! baseline solvers and report time-to-target benchmarks.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use cutbench::instances::{
    default_cache_dir, instance_stats, load_instance, registry_lookup, ProblemInstance,
};
use cutbench::metrics;
use cutbench::reference;
use cutbench::solvers::{run_trials, SolverKind, SolverParams};
use cutbench::verify::{
    bundled_record, certify, decode_hex_str, encode_hex_solution, parse_solution_file,
};

use cutbench_cli::config::parse_config;
use cutbench_cli::report::BenchReport;

#[derive(Parser)]
#[command(name = "cutbench", version, about = "Sparse Ising / MaxCut workbench for the Gset benchmarks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct CacheOpts {
    /// Instance cache directory (default: $CUTBENCH_CACHE_DIR or ~/.cache/cutbench)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Never touch the network; fail on cache misses
    #[arg(long, global = true)]
    offline: bool,
}

impl CacheOpts {
    fn dir(&self) -> PathBuf {
        self.cache_dir.clone().unwrap_or_else(default_cache_dir)
    }

    fn load(&self, instance: &str) -> Result<ProblemInstance> {
        Ok(load_instance(instance, &self.dir(), self.offline)?)
    }
}

#[derive(Args, Clone)]
struct SolverOpts {
    /// Solver: ls | sa | pt | pticm
    #[arg(long)]
    solver: Option<SolverKind>,
    /// Sweeps per run (default: per-instance registry value, else 1000)
    #[arg(long)]
    sweeps: Option<u64>,
    /// Independent restarts within each trial
    #[arg(long)]
    restarts: Option<u64>,
    /// SA start temperature (cut units); omit to calibrate automatically
    #[arg(long)]
    t_hot: Option<f64>,
    /// SA final temperature
    #[arg(long)]
    t_cold: Option<f64>,
    /// SA per-sweep geometric cooling factor; omit to derive from sweeps
    #[arg(long)]
    cooling_factor: Option<f64>,
    /// Tempering ladder size
    #[arg(long)]
    replicas: Option<usize>,
    #[arg(long)]
    beta_min: Option<f64>,
    #[arg(long)]
    beta_max: Option<f64>,
    /// Sweeps between cluster-move attempts (PT+ICM)
    #[arg(long)]
    icm_period: Option<u64>,
    /// Key-value configuration file; command-line flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

impl SolverOpts {
    /// defaults (+ registry sweeps) < configuration file < explicit flags
    fn resolve(&self, instance_id: &str) -> Result<SolverParams> {
        let mut p = SolverParams::default();
        if let Some(meta) = registry_lookup(instance_id) {
            p.sweeps_per_run = meta.default_sweeps_per_run;
        }

        if let Some(path) = &self.config {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            let cfg = parse_config(&text)?;
            cfg.check_known()?;
            if let Some(raw) = cfg.get("solver") {
                p.kind = raw.parse().map_err(|e: String| anyhow!(e))?;
            }
            if let Some(v) = cfg.parsed("sweeps_per_run", "integer")? {
                p.sweeps_per_run = v;
            }
            if let Some(v) = cfg.parsed("restarts", "integer")? {
                p.restarts = v;
            }
            if let Some(v) = cfg.parsed("t_hot", "number")? {
                p.t_hot = Some(v);
            }
            if let Some(v) = cfg.parsed("t_cold", "number")? {
                p.t_cold = v;
            }
            if let Some(v) = cfg.parsed("cooling_factor", "number")? {
                p.cooling_factor = Some(v);
            }
            if let Some(v) = cfg.parsed("replicas", "integer")? {
                p.replicas = v;
            }
            if let Some(v) = cfg.parsed("beta_min", "number")? {
                p.beta_min = v;
            }
            if let Some(v) = cfg.parsed("beta_max", "number")? {
                p.beta_max = v;
            }
            if let Some(v) = cfg.parsed("icm_period", "integer")? {
                p.icm_period = v;
            }
        }

        if let Some(kind) = self.solver {
            p.kind = kind;
        }
        if let Some(v) = self.sweeps {
            p.sweeps_per_run = v;
        }
        if let Some(v) = self.restarts {
            p.restarts = v;
        }
        if let Some(v) = self.t_hot {
            p.t_hot = Some(v);
        }
        if let Some(v) = self.t_cold {
            p.t_cold = v;
        }
        if let Some(v) = self.cooling_factor {
            p.cooling_factor = Some(v);
        }
        if let Some(v) = self.replicas {
            p.replicas = v;
        }
        if let Some(v) = self.beta_min {
            p.beta_min = v;
        }
        if let Some(v) = self.beta_max {
            p.beta_max = v;
        }
        if let Some(v) = self.icm_period {
            p.icm_period = v;
        }
        p.validate()?;
        Ok(p)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Download (or reuse) an instance and print its checksum
    Fetch {
        id: String,
        #[command(flatten)]
        cache: CacheOpts,
    },
    /// Print instance statistics and registry metadata
    Info {
        instance: String,
        #[command(flatten)]
        cache: CacheOpts,
        /// Also print published benchmark observations for this instance
        #[arg(long)]
        published: bool,
    },
    /// Certify a solution file against an instance
    Verify {
        instance: String,
        /// Solution file (optional `#` comments and `instance=.. n=.. claimed=..`
        /// header, then the hex payload). Omit with --bundled.
        solution: Option<PathBuf>,
        /// Expected cut value; exit 1 if the certified cut differs
        #[arg(long)]
        claimed: Option<i64>,
        /// Use the record solution bundled for this instance
        #[arg(long)]
        bundled: bool,
        #[command(flatten)]
        cache: CacheOpts,
    },
    /// Run a single solver trial and optionally save the best solution
    Solve {
        instance: String,
        #[command(flatten)]
        solver: SolverOpts,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the best configuration as a verifiable solution file
        #[arg(long)]
        out_solution: Option<PathBuf>,
        #[command(flatten)]
        cache: CacheOpts,
    },
    /// Run a batch of trials and write a JSON bench report
    Bench {
        instance: String,
        #[command(flatten)]
        solver: SolverOpts,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 6)]
        threads: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Success threshold for P_s / TTT
        #[arg(long)]
        target: Option<i64>,
        /// Report path (JSON)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Append a flat CSV row here
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        cache: CacheOpts,
    },
    /// Project a time-to-target from per-success timing data
    ProjectBls {
        #[arg(long)]
        avg_time_per_success: f64,
        #[arg(long)]
        successes: u64,
        #[arg(long)]
        runs: u64,
    },
    /// Re-render a JSON report as a table or CSV
    Report {
        json: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    match Cli::parse().cmd {
        Cmd::Fetch { id, cache } => {
            let inst = cache.load(&id)?;
            let dir = cache.dir();
            let sha = fs::read_to_string(dir.join(format!("{id}.sha256")))
                .map(|s| s.trim().to_string())
                .unwrap_or_else(|_| "-".into());
            println!(
                "{}: n={} m={} cached={} sha256={sha}",
                inst.id(),
                inst.n(),
                inst.m(),
                dir.join(format!("{id}.gset")).display(),
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Info {
            instance,
            cache,
            published,
        } => {
            let inst = cache.load(&instance)?;
            let stats = instance_stats(&inst);
            println!("instance      {}", inst.id());
            println!("source        {}", inst.source_path());
            println!("n             {}", stats.n);
            println!("m             {}", stats.m);
            println!("total weight  {}", stats.total_weight);
            let hist: Vec<String> = stats
                .weight_histogram
                .iter()
                .map(|(w, c)| format!("{w}:{c}"))
                .collect();
            println!("weights       {}", hist.join(" "));
            println!(
                "degree        min={} max={} mean={:.4}",
                stats.min_degree, stats.max_degree, stats.mean_degree
            );
            if let Some(meta) = registry_lookup(inst.id()) {
                println!("type          {:?}", meta.problem_type);
                println!("best known    {} ({})", meta.best_known, meta.best_known_source);
                println!("default sweeps {}", meta.default_sweeps_per_run);
            }
            if published {
                if let Some(row) = reference::quality_speedup_row(inst.id()) {
                    println!(
                        "published     SBM GPU: value={} quality={} TTT={}s",
                        row.sbm_value, row.sbm_quality_printed, row.sbm_ttt_seconds
                    );
                    println!(
                        "published     Cosm PoC: P_s={} sweeps/run={} TTT={}s (speedup {}x)",
                        row.p_s, row.sweeps_per_run, row.cosm_ttt_seconds, row.speedup_printed
                    );
                }
                if let Some(row) = reference::bls_row(inst.id()) {
                    println!(
                        "published     BLS: value={} projected TTT={}s",
                        row.bls_value, row.projected_ttt_printed
                    );
                }
                if let Some(row) = reference::best_value_row(inst.id()) {
                    println!(
                        "published     best-value campaign: best={} P_s={} TTT={}s",
                        row.best_known, row.p_s, row.ttt_seconds
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            instance,
            solution,
            claimed,
            bundled,
            cache,
        } => {
            let inst = cache.load(&instance)?;
            let (payload, file_claim) = if bundled {
                let (hex, _, claim) = bundled_record(inst.id())
                    .ok_or_else(|| anyhow!("no bundled record solution for {}", inst.id()))?;
                (hex.to_string(), Some(claim))
            } else {
                let path = solution.ok_or_else(|| anyhow!("missing solution file (or use --bundled)"))?;
                let text = fs::read_to_string(&path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let sf = parse_solution_file(&text)?;
                if let Some(id) = &sf.instance {
                    if id != inst.id() {
                        bail!("solution file is for {id}, not {}", inst.id());
                    }
                }
                if let Some(n) = sf.n {
                    if n != inst.n() {
                        bail!("solution file declares n={n}, instance has n={}", inst.n());
                    }
                }
                (sf.payload, sf.claimed)
            };
            let claimed = claimed.or(file_claim);
            let cfg = decode_hex_str(&payload, inst.n())?;
            let report = certify(&inst, &cfg, claimed)?;
            let quality = report
                .quality
                .map(metrics::format_quality_percent)
                .unwrap_or_else(|| "-".into());
            let verdict = match report.matches_claim {
                Some(true) => " MATCH",
                Some(false) => " MISMATCH",
                None => "",
            };
            println!("cut={} quality={}{}", report.cut, quality, verdict);
            if report.claim_ok() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Cmd::Solve {
            instance,
            solver,
            seed,
            out_solution,
            cache,
        } => {
            let inst = cache.load(&instance)?;
            let params = solver.resolve(inst.id())?;
            let bench = run_trials(&inst, &params, 1, None, 1, seed)?;
            let trial = &bench.trials[0];
            let quality = registry_lookup(inst.id())
                .map(|meta| {
                    metrics::format_quality_percent(trial.best_value as f64 / meta.best_known as f64)
                })
                .unwrap_or_else(|| "-".into());
            println!(
                "{} {} seed={} best={} quality={} sweeps={} t={:.3}s",
                inst.id(),
                params.kind.as_str(),
                seed,
                trial.best_value,
                quality,
                trial.sweeps_executed,
                trial.wall_time
            );
            if let Some(path) = out_solution {
                let mut file = fs::File::create(&path)
                    .with_context(|| format!("creating {}", path.display()))?;
                writeln!(file, "# best solution found by {}", params.kind.as_str())?;
                writeln!(
                    file,
                    "instance={} n={} claimed={}",
                    inst.id(),
                    inst.n(),
                    trial.best_value
                )?;
                writeln!(file, "{}", encode_hex_solution(&trial.best_config))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bench {
            instance,
            solver,
            trials,
            threads,
            seed,
            target,
            out,
            csv,
            cache,
        } => {
            let inst = cache.load(&instance)?;
            let params = solver.resolve(inst.id())?;
            let bench = run_trials(&inst, &params, trials, target, threads, seed)?;
            let report = BenchReport::new(inst.id(), &params, &bench);
            print!("{}", report.table());
            if let Some(path) = out {
                fs::write(&path, report.to_json())
                    .with_context(|| format!("writing {}", path.display()))?;
                println!("report written to {}", path.display());
            }
            if let Some(path) = csv {
                append_csv(&path, &report)?;
                println!("csv row appended to {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::ProjectBls {
            avg_time_per_success,
            successes,
            runs,
        } => {
            let p = metrics::bls_projection(avg_time_per_success, successes, runs)?;
            println!(
                "P_s={} avg_time_per_run={:.4}s projected_TTT={:.1}s",
                p.p_s, p.avg_time_per_run, p.projected_ttt
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Report { json, csv } => {
            let text = fs::read_to_string(&json)
                .with_context(|| format!("reading {}", json.display()))?;
            let report = BenchReport::from_json(&text)?;
            if !report.recompute_consistent() {
                bail!("report aggregates do not match its per-trial records");
            }
            match csv {
                Some(path) => {
                    append_csv(&path, &report)?;
                    println!("csv row appended to {}", path.display());
                }
                None => print!("{}", report.table()),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn append_csv(path: &Path, report: &BenchReport) -> Result<()> {
    let add_header = !path.exists();
    let mut file = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening {}", path.display()))?;
    if add_header {
        writeln!(file, "{}", BenchReport::csv_header())?;
    }
    writeln!(file, "{}", report.csv_row())?;
    Ok(())
}
