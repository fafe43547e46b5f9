use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use graphest::io::load_edge_list;
use graphest::report::{self, AvgDegreeOut, ExactOut, TriangleOut};
use graphest_core::{avgdeg, oracle, triangle};
use graphest_core::{Profile, SearchOptions};

#[derive(Parser)]
#[command(name = "graphest", about = "Sublinear triangle-count and average-degree estimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProfileArg {
    Practical,
    Theoretical,
}

impl From<ProfileArg> for Profile {
    fn from(p: ProfileArg) -> Profile {
        match p {
            ProfileArg::Practical => Profile::Practical,
            ProfileArg::Theoretical => Profile::Theoretical,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct EstimateArgs {
    /// Edge-list file (`u v` per line, optional `# n=<N>` header).
    #[arg(long)]
    input: PathBuf,
    /// Accuracy parameter, in (0, 1).
    #[arg(long, default_value_t = 0.3)]
    eps: f64,
    #[arg(long, value_enum, default_value_t = ProfileArg::Practical)]
    profile: ProfileArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Independent repeats; repeat i uses master seed `seed + i`.
    #[arg(long, default_value_t = 1)]
    repeats: u64,
    /// Compare against the exact oracle and report the relative error.
    #[arg(long)]
    with_exact: bool,
    /// Budget the total query spend at `factor × m̂` before the exact
    /// fallback kicks in.
    #[arg(long)]
    budget_factor: Option<f64>,
    /// Invert the geometric-search acceptance direction.
    #[arg(long)]
    invert_accept: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

impl EstimateArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            accept_when_estimate_reaches_guess: !self.invert_accept,
            budget_factor: self.budget_factor,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps < 1.0) {
            bail!("--eps must be in (0, 1)");
        }
        if self.repeats < 1 {
            bail!("--repeats must be at least 1");
        }
        Ok(())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact counts from the oracles (reads the whole graph).
    Exact {
        #[arg(long)]
        input: PathBuf,
    },
    /// Sublinear triangle-count estimate.
    Triangles(EstimateArgs),
    /// Sublinear average-degree estimate.
    Avgdeg(EstimateArgs),
    /// Sweep fixtures × ε and emit a CSV table.
    Bench {
        /// Manifest file: one fixture path per line, `#` comments.
        #[arg(long)]
        manifest: PathBuf,
        /// ε grid; repeat the flag for more values.
        #[arg(long = "eps", default_values_t = [0.3, 0.5])]
        eps_grid: Vec<f64>,
        #[arg(long, value_enum, default_value_t = ProfileArg::Practical)]
        profile: ProfileArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        repeats: u64,
    },
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let start = Instant::now();
    match cli.command {
        Command::Exact { input } => cmd_exact(&input)?,
        Command::Triangles(args) => cmd_triangles(&args)?,
        Command::Avgdeg(args) => cmd_avgdeg(&args)?,
        Command::Bench {
            manifest,
            eps_grid,
            profile,
            seed,
            repeats,
        } => cmd_bench(&manifest, &eps_grid, profile.into(), seed, repeats)?,
    }
    // Wall time goes to stderr so stdout stays byte-identical per seed.
    eprintln!("wall_time_ms: {}", start.elapsed().as_millis());
    Ok(())
}

fn cmd_exact(input: &PathBuf) -> Result<()> {
    let graph = load_edge_list(input)?;
    let stats = graph.stats();
    let t = oracle::exact_triangles(&graph).t();
    let d_bar = oracle::exact_avg_degree(&graph).map_err(|e| anyhow::anyhow!("{e}"))?;
    let out = ExactOut::new(stats, t, d_bar, oracle::min_endpoint_sum(&graph));
    print!("{}", report::to_json(&out));
    Ok(())
}

/// Runs `repeats` seeded jobs on worker threads, preserving seed order.
fn run_repeats<T, F>(seed: u64, repeats: u64, job: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync,
{
    let mut results: Vec<Option<Result<T>>> = (0..repeats).map(|_| None).collect();
    std::thread::scope(|scope| {
        for (i, slot) in results.iter_mut().enumerate() {
            let job = &job;
            scope.spawn(move || {
                *slot = Some(job(seed + i as u64));
            });
        }
    });
    results
        .into_iter()
        .map(|slot| slot.expect("worker finished"))
        .collect()
}

fn cmd_triangles(args: &EstimateArgs) -> Result<()> {
    args.validate()?;
    let graph = load_edge_list(&args.input)?;
    let reference = args.with_exact.then(|| oracle::exact_triangles(&graph).t());
    let options = args.options();
    let profile: Profile = args.profile.into();
    let reports = run_repeats(args.seed, args.repeats, |seed| {
        triangle::count_triangles(&graph, args.eps, profile, seed, &options)
            .map_err(|e| anyhow::anyhow!("{e}"))
    })?;
    let outs: Vec<TriangleOut> = reports
        .iter()
        .map(|r| TriangleOut::new(r, reference))
        .collect();
    match args.format {
        Format::Json => print!("{}", report::to_json(&outs)),
        Format::Csv => {
            println!("seed,estimate,exact,m_hat,fallback,cap_hit,queries,relative_error");
            for o in &outs {
                println!(
                    "{},{},{},{},{},{},{},{}",
                    o.seed,
                    o.estimate,
                    o.exact.map_or(String::new(), |t| t.to_string()),
                    o.m_hat,
                    o.fallback_used,
                    o.cap_hit,
                    o.queries.total,
                    o.relative_error.map_or(String::new(), |e| e.to_string()),
                );
            }
        }
    }
    Ok(())
}

fn cmd_avgdeg(args: &EstimateArgs) -> Result<()> {
    args.validate()?;
    let graph = load_edge_list(&args.input)?;
    let reference = args
        .with_exact
        .then(|| oracle::exact_avg_degree(&graph))
        .transpose()
        .map_err(|e| anyhow::anyhow!("{e}"))?;
    let options = args.options();
    let profile: Profile = args.profile.into();
    let reports = run_repeats(args.seed, args.repeats, |seed| {
        avgdeg::estimate_avg_degree(&graph, args.eps, profile, seed, &options)
            .map(|r| (seed, r))
            .map_err(|e| anyhow::anyhow!("{e}"))
    })?;
    let outs: Vec<AvgDegreeOut> = reports
        .iter()
        .map(|(seed, r)| AvgDegreeOut::new(r, args.eps, profile.name(), *seed, reference))
        .collect();
    match args.format {
        Format::Json => print!("{}", report::to_json(&outs)),
        Format::Csv => {
            println!("seed,estimate,m_hat,confirmed_by_scan,queries,max_run_queries,relative_error");
            for o in &outs {
                println!(
                    "{},{},{},{},{},{},{}",
                    o.seed,
                    o.estimate,
                    o.m_hat,
                    o.confirmed_by_scan,
                    o.queries.total,
                    o.max_run_queries,
                    o.relative_error.map_or(String::new(), |e| e.to_string()),
                );
            }
        }
    }
    Ok(())
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    values[values.len() / 2]
}

fn cmd_bench(
    manifest: &PathBuf,
    eps_grid: &[f64],
    profile: Profile,
    seed: u64,
    repeats: u64,
) -> Result<()> {
    let text = std::fs::read_to_string(manifest)
        .with_context(|| format!("reading {}", manifest.display()))?;
    let base = manifest.parent().map(PathBuf::from).unwrap_or_default();
    println!(
        "graph,n,m,t,eps,profile,repeats,median_estimate,success_rate,median_queries,reference_cost"
    );
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let path = base.join(line);
        let graph = match load_edge_list(&path) {
            Ok(g) => g,
            Err(_) => {
                for &eps in eps_grid {
                    println!("{line},,,,{eps},{},,missing,,", profile.name());
                }
                continue;
            }
        };
        let t = oracle::exact_triangles(&graph).t();
        let stats = graph.stats();
        // Thm-1-style cost scale n/t^{1/3} + m^{3/2}/t, against which the
        // measured ledgers can be compared.
        let cost_ref = if t > 0 {
            stats.n as f64 / (t as f64).cbrt()
                + (stats.m as f64).powf(1.5) / t as f64
        } else {
            (stats.n + 2 * stats.m) as f64
        };
        for &eps in eps_grid {
            let options = SearchOptions::default();
            let reports = run_repeats(seed, repeats, |s| {
                triangle::count_triangles(&graph, eps, profile, s, &options)
                    .map_err(|e| anyhow::anyhow!("{e}"))
            })?;
            let mut estimates: Vec<f64> = reports.iter().map(|r| r.estimate).collect();
            let mut queries: Vec<f64> =
                reports.iter().map(|r| r.ledger.total() as f64).collect();
            let successes = reports
                .iter()
                .filter(|r| {
                    let truth = t as f64;
                    (r.estimate - truth).abs() <= eps * truth.max(1.0)
                })
                .count();
            println!(
                "{line},{},{},{t},{eps},{},{repeats},{},{},{},{}",
                stats.n,
                stats.m,
                profile.name(),
                median(&mut estimates),
                successes as f64 / repeats as f64,
                median(&mut queries),
                cost_ref,
            );
        }
    }
    Ok(())
}
