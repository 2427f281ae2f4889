//! `causalgain` — simulate how fast interventions reveal which of two
//! categorical variables causes the other, and rank candidate interventions
//! on real count data.

mod output;

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use causalgain::experiments::{
    self, ExperimentConfig, DEFAULT_N_GRID, EXTENDED_N_GRID, SWEEP_N_GRID,
};
use causalgain::{gain_reports, io, Policy};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "causalgain", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gain curves for a correlated binary pair (one dominant diagonal).
    Example1(CurveArgs),
    /// Gain curves for a 4x4 joint with one dominant cell: the frequent
    /// value is the uninformative one to clamp.
    Example2(CurveArgs),
    /// Gain curves for a 4x4 joint with a single best intervention,
    /// do(X=1); converges slowly, so the default grid is longer.
    Example3(CurveArgs),
    /// Greedy versus random intervention selection on random worlds.
    Example4(ActiveArgs),
    /// How often greedy selection picks the best intervention, as a
    /// function of the Dirichlet prior.
    AlphaSweep(SweepArgs),
    /// Gain curves for a user-supplied world JSON.
    Curves(UserCurveArgs),
    /// Rank interventions by expected gain for a counts CSV.
    Gain(GainArgs),
}

#[derive(Args)]
struct CurveArgs {
    /// Peak weight of the true joint (default 0.9; example3 defaults 0.5).
    #[arg(long)]
    rho: Option<f64>,
    /// Dirichlet concentration of the agent's prior.
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    /// Comma-separated observation counts (example3 extends to 10000).
    #[arg(long, value_delimiter = ',')]
    n_grid: Option<Vec<u64>>,
    /// Replications per grid point.
    #[arg(long, default_value_t = 1000)]
    reps: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output directory.
    #[arg(long, default_value = "runs")]
    out: PathBuf,
    /// Worker threads (0 = default pool). Results do not depend on this.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct ActiveArgs {
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    /// Comma-separated observation counts.
    #[arg(long, value_delimiter = ',')]
    n_grid: Option<Vec<u64>>,
    /// Simulated problems per grid point.
    #[arg(long, default_value_t = 100_000)]
    reps: u64,
    /// Categories per variable in the random worlds.
    #[arg(long, default_value_t = 8)]
    k: usize,
    /// Which selection policies to run.
    #[arg(long, value_enum, default_value_t = PolicyArg::Both)]
    policy: PolicyArg,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "runs")]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct SweepArgs {
    /// Peak weight of the single-best-intervention joint.
    #[arg(long, default_value_t = 0.5)]
    rho: f64,
    /// Comma-separated Dirichlet concentrations to sweep.
    #[arg(long, value_delimiter = ',')]
    alpha_grid: Option<Vec<f64>>,
    /// Comma-separated observation counts.
    #[arg(long, value_delimiter = ',')]
    n_grid: Option<Vec<u64>>,
    #[arg(long, default_value_t = 1000)]
    reps: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "runs")]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct UserCurveArgs {
    /// World JSON: {"k_x":..,"k_y":..,"joint":[[..]],"orientation":"XtoY"}.
    #[arg(long)]
    world: PathBuf,
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    #[arg(long, value_delimiter = ',')]
    n_grid: Option<Vec<u64>>,
    #[arg(long, default_value_t = 1000)]
    reps: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "runs")]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct GainArgs {
    /// Counts CSV with header x,y,count and 1-based indices.
    counts: PathBuf,
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    /// Categories for X (default: largest index in the file, at least 2).
    #[arg(long)]
    k_x: Option<usize>,
    /// Categories for Y (default: largest index in the file, at least 2).
    #[arg(long)]
    k_y: Option<usize>,
    /// World JSON; adds a realized-gain column.
    #[arg(long)]
    world: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    Both,
    Greedy,
    Random,
}

impl PolicyArg {
    fn policies(self) -> Vec<Policy> {
        match self {
            PolicyArg::Both => vec![Policy::Greedy, Policy::Random],
            PolicyArg::Greedy => vec![Policy::Greedy],
            PolicyArg::Random => vec![Policy::Random],
        }
    }
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Example1(args) => run_example_curves(1, args),
        Command::Example2(args) => run_example_curves(2, args),
        Command::Example3(args) => run_example_curves(3, args),
        Command::Example4(args) => run_example4(args),
        Command::AlphaSweep(args) => run_alpha_sweep(args),
        Command::Curves(args) => run_user_curves(args),
        Command::Gain(args) => run_gain(args),
    }
}

fn run_example_curves(which: u8, args: CurveArgs) -> Result<()> {
    let (default_rho, default_grid): (f64, &[u64]) = match which {
        3 => (0.5, EXTENDED_N_GRID),
        _ => (0.9, DEFAULT_N_GRID),
    };
    let rho = args.rho.unwrap_or(default_rho);
    let cfg = ExperimentConfig {
        rho,
        alpha: args.alpha,
        n_grid: args.n_grid.unwrap_or_else(|| default_grid.to_vec()),
        reps: args.reps,
        seed: args.seed,
        threads: args.threads,
        ..ExperimentConfig::default()
    };
    let world = match which {
        1 => experiments::example1_joint(rho)?,
        2 => experiments::example2_joint(rho)?,
        _ => experiments::example3_joint(rho)?,
    };
    let rows = experiments::run_gain_curves(&world, &cfg)?;

    fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    let name = format!("example{which}");
    let csv = args.out.join(format!("{name}.csv"));
    output::write_curves_csv(&csv, &rows)?;
    let mut outputs = vec![csv];
    if which == 1 {
        // The binary pair has an exact mean-field curve; emit it alongside
        // the Monte-Carlo averages for plotting.
        let closed = args.out.join("example1_closed_form.csv");
        output::write_closed_form_csv(&closed, rho, args.alpha, &cfg.n_grid)?;
        outputs.push(closed);
    }
    output::write_manifest(&args.out, &name, serde_json::to_value(&cfg)?, cfg.seed, &outputs)
}

fn run_example4(args: ActiveArgs) -> Result<()> {
    let cfg = ExperimentConfig {
        alpha: args.alpha,
        n_grid: args.n_grid.unwrap_or_else(|| DEFAULT_N_GRID.to_vec()),
        reps: args.reps,
        seed: args.seed,
        k: args.k,
        policies: args.policy.policies(),
        threads: args.threads,
        ..ExperimentConfig::default()
    };
    let comparison = experiments::run_active_comparison(&cfg)?;

    fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    let csv = args.out.join("example4.csv");
    output::write_active_csv(&csv, &comparison)?;

    if let Some(greedy) = comparison.mean_gain_greedy {
        println!("overall greedy mean gain: {} bits", output::fmt6(greedy));
    }
    if let Some(random) = comparison.mean_gain_random {
        println!("overall random mean gain: {} bits", output::fmt6(random));
    }
    if let (Some(greedy), Some(random)) =
        (comparison.mean_gain_greedy, comparison.mean_gain_random)
    {
        println!("greedy/random ratio: {:.3}", greedy / random);
    }

    let mut config = serde_json::to_value(&cfg)?;
    config["overall_greedy"] = serde_json::json!(comparison.mean_gain_greedy);
    config["overall_random"] = serde_json::json!(comparison.mean_gain_random);
    output::write_manifest(&args.out, "example4", config, cfg.seed, &[csv])
}

fn run_alpha_sweep(args: SweepArgs) -> Result<()> {
    let cfg = ExperimentConfig {
        rho: args.rho,
        n_grid: args.n_grid.unwrap_or_else(|| SWEEP_N_GRID.to_vec()),
        alpha_grid: args
            .alpha_grid
            .unwrap_or_else(|| experiments::DEFAULT_ALPHA_GRID.to_vec()),
        reps: args.reps,
        seed: args.seed,
        threads: args.threads,
        ..ExperimentConfig::default()
    };
    let rows = experiments::run_alpha_sweep(&cfg)?;

    fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    let csv = args.out.join("alpha-sweep.csv");
    output::write_sweep_csv(&csv, &rows)?;
    output::write_manifest(&args.out, "alpha-sweep", serde_json::to_value(&cfg)?, cfg.seed, &[csv])
}

fn run_user_curves(args: UserCurveArgs) -> Result<()> {
    let world = io::read_world_json(&args.world)
        .with_context(|| format!("loading {}", args.world.display()))?;
    let cfg = ExperimentConfig {
        alpha: args.alpha,
        n_grid: args.n_grid.unwrap_or_else(|| DEFAULT_N_GRID.to_vec()),
        reps: args.reps,
        seed: args.seed,
        threads: args.threads,
        ..ExperimentConfig::default()
    };
    let rows = experiments::run_gain_curves(&world, &cfg)?;

    fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    let csv = args.out.join("curves.csv");
    output::write_curves_csv(&csv, &rows)?;
    let mut config = serde_json::to_value(&cfg)?;
    config["world"] = serde_json::json!(args.world.display().to_string());
    output::write_manifest(&args.out, "curves", config, cfg.seed, &[csv])
}

fn run_gain(args: GainArgs) -> Result<()> {
    let counts = io::read_counts_csv(&args.counts, args.alpha, args.k_x, args.k_y)
        .with_context(|| format!("loading {}", args.counts.display()))?;
    let world = match &args.world {
        Some(path) => {
            let world = io::read_world_json(path)
                .with_context(|| format!("loading {}", path.display()))?;
            if !world.matches(&counts) {
                bail!(
                    "dimension mismatch: world is {}x{} but counts are {}x{}",
                    world.k_x(),
                    world.k_y(),
                    counts.k_x(),
                    counts.k_y()
                );
            }
            Some(world)
        }
        None => None,
    };
    let reports = gain_reports(&counts, world.as_ref());
    print!("{}", output::render_gain_table(&reports));
    Ok(())
}
