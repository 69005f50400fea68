use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rwsum::report::{emit, preset, render, run_diagnostics, run_experiment, ExperimentConfig, Format, Mode, Preset};

/// Tail probabilities of randomly weighted sums with FGM-dependent claims.
#[derive(Parser)]
#[command(name = "rwsum", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Joint tail P(S > x, T > y) over the config's grid.points.
    Joint(RunArgs),
    /// Sum tail P(S + T > z) over the config's grid.thresholds.
    Sum(RunArgs),
    /// Discounted two-line ruin; the config's mode picks risk_joint or risk_sum.
    Risk(RunArgs),
    /// Second-order ratios, pair expansion and copula sampler checks (Markdown).
    Diag(RunArgs),
    /// Run a built-in table reproduction.
    Preset {
        #[arg(value_parser = parse_preset)]
        name: Preset,
        /// Write the preset's config to this file and exit.
        #[arg(long, value_name = "PATH")]
        write_config: Option<PathBuf>,
        #[command(flatten)]
        run: Overrides,
    },
}

#[derive(Args)]
struct RunArgs {
    /// TOML experiment config.
    #[arg(long, short)]
    config: Option<PathBuf>,
    #[command(flatten)]
    run: Overrides,
}

#[derive(Args)]
struct Overrides {
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo samples per replicate.
    #[arg(long)]
    samples: Option<usize>,
    /// Independent replicates.
    #[arg(long)]
    reps: Option<usize>,
    /// Worker threads; never changes results.
    #[arg(long)]
    threads: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse().map_err(|e: rwsum::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: rwsum::Error| e.to_string())
}

impl Overrides {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        if let Some(s) = self.seed {
            cfg.mc.seed = s;
        }
        if let Some(n) = self.samples {
            cfg.mc.n_samples = n;
        }
        if let Some(r) = self.reps {
            cfg.mc.n_reps = r;
        }
        if let Some(p) = &self.out {
            cfg.output.path = Some(p.clone());
        }
        if let Some(f) = self.format {
            cfg.output.format = f;
        }
    }

    fn init_threads(&self) -> Result<()> {
        if let Some(t) = self.threads {
            if t == 0 {
                bail!("--threads must be at least 1");
            }
            rayon::ThreadPoolBuilder::new().num_threads(t).build_global().context("configuring the thread pool")?;
        }
        Ok(())
    }
}

fn load(path: Option<&Path>) -> Result<ExperimentConfig> {
    let path = path.context("--config is required for this subcommand")?;
    ExperimentConfig::load(path).with_context(|| format!("loading {}", path.display()))
}

fn write_text(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout().lock().write_all(text.as_bytes()).context("writing to standard output"),
    }
}

fn run_table(cfg: &ExperimentConfig) -> Result<()> {
    let rows = run_experiment(cfg)?;
    for r in &rows {
        for w in &r.warnings {
            eprintln!("warning: {w}");
        }
    }
    match &cfg.output.path {
        Some(p) => emit(&rows, cfg.output.format, p)?,
        None => write_text(&render(&rows, cfg.output.format)?, None)?,
    }
    Ok(())
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("error")).init();
    let cli = Cli::parse();
    match cli.command {
        Command::Joint(a) => subcommand(a, &[Mode::Joint], "joint"),
        Command::Sum(a) => subcommand(a, &[Mode::Sum], "sum"),
        Command::Risk(a) => subcommand(a, &[Mode::RiskJoint, Mode::RiskSum], "risk_joint or risk_sum"),
        Command::Diag(a) => subcommand(a, &[Mode::Diag], "diag"),
        Command::Preset { name, write_config, run } => {
            let mut cfg = preset(name);
            run.apply(&mut cfg);
            cfg.validate()?;
            if let Some(p) = write_config {
                cfg.save(&p)?;
                return Ok(());
            }
            if name == Preset::Table1 {
                eprintln!(
                    "note: the weight interval behind this table is unpublished; \
                     weights are assumed U[1,2] on both lines, so ratios are indicative only"
                );
            }
            run.init_threads()?;
            run_table(&cfg)
        }
    }
}

fn subcommand(a: RunArgs, modes: &[Mode], want: &str) -> Result<()> {
    let mut cfg = load(a.config.as_deref())?;
    if !modes.contains(&cfg.mode) {
        bail!("mode: this subcommand needs mode = {want}, config has {:?}", cfg.mode);
    }
    a.run.apply(&mut cfg);
    cfg.validate()?;
    a.run.init_threads()?;
    if cfg.mode == Mode::Diag {
        let md = run_diagnostics(&cfg)?.to_markdown();
        return write_text(&md, cfg.output.path.as_deref());
    }
    run_table(&cfg)
}
