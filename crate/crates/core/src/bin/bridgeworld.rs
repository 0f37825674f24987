use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bridgeworld::experiment::{self, Condition};
use bridgeworld::io::{self, split_override};
use bridgeworld::{Error, Result, WorldConfig64};

#[derive(Parser)]
#[command(name = "bridgeworld", version, about = "BridgeWorld virtue-learning simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one condition once and write per-iteration telemetry.
    Simulate {
        /// nl, s, s+e, pb, pb+e, ss or ss+e
        #[arg(long)]
        condition: Condition,
        #[command(flatten)]
        common: Common,
        /// Telemetry CSV output path.
        #[arg(long)]
        out: PathBuf,
        /// Optional SVG chart of mean virtues and scaled death rate.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run repeated simulations per condition and write summary statistics.
    Experiment {
        /// `all` or a comma-separated list of conditions.
        #[arg(long, default_value = "all")]
        conditions: String,
        #[arg(long, default_value_t = 10)]
        repeats: usize,
        #[command(flatten)]
        common: Common,
        /// Summary CSV output path.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 1000)]
    iterations: u64,
    /// Population size; overrides the config file when given.
    #[arg(long)]
    population: Option<usize>,
    /// Base seed (decimal u64).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Flat JSON file of configuration fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Configuration override, `key=value`; may be repeated.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

impl Common {
    /// Defaults, then the file, then `--set`, then `--population`.
    fn base_config(&self) -> Result<WorldConfig64> {
        let overrides = self
            .overrides
            .iter()
            .map(|pair| split_override(pair).map(|(k, v)| (k.to_string(), v.to_string())))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let mut cfg: WorldConfig64 = io::parse_config(self.config.as_deref(), &overrides)?;
        if let Some(population) = self.population {
            cfg.population = population;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_conditions(list: &str) -> Result<Vec<Condition>> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(Condition::ALL.to_vec());
    }
    list.split(',').map(|c| c.parse::<Condition>().map_err(Error::InvalidInput)).collect()
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate { condition, common, out, svg } => {
            let config = condition.configure(&common.base_config()?);
            config.validate()?;
            let rows = experiment::run_config(&config, common.iterations, common.seed)?;
            io::write_telemetry_csv(&out, &rows)?;
            if let Some(svg) = svg {
                io::write_svg(&svg, &rows)?;
            }
            let last = rows.last().expect("at least one iteration");
            println!(
                "{condition}: seed {} iterations {} deaths {} (starved {}, drowned {}) death rate {:.6}",
                common.seed,
                last.iteration,
                last.deaths_total,
                last.deaths_starved,
                last.deaths_drowned,
                last.death_rate
            );
        }
        Command::Experiment { conditions, repeats, common, out } => {
            let conditions = parse_conditions(&conditions)?;
            let base = common.base_config()?;
            let rows = experiment::run_suite(&conditions, &base, repeats, common.iterations, common.seed)?;
            io::write_summary_csv(&out, &rows)?;
            for r in &rows {
                let sd = r.sd_death_rate.map(|s| format!("{s:.3}")).unwrap_or_else(|| "-".into());
                println!(
                    "{:<5} M={:.3} SD={} (/5: {:.3})",
                    r.condition.label(),
                    r.mean_death_rate,
                    sd,
                    r.mean_death_rate / experiment::PLOT_SCALE
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
