//! Experimental conditions, repeated runs and death-rate statistics.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::env::{World, WorldConfig};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::virtue::EType;

/// Divisor applied to the death rate for plotting alongside virtue means.
pub const PLOT_SCALE: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// No e-type, no learning: only selection through death and rebirth.
    NoLearning,
    Selfish,
    SelfishExemplars,
    PraiseBlame,
    PraiseBlameExemplars,
    SelfishSelfless,
    SelfishSelflessExemplars,
}

impl Condition {
    pub const ALL: [Condition; 7] = [
        Condition::NoLearning,
        Condition::Selfish,
        Condition::SelfishExemplars,
        Condition::PraiseBlame,
        Condition::PraiseBlameExemplars,
        Condition::SelfishSelfless,
        Condition::SelfishSelflessExemplars,
    ];

    /// `(etype, learning_enabled, exemplars_enabled)`.
    pub fn switches(self) -> (EType, bool, bool) {
        match self {
            Condition::NoLearning => (EType::None, false, false),
            Condition::Selfish => (EType::Selfish, true, false),
            Condition::SelfishExemplars => (EType::Selfish, true, true),
            Condition::PraiseBlame => (EType::PraiseBlame, true, false),
            Condition::PraiseBlameExemplars => (EType::PraiseBlame, true, true),
            Condition::SelfishSelfless => (EType::SelfishSelfless, true, false),
            Condition::SelfishSelflessExemplars => (EType::SelfishSelfless, true, true),
        }
    }

    /// Copies `base` with this condition's switches applied.
    pub fn configure<T: Scalar>(self, base: &WorldConfig<T>) -> WorldConfig<T> {
        let (etype, learning_enabled, exemplars_enabled) = self.switches();
        WorldConfig { etype, learning_enabled, exemplars_enabled, ..base.clone() }
    }

    pub fn label(self) -> &'static str {
        match self {
            Condition::NoLearning => "NL",
            Condition::Selfish => "S",
            Condition::SelfishExemplars => "S+E",
            Condition::PraiseBlame => "PB",
            Condition::PraiseBlameExemplars => "PB+E",
            Condition::SelfishSelfless => "SS",
            Condition::SelfishSelflessExemplars => "SS+E",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Condition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s.trim().to_ascii_lowercase().chars().filter(|c| *c != '/').collect();
        Ok(match key.as_str() {
            "nl" => Condition::NoLearning,
            "s" => Condition::Selfish,
            "s+e" => Condition::SelfishExemplars,
            "pb" => Condition::PraiseBlame,
            "pb+e" => Condition::PraiseBlameExemplars,
            "ss" => Condition::SelfishSelfless,
            "ss+e" => Condition::SelfishSelflessExemplars,
            _ => return Err(format!("unknown condition `{s}`")),
        })
    }
}

/// State of one run after one cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct TelemetryRow<T: Scalar = f64> {
    pub iteration: u64,
    pub deaths_total: u64,
    pub deaths_starved: u64,
    pub deaths_drowned: u64,
    pub mean_courage: T,
    pub mean_generosity: T,
    pub mean_honesty: T,
    pub death_rate: T,
    pub death_rate_plot: T,
}

/// Mean and spread of final death rates over repeated runs of one condition.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow<T: Scalar = f64> {
    pub condition: Condition,
    pub repeats: usize,
    pub mean_death_rate: T,
    /// Sample standard deviation; absent for a single run.
    pub sd_death_rate: Option<T>,
    pub base_seed: u64,
}

/// Cumulative deaths per elapsed cycle.
pub fn death_rate<T: Scalar>(total_deaths: u64, cycles: u64) -> Result<T> {
    if cycles == 0 {
        return Err(Error::InvalidInput("death rate needs at least one cycle".into()));
    }
    Ok(T::lit(total_deaths as f64) / T::lit(cycles as f64))
}

pub fn death_rate_plot<T: Scalar>(total_deaths: u64, cycles: u64) -> Result<T> {
    Ok(death_rate::<T>(total_deaths, cycles)? / T::lit(PLOT_SCALE))
}

/// Mean and sample (n - 1) standard deviation.
pub fn mean_and_sd<T: Scalar>(values: &[T]) -> (T, Option<T>) {
    let n = values.len();
    if n == 0 {
        return (T::nan(), None);
    }
    let count = T::lit(n as f64);
    let mean = values.iter().copied().sum::<T>() / count;
    let sd = (n >= 2).then(|| {
        let ss = values.iter().map(|&v| (v - mean) * (v - mean)).sum::<T>();
        (ss / (count - T::one())).sqrt()
    });
    (mean, sd)
}

/// Seed of the `run_index`-th run of a suite.
pub fn run_seed(base_seed: u64, run_index: usize) -> u64 {
    base_seed.wrapping_add(run_index as u64)
}

/// Runs `iterations` cycles from `config`, one telemetry row per cycle.
pub fn run_config<T: Scalar>(config: &WorldConfig<T>, iterations: u64, seed: u64) -> Result<Vec<TelemetryRow<T>>> {
    if iterations == 0 {
        return Err(Error::InvalidInput("iterations must be at least 1".into()));
    }
    let mut world = World::new(config.clone(), seed)?;
    let mut rows = Vec::with_capacity(iterations as usize);
    for _ in 0..iterations {
        let report = world.run_cycle();
        rows.push(TelemetryRow {
            iteration: report.cycle,
            deaths_total: world.total_deaths,
            deaths_starved: world.deaths_starved,
            deaths_drowned: world.deaths_drowned,
            mean_courage: report.mean.courage,
            mean_generosity: report.mean.generosity,
            mean_honesty: report.mean.honesty,
            death_rate: death_rate(world.total_deaths, report.cycle)?,
            death_rate_plot: death_rate_plot(world.total_deaths, report.cycle)?,
        });
    }
    Ok(rows)
}

/// Runs one condition with default parameters and the given population.
pub fn run_condition<T: Scalar>(
    condition: Condition,
    iterations: u64,
    population: usize,
    seed: u64,
) -> Result<Vec<TelemetryRow<T>>> {
    let base = WorldConfig { population, ..WorldConfig::default() };
    run_config(&condition.configure(&base), iterations, seed)
}

/// Final telemetry row of each of `repeats` runs, in run order.
pub fn run_repeats<T: Scalar>(
    condition: Condition,
    base: &WorldConfig<T>,
    repeats: usize,
    iterations: u64,
    base_seed: u64,
) -> Result<Vec<TelemetryRow<T>>> {
    let config = condition.configure(base);
    config.validate()?;
    (0..repeats)
        .into_par_iter()
        .map(|run| {
            let rows = run_config(&config, iterations, run_seed(base_seed, run))?;
            Ok(rows.into_iter().last().expect("at least one iteration"))
        })
        .collect()
}

/// One summary row per condition, in the order given.
pub fn run_suite<T: Scalar>(
    conditions: &[Condition],
    base: &WorldConfig<T>,
    repeats: usize,
    iterations: u64,
    base_seed: u64,
) -> Result<Vec<SummaryRow<T>>> {
    if repeats == 0 {
        return Err(Error::InvalidInput("repeats must be at least 1".into()));
    }
    conditions
        .par_iter()
        .map(|&condition| {
            let finals = run_repeats(condition, base, repeats, iterations, base_seed)?;
            let rates: Vec<T> = finals.iter().map(|r| r.death_rate).collect();
            let (mean_death_rate, sd_death_rate) = mean_and_sd(&rates);
            Ok(SummaryRow { condition, repeats, mean_death_rate, sd_death_rate, base_seed })
        })
        .collect()
}
