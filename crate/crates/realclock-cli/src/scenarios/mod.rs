//! Scenario dispatch: validate the whole config, compute in memory, then
//! hand the rendered tables back for writing. Nothing touches the disk
//! from here.

mod conditional_prob;
mod evolve;
mod spin_cavity;
mod sweep;
mod undecidability;

use crate::config::{RawConfig, Validator};
use crate::error::CliError;
use crate::table::ResultTable;

pub type TableSet = Vec<(String, ResultTable)>;

pub fn run(kind: &str, raw: &RawConfig, seed_override: Option<u64>) -> Result<TableSet, CliError> {
    // Common [scenario] block; each scenario then validates its own keys.
    let mut v = Validator::new(raw);
    let declared = v.choice(
        "scenario",
        "kind",
        &[
            "evolve",
            "spin-cavity",
            "undecidability",
            "conditional-prob",
            "sweep",
        ],
    );
    let config_seed = v.u64("scenario", "seed");
    if declared != kind {
        v.problem(format!(
            "config declares kind = {declared} but the {kind} subcommand was invoked"
        ));
    }
    let seed = seed_override.unwrap_or(config_seed);

    match kind {
        "evolve" => evolve::run(v, seed),
        "spin-cavity" => spin_cavity::run(v, seed),
        "undecidability" => undecidability::run(v, seed),
        "conditional-prob" => conditional_prob::run(v, seed),
        "sweep" => sweep::run(v, seed),
        other => Err(CliError::Config(vec![format!("unknown scenario {other}")])),
    }
}

/// Shared metadata header: artifact version, scenario, verbatim seed and
/// the unit-scaling factors for this run.
pub(crate) fn base_metadata(
    table: &mut ResultTable,
    scenario: &str,
    seed: u64,
    seconds_per_time_unit: f64,
) {
    table.meta(
        "artifact",
        format!("realclock {}", env!("CARGO_PKG_VERSION")),
    );
    table.meta("scenario", scenario);
    table.meta("seed", seed);
    table.meta_num("seconds_per_time_unit", seconds_per_time_unit);
    table.meta_num("per_second_per_energy_unit", 1.0 / seconds_per_time_unit);
}

pub(crate) fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

pub(crate) fn compute_err(source: realclock::Error, context: &str) -> CliError {
    CliError::Compute {
        source,
        context: context.to_string(),
    }
}
