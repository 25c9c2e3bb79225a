//! Evolve scenario: one diagonal system, one clock, both propagators.
//! Emits coherence moduli, the energy trace, and the per-sample
//! disagreement between the eigenbasis closed form and the integrator.

use realclock::clock::{ClockModel, ClockProfile};
use realclock::evolver::{lindblad_propagate_exact, lindblad_propagate_ode, SigmaProfile};
use realclock::qops::{expectation, max_abs_diff, DensityMatrix, Operator};
use num_complex::Complex64;

use super::{base_metadata, compute_err, linspace, TableSet};
use crate::config::Validator;
use crate::error::CliError;
use crate::table::{Column, ResultTable};

pub fn run(mut v: Validator, seed: u64) -> Result<TableSet, CliError> {
    let levels = v.f64_list("system", "levels");
    if levels.len() < 2 || levels.len() > 16 {
        v.problem("key 'levels' in [system] needs between 2 and 16 energies");
    }

    let profile_name = v.choice_or(
        "clock",
        "profile",
        &["ideal", "gaussian", "skew-gamma"],
        "gaussian",
    );
    let t_planck = v.f64_or("clock", "t_planck", 1e-44);
    let exponent_a = v.f64_or("clock", "exponent_a", 1.0 / 3.0);
    let width_scale = v.f64_or("clock", "width_scale", 1.0);

    let t_start = v.f64("grid", "t_start");
    let t_end = v.f64("grid", "t_end");
    let points = v.usize("grid", "points");
    let step = v.f64("ode", "step");
    let seconds_per_time_unit = v.f64_or("units", "seconds_per_time_unit", 1.0);

    if profile_name != "ideal" && t_start <= 0.0 {
        v.problem("t_start must be positive for non-ideal clocks (the rate is defined for T > 0)");
    }
    if t_end <= t_start {
        v.problem("t_end must exceed t_start");
    }
    if !(2..=100_000).contains(&points) {
        v.problem("grid points must lie in 2..=100000");
    }
    if step <= 0.0 {
        v.problem("ode step must be positive");
    }
    v.finish().map_err(CliError::Config)?;

    let profile = match profile_name.as_str() {
        "ideal" => ClockProfile::IdealDelta,
        "gaussian" => ClockProfile::GaussianGrowingWidth,
        _ => ClockProfile::SkewGammaGrowingWidth,
    };
    let clock = ClockModel::new(t_planck, exponent_a, profile, width_scale)
        .map_err(|e| compute_err(e, "evolve: clock model"))?;
    let sigma = SigmaProfile::from_clock(&clock);

    let dim = levels.len();
    let h = Operator::diagonal(&levels);
    let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
    let rho0 = DensityMatrix::from_pure(&vec![amp; dim])
        .map_err(|e| compute_err(e, "evolve: initial state"))?;

    let times = linspace(t_start, t_end, points);
    let exact = lindblad_propagate_exact(&rho0, &h, &sigma, &times)
        .map_err(|e| compute_err(e, "evolve: exact propagation"))?;
    let ode = lindblad_propagate_ode(&rho0, &h, &sigma, &times, step)
        .map_err(|e| compute_err(e, "evolve: ode propagation"))?;

    let mut table = ResultTable::new();
    base_metadata(&mut table, "evolve", seed, seconds_per_time_unit);
    table.meta(
        "levels",
        levels
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", "),
    );
    table.meta("clock_profile", &profile_name);
    table.meta_num("t_planck", t_planck);
    table.meta_num("exponent_a", exponent_a);
    table.meta_num("width_scale", width_scale);
    table.meta_num("t_start", t_start);
    table.meta_num("t_end", t_end);
    table.meta("points", points);
    table.meta_num("ode_step", step);
    match sigma {
        SigmaProfile::Constant { value } => {
            table.meta("sigma", format!("constant {value}"));
        }
        SigmaProfile::PowerLaw { prefactor, exponent } => {
            table.meta("sigma", format!("power-law {prefactor} * T^{exponent}"));
        }
    }

    table.push(Column::real("t", times.clone()));
    for i in 0..dim {
        for j in (i + 1)..dim {
            let data: Vec<f64> = exact
                .states
                .iter()
                .map(|s| s.entries()[[i, j]].norm())
                .collect();
            table.push(Column::real(&format!("coh_{i}_{j}"), data));
        }
    }
    let energy: Vec<f64> = exact
        .states
        .iter()
        .map(|s| expectation(&h, s).map(|e| e.re))
        .collect::<Result<_, _>>()
        .map_err(|e| compute_err(e, "evolve: energy trace"))?;
    table.push(Column::real("energy", energy));
    table.push(Column::real(
        "trace",
        exact.states.iter().map(|s| s.trace().re).collect(),
    ));
    table.push(Column::real(
        "ode_delta",
        exact
            .states
            .iter()
            .zip(&ode.states)
            .map(|(a, b)| max_abs_diff(a.entries(), b.entries()))
            .collect(),
    ));

    Ok(vec![("evolve.csv".to_string(), table)])
}
