//! Undecidability scenario: verdict table over a log grid of environment
//! sizes, the critical size with its crossing residuals, and a sensitivity
//! table showing how the critical size responds to each physical input.

use realclock::clock::ClockModel;
use realclock::spincavity::SpinCavityParams;
use realclock::undecidability::{
    critical_n, decide_event, m_uncertainty_floor_log, PrecisionModel,
};

use super::{base_metadata, compute_err, TableSet};
use crate::config::Validator;
use crate::error::CliError;
use crate::table::{Column, ResultTable};

#[derive(Clone)]
struct Inputs {
    b_field: f64,
    gamma1: f64,
    gamma2: f64,
    tau: f64,
    t_planck: f64,
    exponent_a: f64,
    width_scale: f64,
    l_planck: f64,
    r_universe: f64,
}

impl Inputs {
    fn pieces(&self) -> Result<(SpinCavityParams, ClockModel, PrecisionModel), realclock::Error> {
        let template = SpinCavityParams::uniform(
            1,
            self.b_field,
            self.gamma1,
            self.gamma2,
            0.0,
            self.tau,
        )?;
        let clock = ClockModel::gaussian(self.t_planck, self.exponent_a, self.width_scale)?;
        let precision = PrecisionModel::new(self.l_planck, self.r_universe)?;
        Ok((template, clock, precision))
    }

    fn critical(&self) -> Result<u64, realclock::Error> {
        let (template, clock, precision) = self.pieces()?;
        critical_n(&template, &clock, &precision)
    }
}

pub fn run(mut v: Validator, seed: u64) -> Result<TableSet, CliError> {
    let inputs = Inputs {
        b_field: v.f64("cavity", "b_field"),
        gamma1: v.f64("cavity", "gamma1"),
        gamma2: v.f64("cavity", "gamma2"),
        tau: v.f64("cavity", "tau"),
        t_planck: v.f64_or("clock", "t_planck", 1e-44),
        exponent_a: v.f64_or("clock", "exponent_a", 1.0 / 3.0),
        width_scale: v.f64_or("clock", "width_scale", 1.0),
        l_planck: v.f64_or("precision", "l_planck", 1.616e-35),
        r_universe: v.f64_or("precision", "r_universe", 4.4e26),
    };
    let n_min = v.u64_or("scan", "n_min", 1);
    let n_max = v.u64_or("scan", "n_max", 1_000_000_000);
    let scan_points = v.usize_or("scan", "points", 25);
    let seconds_per_time_unit = v.f64_or("units", "seconds_per_time_unit", 1.0);

    if inputs.tau <= 0.0 {
        v.problem("tau must be positive");
    }
    if n_min == 0 || n_max <= n_min {
        v.problem("need 1 <= n_min < n_max");
    }
    if !(2..=10_000).contains(&scan_points) {
        v.problem("scan points must lie in 2..=10000");
    }
    v.finish().map_err(CliError::Config)?;

    let (template, clock, precision) = inputs
        .pieces()
        .map_err(|e| compute_err(e, "undecidability: inputs"))?;
    let reference = decide_event(&template, &clock, &precision)
        .map_err(|e| compute_err(e, "undecidability: reference verdict"))?;
    let kappa = reference.diagnostics.kappa;
    let n_star = inputs
        .critical()
        .map_err(|e| compute_err(e, "undecidability: critical size search"))?;

    let meta = |table: &mut ResultTable| {
        base_metadata(table, "undecidability", seed, seconds_per_time_unit);
        table.meta_num("b_field", inputs.b_field);
        table.meta_num("gamma1", inputs.gamma1);
        table.meta_num("gamma2", inputs.gamma2);
        table.meta_num("tau", inputs.tau);
        table.meta_num("t_planck", inputs.t_planck);
        table.meta_num("exponent_a", inputs.exponent_a);
        table.meta_num("width_scale", inputs.width_scale);
        table.meta_num("l_planck", inputs.l_planck);
        table.meta_num("r_universe", inputs.r_universe);
        table.meta_num("angle_floor", reference.diagnostics.angle_floor);
        table.meta_num("kappa_per_spin", kappa);
    };

    // Verdict table on a log grid, with the crossing pair spliced in.
    let mut grid: Vec<u64> = Vec::new();
    let (ln_lo, ln_hi) = ((n_min as f64).ln(), (n_max as f64).ln());
    for i in 0..scan_points {
        let x = ln_lo + (ln_hi - ln_lo) * i as f64 / (scan_points - 1) as f64;
        grid.push(x.exp().round().max(1.0) as u64);
    }
    if n_star > 1 {
        grid.push(n_star - 1);
    }
    grid.push(n_star);
    grid.sort_unstable();
    grid.dedup();

    let mut verdicts = ResultTable::new();
    meta(&mut verdicts);
    let log_env = |n: u64| -kappa * n as f64;
    let log_floor = |n: u64| m_uncertainty_floor_log(&precision, n);
    verdicts.push(Column::integer("n", grid.iter().map(|&n| n as i64).collect()));
    verdicts.push(Column::real(
        "log_envelope",
        grid.iter().map(|&n| log_env(n)).collect(),
    ));
    verdicts.push(Column::real(
        "log_floor",
        grid.iter().map(|&n| log_floor(n)).collect(),
    ));
    verdicts.push(Column::integer(
        "event",
        grid.iter()
            .map(|&n| i64::from(log_env(n) <= log_floor(n)))
            .collect(),
    ));

    // The crossing itself.
    let mut nstar_table = ResultTable::new();
    meta(&mut nstar_table);
    nstar_table.push(Column::integer("n_star", vec![n_star as i64]));
    nstar_table.push(Column::real("log_envelope_at_n_star", vec![log_env(n_star)]));
    nstar_table.push(Column::real("log_floor_at_n_star", vec![log_floor(n_star)]));
    nstar_table.push(Column::integer(
        "event_below",
        vec![i64::from(log_env(n_star - 1) <= log_floor(n_star - 1))],
    ));
    nstar_table.push(Column::integer(
        "event_at",
        vec![i64::from(log_env(n_star) <= log_floor(n_star))],
    ));

    // One-at-a-time sensitivity of the critical size.
    let mut names = Vec::new();
    let mut factors = Vec::new();
    let mut stars = Vec::new();
    let mut status = Vec::new();
    let mut push_row = |name: &str, factor: f64, result: Result<u64, realclock::Error>| {
        names.push(name.to_string());
        factors.push(factor);
        match result {
            Ok(n) => {
                stars.push(n as i64);
                status.push("ok".to_string());
            }
            Err(realclock::Error::NoCrossing { .. }) => {
                stars.push(-1);
                status.push("no-crossing".to_string());
            }
            Err(e) => {
                stars.push(-1);
                status.push(format!("error: {e}").replace(',', ";"));
            }
        }
    };
    push_row("baseline", 1.0, Ok(n_star));
    for factor in [0.1, 10.0] {
        let scaled = |f: &dyn Fn(&mut Inputs)| {
            let mut m = inputs.clone();
            f(&mut m);
            m.critical()
        };
        push_row("b_field", factor, scaled(&|m| m.b_field *= factor));
        push_row(
            "gamma_split",
            factor,
            scaled(&|m| m.gamma1 = m.gamma2 + (m.gamma1 - m.gamma2) * factor),
        );
        push_row("tau", factor, scaled(&|m| m.tau *= factor));
        push_row("t_planck", factor, scaled(&|m| m.t_planck *= factor));
        push_row("width_scale", factor, scaled(&|m| m.width_scale *= factor));
        push_row("l_planck", factor, scaled(&|m| m.l_planck *= factor));
        push_row("r_universe", factor, scaled(&|m| m.r_universe *= factor));
    }
    let mut sensitivity = ResultTable::new();
    meta(&mut sensitivity);
    sensitivity.push(Column::text("parameter", names));
    sensitivity.push(Column::real("factor", factors));
    sensitivity.push(Column::integer("n_star", stars));
    sensitivity.push(Column::text("status", status));

    Ok(vec![
        ("undecidability_verdicts.csv".to_string(), verdicts),
        ("undecidability_nstar.csv".to_string(), nstar_table),
        ("undecidability_sensitivity.csv".to_string(), sensitivity),
    ])
}
