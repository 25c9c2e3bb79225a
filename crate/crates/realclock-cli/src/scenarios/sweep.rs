//! Sweep scenario: map one scalar target over a one-parameter grid.
//! Grid points are independent and pure, so they fan out across worker
//! threads; results are assembled in grid order, which keeps the output
//! byte-stable regardless of the worker count (capped by
//! REALCLOCK_THREADS).

use std::sync::Mutex;

use realclock::clock::ClockModel;
use realclock::evolver::{damping_log, SigmaProfile};
use realclock::spincavity::{m_envelope_scalar, m_modified_log_magnitude, SpinCavityParams};
use realclock::undecidability::{critical_n, PrecisionModel};

use super::{base_metadata, compute_err, linspace, TableSet};
use crate::config::Validator;
use crate::error::CliError;
use crate::table::{Column, ResultTable};

#[derive(Clone)]
enum Target {
    MEnvelope {
        n_env: u64,
        b_field: f64,
        gamma1: f64,
        gamma2: f64,
        tau: f64,
        t_planck: f64,
        width_scale: f64,
    },
    CriticalN {
        b_field: f64,
        gamma1: f64,
        gamma2: f64,
        tau: f64,
        t_planck: f64,
        exponent_a: f64,
        width_scale: f64,
        l_planck: f64,
        r_universe: f64,
    },
    DampingEnvelope {
        delta_e: f64,
        sigma: SigmaProfile,
    },
    MModifiedMag {
        n_env: usize,
        b_field: f64,
        gamma1: f64,
        gamma2: f64,
        t_reading: f64,
    },
}

impl Target {
    fn allowed_params(&self) -> &'static [&'static str] {
        match self {
            Target::MEnvelope { .. } => &["tau", "b_field", "n_env"],
            Target::CriticalN { .. } => &["tau", "b_field", "r_universe", "t_planck", "l_planck"],
            Target::DampingEnvelope { .. } => &["t"],
            Target::MModifiedMag { .. } => &["theta", "t_reading"],
        }
    }

    fn value_columns(&self) -> &'static [&'static str] {
        match self {
            Target::MEnvelope { .. } => &["log_envelope", "envelope"],
            Target::CriticalN { .. } => &["n_star"],
            Target::DampingEnvelope { .. } => &["log_envelope", "envelope"],
            Target::MModifiedMag { .. } => &["log_magnitude", "magnitude"],
        }
    }

    fn eval(&self, param: &str, x: f64) -> Result<Vec<f64>, realclock::Error> {
        match self {
            Target::MEnvelope {
                n_env,
                b_field,
                gamma1,
                gamma2,
                tau,
                t_planck,
                width_scale,
            } => {
                let (mut n, mut b, mut t) = (*n_env, *b_field, *tau);
                match param {
                    "tau" => t = x,
                    "b_field" => b = x,
                    _ => n = x.round().max(0.0) as u64,
                }
                let clock = ClockModel::gaussian(*t_planck, 1.0 / 3.0, *width_scale)?;
                let env = m_envelope_scalar(n, b, *gamma1, *gamma2, t, &clock)?;
                Ok(vec![env.log_value, env.value()])
            }
            Target::CriticalN {
                b_field,
                gamma1,
                gamma2,
                tau,
                t_planck,
                exponent_a,
                width_scale,
                l_planck,
                r_universe,
            } => {
                let (mut b, mut t, mut tp, mut lp, mut r) =
                    (*b_field, *tau, *t_planck, *l_planck, *r_universe);
                match param {
                    "tau" => t = x,
                    "b_field" => b = x,
                    "r_universe" => r = x,
                    "l_planck" => lp = x,
                    _ => tp = x,
                }
                let template = SpinCavityParams::uniform(1, b, *gamma1, *gamma2, 0.0, t)?;
                let clock = ClockModel::gaussian(tp, *exponent_a, *width_scale)?;
                let precision = PrecisionModel::new(lp, r)?;
                let n_star = critical_n(&template, &clock, &precision)?;
                Ok(vec![n_star as f64])
            }
            Target::DampingEnvelope { delta_e, sigma } => {
                let log = damping_log(*delta_e, sigma, x);
                Ok(vec![log, log.exp()])
            }
            Target::MModifiedMag {
                n_env,
                b_field,
                gamma1,
                gamma2,
                t_reading,
            } => {
                let params =
                    SpinCavityParams::uniform(*n_env, *b_field, *gamma1, *gamma2, 0.0, 0.0)?;
                let (theta, reading) = match param {
                    "t_reading" => (0.0, x),
                    _ => (x, *t_reading),
                };
                let log = m_modified_log_magnitude(&params, theta, reading)?;
                Ok(vec![log, log.exp()])
            }
        }
    }
}

pub fn run(mut v: Validator, seed: u64) -> Result<TableSet, CliError> {
    let target_name = v.choice(
        "sweep",
        "target",
        &["m-envelope", "critical-n", "damping-envelope", "m-modified-mag"],
    );
    let param = v.choice(
        "sweep",
        "param",
        &[
            "tau",
            "b_field",
            "n_env",
            "r_universe",
            "t_planck",
            "l_planck",
            "t",
            "theta",
            "t_reading",
        ],
    );
    let min = v.f64("sweep", "min");
    let max = v.f64("sweep", "max");
    let points = v.usize("sweep", "points");
    let scale = v.choice_or("sweep", "scale", &["linear", "log"], "linear");
    let seconds_per_time_unit = v.f64_or("units", "seconds_per_time_unit", 1.0);

    let target = match target_name.as_str() {
        "m-envelope" => Target::MEnvelope {
            n_env: v.u64("target", "n_env"),
            b_field: v.f64("target", "b_field"),
            gamma1: v.f64("target", "gamma1"),
            gamma2: v.f64("target", "gamma2"),
            tau: v.f64_or("target", "tau", 1.0),
            t_planck: v.f64_or("target", "t_planck", 1e-44),
            width_scale: v.f64_or("target", "width_scale", 1.0),
        },
        "critical-n" => Target::CriticalN {
            b_field: v.f64("target", "b_field"),
            gamma1: v.f64("target", "gamma1"),
            gamma2: v.f64("target", "gamma2"),
            tau: v.f64_or("target", "tau", 1.0),
            t_planck: v.f64_or("target", "t_planck", 1e-44),
            exponent_a: v.f64_or("target", "exponent_a", 1.0 / 3.0),
            width_scale: v.f64_or("target", "width_scale", 1.0),
            l_planck: v.f64_or("target", "l_planck", 1.616e-35),
            r_universe: v.f64_or("target", "r_universe", 4.4e26),
        },
        "damping-envelope" => {
            let kind = v.choice_or("target", "sigma_kind", &["constant", "power-law"], "constant");
            let sigma = if kind == "constant" {
                SigmaProfile::Constant {
                    value: v.f64("target", "sigma_value"),
                }
            } else {
                SigmaProfile::PowerLaw {
                    prefactor: v.f64("target", "sigma_prefactor"),
                    exponent: v.f64("target", "sigma_exponent"),
                }
            };
            Target::DampingEnvelope {
                delta_e: v.f64("target", "delta_e"),
                sigma,
            }
        }
        _ => Target::MModifiedMag {
            n_env: v.usize("target", "n_env"),
            b_field: v.f64("target", "b_field"),
            gamma1: v.f64("target", "gamma1"),
            gamma2: v.f64("target", "gamma2"),
            t_reading: v.f64_or("target", "t_reading", 0.0),
        },
    };

    if !target.allowed_params().contains(&param.as_str()) {
        v.problem(format!(
            "target {target_name} cannot sweep '{param}'; allowed: {:?}",
            target.allowed_params()
        ));
    }
    if !(2..=1_000_000).contains(&points) {
        v.problem("sweep points must lie in 2..=1000000");
    }
    if scale == "log" && (min <= 0.0 || max <= min) {
        v.problem("log sweeps need 0 < min < max");
    }
    if scale == "linear" && max <= min {
        v.problem("need min < max");
    }
    if let Target::MModifiedMag { n_env, .. } = &target {
        if *n_env == 0 || *n_env > 1_000_000 {
            v.problem("n_env must lie in 1..=1000000");
        }
    }
    v.finish().map_err(CliError::Config)?;

    let grid: Vec<f64> = match scale.as_str() {
        "log" => linspace(min.ln(), max.ln(), points)
            .into_iter()
            .map(f64::exp)
            .collect(),
        _ => linspace(min, max, points),
    };

    let rows = parallel_map(&grid, |&x| target.eval(&param, x))
        .map_err(|e| compute_err(e, "sweep: target evaluation"))?;

    let mut table = ResultTable::new();
    base_metadata(&mut table, "sweep", seed, seconds_per_time_unit);
    table.meta("target", &target_name);
    table.meta("param", &param);
    table.meta_num("min", min);
    table.meta_num("max", max);
    table.meta("points", points);
    table.meta("scale", &scale);
    table.push(Column::real(&param, grid));
    for (idx, name) in target.value_columns().iter().enumerate() {
        table.push(Column::real(name, rows.iter().map(|r| r[idx]).collect()));
    }

    Ok(vec![("sweep.csv".to_string(), table)])
}

/// Index-ordered parallel map; the first failing index wins so errors are
/// deterministic too.
fn parallel_map<T: Sync, R: Send>(
    inputs: &[T],
    f: impl Fn(&T) -> Result<R, realclock::Error> + Sync,
) -> Result<Vec<R>, realclock::Error> {
    let workers = worker_count(inputs.len());
    if workers <= 1 {
        return inputs.iter().map(&f).collect();
    }
    let results: Mutex<Vec<Option<Result<R, realclock::Error>>>> =
        Mutex::new((0..inputs.len()).map(|_| None).collect());
    let next = std::sync::atomic::AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if idx >= inputs.len() {
                    break;
                }
                let out = f(&inputs[idx]);
                results.lock().expect("poisoned results")[idx] = Some(out);
            });
        }
    });
    let collected = results.into_inner().expect("poisoned results");
    let mut out = Vec::with_capacity(inputs.len());
    let mut first_err: Option<realclock::Error> = None;
    for slot in collected {
        match slot.expect("every index visited") {
            Ok(r) => out.push(r),
            Err(e) => {
                if first_err.is_none() {
                    first_err = Some(e);
                }
            }
        }
    }
    match first_err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

fn worker_count(points: usize) -> usize {
    let available = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let cap = std::env::var("REALCLOCK_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(available);
    cap.min(available).min(points.max(1))
}
