//! Spin-cavity scenario: the witness expectation under the three regimes
//! (closed-form unitary in both frequency readings, collapse, dephased)
//! against the interaction time, with brute-force values and oracle deltas
//! whenever the environment is small enough to simulate.

use num_complex::Complex64;
use realclock::rng::XorShift64Star;
use realclock::spincavity::{
    m_collapse, m_expectation_ket, m_modified_analytic, m_unitary_analytic, m_unitary_effective,
    simulate_stream_ket, SpinCavityParams,
};

use super::{base_metadata, compute_err, linspace, TableSet};
use crate::config::Validator;
use crate::error::CliError;
use crate::table::{Column, ResultTable};

const BRUTE_FORCE_MAX_N: usize = 6;

pub fn run(mut v: Validator, seed: u64) -> Result<TableSet, CliError> {
    let n_env = v.usize("cavity", "n_env");
    let b_field = v.f64("cavity", "b_field");
    let gamma1 = v.f64("cavity", "gamma1");
    let gamma2 = v.f64("cavity", "gamma2");
    let coupling = v.f64("cavity", "coupling");
    let tau_min = v.f64_or("cavity", "tau_min", 0.0);
    let tau_max = v.f64("cavity", "tau_max");
    let tau_points = v.usize("cavity", "tau_points");
    let zeeman_outside = v.bool_or("cavity", "zeeman_outside", true);
    let theta = v.f64_or("cavity", "theta", 0.0);
    let t_reading = v.f64_or("cavity", "t_reading", f64::NAN); // default N tau per point
    let amplitudes = v.choice_or("cavity", "amplitudes", &["balanced", "random"], "balanced");
    let seconds_per_time_unit = v.f64_or("units", "seconds_per_time_unit", 1.0);

    if n_env == 0 || n_env > 20 {
        v.problem("n_env must lie in 1..=20");
    }
    if tau_min < 0.0 || tau_max <= tau_min {
        v.problem("need 0 <= tau_min < tau_max");
    }
    if !(2..=100_000).contains(&tau_points) {
        v.problem("tau_points must lie in 2..=100000");
    }
    if theta < 0.0 {
        v.problem("theta must be nonnegative");
    }
    v.finish().map_err(CliError::Config)?;

    // Amplitudes are drawn once per run; the tau grid reuses them.
    let (needle, env) = match amplitudes.as_str() {
        "balanced" => {
            let half = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            ((half, half), vec![(half, half); n_env])
        }
        _ => {
            let mut rng = XorShift64Star::new(seed);
            let mut draw = || {
                let a = rng.next_in(0.0, std::f64::consts::TAU);
                (
                    Complex64::new(a.cos(), 0.0),
                    Complex64::new(a.sin(), 0.0),
                )
            };
            let needle = draw();
            let env = (0..n_env).map(|_| draw()).collect();
            (needle, env)
        }
    };

    let build = |tau: f64| {
        SpinCavityParams::new(
            n_env,
            b_field,
            gamma1,
            gamma2,
            vec![coupling; n_env],
            tau,
            needle,
            env.clone(),
            zeeman_outside,
        )
    };

    let taus = linspace(tau_min, tau_max, tau_points);
    let mut col_unitary = Vec::with_capacity(taus.len());
    let mut col_effective = Vec::with_capacity(taus.len());
    let mut col_modified = Vec::with_capacity(taus.len());
    let mut col_collapse = Vec::with_capacity(taus.len());
    let mut col_brute = Vec::with_capacity(taus.len());
    for &tau in &taus {
        let params = build(tau).map_err(|e| compute_err(e, "spin-cavity: parameters"))?;
        col_unitary.push(m_unitary_analytic(&params));
        col_effective.push(m_unitary_effective(&params).re);
        let reading = if t_reading.is_nan() {
            n_env as f64 * tau
        } else {
            t_reading
        };
        col_modified.push(
            m_modified_analytic(&params, theta, reading)
                .map_err(|e| compute_err(e, "spin-cavity: modified closed form"))?
                .re,
        );
        col_collapse.push(m_collapse(&params).re);
        if n_env <= BRUTE_FORCE_MAX_N {
            let ket = simulate_stream_ket(&params)
                .map_err(|e| compute_err(e, "spin-cavity: stream simulation"))?;
            col_brute.push(m_expectation_ket(&ket).re);
        }
    }

    let mut table = ResultTable::new();
    base_metadata(&mut table, "spin-cavity", seed, seconds_per_time_unit);
    table.meta("n_env", n_env);
    table.meta_num("b_field", b_field);
    table.meta_num("gamma1", gamma1);
    table.meta_num("gamma2", gamma2);
    table.meta_num("coupling", coupling);
    table.meta("zeeman_outside", zeeman_outside);
    table.meta_num("theta", theta);
    table.meta(
        "t_reading",
        if t_reading.is_nan() {
            "n_env * tau".to_string()
        } else {
            t_reading.to_string()
        },
    );
    table.meta("amplitudes", &amplitudes);
    table.meta_num("needle_plus", needle.0.re);
    table.meta_num("needle_minus", needle.1.re);
    table.meta(
        "witness_unit_scale",
        format!("2^-{} of the bare-sigma normalization", n_env + 1),
    );

    table.push(Column::real("tau", taus));
    table.push(Column::complex("m_unitary", col_unitary.clone()));
    table.push(Column::real("m_effective", col_effective.clone()));
    table.push(Column::real("m_modified", col_modified));
    table.push(Column::real("m_collapse", col_collapse));
    if n_env <= BRUTE_FORCE_MAX_N {
        table.push(Column::real(
            "delta_unitary",
            col_unitary
                .iter()
                .zip(&col_brute)
                .map(|(a, b)| (a.re - b).abs())
                .collect(),
        ));
        table.push(Column::real(
            "delta_effective",
            col_effective
                .iter()
                .zip(&col_brute)
                .map(|(a, b)| (a - b).abs())
                .collect(),
        ));
        table.push(Column::real("m_brute", col_brute));
    }

    Ok(vec![("spin_cavity.csv".to_string(), table)])
}
