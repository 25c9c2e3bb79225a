//! Conditional-probability scenario on the standard toy: a qubit system
//! next to a small ladder clock. For every requested clock reading the
//! table carries the conditional probabilities of the z outcomes (whose
//! sum checks completeness) and of the +x outcome.

use ndarray::Array2;
use num_complex::Complex64;
use realclock::clock::{conditional_probability, IntegrationSpec, Quadrature};
use realclock::qops::{tensor, DensityMatrix, Operator};

use super::{base_metadata, compute_err, TableSet};
use crate::config::Validator;
use crate::error::CliError;
use crate::table::{Column, ResultTable};

pub fn run(mut v: Validator, seed: u64) -> Result<TableSet, CliError> {
    let omega = v.f64("model", "omega");
    let hop = v.f64("model", "hop");
    let clock_levels = v.usize_or("model", "clock_levels", 3);
    let t_min = v.f64("window", "t_min");
    let t_max = v.f64("window", "t_max");
    let points = v.usize("window", "points");
    let quadrature = v.choice_or(
        "window",
        "quadrature",
        &["gauss-legendre", "trapezoid"],
        "gauss-legendre",
    );
    let seconds_per_time_unit = v.f64_or("units", "seconds_per_time_unit", 1.0);

    if !(2..=8).contains(&clock_levels) {
        v.problem("clock_levels must lie in 2..=8");
    }
    if t_max <= t_min {
        v.problem("need t_min < t_max");
    }
    if !(16..=1_000_000).contains(&points) {
        v.problem("window points must lie in 16..=1000000");
    }
    v.finish().map_err(CliError::Config)?;

    let rule = match quadrature.as_str() {
        "trapezoid" => Quadrature::Trapezoid,
        _ => Quadrature::GaussLegendre,
    };
    let spec = IntegrationSpec::new(t_min, t_max, points, rule)
        .map_err(|e| compute_err(e, "conditional-prob: window"))?;

    // Qubit (x)/ ladder clock; the joint state is |+x> (x) |level 0>.
    let h_sys = Operator::diagonal(&[0.0, omega]);
    let mut ladder = Array2::zeros((clock_levels, clock_levels));
    for i in 0..clock_levels - 1 {
        ladder[[i, i + 1]] = Complex64::new(hop, 0.0);
        ladder[[i + 1, i]] = Complex64::new(hop, 0.0);
    }
    let h_clock =
        Operator::hermitian(ladder).map_err(|e| compute_err(e, "conditional-prob: clock"))?;
    let id_clock = Operator::identity(clock_levels);
    let id_sys = Operator::identity(2);
    let h_total = tensor(&h_sys, &id_clock)
        .and_then(|a| tensor(&id_sys, &h_clock).and_then(|b| a.add(&b)))
        .map_err(|e| compute_err(e, "conditional-prob: joint Hamiltonian"))?;

    let dim = 2 * clock_levels;
    let mut joint = vec![Complex64::new(0.0, 0.0); dim];
    joint[0] = Complex64::new(1.0, 0.0);
    joint[clock_levels] = Complex64::new(1.0, 0.0);
    let rho =
        DensityMatrix::from_pure(&joint).map_err(|e| compute_err(e, "conditional-prob: state"))?;

    let sys_projector = |ket: &[Complex64]| -> Result<Operator, CliError> {
        tensor(&Operator::ket_projector(ket).unwrap(), &id_clock)
            .map_err(|e| compute_err(e, "conditional-prob: projector"))
    };
    let p_z0 = sys_projector(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])?;
    let p_z1 = sys_projector(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])?;
    let p_xp = sys_projector(&[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)])?;

    let mut readings = Vec::new();
    let mut col_z0 = Vec::new();
    let mut col_z1 = Vec::new();
    let mut col_sum = Vec::new();
    let mut col_xp = Vec::new();
    for reading in 0..clock_levels {
        let mut ket = vec![Complex64::new(0.0, 0.0); clock_levels];
        ket[reading] = Complex64::new(1.0, 0.0);
        let p_t = tensor(&id_sys, &Operator::ket_projector(&ket).unwrap())
            .map_err(|e| compute_err(e, "conditional-prob: clock projector"))?;
        let context = "conditional-prob: probability";
        let z0 = conditional_probability(&p_z0, &p_t, &rho, &h_total, &spec)
            .map_err(|e| compute_err(e, context))?;
        let z1 = conditional_probability(&p_z1, &p_t, &rho, &h_total, &spec)
            .map_err(|e| compute_err(e, context))?;
        let xp = conditional_probability(&p_xp, &p_t, &rho, &h_total, &spec)
            .map_err(|e| compute_err(e, context))?;
        readings.push(reading as i64);
        col_z0.push(z0);
        col_z1.push(z1);
        col_sum.push(z0 + z1);
        col_xp.push(xp);
    }

    let mut table = ResultTable::new();
    base_metadata(&mut table, "conditional-prob", seed, seconds_per_time_unit);
    table.meta_num("omega", omega);
    table.meta_num("hop", hop);
    table.meta("clock_levels", clock_levels);
    table.meta_num("t_min", t_min);
    table.meta_num("t_max", t_max);
    table.meta("points", points);
    table.meta("quadrature", &quadrature);
    table.meta("state", "|+x> (x) |clock level 0>");
    table.push(Column::integer("t0", readings));
    table.push(Column::real("p_z0", col_z0));
    table.push(Column::real("p_z1", col_z1));
    table.push(Column::real("sum_z", col_sum));
    table.push(Column::real("p_x_plus", col_xp));

    Ok(vec![("conditional_prob.csv".to_string(), table)])
}
