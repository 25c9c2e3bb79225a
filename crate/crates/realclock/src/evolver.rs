//! Propagators for the clock-induced dephasing equation
//!
//!   d rho / dT = i [rho, H] - sigma(T) [H, [H, rho]],
//!
//! with sigma(T) >= 0 the clock rate from [`crate::clock`]. The double
//! commutator conserves energy and damps energy-basis off-diagonals as
//! exp(-(E_n - E_m)^2 * integral of sigma). The sign is fixed so that the
//! equation dephases; an accumulated negative exponent is a configuration
//! error and is refused outright (anti-damping guard).
//!
//! Two propagators are provided: the exact eigenbasis closed form, and a
//! fixed-step classical fourth-order integrator used to cross-check it.

use ndarray::Array2;
use num_complex::Complex64;

use crate::clock::{ClockModel, ClockProfile};
use crate::error::{Error, Result};
use crate::qops::{spectral, DensityMatrix, Operator, POSITIVITY_TOL};

/// Dephasing-rate profile sigma(T).
#[derive(Debug, Clone, Copy)]
pub enum SigmaProfile {
    /// Constant rate (seconds).
    Constant { value: f64 },
    /// prefactor * T^exponent with exponent = 2a - 1 for a clock with
    /// uncertainty exponent a; singular at T = 0 when the exponent is
    /// negative, integrable for exponent > -1.
    PowerLaw { prefactor: f64, exponent: f64 },
}

impl SigmaProfile {
    /// Rate profile induced by a clock model: sigma(T) = d b(T) / dT.
    pub fn from_clock(model: &ClockModel) -> Self {
        if model.profile() == ClockProfile::IdealDelta {
            return SigmaProfile::Constant { value: 0.0 };
        }
        let a = model.exponent_a();
        let c = model.width_scale();
        let prefactor = a * c * c * model.t_planck().powf(2.0 - 2.0 * a);
        let exponent = 2.0 * a - 1.0;
        if exponent == 0.0 {
            SigmaProfile::Constant { value: prefactor }
        } else {
            SigmaProfile::PowerLaw { prefactor, exponent }
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        match *self {
            SigmaProfile::Constant { value } => value,
            SigmaProfile::PowerLaw { prefactor, exponent } => prefactor * t.powf(exponent),
        }
    }

    /// Integral of sigma over [t0, t1].
    pub fn integral(&self, t0: f64, t1: f64) -> f64 {
        match *self {
            SigmaProfile::Constant { value } => value * (t1 - t0),
            SigmaProfile::PowerLaw { prefactor, exponent } => {
                let p1 = exponent + 1.0;
                prefactor / p1 * (t1.powf(p1) - t0.powf(p1))
            }
        }
    }

    /// True when the profile diverges at T = 0.
    pub fn singular_at_zero(&self) -> bool {
        matches!(self, SigmaProfile::PowerLaw { exponent, .. } if *exponent < 0.0)
    }

    fn require_damping(&self) -> Result<()> {
        let bad = match *self {
            SigmaProfile::Constant { value } => value < 0.0,
            SigmaProfile::PowerLaw { prefactor, exponent } => prefactor < 0.0 || exponent <= -1.0,
        };
        if bad {
            return Err(Error::AntiDamping {
                gamma: self.integral(0.0_f64.max(1e-300), 1.0),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropagationMethod {
    ExactEigenbasis,
    FixedStepOde,
}

/// Time-indexed trajectory of states from one propagator run.
#[derive(Debug, Clone)]
pub struct PropagationResult {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    pub method: PropagationMethod,
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if times[0] < 0.0 {
        return Err(Error::NegativeTime { value: times[0] });
    }
    for w in times.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::InvalidParams(format!(
                "sample times must be strictly increasing, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// Exact propagation in the eigenbasis of H.
///
/// `rho0` is the state at `times[0]`; with `times[0] = 0` the result is the
/// textbook closed form. In the eigenbasis,
/// rho_nm(T) = rho_nm(T0) * exp(i (E_m - E_n)(T - T0)) * exp(-(E_n - E_m)^2 Gamma)
/// with Gamma the integral of sigma over [T0, T]; diagonals are constant.
pub fn lindblad_propagate_exact(
    rho0: &DensityMatrix,
    h: &Operator,
    sigma: &SigmaProfile,
    times: &[f64],
) -> Result<PropagationResult> {
    check_times(times)?;
    if h.dim() != rho0.dim() {
        return Err(Error::DimensionMismatch {
            op: "lindblad_propagate_exact",
            left: h.dim(),
            right: rho0.dim(),
        });
    }
    sigma.require_damping()?;

    let dec = spectral(h)?;
    let evals = dec.eigenvalues().to_vec();
    let dim = rho0.dim();
    let t0 = times[0];
    let rho_eig = dec.to_eigenbasis(rho0.entries());

    let mut states = Vec::with_capacity(times.len());
    for &t in times {
        let gamma = sigma.integral(t0, t);
        if gamma < -1e-18 {
            return Err(Error::AntiDamping { gamma });
        }
        let dt = t - t0;
        let mut out = Array2::zeros((dim, dim));
        for n in 0..dim {
            for m in 0..dim {
                let de = evals[n] - evals[m];
                let phase = Complex64::from_polar((-de * de * gamma).exp(), -de * dt);
                out[[n, m]] = rho_eig[[n, m]] * phase;
            }
        }
        let back = dec.from_eigenbasis(&out);
        states.push(DensityMatrix::validated(back, POSITIVITY_TOL)?);
    }
    Ok(PropagationResult {
        times: times.to_vec(),
        states,
        method: PropagationMethod::ExactEigenbasis,
    })
}

/// Classical fixed-step fourth-order integration of the dephasing equation.
///
/// The step must resolve the fastest phase: step <= 0.1 / max |E_n - E_m|,
/// checked before propagation. The rate is sampled at substage times, which
/// keeps fourth-order accuracy for time-dependent sigma. `rho0` is the state
/// at `times[0]`; power-law profiles that are singular at zero require
/// `times[0] > 0`.
pub fn lindblad_propagate_ode(
    rho0: &DensityMatrix,
    h: &Operator,
    sigma: &SigmaProfile,
    times: &[f64],
    step: f64,
) -> Result<PropagationResult> {
    check_times(times)?;
    if h.dim() != rho0.dim() {
        return Err(Error::DimensionMismatch {
            op: "lindblad_propagate_ode",
            left: h.dim(),
            right: rho0.dim(),
        });
    }
    if step <= 0.0 || step.is_nan() {
        return Err(Error::InvalidParams(format!(
            "step must be positive, got {step}"
        )));
    }
    sigma.require_damping()?;
    if sigma.singular_at_zero() && times[0] == 0.0 {
        return Err(Error::SingularStart { t_start: 0.0 });
    }

    let dec = spectral(h)?;
    let max_gap = dec.max_gap();
    if max_gap > 0.0 {
        let max_step = 0.1 / max_gap;
        if step > max_step {
            return Err(Error::StepTooLarge { step, max_step });
        }
    }

    let hm = h.entries().clone();
    let h2 = hm.dot(&hm);
    let i = Complex64::new(0.0, 1.0);
    let rhs = |t: f64, rho: &Array2<Complex64>| -> Array2<Complex64> {
        let s = sigma.value(t);
        let rho_h = rho.dot(&hm);
        let h_rho = hm.dot(rho);
        let unitary = (&rho_h - &h_rho).mapv(|z| z * i);
        let double = &h2.dot(rho) - &hm.dot(rho).dot(&hm).mapv(|z| z * Complex64::new(2.0, 0.0))
            + &rho.dot(&h2);
        unitary - double.mapv(|z| z * Complex64::new(s, 0.0))
    };

    let mut current = rho0.entries().clone();
    let mut t_now = times[0];
    let mut states = Vec::with_capacity(times.len());
    for (idx, &target) in times.iter().enumerate() {
        if idx > 0 {
            let span = target - t_now;
            let n_steps = (span / step).ceil().max(1.0) as usize;
            let h_step = span / n_steps as f64;
            for _ in 0..n_steps {
                let half = 0.5 * h_step;
                let k1 = rhs(t_now, &current);
                let r2 = &current + &k1.mapv(|z| z * Complex64::new(half, 0.0));
                let k2 = rhs(t_now + half, &r2);
                let r3 = &current + &k2.mapv(|z| z * Complex64::new(half, 0.0));
                let k3 = rhs(t_now + half, &r3);
                let r4 = &current + &k3.mapv(|z| z * Complex64::new(h_step, 0.0));
                let k4 = rhs(t_now + h_step, &r4);
                let incr = (k1
                    + k2.mapv(|z| z * Complex64::new(2.0, 0.0))
                    + k3.mapv(|z| z * Complex64::new(2.0, 0.0))
                    + k4)
                    .mapv(|z| z * Complex64::new(h_step / 6.0, 0.0));
                current = &current + &incr;
                t_now += h_step;
            }
            t_now = target;
        }
        // Discard roundoff-level Hermiticity drift before validation.
        let dim = current.nrows();
        let mut snap = Array2::zeros((dim, dim));
        for r in 0..dim {
            for c in 0..dim {
                snap[[r, c]] = (current[[r, c]] + current[[c, r]].conj()) * 0.5;
            }
        }
        states.push(DensityMatrix::validated(snap, 1e-8)?);
    }
    Ok(PropagationResult {
        times: times.to_vec(),
        states,
        method: PropagationMethod::FixedStepOde,
    })
}

/// Off-diagonal damping factor exp(-delta_e^2 * integral_0^T sigma), in (0, 1]
/// for damping profiles; monotone nonincreasing in T and |delta_e|.
pub fn damping_envelope(delta_e: f64, sigma: &SigmaProfile, t: f64) -> f64 {
    damping_log(delta_e, sigma, t).exp()
}

/// Log of [`damping_envelope`]; safe where the envelope itself underflows.
pub fn damping_log(delta_e: f64, sigma: &SigmaProfile, t: f64) -> f64 {
    assert!(t >= 0.0, "damping envelope requires T >= 0");
    -delta_e * delta_e * sigma.integral(0.0, t)
}
