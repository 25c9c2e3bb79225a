//! Event verdicts from fundamental measurement-precision floors.
//!
//! Angle measurements on spins carry an irreducible uncertainty
//! delta_theta >= l_Planck / R even for an apparatus the size of the
//! observable universe. Propagated to the x-product witness this gives a
//! floor below which the dephased coherence signal cannot be resolved; once
//! the damping envelope falls under the floor, no measurement can tell the
//! quasi-unitary evolution from the collapse mixture, and the verdict is
//! that an event has occurred. Ensemble size never enters: repeating a
//! measurement with a coarse ruler does not beat the ruler.
//!
//! Everything here works in log space; the physical exponents (~ -1e2 at
//! the crossing, ~ -1e6 beyond) underflow plain doubles long before the
//! regime of interest.

use crate::clock::ClockModel;
use crate::error::{Error, Result};
use crate::qops::{expectation, DensityMatrix, Operator};
use crate::spincavity::SpinCavityParams;

/// How per-spin angle errors accumulate into a witness error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropagationRule {
    /// First-order accumulation: one angle error per measured spin axis,
    /// each contributing at the per-spin slope bound of 1/2 (the largest
    /// derivative of an x-component under misalignment, in the sigma/2
    /// convention).
    LinearPerSpin,
}

/// Fundamental precision inputs: Planck length, apparatus radius, and the
/// rule propagating the angle floor into a witness floor.
#[derive(Debug, Clone, Copy)]
pub struct PrecisionModel {
    pub l_planck: f64,
    pub r_universe: f64,
    pub rule: PropagationRule,
}

impl PrecisionModel {
    pub fn new(l_planck: f64, r_universe: f64) -> Result<Self> {
        if l_planck <= 0.0 || r_universe <= 0.0 || !l_planck.is_finite() || !r_universe.is_finite() {
            return Err(Error::InvalidParams(format!(
                "precision model needs positive lengths, got l_planck = {l_planck}, r = {r_universe}"
            )));
        }
        Ok(Self {
            l_planck,
            r_universe,
            rule: PropagationRule::LinearPerSpin,
        })
    }

    /// Smallest resolvable angle, l_planck / r_universe.
    pub fn angle_floor(&self) -> f64 {
        self.l_planck / self.r_universe
    }
}

/// Smallest resolvable angle for this precision model.
pub fn angle_precision(model: &PrecisionModel) -> f64 {
    model.angle_floor()
}

/// Witness uncertainty floor for N environment spins plus the needle:
/// (N + 1) * angle_floor * 1/2 under the linear rule. Monotone in N.
pub fn m_uncertainty_floor(model: &PrecisionModel, n_env: u64) -> f64 {
    m_uncertainty_floor_log(model, n_env).exp()
}

/// Log of [`m_uncertainty_floor`].
pub fn m_uncertainty_floor_log(model: &PrecisionModel, n_env: u64) -> f64 {
    match model.rule {
        PropagationRule::LinearPerSpin => {
            ((n_env + 1) as f64).ln() + model.angle_floor().ln() + 0.5f64.ln()
        }
    }
}

/// Outcome of the undecidability comparison at a fixed environment size.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub event_occurred: bool,
    /// envelope - floor in witness units; an event means discriminant <= 0.
    pub discriminant: f64,
    pub n_value: u64,
    pub diagnostics: VerdictDiagnostics,
}

/// Everything that went into a verdict, for output tables.
#[derive(Debug, Clone)]
pub struct VerdictDiagnostics {
    pub log_envelope: f64,
    pub log_floor: f64,
    pub envelope: f64,
    pub floor: f64,
    pub angle_floor: f64,
    /// Per-spin log damping: log_envelope = -kappa * N.
    pub kappa: f64,
    pub b_tau: f64,
}

/// Per-spin damping exponent kappa with log_envelope = -kappa N, from the
/// clock's second-moment coefficient at the interaction time:
/// kappa = 12 B^2 (g1 - g2)^2 b(tau). For a cube-root clock this is exactly
/// the quoted 6 c^2 B^2 (g1-g2)^2 t_P^(4/3) tau^(2/3) rate; other exponents
/// route through the same b(tau) with their own power law.
fn per_spin_kappa(params: &SpinCavityParams, clock: &ClockModel) -> Result<(f64, f64)> {
    let omega = params.b_field * (params.gamma1 - params.gamma2);
    if omega == 0.0 || params.tau == 0.0 {
        return Ok((0.0, 0.0));
    }
    let b_tau = clock.moments(params.tau)?.b_t;
    Ok((12.0 * omega * omega * b_tau, b_tau))
}

/// The event criterion: compare the damping envelope at N environment spins
/// against the witness uncertainty floor, in log space. Event when
/// envelope <= floor. Both sides are in the normalized witness units of the
/// closed forms (|<M>| <= 1); ensemble size does not appear anywhere.
pub fn decide_event(
    params: &SpinCavityParams,
    clock: &ClockModel,
    precision: &PrecisionModel,
) -> Result<Verdict> {
    let (kappa, b_tau) = per_spin_kappa(params, clock)?;
    let n = params.n_env as u64;
    let log_envelope = -kappa * n as f64;
    let log_floor = m_uncertainty_floor_log(precision, n);
    let envelope = log_envelope.exp();
    let floor = log_floor.exp();
    let event_occurred = log_envelope <= log_floor;
    Ok(Verdict {
        event_occurred,
        discriminant: envelope - floor,
        n_value: n,
        diagnostics: VerdictDiagnostics {
            log_envelope,
            log_floor,
            envelope,
            floor,
            angle_floor: precision.angle_floor(),
            kappa,
            b_tau,
        },
    })
}

/// Search ceiling for [`critical_n`].
pub const CRITICAL_N_MAX: u64 = 1_000_000_000_000;

/// Smallest environment size at which the verdict flips to "event":
/// the first integer N with envelope(N) <= floor(N). Exponential bracketing
/// followed by integer bisection on the log-space discriminant;
/// deterministic. The template's own `n_env` is ignored.
pub fn critical_n(
    params_template: &SpinCavityParams,
    clock: &ClockModel,
    precision: &PrecisionModel,
) -> Result<u64> {
    let (kappa, _) = per_spin_kappa(params_template, clock)?;
    if kappa <= 0.0 {
        return Err(Error::InvalidParams(
            "the envelope must strictly decrease in N: need B != 0, gamma1 != gamma2, tau > 0"
                .into(),
        ));
    }
    let excess = |n: u64| -> f64 { -kappa * n as f64 - m_uncertainty_floor_log(precision, n) };

    if excess(1) <= 0.0 {
        return Ok(1);
    }
    let mut hi = 1u64;
    loop {
        hi = hi.saturating_mul(2);
        if hi > CRITICAL_N_MAX {
            return Err(Error::NoCrossing { n_max: CRITICAL_N_MAX });
        }
        if excess(hi) <= 0.0 {
            break;
        }
    }
    let mut lo = hi / 2; // excess(lo) > 0
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if excess(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Small-system, brute-force form of the undecidability test: the two
/// states are distinguishable iff some observable separates them by more
/// than its floor.
pub fn distinguishability(
    rho_a: &DensityMatrix,
    rho_b: &DensityMatrix,
    observables: &[Operator],
    floor_per_observable: &[f64],
) -> Result<bool> {
    if rho_a.dim() != rho_b.dim() {
        return Err(Error::DimensionMismatch {
            op: "distinguishability",
            left: rho_a.dim(),
            right: rho_b.dim(),
        });
    }
    if observables.len() != floor_per_observable.len() {
        return Err(Error::InvalidParams(format!(
            "{} observables but {} floors",
            observables.len(),
            floor_per_observable.len()
        )));
    }
    for (obs, floor) in observables.iter().zip(floor_per_observable) {
        let a = expectation(obs, rho_a)?;
        let b = expectation(obs, rho_b)?;
        if (a - b).norm() > *floor {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn physical_precision() -> PrecisionModel {
        PrecisionModel::new(1.616e-35, 4.4e26).unwrap()
    }

    #[test]
    fn angle_floor_is_the_length_ratio() {
        let unit = PrecisionModel::new(1.0, 1.0).unwrap();
        assert_eq!(angle_precision(&unit), 1.0);
        let physical = physical_precision();
        assert_relative_eq!(
            angle_precision(&physical),
            3.672_727_272_727_273e-62,
            max_relative = 1e-12
        );
        let halved = PrecisionModel::new(1.616e-35, 2.2e26).unwrap();
        assert_relative_eq!(
            angle_precision(&halved),
            2.0 * angle_precision(&physical),
            max_relative = 1e-12
        );
    }

    #[test]
    fn precision_model_rejects_nonpositive_lengths() {
        assert!(PrecisionModel::new(0.0, 1.0).is_err());
        assert!(PrecisionModel::new(1.0, -2.0).is_err());
    }

    #[test]
    fn floor_for_isolated_needle_is_half_the_angle() {
        let unit = PrecisionModel::new(2.0, 4.0).unwrap();
        assert_relative_eq!(m_uncertainty_floor(&unit, 0), 0.25, max_relative = 1e-14);
    }

    #[test]
    fn floor_scales_linearly_in_n() {
        let physical = physical_precision();
        let big = m_uncertainty_floor_log(&physical, 2_000_000);
        let small = m_uncertainty_floor_log(&physical, 1_000_000);
        let ratio = (big - small).exp();
        assert_relative_eq!(ratio, 2_000_001.0 / 1_000_001.0, max_relative = 1e-12);
        // N = 1e7 at the physical angle floor: about 1.8e-55.
        let val = m_uncertainty_floor(&physical, 10_000_000);
        assert_relative_eq!(val, 1.836_365e-55, max_relative = 1e-5);
    }

    #[test]
    fn isolated_needle_never_fires() {
        let params = SpinCavityParams::uniform(0, 2.0, 1.5, 0.5, 0.0, 1.0).unwrap();
        let clock = ClockModel::gaussian(1e-44, 1.0 / 3.0, 1.0).unwrap();
        let verdict = decide_event(&params, &clock, &physical_precision()).unwrap();
        assert!(!verdict.event_occurred);
        assert_eq!(verdict.diagnostics.log_envelope, 0.0);
        assert!(verdict.discriminant > 0.0);
    }

    #[test]
    fn equal_gyromagnetic_factors_never_fire() {
        let params = SpinCavityParams::uniform(64, 2.0, 1.5, 1.5, 0.0, 1.0).unwrap();
        let clock = ClockModel::gaussian(1e-44, 1.0 / 3.0, 1.0).unwrap();
        let verdict = decide_event(&params, &clock, &physical_precision()).unwrap();
        assert!(!verdict.event_occurred);
        assert_abs_diff_eq!(verdict.diagnostics.envelope, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn degenerate_precision_gives_critical_n_of_one() {
        // Angle floor 1: the floor is (N+1)/2 >= 1 > any damped envelope.
        let params = SpinCavityParams::uniform(1, 1.0, 2.0, 1.0, 0.0, 1.0).unwrap();
        let clock = ClockModel::gaussian(1e-2, 1.0 / 3.0, 1.0).unwrap();
        let precision = PrecisionModel::new(1.0, 1.0).unwrap();
        assert_eq!(critical_n(&params, &clock, &precision).unwrap(), 1);
    }

    #[test]
    fn stronger_damping_lowers_critical_n() {
        let clock = ClockModel::gaussian(1e-6, 1.0 / 3.0, 1.0).unwrap();
        let precision = PrecisionModel::new(1e-20, 1.0).unwrap();
        let weak = SpinCavityParams::uniform(1, 1.0, 2.0, 1.0, 0.0, 1.0).unwrap();
        let strong = SpinCavityParams::uniform(1, 2.0_f64.sqrt(), 2.0, 1.0, 0.0, 1.0).unwrap();
        let n_weak = critical_n(&weak, &clock, &precision).unwrap();
        let n_strong = critical_n(&strong, &clock, &precision).unwrap();
        assert!(n_strong < n_weak, "{n_strong} !< {n_weak}");
    }

    #[test]
    fn critical_n_requires_a_decreasing_envelope() {
        let params = SpinCavityParams::uniform(1, 1.0, 1.0, 1.0, 0.0, 1.0).unwrap();
        let clock = ClockModel::gaussian(1e-6, 1.0 / 3.0, 1.0).unwrap();
        let precision = PrecisionModel::new(1e-20, 1.0).unwrap();
        assert!(matches!(
            critical_n(&params, &clock, &precision),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn no_crossing_is_reported() {
        // Tiny damping, tiny floor: the crossing sits beyond the ceiling.
        let params = SpinCavityParams::uniform(1, 1e-8, 2.0, 1.0, 0.0, 1.0).unwrap();
        let clock = ClockModel::gaussian(1e-44, 1.0 / 3.0, 1.0).unwrap();
        let precision = physical_precision();
        assert!(matches!(
            critical_n(&params, &clock, &precision),
            Err(Error::NoCrossing { .. })
        ));
    }

    #[test]
    fn verdict_flips_exactly_at_critical_n() {
        // Scaled-down numbers so the crossing lands at a small N.
        let clock = ClockModel::gaussian(1e-3, 1.0 / 3.0, 1.0).unwrap();
        let precision = PrecisionModel::new(1e-9, 1.0).unwrap();
        let template = SpinCavityParams::uniform(1, 1.0, 2.0, 1.0, 0.0, 1.0).unwrap();
        let n_star = critical_n(&template, &clock, &precision).unwrap();
        assert!(n_star > 1);
        let below =
            SpinCavityParams::uniform((n_star - 1) as usize, 1.0, 2.0, 1.0, 0.0, 1.0).unwrap();
        let at = SpinCavityParams::uniform(n_star as usize, 1.0, 2.0, 1.0, 0.0, 1.0).unwrap();
        assert!(!decide_event(&below, &clock, &precision).unwrap().event_occurred);
        assert!(decide_event(&at, &clock, &precision).unwrap().event_occurred);
    }

    #[test]
    fn critical_n_solves_the_crossing_equation() {
        let clock = ClockModel::gaussian(1e-3, 1.0 / 3.0, 1.0).unwrap();
        let precision = PrecisionModel::new(1e-9, 1.0).unwrap();
        let template = SpinCavityParams::uniform(1, 1.0, 2.0, 1.0, 0.0, 1.0).unwrap();
        let n_star = critical_n(&template, &clock, &precision).unwrap();
        let kappa = -decide_event(&template, &clock, &precision)
            .unwrap()
            .diagnostics
            .kappa;
        let excess =
            |n: u64| kappa * n as f64 - m_uncertainty_floor_log(&precision, n);
        assert!(excess(n_star) <= 0.0);
        assert!(excess(n_star - 1) > 0.0);
    }

    #[test]
    fn identical_states_are_never_distinguishable() {
        let rho = DensityMatrix::from_pure(&[
            num_complex::Complex64::new(0.6, 0.0),
            num_complex::Complex64::new(0.8, 0.0),
        ])
        .unwrap();
        let obs = vec![Operator::pauli_x(), Operator::pauli_z()];
        let floors = vec![0.0, 0.0];
        assert!(!distinguishability(&rho, &rho, &obs, &floors).unwrap());
    }

    #[test]
    fn orthogonal_states_exceed_a_half_floor() {
        let zero = DensityMatrix::from_pure(&[
            num_complex::Complex64::new(1.0, 0.0),
            num_complex::Complex64::new(0.0, 0.0),
        ])
        .unwrap();
        let one = DensityMatrix::from_pure(&[
            num_complex::Complex64::new(0.0, 0.0),
            num_complex::Complex64::new(1.0, 0.0),
        ])
        .unwrap();
        // The projector onto |0> separates the two states by exactly 1.
        let diff_projector = Operator::diagonal(&[1.0, 0.0]);
        assert!(distinguishability(&zero, &one, &[diff_projector], &[0.5]).unwrap());
    }
}
