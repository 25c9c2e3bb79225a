//! Brute-force oracle protocol for the spin-cavity closed forms.
//!
//! The stream simulator is the ground truth at small N. The quoted unitary
//! closed form is compared against it over seeded random parameter sets,
//! under both out-of-cavity conventions, in scale-normalized units
//! (values multiplied by 2^(N+1), so the initial coherence is O(1)).
//!
//! Protocol outcome, frozen below and documented in the README: the closed
//! form is NOT exact for generic parameters in either frequency reading.
//! It is exact at tau = 0, and, in the convention-consistent frequency
//! reading with the toggle off, whenever the environment spins carry no dynamics
//! of their own (f_k = 0 and gamma2 = 0). Generic deviations are O(1) in
//! normalized units because the pair dynamics resolves two-frequency
//! structure (sum and difference Zeeman lines plus the exchange imbalance
//! term) that the single-frequency product form cannot represent. The
//! seeded maxima measured at the pinned seed are frozen here as regression
//! tolerances; any drift means the dynamics or the closed form changed.

use num_complex::Complex64;
use realclock::rng::XorShift64Star;
use realclock::spincavity::{
    m_expectation_ket, m_unitary_analytic, m_unitary_effective, simulate_stream_ket,
    SpinCavityParams,
};

pub const ORACLE_SEED: u64 = 0xC0FFEE;
pub const SETS_PER_N: usize = 100;

/// Measured 2^(N+1)-normalized maxima at ORACLE_SEED, frozen as regression
/// bounds (measured 1.604651 / 1.391752, rounded up at the third decimal).
const FROZEN_MAX_VERBATIM_TOGGLE_ON: f64 = 1.605;
const FROZEN_MAX_VERBATIM_TOGGLE_OFF: f64 = 1.605;
const FROZEN_MAX_EFFECTIVE_TOGGLE_ON: f64 = 1.392;
const FROZEN_MAX_EFFECTIVE_TOGGLE_OFF: f64 = 1.392;

fn random_params(rng: &mut XorShift64Star, n: usize, zeeman_outside: bool) -> SpinCavityParams {
    let needle_angle = rng.next_in(0.0, std::f64::consts::TAU);
    let needle = (
        Complex64::new(needle_angle.cos(), 0.0),
        Complex64::new(needle_angle.sin(), 0.0),
    );
    let env: Vec<(Complex64, Complex64)> = (0..n)
        .map(|_| {
            let a = rng.next_in(0.0, std::f64::consts::TAU);
            (
                Complex64::new(a.cos(), 0.0),
                Complex64::new(a.sin(), 0.0),
            )
        })
        .collect();
    let couplings: Vec<f64> = (0..n).map(|_| rng.next_in(0.0, 2.0)).collect();
    let b = rng.next_in(0.0, 2.0);
    let g1 = rng.next_in(0.0, 2.0);
    let g2 = rng.next_in(0.0, 2.0);
    let tau = rng.next_in(0.0, 1.5);
    SpinCavityParams::new(n, b, g1, g2, couplings, tau, needle, env, zeeman_outside).unwrap()
}

struct Deviations {
    verbatim_on: f64,
    verbatim_off: f64,
    effective_on: f64,
    effective_off: f64,
}

fn measure() -> Deviations {
    let mut dev = Deviations {
        verbatim_on: 0.0,
        verbatim_off: 0.0,
        effective_on: 0.0,
        effective_off: 0.0,
    };
    for n in 1..=6usize {
        let mut rng = XorShift64Star::new(ORACLE_SEED ^ (n as u64));
        for _ in 0..SETS_PER_N {
            let base = random_params(&mut rng, n, true);
            let scale = 2f64.powi(n as i32 + 1);
            for toggle in [true, false] {
                let mut params = base.clone();
                params.zeeman_outside_cavity = toggle;
                let ket = simulate_stream_ket(&params).unwrap();
                let brute = m_expectation_ket(&ket).re * scale;
                let verbatim = m_unitary_analytic(&params).re * scale;
                let effective = m_unitary_effective(&params).re * scale;
                let dv = (verbatim - brute).abs();
                let de = (effective - brute).abs();
                if toggle {
                    dev.verbatim_on = dev.verbatim_on.max(dv);
                    dev.effective_on = dev.effective_on.max(de);
                } else {
                    dev.verbatim_off = dev.verbatim_off.max(dv);
                    dev.effective_off = dev.effective_off.max(de);
                }
            }
        }
    }
    dev
}

#[test]
fn oracle_protocol_deviations_stay_at_frozen_bounds() {
    let dev = measure();
    println!(
        "oracle protocol maxima (normalized): verbatim on/off = {:.6} / {:.6}, \
         effective on/off = {:.6} / {:.6}",
        dev.verbatim_on, dev.verbatim_off, dev.effective_on, dev.effective_off
    );
    assert!(
        dev.verbatim_on <= FROZEN_MAX_VERBATIM_TOGGLE_ON,
        "verbatim/toggle-on deviation grew: {} > {}",
        dev.verbatim_on,
        FROZEN_MAX_VERBATIM_TOGGLE_ON
    );
    assert!(
        dev.verbatim_off <= FROZEN_MAX_VERBATIM_TOGGLE_OFF,
        "verbatim/toggle-off deviation grew: {} > {}",
        dev.verbatim_off,
        FROZEN_MAX_VERBATIM_TOGGLE_OFF
    );
    assert!(
        dev.effective_on <= FROZEN_MAX_EFFECTIVE_TOGGLE_ON,
        "effective/toggle-on deviation grew: {} > {}",
        dev.effective_on,
        FROZEN_MAX_EFFECTIVE_TOGGLE_ON
    );
    assert!(
        dev.effective_off <= FROZEN_MAX_EFFECTIVE_TOGGLE_OFF,
        "effective/toggle-off deviation grew: {} > {}",
        dev.effective_off,
        FROZEN_MAX_EFFECTIVE_TOGGLE_OFF
    );
    // The deviations are also genuinely O(1): anything tiny would mean the
    // protocol stopped exercising the interesting regime.
    assert!(dev.verbatim_on > 0.1);
}

#[test]
fn closed_form_is_exact_at_zero_interaction_time() {
    let mut rng = XorShift64Star::new(ORACLE_SEED);
    for n in 1..=6usize {
        for _ in 0..20 {
            let mut params = random_params(&mut rng, n, true);
            params.tau = 0.0;
            let ket = simulate_stream_ket(&params).unwrap();
            let brute = m_expectation_ket(&ket).re;
            let verbatim = m_unitary_analytic(&params).re;
            let effective = m_unitary_effective(&params).re;
            assert!((brute - verbatim).abs() < 1e-12);
            assert!((brute - effective).abs() < 1e-12);
        }
    }
}

#[test]
fn effective_form_is_exact_for_static_environment() {
    // f_k = 0 and gamma2 = 0: the environment has no dynamics at all, the
    // needle precesses alone, and the convention-consistent form tracks the
    // stream exactly. The verbatim frequencies run twice too fast here.
    let mut rng = XorShift64Star::new(ORACLE_SEED ^ 0xF00D);
    for n in 1..=6usize {
        for _ in 0..20 {
            let mut params = random_params(&mut rng, n, false);
            params.couplings = vec![0.0; n];
            params.gamma2 = 0.0;
            let ket = simulate_stream_ket(&params).unwrap();
            let brute = m_expectation_ket(&ket).re;
            let effective = m_unitary_effective(&params).re;
            assert!(
                (brute - effective).abs() < 1e-9,
                "n = {n}: |{brute} - {effective}|"
            );
        }
    }
}

#[test]
fn closed_form_values_are_real_for_real_amplitudes() {
    let mut rng = XorShift64Star::new(ORACLE_SEED ^ 0xBEEF);
    for n in 1..=6usize {
        for _ in 0..30 {
            let params = random_params(&mut rng, n, true);
            assert!(m_unitary_analytic(&params).im.abs() < 1e-10);
            assert!(m_unitary_effective(&params).im.abs() < 1e-10);
            let ket = simulate_stream_ket(&params).unwrap();
            assert!(m_expectation_ket(&ket).im.abs() < 1e-10);
        }
    }
}
