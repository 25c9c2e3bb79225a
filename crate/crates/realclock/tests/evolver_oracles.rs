//! Cross-checks between the two dephasing propagators and the state-quality
//! invariants along whole runs.

use num_complex::Complex64;
use realclock::evolver::{
    damping_envelope, damping_log, lindblad_propagate_exact, lindblad_propagate_ode, SigmaProfile,
};
use realclock::qops::{expectation, hermiticity_defect, max_abs_diff, spectral, DensityMatrix, Operator};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn four_level_state() -> DensityMatrix {
    let ket = [c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.5)];
    DensityMatrix::from_pure(&ket).unwrap()
}

fn four_level_hamiltonian() -> Operator {
    Operator::diagonal(&[0.0, 0.7, 1.9, 3.1])
}

#[test]
fn exact_and_ode_agree_on_four_levels_with_constant_rate() {
    let h = four_level_hamiltonian();
    let rho = four_level_state();
    let sigma = SigmaProfile::Constant { value: 0.08 };
    let times: Vec<f64> = (0..=8).map(|i| i as f64 * 0.5).collect();
    let exact = lindblad_propagate_exact(&rho, &h, &sigma, &times).unwrap();
    let ode = lindblad_propagate_ode(&rho, &h, &sigma, &times, 2e-3).unwrap();
    for (a, b) in exact.states.iter().zip(&ode.states) {
        assert!(max_abs_diff(a.entries(), b.entries()) < 1e-7);
    }
}

#[test]
fn exact_and_ode_agree_with_a_power_law_rate() {
    let h = four_level_hamiltonian();
    let rho = four_level_state();
    // Cube-root clock in simulation units: sigma = k T^(-1/3).
    let sigma = SigmaProfile::PowerLaw {
        prefactor: 0.06,
        exponent: -1.0 / 3.0,
    };
    let times: Vec<f64> = (0..=10).map(|i| 0.05 + i as f64 * 0.7).collect();
    let exact = lindblad_propagate_exact(&rho, &h, &sigma, &times).unwrap();
    let ode = lindblad_propagate_ode(&rho, &h, &sigma, &times, 1e-3).unwrap();
    for (a, b) in exact.states.iter().zip(&ode.states) {
        assert!(max_abs_diff(a.entries(), b.entries()) < 1e-7);
    }
}

#[test]
fn runs_keep_states_physical_throughout() {
    let h = four_level_hamiltonian();
    let rho = four_level_state();
    let sigma = SigmaProfile::Constant { value: 0.12 };
    let times: Vec<f64> = (0..=12).map(|i| i as f64 * 0.4).collect();
    let e0 = expectation(&h, &rho).unwrap().re;
    for run in [
        lindblad_propagate_exact(&rho, &h, &sigma, &times).unwrap(),
        lindblad_propagate_ode(&rho, &h, &sigma, &times, 2e-3).unwrap(),
    ] {
        for state in &run.states {
            assert!((state.trace().re - 1.0).abs() < 1e-9);
            assert!(hermiticity_defect(state.entries()) < 1e-9);
            let eigs = spectral(&state.as_operator()).unwrap();
            assert!(eigs.eigenvalues()[0] >= -1e-8);
            let e = expectation(&h, state).unwrap().re;
            assert!((e - e0).abs() < 1e-9, "energy drift {e} vs {e0}");
        }
    }
}

#[test]
fn envelope_is_monotone_in_time_and_gap() {
    let sigma = SigmaProfile::PowerLaw {
        prefactor: 0.2,
        exponent: -1.0 / 3.0,
    };
    let mut last = 1.0 + 1e-15;
    for i in 0..60 {
        let t = i as f64 * 0.25;
        let e = damping_envelope(1.3, &sigma, t);
        assert!(e <= last && e > 0.0 && e <= 1.0);
        last = e;
    }
    for (small, large) in [(0.5, 1.0), (1.0, 2.5)] {
        assert!(damping_envelope(large, &sigma, 2.0) <= damping_envelope(small, &sigma, 2.0));
    }
}

#[test]
fn cube_root_envelope_exponent_grows_as_t_to_two_thirds() {
    let k = 0.11;
    let sigma = SigmaProfile::PowerLaw {
        prefactor: k,
        exponent: -1.0 / 3.0,
    };
    let de = 1.7;
    for t in [0.2, 1.0, 5.0, 25.0] {
        let got = damping_log(de, &sigma, t);
        let expected = -de * de * 1.5 * k * t.powf(2.0 / 3.0);
        assert!(
            ((got - expected) / expected).abs() < 1e-12,
            "t = {t}: {got} vs {expected}"
        );
    }
}
