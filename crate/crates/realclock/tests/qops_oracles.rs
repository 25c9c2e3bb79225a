//! Independent oracles for the operator algebra: a characteristic-polynomial
//! root finder against the Jacobi eigensolver, closed-form precession, and
//! metric/product properties on seeded samples.

use num_complex::Complex64;
use realclock::qops::{
    commutator, evolve_unitary, expectation, max_abs_diff, spectral, tensor, trace_distance,
    DensityMatrix, Operator,
};
use realclock::rng::XorShift64Star;
use realclock::spincavity::{pair_hamiltonian, SpinCavityParams};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Characteristic polynomial coefficients via Faddeev-LeVerrier:
/// p(x) = x^n + c[0] x^(n-1) + ... + c[n-1].
fn characteristic_polynomial(h: &Operator) -> Vec<f64> {
    let n = h.dim();
    let hm = h.entries();
    let mut m = hm.clone();
    let mut coeffs = Vec::with_capacity(n);
    for k in 1..=n {
        let ck = -m.diag().sum().re / k as f64;
        coeffs.push(ck);
        if k < n {
            let mut shifted = m.clone();
            for i in 0..n {
                shifted[[i, i]] += c(ck, 0.0);
            }
            m = hm.dot(&shifted);
        }
    }
    coeffs
}

fn eval_poly(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 1.0;
    for &c in coeffs {
        acc = acc * x + c;
    }
    acc
}

/// All real roots of the polynomial by sign-change scan plus bisection.
fn bisection_roots(coeffs: &[f64], lo: f64, hi: f64, scan_steps: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    let h = (hi - lo) / scan_steps as f64;
    let mut x_prev = lo;
    let mut f_prev = eval_poly(coeffs, lo);
    for i in 1..=scan_steps {
        let x = lo + h * i as f64;
        let f = eval_poly(coeffs, x);
        if f_prev == 0.0 {
            roots.push(x_prev);
        } else if f_prev * f < 0.0 {
            let (mut a, mut b) = (x_prev, x);
            let mut fa = f_prev;
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                let fm = eval_poly(coeffs, mid);
                if fa * fm <= 0.0 {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
                if b - a < 1e-14 {
                    break;
                }
            }
            roots.push(0.5 * (a + b));
        }
        x_prev = x;
        f_prev = f;
    }
    roots
}

#[test]
fn jacobi_spectrum_matches_characteristic_polynomial_roots() {
    // The quoted pair Hamiltonian case: f = 1, B = 1, gamma1 = 2, gamma2 = 1.
    let params = SpinCavityParams::uniform(1, 1.0, 2.0, 1.0, 1.0, 0.1).unwrap();
    let h = pair_hamiltonian(&params, 0).unwrap();
    let dec = spectral(&h).unwrap();
    let coeffs = characteristic_polynomial(&h);
    // Gershgorin-style bracket.
    let bound = 1.0
        + h.entries()
            .rows()
            .into_iter()
            .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max);
    let roots = bisection_roots(&coeffs, -bound, bound, 4000);
    assert_eq!(roots.len(), 4, "expected four simple roots, got {roots:?}");
    for (eig, root) in dec.eigenvalues().iter().zip(&roots) {
        assert!(
            (eig - root).abs() < 1e-10,
            "eigenvalue {eig} vs polynomial root {root}"
        );
    }
}

#[test]
fn larmor_precession_matches_the_closed_form() {
    let omega = 1.8;
    let h = Operator::spin_z().scaled(c(omega, 0.0));
    let plus_x = DensityMatrix::from_pure(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
    let sx = Operator::pauli_x();
    for phase in [std::f64::consts::FRAC_PI_2, std::f64::consts::PI] {
        let t = phase / omega;
        let rho_t = evolve_unitary(&h, &plus_x, t).unwrap();
        let got = expectation(&sx, &rho_t).unwrap().re;
        assert!(
            (got - phase.cos()).abs() < 1e-12,
            "<sigma_x> at omega t = {phase}: {got}"
        );
    }
}

#[test]
fn hamiltonian_commutes_with_its_own_spectral_functions() {
    let params = SpinCavityParams::uniform(1, 1.3, 1.9, 0.4, 0.8, 0.1).unwrap();
    let h = pair_hamiltonian(&params, 0).unwrap();
    let dec = spectral(&h).unwrap();
    // f(x) = x^3 - 2x + 1/2 through the spectral calculus...
    let f_of_h = dec.apply(|x| x * x * x - 2.0 * x + 0.5);
    // ... must agree with the plain matrix polynomial ...
    let h2 = h.matmul(&h).unwrap();
    let h3 = h2.matmul(&h).unwrap();
    let direct = h3
        .add(&h.scaled(c(-2.0, 0.0)))
        .unwrap()
        .add(&Operator::identity(4).scaled(c(0.5, 0.0)))
        .unwrap();
    assert!(max_abs_diff(f_of_h.entries(), direct.entries()) < 1e-12);
    // ... and commute with H.
    let comm = commutator(&h, &f_of_h).unwrap();
    assert!(comm.max_abs_entry() < 1e-12);
}

fn random_density(rng: &mut XorShift64Star, dim: usize) -> DensityMatrix {
    // Mixture of two random pure states.
    let ket = |rng: &mut XorShift64Star| -> Vec<Complex64> {
        (0..dim)
            .map(|_| c(rng.next_in(-1.0, 1.0), rng.next_in(-1.0, 1.0)))
            .collect()
    };
    let w = rng.next_in(0.1, 0.9);
    DensityMatrix::mixture(&[
        (w, DensityMatrix::from_pure(&ket(rng)).unwrap()),
        (1.0 - w, DensityMatrix::from_pure(&ket(rng)).unwrap()),
    ])
    .unwrap()
}

#[test]
fn trace_distance_is_a_metric_on_sampled_triples() {
    let mut rng = XorShift64Star::new(2024);
    for _ in 0..40 {
        let a = random_density(&mut rng, 4);
        let b = random_density(&mut rng, 4);
        let d = random_density(&mut rng, 4);
        let ab = trace_distance(&a, &b).unwrap();
        let ba = trace_distance(&b, &a).unwrap();
        let ad = trace_distance(&a, &d).unwrap();
        let db = trace_distance(&d, &b).unwrap();
        assert!((ab - ba).abs() <= 1e-15, "symmetry: {ab} vs {ba}");
        assert!(ab <= ad + db + 1e-12, "triangle: {ab} > {ad} + {db}");
        assert!((0.0..=1.0).contains(&ab));
    }
}

#[test]
fn tensor_satisfies_the_mixed_product_property() {
    let mut rng = XorShift64Star::new(77);
    let random_op = |rng: &mut XorShift64Star, dim: usize| {
        let mut m = ndarray::Array2::zeros((dim, dim));
        for i in 0..dim {
            for j in 0..dim {
                m[[i, j]] = c(rng.next_in(-1.0, 1.0), rng.next_in(-1.0, 1.0));
            }
        }
        Operator::new(m).unwrap()
    };
    for _ in 0..10 {
        let a = random_op(&mut rng, 2);
        let b = random_op(&mut rng, 3);
        let d = random_op(&mut rng, 2);
        let e = random_op(&mut rng, 3);
        let left = tensor(&a, &b).unwrap().matmul(&tensor(&d, &e).unwrap()).unwrap();
        let right = tensor(&a.matmul(&d).unwrap(), &b.matmul(&e).unwrap()).unwrap();
        assert!(max_abs_diff(left.entries(), right.entries()) < 1e-12);
    }
}

#[test]
fn unitary_evolution_preserves_the_spectrum() {
    let mut rng = XorShift64Star::new(4096);
    for _ in 0..10 {
        let rho = random_density(&mut rng, 4);
        let mut hm = ndarray::Array2::zeros((4, 4));
        for i in 0..4 {
            for j in i..4 {
                if i == j {
                    hm[[i, i]] = c(rng.next_in(-1.0, 1.0), 0.0);
                } else {
                    let z = c(rng.next_in(-1.0, 1.0), rng.next_in(-1.0, 1.0));
                    hm[[i, j]] = z;
                    hm[[j, i]] = z.conj();
                }
            }
        }
        let h = Operator::hermitian(hm).unwrap();
        let evolved = evolve_unitary(&h, &rho, 1.37).unwrap();
        let before = spectral(&rho.as_operator()).unwrap();
        let after = spectral(&evolved.as_operator()).unwrap();
        for (x, y) in before.eigenvalues().iter().zip(after.eigenvalues()) {
            assert!((x - y).abs() < 1e-8, "spectrum drift: {x} vs {y}");
        }
        assert!((evolved.trace().re - 1.0).abs() < 1e-10);
    }
}
