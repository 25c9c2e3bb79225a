//! Clock models and relational evolution.
//!
//! A clock model fixes how the reading uncertainty grows with the reading,
//! delta_T = width_scale * t_planck^(1-a) * T^a. From it follow the
//! distribution of ideal times compatible with a reading, the moment
//! coefficients a(T), b(T) and the dephasing rate sigma(T) = db/dT, the
//! clock-smeared density matrix (a quadrature over unitarily evolved
//! states), and the conditional probability of an observable value given
//! that a quantum clock subsystem shows a particular reading.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qops::{
    self, dagger_of, evolve_unitary, spectral, DensityMatrix, Operator, HERMITICITY_TOL,
    IDEMPOTENCY_TOL, POSITIVITY_TOL,
};

/// Shape of the clock-reading distribution.
///
/// `GaussianGrowingWidth` is the default maximum-entropy choice with the
/// stated second moment. `SkewGammaGrowingWidth` is a diagnostic profile
/// with the same mean (the reading, i.e. an unbiased clock) and the same
/// width law, but unit skewness; its third moment is what a second-order
/// moment truncation cannot see, so it exposes the truncation error that
/// vanishes identically for Gaussian profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClockProfile {
    IdealDelta,
    GaussianGrowingWidth,
    SkewGammaGrowingWidth,
}

/// Parametrization of the clock-uncertainty law.
#[derive(Debug, Clone, Copy)]
pub struct ClockModel {
    t_planck: f64,
    exponent_a: f64,
    profile: ClockProfile,
    width_scale: f64,
}

/// Moment coefficients of the reading distribution at a given reading.
///
/// `a_t` is the first central moment (zero for the unbiased profiles here,
/// kept so biased clocks can be configured), `b_t` the half second moment
/// w^2/2, and `sigma_t` its derivative in the reading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClockMoments {
    pub a_t: f64,
    pub b_t: f64,
    pub sigma_t: f64,
}

impl ClockModel {
    pub fn new(
        t_planck: f64,
        exponent_a: f64,
        profile: ClockProfile,
        width_scale: f64,
    ) -> Result<Self> {
        if t_planck <= 0.0 || !t_planck.is_finite() {
            return Err(Error::InvalidParams(format!(
                "t_planck must be positive, got {t_planck}"
            )));
        }
        if exponent_a <= 0.0 || exponent_a > 1.0 || exponent_a.is_nan() {
            return Err(Error::InvalidParams(format!(
                "clock exponent must lie in (0, 1], got {exponent_a}"
            )));
        }
        if width_scale <= 0.0 || !width_scale.is_finite() {
            return Err(Error::InvalidParams(format!(
                "width_scale must be positive, got {width_scale}"
            )));
        }
        Ok(Self {
            t_planck,
            exponent_a,
            profile,
            width_scale,
        })
    }

    /// Gaussian profile with the physical Planck time and exponent 1/3.
    pub fn gaussian(t_planck: f64, exponent_a: f64, width_scale: f64) -> Result<Self> {
        Self::new(
            t_planck,
            exponent_a,
            ClockProfile::GaussianGrowingWidth,
            width_scale,
        )
    }

    /// A clock that follows ideal time exactly.
    pub fn ideal() -> Self {
        Self {
            t_planck: 1e-44,
            exponent_a: 1.0,
            profile: ClockProfile::IdealDelta,
            width_scale: 1.0,
        }
    }

    pub fn t_planck(&self) -> f64 {
        self.t_planck
    }

    pub fn exponent_a(&self) -> f64 {
        self.exponent_a
    }

    pub fn profile(&self) -> ClockProfile {
        self.profile
    }

    pub fn width_scale(&self) -> f64 {
        self.width_scale
    }

    /// Reading uncertainty delta_T = width_scale * t_planck^(1-a) * T^a.
    ///
    /// Zero at T = 0, strictly increasing, and identically zero for the
    /// ideal profile.
    pub fn uncertainty(&self, t_reading: f64) -> Result<f64> {
        if t_reading < 0.0 {
            return Err(Error::NegativeTime { value: t_reading });
        }
        if self.profile == ClockProfile::IdealDelta {
            return Ok(0.0);
        }
        Ok(self.width_scale
            * self.t_planck.powf(1.0 - self.exponent_a)
            * t_reading.powf(self.exponent_a))
    }

    /// Distribution over ideal times t compatible with the reading.
    pub fn distribution(&self, t_reading: f64) -> Result<ClockDistribution> {
        match self.profile {
            ClockProfile::IdealDelta => Ok(ClockDistribution::Delta { center: t_reading }),
            ClockProfile::GaussianGrowingWidth => {
                if t_reading <= 0.0 {
                    return Err(Error::NonpositiveTime { value: t_reading });
                }
                Ok(ClockDistribution::Gaussian {
                    mean: t_reading,
                    std: self.uncertainty(t_reading)?,
                })
            }
            ClockProfile::SkewGammaGrowingWidth => {
                if t_reading <= 0.0 {
                    return Err(Error::NonpositiveTime { value: t_reading });
                }
                Ok(ClockDistribution::SkewGamma {
                    mean: t_reading,
                    std: self.uncertainty(t_reading)?,
                })
            }
        }
    }

    /// Moment coefficients at the reading; see [`ClockMoments`].
    ///
    /// For the growing-width profiles with w(T) = c t_P^(1-a) T^a this is
    /// b(T) = w^2/2 and sigma(T) = a c^2 t_P^(2-2a) T^(2a-1). The rate is
    /// singular at T -> 0 when a < 1/2, hence the T > 0 requirement.
    pub fn moments(&self, t_reading: f64) -> Result<ClockMoments> {
        if self.profile == ClockProfile::IdealDelta {
            return Ok(ClockMoments {
                a_t: 0.0,
                b_t: 0.0,
                sigma_t: 0.0,
            });
        }
        if t_reading <= 0.0 {
            return Err(Error::NonpositiveTime { value: t_reading });
        }
        let w = self.uncertainty(t_reading)?;
        let a = self.exponent_a;
        let sigma = a
            * self.width_scale
            * self.width_scale
            * self.t_planck.powf(2.0 - 2.0 * a)
            * t_reading.powf(2.0 * a - 1.0);
        Ok(ClockMoments {
            a_t: 0.0,
            b_t: 0.5 * w * w,
            sigma_t: sigma,
        })
    }
}

/// Normalized density over ideal time t at a fixed clock reading.
#[derive(Debug, Clone, Copy)]
pub enum ClockDistribution {
    /// Formal delta at the reading; handled specially downstream.
    Delta { center: f64 },
    /// Gaussian with mean at the reading (unbiased clock).
    Gaussian { mean: f64, std: f64 },
    /// Shifted Gamma with shape 4: mean at the reading, the same standard
    /// deviation as the Gaussian profile, and skewness one. Support starts
    /// at mean - 2 std.
    SkewGamma { mean: f64, std: f64 },
}

impl ClockDistribution {
    /// Probability density at ideal time t (delta profiles have no density).
    pub fn pdf(&self, t: f64) -> f64 {
        match *self {
            ClockDistribution::Delta { .. } => 0.0,
            ClockDistribution::Gaussian { mean, std } => {
                let z = (t - mean) / std;
                (-0.5 * z * z).exp() / (std * (2.0 * std::f64::consts::PI).sqrt())
            }
            ClockDistribution::SkewGamma { mean, std } => {
                // shape k = 4, scale = std/2, shift = mean - 2 std; Gamma(4) = 6.
                let scale = 0.5 * std;
                let u = t - (mean - 2.0 * std);
                if u <= 0.0 {
                    return 0.0;
                }
                let x = u / scale;
                x * x * x * (-x).exp() / (6.0 * scale)
            }
        }
    }

    pub fn is_delta(&self) -> bool {
        matches!(self, ClockDistribution::Delta { .. })
    }

    /// How many widths of window are required left of the mean before the
    /// truncated mass stops being the dominant error.
    fn left_requirement(&self) -> f64 {
        match self {
            // The Gamma profile has no mass below mean - 2 std.
            ClockDistribution::SkewGamma { .. } => 2.0,
            _ => 3.0,
        }
    }
}

/// Quadrature family for the finite-window time integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrature {
    Trapezoid,
    GaussLegendre,
}

/// Finite window and rule standing in for the infinite time integrals.
#[derive(Debug, Clone, Copy)]
pub struct IntegrationSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub num_points: usize,
    pub quadrature: Quadrature,
}

/// Default window half-width for clock integrals, in clock widths.
pub const DEFAULT_HALF_WIDTHS: f64 = 8.0;
/// Default quadrature density, nodes per clock width covered.
pub const DEFAULT_POINTS_PER_WIDTH: usize = 256;

impl IntegrationSpec {
    pub fn new(t_min: f64, t_max: f64, num_points: usize, quadrature: Quadrature) -> Result<Self> {
        if t_max <= t_min || t_max.is_nan() || t_min.is_nan() {
            return Err(Error::InvalidParams(format!(
                "integration window needs t_max > t_min, got [{t_min}, {t_max}]"
            )));
        }
        if num_points < 16 {
            return Err(Error::InvalidParams(format!(
                "need at least 16 quadrature points, got {num_points}"
            )));
        }
        Ok(Self {
            t_min,
            t_max,
            num_points,
            quadrature,
        })
    }

    /// Gauss-Legendre window centered on the reading, `half_widths` clock
    /// widths to each side, at the default node density.
    pub fn around_reading(model: &ClockModel, t_reading: f64, half_widths: f64) -> Result<Self> {
        let w = model.uncertainty(t_reading)?;
        if w <= 0.0 {
            return Err(Error::InvalidParams(
                "cannot size a window for a zero-width clock".into(),
            ));
        }
        let points = ((2.0 * half_widths) * DEFAULT_POINTS_PER_WIDTH as f64).ceil() as usize;
        Self::new(
            t_reading - half_widths * w,
            t_reading + half_widths * w,
            points.max(16),
            Quadrature::GaussLegendre,
        )
    }

    /// Nodes and weights on [t_min, t_max].
    pub fn nodes(&self) -> Vec<(f64, f64)> {
        match self.quadrature {
            Quadrature::Trapezoid => {
                let n = self.num_points;
                let h = (self.t_max - self.t_min) / (n - 1) as f64;
                (0..n)
                    .map(|i| {
                        let t = self.t_min + h * i as f64;
                        let w = if i == 0 || i == n - 1 { 0.5 * h } else { h };
                        (t, w)
                    })
                    .collect()
            }
            Quadrature::GaussLegendre => {
                let (x, w) = gauss_legendre(self.num_points);
                let mid = 0.5 * (self.t_min + self.t_max);
                let half = 0.5 * (self.t_max - self.t_min);
                x.iter()
                    .zip(w.iter())
                    .map(|(&xi, &wi)| (mid + half * xi, half * wi))
                    .collect()
            }
        }
    }
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
///
/// Newton iteration on the Legendre recurrence; deterministic, accurate to
/// machine precision for the node counts used here (up to a few thousand).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "Gauss-Legendre rule needs at least two nodes");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Asymptotic initial guess for the i-th root (descending order).
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P'_n(x).
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                // One polishing pass after convergence.
                let mut q0 = 1.0;
                let mut q1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let q2 = ((2.0 * kf - 1.0) * x * q1 - (kf - 1.0) * q0) / kf;
                    q0 = q1;
                    q1 = q2;
                }
                dp = n as f64 * (x * q1 - q0) / (x * x - 1.0);
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        // The middle node of an odd rule is exactly zero.
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Clock-smeared density matrix: the quadrature of U(t) rho0 U(t)^dagger
/// against the clock distribution at the reading, renormalized to unit
/// trace to absorb the window truncation.
///
/// The window must cover at least three clock widths on each side of the
/// reading (left: down to the support edge for the Gamma profile); the
/// recommended default is [`DEFAULT_HALF_WIDTHS`]. An ideal clock bypasses
/// the quadrature entirely and reduces to unitary evolution.
pub fn effective_density(
    rho0: &DensityMatrix,
    h: &Operator,
    model: &ClockModel,
    t_reading: f64,
    spec: &IntegrationSpec,
) -> Result<DensityMatrix> {
    if h.dim() != rho0.dim() {
        return Err(Error::DimensionMismatch {
            op: "effective_density",
            left: h.dim(),
            right: rho0.dim(),
        });
    }
    let dist = model.distribution(t_reading)?;
    if let ClockDistribution::Delta { center } = dist {
        return evolve_unitary(h, rho0, center);
    }

    let w = model.uncertainty(t_reading)?;
    let left = (t_reading - spec.t_min) / w;
    let right = (spec.t_max - t_reading) / w;
    let left_required = dist.left_requirement();
    if left < left_required - 1e-9 || right < 3.0 - 1e-9 {
        return Err(Error::WindowTooNarrow {
            covered: left.min(right),
            required: left_required.max(3.0),
        });
    }

    let dec = spectral(h)?;
    let dim = rho0.dim();
    let mut acc: Array2<Complex64> = Array2::zeros((dim, dim));
    let mut mass = 0.0;
    for (t, wq) in spec.nodes() {
        let p = dist.pdf(t);
        if p == 0.0 {
            continue;
        }
        let u = dec.propagator(t);
        let ud = dagger_of(&u);
        let evolved = u.dot(rho0.entries()).dot(&ud);
        let weight = wq * p;
        acc = acc + evolved.mapv(|z| z * Complex64::new(weight, 0.0));
        mass += weight;
    }
    if mass <= 0.0 {
        return Err(Error::InvalidParams(
            "clock distribution carries no mass on the integration window".into(),
        ));
    }
    let acc = acc.mapv(|z| z / mass);
    DensityMatrix::validated(acc, POSITIVITY_TOL)
}

fn require_projector(p: &Operator) -> Result<()> {
    let deviation = qops::hermiticity_defect(p.entries());
    if deviation > HERMITICITY_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let p2 = p.entries().dot(p.entries());
    let defect = qops::max_abs_diff(&p2, p.entries());
    if defect > IDEMPOTENCY_TOL {
        return Err(Error::NotIdempotent { deviation: defect });
    }
    Ok(())
}

/// Conditional probability that the observable projector fires given that
/// the clock subsystem reads T0, over a finite time window:
///
/// integral dt Tr(P_O(t) P_T0(t) rho P_T0(t)) / integral dt Tr(P_T0(t) rho)
///
/// with Heisenberg-picture projectors P(t) = U(t)^dagger P U(t) under the
/// joint system+clock Hamiltonian. `t_projector` is the member of the
/// reading-indexed family for the chosen T0.
pub fn conditional_probability(
    o_projector: &Operator,
    t_projector: &Operator,
    rho: &DensityMatrix,
    h_total: &Operator,
    spec: &IntegrationSpec,
) -> Result<f64> {
    let dim = rho.dim();
    for (d, op) in [
        (o_projector.dim(), "conditional_probability"),
        (t_projector.dim(), "conditional_probability"),
        (h_total.dim(), "conditional_probability"),
    ] {
        if d != dim {
            return Err(Error::DimensionMismatch {
                op,
                left: d,
                right: dim,
            });
        }
    }
    require_projector(o_projector)?;
    require_projector(t_projector)?;

    let dec = spectral(h_total)?;
    let po = o_projector.entries();
    let pt = t_projector.entries();
    let mut numerator = 0.0;
    let mut denominator = 0.0;
    for (t, wq) in spec.nodes() {
        // Heisenberg projectors via the Schroedinger picture on rho:
        // Tr(P_O(t) P_T(t) rho P_T(t)) = Tr(P_O P_T rho(t) P_T).
        let u = dec.propagator(t);
        let ud = dagger_of(&u);
        let rho_t = u.dot(rho.entries()).dot(&ud);
        let pt_rho_pt = pt.dot(&rho_t).dot(pt);
        let num_t = po
            .dot(&pt_rho_pt)
            .diag()
            .sum()
            .re;
        let den_t = pt.dot(&rho_t).diag().sum().re;
        numerator += wq * num_t;
        denominator += wq * den_t;
    }
    if denominator < 1e-14 {
        return Err(Error::ClockNeverReadsT0 { value: denominator });
    }
    Ok((numerator / denominator).clamp(0.0, 1.0))
}
