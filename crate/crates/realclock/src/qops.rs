//! Dense complex operator and state algebra.
//!
//! Everything else in the crate is built from the primitives here: Kronecker
//! products, commutators, Hermitian spectral decompositions, spectral-calculus
//! propagation, projective measurements and trace distances. Storage is dense
//! `Array2<Complex64>` throughout, capped at [`DIM_CAP`] dimensions; larger
//! Hilbert spaces are out of scope for the dense backend.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest operator dimension the dense backend will allocate.
pub const DIM_CAP: usize = 1 << 15;
/// Construction tolerance for Hermiticity checks.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Construction tolerance for projector idempotency checks.
pub const IDEMPOTENCY_TOL: f64 = 1e-10;
/// Allowed deviation of a density-matrix trace from one.
pub const TRACE_TOL: f64 = 1e-10;
/// Allowed negative dip of density-matrix eigenvalues.
pub const POSITIVITY_TOL: f64 = 1e-10;
/// Probabilities below this are treated as zero by [`project`].
pub const ZERO_PROB_TOL: f64 = 1e-14;
/// Above this dimension density-matrix validation skips the O(dim^3)
/// eigenvalue check; Hermiticity and trace are always verified.
pub const EIG_CHECK_CAP: usize = 512;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Dense complex square matrix with an optional Hermiticity promise.
///
/// The `hermitian_hint` flag is set by constructors that have actually
/// verified `max |A - A^dagger| <= 1e-12`; operations that require a
/// Hermitian input re-check when the hint is absent.
#[derive(Debug, Clone)]
pub struct Operator {
    entries: Array2<Complex64>,
    hermitian_hint: bool,
}

impl Operator {
    /// Wraps a square matrix without any Hermiticity promise.
    pub fn new(entries: Array2<Complex64>) -> Result<Self> {
        Self::check_shape(&entries)?;
        Ok(Self {
            entries,
            hermitian_hint: false,
        })
    }

    /// Wraps a square matrix, verifying Hermiticity to [`HERMITICITY_TOL`].
    pub fn hermitian(entries: Array2<Complex64>) -> Result<Self> {
        Self::check_shape(&entries)?;
        let deviation = hermiticity_defect(&entries);
        if deviation > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self {
            entries,
            hermitian_hint: true,
        })
    }

    fn check_shape(entries: &Array2<Complex64>) -> Result<()> {
        let (r, c) = entries.dim();
        if r != c {
            return Err(Error::DimensionMismatch {
                op: "operator construction",
                left: r,
                right: c,
            });
        }
        if r == 0 {
            return Err(Error::InvalidParams("zero-dimensional operator".into()));
        }
        if r > DIM_CAP {
            return Err(Error::DimensionLimit {
                dim: r,
                cap: DIM_CAP,
            });
        }
        Ok(())
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Array2::zeros((dim, dim));
        for i in 0..dim {
            m[[i, i]] = ONE;
        }
        Self {
            entries: m,
            hermitian_hint: true,
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: Array2::zeros((dim, dim)),
            hermitian_hint: true,
        }
    }

    /// Diagonal Hermitian operator from real entries.
    pub fn diagonal(values: &[f64]) -> Self {
        let dim = values.len();
        let mut m = Array2::zeros((dim, dim));
        for (i, &v) in values.iter().enumerate() {
            m[[i, i]] = Complex64::new(v, 0.0);
        }
        Self {
            entries: m,
            hermitian_hint: true,
        }
    }

    /// Rank-one projector |psi><psi| from a ket (normalized internally).
    pub fn ket_projector(ket: &[Complex64]) -> Result<Self> {
        let norm_sqr: f64 = ket.iter().map(|z| z.norm_sqr()).sum();
        if norm_sqr <= 0.0 {
            return Err(Error::InvalidParams("zero ket".into()));
        }
        let dim = ket.len();
        let mut m = Array2::zeros((dim, dim));
        for i in 0..dim {
            for j in 0..dim {
                m[[i, j]] = ket[i] * ket[j].conj() / norm_sqr;
            }
        }
        Ok(Self {
            entries: m,
            hermitian_hint: true,
        })
    }

    pub fn pauli_x() -> Self {
        let mut m = Array2::zeros((2, 2));
        m[[0, 1]] = ONE;
        m[[1, 0]] = ONE;
        Self {
            entries: m,
            hermitian_hint: true,
        }
    }

    pub fn pauli_y() -> Self {
        let mut m = Array2::zeros((2, 2));
        m[[0, 1]] = -I;
        m[[1, 0]] = I;
        Self {
            entries: m,
            hermitian_hint: true,
        }
    }

    pub fn pauli_z() -> Self {
        Self::diagonal(&[1.0, -1.0])
    }

    /// Spin component S_x = sigma_x / 2 (the crate-wide spin convention).
    pub fn spin_x() -> Self {
        Self::pauli_x().scaled(Complex64::new(0.5, 0.0))
    }

    /// Spin component S_y = sigma_y / 2.
    pub fn spin_y() -> Self {
        Self::pauli_y().scaled(Complex64::new(0.5, 0.0))
    }

    /// Spin component S_z = sigma_z / 2.
    pub fn spin_z() -> Self {
        Self::pauli_z().scaled(Complex64::new(0.5, 0.0))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn hermitian_hint(&self) -> bool {
        self.hermitian_hint
    }

    pub fn dagger(&self) -> Self {
        let mut m = Array2::zeros(self.entries.raw_dim());
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                m[[i, j]] = self.entries[[j, i]].conj();
            }
        }
        Self {
            entries: m,
            hermitian_hint: self.hermitian_hint,
        }
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            entries: self.entries.mapv(|z| z * factor),
            hermitian_hint: self.hermitian_hint && factor.im == 0.0,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other, "add")?;
        Ok(Self {
            entries: &self.entries + &other.entries,
            hermitian_hint: self.hermitian_hint && other.hermitian_hint,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other, "sub")?;
        Ok(Self {
            entries: &self.entries - &other.entries,
            hermitian_hint: self.hermitian_hint && other.hermitian_hint,
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other, "matmul")?;
        Ok(Self {
            entries: self.entries.dot(&other.entries),
            hermitian_hint: false,
        })
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.diag().sum()
    }

    /// Largest entry modulus, used by the tolerance checks throughout.
    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Verifies the Hermiticity promise, setting the hint on success.
    pub fn into_hermitian(self) -> Result<Self> {
        if self.hermitian_hint {
            return Ok(self);
        }
        Self::hermitian(self.entries)
    }

    fn check_same_dim(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    fn require_hermitian(&self) -> Result<()> {
        if self.hermitian_hint {
            return Ok(());
        }
        let deviation = hermiticity_defect(&self.entries);
        if deviation > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(())
    }
}

/// Positive-semidefinite unit-trace state.
///
/// `new` verifies Hermiticity to 1e-12, unit trace to 1e-10 and, for
/// dimensions up to [`EIG_CHECK_CAP`], a smallest eigenvalue above
/// -[`POSITIVITY_TOL`]. The structural constructors ([`DensityMatrix::from_pure`],
/// [`DensityMatrix::mixture`]) are positive by construction and skip the
/// eigenvalue solve, which keeps large product states affordable.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    entries: Array2<Complex64>,
}

impl DensityMatrix {
    pub fn new(entries: Array2<Complex64>) -> Result<Self> {
        Self::validated(entries, POSITIVITY_TOL)
    }

    pub(crate) fn validated(entries: Array2<Complex64>, positivity_tol: f64) -> Result<Self> {
        Operator::check_shape(&entries)?;
        let deviation = hermiticity_defect(&entries);
        if deviation > HERMITICITY_TOL {
            return Err(Error::InvalidDensity {
                reason: format!("Hermiticity defect {deviation:.3e} exceeds 1e-12"),
            });
        }
        let trace: Complex64 = entries.diag().sum();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::InvalidDensity {
                reason: format!("trace {trace} deviates from 1 by more than 1e-10"),
            });
        }
        let dim = entries.nrows();
        if dim <= EIG_CHECK_CAP {
            let (evals, _) = hermitian_eigen(&entries);
            let min = evals.iter().cloned().fold(f64::INFINITY, f64::min);
            if min < -positivity_tol {
                return Err(Error::InvalidDensity {
                    reason: format!("smallest eigenvalue {min:.3e} below -{positivity_tol:.0e}"),
                });
            }
        }
        Ok(Self { entries })
    }

    /// Pure state |psi><psi| from a ket; the ket is normalized internally.
    pub fn from_pure(ket: &[Complex64]) -> Result<Self> {
        let dim = ket.len();
        if dim == 0 || dim > DIM_CAP {
            return Err(Error::DimensionLimit { dim, cap: DIM_CAP });
        }
        let norm_sqr: f64 = ket.iter().map(|z| z.norm_sqr()).sum();
        if norm_sqr <= 0.0 {
            return Err(Error::InvalidParams("zero ket".into()));
        }
        let mut m = Array2::zeros((dim, dim));
        for i in 0..dim {
            for j in 0..dim {
                m[[i, j]] = ket[i] * ket[j].conj() / norm_sqr;
            }
        }
        Ok(Self { entries: m })
    }

    /// Convex mixture of states; weights must be nonnegative and sum to one.
    pub fn mixture(parts: &[(f64, DensityMatrix)]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidParams("empty mixture".into()));
        }
        let dim = parts[0].1.dim();
        let total: f64 = parts.iter().map(|(w, _)| *w).sum();
        if (total - 1.0).abs() > TRACE_TOL || parts.iter().any(|(w, _)| *w < -1e-15) {
            return Err(Error::InvalidParams(format!(
                "mixture weights must be nonnegative and sum to 1, got total {total}"
            )));
        }
        let mut m = Array2::zeros((dim, dim));
        for (w, rho) in parts {
            if rho.dim() != dim {
                return Err(Error::DimensionMismatch {
                    op: "mixture",
                    left: dim,
                    right: rho.dim(),
                });
            }
            m = m + rho.entries.mapv(|z| z * Complex64::new(*w, 0.0));
        }
        Ok(Self { entries: m })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.diag().sum()
    }

    /// Tr(rho^2); one for pure states.
    pub fn purity(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += (self.entries[[i, j]] * self.entries[[j, i]]).re;
            }
        }
        acc
    }

    /// Views the state as an operator (always Hermitian).
    pub fn as_operator(&self) -> Operator {
        Operator {
            entries: self.entries.clone(),
            hermitian_hint: true,
        }
    }
}

/// Eigen-decomposition of a Hermitian operator, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Array2<Complex64>,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary matrix whose columns are the eigenvectors.
    pub fn eigenvectors(&self) -> &Array2<Complex64> {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Largest level spacing max |E_n - E_m|.
    pub fn max_gap(&self) -> f64 {
        match (self.eigenvalues.first(), self.eigenvalues.last()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0.0,
        }
    }

    /// V f(E) V^dagger; Hermitian for real-valued f.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Operator {
        let dim = self.dim();
        let mut out = Array2::zeros((dim, dim));
        for n in 0..dim {
            let fe = Complex64::new(f(self.eigenvalues[n]), 0.0);
            for i in 0..dim {
                let vin = self.eigenvectors[[i, n]] * fe;
                for j in 0..dim {
                    out[[i, j]] += vin * self.eigenvectors[[j, n]].conj();
                }
            }
        }
        Operator {
            entries: out,
            hermitian_hint: true,
        }
    }

    /// Propagator U(t) = V exp(-i E t) V^dagger.
    pub fn propagator(&self, t: f64) -> Array2<Complex64> {
        let dim = self.dim();
        let mut out = Array2::zeros((dim, dim));
        for n in 0..dim {
            let phase = Complex64::from_polar(1.0, -self.eigenvalues[n] * t);
            for i in 0..dim {
                let vin = self.eigenvectors[[i, n]] * phase;
                for j in 0..dim {
                    out[[i, j]] += vin * self.eigenvectors[[j, n]].conj();
                }
            }
        }
        out
    }

    /// Matrix in the eigenbasis: V^dagger M V.
    pub fn to_eigenbasis(&self, m: &Array2<Complex64>) -> Array2<Complex64> {
        let vd = dagger_of(&self.eigenvectors);
        vd.dot(m).dot(&self.eigenvectors)
    }

    /// Inverse transform: V M V^dagger.
    pub fn from_eigenbasis(&self, m: &Array2<Complex64>) -> Array2<Complex64> {
        let vd = dagger_of(&self.eigenvectors);
        self.eigenvectors.dot(m).dot(&vd)
    }
}

/// Kronecker product; the result inherits the Hermiticity hint of both
/// factors. Fails once the combined dimension exceeds [`DIM_CAP`].
pub fn tensor(a: &Operator, b: &Operator) -> Result<Operator> {
    let (da, db) = (a.dim(), b.dim());
    let dim = da.saturating_mul(db);
    if dim > DIM_CAP {
        return Err(Error::DimensionLimit { dim, cap: DIM_CAP });
    }
    let mut out = Array2::zeros((dim, dim));
    for i in 0..da {
        for j in 0..da {
            let aij = a.entries[[i, j]];
            if aij == ZERO {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    out[[i * db + k, j * db + l]] = aij * b.entries[[k, l]];
                }
            }
        }
    }
    Ok(Operator {
        entries: out,
        hermitian_hint: a.hermitian_hint && b.hermitian_hint,
    })
}

/// Kronecker product of a list of operators, left to right.
pub fn tensor_all(factors: &[&Operator]) -> Result<Operator> {
    let mut iter = factors.iter();
    let first = iter.next().ok_or(Error::EmptyGrid)?;
    let mut acc = (*first).clone();
    for f in iter {
        acc = tensor(&acc, f)?;
    }
    Ok(acc)
}

/// Commutator [a, b] = ab - ba.
pub fn commutator(a: &Operator, b: &Operator) -> Result<Operator> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            op: "commutator",
            left: a.dim(),
            right: b.dim(),
        });
    }
    let ab = a.entries.dot(&b.entries);
    let ba = b.entries.dot(&a.entries);
    Ok(Operator {
        entries: ab - ba,
        hermitian_hint: false,
    })
}

/// Spectral decomposition of a Hermitian operator via cyclic complex Jacobi
/// rotations. Deterministic and accurate to ~1e-14 of the matrix scale,
/// which meets the 1e-10 reconstruction contract with headroom.
pub fn spectral(h: &Operator) -> Result<SpectralDecomposition> {
    h.require_hermitian()?;
    let (eigenvalues, eigenvectors) = hermitian_eigen(&h.entries);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Unitary conjugation rho -> e^{-iH dt} rho e^{+iH dt} through the
/// spectral decomposition of H. Trace and spectrum are preserved.
pub fn evolve_unitary(h: &Operator, rho: &DensityMatrix, dt: f64) -> Result<DensityMatrix> {
    if h.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            op: "evolve_unitary",
            left: h.dim(),
            right: rho.dim(),
        });
    }
    let dec = spectral(h)?;
    let u = dec.propagator(dt);
    let ud = dagger_of(&u);
    let evolved = u.dot(&rho.entries).dot(&ud);
    DensityMatrix::validated(evolved, POSITIVITY_TOL)
}

/// Projective measurement: returns (Tr(P rho P), P rho P / prob).
///
/// P must be Hermitian and idempotent. Probabilities below 1e-14 yield
/// [`Error::ZeroProbability`]; the caller decides what to do, no
/// renormalized state is invented.
pub fn project(p: &Operator, rho: &DensityMatrix) -> Result<(f64, DensityMatrix)> {
    if p.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            op: "project",
            left: p.dim(),
            right: rho.dim(),
        });
    }
    p.require_hermitian()?;
    let p2 = p.entries.dot(&p.entries);
    let defect = max_abs_diff(&p2, &p.entries);
    if defect > IDEMPOTENCY_TOL {
        return Err(Error::NotIdempotent { deviation: defect });
    }
    let prp = p.entries.dot(&rho.entries).dot(&p.entries);
    let prob = prp.diag().sum().re;
    if prob < ZERO_PROB_TOL {
        return Err(Error::ZeroProbability { prob });
    }
    let prob = prob.clamp(0.0, 1.0);
    let post = prp.mapv(|z| z / prob);
    let post = DensityMatrix::validated(post, POSITIVITY_TOL)?;
    Ok((prob, post))
}

/// Trace distance (1/2)||a - b||_1, in [0, 1].
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            op: "trace_distance",
            left: a.dim(),
            right: b.dim(),
        });
    }
    let diff = &a.entries - &b.entries;
    let (evals, _) = hermitian_eigen(&diff);
    let sum: f64 = evals.iter().map(|e| e.abs()).sum();
    Ok((0.5 * sum).clamp(0.0, 1.0))
}

/// Expectation value Tr(o rho); real to 1e-10 for Hermitian o.
pub fn expectation(o: &Operator, rho: &DensityMatrix) -> Result<Complex64> {
    if o.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            op: "expectation",
            left: o.dim(),
            right: rho.dim(),
        });
    }
    let mut acc = ZERO;
    for i in 0..o.dim() {
        for j in 0..o.dim() {
            acc += o.entries[[i, j]] * rho.entries[[j, i]];
        }
    }
    Ok(acc)
}

/// Max entry modulus of A - A^dagger (staying zero-allocation).
pub fn hermiticity_defect(m: &Array2<Complex64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (m[[i, j]] - m[[j, i]].conj()).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Max entry modulus of a - b.
pub fn max_abs_diff(a: &Array2<Complex64>, b: &Array2<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for (x, y) in a.iter().zip(b.iter()) {
        let d = (x - y).norm();
        if d > worst {
            worst = d;
        }
    }
    worst
}

pub(crate) fn dagger_of(m: &Array2<Complex64>) -> Array2<Complex64> {
    let n = m.nrows();
    let mut out = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            out[[i, j]] = m[[j, i]].conj();
        }
    }
    out
}

/// Cyclic Jacobi eigensolver for complex Hermitian matrices.
///
/// Returns eigenvalues sorted ascending and the matching unitary of column
/// eigenvectors. The sweep order is fixed, so results are bit-reproducible
/// for identical inputs.
pub(crate) fn hermitian_eigen(m: &Array2<Complex64>) -> (Vec<f64>, Array2<Complex64>) {
    let n = m.nrows();
    let mut a = m.clone();
    let mut v = Array2::zeros((n, n));
    for i in 0..n {
        v[[i, i]] = ONE;
    }
    if n == 1 {
        return (vec![a[[0, 0]].re], v);
    }

    let scale: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
    let target = 1e-15 * scale;
    const MAX_SWEEPS: usize = 60;

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[[i, j]].norm_sqr();
            }
        }
        if off.sqrt() <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[[p, q]];
                let r = apq.norm();
                if r <= 1e-18 * scale {
                    continue;
                }
                let app = a[[p, p]].re;
                let aqq = a[[q, q]].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let phase = apq / r;
                let sp = phase.scale(s);
                let spc = phase.conj().scale(s);

                for k in 0..n {
                    let akp = a[[k, p]];
                    let akq = a[[k, q]];
                    a[[k, p]] = akp.scale(c) - spc * akq;
                    a[[k, q]] = sp * akp + akq.scale(c);
                }
                for k in 0..n {
                    let apk = a[[p, k]];
                    let aqk = a[[q, k]];
                    a[[p, k]] = apk.scale(c) - sp * aqk;
                    a[[q, k]] = spc * apk + aqk.scale(c);
                }
                a[[p, q]] = ZERO;
                a[[q, p]] = ZERO;
                a[[p, p]] = Complex64::new(a[[p, p]].re, 0.0);
                a[[q, q]] = Complex64::new(a[[q, q]].re, 0.0);

                for k in 0..n {
                    let vkp = v[[k, p]];
                    let vkq = v[[k, q]];
                    v[[k, p]] = vkp.scale(c) - spc * vkq;
                    v[[k, q]] = sp * vkp + vkq.scale(c);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[[i, i]].re.total_cmp(&a[[j, j]].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[[i, i]].re).collect();
    let mut vectors = Array2::zeros((n, n));
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[[row, col]] = v[[row, src]];
        }
    }
    (eigenvalues, vectors)
}
