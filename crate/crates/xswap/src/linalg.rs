//! Dense complex matrices sized for two-qubit work: Kronecker products,
//! partial traces, and a Jacobi eigensolver for Hermitian matrices.
//!
//! Everything here is written for dimensions 2, 4, and 16, where a dense
//! `Vec`-backed matrix and a cyclic Jacobi sweep are both simpler and easier
//! to audit than a general-purpose linear algebra dependency.

use thiserror::Error;

pub type Complex64 = num_complex::Complex<f64>;

/// Absolute tolerance used by validity checks; `1e-10` unless a caller
/// overrides it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub atol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { atol: 1e-10 }
    }
}

impl Tolerance {
    pub fn new(atol: f64) -> Self {
        assert!(atol > 0.0, "tolerance must be positive");
        Tolerance { atol }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not Hermitian: max |a_ij - conj(a_ji)| = {defect:.3e}")]
    NotHermitian { defect: f64 },
    #[error("matrix has a non-finite entry")]
    NonFinite,
}

/// Square complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        CMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix from row-major data; `data.len()` must be `dim * dim`.
    pub fn from_data(dim: usize, data: Vec<Complex64>) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        assert_eq!(data.len(), dim * dim, "data length must match dimension");
        CMatrix { dim, data }
    }

    /// Rank-one projector |v><v| for a normalized column vector.
    pub fn projector(v: &[Complex64]) -> Self {
        let dim = v.len();
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, v[i] * v[j].conj());
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = CMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn mul(&self, other: &CMatrix) -> Self {
        assert_eq!(self.dim, other.dim, "matrix product needs equal dimensions");
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn scale(&self, factor: f64) -> Self {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &CMatrix) -> Self {
        assert_eq!(self.dim, other.dim, "matrix sum needs equal dimensions");
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// max_ij |a_ij - b_ij|, the metric used by every oracle comparison.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "comparison needs equal dimensions");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// True when every entry is finite. NaN propagates oddly through the
    /// defect folds (f64::max discards it), so validators must gate on this
    /// before trusting any defect value.
    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// max_ij |a_ij - conj(a_ji)|; zero iff Hermitian.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut defect: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                defect = defect.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        defect
    }

    /// (A + A^dagger) / 2; removes rounding-level Hermiticity defects.
    /// Halves each term before adding so a finite input can never overflow
    /// to an infinite entry.
    fn hermitized(&self) -> Self {
        let mut out = CMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, self.get(i, j) * 0.5 + self.get(j, i).conj() * 0.5);
            }
        }
        out
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    sum += self.get(i, j).norm_sqr();
                }
            }
        }
        sum.sqrt()
    }
}

/// Kronecker product; the left factor owns the most significant index, so
/// `kron(a, b)[(i*db + k, j*db + l)] = a[(i, j)] * b[(k, l)]`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (da, db) = (a.dim, b.dim);
    let mut out = CMatrix::zeros(da * db);
    for i in 0..da {
        for j in 0..da {
            let aij = a.get(i, j);
            if aij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    out.set(i * db + k, j * db + l, aij * b.get(k, l));
                }
            }
        }
    }
    out
}

/// Traces out every subsystem not listed in `keep`.
///
/// `dims` factors the matrix dimension subsystem by subsystem, most
/// significant first; `keep` must be strictly increasing. The kept subsystems
/// stay in their original order; an empty `keep` traces everything and
/// returns the 1x1 matrix holding the trace.
pub fn partial_trace(rho: &CMatrix, dims: &[usize], keep: &[usize]) -> CMatrix {
    let total: usize = dims.iter().product();
    assert_eq!(total, rho.dim, "subsystem dims must factor the dimension");
    assert!(
        keep.windows(2).all(|w| w[0] < w[1]) && keep.iter().all(|&k| k < dims.len()),
        "keep set must be strictly increasing and in range"
    );

    let kept_dim: usize = keep.iter().map(|&k| dims[k]).product();
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
    let mut out = CMatrix::zeros(kept_dim);

    let decompose = |mut flat: usize| -> Vec<usize> {
        let mut idx = vec![0; dims.len()];
        for sub in (0..dims.len()).rev() {
            idx[sub] = flat % dims[sub];
            flat /= dims[sub];
        }
        idx
    };
    let flatten_kept = |idx: &[usize]| -> usize {
        keep.iter().fold(0, |acc, &k| acc * dims[k] + idx[k])
    };

    for row in 0..total {
        let ri = decompose(row);
        for col in 0..total {
            let ci = decompose(col);
            if traced.iter().any(|&t| ri[t] != ci[t]) {
                continue;
            }
            let (r, c) = (flatten_kept(&ri), flatten_kept(&ci));
            let v = out.get(r, c) + rho.get(row, col);
            out.set(r, c, v);
        }
    }
    out
}

/// Eigendecomposition of a Hermitian matrix: `values` descending, `vectors`
/// holding the matching eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl Eigh {
    /// Rebuilds `V f(Lambda) V^dagger`; with `f = identity` this reproduces
    /// the input matrix.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.vectors.dim;
        let mut out = CMatrix::zeros(n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let fl = f(lambda);
            if fl == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = self.vectors.get(i, k);
                for j in 0..n {
                    let v = out.get(i, j) + vik * self.vectors.get(j, k).conj() * fl;
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

const JACOBI_OFF_DIAGONAL_TARGET: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 64;

/// Full eigendecomposition by cyclic complex Jacobi rotations.
///
/// Fails if the input's Hermiticity defect exceeds `tol.atol`; the sweep
/// itself runs on the Hermitized matrix until the off-diagonal Frobenius
/// norm drops below 1e-13.
pub fn eigh(m: &CMatrix, tol: Tolerance) -> Result<Eigh, LinalgError> {
    if !m.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let defect = m.hermiticity_defect();
    if defect > tol.atol {
        return Err(LinalgError::NotHermitian { defect });
    }
    let n = m.dim;
    let mut a = m.hermitized();
    let mut v = CMatrix::identity(n);

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if a.off_diagonal_norm() < JACOBI_OFF_DIAGONAL_TARGET {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                // Unitary 2x2 rotation zeroing a_pq: with a_pq = m e^{i phi}
                // and zeta = (a_pp - a_qq) / (2m), the angle satisfies
                // tan(2 theta) = 1 / zeta.
                let phase = apq / mag;
                let zeta = (a.get(p, p).re - a.get(q, q).re) / (2.0 * mag);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + (zeta * zeta + 1.0).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Columns: (p, q) <- (c p + s e^{-i phi} q, -s e^{i phi} p + c q).
                for i in 0..n {
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    a.set(i, p, aip * c + aiq * s * phase.conj());
                    a.set(i, q, aip * (-s) * phase + aiq * c);
                }
                // Rows, with the conjugated coefficients.
                for j in 0..n {
                    let apj = a.get(p, j);
                    let aqj = a.get(q, j);
                    a.set(p, j, apj * c + aqj * s * phase);
                    a.set(q, j, apj * (-s) * phase.conj() + aqj * c);
                }
                a.set(p, q, Complex64::new(0.0, 0.0));
                a.set(q, p, Complex64::new(0.0, 0.0));
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip * c + viq * s * phase.conj());
                    v.set(i, q, vip * (-s) * phase + viq * c);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = CMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            vectors.set(i, new_col, v.get(i, old_col));
        }
    }
    Ok(Eigh { values, vectors })
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(m: &CMatrix, tol: Tolerance) -> Result<Vec<f64>, LinalgError> {
    eigh(m, tol).map(|e| e.values)
}

/// Diagnostics from [`validate_density`]; `pass` is the conjunction of the
/// three defect checks against the tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityDiagnostics {
    pub hermiticity_defect: f64,
    pub trace_defect: f64,
    pub min_eigenvalue: f64,
    pub pass: bool,
}

/// Checks the density-matrix contract: Hermitian, unit trace, positive
/// semidefinite, each within `tol.atol`. Always returns diagnostics; the
/// eigenvalue check runs on the Hermitized matrix so it cannot fail.
///
/// A matrix with a non-finite entry fails outright, with the minimum
/// eigenvalue reported as negative infinity; the defect fields may be
/// meaningless in that case and only `pass` should be trusted.
pub fn validate_density(rho: &CMatrix, tol: Tolerance) -> DensityDiagnostics {
    let hermiticity_defect = rho.hermiticity_defect();
    let trace_defect = (rho.trace() - Complex64::new(1.0, 0.0)).norm();
    if !rho.is_finite() {
        return DensityDiagnostics {
            hermiticity_defect,
            trace_defect,
            min_eigenvalue: f64::NEG_INFINITY,
            pass: false,
        };
    }
    let eigs = eigh(&rho.hermitized(), Tolerance::new(f64::INFINITY))
        .expect("finite matrix hermitizes to a Hermitian one");
    let min_eigenvalue = eigs.values.last().copied().unwrap_or(0.0);
    let pass = hermiticity_defect <= tol.atol
        && trace_defect <= tol.atol
        && min_eigenvalue >= -tol.atol;
    DensityDiagnostics {
        hermiticity_defect,
        trace_defect,
        min_eigenvalue,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag4(d: [f64; 4]) -> CMatrix {
        let mut m = CMatrix::zeros(4);
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, c(x, 0.0));
        }
        m
    }

    /// Deterministic pseudo-random Hermitian test matrix.
    fn random_hermitian(dim: usize, seed: u64) -> CMatrix {
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_add(0x9E3779B97F4A7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
            z ^= z >> 31;
            (z >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                let v = if i == j {
                    c(next(), 0.0)
                } else {
                    c(next(), next())
                };
                m.set(i, j, v);
                m.set(j, i, v.conj());
            }
        }
        m
    }

    #[test]
    fn kron_identity_factors() {
        let i2 = CMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), CMatrix::identity(4));
    }

    #[test]
    fn kron_orders_left_factor_most_significant() {
        let p0 = CMatrix::from_data(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let p1 = CMatrix::from_data(2, vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let k = kron(&p0, &p1);
        assert_eq!(k, diag4([0.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn kron_is_associative() {
        let a = random_hermitian(2, 11);
        let b = random_hermitian(2, 22);
        let d = random_hermitian(2, 33);
        let left = kron(&kron(&a, &b), &d);
        let right = kron(&a, &kron(&b, &d));
        assert!(left.max_abs_diff(&right) < 1e-15);
    }

    #[test]
    fn dagger_is_an_involution() {
        let m = random_hermitian(4, 7).mul(&random_hermitian(4, 9));
        assert!(m.dagger().dagger().max_abs_diff(&m) == 0.0);
    }

    #[test]
    fn partial_trace_of_product_state_recovers_factor() {
        let p0 = CMatrix::projector(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let rho = diag4([0.1, 0.2, 0.3, 0.4]);
        let joint = kron(&p0, &rho);
        let reduced = partial_trace(&joint, &[2, 4], &[1]);
        assert!(reduced.max_abs_diff(&rho) < 1e-15);
    }

    #[test]
    fn partial_trace_of_bell_state_is_maximally_mixed() {
        let s = 1.0 / 2.0_f64.sqrt();
        let bell = CMatrix::projector(&[c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]);
        let reduced = partial_trace(&bell, &[2, 2], &[0]);
        assert!(reduced.max_abs_diff(&CMatrix::identity(2).scale(0.5)) < 1e-15);
    }

    #[test]
    fn partial_trace_preserves_trace() {
        let mut rho = random_hermitian(16, 5);
        // Squaring makes it positive semidefinite; rescale to unit trace.
        rho = rho.mul(&rho.dagger());
        rho = rho.scale(1.0 / rho.trace().re);
        for keep in [&[0usize][..], &[1, 3], &[0, 2, 3]] {
            let reduced = partial_trace(&rho, &[2, 2, 2, 2], keep);
            assert!((reduced.trace() - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn partial_trace_over_everything_yields_the_trace() {
        let rho = random_hermitian(16, 8);
        let out = partial_trace(&rho, &[2, 2, 2, 2], &[]);
        assert_eq!(out.dim, 1);
        assert!((out.get(0, 0) - rho.trace()).norm() < 1e-12);
    }

    #[test]
    fn eigh_matches_diagonal_input() {
        let vals = hermitian_eigenvalues(&diag4([0.1, 0.4, 0.2, 0.3]), Tolerance::default());
        assert_eq!(vals.unwrap(), vec![0.4, 0.3, 0.2, 0.1]);
    }

    #[test]
    fn eigh_rejects_non_hermitian_input() {
        let mut m = CMatrix::identity(2);
        m.set(0, 1, c(0.3, 0.0));
        let err = eigh(&m, Tolerance::default()).unwrap_err();
        assert_eq!(err, LinalgError::NotHermitian { defect: 0.3 });
    }

    #[test]
    fn eigh_rejects_non_finite_input() {
        for bad in [f64::NAN, f64::INFINITY, f64::NEG_INFINITY] {
            let mut m = CMatrix::identity(4);
            m.set(0, 0, c(bad, 0.0));
            let err = eigh(&m, Tolerance::default()).unwrap_err();
            assert_eq!(err, LinalgError::NonFinite);
        }
    }

    #[test]
    fn validate_density_survives_extreme_magnitudes() {
        // Hermitization must not overflow a finite matrix into infinity.
        let mut m = diag4([0.25, 0.25, 0.25, 0.25]);
        m.set(0, 0, c(-f64::MAX, 0.0));
        m.set(0, 3, c(f64::MAX, f64::MAX));
        let d = validate_density(&m, Tolerance::default());
        assert!(!d.pass);
        assert!(eigh(&m, Tolerance::new(f64::INFINITY)).is_ok());
    }

    #[test]
    fn validate_density_fails_non_finite_matrices() {
        // Diagonal NaN contaminates the trace; off-diagonal NaN would be
        // masked by the max fold in the defect, so the finiteness gate has
        // to catch it on its own.
        let mut diagonal = diag4([0.25, 0.25, 0.25, 0.25]);
        diagonal.set(0, 0, c(f64::NAN, 0.0));
        let mut off = diag4([0.25, 0.25, 0.25, 0.25]);
        off.set(0, 1, c(f64::NAN, 0.0));
        off.set(1, 0, c(f64::NAN, 0.0));
        for m in [diagonal, off] {
            let d = validate_density(&m, Tolerance::default());
            assert!(!d.pass);
            assert_eq!(d.min_eigenvalue, f64::NEG_INFINITY);
        }
    }

    #[test]
    fn eigh_reconstructs_random_hermitian_matrices() {
        for seed in 0..20 {
            for dim in [2, 4, 16] {
                let m = random_hermitian(dim, seed);
                let e = eigh(&m, Tolerance::default()).unwrap();
                let rebuilt = e.reconstruct_with(|x| x);
                assert!(
                    rebuilt.max_abs_diff(&m) < 1e-10,
                    "dim {dim} seed {seed}: reconstruction defect {}",
                    rebuilt.max_abs_diff(&m)
                );
            }
        }
    }

    #[test]
    fn eigh_eigenvalue_sum_matches_trace() {
        let m = random_hermitian(16, 3);
        let vals = hermitian_eigenvalues(&m, Tolerance::default()).unwrap();
        assert!((vals.iter().sum::<f64>() - m.trace().re).abs() < 1e-12);
    }

    #[test]
    fn validate_density_accepts_maximally_mixed() {
        let d = validate_density(&CMatrix::identity(4).scale(0.25), Tolerance::default());
        assert!(d.pass);
        assert!(d.min_eigenvalue >= 0.25 - 1e-14);
    }

    #[test]
    fn validate_density_flags_negative_eigenvalue() {
        let d = validate_density(&diag4([0.6, 0.6, -0.1, -0.1]), Tolerance::default());
        assert!(!d.pass);
        assert!((d.min_eigenvalue + 0.1).abs() < 1e-14);
        assert!(d.trace_defect < 1e-14);
    }

    #[test]
    fn validate_density_flags_wrong_trace() {
        let d = validate_density(&CMatrix::identity(4), Tolerance::default());
        assert!(!d.pass);
        assert!((d.trace_defect - 3.0).abs() < 1e-14);
    }
}
