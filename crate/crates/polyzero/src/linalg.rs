//! Dense linear algebra for small complex Hermitian matrices.
//!
//! The covariance blocks that arise downstream are tiny (2×2 through 6×6),
//! so a cyclic complex Jacobi eigensolver is simpler and more than accurate
//! enough: each rotation annihilates one off-diagonal pair exactly, sweeps
//! converge quadratically, and the accumulated transform stays unitary to
//! machine precision. Matrices are stored column-major in a flat slice,
//! `a[i + j·n] = A_{ij}`.

use num_complex::Complex64;

/// Eigendecomposition `A = Q·diag(λ)·Q*` of a Hermitian `n×n` matrix.
///
/// Returns the eigenvalues in ascending order and the matching unitary `Q`
/// (column-major; column `j` is the eigenvector for `λ_j`). The input must
/// be Hermitian — the routine reads both triangles and checks consistency in
/// debug builds.
pub(crate) fn hermitian_eigen(n: usize, a: &[Complex64]) -> (Vec<f64>, Vec<Complex64>) {
    assert_eq!(a.len(), n * n, "matrix must be n×n");
    let scale: f64 = a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    debug_assert!(
        (0..n).all(|i| {
            (i..n).all(|j| (a[i + j * n] - a[j + i * n].conj()).norm() <= 1e-12 * scale.max(1.0))
        }),
        "input must be Hermitian"
    );

    let mut m = a.to_vec();
    let mut q = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        q[i + i * n] = Complex64::new(1.0, 0.0);
    }

    // Cyclic sweeps until the off-diagonal mass is at rounding level.
    let tol = 1e-30 * scale * scale;
    for _sweep in 0..40 {
        let off: f64 = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .map(|(i, j)| m[i + j * n].norm_sqr())
            .sum();
        if off <= tol {
            break;
        }
        for p in 0..n {
            for r in p + 1..n {
                rotate(&mut m, &mut q, n, p, r);
            }
        }
    }

    // Diagonal is real up to rounding; sort ascending, carrying Q's columns.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i + i * n].re.total_cmp(&m[j + j * n].re));
    let evals: Vec<f64> = order.iter().map(|&i| m[i + i * n].re).collect();
    let mut vecs = vec![Complex64::new(0.0, 0.0); n * n];
    for (dst, &src) in order.iter().enumerate() {
        vecs[dst * n..(dst + 1) * n].copy_from_slice(&q[src * n..(src + 1) * n]);
    }
    (evals, vecs)
}

/// One Jacobi rotation annihilating the `(p, r)` off-diagonal pair.
///
/// The Hermitian 2×2 block `[[α, β], [β̄, γ]]` is reduced to the real
/// symmetric problem by factoring the phase of `β`, then rotated by the
/// classic small-angle choice `t = sign(τ)/(|τ| + √(1+τ²))`,
/// `τ = (γ−α)/(2|β|)`.
fn rotate(m: &mut [Complex64], q: &mut [Complex64], n: usize, p: usize, r: usize) {
    let beta = m[p + r * n];
    let b = beta.norm();
    if b == 0.0 {
        return;
    }
    let u = beta / b; // e^{iφ}
    let tau = (m[r + r * n].re - m[p + p * n].re) / (2.0 * b);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // A ← V*AV with V_{pp} = c, V_{pr} = s, V_{rp} = −s·e^{−iφ}, V_{rr} = c·e^{−iφ}.
    let su_conj = s * u.conj();
    let cu_conj = c * u.conj();
    for i in 0..n {
        let aip = m[i + p * n];
        let air = m[i + r * n];
        m[i + p * n] = aip * c - air * su_conj;
        m[i + r * n] = aip * s + air * cu_conj;
    }
    let su = s * u;
    let cu = c * u;
    for j in 0..n {
        let apj = m[p + j * n];
        let arj = m[r + j * n];
        m[p + j * n] = apj * c - arj * su;
        m[r + j * n] = apj * s + arj * cu;
    }
    // The annihilated pair is exactly zero in exact arithmetic; drop the
    // rounding dust and keep the diagonal real so errors cannot accumulate.
    m[p + r * n] = Complex64::new(0.0, 0.0);
    m[r + p * n] = Complex64::new(0.0, 0.0);
    m[p + p * n] = Complex64::new(m[p + p * n].re, 0.0);
    m[r + r * n] = Complex64::new(m[r + r * n].re, 0.0);

    for i in 0..n {
        let qip = q[i + p * n];
        let qir = q[i + r * n];
        q[i + p * n] = qip * c - qir * su_conj;
        q[i + r * n] = qip * s + qir * cu_conj;
    }
}

/// Clamps the spectrum of a positive semidefinite matrix.
///
/// Eigenvalues below `rel_tol · trace` are set to exactly zero — these are
/// rank deficiencies blurred by rounding. A value below `−rel_tol · trace`
/// means the matrix was not positive semidefinite to begin with; the spectrum
/// is left untouched and `Err((offender, tolerance))` is returned for the
/// caller to report.
pub(crate) fn clamp_psd_eigenvalues(evals: &mut [f64], rel_tol: f64) -> Result<(), (f64, f64)> {
    let trace: f64 = evals.iter().sum();
    let tol = rel_tol * trace.abs().max(f64::MIN_POSITIVE);
    if let Some(&worst) = evals.iter().find(|&&ev| !(ev >= -tol)) {
        return Err((worst, tol));
    }
    for ev in evals.iter_mut() {
        if *ev < tol {
            *ev = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::{complex_standard_normal, stream_rng};

    fn residual(n: usize, a: &[Complex64], evals: &[f64], q: &[Complex64]) -> f64 {
        // max‖A q_j − λ_j q_j‖ over eigenpairs.
        let mut worst: f64 = 0.0;
        for j in 0..n {
            for i in 0..n {
                let mut av = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    av += a[i + k * n] * q[k + j * n];
                }
                worst = worst.max((av - evals[j] * q[i + j * n]).norm());
            }
        }
        worst
    }

    fn unitarity_defect(n: usize, q: &[Complex64]) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut dot = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    dot += q[k + i * n].conj() * q[k + j * n];
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - expect).norm());
            }
        }
        worst
    }

    #[test]
    fn two_by_two_closed_form() {
        // [[2, 1−i], [1+i, 3]] has trace 5 and det 4, so eigenvalues 1 and 4.
        let a = [
            Complex64::new(2.0, 0.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(1.0, -1.0),
            Complex64::new(3.0, 0.0),
        ];
        let (evals, q) = hermitian_eigen(2, &a);
        assert!((evals[0] - 1.0).abs() <= 1e-14);
        assert!((evals[1] - 4.0).abs() <= 1e-14);
        assert!(residual(2, &a, &evals, &q) <= 1e-14);
        assert!(unitarity_defect(2, &q) <= 1e-14);
    }

    #[test]
    fn random_hermitian_matrices_decompose() {
        let mut rng = stream_rng(31, 0);
        for &n in &[2usize, 4, 6] {
            for _case in 0..20 {
                let b: Vec<Complex64> = (0..n * n)
                    .map(|_| complex_standard_normal(&mut rng))
                    .collect();
                let mut a = vec![Complex64::new(0.0, 0.0); n * n];
                for i in 0..n {
                    for j in 0..n {
                        a[i + j * n] = b[i + j * n] + b[j + i * n].conj();
                    }
                }
                let (evals, q) = hermitian_eigen(n, &a);
                assert!(evals.windows(2).all(|w| w[0] <= w[1]), "sorted ascending");
                let scale: f64 = a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
                assert!(
                    residual(n, &a, &evals, &q) <= 1e-13 * scale.max(1.0),
                    "residual too large for n = {n}"
                );
                assert!(unitarity_defect(n, &q) <= 1e-13);
            }
        }
    }

    #[test]
    fn repeated_eigenvalues_are_recovered() {
        // diag(3, 3, 1) conjugated by a fixed unitary still has spectrum {1, 3, 3}.
        let n = 3usize;
        let mut rng = stream_rng(32, 0);
        let b: Vec<Complex64> = (0..n * n)
            .map(|_| complex_standard_normal(&mut rng))
            .collect();
        let mut h = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                h[i + j * n] = b[i + j * n] + b[j + i * n].conj();
            }
        }
        let (_, u) = hermitian_eigen(n, &h); // any unitary will do
        let d = [1.0, 3.0, 3.0];
        let mut a = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    a[i + j * n] += u[i + k * n] * d[k] * u[j + k * n].conj();
                }
            }
        }
        let (evals, q) = hermitian_eigen(n, &a);
        assert!((evals[0] - 1.0).abs() <= 1e-13);
        assert!((evals[1] - 3.0).abs() <= 1e-13);
        assert!((evals[2] - 3.0).abs() <= 1e-13);
        assert!(residual(n, &a, &evals, &q) <= 1e-13);
    }

    #[test]
    fn identity_is_a_fixed_point() {
        let n = 4usize;
        let mut a = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            a[i + i * n] = Complex64::new(1.0, 0.0);
        }
        let (evals, q) = hermitian_eigen(n, &a);
        assert!(evals.iter().all(|&ev| ev == 1.0));
        assert_eq!(q, a);
    }

    #[test]
    fn clamp_zeroes_rounding_dust() {
        let mut evals = [-1e-20, 3e-12, 2.0];
        assert_eq!(clamp_psd_eigenvalues(&mut evals, 1e-8), Ok(()));
        assert_eq!(evals, [0.0, 0.0, 2.0]);
    }

    #[test]
    fn clamp_rejects_genuinely_negative_spectra() {
        let mut evals = [-0.5, 1.0, 2.0];
        let err = clamp_psd_eigenvalues(&mut evals, 1e-8).unwrap_err();
        assert_eq!(err.0, -0.5);
        assert_eq!(evals, [-0.5, 1.0, 2.0], "spectrum left untouched on error");
    }
}
