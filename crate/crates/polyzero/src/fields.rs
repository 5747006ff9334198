//! Random coefficients and evaluation of the normalized level fields.
//!
//! One coefficient vector `ζ = (ζ_0, ζ_1, …)` of i.i.d. standard complex
//! Gaussians (`E ζ_k = 0`, `E|ζ_k|² = 1`) drives the whole ladder of levels:
//!
//! ```text
//! f_n(z) = Σ_k ζ_k H_{k,n}(z, z̄),        X_n(z) = e^{−|z|²/2} f_n(z) = Σ_k ζ_k U(z)_{k,n}.
//! ```
//!
//! Level 0 is the Gaussian entire function `Σ ζ_k z^k/√k!`. Because the
//! columns of `U(z)` are orthonormal, each `X_n` is pointwise standard complex
//! Gaussian (`|X_n(z)|² ~ Exp(1)`), distinct levels are *independent at equal
//! points*, and the full two-point structure is
//!
//! ```text
//! E[ f_n(z) · conj(f_l(w)) ] = (−1)^{n+l} · H_{l,n}(w−z, conj(w−z)) · e^{z·conj(w)},
//! ```
//!
//! exposed here as [`cross_covariance`] (and its bounded, normalized variant
//! for the `X` fields). The kernels are translation covariant up to the
//! unimodular factor [`translation_phase`].
//!
//! # Reproducibility
//!
//! [`sample_coefficients`]`(seed, r, k_max)` draws realization `r` of master
//! seed `seed` from a dedicated ChaCha stream. The mapping is stable: the
//! same `(seed, r)` always produces the same vector, different `r` are
//! statistically independent, and growing `k_max` *extends* the vector
//! without disturbing earlier entries. Results are therefore identical no
//! matter how realizations are batched or parallelized.
//!
//! # Truncation
//!
//! A finite coefficient vector suffices because column `n` of `U(z)` carries
//! its mass near `k ≈ n + |z|²`; [`crate::specfun::truncation_rows`] sizes
//! the vector so the neglected tail is below [`crate::TAU_TRUNC`] per level,
//! and [`PointEvaluator`] records the per-level deficits so the guarantee is
//! checked, not assumed.

use num_complex::Complex64;

use crate::specfun::{
    complex_hermite_log, scan_diagonals, truncation_rows, LogComplex, SpecfunError,
};
use crate::util::{complex_standard_normal, stream_rng};
use crate::TAU_TRUNC;

/// Draws realization `realization` of master seed `seed`: coefficients
/// `ζ_0, …, ζ_{k_max}`, i.i.d. standard complex Gaussian.
///
/// Deterministic in `(seed, realization)`; extending `k_max` extends the
/// vector without changing the existing prefix.
pub fn sample_coefficients(seed: u64, realization: u64, k_max: u32) -> Vec<Complex64> {
    let mut rng = stream_rng(seed, realization);
    (0..=k_max)
        .map(|_| complex_standard_normal(&mut rng))
        .collect()
}

/// Entries with `|t|` below this at the edges of a diagonal are dropped from
/// the stored runs; the total squared mass lost is `< rows · 1e−32`, far
/// below [`TAU_TRUNC`]. Deficits are accumulated from the *full* scan.
const RUN_CUT: f64 = 1e-16;

/// One stored diagonal run of the evaluation kernel.
#[derive(Debug, Clone, Copy)]
struct DiagRun {
    /// Gap `g = |k − n|` of the diagonal.
    g: u32,
    /// First retained position `m` along the diagonal.
    m0: u32,
    /// Number of retained positions.
    len: u32,
    /// Offset into the flat value buffer.
    off: u32,
}

/// Evaluation kernel for all levels `X_0(z), …, X_{n_max}(z)` at one point.
///
/// Precomputes the displacement entries `U(z)_{k,n}` (as real diagonal values
/// plus per-diagonal phases) once, so that evaluating any number of
/// coefficient realizations at the same point costs only the sparse dot
/// products. Storage is runs of consecutive above-cut entries per diagonal —
/// the significant band `k ≈ n + |z|²` — so both time and memory scale with
/// the band, not the full `(k_max+1) × (n_max+1)` rectangle.
///
/// At `z = 0` the kernel degenerates to the identity: `X_n(0) = ζ_n`
/// exactly, bit for bit.
#[derive(Debug, Clone)]
pub struct PointEvaluator {
    z: Complex64,
    n_max: u32,
    k_max: u32,
    runs: Vec<DiagRun>,
    ts: Vec<f64>,
    deficits: Vec<f64>,
}

impl PointEvaluator {
    /// Builds the kernel with coefficient rows `0..=k_max`, without enforcing
    /// any deficit tolerance.
    pub fn build(z: Complex64, n_max: u32, k_max: u32) -> Self {
        let rows = k_max as usize + 1;
        let cols = n_max as usize + 1;
        let mut runs = Vec::new();
        let mut ts = Vec::new();
        let mut mass = vec![0.0f64; cols];

        scan_diagonals(z, rows, cols, |g, t| {
            // Tail certificates from the full slice: the upper entry (m+g, m)
            // belongs to column m, the lower entry (m, m+g) to column m+g.
            for (m, &tm) in t.iter().enumerate() {
                let sq = tm * tm;
                if m + g < rows && m < cols {
                    mass[m] += sq;
                }
                if g > 0 && m < rows && m + g < cols {
                    mass[m + g] += sq;
                }
            }
            // Store the run of significant entries.
            let first = t.iter().position(|v| v.abs() > RUN_CUT);
            if let Some(first) = first {
                let last = t.iter().rposition(|v| v.abs() > RUN_CUT).unwrap();
                runs.push(DiagRun {
                    g: g as u32,
                    m0: first as u32,
                    len: (last - first + 1) as u32,
                    off: ts.len() as u32,
                });
                ts.extend_from_slice(&t[first..=last]);
            }
        });

        let deficits = mass.iter().map(|m| (1.0 - m).abs()).collect();
        PointEvaluator {
            z,
            n_max,
            k_max,
            runs,
            ts,
            deficits,
        }
    }

    /// Builds the kernel with the row count sized by
    /// [`truncation_rows`]`(n_max, |z|)` and certifies that every level's
    /// deficit is at most [`TAU_TRUNC`].
    pub fn sized(z: Complex64, n_max: u32) -> Result<Self, SpecfunError> {
        let kernel = Self::build(z, n_max, truncation_rows(n_max, z.norm()));
        let (column, deficit) = kernel.max_deficit();
        if deficit > TAU_TRUNC {
            return Err(SpecfunError::TruncationInsufficient {
                column,
                deficit,
                tolerance: TAU_TRUNC,
            });
        }
        Ok(kernel)
    }

    /// The evaluation point.
    pub fn z(&self) -> Complex64 {
        self.z
    }

    /// Highest level this kernel evaluates.
    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    /// Highest coefficient index consumed.
    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    /// Tail-mass certificate for level `n`.
    pub fn deficit(&self, n: u32) -> f64 {
        self.deficits[n as usize]
    }

    /// Worst per-level deficit, as `(level, deficit)`.
    pub fn max_deficit(&self) -> (u32, f64) {
        let (n, d) = self
            .deficits
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("at least one level");
        (n as u32, *d)
    }

    /// Evaluates `X_0(z), …, X_{n_max}(z)` for one coefficient realization.
    ///
    /// `coeffs` must provide at least `k_max + 1` entries.
    pub fn apply(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.n_max as usize + 1];
        self.apply_into(coeffs, &mut out);
        out
    }

    /// As [`PointEvaluator::apply`], writing into a caller-provided buffer of
    /// length `n_max + 1`.
    pub fn apply_into(&self, coeffs: &[Complex64], out: &mut [Complex64]) {
        let rows = self.k_max as usize + 1;
        let cols = self.n_max as usize + 1;
        assert!(
            coeffs.len() >= rows,
            "coefficient vector too short: {} < k_max + 1 = {rows}",
            coeffs.len()
        );
        assert_eq!(out.len(), cols, "output buffer must hold n_max + 1 levels");
        out.fill(Complex64::new(0.0, 0.0));
        let theta = self.z.arg();
        for run in &self.runs {
            let g = run.g as usize;
            let m0 = run.m0 as usize;
            let len = run.len as usize;
            let t = &self.ts[run.off as usize..run.off as usize + len];
            let gf = g as f64;
            // Upper triangle: X_m += ζ_{m+g} · t_m · e^{igθ}.
            let up = Complex64::from_polar(1.0, gf * theta);
            let upper_len = len
                .min(cols.saturating_sub(m0))
                .min(rows.saturating_sub(m0 + g));
            for (i, &tm) in t[..upper_len].iter().enumerate() {
                let m = m0 + i;
                out[m] += coeffs[m + g] * tm * up;
            }
            // Lower triangle: X_{m+g} += ζ_m · t_m · (−1)^g · e^{−igθ}.
            if g > 0 {
                let sign = if g.is_multiple_of(2) { 1.0 } else { -1.0 };
                let down = Complex64::from_polar(sign, -gf * theta);
                let lower_len = len.min(cols.saturating_sub(m0 + g));
                for (i, &tm) in t[..lower_len].iter().enumerate() {
                    let m = m0 + i;
                    out[m + g] += coeffs[m] * tm * down;
                }
            }
        }
    }
}

/// Two-point covariance of the raw levels,
/// `s_{n,l}(z, w) = E[f_n(z)·conj(f_l(w))] = (−1)^{n+l} H_{l,n}(w−z, conj(w−z)) e^{z·conj(w)}`.
///
/// Grows like `e^{|z||w|}`; for large arguments it saturates to infinity —
/// use [`cross_covariance_normalized`] there, which is bounded by 1.
pub fn cross_covariance(n: u32, l: u32, z: Complex64, w: Complex64) -> Complex64 {
    cross_covariance_log(n, l, z, w, z * w.conj()).to_complex()
}

/// Two-point covariance of the normalized levels,
/// `E[X_n(z)·conj(X_l(w))] = (−1)^{n+l} H_{l,n}(w−z, ·) e^{z·conj(w) − |z|²/2 − |w|²/2}`.
///
/// The exponent has real part `−|z−w|²/2 ≤ 0`, so the value is bounded by a
/// polynomial times a decaying Gaussian — no overflow for any arguments. At
/// `w = z` this is exactly `δ_{n,l}`: distinct levels are independent at
/// equal points.
pub fn cross_covariance_normalized(n: u32, l: u32, z: Complex64, w: Complex64) -> Complex64 {
    let exponent = z * w.conj() - 0.5 * (z.norm_sqr() + w.norm_sqr());
    cross_covariance_log(n, l, z, w, exponent).to_complex()
}

fn cross_covariance_log(n: u32, l: u32, z: Complex64, w: Complex64, exponent: Complex64) -> LogComplex {
    let h = complex_hermite_log(l, n, w - z);
    let sign = if (n + l) % 2 == 1 { std::f64::consts::PI } else { 0.0 };
    LogComplex {
        ln_abs: h.ln_abs + exponent.re,
        arg: h.arg + exponent.im + sign,
    }
}

/// The unimodular factor `λ(a, z) = e^{−i·Im(a·conj(z))}` in the translation
/// covariance of the normalized kernels:
///
/// ```text
/// E[X_n(z+a)·conj(X_l(w+a))] = λ(a,z) · conj(λ(a,w)) · E[X_n(z)·conj(X_l(w))].
/// ```
pub fn translation_phase(a: Complex64, z: Complex64) -> Complex64 {
    Complex64::from_polar(1.0, -(a * z.conj()).im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::DisplacementMatrix;
    use crate::stats::{ks_statistic, mean_and_stderr};

    #[test]
    fn coefficients_are_reproducible_and_prefix_stable() {
        let a = sample_coefficients(7, 3, 100);
        let b = sample_coefficients(7, 3, 100);
        assert_eq!(a, b);
        let other = sample_coefficients(7, 4, 100);
        assert_ne!(a, other);
        let prefix = sample_coefficients(7, 3, 50);
        assert_eq!(&a[..51], &prefix[..]);
    }

    #[test]
    fn coefficients_have_unit_second_moment() {
        let coeffs = sample_coefficients(42, 0, 19_999);
        let sq: Vec<f64> = coeffs.iter().map(|c| c.norm_sqr()).collect();
        let (mean, se) = mean_and_stderr(&sq);
        assert!((mean - 1.0).abs() <= 3.0 * se, "E|ζ|² = {mean} ± {se}");
    }

    #[test]
    fn x_at_origin_is_the_coefficient() {
        let coeffs = sample_coefficients(5, 9, 200);
        let kernel = PointEvaluator::sized(Complex64::new(0.0, 0.0), 12).unwrap();
        let x = kernel.apply(&coeffs);
        for n in 0..=12usize {
            assert_eq!(x[n], coeffs[n], "X_{n}(0) must equal ζ_{n} exactly");
        }
    }

    #[test]
    fn evaluator_matches_dense_displacement_columns() {
        let z = Complex64::new(1.2, -0.8);
        let n_max = 6u32;
        let k_max = truncation_rows(n_max, z.norm());
        let coeffs = sample_coefficients(11, 2, k_max);
        let kernel = PointEvaluator::build(z, n_max, k_max);
        let x = kernel.apply(&coeffs);
        let dense = DisplacementMatrix::build(z, k_max, n_max);
        for n in 0..=n_max {
            let dot: Complex64 = dense
                .column(n)
                .iter()
                .zip(&coeffs)
                .map(|(u, c)| c * u)
                .sum();
            assert!(
                (x[n as usize] - dot).norm() <= 1e-12 * dot.norm().max(1.0),
                "level {n}: kernel {} vs dense {dot}",
                x[n as usize]
            );
        }
    }

    /// The covariance kernel equals the displacement-column inner product:
    /// `E[X_n(z)·conj(X_l(w))] = Σ_k U(z)_{k,n}·conj(U(w)_{k,l})`. This pins
    /// the closed form (sign, phase, Hermite branch) against an independent
    /// construction.
    #[test]
    fn covariance_closed_form_matches_column_inner_products() {
        let points = [
            (Complex64::new(0.3, 0.1), Complex64::new(0.0, -0.2)),
            (Complex64::new(1.5, -0.4), Complex64::new(-0.9, 2.2)),
        ];
        for &(z, w) in &points {
            let n_max = 4u32;
            let radius = z.norm().max(w.norm());
            let k_max = truncation_rows(n_max, radius);
            let uz = DisplacementMatrix::build(z, k_max, n_max);
            let uw = DisplacementMatrix::build(w, k_max, n_max);
            for n in 0..=n_max {
                for l in 0..=n_max {
                    let dot: Complex64 = uz
                        .column(n)
                        .iter()
                        .zip(uw.column(l))
                        .map(|(a, b)| a * b.conj())
                        .sum();
                    let kernel = cross_covariance_normalized(n, l, z, w);
                    assert!(
                        (dot - kernel).norm() <= 1e-10,
                        "(n,l)=({n},{l}) z={z} w={w}: sum {dot} vs kernel {kernel}"
                    );
                }
            }
        }
    }

    #[test]
    fn equal_point_cross_level_independence() {
        let z = Complex64::new(-2.4, 1.7);
        for n in 0..=5u32 {
            for l in 0..=5u32 {
                let s = cross_covariance_normalized(n, l, z, z);
                let expect = if n == l { 1.0 } else { 0.0 };
                assert!(
                    (s - expect).norm() <= 1e-13,
                    "(n,l)=({n},{l}): {s}"
                );
            }
        }
    }

    #[test]
    fn normalized_and_raw_kernels_are_consistent() {
        let z = Complex64::new(0.9, 0.4);
        let w = Complex64::new(-0.3, 1.1);
        let scale = (-0.5 * (z.norm_sqr() + w.norm_sqr())).exp();
        for (n, l) in [(0u32, 0u32), (2, 1), (3, 3)] {
            let raw = cross_covariance(n, l, z, w);
            let norm = cross_covariance_normalized(n, l, z, w);
            assert!((raw * scale - norm).norm() <= 1e-12 * norm.norm().max(1e-3));
        }
    }

    #[test]
    fn translation_covariance_identity() {
        let z = Complex64::new(0.7, -1.2);
        let w = Complex64::new(-0.4, 0.5);
        let a = Complex64::new(1.9, 2.3);
        for (n, l) in [(0u32, 0u32), (2, 5), (4, 1)] {
            let lhs = cross_covariance_normalized(n, l, z + a, w + a);
            let rhs = translation_phase(a, z)
                * translation_phase(a, w).conj()
                * cross_covariance_normalized(n, l, z, w);
            assert!(
                (lhs - rhs).norm() <= 1e-12,
                "(n,l)=({n},{l}): {lhs} vs {rhs}"
            );
        }
    }

    /// Monte Carlo bridge: sampled fields reproduce the covariance kernel.
    #[test]
    fn sampled_fields_match_kernel_covariance() {
        let z = Complex64::new(0.3, 0.1);
        let w = Complex64::new(0.0, -0.2);
        let (n, l) = (1u32, 3u32);
        let n_max = 3u32;
        let k_max = truncation_rows(n_max, 0.4);
        let kz = PointEvaluator::build(z, n_max, k_max);
        let kw = PointEvaluator::build(w, n_max, k_max);
        let reps = 4000u64;
        let mut re = Vec::with_capacity(reps as usize);
        let mut im = Vec::with_capacity(reps as usize);
        for r in 0..reps {
            let coeffs = sample_coefficients(123, r, k_max);
            let xz = kz.apply(&coeffs);
            let xw = kw.apply(&coeffs);
            let prod = xz[n as usize] * xw[l as usize].conj();
            re.push(prod.re);
            im.push(prod.im);
        }
        let expect = cross_covariance_normalized(n, l, z, w);
        let (mre, sre) = mean_and_stderr(&re);
        let (mim, sim) = mean_and_stderr(&im);
        assert!(
            (mre - expect.re).abs() <= 3.5 * sre,
            "Re: {mre} ± {sre} vs {}",
            expect.re
        );
        assert!(
            (mim - expect.im).abs() <= 3.5 * sim,
            "Im: {mim} ± {sim} vs {}",
            expect.im
        );
    }

    /// Pointwise law: `|X_n(z)|²` is Exp(1).
    #[test]
    fn squared_modulus_is_exponential() {
        let z = Complex64::new(1.1, -0.7);
        let n = 3u32;
        let kernel = PointEvaluator::sized(z, n).unwrap();
        let reps = 3000u64;
        let sq: Vec<f64> = (0..reps)
            .map(|r| {
                let coeffs = sample_coefficients(77, r, kernel.k_max());
                kernel.apply(&coeffs)[n as usize].norm_sqr()
            })
            .collect();
        let (mean, se) = mean_and_stderr(&sq);
        assert!((mean - 1.0).abs() <= 3.0 * se, "E|X|² = {mean} ± {se}");
        let d = ks_statistic(&sq, crate::stats::exp_cdf);
        assert!(d <= 0.03, "KS distance to Exp(1): {d}");
    }

    #[test]
    fn starved_evaluator_is_rejected() {
        let z = Complex64::new(4.0, 0.0);
        let kernel = PointEvaluator::build(z, 2, 10);
        let (_, deficit) = kernel.max_deficit();
        assert!(deficit > 0.1, "10 rows at |z| = 4 must be starved");
        assert!(PointEvaluator::sized(z, 2).is_ok(), "rule sizing passes");
    }
}
