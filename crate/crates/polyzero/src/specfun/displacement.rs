//! Displacement matrices `U(z)`: the unitary kernel behind planar translations.
//!
//! For a fixed `z ∈ ℂ` the doubly indexed array
//!
//! ```text
//! U(z)_{k,n} = e^{−|z|²/2} · H_{k,n}(z, z̄),        k, n ≥ 0,
//! ```
//!
//! is unitary on ℓ²(ℕ₀): its columns (and rows) are orthonormal,
//!
//! ```text
//! Σ_k  U(z)_{k,m} · conj(U(z)_{k,n}) = δ_{m,n}.
//! ```
//!
//! Column `n` lists the coefficients of the normalized level-`n` function
//! translated to `z`; in particular `Σ_k |U(z)_{k,n}|² = 1`, so
//! `m ↦ |U(z)_{m,n}|²` is a probability law on ℕ₀ with mean `n + |z|²` and
//! variance `(2n + 1)|z|²`.
//!
//! # Construction
//!
//! Entries are produced *diagonal by diagonal*. With `r = |z|`, `θ = arg z`,
//! `x = r²` and the gap `g = |k − n|`, both triangles share one real core:
//!
//! ```text
//! t_m(g) = e^{−x/2} · √(m!/(m+g)!) · r^g · L_m^{(g)}(x),
//!
//! U(z)_{m+g, m} = t_m(g) · e^{+i g θ}            (k ≥ n),
//! U(z)_{m, m+g} = t_m(g) · (−1)^g · e^{−i g θ}   (k ≤ n),
//! ```
//!
//! where `L_m^{(g)}` is the generalized Laguerre polynomial. Along a diagonal
//! the Laguerre factor follows its three-term recurrence in the degree `m`,
//! which is forward-stable for `x ≥ 0, g ≥ 0`. (The alternative of building
//! column `n+1` from column `n` is *exact* in exact arithmetic, but amplifies
//! rounding by roughly `Π_n (√k_eff + |z|)/√(n+1)` — catastrophic already at
//! `|z| ≈ 9` across a few dozen columns — so it is not used.)
//!
//! Two guards keep every regime of `z` in range:
//!
//! * the positive prefactor `e^{−x/2}·√(m!/(m+g)!)·r^g` is assembled in log
//!   space from a `ln k!` table, and
//! * the Laguerre values — which reach `≈ e^{x/2}` in magnitude and would
//!   overflow `f64` once `x ≳ 1400` — carry a dynamic power-of-`1e140`
//!   rescaling whose logarithm is folded back into the prefactor.
//!
//! Every emitted entry `t_m` is a plain `f64` of magnitude at most 1.
//!
//! # Truncation certificates
//!
//! A finite build keeps rows `k ≤ k_max`; the discarded tail of column `n`
//! is measured by the *deficit* `d_n = |1 − Σ_{k ≤ k_max} |U(z)_{k,n}|²|`,
//! which [`DisplacementMatrix`] records for every column. The checked
//! constructor [`displacement_matrix`] rejects a build whose worst deficit
//! exceeds [`crate::TAU_TRUNC`]; the sizing rule [`truncation_rows`] picks a
//! `k_max` that keeps deficits negligible.
//!
//! The deficit is itself a floating-point sum, accurate to roughly
//! `(x + g·ln r + ln k!)·ε` — around `1e−12` for `|z| ≤ 10` but growing past
//! [`crate::TAU_TRUNC`] once `|z|²` reaches the thousands. Checked builds are
//! therefore intended for moderate displacements; large-displacement callers
//! (occupation laws at `|z| ~ √N`) should build unchecked and validate or
//! renormalize total mass at their own tolerance.

use num_complex::Complex64;

use crate::util::ln_factorial;
use crate::TAU_TRUNC;

use super::SpecfunError;

/// Dynamic rescaling bound for Laguerre recurrence values.
const RESCALE: f64 = 1e140;
/// `ln RESCALE`.
const LN_RESCALE: f64 = 140.0 * std::f64::consts::LN_10;

/// Visits the diagonals of `U(z)` truncated to `rows × cols`.
///
/// For each gap `g` (from 0 while any entry remains) the visitor receives
/// `(g, t)` where `t[m] = e^{−|z|²/2}·√(m!/(m+g)!)·|z|^g·L_m^{(g)}(|z|²)` for
/// `m = 0..len(g)`; the corresponding matrix entries are
/// `U_{m+g,m} = t[m]·e^{igθ}` and `U_{m,m+g} = t[m]·(−1)^g·e^{−igθ}`.
/// The slice is a reused buffer — copy out anything that must survive.
pub(crate) fn scan_diagonals<F>(z: Complex64, rows: usize, cols: usize, mut visit: F)
where
    F: FnMut(usize, &[f64]),
{
    assert!(rows > 0 && cols > 0);
    let span = rows.max(cols);
    let band = rows.min(cols);
    let x = z.norm_sqr();

    if x == 0.0 {
        // U(0) = I: the main diagonal is all ones, every other is zero.
        let ones = vec![1.0f64; band];
        visit(0, &ones);
        let zeros = vec![0.0f64; band];
        for g in 1..span {
            visit(g, &zeros[..band.min(span - g)]);
        }
        return;
    }

    let ln_r = 0.5 * x.ln();
    let lf: Vec<f64> = (0..span as u32).map(ln_factorial).collect();
    let mut t = vec![0.0f64; band];

    for g in 0..span {
        let len = band.min(span - g);
        let gf = g as f64;
        // ln of the positive prefactor: base + ½(ln m! − ln (m+g)!) per entry
        // (the table term already contributes the −½·ln g! at m = 0).
        let base = -0.5 * x + gf * ln_r;
        let mut v_prev = 0.0f64; // L_{m−1}, rescaled
        let mut v = 1.0f64; // L_m, rescaled
        let mut c = 0.0f64; // accumulated ln of the rescaling
        for (m, slot) in t[..len].iter_mut().enumerate() {
            let mf = m as f64;
            let ln_mag = base + 0.5 * (lf[m] - lf[m + g]) + c;
            // exp underflows to 0 below −745.2; skip the call when hopeless.
            *slot = if ln_mag > -760.0 { v * ln_mag.exp() } else { 0.0 };
            let next = ((2.0 * mf + 1.0 + gf - x) * v - (mf + gf) * v_prev) / (mf + 1.0);
            v_prev = v;
            v = next;
            if v.abs() > RESCALE {
                v /= RESCALE;
                v_prev /= RESCALE;
                c += LN_RESCALE;
            } else if v != 0.0 && v.abs() < 1.0 / RESCALE && v_prev.abs() < 1.0 / RESCALE {
                v *= RESCALE;
                v_prev *= RESCALE;
                c -= LN_RESCALE;
            }
        }
        visit(g, &t[..len]);
    }
}

/// Dense, truncated displacement matrix `U(z)` with per-column tail
/// certificates.
///
/// Storage is column-major: column `n` is the contiguous slice
/// `data[n·rows .. (n+1)·rows]`, holding `U(z)_{k,n}` for `k = 0..rows`.
#[derive(Debug, Clone)]
pub struct DisplacementMatrix {
    z: Complex64,
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
    deficits: Vec<f64>,
}

impl DisplacementMatrix {
    /// Builds the truncated matrix with rows `0..=k_max` and columns
    /// `0..=n_max`, without enforcing any deficit tolerance.
    ///
    /// Every retained entry is accurate on its own scale regardless of
    /// `k_max` — truncation only discards rows. Inspect
    /// [`DisplacementMatrix::deficit`] or use the checked
    /// [`displacement_matrix`] to certify that the discarded tails are
    /// negligible for your purpose.
    pub fn build(z: Complex64, k_max: u32, n_max: u32) -> Self {
        let rows = k_max as usize + 1;
        let cols = n_max as usize + 1;
        let mut data = vec![Complex64::new(0.0, 0.0); rows * cols];
        let theta = z.arg();

        scan_diagonals(z, rows, cols, |g, t| {
            let gf = g as f64;
            let up = Complex64::from_polar(1.0, gf * theta);
            let sign = if g % 2 == 0 { 1.0 } else { -1.0 };
            let down = Complex64::from_polar(sign, -gf * theta);
            for (m, &tm) in t.iter().enumerate() {
                let k = m + g;
                if k < rows && m < cols {
                    data[m * rows + k] = up * tm;
                }
                if g > 0 && m < rows && k < cols {
                    data[k * rows + m] = down * tm;
                }
            }
        });

        let deficits = (0..cols)
            .map(|n| {
                let mass: f64 = data[n * rows..(n + 1) * rows]
                    .iter()
                    .map(|u| u.norm_sqr())
                    .sum();
                (1.0 - mass).abs()
            })
            .collect();

        DisplacementMatrix {
            z,
            rows,
            cols,
            data,
            deficits,
        }
    }

    /// The displacement argument `z`.
    pub fn z(&self) -> Complex64 {
        self.z
    }

    /// Number of retained rows (`k_max + 1`).
    pub fn rows(&self) -> u32 {
        self.rows as u32
    }

    /// Number of retained columns (`n_max + 1`).
    pub fn cols(&self) -> u32 {
        self.cols as u32
    }

    /// Entry `U(z)_{k,n}`.
    #[inline]
    pub fn at(&self, k: u32, n: u32) -> Complex64 {
        self.data[n as usize * self.rows + k as usize]
    }

    /// Column `n` as a contiguous slice over `k = 0..rows`.
    #[inline]
    pub fn column(&self, n: u32) -> &[Complex64] {
        let n = n as usize;
        &self.data[n * self.rows..(n + 1) * self.rows]
    }

    /// Tail-mass certificate `|1 − Σ_k |U_{k,n}|²|` for column `n`.
    pub fn deficit(&self, n: u32) -> f64 {
        self.deficits[n as usize]
    }

    /// Worst deficit over all retained columns, as `(column, deficit)`.
    pub fn max_deficit(&self) -> (u32, f64) {
        let (n, d) = self
            .deficits
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("at least one column");
        (n as u32, *d)
    }

    /// The probability law `m ↦ |U(z)_{m,n}|²` carried by column `n` — the
    /// row-mass law of a translated level-`n` function. Sums to 1 minus the
    /// column's deficit.
    pub fn column_probabilities(&self, n: u32) -> Vec<f64> {
        self.column(n).iter().map(|u| u.norm_sqr()).collect()
    }
}

/// Builds `U(z)` truncated to rows `0..=k_max` and columns `0..=n_max`,
/// certifying that every column's tail deficit is at most [`TAU_TRUNC`].
///
/// Returns [`SpecfunError::TruncationInsufficient`] naming the worst column
/// when the certificate fails; use [`truncation_rows`] to size `k_max`.
/// Intended for moderate displacements (see the module notes on the
/// floating-point floor of the deficit itself).
pub fn displacement_matrix(
    z: Complex64,
    k_max: u32,
    n_max: u32,
) -> Result<DisplacementMatrix, SpecfunError> {
    let matrix = DisplacementMatrix::build(z, k_max, n_max);
    let (column, deficit) = matrix.max_deficit();
    if deficit > TAU_TRUNC {
        return Err(SpecfunError::TruncationInsufficient {
            column,
            deficit,
            tolerance: TAU_TRUNC,
        });
    }
    Ok(matrix)
}

/// Single column `n` of `U(z)` over rows `0..=k_max`, without building the
/// full matrix.
///
/// Costs one diagonal scan (`O(k_max · n)` recurrence steps) but only
/// `O(k_max)` memory; useful for the row-mass law of one level at large
/// displacement, where the full matrix would be enormous. No deficit check
/// is applied — validate or renormalize the returned mass as appropriate.
pub fn displacement_column(z: Complex64, n: u32, k_max: u32) -> Vec<Complex64> {
    let rows = k_max as usize + 1;
    let n = n as usize;
    let mut col = vec![Complex64::new(0.0, 0.0); rows];
    let theta = z.arg();
    scan_diagonals(z, rows, n + 1, |g, t| {
        let gf = g as f64;
        // Upper entry (n+g, n) sits at position m = n of diagonal g.
        if n < t.len() && n + g < rows {
            col[n + g] = Complex64::from_polar(1.0, gf * theta) * t[n];
        }
        // Lower entry (n−g, n) sits at position m = n−g.
        if g > 0 && g <= n && n - g < t.len() {
            let sign = if g % 2 == 0 { 1.0 } else { -1.0 };
            col[n - g] = Complex64::from_polar(sign, -gf * theta) * t[n - g];
        }
    });
    col
}

/// Row count that makes every column deficit negligible for columns up to
/// `n_max` and displacements up to `radius`:
///
/// ```text
/// K(n_max, R) = ⌈ n_max + R² + 10·√(2·n_max + 1)·R + 50 ⌉.
/// ```
///
/// Column `n` of `U(z)` concentrates its mass around `k ≈ n + |z|²` with
/// standard deviation `√(2n+1)·|z|`; ten standard deviations plus a flat
/// margin of 50 pushes the discarded tail far below [`TAU_TRUNC`].
///
/// ```
/// use polyzero::specfun::truncation_rows;
/// assert_eq!(truncation_rows(0, 1.0), 61);
/// assert!(truncation_rows(30, 9.0) >= 30 + 81 + 50);
/// ```
pub fn truncation_rows(n_max: u32, radius: f64) -> u32 {
    assert!(
        radius.is_finite() && radius >= 0.0,
        "radius must be finite and non-negative"
    );
    let n = n_max as f64;
    let k = n + radius * radius + 10.0 * (2.0 * n + 1.0).sqrt() * radius + 50.0;
    k.ceil() as u32
}
