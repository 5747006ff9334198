//! Complex Hermite polynomials `H_{k,n}(z, z̄)`.

use num_complex::Complex64;

use super::{laguerre::laguerre, LogComplex, SpecfunError};
use crate::util::half_ln_factorial;

/// Evaluate the complex Hermite polynomial `H_{k,n}(z, z̄)`.
///
/// Two-branch closed form (see the module docs): the branch with the smaller
/// index supplies the Laguerre degree, so the recurrence depth is
/// `min(k, n)`. The factorial ratio is ≤ 1 on both branches and is applied in
/// log space, so intermediate overflow can only come from magnitudes that the
/// final value genuinely attains; such cases return
/// [`SpecfunError::Overflow`] — callers needing those regimes should use
/// [`complex_hermite_log`](super::complex_hermite_log) or the displacement
/// matrix, whose entries `e^{−|z|²/2} H_{m,n}` are bounded by 1.
///
/// # Examples
///
/// ```
/// use num_complex::Complex64;
/// use polyzero::specfun::complex_hermite;
///
/// // H_{0,2}(z, z̄) = √(0!/2!)·z̄²·L_0²(|z|²) branch at z = 1: 1/√2.
/// let h = complex_hermite(0, 2, Complex64::new(1.0, 0.0)).unwrap();
/// assert!((h.re - 0.5f64.sqrt()).abs() < 1e-14 && h.im.abs() < 1e-14);
///
/// // H_{3,0}(z, z̄) = z³/√6.
/// let z = Complex64::new(0.4, -1.1);
/// let h = complex_hermite(3, 0, z).unwrap();
/// let want = z * z * z / 6.0f64.sqrt();
/// assert!((h - want).norm() < 1e-14);
/// ```
pub fn complex_hermite(k: u32, n: u32, z: Complex64) -> Result<Complex64, SpecfunError> {
    let lc = complex_hermite_log(k, n, z);
    if lc.ln_abs > 709.0 {
        return Err(SpecfunError::Overflow {
            what: format!("complex_hermite(k={k}, n={n}, |z|={:.3e})", z.norm()),
        });
    }
    Ok(lc.to_complex())
}

/// Log-scaled evaluation of `H_{k,n}(z, z̄)`: total for all finite inputs.
///
/// Returns the value as `exp(ln_abs)·e^{i·arg}`. The only in-range loss is the
/// Laguerre factor, which is evaluated in f64 (its degree is `min(k,n)`; on
/// this crate's domains it stays far from overflow).
pub fn complex_hermite_log(k: u32, n: u32, z: Complex64) -> LogComplex {
    if z == Complex64::new(0.0, 0.0) {
        // H_{k,n}(0,0) = δ_{k,n} exactly.
        return if k == n {
            LogComplex { ln_abs: 0.0, arg: 0.0 }
        } else {
            LogComplex::ZERO
        };
    }
    let x = z.norm_sqr();
    let (gap, lag, conj_phase, sign_pi) = if k >= n {
        // √(n!/k!) · z^{k−n} · L_n^{k−n}(x)
        let gap = k - n;
        (gap, laguerre(n, gap as f64, x), false, false)
    } else {
        // (−1)^{n−k} √(k!/n!) · z̄^{n−k} · L_k^{n−k}(x)
        let gap = n - k;
        (gap, laguerre(k, gap as f64, x), true, (n - k) % 2 == 1)
    };
    if lag == 0.0 {
        return LogComplex::ZERO;
    }
    let (lo, hi) = if k >= n { (n, k) } else { (k, n) };
    let ln_ratio = half_ln_factorial(lo) - half_ln_factorial(hi); // ≤ 0
    let ln_abs = ln_ratio + gap as f64 * z.norm().ln() + lag.abs().ln();
    let mut arg = gap as f64 * z.arg();
    if conj_phase {
        arg = -arg;
    }
    if (lag < 0.0) ^ sign_pi {
        arg += std::f64::consts::PI;
    }
    LogComplex { ln_abs, arg }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(k: u32, n: u32, z: Complex64) -> Complex64 {
        complex_hermite(k, n, z).unwrap()
    }

    #[test]
    fn kronecker_at_origin() {
        let zero = Complex64::new(0.0, 0.0);
        for k in 0..=8 {
            for n in 0..=8 {
                let v = h(k, n, zero);
                let want = if k == n { 1.0 } else { 0.0 };
                assert_eq!(v, Complex64::new(want, 0.0), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn reflection_symmetry() {
        // H_{p,q}(z, z̄) = (−1)^{p−q} H_{q,p}(z̄, z)
        let points = [
            Complex64::new(0.7, 0.2),
            Complex64::new(-1.4, 0.9),
            Complex64::new(0.05, -1.8),
            Complex64::new(2.0, 1.5),
        ];
        for p in 0..=12u32 {
            for q in 0..=12u32 {
                for &z in &points {
                    let lhs = h(p, q, z);
                    let sign = if (p + q) % 2 == 0 { 1.0 } else { -1.0 };
                    let rhs = sign * h(q, p, z.conj());
                    let scale = lhs.norm().max(rhs.norm()).max(1e-3);
                    assert!(
                        (lhs - rhs).norm() <= 1e-11 * scale,
                        "p={p} q={q} z={z}: {lhs} vs {rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn first_level_closed_form() {
        // H_{k,1} = √(1/k!)·z^{k−1}·L_1^{k−1}(|z|²) = z^{k−1}(k − |z|²)/√(k!)
        let z = Complex64::new(0.8, -0.3);
        for k in 1..=6u32 {
            let mut zp = Complex64::new(1.0, 0.0);
            for _ in 0..k - 1 {
                zp *= z;
            }
            let mut fact = 1.0;
            for j in 1..=k {
                fact *= j as f64;
            }
            let want = zp * (k as f64 - z.norm_sqr()) / fact.sqrt();
            let got = h(k, 1, z);
            assert!((got - want).norm() < 1e-13 * want.norm().max(1.0), "k={k}");
        }
    }

    #[test]
    fn log_overload_matches_direct() {
        let z = Complex64::new(1.3, 2.1);
        for k in 0..=10u32 {
            for n in 0..=10u32 {
                let direct = h(k, n, z);
                let via_log = complex_hermite_log(k, n, z).to_complex();
                assert!(
                    (direct - via_log).norm() <= 1e-12 * direct.norm().max(1.0),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn overflow_is_signalled() {
        // ln |H_{k,0}(z)| = k ln|z| − ½ ln k! ≈ 733 at |z| = 40, k = 1000:
        // beyond f64 range, so the plain evaluator must refuse.
        let z = Complex64::new(40.0, 0.0);
        let res = complex_hermite(1000, 0, z);
        assert!(matches!(res, Err(SpecfunError::Overflow { .. })));
        // The log overload stays finite.
        let lc = complex_hermite_log(1000, 0, z);
        assert!(lc.ln_abs.is_finite() && lc.ln_abs > 709.0);
    }
}
