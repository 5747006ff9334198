//! Generalized Laguerre polynomials.

/// Evaluate the generalized Laguerre polynomial `L_n^α(x)`.
///
/// Uses the upward three-term recurrence
///
/// ```text
/// L_0^α = 1,
/// L_1^α = 1 + α − x,
/// (n+1) L_{n+1}^α = (2n + 1 + α − x) L_n^α − (n + α) L_{n−1}^α,
/// ```
///
/// which is forward-stable on the domain used here (x ≥ 0, α ≥ 0).
///
/// # Examples
///
/// ```
/// use polyzero::specfun::laguerre;
///
/// // L_2(x) = (x² − 4x + 2)/2 ⇒ L_2(1) = −1/2
/// assert!((laguerre(2, 0.0, 1.0) + 0.5).abs() < 1e-15);
/// // L_n^α(0) = C(n+α, n); e.g. L_3^2(0) = C(5,3) = 10
/// assert!((laguerre(3, 2.0, 0.0) - 10.0).abs() < 1e-12);
/// ```
pub fn laguerre(n: u32, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0f64; // L_0
    let mut cur = 1.0 + alpha - x; // L_1
    for m in 1..n {
        let mf = m as f64;
        let next = ((2.0 * mf + 1.0 + alpha - x) * cur - (mf + alpha) * prev) / (mf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Reference evaluator: the explicit sum
/// `L_n^α(x) = Σ_{j=0}^n (−1)^j C(n+α, n−j) x^j / j!`.
///
/// Slower and less stable than [`laguerre`] (alternating terms); used as an
/// independent oracle in tests, not in production paths.
pub fn laguerre_explicit_sum(n: u32, alpha: f64, x: f64) -> f64 {
    let mut sum = 0.0f64;
    for j in 0..=n {
        // C(n+α, n−j) = Π_{i=1}^{n−j} (α + j + i) / (n−j)!
        let m = n - j;
        let mut binom = 1.0f64;
        for i in 1..=m {
            binom *= (alpha + j as f64 + i as f64) / i as f64;
        }
        let mut term = binom;
        for i in 1..=j {
            term *= x / i as f64;
        }
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}
