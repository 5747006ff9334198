//! Hermite functions on the real line, unit-normalized in L²(ℝ).
//!
//! The scaling is chosen so that the Gaussian window carries no free
//! parameter:
//!
//! ```text
//! h_n(t) = 2^{1/4} · (2^n n!)^{−1/2} · H_n(√(2π) t) · e^{−π t²},
//! ```
//!
//! where `H_n` is the physicists' Hermite polynomial. With this convention
//! `∫ h_m h_n dt = δ_{m,n}`, `h_0(t) = 2^{1/4} e^{−π t²}`, and each `h_n` is
//! its own Fourier transform up to the factor `(−i)^n`.
//!
//! Values are produced by the stable three-term recurrence
//!
//! ```text
//! h_{n+1}(t) = √(2/(n+1)) · √(2π) t · h_n(t) − √(n/(n+1)) · h_{n−1}(t),
//! ```
//!
//! which follows from `H_{n+1}(x) = 2x H_n(x) − 2n H_{n−1}(x)` after
//! absorbing the normalizing constants. All quantities stay of order one,
//! so no log-space handling is needed at any order used here.

/// Unit-normalized Hermite function `h_n(t)`.
///
/// ```
/// use polyzero::specfun::hermite_function;
/// // h_0(t) = 2^{1/4} e^{−π t²}
/// let h0 = hermite_function(0, 0.5);
/// assert!((h0 - 2f64.powf(0.25) * (-std::f64::consts::PI * 0.25).exp()).abs() < 1e-15);
/// ```
pub fn hermite_function(n: u32, t: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = 2f64.powf(0.25) * (-std::f64::consts::PI * t * t).exp();
    let x = (2.0 * std::f64::consts::PI).sqrt() * t;
    for m in 0..n {
        let mf = m as f64;
        let next = (2.0 / (mf + 1.0)).sqrt() * x * cur - (mf / (mf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// All Hermite functions `h_0(t), …, h_{n_max}(t)` in one pass.
///
/// Identical recurrence as [`hermite_function`], returned as a vector of
/// length `n_max + 1`; use this when several orders are needed at the same
/// point (window stacks, multitaper averages).
pub fn hermite_functions(n_max: u32, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut prev = 0.0;
    let mut cur = 2f64.powf(0.25) * (-std::f64::consts::PI * t * t).exp();
    let x = (2.0 * std::f64::consts::PI).sqrt() * t;
    out.push(cur);
    for m in 0..n_max {
        let mf = m as f64;
        let next = (2.0 / (mf + 1.0)).sqrt() * x * cur - (mf / (mf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}
