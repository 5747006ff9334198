//! Elementary statistics used by the verification suites: sample summaries,
//! Kolmogorov–Smirnov distances, and reference CDFs.
//!
//! These are deliberately small, dependency-free helpers — every tolerance in
//! the test suites bottoms out in one of these functions, so they are kept
//! simple enough to audit by eye.

/// Sample mean and standard error of the mean.
///
/// Returns `(mean, stderr)` where `stderr = s/√n` with `s` the unbiased sample
/// standard deviation. For `n < 2` the stderr is 0.
pub fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (f64::NAN, 0.0);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
    let var = ss / (n as f64 - 1.0);
    (mean, (var / n as f64).sqrt())
}

/// Unbiased sample variance.
pub fn sample_variance(xs: &[f64]) -> f64 {
    let n = xs.len();
    if n < 2 {
        return 0.0;
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n as f64 - 1.0)
}

/// Pearson correlation of two equal-length samples.
pub fn sample_correlation(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len(), "correlation needs equal-length samples");
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    sxy / (sxx * syy).sqrt()
}

/// Sample covariance (unbiased) of two equal-length samples.
pub fn sample_covariance(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len(), "covariance needs equal-length samples");
    let n = xs.len();
    if n < 2 {
        return 0.0;
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>() / (nf - 1.0)
}

/// Kolmogorov–Smirnov distance between the empirical CDF of `samples` and a
/// reference CDF.
///
/// The samples are sorted internally; `cdf` must be a (weakly) increasing
/// function with values in [0, 1].
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs: Vec<f64> = samples.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).expect("KS samples must not contain NaN"));
    ks_statistic_sorted(&xs, cdf)
}

/// As [`ks_statistic`], for samples already sorted ascending.
pub fn ks_statistic_sorted(xs: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = xs.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        let lo = f - i as f64 / n;
        let hi = (i + 1) as f64 / n - f;
        d = d.max(lo).max(hi);
    }
    d
}

/// Kolmogorov–Smirnov distance between a *discrete* law given by `atoms`
/// (location, probability mass) and a continuous reference CDF.
///
/// The atoms must be sorted by location. The supremum over the real line of
/// |F_disc − F_ref| is attained either just before or at an atom, so both the
/// left and right limits at each atom are compared.
pub fn ks_discrete_vs_cdf(atoms: &[(f64, f64)], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut cum = 0.0f64;
    let mut d = 0.0f64;
    for &(y, p) in atoms {
        let f = cdf(y);
        d = d.max((f - cum).abs());
        cum += p;
        d = d.max((f - cum).abs());
    }
    d
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}

/// CDF of the Exp(1) distribution.
pub fn exp_cdf(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -(-x).exp_m1()
    }
}

/// Complementary error function, Chebyshev-fit approximation.
///
/// Fractional error below 1.2e-7 everywhere — more than enough for the KS
/// tolerances used in the test suites (≥ 0.02), and monotone in practice.
pub fn erfc(x: f64) -> f64 {
    let z = x.abs();
    let t = 1.0 / (1.0 + 0.5 * z);
    let ans = t
        * (-z * z - 1.26551223
            + t * (1.00002368
                + t * (0.37409196
                    + t * (0.09678418
                        + t * (-0.18628806
                            + t * (0.27886807
                                + t * (-1.13520398
                                    + t * (1.48851587
                                        + t * (-0.82215223 + t * 0.17087277)))))))))
        .exp();
    if x >= 0.0 {
        ans
    } else {
        2.0 - ans
    }
}
