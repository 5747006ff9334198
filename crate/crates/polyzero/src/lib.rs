//! # polyzero
//!
//! A simulation and verification laboratory for the planar Landau levels of the
//! Gaussian entire function.
//!
//! The objects of study are the coupled random fields
//!
//! ```text
//! f_n(z, z̄) = Σ_k ζ_k H_{k,n}(z, z̄),          ζ_k i.i.d. standard complex Gaussian,
//! X_n(z)    = e^{−|z|²/2} f_n(z, z̄),
//! ```
//!
//! where `H_{k,n}` are the complex Hermite polynomials. Level 0 is the classical
//! Gaussian entire function `Σ ζ_k z^k/√k!`; higher levels are obtained by repeated
//! application of the raising operator `∂_z − z̄`. The normalized fields `X_n` are
//! jointly stationary: each has unit pointwise variance, `|X_n|²` is Exp(1)
//! distributed, and fields at *different* levels are pointwise independent while
//! carrying nontrivial cross correlations at positive distance.
//!
//! The crate provides:
//!
//! * [`specfun`] — Laguerre and complex Hermite polynomials, the displacement
//!   matrix `U(z)_{m,n} = e^{−|z|²/2} H_{m,n}(z, z̄)` built by stable recurrences,
//!   Hermite functions, and Pochhammer symbols.
//! * [`fields`] — coefficient sampling with reproducible per-realization streams,
//!   evaluation of `X_n` through the displacement matrix, covariance and
//!   cross-covariance kernels, and the translation phase.
//! * [`zeros`] — zero finding for `X_n` by grid scan plus damped Newton,
//!   intensity estimation, and empirical cross pair correlations between the
//!   zero sets of two levels.
//! * [`kacrice`] — the 6-dimensional Gaussian assembly behind the two-point
//!   Kac–Rice formula for pairs of levels, Monte Carlo evaluation of the
//!   two-point intensity ρ², exact contact (coincident-point) values as
//!   rationals, and the normalized correlation g.
//! * [`averages`] — spectrogram-like level averages `S_N = (1/N) Σ_{n<N} |X_n|²`,
//!   their law of large numbers and fluctuation fields, the lattice-count law
//!   `M_{n,z}` with its arcsine limit, and the limiting covariance `κ`.
//! * [`spectrogram`] — discrete short-time Fourier transforms with Hermite
//!   windows, white-noise spectrograms, and multitaper averages; numerically
//!   bridges the time-frequency picture to the planar fields.
//!
//! Numerical contracts (truncation rules, tolerances, error conditions) are
//! documented on each operation; see the individual module docs.

pub mod averages;
pub mod fields;
pub mod kacrice;
pub mod specfun;
pub mod spectrogram;
pub mod stats;
pub mod zeros;

mod linalg;
mod util;

/// Column-norm deficit tolerance for checked displacement matrices: a requested
/// column with `1 − Σ_m |U_{m,n}|² > τ` is reported as insufficient truncation.
pub const TAU_TRUNC: f64 = 1e-10;

/// Residual tolerance on `|X_n|` below which a Newton iterate is accepted as a zero.
pub const TAU_ZERO: f64 = 1e-10;

/// Relative eigenvalue clamp for the conditional covariance Λ: eigenvalues in
/// `[−TAU_EIG_REL · trace Λ, 0]` are clamped to 0; anything below errors.
pub const TAU_EIG_REL: f64 = 1e-8;
