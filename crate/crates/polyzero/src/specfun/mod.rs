//! Special functions underlying the planar Landau-level fields.
//!
//! * [`laguerre`] — generalized Laguerre polynomials `L_n^α(x)` by the stable
//!   upward three-term recurrence, plus an explicit-sum reference evaluator.
//! * [`complex_hermite`] — the complex Hermite polynomials `H_{k,n}(z, z̄)` in
//!   their two-branch Laguerre closed form, with a log-scaled overload for
//!   magnitudes outside the f64 range.
//! * [`displacement_matrix`] — the unitary displacement matrix
//!   `U(z)_{m,n} = e^{−|z|²/2} H_{m,n}(z, z̄)` built diagonal by diagonal from
//!   stable Laguerre recurrences; every evaluation of the fields goes through it.
//! * [`hermite_function`] — the L²(ℝ)-normalized Hermite functions `h_n` used
//!   as short-time Fourier transform windows.
//! * [`pochhammer`] — rising factorials `(a)_k` in product and log form.
//!
//! # Conventions
//!
//! For `k > n ≥ 0`:  `H_{k,n}(z, z̄) = √(n!/k!) · z^{k−n} · L_n^{k−n}(|z|²)`;
//! for `0 ≤ k ≤ n`:  `H_{k,n}(z, z̄) = (−1)^{n−k} √(k!/n!) · z̄^{n−k} · L_k^{n−k}(|z|²)`.
//! Both branches agree for `k = n` and satisfy the reflection symmetry
//! `H_{p,q}(z, z̄) = (−1)^{p−q} H_{q,p}(z̄, z)` and `H_{p,q}(0,0) = δ_{p,q}`.
//!
//! The displacement matrix has orthonormal columns (as a map ℓ² → ℓ², unitary);
//! in finite truncation each column norm is ≤ 1 and the deficit
//! `1 − Σ_{m≤K} |U_{m,n}|²` is recorded so callers can certify accuracy.

mod displacement;
mod hermfun;
mod hermite;
mod laguerre;
mod poch;

pub use displacement::{
    displacement_column, displacement_matrix, truncation_rows, DisplacementMatrix,
};
pub(crate) use displacement::scan_diagonals;
pub use hermfun::{hermite_function, hermite_functions};
pub use hermite::{complex_hermite, complex_hermite_log};
pub use laguerre::{laguerre, laguerre_explicit_sum};
pub use poch::{pochhammer, Pochhammer};

use num_complex::Complex64;
use thiserror::Error;

/// Errors from special-function evaluation.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum SpecfunError {
    /// The requested value exceeds the representable f64 range; callers needing
    /// such magnitudes should work with the log-scaled overloads or route
    /// through the displacement matrix, whose entries are bounded by 1.
    #[error("value overflows f64 in {what}")]
    Overflow { what: String },

    /// A displacement-matrix column requested under the checked constructor has
    /// a truncated-norm deficit above tolerance: the row truncation K is too
    /// small for this (z, column) pair.
    #[error("truncation insufficient: column {column} deficit {deficit:.3e} exceeds {tolerance:.3e}")]
    TruncationInsufficient {
        column: u32,
        deficit: f64,
        tolerance: f64,
    },
}

/// A complex value in log-scaled polar form: `exp(ln_abs) · e^{i·arg}`.
///
/// Total representation for magnitudes far outside f64 range; `ln_abs = −∞`
/// encodes an exact zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogComplex {
    /// Natural log of the modulus (−∞ for zero).
    pub ln_abs: f64,
    /// Argument in radians (0 by convention for zero).
    pub arg: f64,
}

impl LogComplex {
    /// An exact zero.
    pub const ZERO: LogComplex = LogComplex {
        ln_abs: f64::NEG_INFINITY,
        arg: 0.0,
    };

    /// Build from a finite complex number.
    pub fn from_complex(v: Complex64) -> Self {
        if v == Complex64::new(0.0, 0.0) {
            return Self::ZERO;
        }
        LogComplex {
            ln_abs: v.norm().ln(),
            arg: v.arg(),
        }
    }

    /// Convert back to a complex number; ±∞ overflow becomes `inf` components.
    pub fn to_complex(self) -> Complex64 {
        if self.ln_abs == f64::NEG_INFINITY {
            return Complex64::new(0.0, 0.0);
        }
        let m = self.ln_abs.exp();
        Complex64::new(m * self.arg.cos(), m * self.arg.sin())
    }

    /// Scale by `exp(t)` for real `t`.
    pub fn scaled(self, t: f64) -> LogComplex {
        if self.ln_abs == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        LogComplex {
            ln_abs: self.ln_abs + t,
            arg: self.arg,
        }
    }
}

impl std::ops::Mul for LogComplex {
    type Output = LogComplex;

    fn mul(self, other: LogComplex) -> LogComplex {
        if self.ln_abs == f64::NEG_INFINITY || other.ln_abs == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        LogComplex {
            ln_abs: self.ln_abs + other.ln_abs,
            arg: self.arg + other.arg,
        }
    }
}
