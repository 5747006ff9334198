//! Two-point zero correlations across levels, via Gaussian conditioning.
//!
//! For a single coefficient ladder the zero sets of different levels are
//! correlated. Their two-point intensity `ρ^{(2)}_{n,n+k}(z, w)` — the joint
//! density of a level-`n` zero at `z` and a level-`(n+k)` zero at `w` — comes
//! from conditioning the 6-dimensional complex Gaussian vector
//!
//! ```text
//! F = ( f_n(z), √((n+1)_k)·f_{n+k}(w)                                — values
//!     | √(n+1)·f_{n+1}(z), −√n·f_{n−1}(z),                          — ∂, ∂̄ at z
//!       √((n+1)_{k+1})·f_{n+k+1}(w), −√(n+k)·√((n+1)_k)·f_{n+k−1}(w) )  — at w
//! ```
//!
//! on its first two components vanishing. The derivative components are the
//! ladder images of `∂` and `∂̄` acting on the levels, so the two Jacobian
//! determinants at the zeros are `|ξ₁|² − |ξ₂|²` and `|ξ₃|² − |ξ₄|²` in the
//! conditioned remainder `ξ ~ N_C(0, Λ)`, giving
//!
//! ```text
//! ρ^{(2)}_{n,n+k}(z, w) = E[ ||ξ₁|²−|ξ₂|²| · ||ξ₃|²−|ξ₄|²| ] / det(πU),
//! ```
//!
//! with `U` the 2×2 covariance of the conditioned values, `W` the 4×4
//! covariance of the derivatives, `V` their 2×4 cross-covariance, and
//! `Λ = W − V*U⁻¹V` the Schur complement.
//!
//! # Scaling
//!
//! Raw covariances grow like `e^{|z|²}`. Every component at a point `p` is
//! therefore normalized by `e^{−|p|²/2}` (the bounded `X` fields). This
//! diagonal rescaling multiplies the expectation by `e^{−|z|²−|w|²}` and
//! `det(πU)` by exactly the same factor, so `ρ^{(2)}` is unchanged while all
//! block entries stay polynomially bounded; the absorbed log factors are
//! recorded in [`KacRiceAssembly::log_scale`].
//!
//! Contact (`w → z`) and long-range limits have exact closed forms in
//! rational arithmetic ([`rho2_contact_exact`], [`g_contact_exact`]); Monte
//! Carlo ([`rho2_mc`]) covers everything in between. Separations below
//! [`CONTACT_SEPARATION`] are served by the closed forms — the conditioned
//! problem degenerates there and [`assemble`] is not the right tool.

mod exact;
mod mc;
mod moments;

pub use exact::{
    g_contact_exact, one_point_intensity, one_point_intensity_rational, rho2_contact,
    rho2_contact_exact,
};
pub use mc::{g_normalized, rho2_mc, rho2_mc_assembled, McEstimate};
pub use moments::{abs_moment_coupled, abs_moment_pair};

use num_complex::Complex64;
use thiserror::Error;

use crate::fields::cross_covariance_normalized;
use crate::linalg::{clamp_psd_eigenvalues, hermitian_eigen};
use crate::specfun::pochhammer;
use crate::TAU_EIG_REL;

/// Separations below this are routed to the exact contact forms by
/// [`g_normalized`] (and should be by any caller): the conditional law is a
/// vanishing perturbation of the contact limit there, which is known exactly.
pub const CONTACT_SEPARATION: f64 = 1e-6;

/// Condition-number ceiling for the 2×2 conditioning block.
const NEAR_SINGULAR_COND: f64 = 1e12;

/// Errors from the conditioning machinery.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum KacRiceError {
    /// The 2×2 conditioning block cannot be inverted reliably. Occurs at
    /// coincident points (use the contact closed forms) and for extreme level
    /// weights where `(n+1)_k` exhausts f64 conditioning.
    #[error("conditioning block near singular (cond = {cond:.3e}); use the contact closed forms")]
    NearSingularU { cond: f64 },

    /// The Schur complement has an eigenvalue below `−τ · trace`: it is not a
    /// covariance matrix even after rounding allowances, indicating an
    /// assembly inconsistency.
    #[error("conditioned covariance eigenvalue {eigenvalue:.3e} exceeds PSD tolerance {tolerance:.3e}")]
    IndefiniteCovariance { eigenvalue: f64, tolerance: f64 },

    /// A moment identity was asked for a degenerate scale (`b = 0` or
    /// `d = 0`); take the analytic limit instead.
    #[error("moment scales b and d must be strictly positive")]
    DegenerateScale,
}

/// The conditioned covariance structure at one point pair.
///
/// Blocks are stored column-major over the normalized components (see the
/// module docs): `u_block` 2×2, `v_block` 2×4, `w_block` 4×4, and the Schur
/// complement `lambda` 4×4 — Hermitian by construction.
#[derive(Debug, Clone)]
pub struct KacRiceAssembly {
    n: u32,
    k: u32,
    z: Complex64,
    w: Complex64,
    u: [Complex64; 4],
    v: [Complex64; 8],
    w_block: [Complex64; 16],
    lambda: [Complex64; 16],
    det_pi_u: f64,
    log_scale: (f64, f64),
}

/// The `(level, point, coefficient)` description of the 6 components.
///
/// All block entries follow from it as
/// `Σ_{ij} = c_i·c_j·E[X_{l_i}(p_i)·conj(X_{l_j}(p_j))]`, which makes
/// Hermiticity structural rather than an artifact of transcribed formulas.
fn components(n: u32, k: u32, z: Complex64, w: Complex64) -> [(u32, Complex64, f64); 6] {
    let nf = n as f64;
    let poch_k = pochhammer(nf + 1.0, k).value;
    let poch_k1 = pochhammer(nf + 1.0, k + 1).value;
    [
        (n, z, 1.0),
        (n + k, w, poch_k.sqrt()),
        (n + 1, z, (nf + 1.0).sqrt()),
        // At n = 0 the lowering term vanishes; the level index is inert.
        (n.saturating_sub(1), z, -nf.sqrt()),
        (n + k + 1, w, poch_k1.sqrt()),
        (n + k - 1, w, -((nf + k as f64).sqrt()) * poch_k.sqrt()),
    ]
}

/// Builds the covariance blocks and the Schur complement for one point pair.
///
/// Callers must keep `z ≠ w`; coincident points (and conditioning beyond
/// f64, e.g. gigantic `(n+1)_k`) yield [`KacRiceError::NearSingularU`] and
/// are served exactly by [`rho2_contact_exact`] / [`g_contact_exact`].
pub fn assemble(
    n: u32,
    k: u32,
    z: Complex64,
    w: Complex64,
) -> Result<KacRiceAssembly, KacRiceError> {
    assert!(k >= 1, "the level gap k must be at least 1");
    if z == w {
        return Err(KacRiceError::NearSingularU {
            cond: f64::INFINITY,
        });
    }

    let comp = components(n, k, z, w);
    let mut sigma = [Complex64::new(0.0, 0.0); 36];
    for j in 0..6 {
        for i in 0..=j {
            let (li, pi, ci) = comp[i];
            let (lj, pj, cj) = comp[j];
            let s = if ci == 0.0 || cj == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                ci * cj * cross_covariance_normalized(li, lj, pi, pj)
            };
            sigma[i + 6 * j] = s;
            sigma[j + 6 * i] = s.conj();
        }
    }

    let mut u = [Complex64::new(0.0, 0.0); 4];
    for j in 0..2 {
        for i in 0..2 {
            u[i + 2 * j] = sigma[i + 6 * j];
        }
    }
    let mut v = [Complex64::new(0.0, 0.0); 8];
    for j in 0..4 {
        for i in 0..2 {
            v[i + 2 * j] = sigma[i + 6 * (2 + j)];
        }
    }
    let mut w_block = [Complex64::new(0.0, 0.0); 16];
    for j in 0..4 {
        for i in 0..4 {
            w_block[i + 4 * j] = sigma[(2 + i) + 6 * (2 + j)];
        }
    }

    // Condition and determinant of the Hermitian 2×2 block.
    let tr = u[0].re + u[3].re;
    let disc = ((u[0].re - u[3].re).powi(2) + 4.0 * u[2].norm_sqr()).sqrt();
    let lo = 0.5 * (tr - disc);
    let hi = 0.5 * (tr + disc);
    let cond = hi / lo;
    if !(lo > 0.0 && cond <= NEAR_SINGULAR_COND) {
        return Err(KacRiceError::NearSingularU { cond });
    }
    let det = u[0].re * u[3].re - u[2].norm_sqr();
    let det_pi_u = std::f64::consts::PI * std::f64::consts::PI * det;

    // M = U⁻¹V from the closed-form 2×2 inverse.
    let inv_det = 1.0 / det;
    let mut m = [Complex64::new(0.0, 0.0); 8];
    for j in 0..4 {
        let v0 = v[2 * j];
        let v1 = v[2 * j + 1];
        m[2 * j] = (u[3] * v0 - u[2] * v1) * inv_det;
        m[2 * j + 1] = (u[0] * v1 - u[1] * v0) * inv_det;
    }

    // Λ = W − V*M, hermitized structurally (upper triangle + mirror).
    let mut lambda = [Complex64::new(0.0, 0.0); 16];
    for j in 0..4 {
        for i in 0..=j {
            let vm = v[2 * i].conj() * m[2 * j] + v[2 * i + 1].conj() * m[2 * j + 1];
            let val = w_block[i + 4 * j] - vm;
            lambda[i + 4 * j] = val;
            lambda[j + 4 * i] = val.conj();
        }
    }
    for i in 0..4 {
        lambda[i + 4 * i] = Complex64::new(lambda[i + 4 * i].re, 0.0);
    }

    Ok(KacRiceAssembly {
        n,
        k,
        z,
        w,
        u,
        v,
        w_block,
        lambda,
        det_pi_u,
        log_scale: (0.5 * z.norm_sqr(), 0.5 * w.norm_sqr()),
    })
}

impl KacRiceAssembly {
    /// Lower level `n`.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Level gap `k ≥ 1`.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// First point (level `n` zero location).
    pub fn z(&self) -> Complex64 {
        self.z
    }

    /// Second point (level `n+k` zero location).
    pub fn w(&self) -> Complex64 {
        self.w
    }

    /// 2×2 covariance of the conditioned values, column-major.
    pub fn u_block(&self) -> &[Complex64; 4] {
        &self.u
    }

    /// 2×4 cross-covariance of values and derivatives, column-major.
    pub fn v_block(&self) -> &[Complex64; 8] {
        &self.v
    }

    /// 4×4 covariance of the derivative components, column-major.
    pub fn w_block(&self) -> &[Complex64; 16] {
        &self.w_block
    }

    /// Schur complement `Λ = W − V*U⁻¹V`, column-major, Hermitian.
    pub fn lambda(&self) -> &[Complex64; 16] {
        &self.lambda
    }

    /// `det(πU)` of the normalized conditioning block (strictly positive).
    pub fn det_pi_u(&self) -> f64 {
        self.det_pi_u
    }

    /// The `(|z|²/2, |w|²/2)` log factors absorbed into the normalization;
    /// raw covariances are the stored blocks times `e^{scale_i + scale_j}`
    /// per entry.
    pub fn log_scale(&self) -> (f64, f64) {
        self.log_scale
    }

    /// Eigenvalues of `Λ` in ascending order, after the PSD clamp: values
    /// below `τ·trace` (τ = [`TAU_EIG_REL`]) become exactly 0.
    pub fn lambda_spectrum(&self) -> Result<[f64; 4], KacRiceError> {
        let (evals, _) = self.eigen_clamped()?;
        Ok([evals[0], evals[1], evals[2], evals[3]])
    }

    /// Columns of a factor `B` with `Λ = BB*`; sampling `ξ = Bη` with `η`
    /// standard complex Gaussian realizes the conditioned law. Clamped
    /// (zero) eigendirections are dropped.
    pub(crate) fn lambda_factor(&self) -> Result<Vec<[Complex64; 4]>, KacRiceError> {
        let (evals, q) = self.eigen_clamped()?;
        Ok(evals
            .iter()
            .enumerate()
            .filter(|&(_, &ev)| ev > 0.0)
            .map(|(j, &ev)| {
                let s = ev.sqrt();
                [
                    q[4 * j] * s,
                    q[1 + 4 * j] * s,
                    q[2 + 4 * j] * s,
                    q[3 + 4 * j] * s,
                ]
            })
            .collect())
    }

    fn eigen_clamped(&self) -> Result<(Vec<f64>, Vec<Complex64>), KacRiceError> {
        let (mut evals, q) = hermitian_eigen(4, &self.lambda);
        clamp_psd_eigenvalues(&mut evals, TAU_EIG_REL).map_err(|(eigenvalue, tolerance)| {
            KacRiceError::IndefiniteCovariance {
                eigenvalue,
                tolerance,
            }
        })?;
        Ok((evals, q))
    }
}
