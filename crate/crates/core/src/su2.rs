//! Spin-1/2 su(2) model: generators, the non-Hermitian Hamiltonian
//! `H = ω J₃ + α J₋ + β J₊`, its one-parameter family of metric roots
//! `ρ = exp(ε [2J₃ + z (J₋ + J₊)])` and the Hermitian equivalent `h = ρ H ρ⁻¹`.
//!
//! Everything here is a closed-form 2×2 construction. Where two independent
//! routes to the same object exist (closed form vs. matrix exponential, closed
//! form vs. similarity transform) both are evaluated and compared.

use nalgebra::Matrix2 as NMatrix2;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::max_abs_diff2;
use crate::{C64, ROUTE_TOL, EXACT_TOL};

/// 2×2 complex matrix, row-major semantic layout.
pub type Matrix2 = NMatrix2<C64>;

#[inline]
fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Parameters `(ω, α, β)` of the su(2) Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    omega: f64,
    alpha: f64,
    beta: f64,
    hermitian_limit: bool,
}

impl ModelParams {
    /// Validated non-Hermitian parameters: `α ≠ β` and `ω² + 4αβ > 0`.
    pub fn new(omega: f64, alpha: f64, beta: f64) -> Result<Self> {
        Self::validate(omega, alpha, beta, false)
    }

    /// Same as [`ModelParams::new`] but also admits `α = β`.
    pub fn hermitian_limit(omega: f64, alpha: f64, beta: f64) -> Result<Self> {
        Self::validate(omega, alpha, beta, true)
    }

    fn validate(omega: f64, alpha: f64, beta: f64, hermitian_limit: bool) -> Result<Self> {
        if !(omega.is_finite() && alpha.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if alpha == beta && !hermitian_limit {
            return Err(Error::InvalidParams(
                "alpha == beta is the Hermitian limit; construct with ModelParams::hermitian_limit"
                    .into(),
            ));
        }
        let disc = omega * omega + 4.0 * alpha * beta;
        if disc <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "real-spectrum condition violated: omega^2 + 4*alpha*beta = {disc} <= 0"
            )));
        }
        Ok(Self {
            omega,
            alpha,
            beta,
            hermitian_limit,
        })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn is_hermitian(&self) -> bool {
        self.alpha == self.beta
    }

    pub fn allows_hermitian_limit(&self) -> bool {
        self.hermitian_limit
    }
}

/// The metric root `ρ` at a given `z`, with its exact inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricData {
    pub z: f64,
    pub epsilon: f64,
    /// `θ = ε √(1+z²)`; carries the sign of `ε`.
    pub theta: f64,
    pub rho: Matrix2,
    /// Obtained by flipping the sign of `ε`, never by numerical inversion.
    pub rho_inv: Matrix2,
    /// Entrywise distance between the closed form and the power form of `ρ`.
    pub power_form_residual: f64,
}

impl MetricData {
    /// `η₊ = ρ²`.
    pub fn eta(&self) -> Matrix2 {
        self.rho * self.rho
    }

    pub fn eta_inv(&self) -> Matrix2 {
        self.rho_inv * self.rho_inv
    }
}

/// Scalars tying `H`, `ρ` and `h` together.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedScalars {
    pub omega_cap: f64,
    pub delta: f64,
    pub lambda: f64,
    pub tau: f64,
}

/// `(J₊, J₋, J₃)` in the spin-1/2 representation.
pub fn su2_generators() -> (Matrix2, Matrix2, Matrix2) {
    let z = c(0.0);
    let one = c(1.0);
    let jp = Matrix2::new(z, one, z, z);
    let jm = Matrix2::new(z, z, one, z);
    let j3 = Matrix2::new(c(0.5), z, z, c(-0.5));
    (jp, jm, j3)
}

/// `H = ω J₃ + α J₋ + β J₊ = [[ω/2, β], [α, −ω/2]]`.
pub fn build_hamiltonian(p: &ModelParams) -> Matrix2 {
    Matrix2::new(
        c(p.omega / 2.0),
        c(p.beta),
        c(p.alpha),
        c(-p.omega / 2.0),
    )
}

/// `Ω = √(ω² + 4αβ)`.
pub fn omega_cap(p: &ModelParams) -> f64 {
    (p.omega * p.omega + 4.0 * p.alpha * p.beta).sqrt()
}

/// The arctanh argument `(α−β)√(1+z²) / (α+β−ωz)`.
fn arctanh_argument(p: &ModelParams, z: f64) -> Result<f64> {
    let denom = p.alpha + p.beta - p.omega * z;
    let scale = p.alpha.abs() + p.beta.abs() + (p.omega * z).abs();
    if denom.abs() <= 64.0 * f64::EPSILON * scale {
        return Err(Error::Degenerate { z });
    }
    Ok((p.alpha - p.beta) * (1.0 + z * z).sqrt() / denom)
}

/// Metric strength `ε(z)` making `ρ H ρ⁻¹` Hermitian.
///
/// In the Hermitian limit the answer is `0` for every `z`, including the
/// point where the general formula reads `0/0`.
pub fn epsilon_of(p: &ModelParams, z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::InvalidParams(format!("z must be finite, got {z}")));
    }
    if p.is_hermitian() {
        return Ok(0.0);
    }
    let x = arctanh_argument(p, z)?;
    if x.abs() >= 1.0 {
        return Err(Error::Domain { z, argument: x });
    }
    Ok(x.atanh() / (2.0 * (1.0 + z * z).sqrt()))
}

/// `ρ = cosh θ · 1 + (sinh θ / θ) ε [2J₃ + z(J₋+J₊)]`.
fn rho_closed_form(epsilon: f64, z: f64) -> Matrix2 {
    let theta = epsilon * (1.0 + z * z).sqrt();
    let sinhc = if theta == 0.0 {
        1.0
    } else {
        theta.sinh() / theta
    };
    let ch = theta.cosh();
    let s = epsilon * sinhc;
    Matrix2::new(c(ch + s), c(z * s), c(z * s), c(ch - s))
}

/// Builds `ρ` in closed form and cross-checks it against the power form
/// `ratio^{(2J₃ + z(J₋+J₊)) / (4√(1+z²))}` evaluated by matrix exponential.
pub fn build_rho(p: &ModelParams, z: f64) -> Result<MetricData> {
    let epsilon = epsilon_of(p, z)?;
    let s = (1.0 + z * z).sqrt();
    let rho = rho_closed_form(epsilon, z);
    let rho_inv = rho_closed_form(-epsilon, z);

    let power_form_residual = if p.is_hermitian() {
        max_abs_diff2(&rho, &Matrix2::identity())
    } else {
        let a = p.alpha + p.beta - p.omega * z;
        let d = (p.alpha - p.beta) * s;
        let ratio = (a + d) / (a - d);
        let generator = Matrix2::new(c(1.0), c(z), c(z), c(-1.0));
        let power = (generator * c(ratio.ln() / (4.0 * s))).exp();
        max_abs_diff2(&rho, &power)
    };
    if !(power_form_residual <= EXACT_TOL) {
        return Err(Error::Consistency {
            what: "metric closed form vs power form",
            residual: power_form_residual,
            tolerance: EXACT_TOL,
        });
    }

    Ok(MetricData {
        z,
        epsilon,
        theta: epsilon * s,
        rho,
        rho_inv,
        power_form_residual,
    })
}

/// `ρ H ρ⁻¹` by explicit matrix products.
pub fn similarity_hermitian(p: &ModelParams, metric: &MetricData) -> Matrix2 {
    metric.rho * build_hamiltonian(p) * metric.rho_inv
}

/// Closed-form `(δ, λ, τ)` using the principal square root; the factor
/// `α+β−ωz` keeps its sign.
pub fn derived_scalars(p: &ModelParams, z: f64) -> Result<DerivedScalars> {
    let omega_cap = omega_cap(p);
    let zz = 1.0 + z * z;
    let ab = p.alpha + p.beta;
    // (α+β−ωz)·√(1 − x²) with x the arctanh argument
    let root_term = if p.is_hermitian() {
        ab - p.omega * z
    } else {
        let x = arctanh_argument(p, z)?;
        (ab - p.omega * z) * (1.0 - x * x).sqrt()
    };
    let delta = (p.omega + ab * z - z * root_term) / zz;
    let lambda = (p.omega * z + ab * z * z + root_term) / (2.0 * zz);
    let tau = (p.omega + ab * z) / omega_cap;
    Ok(DerivedScalars {
        omega_cap,
        delta,
        lambda,
        tau,
    })
}

/// `δ J₃ + λ (J₋ + J₊)`.
pub fn hermitian_from_scalars(d: &DerivedScalars) -> Matrix2 {
    Matrix2::new(c(d.delta / 2.0), c(d.lambda), c(d.lambda), c(-d.delta / 2.0))
}

/// The Hermitian equivalent `h`, computed both by similarity and in closed
/// form. The closed form is returned (it is Hermitian by construction); a
/// disagreement beyond tolerance is reported instead of silently resolved.
pub fn build_hermitian(p: &ModelParams, z: f64) -> Result<(Matrix2, DerivedScalars)> {
    let metric = build_rho(p, z)?;
    let scalars = derived_scalars(p, z)?;
    let closed = hermitian_from_scalars(&scalars);
    let residual = max_abs_diff2(&closed, &similarity_hermitian(p, &metric));
    if !(residual <= ROUTE_TOL) {
        return Err(Error::Consistency {
            what: "Hermitian equivalent closed form vs similarity transform",
            residual,
            tolerance: ROUTE_TOL,
        });
    }
    Ok((closed, scalars))
}
