//! Fermion and phermion ladder pairs on the spin-1/2 space.
//!
//! * `b, b†` diagonalise the Hermitian equivalent: `h = Ω(b†b − ½)`.
//! * `B = ρ⁻¹bρ, B# = ρ⁻¹b†ρ` factorise the non-Hermitian `H = Ω(B#B − ½)`.
//! * `B̃ = ρbρ⁻¹` and its partner `ρb†ρ⁻¹` do the same for `H†`.
//!
//! The similarity route is the construction; the explicit `μ/ν`
//! coefficient formulas are evaluated separately and compared against it.

use nalgebra::Vector2;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{anticommutator2, max_abs2, max_abs_diff2};
use crate::su2::{build_hermitian, build_rho, su2_generators, Matrix2, ModelParams};
use crate::{C64, EXACT_TOL, ROUTE_TOL};

/// Which ladder pair a [`LadderPair`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LadderKind {
    /// `b, b†`
    Fermion,
    /// `B, B#`
    Phermion,
    /// `B̃` and its raising partner `ρb†ρ⁻¹`
    Dual,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LadderPair {
    pub lower: Matrix2,
    pub raise: Matrix2,
    pub kind: LadderKind,
}

/// Worst-case size of `X²` for a nilpotent `X` evaluated in IEEE double
/// arithmetic, in units of `ε·max|X|²`. Each entry of a 2×2 product is a
/// two-term sum, so a handful of roundings is the floor; the similarity
/// route `ρ⁻¹bρ` adds two more products.
pub const NILPOTENCY_ULPS: f64 = 8.0;

impl LadderPair {
    /// `max |{lower, raise} − 1|`.
    pub fn anticommutator_residual(&self) -> f64 {
        max_abs_diff2(
            &anticommutator2(&self.lower, &self.raise),
            &Matrix2::identity(),
        )
    }

    /// `(max|lower²|, max|raise²|)`.
    pub fn nilpotency_residuals(&self) -> (f64, f64) {
        (
            max_abs2(&(self.lower * self.lower)),
            max_abs2(&(self.raise * self.raise)),
        )
    }

    /// Round-off floor for [`Self::nilpotency_residuals`].
    pub fn nilpotency_floor(&self) -> f64 {
        let scale = max_abs2(&self.lower).max(max_abs2(&self.raise));
        NILPOTENCY_ULPS * f64::EPSILON * scale * scale
    }

    /// `raise · lower`.
    pub fn number(&self) -> Matrix2 {
        self.raise * self.lower
    }
}

/// Coefficients of `B = μ₁J₋ + μ₂J₊ + 2μ₃J₃` and `B# = ν₁J₋ + ν₂J₊ + 2ν₃J₃`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientSet {
    pub mu1: f64,
    pub mu2: f64,
    pub mu3: f64,
    pub nu1: f64,
    pub nu2: f64,
    pub nu3: f64,
    pub tau: f64,
}

impl CoefficientSet {
    pub fn lower(&self) -> Matrix2 {
        recompose(C64::from(self.mu1), C64::from(self.mu2), C64::from(self.mu3))
    }

    pub fn raise(&self) -> Matrix2 {
        recompose(C64::from(self.nu1), C64::from(self.nu2), C64::from(self.nu3))
    }
}

/// `c₋J₋ + c₊J₊ + 2c₃J₃`.
pub fn recompose(c_minus: C64, c_plus: C64, c3: C64) -> Matrix2 {
    let (jp, jm, j3) = su2_generators();
    jm * c_minus + jp * c_plus + j3 * (c3 * 2.0)
}

/// Unique decomposition of a traceless 2×2 matrix onto `{J₋, J₊, 2J₃}`,
/// returned as `(c₋, c₊, c₃)`.
pub fn decompose(m: &Matrix2) -> Result<(C64, C64, C64)> {
    let trace = (m[(0, 0)] + m[(1, 1)]).norm();
    if trace > EXACT_TOL {
        return Err(Error::NotTraceless(trace));
    }
    Ok((m[(1, 0)], m[(0, 1)], (m[(0, 0)] - m[(1, 1)]) * 0.5))
}

/// `b = (δ+Ω)/2Ω J₋ + (δ−Ω)/2Ω J₊ − 2λ/Ω J₃` and its adjoint.
pub fn build_b(p: &ModelParams, z: f64) -> Result<LadderPair> {
    let (_, d) = build_hermitian(p, z)?;
    // Normalising by the pair's own length keeps det b = 0 to round-off;
    // δ² + 4λ² = Ω² is checked separately.
    let om = d.delta.hypot(2.0 * d.lambda);
    let lower = recompose(
        C64::from((d.delta + om) / (2.0 * om)),
        C64::from((d.delta - om) / (2.0 * om)),
        C64::from(-d.lambda / om),
    );
    Ok(LadderPair {
        raise: lower.adjoint(),
        lower,
        kind: LadderKind::Fermion,
    })
}

/// Phermion pair `B = ρ⁻¹bρ`, `B# = ρ⁻¹b†ρ`.
pub fn build_phermion(p: &ModelParams, z: f64) -> Result<LadderPair> {
    let b = build_b(p, z)?;
    let m = build_rho(p, z)?;
    Ok(LadderPair {
        lower: m.rho_inv * b.lower * m.rho,
        raise: m.rho_inv * b.raise * m.rho,
        kind: LadderKind::Phermion,
    })
}

/// Dual pair `B̃ = ρbρ⁻¹` with raising partner `ρb†ρ⁻¹`.
pub fn build_dual(p: &ModelParams, z: f64) -> Result<LadderPair> {
    let b = build_b(p, z)?;
    let m = build_rho(p, z)?;
    Ok(LadderPair {
        lower: m.rho * b.lower * m.rho_inv,
        raise: m.rho * b.raise * m.rho_inv,
        kind: LadderKind::Dual,
    })
}

/// The explicit `μ/ν` formulas, checked against `ρ⁻¹bρ` and `ρ⁻¹b†ρ`.
pub fn mu_nu(p: &ModelParams, z: f64) -> Result<CoefficientSet> {
    let (set, residual) = mu_nu_unchecked(p, z)?;
    if !(residual <= ROUTE_TOL) {
        return Err(Error::Consistency {
            what: "mu/nu coefficient formulas vs similarity-transformed ladder",
            residual,
            tolerance: ROUTE_TOL,
        });
    }
    Ok(set)
}

/// Evaluates the coefficient formulas and returns them with the
/// reconstruction residual, without judging it.
pub fn mu_nu_unchecked(p: &ModelParams, z: f64) -> Result<(CoefficientSet, f64)> {
    let (_, d) = build_hermitian(p, z)?;
    let m = build_rho(p, z)?;
    let om = d.omega_cap;
    let tau = d.tau;
    let theta = m.theta;
    // ε sinhθ/θ
    let s = if theta == 0.0 {
        m.epsilon
    } else {
        m.epsilon * theta.sinh() / theta
    };
    let ch = theta.cosh();
    let zz = z * z;
    let plus = (d.delta + om) / (2.0 * om);
    let minus = (d.delta - om) / (2.0 * om);
    let lam = d.lambda / om;

    let set = CoefficientSet {
        mu1: plus + ((1.0 + tau + zz) * s + (1.0 + tau) * ch) * s,
        mu2: minus - ((1.0 - tau + zz) * s - (1.0 - tau) * ch) * s,
        mu3: -lam - (tau * s + ch) * z * s,
        nu1: minus - ((1.0 - tau + zz) * s + (1.0 - tau) * ch) * s,
        nu2: plus + ((1.0 + tau + zz) * s - (1.0 + tau) * ch) * s,
        nu3: -lam - (tau * s - ch) * z * s,
        tau,
    };
    let ph = build_phermion(p, z)?;
    let residual = max_abs_diff2(&set.lower(), &ph.lower)
        .max(max_abs_diff2(&set.raise(), &ph.raise));
    Ok((set, residual))
}

/// Occupation basis of a ladder pair: `f₀` spans the kernel of `lower`
/// (unit norm, largest component real positive) and `f₁ = raise·f₀`.
pub fn occupation_basis(pair: &LadderPair) -> (Vector2<C64>, Vector2<C64>) {
    let l = &pair.lower;
    // Either row of a rank-one nilpotent yields a kernel vector; take the
    // better-conditioned one.
    let from_row0 = Vector2::new(l[(0, 1)], -l[(0, 0)]);
    let from_row1 = Vector2::new(l[(1, 1)], -l[(1, 0)]);
    let mut f0 = if from_row0.norm() >= from_row1.norm() {
        from_row0
    } else {
        from_row1
    };
    f0 /= C64::from(f0.norm());
    let lead = if f0[0].norm() >= f0[1].norm() { f0[0] } else { f0[1] };
    f0 *= lead.conj() / lead.norm();
    let f1 = pair.raise * f0;
    (f0, f1)
}
