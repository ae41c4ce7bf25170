//! Supercoherent states of the boson–phermion system.
//!
//! The ψ-family state is
//!
//! ```text
//! |α,ξ⟩ = e^{−½ξ*ξ}(|α,0⟩ − ξ|α,1⟩) = |α,0⟩ − ξ|α,1⟩ + ½ξξ*|α,0⟩,
//! |α,ε⟩ = e^{−|α|²/2} Σ_n αⁿ/√n! ψ(n,ε),
//! ```
//!
//! and the φ-family is the same expression over `φ(n,ε)`. Both are also
//! produced as displacement orbits of the respective ground states, which
//! serves as the cross-check.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{boson_lowering, SuperSpace};
use crate::grassmann::{
    berezin, gexp_even, gmul, pseudo_adjoint, Coefficient, FockOp, FockVec, GrassmannElement,
    Monomial,
};
use crate::linalg::{kron, max_abs_diff};
use crate::quadrature::QuadratureSpec;
use crate::{C64, ROUTE_TOL};

/// Largest accepted Glauber tail `e^{−|α|²} Σ_{n≥N} |α|^{2n}/n!`.
pub const TAIL_BOUND: f64 = 1e-14;

/// Target for the cross-family resolution of identity.
pub const IDENTITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// Built on `ψ(n,ε)` with `B, B#`.
    Psi,
    /// Built on `φ(n,ε)` with `B̃` and its raising partner.
    Phi,
}

/// `ln n!`
fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `e^{−x} Σ_{n≥N} xⁿ/n!`, summed in log space.
pub fn glauber_tail(modulus_sq: f64, n_max: usize) -> f64 {
    if modulus_sq == 0.0 {
        return 0.0;
    }
    let lx = modulus_sq.ln();
    let mut log_term = -modulus_sq + n_max as f64 * lx - ln_factorial(n_max);
    let mut total = 0.0;
    let mut n = n_max;
    loop {
        let term = log_term.exp();
        total += term;
        n += 1;
        log_term += lx - (n as f64).ln();
        if (n as f64) > modulus_sq && term < total * 1e-17 {
            break;
        }
        if n > n_max + 10_000 {
            break;
        }
    }
    total.min(1.0)
}

/// Weight lost by cutting the radial integral at `R` for the slowest level
/// `n = N−1`: `e^{−R²} Σ_{k<N} R^{2k}/k!`.
pub fn radial_cutoff_deficit(radius: f64, n_max: usize) -> f64 {
    let x = radius * radius;
    if x == 0.0 {
        return 1.0;
    }
    (0..n_max)
        .map(|k| (-x + k as f64 * x.ln() - ln_factorial(k)).exp())
        .sum::<f64>()
        .min(1.0)
}

/// Enforces the amplitude/truncation policy.
pub fn check_amplitude(alpha: C64, n_max: usize) -> Result<f64> {
    let tail = glauber_tail(alpha.norm_sqr(), n_max);
    if !(tail < TAIL_BOUND) {
        return Err(Error::AmplitudeOutOfRange {
            modulus: alpha.norm(),
            n_max,
            tail,
            bound: TAIL_BOUND,
        });
    }
    Ok(tail)
}

/// `e^{−|α|²/2} αⁿ/√n!` for `n < N`, by recurrence.
pub fn glauber_coefficients(alpha: C64, n_max: usize) -> Vec<C64> {
    let mut c = Vec::with_capacity(n_max);
    let mut cur = C64::from((-0.5 * alpha.norm_sqr()).exp());
    for n in 0..n_max {
        if n > 0 {
            cur = cur * alpha / (n as f64).sqrt();
        }
        c.push(cur);
    }
    c
}

fn basis_vec(s: &SuperSpace, n: usize, eps: usize, family: Family) -> &DVector<C64> {
    match family {
        Family::Psi => s.psi(n, eps),
        Family::Phi => s.phi(n, eps),
    }
}

fn combine(s: &SuperSpace, coeffs: &[C64], eps: usize, family: Family) -> DVector<C64> {
    let mut v = DVector::zeros(s.dim());
    for (n, c) in coeffs.iter().enumerate() {
        v.axpy(*c, basis_vec(s, n, eps, family), C64::from(1.0));
    }
    v
}

/// `|α,ε⟩` (ψ-family) or `|~α,ε⟩` (φ-family), subject to the tail policy.
pub fn glauber_component(s: &SuperSpace, alpha: C64, eps: usize, family: Family) -> Result<FockVec> {
    check_amplitude(alpha, s.n_max)?;
    Ok(FockVec(combine(
        s,
        &glauber_coefficients(alpha, s.n_max),
        eps,
        family,
    )))
}

/// Closed-form state `|A0⟩ − ξ|A1⟩ + ½ξξ*|A0⟩`.
fn assemble(a0: DVector<C64>, a1: DVector<C64>) -> GrassmannElement<FockVec> {
    GrassmannElement::zero()
        .with(Monomial::XiXiStar, FockVec(&a0 * C64::from(0.5)))
        .with(Monomial::One, FockVec(a0))
        .with(Monomial::Xi, FockVec(-a1))
}

fn closed_form_unchecked(s: &SuperSpace, alpha: C64, family: Family) -> GrassmannElement<FockVec> {
    let c = glauber_coefficients(alpha, s.n_max);
    assemble(combine(s, &c, 0, family), combine(s, &c, 1, family))
}

/// Choice of bosonic factor in the displacement operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum BosonFactor {
    /// `exp(αa† − α*a)` on the truncated space; exactly unitary.
    #[default]
    Weyl,
    /// `e^{−|α|²/2} e^{αa†} e^{−α*a}`; equal to the above only without
    /// truncation.
    NormalOrdered,
}

fn ladder_ops(s: &SuperSpace, family: Family) -> (&DMatrix<C64>, &DMatrix<C64>) {
    match family {
        Family::Psi => (&s.big_b, &s.big_b_sharp),
        Family::Phi => (&s.b_tilde, &s.b_dag_dual),
    }
}

/// `D(α,ξ) = e^{−½ξ*ξ} W(α) e^{−ξB#} e^{−ξ*B}`, with `B#, B` replaced by the
/// dual pair for the φ-family. The constant phase is fixed to zero.
pub fn displacement(s: &SuperSpace, alpha: C64, family: Family) -> Result<GrassmannElement<FockOp>> {
    displacement_with(s, alpha, family, BosonFactor::default())
}

pub fn displacement_with(
    s: &SuperSpace,
    alpha: C64,
    family: Family,
    boson: BosonFactor,
) -> Result<GrassmannElement<FockOp>> {
    let [gauss, bos, raise_factor, lower_factor] = displacement_factors(s, alpha, family, boson)?;
    gmul(&gmul(&gmul(&gauss, &bos)?, &raise_factor)?, &lower_factor)
}

/// `D(α,ξ)|x⟩`, applying the factors right to left without forming `D`.
pub fn displace(
    s: &SuperSpace,
    alpha: C64,
    family: Family,
    x: &GrassmannElement<FockVec>,
) -> Result<GrassmannElement<FockVec>> {
    let factors = displacement_factors(s, alpha, family, BosonFactor::Weyl)?;
    factors.iter().rev().try_fold(x.clone(), |acc, f| gmul(f, &acc))
}

/// `[G, W, exp(B#ξ), exp(Bξ*)]` with `D = G·W·exp(B#ξ)·exp(Bξ*)`.
fn displacement_factors(
    s: &SuperSpace,
    alpha: C64,
    family: Family,
    boson: BosonFactor,
) -> Result<[GrassmannElement<FockOp>; 4]> {
    let dim = s.dim();
    let id = DMatrix::<C64>::identity(dim, dim);
    let (lower, raise) = ladder_ops(s, family);

    // −½ξ*ξ = +½ξξ*
    let gauss = gexp_even(
        &GrassmannElement::monomial(Monomial::XiXiStar, FockOp::even(&id * C64::from(0.5))),
        dim,
    )?;
    let bos = match boson {
        BosonFactor::Weyl => {
            // a = a_b ⊗ 1, so the exponential factorises.
            let ab = boson_lowering(s.n_max);
            let w = (ab.adjoint() * alpha - ab * alpha.conj()).exp();
            GrassmannElement::scalar(FockOp::even(kron(&w, &DMatrix::identity(2, 2))))
        }
        BosonFactor::NormalOrdered => {
            let up = gexp_even(&GrassmannElement::scalar(FockOp::even(&s.a_dag * alpha)), dim)?;
            let down = gexp_even(
                &GrassmannElement::scalar(FockOp::even(&s.a * (-alpha.conj()))),
                dim,
            )?;
            let norm = GrassmannElement::scalar(C64::from((-0.5 * alpha.norm_sqr()).exp()));
            gmul(&norm, &gmul(&up, &down)?)?
        }
    };
    // −ξB# = +B#ξ and −ξ*B = +Bξ* in coefficient-left storage.
    let raise_factor = gexp_even(
        &GrassmannElement::monomial(Monomial::Xi, FockOp::odd(raise.clone())),
        dim,
    )?;
    let lower_factor = gexp_even(
        &GrassmannElement::monomial(Monomial::XiStar, FockOp::odd(lower.clone())),
        dim,
    )?;
    Ok([gauss, bos, raise_factor, lower_factor])
}

/// `max |P(D^#D − 1)P|` and `max |P(DD^# − 1)P|` with `P` projecting on
/// boson levels below `n_max − guard`.
pub fn pseudo_unitarity_residuals(
    s: &SuperSpace,
    d: &GrassmannElement<FockOp>,
    family: Family,
    guard: usize,
) -> Result<(f64, f64)> {
    let metric = match family {
        Family::Psi => s.psi_metric(),
        Family::Phi => s.phi_metric(),
    };
    let d_sharp = pseudo_adjoint(d, &metric)?;
    // Boson-major ordering: levels below `n_max − guard` are the leading block.
    let k = 2 * s.n_max.saturating_sub(guard);
    let id = GrassmannElement::scalar(FockOp::identity(s.dim()));
    let restricted = |x: GrassmannElement<FockOp>| -> f64 {
        x.sub(&id)
            .components()
            .map(|(_, c)| c.mat.view((0, 0), (k, k)).iter().map(|v| v.norm()).fold(0.0, f64::max))
            .fold(0.0, f64::max)
    };
    Ok((
        restricted(gmul(&d_sharp, d)?),
        restricted(gmul(d, &d_sharp)?),
    ))
}

fn ground(s: &SuperSpace, family: Family) -> GrassmannElement<FockVec> {
    GrassmannElement::scalar(FockVec(basis_vec(s, 0, 0, family).clone()))
}

/// A supercoherent state, stored fully expanded over `{1, ξ, ξξ*}`.
#[derive(Debug, Clone)]
pub struct SuperCoherentState {
    pub family: Family,
    pub alpha: C64,
    pub state: GrassmannElement<FockVec>,
    /// Distance from the displacement orbit of the ground state.
    pub orbit_residual: f64,
    pub tail: f64,
}

impl SuperCoherentState {
    /// `|α,0⟩`, the value at `ξ = 0`.
    pub fn xi_projection(&self) -> &FockVec {
        self.state.body().expect("state has a body")
    }

    /// `|α,1⟩`, minus the `ξ` coefficient.
    pub fn excited(&self) -> FockVec {
        self.state.get(Monomial::Xi).expect("state has a xi part").neg()
    }

    /// Components before the Gaussian prefactor: `|α,0⟩ − ξ|α,1⟩`.
    pub fn prefactor_free(&self) -> GrassmannElement<FockVec> {
        let mut e = self.state.clone();
        e.set(Monomial::XiXiStar, None);
        e
    }
}

/// Closed-form state, cross-checked against `D(α,ξ)` applied to the ground
/// state.
pub fn build_scs(s: &SuperSpace, alpha: C64, family: Family) -> Result<SuperCoherentState> {
    let tail = check_amplitude(alpha, s.n_max)?;
    let state = closed_form_unchecked(s, alpha, family);
    let orbit = displace(s, alpha, family, &ground(s, family))?;
    let orbit_residual = state.max_abs_diff(&orbit);
    if !(orbit_residual <= ROUTE_TOL) {
        return Err(Error::Consistency {
            what: "closed-form supercoherent state vs displacement orbit",
            residual: orbit_residual,
            tolerance: ROUTE_TOL,
        });
    }
    Ok(SuperCoherentState {
        family,
        alpha,
        state,
        orbit_residual,
        tail,
    })
}

/// Residuals of `a|·⟩ = α|·⟩` and `L|·⟩ = ξ|·⟩` where `L` is `B` for the
/// ψ-family and `B̃` for the φ-family.
pub fn eigen_residuals(s: &SuperSpace, st: &SuperCoherentState) -> Result<(f64, f64)> {
    let a = GrassmannElement::scalar(FockOp::even(s.a.clone()));
    let lhs = gmul(&a, &st.state)?;
    let rhs = gmul(&GrassmannElement::scalar(st.alpha), &st.state)?;
    let boson = lhs.max_abs_diff(&rhs);

    let (lower, _) = ladder_ops(s, st.family);
    let l = GrassmannElement::scalar(FockOp::odd(lower.clone()));
    let xi = GrassmannElement::monomial(Monomial::Xi, C64::from(1.0));
    let fermion = gmul(&l, &st.state)?.max_abs_diff(&gmul(&xi, &st.state)?);
    Ok((boson, fermion))
}

/// Bra of a ket element: `(m|v⟩)† = ⟨v|m*`.
fn bra_terms(y: &GrassmannElement<FockVec>) -> impl Iterator<Item = (Monomial, &FockVec)> {
    y.components().map(|(m, v)| (m.conj(), v))
}

/// Graded inner product `⟨Y|X⟩ = Σ (m*n) ⟨y_m|x_n⟩`.
pub fn inner(y: &GrassmannElement<FockVec>, x: &GrassmannElement<FockVec>) -> GrassmannElement<C64> {
    let mut out = GrassmannElement::zero();
    for (mb, yv) in bra_terms(y) {
        for (n, xv) in x.components() {
            let Some((neg, mono)) = mb.mul(n) else { continue };
            let v = yv.0.dotc(&xv.0);
            out = out.with(mono, if neg { -v } else { v });
        }
    }
    out
}

/// Graded outer product `|X⟩⟨Y| = Σ (n m*) |x_n⟩⟨y_m|`, an even operator
/// element.
pub fn outer(x: &GrassmannElement<FockVec>, y: &GrassmannElement<FockVec>) -> GrassmannElement<FockOp> {
    let mut out = GrassmannElement::zero();
    for (n, xv) in x.components() {
        for (mb, yv) in bra_terms(y) {
            let Some((neg, mono)) = n.mul(mb) else { continue };
            let mut m = &xv.0 * yv.0.adjoint();
            if neg {
                m.neg_mut();
            }
            out = out.with(mono, FockOp::even(m));
        }
    }
    out
}

/// `⟨~α,ξ|α,ξ⟩` for a ψ-family state and a φ-family state of equal `α`.
pub fn bi_normalization(x: &SuperCoherentState, y: &SuperCoherentState) -> Result<GrassmannElement<C64>> {
    if x.family != Family::Psi || y.family != Family::Phi || x.alpha != y.alpha {
        return Err(Error::Mismatch);
    }
    Ok(inner(&y.state, &x.state))
}

/// `⟨α,ξ|α,ξ⟩` within one family.
pub fn same_family_overlap(x: &SuperCoherentState) -> GrassmannElement<C64> {
    inner(&x.state, &x.state)
}

/// Distance of a scalar Grassmann element from the unit element.
pub fn distance_from_one(x: &GrassmannElement<C64>) -> f64 {
    x.max_abs_diff(&GrassmannElement::scalar(C64::from(1.0)))
}

/// Standard SUSY supercoherent state `G(|α⟩⊗f₀ − ξ|α⟩⊗f₁)` on the
/// orthonormal occupation basis, built without the biorthogonal families.
pub fn standard_scs(s: &SuperSpace, alpha: C64) -> GrassmannElement<FockVec> {
    let c = DMatrix::from_fn(s.n_max, 1, |n, _| glauber_direct(alpha, n));
    let (f0, f1) = s.occupation;
    let f0 = DMatrix::from_fn(2, 1, |i, _| f0[i]);
    let f1 = DMatrix::from_fn(2, 1, |i, _| f1[i]);
    let a0 = DVector::from_column_slice(kron(&c, &f0).as_slice());
    let a1 = DVector::from_column_slice(kron(&c, &f1).as_slice());
    assemble(a0, a1)
}

/// `e^{−|α|²/2} αⁿ/√n!` evaluated directly from powers and `ln n!`.
pub fn glauber_direct(alpha: C64, n: usize) -> C64 {
    if n == 0 {
        return C64::from((-0.5 * alpha.norm_sqr()).exp());
    }
    if alpha == C64::from(0.0) {
        return C64::from(0.0);
    }
    let modulus = (-0.5 * alpha.norm_sqr() + n as f64 * alpha.norm().ln() - 0.5 * ln_factorial(n)).exp();
    C64::from_polar(modulus, n as f64 * alpha.arg())
}

/// Glauber state over a family, with independently computed coefficients.
pub fn glauber_reference(s: &SuperSpace, alpha: C64, eps: usize, family: Family) -> DVector<C64> {
    let c: Vec<C64> = (0..s.n_max).map(|n| glauber_direct(alpha, n)).collect();
    combine(s, &c, eps, family)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub n_max: usize,
    pub quadrature: QuadratureSpec,
    /// `max |∫|α,ξ⟩⟨~α,ξ| − 1|`
    pub residual_cross: f64,
    /// `max |∫|α,ξ⟩⟨α,ξ| − 1|`
    pub residual_same: f64,
    /// `residual_cross` with twice the nodes in each direction.
    pub residual_cross_refined: f64,
    /// `|refined − coarse| / max(coarse, IDENTITY_TOL)`.
    pub convergence_change: f64,
    /// Analytic weight lost beyond the radial cutoff for the top boson level.
    pub radial_cutoff_deficit: f64,
}

impl IdentityReport {
    pub fn cross_pass(&self) -> bool {
        self.residual_cross <= IDENTITY_TOL
    }

    pub fn converged(&self) -> bool {
        self.convergence_change < 0.1
    }
}

/// `∫ dμ(α) ∫dξ*dξ |α,ξ⟩⟨Y(α),ξ|` where the bra comes from `bra_family`.
/// Quadrature nodes are not subject to the amplitude tail policy.
pub fn identity_integral(s: &SuperSpace, quad: &QuadratureSpec, bra_family: Family) -> DMatrix<C64> {
    let rule = quad.rule();
    let dim = s.dim();
    let rings: Vec<DMatrix<C64>> = (0..rule.radial.len())
        .into_par_iter()
        .map(|i| {
            let mut acc = DMatrix::<C64>::zeros(dim, dim);
            for (alpha, w) in rule.ring(i) {
                let ket = closed_form_unchecked(s, alpha, Family::Psi);
                let bra = closed_form_unchecked(s, alpha, bra_family);
                if let Some(b) = berezin(&outer(&ket, &bra)) {
                    acc += &b.mat * C64::from(w);
                }
            }
            acc
        })
        .collect();
    pairwise_sum(rings).unwrap_or_else(|| DMatrix::zeros(dim, dim))
}

/// Sum in a fixed balanced tree, independent of thread scheduling.
fn pairwise_sum(mut items: Vec<DMatrix<C64>>) -> Option<DMatrix<C64>> {
    while items.len() > 1 {
        let mut next = Vec::with_capacity(items.len().div_ceil(2));
        let mut it = items.into_iter();
        while let Some(a) = it.next() {
            next.push(match it.next() {
                Some(b) => a + b,
                None => a,
            });
        }
        items = next;
    }
    items.pop()
}

/// Cross- and same-family resolutions of identity with a node-doubling
/// convergence check.
pub fn resolution_of_identity(s: &SuperSpace, quad: &QuadratureSpec) -> Result<IdentityReport> {
    let dim = s.dim();
    let id = DMatrix::<C64>::identity(dim, dim);
    let cross = max_abs_diff(&identity_integral(s, quad, Family::Phi), &id);
    let same = max_abs_diff(&identity_integral(s, quad, Family::Psi), &id);
    let refined = max_abs_diff(&identity_integral(s, &quad.refined(), Family::Phi), &id);
    if (refined - cross).abs() > 10.0 * IDENTITY_TOL {
        return Err(Error::UnderResolved {
            coarse: cross,
            fine: refined,
        });
    }
    // Below the tolerance the residual is round-off; measure against the
    // tolerance instead of the noise.
    let change = (refined - cross).abs() / cross.max(IDENTITY_TOL);
    Ok(IdentityReport {
        n_max: s.n_max,
        quadrature: *quad,
        residual_cross: cross,
        residual_same: same,
        residual_cross_refined: refined,
        convergence_change: change,
        radial_cutoff_deficit: radial_cutoff_deficit(quad.radius, s.n_max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::ModelParams;

    fn space(n: usize) -> SuperSpace {
        SuperSpace::build(&ModelParams::new(2.0, 1.0, 0.5).unwrap(), 0.2, n).unwrap()
    }

    #[test]
    fn tail_values() {
        assert_eq!(glauber_tail(0.0, 4), 0.0);
        // e^{-1} Σ_{n≥1} 1/n! = 1 − e^{-1}
        assert!((glauber_tail(1.0, 1) - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        // e^{-4}(4^4/24 + 4^5/120 + ...) against direct summation
        let direct: f64 = (4..80)
            .map(|n| (-4.0 + n as f64 * 4f64.ln() - ln_factorial(n)).exp())
            .sum();
        assert!((glauber_tail(4.0, 4) - direct).abs() < 1e-15);
        assert!(glauber_tail(4.0, 64) < 1e-14);
    }

    #[test]
    fn amplitude_policy() {
        assert!(check_amplitude(C64::from(2.0), 64).is_ok());
        assert!(matches!(
            check_amplitude(C64::from(2.0), 4),
            Err(Error::AmplitudeOutOfRange { .. })
        ));
    }

    #[test]
    fn recurrence_matches_direct_coefficients() {
        let alpha = C64::new(1.0, 1.0);
        for (n, c) in glauber_coefficients(alpha, 40).iter().enumerate() {
            assert!((c - glauber_direct(alpha, n)).norm() < 1e-15);
        }
    }

    #[test]
    fn zero_amplitude_is_ground_state() {
        let s = space(8);
        let v = glauber_component(&s, C64::from(0.0), 0, Family::Psi).unwrap();
        assert_eq!(&v.0, s.psi(0, 0));
    }

    #[test]
    fn closed_form_structure() {
        let s = space(16);
        let st = build_scs(&s, C64::new(0.5, -0.25), Family::Psi).unwrap();
        assert!(st.state.get(Monomial::XiStar).is_none());
        let half = st.state.get(Monomial::XiXiStar).unwrap();
        assert!((&half.0 * C64::from(2.0) - &st.xi_projection().0).norm() == 0.0);
        assert!(st.orbit_residual < 1e-10, "{}", st.orbit_residual);
    }

    #[test]
    fn fermionic_displacement_at_zero_amplitude() {
        // D(0,ξ)ψ(0,0) = e^{−½ξ*ξ}(ψ(0,0) − ξψ(0,1))
        let s = space(4);
        let d = displacement(&s, C64::from(0.0), Family::Psi).unwrap();
        let got = gmul(&d, &ground(&s, Family::Psi)).unwrap();
        let want = assemble(s.psi(0, 0).clone(), s.psi(0, 1).clone());
        assert!(got.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn eigenrelations_and_normalisation() {
        let s = space(64);
        for alpha in [C64::from(0.0), C64::new(1.0, 1.0), C64::from(2.0)] {
            let x = build_scs(&s, alpha, Family::Psi).unwrap();
            let y = build_scs(&s, alpha, Family::Phi).unwrap();
            for st in [&x, &y] {
                let (rb, rf) = eigen_residuals(&s, st).unwrap();
                assert!(rb < 1e-10 && rf < 1e-10, "{alpha}: {rb} {rf}");
            }
            let bn = bi_normalization(&x, &y).unwrap();
            assert!(distance_from_one(&bn) < 1e-8);
            assert!(distance_from_one(&same_family_overlap(&x)) > 1e-3);
        }
    }

    #[test]
    fn bi_normalization_rejects_mismatch() {
        let s = space(16);
        let x = build_scs(&s, C64::from(0.5), Family::Psi).unwrap();
        let y = build_scs(&s, C64::from(0.4), Family::Phi).unwrap();
        assert_eq!(bi_normalization(&x, &y), Err(Error::Mismatch));
    }

    #[test]
    fn pseudo_unitary_displacement() {
        let s = space(32);
        for family in [Family::Psi, Family::Phi] {
            let d = displacement(&s, C64::new(1.0, 1.0), family).unwrap();
            let (r1, r2) = pseudo_unitarity_residuals(&s, &d, family, 4).unwrap();
            assert!(r1 < 1e-10 && r2 < 1e-10, "{r1} {r2}");
        }
    }

    #[test]
    fn normal_ordered_factor_needs_guard_band() {
        let s = space(48);
        let alpha = C64::from(2.0);
        let d = displacement_with(&s, alpha, Family::Psi, BosonFactor::NormalOrdered).unwrap();
        let (tight, _) = pseudo_unitarity_residuals(&s, &d, Family::Psi, 4).unwrap();
        let (wide, _) = pseudo_unitarity_residuals(&s, &d, Family::Psi, 40).unwrap();
        assert!(wide < 1e-9, "{wide}");
        assert!(tight > wide);
    }

    #[test]
    fn hermitian_limit_matches_standard_scs() {
        let p = ModelParams::hermitian_limit(2.0, 0.5, 0.5).unwrap();
        let s = SuperSpace::build(&p, 0.0, 32).unwrap();
        let alpha = C64::new(0.7, -0.3);
        let x = build_scs(&s, alpha, Family::Psi).unwrap();
        let y = build_scs(&s, alpha, Family::Phi).unwrap();
        let std = standard_scs(&s, alpha);
        assert!(x.state.max_abs_diff(&std) < 1e-12);
        assert!(y.state.max_abs_diff(&std) < 1e-12);
    }

    #[test]
    fn cutoff_deficit() {
        // N = 1: only e^{−R²}
        assert!((radial_cutoff_deficit(2.0, 1) - (-4.0f64).exp()).abs() < 1e-16);
        assert!(radial_cutoff_deficit(6.0, 8) < 1e-8);
        assert!(radial_cutoff_deficit(6.0, 32) > 0.1);
    }

    #[test]
    fn small_identity_resolves() {
        let s = space(6);
        let quad = QuadratureSpec {
            radius: 8.0,
            n_radial: 60,
            n_angular: 32,
        };
        let rep = resolution_of_identity(&s, &quad).unwrap();
        assert!(rep.residual_cross < 1e-10, "{rep:?}");
        assert!(rep.residual_same > 0.01);
        let m = s.metric.eta_inv();
        let expected = (m - crate::su2::Matrix2::identity()).iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert!((rep.residual_same - expected).abs() < 1e-10);
    }

    #[test]
    fn pairwise_sum_order() {
        let items: Vec<DMatrix<C64>> = (0..5).map(|k| DMatrix::from_element(1, 1, C64::from(k as f64))).collect();
        assert_eq!(pairwise_sum(items).unwrap()[(0, 0)], C64::from(10.0));
        assert!(pairwise_sum(Vec::new()).is_none());
    }
}
