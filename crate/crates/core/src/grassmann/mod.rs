//! Graded algebra over two Grassmann generators `ξ, ξ*`.
//!
//! An element is a linear combination over the ordered monomial basis
//! `{1, ξ, ξ*, ξξ*}` with coefficients in a Fock-space type. Two storage
//! conventions are used, chosen so that the module action is associative
//! without assigning a grading to kets:
//!
//! * scalar and operator coefficients sit to the LEFT of their monomial,
//!   `Σ c_m · m`;
//! * ket coefficients sit to the RIGHT of their monomial, `Σ m · |v_m⟩`,
//!   which is the usual way a Grassmann-valued state is written.
//!
//! Reordering an odd monomial past an odd operator costs a sign; kets never
//! cross a Grassmann generator. `ξ*ξ` is always normalised to `−ξξ*`.

mod coeff;
pub mod exact;

pub use coeff::{FockOp, FockVec, OpMetric};

use crate::error::{Error, Result};

/// Basis monomials in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Monomial {
    One,
    Xi,
    XiStar,
    /// `ξξ*`
    XiXiStar,
}

impl Monomial {
    pub const ALL: [Monomial; 4] = [
        Monomial::One,
        Monomial::Xi,
        Monomial::XiStar,
        Monomial::XiXiStar,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Monomial::Xi | Monomial::XiStar)
    }

    pub fn parity(self) -> Parity {
        if self.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// Product of two monomials as `(negate, monomial)`, or `None` if it
    /// vanishes.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: Monomial) -> Option<(bool, Monomial)> {
        use Monomial::*;
        match (self, rhs) {
            (One, m) | (m, One) => Some((false, m)),
            (Xi, XiStar) => Some((false, XiXiStar)),
            (XiStar, Xi) => Some((true, XiXiStar)),
            _ => None,
        }
    }

    /// Complex conjugation with order reversal: `ξ ↔ ξ*`, and
    /// `(ξξ*)* = (ξ*)*ξ* = ξξ*`.
    pub fn conj(self) -> Monomial {
        match self {
            Monomial::Xi => Monomial::XiStar,
            Monomial::XiStar => Monomial::Xi,
            m => m,
        }
    }
}

/// A single Grassmann generator, for building elements from words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Xi,
    XiStar,
}

/// Canonicalises a word in the generators, e.g. `[XiStar, Xi]` gives
/// `(true, ξξ*)`. Returns `None` when the word vanishes.
pub fn canonical_word(word: &[Generator]) -> Option<(bool, Monomial)> {
    word.iter().try_fold((false, Monomial::One), |(neg, acc), g| {
        let m = match g {
            Generator::Xi => Monomial::Xi,
            Generator::XiStar => Monomial::XiStar,
        };
        acc.mul(m).map(|(n, out)| (neg ^ n, out))
    })
}

/// Fermion parity of a coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// Whether moving a monomial of the given oddness past something of parity
/// `p` flips the sign.
pub(crate) fn crossing_sign(monomial_odd: bool, p: Parity) -> Result<bool> {
    if !monomial_odd {
        return Ok(false);
    }
    match p {
        Parity::Even => Ok(false),
        Parity::Odd => Ok(true),
        Parity::Mixed => Err(Error::MixedParity),
    }
}

/// Coefficient types of a Grassmann element.
pub trait Coefficient: Clone {
    fn parity(&self) -> Parity;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Largest entry magnitude, used for residuals.
    fn max_abs(&self) -> f64;
}

/// Graded product of coefficients together with the Koszul sign needed to
/// bring `(lhs·m)(rhs·n)` to canonical storage form.
pub trait GradedMul<Rhs: Coefficient>: Coefficient {
    type Output: Coefficient;

    fn reorder_sign(&self, left: Monomial, rhs: &Rhs, right: Monomial) -> Result<bool>;

    fn mul_coeff(&self, rhs: &Rhs) -> Self::Output;
}

/// Coefficient-wise pseudo-adjoint `c ↦ η⁻¹ c† η` (plain conjugation for
/// scalars).
pub trait PseudoAdjoint: Coefficient {
    type Metric;

    fn pseudo_adjoint(&self, metric: &Self::Metric) -> Self;
}

/// Element of the graded algebra with coefficients in `T`. A missing
/// coefficient is the exact zero.
#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannElement<T> {
    coeffs: [Option<T>; 4],
}

impl<T> Default for GrassmannElement<T> {
    fn default() -> Self {
        Self {
            coeffs: [None, None, None, None],
        }
    }
}

impl<T: Coefficient> GrassmannElement<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial, c: T) -> Self {
        let mut out = Self::zero();
        out.coeffs[m.index()] = Some(c);
        out
    }

    /// `c · 1`.
    pub fn scalar(c: T) -> Self {
        Self::monomial(Monomial::One, c)
    }

    /// Builds `c` times a word in the generators, canonicalised.
    pub fn from_word(word: &[Generator], c: T) -> Self {
        match canonical_word(word) {
            Some((neg, m)) => Self::monomial(m, if neg { c.neg() } else { c }),
            None => Self::zero(),
        }
    }

    pub fn get(&self, m: Monomial) -> Option<&T> {
        self.coeffs[m.index()].as_ref()
    }

    pub fn set(&mut self, m: Monomial, c: Option<T>) {
        self.coeffs[m.index()] = c;
    }

    pub fn with(mut self, m: Monomial, c: T) -> Self {
        self.add_at(m, c);
        self
    }

    pub fn components(&self) -> impl Iterator<Item = (Monomial, &T)> {
        Monomial::ALL
            .into_iter()
            .filter_map(|m| self.get(m).map(|c| (m, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Option::is_none)
    }

    fn add_at(&mut self, m: Monomial, c: T) {
        let slot = &mut self.coeffs[m.index()];
        *slot = Some(match slot.take() {
            Some(prev) => prev.add(&c),
            None => c,
        });
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in rhs.components() {
            out.add_at(m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.clone().map(|c| c.map(|c| c.neg())),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Value at `ξ = ξ* = 0`.
    pub fn body(&self) -> Option<&T> {
        self.get(Monomial::One)
    }

    /// Largest coefficient entry over all monomials.
    pub fn max_abs(&self) -> f64 {
        self.components().map(|(_, c)| c.max_abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        self.sub(rhs).max_abs()
    }

    /// True when every coefficient has the parity of its monomial.
    pub fn is_even(&self) -> bool {
        self.components().all(|(m, c)| {
            let p = c.parity();
            p == m.parity() || c.max_abs() == 0.0
        })
    }
}

/// Graded product `x·y`.
pub fn gmul<T, U>(x: &GrassmannElement<T>, y: &GrassmannElement<U>) -> Result<GrassmannElement<T::Output>>
where
    T: GradedMul<U>,
    U: Coefficient,
{
    let mut out = GrassmannElement::zero();
    for (m, a) in x.components() {
        for (n, b) in y.components() {
            let Some((neg_mono, mn)) = m.mul(n) else { continue };
            let neg = neg_mono ^ a.reorder_sign(m, b, n)?;
            let prod = a.mul_coeff(b);
            out.add_at(mn, if neg { prod.neg() } else { prod });
        }
    }
    Ok(out)
}

/// Berezin integral `∫dξ*dξ (·)` with `∫dξ*dξ ξξ* = 1`: the `ξξ*`
/// coefficient. `None` is the exact zero.
pub fn berezin<T: Coefficient>(x: &GrassmannElement<T>) -> Option<T> {
    x.get(Monomial::XiXiStar).cloned()
}

/// Pseudo-adjoint of an element with left-stored coefficients:
/// `(c·m)^# = m*·c^# = ± c^#·m*`, reversing the order of all odd factors.
pub fn pseudo_adjoint<T: PseudoAdjoint>(x: &GrassmannElement<T>, metric: &T::Metric) -> Result<GrassmannElement<T>> {
    let mut out = GrassmannElement::zero();
    for (m, c) in x.components() {
        let adj = c.pseudo_adjoint(metric);
        let neg = crossing_sign(m.is_odd(), adj.parity())?;
        out.add_at(m.conj(), if neg { adj.neg() } else { adj });
    }
    Ok(out)
}

/// Conjugate of a scalar element (the pseudo-adjoint with trivial metric).
pub fn conj_scalar(x: &GrassmannElement<crate::C64>) -> GrassmannElement<crate::C64> {
    pseudo_adjoint(x, &()).expect("scalars are even")
}

/// Relative size of `[A, C]` below which the body of an exponent is taken to
/// commute with its nilpotent part.
const COMMUTE_TOL: f64 = 1e-14;

/// Exponential of an even operator-valued element.
///
/// With `x = A·1 + N`, where `N` collects the Grassmann directions,
/// `N³ = 0`. When `A` commutes with `N` the result is
/// `exp(A)·(1 + N + N²/2)`, exact in the Grassmann directions. Otherwise the
/// series is summed in the graded algebra with scaling and squaring.
pub fn gexp_even(x: &GrassmannElement<FockOp>, dim: usize) -> Result<GrassmannElement<FockOp>> {
    if !x.is_even() {
        return Err(Error::NotEven);
    }
    let identity = GrassmannElement::scalar(FockOp::identity(dim));
    let body = x.body().map(|a| a.mat.clone());
    let mut nil = x.clone();
    nil.set(Monomial::One, None);

    let exp_body = match &body {
        Some(a) => FockOp::even(a.clone().exp()),
        None => FockOp::identity(dim),
    };
    if nil.is_zero() {
        return Ok(GrassmannElement::scalar(exp_body));
    }

    if body.is_none() {
        let n2 = gmul(&nil, &nil)?;
        return Ok(identity.add(&nil).add(&scale_op(&n2, crate::C64::new(0.5, 0.0))));
    }

    let commutes = match &body {
        None => true,
        Some(a) => {
            let scale_a = crate::linalg::max_abs(a);
            nil.components().all(|(_, c)| {
                let comm = a * &c.mat - &c.mat * a;
                let scale = (1.0 + scale_a) * (1.0 + c.max_abs()) * dim as f64;
                crate::linalg::max_abs(&comm) <= COMMUTE_TOL * scale
            })
        }
    };

    if commutes {
        let n2 = gmul(&nil, &nil)?;
        let half = crate::C64::new(0.5, 0.0);
        let series = identity.add(&nil).add(&scale_op(&n2, half));
        return gmul(&GrassmannElement::scalar(exp_body), &series);
    }

    // General case: Taylor series of x/2^s, then s squarings.
    let norm: f64 = x
        .components()
        .map(|(_, c)| c.mat.iter().map(|v| v.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let y = scale_op(x, crate::C64::new(0.5f64.powi(squarings as i32), 0.0));
    let mut term = identity.clone();
    let mut sum = identity;
    for k in 1..=20u32 {
        term = scale_op(&gmul(&term, &y)?, crate::C64::new(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
    }
    for _ in 0..squarings {
        sum = gmul(&sum, &sum)?;
    }
    Ok(sum)
}

/// Multiplies every coefficient by a complex scalar.
pub fn scale_op(x: &GrassmannElement<FockOp>, c: crate::C64) -> GrassmannElement<FockOp> {
    let mut out = GrassmannElement::zero();
    for (m, op) in x.components() {
        out.set(
            m,
            Some(FockOp {
                mat: &op.mat * c,
                parity: op.parity,
            }),
        );
    }
    out
}

/// Multiplies every ket coefficient by a complex scalar.
pub fn scale_ket(x: &GrassmannElement<FockVec>, c: crate::C64) -> GrassmannElement<FockVec> {
    let mut out = GrassmannElement::zero();
    for (m, v) in x.components() {
        out.set(m, Some(FockVec(&v.0 * c)));
    }
    out
}

#[cfg(test)]
mod tests;
