//! Exact rational coefficients for the sign-bookkeeping checks.
//!
//! The fixture uses the integer metric `ρ = [[2,1],[1,1]]` (det 1), so that
//! `B = ρ⁻¹J₋ρ`, `B# = ρ⁻¹J₊ρ` and `η = ρ²` all have integer entries and
//! every graded identity can be compared with `==`.

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use super::{crossing_sign, Coefficient, GradedMul, Monomial, Parity, PseudoAdjoint};
use crate::error::Result;

pub type Rational = Ratio<i64>;
pub type ExactComplex = Complex<Rational>;

pub fn rational(n: i64) -> Rational {
    Ratio::from_integer(n)
}

pub fn exact(re: i64, im: i64) -> ExactComplex {
    Complex::new(rational(re), rational(im))
}

fn magnitude(c: &ExactComplex) -> f64 {
    let re = c.re.to_f64().unwrap_or(f64::NAN);
    let im = c.im.to_f64().unwrap_or(f64::NAN);
    re.hypot(im)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix2(pub [[ExactComplex; 2]; 2]);

impl ExactMatrix2 {
    pub fn from_ints(m: [[i64; 2]; 2]) -> Self {
        Self(m.map(|row| row.map(|v| exact(v, 0))))
    }

    pub fn zero() -> Self {
        Self::from_ints([[0, 0], [0, 0]])
    }

    pub fn identity() -> Self {
        Self::from_ints([[1, 0], [0, 1]])
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let a = &self.0;
        let b = &rhs.0;
        let entry = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        Self([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let entry = |i: usize, j: usize| self.0[i][j] + rhs.0[i][j];
        Self([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
    }

    pub fn neg(&self) -> Self {
        Self(self.0.map(|row| row.map(|v| -v)))
    }

    pub fn scale(&self, c: &ExactComplex) -> Self {
        Self(self.0.map(|row| row.map(|v| v * c)))
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(magnitude).fold(0.0, f64::max)
    }
}

/// Exact operator with fermion parity.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactOp {
    pub mat: ExactMatrix2,
    pub parity: Parity,
}

impl ExactOp {
    pub fn even(mat: ExactMatrix2) -> Self {
        Self {
            mat,
            parity: Parity::Even,
        }
    }

    pub fn odd(mat: ExactMatrix2) -> Self {
        Self {
            mat,
            parity: Parity::Odd,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExactMetric {
    pub eta: ExactMatrix2,
    pub eta_inv: ExactMatrix2,
}

/// Integer fixture for the phermion pair.
#[derive(Debug, Clone)]
pub struct ExactFixture {
    pub rho: ExactMatrix2,
    pub rho_inv: ExactMatrix2,
    pub metric: ExactMetric,
    /// `ρ⁻¹J₋ρ`
    pub lower: ExactOp,
    /// `ρ⁻¹J₊ρ`
    pub raise: ExactOp,
}

impl ExactFixture {
    pub fn new() -> Self {
        let rho = ExactMatrix2::from_ints([[2, 1], [1, 1]]);
        let rho_inv = ExactMatrix2::from_ints([[1, -1], [-1, 2]]);
        let jm = ExactMatrix2::from_ints([[0, 0], [1, 0]]);
        let jp = ExactMatrix2::from_ints([[0, 1], [0, 0]]);
        let metric = ExactMetric {
            eta: rho.mul(&rho),
            eta_inv: rho_inv.mul(&rho_inv),
        };
        Self {
            lower: ExactOp::odd(rho_inv.mul(&jm).mul(&rho)),
            raise: ExactOp::odd(rho_inv.mul(&jp).mul(&rho)),
            rho,
            rho_inv,
            metric,
        }
    }
}

impl Default for ExactFixture {
    fn default() -> Self {
        Self::new()
    }
}

impl Coefficient for ExactComplex {
    fn parity(&self) -> Parity {
        Parity::Even
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn max_abs(&self) -> f64 {
        magnitude(self)
    }
}

impl Coefficient for ExactOp {
    fn parity(&self) -> Parity {
        self.parity
    }
    fn add(&self, rhs: &Self) -> Self {
        let parity = if self.parity == rhs.parity || rhs.mat.is_zero() {
            self.parity
        } else if self.mat.is_zero() {
            rhs.parity
        } else {
            Parity::Mixed
        };
        Self {
            mat: self.mat.add(&rhs.mat),
            parity,
        }
    }
    fn neg(&self) -> Self {
        Self {
            mat: self.mat.neg(),
            parity: self.parity,
        }
    }
    fn max_abs(&self) -> f64 {
        self.mat.max_abs()
    }
}

fn product_parity(a: Parity, b: Parity) -> Parity {
    match (a, b) {
        (Parity::Mixed, _) | (_, Parity::Mixed) => Parity::Mixed,
        (x, y) if x == y => Parity::Even,
        _ => Parity::Odd,
    }
}

impl GradedMul<ExactComplex> for ExactComplex {
    type Output = ExactComplex;
    fn reorder_sign(&self, _: Monomial, _: &ExactComplex, _: Monomial) -> Result<bool> {
        Ok(false)
    }
    fn mul_coeff(&self, rhs: &ExactComplex) -> ExactComplex {
        self * rhs
    }
}

impl GradedMul<ExactOp> for ExactComplex {
    type Output = ExactOp;
    fn reorder_sign(&self, left: Monomial, rhs: &ExactOp, _: Monomial) -> Result<bool> {
        crossing_sign(left.is_odd(), rhs.parity)
    }
    fn mul_coeff(&self, rhs: &ExactOp) -> ExactOp {
        ExactOp {
            mat: rhs.mat.scale(self),
            parity: rhs.parity,
        }
    }
}

impl GradedMul<ExactComplex> for ExactOp {
    type Output = ExactOp;
    fn reorder_sign(&self, _: Monomial, _: &ExactComplex, _: Monomial) -> Result<bool> {
        Ok(false)
    }
    fn mul_coeff(&self, rhs: &ExactComplex) -> ExactOp {
        ExactOp {
            mat: self.mat.scale(rhs),
            parity: self.parity,
        }
    }
}

impl GradedMul<ExactOp> for ExactOp {
    type Output = ExactOp;
    fn reorder_sign(&self, left: Monomial, rhs: &ExactOp, _: Monomial) -> Result<bool> {
        crossing_sign(left.is_odd(), rhs.parity)
    }
    fn mul_coeff(&self, rhs: &ExactOp) -> ExactOp {
        ExactOp {
            mat: self.mat.mul(&rhs.mat),
            parity: product_parity(self.parity, rhs.parity),
        }
    }
}

impl PseudoAdjoint for ExactComplex {
    type Metric = ();
    fn pseudo_adjoint(&self, _: &()) -> Self {
        self.conj()
    }
}

impl PseudoAdjoint for ExactOp {
    type Metric = ExactMetric;
    fn pseudo_adjoint(&self, metric: &ExactMetric) -> Self {
        Self {
            mat: metric.eta_inv.mul(&self.mat.adjoint()).mul(&metric.eta),
            parity: self.parity,
        }
    }
}

pub fn exact_one() -> ExactComplex {
    Complex::new(Rational::one(), Rational::zero())
}
