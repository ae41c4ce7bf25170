use nalgebra::{DMatrix, DVector};

use super::{crossing_sign, Coefficient, GradedMul, Monomial, Parity, PseudoAdjoint};
use crate::error::Result;
use crate::linalg::max_abs;
use crate::C64;

/// Operator on the truncated super-Fock space with its fermion parity.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOp {
    pub mat: DMatrix<C64>,
    pub parity: Parity,
}

impl FockOp {
    pub fn even(mat: DMatrix<C64>) -> Self {
        Self {
            mat,
            parity: Parity::Even,
        }
    }

    pub fn odd(mat: DMatrix<C64>) -> Self {
        Self {
            mat,
            parity: Parity::Odd,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::even(DMatrix::identity(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }
}

/// Ket on the truncated super-Fock space. Kets carry no grading of their own.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVec(pub DVector<C64>);

/// Metric pair `(η, η⁻¹)` for the operator pseudo-adjoint `η⁻¹O†η`.
#[derive(Debug, Clone)]
pub struct OpMetric {
    pub eta: DMatrix<C64>,
    pub eta_inv: DMatrix<C64>,
}

fn product_parity(a: Parity, b: Parity) -> Parity {
    match (a, b) {
        (Parity::Mixed, _) | (_, Parity::Mixed) => Parity::Mixed,
        (x, y) if x == y => Parity::Even,
        _ => Parity::Odd,
    }
}

impl Coefficient for C64 {
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
        self.norm()
    }
}

impl Coefficient for FockOp {
    fn parity(&self) -> Parity {
        self.parity
    }
    fn add(&self, rhs: &Self) -> Self {
        let parity = if self.parity == rhs.parity || max_abs(&rhs.mat) == 0.0 {
            self.parity
        } else if max_abs(&self.mat) == 0.0 {
            rhs.parity
        } else {
            Parity::Mixed
        };
        Self {
            mat: &self.mat + &rhs.mat,
            parity,
        }
    }
    fn neg(&self) -> Self {
        Self {
            mat: -&self.mat,
            parity: self.parity,
        }
    }
    fn max_abs(&self) -> f64 {
        max_abs(&self.mat)
    }
}

impl Coefficient for FockVec {
    fn parity(&self) -> Parity {
        Parity::Even
    }
    fn add(&self, rhs: &Self) -> Self {
        FockVec(&self.0 + &rhs.0)
    }
    fn neg(&self) -> Self {
        FockVec(-&self.0)
    }
    fn max_abs(&self) -> f64 {
        self.0.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }
}

// Operator-like right factors: (a·m)(b·n) = ± (ab)·(mn), sign from moving m past b.
impl GradedMul<C64> for C64 {
    type Output = C64;
    fn reorder_sign(&self, _: Monomial, _: &C64, _: Monomial) -> Result<bool> {
        Ok(false)
    }
    fn mul_coeff(&self, rhs: &C64) -> C64 {
        self * rhs
    }
}

impl GradedMul<FockOp> for C64 {
    type Output = FockOp;
    fn reorder_sign(&self, left: Monomial, rhs: &FockOp, _: Monomial) -> Result<bool> {
        crossing_sign(left.is_odd(), rhs.parity)
    }
    fn mul_coeff(&self, rhs: &FockOp) -> FockOp {
        FockOp {
            mat: &rhs.mat * *self,
            parity: rhs.parity,
        }
    }
}

impl GradedMul<C64> for FockOp {
    type Output = FockOp;
    fn reorder_sign(&self, _: Monomial, _: &C64, _: Monomial) -> Result<bool> {
        Ok(false)
    }
    fn mul_coeff(&self, rhs: &C64) -> FockOp {
        FockOp {
            mat: &self.mat * *rhs,
            parity: self.parity,
        }
    }
}

impl GradedMul<FockOp> for FockOp {
    type Output = FockOp;
    fn reorder_sign(&self, left: Monomial, rhs: &FockOp, _: Monomial) -> Result<bool> {
        crossing_sign(left.is_odd(), rhs.parity)
    }
    fn mul_coeff(&self, rhs: &FockOp) -> FockOp {
        FockOp {
            mat: &self.mat * &rhs.mat,
            parity: product_parity(self.parity, rhs.parity),
        }
    }
}

// Ket right factors: (a·m)(n·v) = ± (mn)·(a v), sign from moving mn past a.
impl GradedMul<FockVec> for C64 {
    type Output = FockVec;
    fn reorder_sign(&self, _: Monomial, _: &FockVec, _: Monomial) -> Result<bool> {
        Ok(false)
    }
    fn mul_coeff(&self, rhs: &FockVec) -> FockVec {
        FockVec(&rhs.0 * *self)
    }
}

impl GradedMul<FockVec> for FockOp {
    type Output = FockVec;
    fn reorder_sign(&self, left: Monomial, _: &FockVec, right: Monomial) -> Result<bool> {
        crossing_sign(left.is_odd() ^ right.is_odd(), self.parity)
    }
    fn mul_coeff(&self, rhs: &FockVec) -> FockVec {
        FockVec(&self.mat * &rhs.0)
    }
}

impl PseudoAdjoint for C64 {
    type Metric = ();
    fn pseudo_adjoint(&self, _: &()) -> Self {
        self.conj()
    }
}

impl PseudoAdjoint for FockOp {
    type Metric = OpMetric;
    fn pseudo_adjoint(&self, metric: &OpMetric) -> Self {
        Self {
            mat: &metric.eta_inv * self.mat.adjoint() * &metric.eta,
            parity: self.parity,
        }
    }
}
