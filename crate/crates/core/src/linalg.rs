//! Small dense helpers shared by the 2×2 and Fock-space layers.

use nalgebra::{DMatrix, DVector};

use crate::su2::Matrix2;
use crate::C64;

pub fn max_abs_diff2(a: &Matrix2, b: &Matrix2) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_abs2(a: &Matrix2) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn commutator2(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    a * b - b * a
}

pub fn anticommutator2(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    a * b + b * a
}

/// Eigenvalues of a general complex 2×2 matrix from the characteristic
/// polynomial, ordered by descending real part.
pub fn eig2(m: &Matrix2) -> (C64, C64) {
    let half_tr = (m[(0, 0)] + m[(1, 1)]) * 0.5;
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let disc = (half_tr * half_tr - det).sqrt();
    let (a, b) = (half_tr + disc, half_tr - disc);
    if a.re >= b.re {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn max_abs(a: &DMatrix<C64>) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_abs_diff_vec(a: &DVector<C64>, b: &DVector<C64>) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Kronecker product `a ⊗ b`; the `b` index runs fastest.
pub fn kron(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    DMatrix::from_fn(ar * br, ac * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

pub fn to_dmatrix(m: &Matrix2) -> DMatrix<C64> {
    DMatrix::from_fn(2, 2, |i, j| m[(i, j)])
}

/// Eigenvalues of a Hermitian matrix, ascending. The input is symmetrised
/// before the solve; callers check Hermiticity separately.
pub fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    let sym = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let mut ev: Vec<f64> = nalgebra::SymmetricEigen::new(sym)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Groups sorted values into clusters whose members lie within `tol` of the
/// cluster's first element. Returns `(representative, multiplicity)`.
pub fn cluster_levels(sorted: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &v in sorted {
        match out.last_mut() {
            Some((rep, count)) if (v - *rep).abs() <= tol => *count += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}
