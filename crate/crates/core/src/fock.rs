//! Truncated boson ⊗ phermion Fock space.
//!
//! States are indexed `2n + s`, boson level `n < N`, spin row `s`. Two-level
//! operators are lifted as `1 ⊗ X` and boson operators as `A ⊗ 1`; the
//! boson factor is even, so the plain tensor product is the graded one.
//! The truncated creation operator satisfies `a†|N−1⟩ = 0`.

use nalgebra::{DMatrix, DVector, Vector2};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grassmann::{FockOp, OpMetric};
use crate::linalg::{hermitian_eigenvalues, kron, max_abs_diff, max_abs_diff_vec, to_dmatrix};
use crate::phermion::{build_b, build_dual, build_phermion, occupation_basis, LadderPair};
use crate::su2::{build_rho, omega_cap, Matrix2, MetricData, ModelParams};
use crate::{C64, ROUTE_TOL};

/// Largest accepted boson truncation.
pub const MAX_BOSON_LEVELS: usize = 512;

/// Label `(n, ε)` of a basis state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SuperBasisIndex {
    pub n: usize,
    pub eps: usize,
}

impl SuperBasisIndex {
    pub fn new(n: usize, eps: usize) -> Self {
        debug_assert!(eps < 2);
        Self { n, eps }
    }

    pub fn flat(self) -> usize {
        2 * self.n + self.eps
    }

    pub fn from_flat(i: usize) -> Self {
        Self { n: i / 2, eps: i % 2 }
    }
}

/// Boson annihilator on `N` levels.
pub fn boson_lowering(n_max: usize) -> DMatrix<C64> {
    DMatrix::from_fn(n_max, n_max, |i, j| {
        if j == i + 1 {
            C64::from((j as f64).sqrt())
        } else {
            C64::from(0.0)
        }
    })
}

#[derive(Debug, Clone)]
pub struct SuperSpace {
    pub params: ModelParams,
    pub z: f64,
    pub n_max: usize,
    pub omega_cap: f64,
    pub metric: MetricData,
    pub fermion: LadderPair,
    pub phermion: LadderPair,
    pub dual: LadderPair,
    /// Occupation basis `(f₀, f₁)` of `b, b†`.
    pub occupation: (Vector2<C64>, Vector2<C64>),

    pub a: DMatrix<C64>,
    pub a_dag: DMatrix<C64>,
    pub b: DMatrix<C64>,
    pub b_dag: DMatrix<C64>,
    pub big_b: DMatrix<C64>,
    pub big_b_sharp: DMatrix<C64>,
    pub b_tilde: DMatrix<C64>,
    pub b_dag_dual: DMatrix<C64>,
    /// `Ω(a†a ⊗ 1 + 1 ⊗ B#B)`
    pub h_s: DMatrix<C64>,
    /// `Ω(a†a + b†b)`
    pub h_s_herm: DMatrix<C64>,
    pub q: DMatrix<C64>,
    pub q_sharp: DMatrix<C64>,
    pub rho_s: DMatrix<C64>,
    pub rho_s_inv: DMatrix<C64>,
    pub eta_s: DMatrix<C64>,
    pub eta_s_inv: DMatrix<C64>,

    psi: Vec<DVector<C64>>,
    phi: Vec<DVector<C64>>,
}

impl SuperSpace {
    pub fn build(p: &ModelParams, z: f64, n_max: usize) -> Result<Self> {
        if !(2..=MAX_BOSON_LEVELS).contains(&n_max) {
            return Err(Error::Dimension(n_max));
        }
        let metric = build_rho(p, z)?;
        let fermion = build_b(p, z)?;
        let phermion = build_phermion(p, z)?;
        let dual = build_dual(p, z)?;
        let occupation = occupation_basis(&fermion);
        let om = omega_cap(p);

        let id_b = DMatrix::<C64>::identity(n_max, n_max);
        let id_f = DMatrix::<C64>::identity(2, 2);
        let lift_f = |m: &Matrix2| kron(&id_b, &to_dmatrix(m));
        let lift_b = |m: &DMatrix<C64>| kron(m, &id_f);

        let a_small = boson_lowering(n_max);
        let a = lift_b(&a_small);
        let a_dag = lift_b(&a_small.adjoint());
        let big_b = lift_f(&phermion.lower);
        let big_b_sharp = lift_f(&phermion.raise);
        let number_b = lift_b(&(a_small.adjoint() * &a_small));

        let h_s = (&number_b + lift_f(&phermion.number())) * C64::from(om);
        let h_s_herm = (&number_b + lift_f(&fermion.number())) * C64::from(om);
        let root = C64::from((2.0 * om).sqrt());
        let q = &a_dag * &big_b * root;
        let q_sharp = &a * &big_b_sharp * root;

        let rho_s = lift_f(&metric.rho);
        let rho_s_inv = lift_f(&metric.rho_inv);
        let similar = &rho_s * &h_s * &rho_s_inv;
        let residual = max_abs_diff(&similar, &h_s_herm);
        if !(residual <= ROUTE_TOL * (1.0 + om * n_max as f64)) {
            return Err(Error::Consistency {
                what: "rho_s H_s rho_s^-1 vs Omega(a^dag a + b^dag b)",
                residual,
                tolerance: ROUTE_TOL,
            });
        }

        let (f0, f1) = occupation;
        let fvec = [f0, f1];
        let mut psi = Vec::with_capacity(2 * n_max);
        let mut phi = Vec::with_capacity(2 * n_max);
        for i in 0..2 * n_max {
            let idx = SuperBasisIndex::from_flat(i);
            let f = &fvec[idx.eps];
            let (fp, ff) = (metric.rho_inv * f, metric.rho * f);
            let mut v_psi = DVector::zeros(2 * n_max);
            let mut v_phi = DVector::zeros(2 * n_max);
            for s in 0..2 {
                v_psi[2 * idx.n + s] = fp[s];
                v_phi[2 * idx.n + s] = ff[s];
            }
            psi.push(v_psi);
            phi.push(v_phi);
        }

        Ok(Self {
            params: *p,
            z,
            n_max,
            omega_cap: om,
            a,
            a_dag,
            b: lift_f(&fermion.lower),
            b_dag: lift_f(&fermion.raise),
            big_b,
            big_b_sharp,
            b_tilde: lift_f(&dual.lower),
            b_dag_dual: lift_f(&dual.raise),
            h_s,
            h_s_herm,
            q,
            q_sharp,
            eta_s: lift_f(&metric.eta()),
            eta_s_inv: lift_f(&metric.eta_inv()),
            rho_s,
            rho_s_inv,
            metric,
            fermion,
            phermion,
            dual,
            occupation,
            psi,
            phi,
        })
    }

    pub fn dim(&self) -> usize {
        2 * self.n_max
    }

    /// `ψ(n,ε) = (1⊗ρ⁻¹)|n,ε⟩`.
    pub fn psi(&self, n: usize, eps: usize) -> &DVector<C64> {
        &self.psi[SuperBasisIndex::new(n, eps).flat()]
    }

    /// `φ(n,ε) = (1⊗ρ)|n,ε⟩`.
    pub fn phi(&self, n: usize, eps: usize) -> &DVector<C64> {
        &self.phi[SuperBasisIndex::new(n, eps).flat()]
    }

    /// Metric for the operator pseudo-adjoint on the ψ-family side.
    pub fn psi_metric(&self) -> OpMetric {
        OpMetric {
            eta: self.eta_s.clone(),
            eta_inv: self.eta_s_inv.clone(),
        }
    }

    /// Metric on the φ-family side (`η⁻¹` and `η` swap roles).
    pub fn phi_metric(&self) -> OpMetric {
        OpMetric {
            eta: self.eta_s_inv.clone(),
            eta_inv: self.eta_s.clone(),
        }
    }

    pub fn op_even(&self, m: &DMatrix<C64>) -> FockOp {
        FockOp::even(m.clone())
    }

    /// Ascending eigenvalues of `h_s`, which shares the spectrum of `H_s`.
    pub fn spectrum(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.h_s_herm)
    }

    /// Expected multiplicity of level `Ωk` in the truncated space.
    pub fn expected_multiplicity(&self, k: usize) -> usize {
        match k {
            0 => 1,
            k if k < self.n_max => 2,
            k if k == self.n_max => 1,
            _ => 0,
        }
    }

    /// Projector onto boson levels `n < limit`.
    pub fn boson_projector(&self, limit: usize) -> DMatrix<C64> {
        DMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            if i == j && i / 2 < limit {
                C64::from(1.0)
            } else {
                C64::from(0.0)
            }
        })
    }
}

/// The two dual families `(ψ, φ)`, ordered by flat index.
pub fn bi_basis(s: &SuperSpace) -> (&[DVector<C64>], &[DVector<C64>]) {
    (&s.psi, &s.phi)
}

/// `max |⟨φ_i|ψ_j⟩ − δ_ij|`.
pub fn biorthonormality_residual(s: &SuperSpace) -> f64 {
    let (psi, phi) = bi_basis(s);
    let mut worst: f64 = 0.0;
    for (i, f) in phi.iter().enumerate() {
        for (j, p) in psi.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((f.dotc(p) - C64::from(target)).norm());
        }
    }
    worst
}

/// Residuals of `Σ|ψ⟩⟨φ| = 1` and `Σ|φ⟩⟨ψ| = 1`.
pub fn completeness_residuals(s: &SuperSpace) -> (f64, f64) {
    let (psi, phi) = bi_basis(s);
    let dim = s.dim();
    let mut pf = DMatrix::<C64>::zeros(dim, dim);
    let mut fp = DMatrix::<C64>::zeros(dim, dim);
    for (p, f) in psi.iter().zip(phi) {
        pf += p * f.adjoint();
        fp += f * p.adjoint();
    }
    let id = DMatrix::identity(dim, dim);
    (max_abs_diff(&pf, &id), max_abs_diff(&fp, &id))
}

/// Residuals of `H_s ψ = Ω(n+ε)ψ` and `H_s† φ = Ω(n+ε)φ`.
pub fn eigen_residuals(s: &SuperSpace) -> (f64, f64) {
    let h_adj = s.h_s.adjoint();
    let mut rp: f64 = 0.0;
    let mut rf: f64 = 0.0;
    for i in 0..s.dim() {
        let idx = SuperBasisIndex::from_flat(i);
        let e = C64::from(s.omega_cap * (idx.n + idx.eps) as f64);
        let p = s.psi(idx.n, idx.eps);
        let f = s.phi(idx.n, idx.eps);
        rp = rp.max(max_abs_diff_vec(&(&s.h_s * p), &(p * e)));
        rf = rf.max(max_abs_diff_vec(&(&h_adj * f), &(f * e)));
    }
    (rp, rf)
}

/// Result of one ladder relation over the basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationResidual {
    pub relation: &'static str,
    pub residual: f64,
    /// Why the relation was checked only on part of the basis.
    pub range: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderReport {
    pub relations: Vec<RelationResidual>,
}

impl LadderReport {
    pub fn max_residual(&self) -> f64 {
        self.relations.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    pub fn get(&self, relation: &str) -> Option<&RelationResidual> {
        self.relations.iter().find(|r| r.relation == relation)
    }
}

/// Applies every displayed ladder action to the basis families and records
/// the worst residual per relation.
pub fn check_ladder_actions(s: &SuperSpace) -> LadderReport {
    let n = s.n_max;
    let om = s.omega_cap;
    let zero = DVector::<C64>::zeros(s.dim());
    let below_top = Some(format!("n <= {} (a^dag truncated at top level)", n - 2));
    let mut relations = Vec::new();

    let mut push = |relation: &'static str, range: Option<String>, pairs: Vec<(DVector<C64>, DVector<C64>)>| {
        let residual = pairs
            .iter()
            .map(|(got, want)| max_abs_diff_vec(got, want))
            .fold(0.0, f64::max);
        relations.push(RelationResidual {
            relation,
            residual,
            range,
        });
    };

    let sq = |k: usize| C64::from((k as f64).sqrt());
    let levels = || (0..n).flat_map(|k| [(k, 0), (k, 1)]);

    push(
        "a psi(n,e) = sqrt(n) psi(n-1,e)",
        None,
        levels()
            .map(|(k, e)| {
                let want = if k == 0 {
                    zero.clone()
                } else {
                    s.psi(k - 1, e) * sq(k)
                };
                (&s.a * s.psi(k, e), want)
            })
            .collect(),
    );
    push(
        "a^dag psi(n,e) = sqrt(n+1) psi(n+1,e)",
        below_top.clone(),
        levels()
            .filter(|&(k, _)| k + 1 < n)
            .map(|(k, e)| (&s.a_dag * s.psi(k, e), s.psi(k + 1, e) * sq(k + 1)))
            .collect(),
    );
    push(
        "B psi(n,0) = 0",
        None,
        (0..n).map(|k| (&s.big_b * s.psi(k, 0), zero.clone())).collect(),
    );
    push(
        "B psi(n,1) = psi(n,0)",
        None,
        (0..n).map(|k| (&s.big_b * s.psi(k, 1), s.psi(k, 0).clone())).collect(),
    );
    push(
        "B# psi(n,1) = 0",
        None,
        (0..n).map(|k| (&s.big_b_sharp * s.psi(k, 1), zero.clone())).collect(),
    );
    push(
        "B# psi(n,0) = psi(n,1)",
        None,
        (0..n).map(|k| (&s.big_b_sharp * s.psi(k, 0), s.psi(k, 1).clone())).collect(),
    );
    push(
        "Q psi(n,1) = sqrt(2 Omega(n+1)) psi(n+1,0)",
        below_top.clone(),
        (0..n - 1)
            .map(|k| {
                let amp = C64::from((2.0 * om * (k + 1) as f64).sqrt());
                (&s.q * s.psi(k, 1), s.psi(k + 1, 0) * amp)
            })
            .collect(),
    );
    push(
        "Q psi(n,0) = 0",
        None,
        (0..n).map(|k| (&s.q * s.psi(k, 0), zero.clone())).collect(),
    );
    push(
        "Q# psi(n,0) = sqrt(2 Omega n) psi(n-1,1)",
        None,
        (0..n)
            .map(|k| {
                let want = if k == 0 {
                    zero.clone()
                } else {
                    s.psi(k - 1, 1) * C64::from((2.0 * om * k as f64).sqrt())
                };
                (&s.q_sharp * s.psi(k, 0), want)
            })
            .collect(),
    );
    push(
        "Q# psi(n,1) = 0",
        None,
        (0..n).map(|k| (&s.q_sharp * s.psi(k, 1), zero.clone())).collect(),
    );
    push(
        "Btilde phi(n,0) = 0",
        None,
        (0..n).map(|k| (&s.b_tilde * s.phi(k, 0), zero.clone())).collect(),
    );
    push(
        "Btilde phi(n,1) = phi(n,0)",
        None,
        (0..n).map(|k| (&s.b_tilde * s.phi(k, 1), s.phi(k, 0).clone())).collect(),
    );
    push(
        "Bdag phi(n,1) = 0",
        None,
        (0..n).map(|k| (&s.b_dag_dual * s.phi(k, 1), zero.clone())).collect(),
    );
    push(
        "Bdag phi(n,0) = phi(n,1)",
        None,
        (0..n).map(|k| (&s.b_dag_dual * s.phi(k, 0), s.phi(k, 1).clone())).collect(),
    );
    push(
        "a phi(n,e) = sqrt(n) phi(n-1,e)",
        None,
        levels()
            .map(|(k, e)| {
                let want = if k == 0 {
                    zero.clone()
                } else {
                    s.phi(k - 1, e) * sq(k)
                };
                (&s.a * s.phi(k, e), want)
            })
            .collect(),
    );
    let g = s.psi(0, 0);
    push(
        "ground: a psi(0,0) = B psi(0,0) = Q psi(0,0) = Q# psi(0,0) = 0",
        None,
        vec![
            (&s.a * g, zero.clone()),
            (&s.big_b * g, zero.clone()),
            (&s.q * g, zero.clone()),
            (&s.q_sharp * g, zero.clone()),
        ],
    );

    LadderReport { relations }
}
