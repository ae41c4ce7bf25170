//! Verification suites. Each returns one [`Check`] per identity, with the
//! worst residual over the points it was evaluated on.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::Result;
use crate::fock::{
    biorthonormality_residual, check_ladder_actions, completeness_residuals, eigen_residuals,
    SuperSpace,
};
use crate::grassmann::exact::{exact, exact_one, ExactFixture, ExactMatrix2, ExactOp};
use crate::grassmann::{
    berezin, gexp_even, gmul, pseudo_adjoint, FockOp, Generator, GrassmannElement, Monomial,
};
use crate::linalg::{
    cluster_levels, commutator2, eig2, hermitian_eigenvalues, max_abs, max_abs2, max_abs_diff,
    max_abs_diff2,
};
use crate::phermion::{build_b, build_dual, build_phermion, mu_nu_unchecked, LadderPair, NILPOTENCY_ULPS};
use crate::report::{Check, Suite};
use crate::sampling::sample_points;
use crate::scs::{
    self, bi_normalization, build_scs, distance_from_one, glauber_reference, pseudo_unitarity_residuals,
    same_family_overlap, standard_scs, Family, IdentityReport, IDENTITY_TOL,
};
use crate::su2::{
    build_hamiltonian, build_rho, derived_scalars, hermitian_from_scalars, omega_cap,
    similarity_hermitian, su2_generators, Matrix2, ModelParams,
};
use crate::{C64, EXACT_TOL, ROUTE_TOL};

/// Guard band (in boson levels) for truncation-sensitive displacement checks.
pub const DISPLACEMENT_GUARD: usize = 4;
/// Tolerance for the bi-normalization of coherent states.
pub const BINORM_TOL: f64 = 1e-8;
/// Tolerance for limit laws that hold to round-off.
pub const LIMIT_TOL: f64 = 1e-12;

fn c(x: f64) -> C64 {
    C64::from(x)
}

/// Parameter points: the configured one followed by the seeded samples.
fn points(cfg: &RunConfig, p: &ModelParams) -> Vec<(ModelParams, f64)> {
    let mut pts = vec![(*p, cfg.z)];
    pts.extend(
        sample_points(cfg.seed, cfg.samples)
            .into_iter()
            .map(|s| (s.params, s.z)),
    );
    pts
}

/// Element-wise max of per-point residual vectors, computed in parallel.
fn worst<F>(pts: &[(ModelParams, f64)], f: F) -> Result<Vec<f64>>
where
    F: Fn(&ModelParams, f64) -> Result<Vec<f64>> + Sync,
{
    let rows: Vec<Vec<f64>> = pts
        .par_iter()
        .map(|(p, z)| f(p, *z))
        .collect::<Result<_>>()?;
    let width = rows.first().map_or(0, Vec::len);
    Ok((0..width)
        .map(|k| rows.iter().map(|r| r[k]).fold(f64::NEG_INFINITY, nan_max))
        .collect())
}

fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// `|eig(M) − (+Ω/2, −Ω/2)|`
fn spectrum_residual(m: &Matrix2, om: f64) -> f64 {
    let (l0, l1) = eig2(m);
    (l0 - c(om / 2.0)).norm().max((l1 + c(om / 2.0)).norm())
}

/// Companion point in the Hermitian limit, `(ω, α, α)`.
pub fn hermitian_companion(p: &ModelParams) -> Result<ModelParams> {
    ModelParams::hermitian_limit(p.omega(), p.alpha(), p.alpha())
}

pub fn core_suite(cfg: &RunConfig, p: &ModelParams) -> Result<Vec<Check>> {
    let s = Suite::Core;
    let mut out = Vec::new();

    let (jp, jm, j3) = su2_generators();
    let gen = max_abs_diff2(&commutator2(&jp, &jm), &(j3 * c(2.0)))
        .max(max_abs_diff2(&commutator2(&j3, &jp), &jp))
        .max(max_abs_diff2(&commutator2(&j3, &jm), &(-jm)))
        .max(max_abs_diff2(&jp.adjoint(), &jm));
    out.push(Check::bounded(s, "core.generators", "su2-commutators", gen, 0.0));

    let pts = points(cfg, p);
    let w = worst(&pts, |p, z| {
        let om = omega_cap(p);
        let h_big = build_hamiltonian(p);
        let m = build_rho(p, z)?;
        let sim = similarity_hermitian(p, &m);
        let d = derived_scalars(p, z)?;
        let closed = hermitian_from_scalars(&d);
        let (r0, r1) = eig2(&m.rho);
        Ok(vec![
            spectrum_residual(&h_big, om),
            m.power_form_residual,
            max_abs_diff2(&m.rho, &m.rho.adjoint()),
            -r0.re.min(r1.re),
            max_abs_diff2(&(m.rho * m.rho_inv), &Matrix2::identity()),
            max_abs_diff2(&sim, &sim.adjoint()),
            spectrum_residual(&sim, om),
            max_abs_diff2(&closed, &sim),
            (d.delta * d.delta + 4.0 * d.lambda * d.lambda - om * om).abs(),
        ])
    })?;
    let n = pts.len();
    let note = format!("worst over configured point and {} seeded samples", n - 1);
    out.push(Check::bounded(s, "core.spectrum-real", "real-spectrum", w[0], EXACT_TOL).with_note(note.clone()));
    out.push(Check::bounded(s, "core.metric-power-form", "metric-closed-vs-power", w[1], EXACT_TOL).with_note(note.clone()));
    out.push(Check::bounded(s, "core.metric-hermitian", "metric-hermitian", w[2], EXACT_TOL));
    out.push(
        Check::bounded(s, "core.metric-positive", "metric-positive", w[3].max(0.0), 0.0)
            .with_pass(w[3] < 0.0)
            .with_note(format!("min eigenvalue of rho over samples: {:e}", -w[3])),
    );
    out.push(Check::bounded(s, "core.metric-inverse", "metric-inverse", w[4], EXACT_TOL));
    out.push(Check::bounded(s, "core.similarity-hermitian", "hermitian-equivalent", w[5], EXACT_TOL));
    out.push(Check::bounded(s, "core.similarity-spectrum", "hermitian-equivalent", w[6], EXACT_TOL));
    out.push(Check::bounded(s, "core.closed-form-h", "hermitian-equivalent-closed-form", w[7], ROUTE_TOL));
    out.push(Check::bounded(s, "core.omega-identity", "spectrum-preservation", w[8], ROUTE_TOL));

    // Positivity along z ∈ [−5, 5] for the configured (ω, α, β).
    let mut min_eig = f64::INFINITY;
    let mut skipped = 0;
    for k in 0..101 {
        let z = -5.0 + 0.1 * k as f64;
        match build_rho(p, z) {
            Ok(m) => {
                let (a, b) = eig2(&m.rho);
                min_eig = min_eig.min(a.re.min(b.re));
            }
            Err(_) => skipped += 1,
        }
    }
    out.push(
        Check::bounded(s, "core.metric-positive-z-sweep", "metric-positive", (-min_eig).max(0.0), 0.0)
            .with_pass(min_eig > 0.0)
            .with_note(format!(
                "min eigenvalue {min_eig:e} over {} in-domain points; {skipped} of 101 outside the metric domain",
                101 - skipped
            )),
    );

    let hp = hermitian_companion(p)?;
    let hm = build_rho(&hp, cfg.z)?;
    let limit = hm.epsilon.abs()
        + max_abs_diff2(&hm.rho, &Matrix2::identity())
        + max_abs_diff2(&similarity_hermitian(&hp, &hm), &build_hamiltonian(&hp));
    out.push(Check::bounded(s, "core.hermitian-limit", "hermitian-limit", limit, 0.0));
    Ok(out)
}

fn nilpotency_ulps(pair: &LadderPair) -> f64 {
    let (l, r) = pair.nilpotency_residuals();
    let scale = max_abs2(&pair.lower).max(max_abs2(&pair.raise));
    l.max(r) / (f64::EPSILON * scale * scale)
}

pub fn phermion_suite(cfg: &RunConfig, p: &ModelParams) -> Result<Vec<Check>> {
    let s = Suite::Phermion;
    let pts = points(cfg, p);
    let half = Matrix2::identity() * c(0.5);
    let w = worst(&pts, |p, z| {
        let om = c(omega_cap(p));
        let b = build_b(p, z)?;
        let big = build_phermion(p, z)?;
        let dual = build_dual(p, z)?;
        let m = build_rho(p, z)?;
        let (h, _) = crate::su2::build_hermitian(p, z)?;
        let (_, mu_res) = mu_nu_unchecked(p, z)?;
        Ok(vec![
            nilpotency_ulps(&b),
            nilpotency_ulps(&big),
            nilpotency_ulps(&dual),
            b.anticommutator_residual(),
            big.anticommutator_residual(),
            dual.anticommutator_residual(),
            max_abs_diff2(&((big.number() - half) * om), &build_hamiltonian(p)),
            max_abs_diff2(&((b.number() - half) * om), &h),
            mu_res,
            max_abs_diff2(&(m.rho * big.lower * m.rho_inv), &b.lower)
                .max(max_abs_diff2(&(m.rho * big.raise * m.rho_inv), &b.raise)),
            max_abs_diff2(&(m.eta_inv() * big.lower.adjoint() * m.eta()), &big.raise),
            max_abs_diff2(&dual.lower, &big.raise.adjoint()),
            max_abs_diff2(&dual.raise, &big.lower.adjoint()),
        ])
    })?;
    let ulps_note = "residual is max|X^2| in units of eps*max|X|^2";
    let mut out = vec![
        Check::bounded(s, "phermion.nilpotency-b", "fermion-algebra", w[0], NILPOTENCY_ULPS).with_note(ulps_note),
        Check::bounded(s, "phermion.nilpotency-B", "phermion-algebra", w[1], NILPOTENCY_ULPS).with_note(ulps_note),
        Check::bounded(s, "phermion.nilpotency-dual", "dual-phermion-algebra", w[2], NILPOTENCY_ULPS).with_note(ulps_note),
        Check::bounded(s, "phermion.anticommutator-b", "fermion-algebra", w[3], EXACT_TOL),
        Check::bounded(s, "phermion.anticommutator-B", "phermion-algebra", w[4], EXACT_TOL),
        Check::bounded(s, "phermion.anticommutator-dual", "dual-phermion-algebra", w[5], EXACT_TOL),
        Check::bounded(s, "phermion.factorised-H", "factorised-hamiltonian", w[6], ROUTE_TOL),
        Check::bounded(s, "phermion.factorised-h", "factorised-hermitian-equivalent", w[7], ROUTE_TOL),
        Check::bounded(s, "phermion.mu-nu", "mu-nu-coefficients", w[8], ROUTE_TOL),
        Check::bounded(s, "phermion.similarity", "phermion-similarity", w[9], ROUTE_TOL),
        Check::bounded(s, "phermion.pseudo-conjugation", "pseudo-hermitian-conjugation", w[10], ROUTE_TOL),
        Check::bounded(s, "phermion.dual-adjoint", "dual-phermion-algebra", w[11].max(w[12]), EXACT_TOL),
    ];

    let hp = hermitian_companion(p)?;
    let hb = build_phermion(&hp, cfg.z)?;
    let limit = max_abs_diff2(&hb.raise, &hb.lower.adjoint());
    out.push(Check::bounded(s, "phermion.hermitian-limit", "hermitian-limit", limit, 0.0));
    Ok(out)
}

fn restrict(m: &DMatrix<C64>, proj: &DMatrix<C64>) -> f64 {
    max_abs(&(proj * m * proj))
}

pub fn susy_suite(cfg: &RunConfig, p: &ModelParams) -> Result<Vec<Check>> {
    let s = Suite::Susy;
    let n = cfg.levels(Suite::Susy);
    let sp = SuperSpace::build(p, cfg.z, n)?;
    let mut out = Vec::new();
    let below_top = sp.boson_projector(n - 1);
    let range_note = format!("restricted to n < {}", n - 1);

    let anti = &sp.q * &sp.q_sharp + &sp.q_sharp * &sp.q - &sp.h_s * c(2.0);
    out.push(
        Check::bounded(s, "susy.anticommutator", "superalgebra", restrict(&anti, &below_top), ROUTE_TOL)
            .with_note(range_note.clone()),
    );

    let qscale = max_abs(&sp.q).max(max_abs(&sp.q_sharp));
    let q2 = max_abs(&(&sp.q * &sp.q)).max(max_abs(&(&sp.q_sharp * &sp.q_sharp)));
    out.push(
        Check::bounded(s, "susy.nilpotency", "superalgebra", q2 / (f64::EPSILON * qscale * qscale), NILPOTENCY_ULPS)
            .with_note("residual is max|Q^2|, max|Q#^2| in units of eps*max|Q|^2"),
    );

    let cq = max_abs(&(&sp.q * &sp.h_s - &sp.h_s * &sp.q));
    let cqs = max_abs(&(&sp.q_sharp * &sp.h_s - &sp.h_s * &sp.q_sharp));
    out.push(Check::bounded(s, "susy.commutator-Q-H", "supercharge-conservation", cq, ROUTE_TOL));
    out.push(Check::bounded(s, "susy.commutator-Q#-H", "supercharge-conservation", cqs, ROUTE_TOL));

    let id = DMatrix::<C64>::identity(sp.dim(), sp.dim());
    let ca = &sp.a * &sp.a_dag - &sp.a_dag * &sp.a - &id;
    out.push(
        Check::bounded(s, "susy.boson-commutator", "boson-algebra", restrict(&ca, &below_top), EXACT_TOL)
            .with_note(range_note),
    );
    let mixed = [&sp.big_b, &sp.big_b_sharp, &sp.eta_s]
        .iter()
        .map(|x| max_abs(&(&sp.a * *x - *x * &sp.a)))
        .fold(0.0, f64::max);
    out.push(Check::bounded(s, "susy.boson-phermion-commute", "boson-phermion-commutation", mixed, 0.0));

    let sim = &sp.rho_s * &sp.h_s * &sp.rho_s_inv;
    out.push(Check::bounded(s, "susy.hermitian-equivalent", "hermitian-susy-hamiltonian", max_abs_diff(&sim, &sp.h_s_herm), ROUTE_TOL));

    let ph = max_abs_diff(&(sp.h_s.adjoint() * &sp.eta_s), &(&sp.eta_s * &sp.h_s));
    out.push(Check::bounded(s, "susy.pseudo-hermiticity", "pseudo-hermiticity", ph, EXACT_TOL));

    let eta_h = max_abs_diff(&sp.eta_s, &sp.eta_s.adjoint());
    let eta_min = hermitian_eigenvalues(&sp.eta_s)[0];
    out.push(
        Check::bounded(s, "susy.metric-positive", "metric-positive", eta_h, EXACT_TOL)
            .with_pass(eta_h <= EXACT_TOL && eta_min > 0.0)
            .with_note(format!("min eigenvalue of eta_s: {eta_min:e}")),
    );

    let ev = sp.spectrum();
    let levels = cluster_levels(&ev, 1e-6 * sp.omega_cap);
    let mut spec_res: f64 = 0.0;
    let mut pattern_ok = levels.len() == n + 1;
    for (k, (e, mult)) in levels.iter().enumerate() {
        spec_res = spec_res.max((e - sp.omega_cap * k as f64).abs());
        pattern_ok &= *mult == sp.expected_multiplicity(k);
    }
    let mults: Vec<String> = levels.iter().map(|l| l.1.to_string()).collect();
    out.push(
        Check::bounded(s, "susy.spectrum", "susy-spectrum", spec_res, ROUTE_TOL)
            .with_pass(spec_res <= ROUTE_TOL && pattern_ok)
            .with_note(format!("multiplicities ({})", mults.join(", "))),
    );

    out.push(Check::bounded(s, "susy.biorthonormality", "biorthonormal-basis", biorthonormality_residual(&sp), EXACT_TOL));
    let (c1, c2) = completeness_residuals(&sp);
    out.push(Check::bounded(s, "susy.completeness", "biorthonormal-completeness", c1.max(c2), EXACT_TOL));
    let (e1, e2) = eigen_residuals(&sp);
    out.push(Check::bounded(s, "susy.eigen-psi", "susy-eigenstates", e1, ROUTE_TOL));
    out.push(Check::bounded(s, "susy.eigen-phi", "susy-eigenstates", e2, ROUTE_TOL));

    let report = check_ladder_actions(&sp);
    for (k, r) in report.relations.iter().enumerate() {
        let tol = if r.relation.starts_with("ground") {
            EXACT_TOL
        } else {
            ROUTE_TOL
        };
        let mut chk = Check::bounded(s, format!("susy.ladder.{k:02}"), "ladder-actions", r.residual, tol)
            .with_note(r.relation);
        if let Some(range) = &r.range {
            chk = chk.with_note(format!("{}; {range}", r.relation));
        }
        out.push(chk);
    }
    Ok(out)
}

fn mismatch<T: PartialEq>(a: &T, b: &T) -> f64 {
    if a == b {
        0.0
    } else {
        1.0
    }
}

pub fn grassmann_suite(cfg: &RunConfig, p: &ModelParams) -> Result<Vec<Check>> {
    let s = Suite::Grassmann;
    let exact_note = "exact rational arithmetic; residual counts mismatches";
    let f = ExactFixture::new();
    let one = exact_one();
    let mono = |m: Monomial| GrassmannElement::monomial(m, one);
    let mut out = Vec::new();

    // Berezin rules.
    let mut bad = 0.0;
    bad += mismatch(&berezin(&mono(Monomial::XiXiStar)), &Some(one));
    bad += mismatch(&berezin(&mono(Monomial::One)), &None);
    bad += mismatch(&berezin(&mono(Monomial::Xi)), &None);
    bad += mismatch(&berezin(&mono(Monomial::XiStar)), &None);
    let five_rev = GrassmannElement::from_word(&[Generator::XiStar, Generator::Xi], exact(5, 0));
    bad += mismatch(&berezin(&five_rev), &Some(exact(-5, 0)));
    let lin = mono(Monomial::XiXiStar).add(&GrassmannElement::monomial(Monomial::XiXiStar, exact(2, 3)));
    bad += mismatch(&berezin(&lin), &Some(exact(3, 3)));
    out.push(Check::bounded(s, "grassmann.berezin-rules", "berezin-rules", bad, 0.0).with_note(exact_note));

    // Generator rules and anticommutation with odd operators.
    let xi = mono(Monomial::Xi);
    let xis = mono(Monomial::XiStar);
    let mut bad = 0.0;
    bad += mismatch(&gmul(&xi, &xi)?, &GrassmannElement::zero());
    bad += mismatch(&gmul(&xis, &xis)?, &GrassmannElement::zero());
    bad += mismatch(&gmul(&xi, &xis)?.add(&gmul(&xis, &xi)?), &GrassmannElement::zero().with(Monomial::XiXiStar, exact(0, 0)));
    bad += mismatch(&gmul(&xi, &xis)?, &mono(Monomial::XiXiStar));
    bad += mismatch(&gmul(&xis, &xi)?, &GrassmannElement::monomial(Monomial::XiXiStar, exact(-1, 0)));
    let zero_op = ExactOp::odd(ExactMatrix2::zero());
    for op in [&f.lower, &f.raise] {
        let b = GrassmannElement::scalar(op.clone());
        for g in [&xi, &xis] {
            let anti = gmul(g, &b)?.add(&gmul(&b, g)?);
            let ok = anti.components().all(|(_, c)| c.mat == zero_op.mat);
            bad += if ok { 0.0 } else { 1.0 };
        }
    }
    out.push(Check::bounded(s, "grassmann.sign-rules", "grassmann-sign-rules", bad, 0.0).with_note(exact_note));

    // (B#ξ + ξ*B)^# = ξ*B + B#ξ
    let b = GrassmannElement::scalar(f.lower.clone());
    let word = GrassmannElement::monomial(Monomial::Xi, f.raise.clone()).add(&gmul(&xis, &b)?);
    let adj = pseudo_adjoint(&word, &f.metric)?;
    let expected = gmul(&xis, &b)?.add(&GrassmannElement::monomial(Monomial::Xi, f.raise.clone()));
    out.push(
        Check::bounded(s, "grassmann.pseudo-adjoint-reversal", "pseudo-adjoint-reversal", mismatch(&adj, &expected), 0.0)
            .with_note(exact_note),
    );

    // Exhaustive associativity over monomial × {c·1, B, B#, η}.
    let coeffs = [
        ExactOp::even(ExactMatrix2::identity().scale(&exact(2, -1))),
        f.lower.clone(),
        f.raise.clone(),
        ExactOp::even(f.metric.eta.clone()),
    ];
    let basis: Vec<GrassmannElement<ExactOp>> = Monomial::ALL
        .iter()
        .flat_map(|&m| coeffs.iter().map(move |c| GrassmannElement::monomial(m, c.clone())))
        .collect();
    let mut bad = 0.0;
    let mut count = 0;
    for x in &basis {
        for y in &basis {
            let xy = gmul(x, y)?;
            for z in &basis {
                count += 1;
                bad += mismatch(&gmul(&xy, z)?, &gmul(x, &gmul(y, z)?)?);
            }
        }
    }
    out.push(
        Check::bounded(s, "grassmann.associativity", "grassmann-associativity", bad, 0.0)
            .with_note(format!("{count} triples; {exact_note}")),
    );

    // Floating-point checks on lifted operators.
    let sp = SuperSpace::build(p, cfg.z, cfg.levels(Suite::Grassmann).min(16))?;
    let dim = sp.dim();
    let metric = sp.psi_metric();
    let big_b = FockOp::odd(sp.big_b.clone());
    let big_bs = FockOp::odd(sp.big_b_sharp.clone());
    let even = GrassmannElement::scalar(FockOp::even(&sp.a_dag * c(0.3) - &sp.a * c(0.3)))
        .with(Monomial::Xi, big_bs.clone())
        .with(Monomial::XiStar, big_b.clone())
        .with(Monomial::XiXiStar, FockOp::even(sp.eta_s.clone()));
    let twice = pseudo_adjoint(&pseudo_adjoint(&even, &metric)?, &metric)?;
    out.push(Check::bounded(s, "grassmann.involution", "pseudo-adjoint-reversal", twice.max_abs_diff(&even), EXACT_TOL));

    // Bosonic exponent αa† − α*a is anti-pseudo-Hermitian, so a^# = a†.
    let alpha = C64::new(0.4, -0.7);
    let gen = GrassmannElement::scalar(FockOp::even(&sp.a_dag * alpha - &sp.a * alpha.conj()));
    let gen_adj = pseudo_adjoint(&gen, &metric)?;
    out.push(Check::bounded(s, "grassmann.boson-adjoint", "pseudo-adjoint-reversal", gen_adj.add(&gen).max_abs(), EXACT_TOL));

    // exp(−ξB#) = 1 − ξB# and exp(−½ξ*ξ) = 1 + ½ξξ*.
    let minus_xi_bs = gmul(&GrassmannElement::monomial(Monomial::Xi, c(-1.0)), &GrassmannElement::scalar(big_bs.clone()))?;
    let e1 = gexp_even(&minus_xi_bs, dim)?;
    let want1 = GrassmannElement::scalar(FockOp::identity(dim)).add(&minus_xi_bs);
    let gauss_exp = GrassmannElement::from_word(&[Generator::XiStar, Generator::Xi], FockOp::even(DMatrix::identity(dim, dim) * c(-0.5)));
    let e2 = gexp_even(&gauss_exp, dim)?;
    let want2 = GrassmannElement::scalar(FockOp::identity(dim))
        .with(Monomial::XiXiStar, FockOp::even(DMatrix::identity(dim, dim) * c(0.5)));
    out.push(Check::bounded(
        s,
        "grassmann.exp-terminating",
        "grassmann-exponential",
        e1.max_abs_diff(&want1).max(e2.max_abs_diff(&want2)),
        0.0,
    ));

    // exp(x)·exp(−x) = 1 for an even x whose body commutes with the rest.
    let x = GrassmannElement::scalar(FockOp::even(DMatrix::identity(dim, dim) * C64::new(0.2, 0.1)))
        .with(Monomial::Xi, big_bs)
        .with(Monomial::XiStar, big_b)
        .with(Monomial::XiXiStar, FockOp::even(sp.eta_s.clone()));
    let prod = gmul(&gexp_even(&x, dim)?, &gexp_even(&x.neg(), dim)?)?;
    let unit = GrassmannElement::scalar(FockOp::identity(dim));
    out.push(Check::bounded(s, "grassmann.exp-inverse", "grassmann-exponential", prod.max_abs_diff(&unit), EXACT_TOL));
    Ok(out)
}

fn amp_label(a: C64) -> String {
    if a.im == 0.0 {
        format!("{}", a.re)
    } else if a.im > 0.0 {
        format!("{}+{}i", a.re, a.im)
    } else {
        format!("{}{}i", a.re, a.im)
    }
}

fn family_label(f: Family) -> &'static str {
    match f {
        Family::Psi => "psi",
        Family::Phi => "phi",
    }
}

fn scs_checks_for(sp: &SuperSpace, alpha: C64) -> Result<Vec<Check>> {
    let s = Suite::Scs;
    let label = amp_label(alpha);
    let mut out = Vec::new();
    let mut states = Vec::new();
    for family in [Family::Psi, Family::Phi] {
        let fl = family_label(family);
        let st = build_scs(sp, alpha, family)?;
        let (rb, rf) = scs::eigen_residuals(sp, &st)?;
        let lower = if family == Family::Psi { "B" } else { "Btilde" };
        out.push(Check::bounded(s, format!("scs.orbit[{label},{fl}]"), "scs-closed-form", st.orbit_residual, ROUTE_TOL));
        out.push(Check::bounded(s, format!("scs.eigen-a[{label},{fl}]"), "scs-eigenrelations", rb, ROUTE_TOL));
        out.push(Check::bounded(s, format!("scs.eigen-{lower}[{label},{fl}]"), "scs-eigenrelations", rf, ROUTE_TOL));

        let d = scs::displacement(sp, alpha, family)?;
        let (r1, r2) = pseudo_unitarity_residuals(sp, &d, family, DISPLACEMENT_GUARD)?;
        out.push(
            Check::bounded(s, format!("scs.pseudo-unitarity[{label},{fl}]"), "displacement-pseudo-unitary", r1.max(r2), ROUTE_TOL)
                .with_note(format!("restricted to n < {}", sp.n_max - DISPLACEMENT_GUARD)),
        );

        let glauber = glauber_reference(sp, alpha, 0, family);
        let proj = crate::linalg::max_abs_diff_vec(&st.xi_projection().0, &glauber);
        out.push(Check::bounded(s, format!("scs.glauber-limit[{label},{fl}]"), "glauber-limit", proj, LIMIT_TOL));

        // sector structure: body in ε=0, ξ-part in ε=1, no ξ* part
        let dual_fam = if family == Family::Psi { Family::Phi } else { Family::Psi };
        let mut sector: f64 = if st.state.get(Monomial::XiStar).is_some() { 1.0 } else { 0.0 };
        let body = &st.xi_projection().0;
        let excited = st.excited().0;
        for n in 0..sp.n_max {
            let (bra0, bra1) = match dual_fam {
                Family::Phi => (sp.phi(n, 0), sp.phi(n, 1)),
                Family::Psi => (sp.psi(n, 0), sp.psi(n, 1)),
            };
            sector = sector.max(bra1.dotc(body).norm()).max(bra0.dotc(&excited).norm());
        }
        out.push(Check::bounded(s, format!("scs.structure[{label},{fl}]"), "scs-closed-form", sector, LIMIT_TOL));
        states.push(st);
    }
    let bn = bi_normalization(&states[0], &states[1])?;
    out.push(
        Check::bounded(s, format!("scs.bi-normalization[{label}]"), "bi-normalization", distance_from_one(&bn), BINORM_TOL)
            .with_note(format!("Glauber tail {:e}", states[0].tail)),
    );
    let same = distance_from_one(&same_family_overlap(&states[0]));
    out.push(
        Check::reported(s, format!("scs.same-family-overlap[{label}]"), "same-family-overlap", same)
            .with_note("distance of <alpha,xi|alpha,xi> from 1; reported, not asserted"),
    );
    Ok(out)
}

pub fn scs_suite(cfg: &RunConfig, p: &ModelParams) -> Result<Vec<Check>> {
    let n = cfg.levels(Suite::Scs);
    let sp = SuperSpace::build(p, cfg.z, n)?;
    let per_amp: Vec<Vec<Check>> = cfg
        .amp_list
        .par_iter()
        .map(|a| scs_checks_for(&sp, *a))
        .collect::<Result<_>>()?;
    let mut out: Vec<Check> = per_amp.into_iter().flatten().collect();

    // Hermitian limit: both families coincide with the standard SUSY SCS.
    let hp = hermitian_companion(p)?;
    let hs = SuperSpace::build(&hp, cfg.z, n)?;
    let mut worst_lim: f64 = 0.0;
    for a in &cfg.amp_list {
        let reference = standard_scs(&hs, *a);
        for family in [Family::Psi, Family::Phi] {
            let st = build_scs(&hs, *a, family)?;
            worst_lim = worst_lim.max(st.state.max_abs_diff(&reference));
        }
    }
    out.push(
        Check::bounded(Suite::Scs, "scs.hermitian-limit", "hermitian-limit", worst_lim, LIMIT_TOL)
            .with_note("both families vs standard SUSY coherent states at alpha = beta"),
    );
    Ok(out)
}

pub fn identity_suite(cfg: &RunConfig, p: &ModelParams) -> Result<(Vec<Check>, IdentityReport)> {
    let s = Suite::Identity;
    let sp = SuperSpace::build(p, cfg.z, cfg.levels(Suite::Identity))?;
    let rep = scs::resolution_of_identity(&sp, &cfg.quadrature)?;
    let checks = vec![
        Check::bounded(s, "identity.cross", "resolution-of-identity", rep.residual_cross, IDENTITY_TOL).with_note(format!(
            "analytic radial cutoff deficit for the top level: {:e}",
            rep.radial_cutoff_deficit
        )),
        Check::bounded(s, "identity.convergence", "resolution-of-identity", rep.convergence_change, 0.1)
            .with_note(format!("refined residual {:e}", rep.residual_cross_refined)),
        Check::reported(s, "identity.same-family", "same-family-non-resolution", rep.residual_same)
            .with_note("same-family integral distance from identity; reported, not asserted"),
    ];
    Ok((checks, rep))
}

/// Runs the configured suites. Suites run one after another; each
/// parallelises internally.
pub fn run_suites(cfg: &RunConfig, p: &ModelParams) -> Result<(Vec<Check>, Option<IdentityReport>)> {
    let mut checks = Vec::new();
    let mut identity = None;
    for suite in &cfg.suites {
        match suite {
            Suite::Core => checks.extend(core_suite(cfg, p)?),
            Suite::Phermion => checks.extend(phermion_suite(cfg, p)?),
            Suite::Susy => checks.extend(susy_suite(cfg, p)?),
            Suite::Grassmann => checks.extend(grassmann_suite(cfg, p)?),
            Suite::Scs => checks.extend(scs_suite(cfg, p)?),
            Suite::Identity => {
                let (c, r) = identity_suite(cfg, p)?;
                checks.extend(c);
                identity = Some(r);
            }
        }
    }
    Ok((checks, identity))
}
