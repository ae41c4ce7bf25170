//! Polar product rule for `∫ f(α) d²α/π`: Gauss–Legendre in `r ∈ [0, R]`,
//! uniform trapezoid in `θ`.

use serde::Serialize;

use crate::C64;

/// Gauss–Legendre nodes and weights on `[−1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "Gauss-Legendre needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub radius: f64,
    pub n_radial: usize,
    pub n_angular: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            radius: 6.0,
            n_radial: 80,
            n_angular: 64,
        }
    }
}

impl QuadratureSpec {
    /// Same cutoff, twice the nodes in each direction.
    pub fn refined(&self) -> Self {
        Self {
            n_radial: 2 * self.n_radial,
            n_angular: 2 * self.n_angular,
            ..*self
        }
    }

    pub fn rule(&self) -> PolarRule {
        let (x, w) = gauss_legendre(self.n_radial);
        let half = 0.5 * self.radius;
        let radial = x
            .iter()
            .zip(&w)
            .map(|(&xi, &wi)| (half * (xi + 1.0), half * wi))
            .collect();
        PolarRule {
            radial,
            n_angular: self.n_angular,
        }
    }
}

/// Nodes of the polar rule grouped by radius.
#[derive(Debug, Clone)]
pub struct PolarRule {
    /// `(r_i, w_i)` for `∫_0^R dr`.
    pub radial: Vec<(f64, f64)>,
    pub n_angular: usize,
}

impl PolarRule {
    /// Nodes on the circle of radius index `i` with weights for `d²α/π`:
    /// `2 r_i w_i / n_θ`.
    pub fn ring(&self, i: usize) -> impl Iterator<Item = (C64, f64)> + '_ {
        let (r, w) = self.radial[i];
        let nt = self.n_angular;
        let weight = 2.0 * r * w / nt as f64;
        (0..nt).map(move |j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / nt as f64;
            (C64::from_polar(r, theta), weight)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in [1, 2, 5, 80, 160] {
            let (_, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn exact_for_polynomials() {
        let n = 6;
        let (x, w) = gauss_legendre(n);
        for deg in 0..2 * n {
            let q: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            assert!((q - exact).abs() < 1e-14, "degree {deg}");
        }
    }

    #[test]
    fn three_point_nodes() {
        let (x, w) = gauss_legendre(3);
        let r = (0.6f64).sqrt();
        assert!((x[0] + r).abs() < 1e-15 && x[1].abs() < 1e-15 && (x[2] - r).abs() < 1e-15);
        assert!((w[1] - 8.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn gaussian_moment() {
        // ∫ e^{−|α|²} |α|^{2k} d²α/π = k!
        let rule = QuadratureSpec {
            radius: 10.0,
            ..QuadratureSpec::default()
        }
        .rule();
        for k in 0..6 {
            let mut total = 0.0;
            for i in 0..rule.radial.len() {
                for (a, w) in rule.ring(i) {
                    total += w * (-a.norm_sqr()).exp() * a.norm_sqr().powi(k);
                }
            }
            let fact: f64 = (1..=k).map(f64::from).product();
            assert!((total - fact).abs() < 1e-10 * fact.max(1.0), "k = {k}: {total}");
        }
    }
}
