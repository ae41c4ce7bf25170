//! Seeded random parameter points.
//!
//! `ω ∈ [0.5, 4]`, `α, β ∈ [−2, 2]` kept when the parameters are valid, and
//! `z ∈ [−3, 3]` kept when the metric exists there.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::su2::{build_hermitian, ModelParams};

pub const OMEGA_RANGE: (f64, f64) = (0.5, 4.0);
pub const COUPLING_RANGE: (f64, f64) = (-2.0, 2.0);
pub const Z_RANGE: (f64, f64) = (-3.0, 3.0);

#[derive(Debug, Clone)]
pub struct SamplePoint {
    pub params: ModelParams,
    pub z: f64,
}

/// Draws `count` valid points. Identical seeds give identical points.
pub fn sample_points(seed: u64, count: usize) -> Vec<SamplePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let omega = rng.gen_range(OMEGA_RANGE.0..=OMEGA_RANGE.1);
        let alpha = rng.gen_range(COUPLING_RANGE.0..=COUPLING_RANGE.1);
        let beta = rng.gen_range(COUPLING_RANGE.0..=COUPLING_RANGE.1);
        let z = rng.gen_range(Z_RANGE.0..=Z_RANGE.1);
        let Ok(params) = ModelParams::new(omega, alpha, beta) else {
            continue;
        };
        if build_hermitian(&params, z).is_ok() {
            out.push(SamplePoint { params, z });
        }
    }
    out
}
