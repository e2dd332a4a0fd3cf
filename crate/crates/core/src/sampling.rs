//! Deterministic sample sets on annuli.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::laurent::Annulus;

/// `count` points spread over `inner·(1+inset) <= |z| <= outer·(1-inset)`:
/// log-uniform radii, golden-angle arguments.
pub fn annulus_samples(annulus: &Annulus, count: usize, inset: f64) -> Vec<Complex64> {
    let lo = (annulus.inner * (1.0 + inset)).ln();
    let hi = (annulus.outer * (1.0 - inset)).ln();
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let t = (i as f64 + 0.5) / count as f64;
            let r = (lo + (hi - lo) * t).exp();
            Complex64::from_polar(r, golden * i as f64)
        })
        .collect()
}

/// `count` equally spaced points on the circle `|z| = r`.
pub fn circle_samples(r: f64, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|i| Complex64::from_polar(r, TAU * i as f64 / count as f64))
        .collect()
}
