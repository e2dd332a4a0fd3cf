//! Fixtures shared by the benchmarks.

use mobius_core::pipeline::{prepare, Setup};
use mobius_core::{build_psi, FormOnAnnulus, RunConfig, Triple};

pub fn standard_setup() -> Setup {
    prepare(&RunConfig::standard()).expect("standard config is valid")
}

/// Restricted base forms and `Ψ` for the standard config.
pub fn standard_forms(setup: &Setup) -> (Triple<FormOnAnnulus>, Triple<FormOnAnnulus>) {
    let t = &setup.config.truncation;
    let base = setup
        .voss
        .restrict_to_annulus(setup.config.annulus.r, t.n, t.samples)
        .expect("restriction");
    let psi = build_psi(&base, &setup.multiplier, setup.params.k).expect("psi");
    (base, psi)
}
