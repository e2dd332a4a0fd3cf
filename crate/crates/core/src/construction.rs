//! The multiplier-and-cover construction: pull the base forms back by
//! `T_k(z) = z^k` and multiply by `f`,
//!
//! `Ψ_j = k · f(z) · φ_j(z^k) · dz/z`,
//!
//! then certify exactness, `I`-symmetry, conformality, regularity and the
//! metric comparison `ds₀² ≍ T_k*(ds²)`.
//!
//! For odd `k > m` the residue of `Ψ_j` is `k·b₀·a_{j,0}`: every other pair
//! in the convolution would need `k n + i = 0` with `0 < |i| <= m < k`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{Annulus, FormOnAnnulus, SymmetryMode};
use crate::multiplier::{annulus_bounds, MultiplierParams};
use crate::voss::Triple;
use crate::weierstrass::WeierstrassTriple;

/// Default zero-clearance margin.
pub const DEFAULT_MARGIN: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstructionParams {
    pub k: u32,
    /// Base annulus `A(R)`.
    pub r: f64,
    /// `R^{1/k}`.
    pub rho: f64,
    /// Bound with `1/c < |f| < c` on the closed `A(ρ)`.
    pub c: f64,
    pub margin: f64,
}

fn clears(rho: f64, margin: f64, zero_moduli: &[f64]) -> bool {
    zero_moduli.iter().all(|&m| {
        if m > 1.0 {
            rho * (1.0 + margin) < m
        } else {
            m < (1.0 - margin) / rho
        }
    })
}

/// Smallest odd `k > m` whose annulus `A(R^{1/k})`, widened by `margin`,
/// keeps every zero of `f` outside.
pub fn choose_k(m: u32, r: f64, zero_moduli: &[f64], margin: f64) -> Result<u32> {
    if !(r > 1.0) || !r.is_finite() {
        return Err(Error::Domain(format!("R must exceed 1, got {r}")));
    }
    if zero_moduli.contains(&1.0) {
        return Err(Error::Domain("a zero of f lies on the unit circle".into()));
    }
    // as k → ∞ the annulus shrinks to the unit circle
    if !clears(1.0, margin, zero_moduli) {
        return Err(Error::Parameter(format!(
            "margin {margin} leaves no room around the unit circle"
        )));
    }
    let mut k = if m.is_multiple_of(2) { m + 1 } else { m + 2 };
    loop {
        if clears(r.powf(1.0 / k as f64), margin, zero_moduli) {
            return Ok(k);
        }
        k += 2;
    }
}

impl ConstructionParams {
    /// Validates `k` against the hypotheses and computes `ρ` and `c`.
    pub fn new(k: u32, r: f64, margin: f64, f: &MultiplierParams) -> Result<Self> {
        check_k(k, f.degree())?;
        if !(r > 1.0) {
            return Err(Error::Domain(format!("R must exceed 1, got {r}")));
        }
        let rho = r.powf(1.0 / k as f64);
        if !clears(rho, margin, &f.zero_moduli()) {
            return Err(Error::Parameter(format!(
                "k = {k}: zeros of f are within margin {margin} of A({rho})"
            )));
        }
        let c = annulus_bounds(f, rho)?;
        Ok(Self { k, r, rho, c, margin })
    }

    pub fn auto(r: f64, margin: f64, f: &MultiplierParams) -> Result<Self> {
        let k = choose_k(f.degree(), r, &f.zero_moduli(), margin)?;
        Self::new(k, r, margin, f)
    }
}

fn check_k(k: u32, m: u32) -> Result<()> {
    if k.is_multiple_of(2) {
        return Err(Error::Parameter(format!("k = {k} must be odd")));
    }
    if k <= m {
        return Err(Error::Parameter(format!("k = {k} must exceed m = {m}")));
    }
    Ok(())
}

/// `Ψ_j = k · f · T_k*(φ_j) · dz/z` for odd `k > m`.
pub fn build_psi(
    base: &Triple<FormOnAnnulus>,
    f: &MultiplierParams,
    k: u32,
) -> Result<Triple<FormOnAnnulus>> {
    check_k(k, f.degree())?;
    assemble_psi(base, f, k)
}

/// Same product as [`build_psi`] without the parity and size checks on `k`,
/// for negative controls.
pub fn assemble_psi(
    base: &Triple<FormOnAnnulus>,
    f: &MultiplierParams,
    k: u32,
) -> Result<Triple<FormOnAnnulus>> {
    let series = f.series().scaled(Complex64::new(k as f64, 0.0));
    let mut out = Vec::with_capacity(3);
    for form in base {
        let pulled = form.phi.pullback_power(k)?;
        out.push(FormOnAnnulus::new(series.multiply(&pulled)?));
    }
    Ok(out.try_into().expect("three forms"))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VerifyTolerances {
    /// Relative residue bound.
    pub res: f64,
    pub symmetry: f64,
    pub conformality: f64,
}

impl Default for VerifyTolerances {
    fn default() -> Self {
        Self {
            res: 1e-12,
            symmetry: 1e-10,
            conformality: 1e-10,
        }
    }
}

/// Sub-annulus of `A(ρ)` on which a band-`n` truncation of base data with
/// convergence radius `mu` carries a tail below `tol / 10`, after pulling
/// back by `z ↦ z^k`.
///
/// The base coefficients decay like `mu^{-|j|}`, so the tail at `|w|` is of
/// order `(|w|/mu)^{n+1}`.
pub fn trusted_annulus(psi_annulus: &Annulus, mu: f64, n: usize, k: u32, tol: f64) -> Result<Annulus> {
    if !(mu > 1.0 && tol > 0.0 && k > 0) {
        return Err(Error::Parameter(format!(
            "trusted annulus needs mu > 1, tol > 0, k > 0; got {mu}, {tol}, {k}"
        )));
    }
    let w = mu * (tol / 10.0).powf(1.0 / (n as f64 + 1.0));
    let r = w.powf(1.0 / k as f64).min(psi_annulus.outer);
    if !(r > 1.0) {
        return Err(Error::Parameter(format!(
            "band {n} too small for tolerance {tol} at convergence radius {mu}"
        )));
    }
    Annulus::symmetric(r)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PsiReport {
    pub residues: [(f64, f64); 3],
    pub relative_residues: [f64; 3],
    pub symmetry_defect: f64,
    pub conformality_defect: f64,
    pub regularity_min: f64,
    pub exact: bool,
    pub symmetric: bool,
    pub conformal: bool,
    pub regular: bool,
}

impl PsiReport {
    pub fn passed(&self) -> bool {
        self.exact && self.symmetric && self.conformal && self.regular
    }
}

pub fn verify_psi(
    psi: &Triple<FormOnAnnulus>,
    samples: &[Complex64],
    tol: &VerifyTolerances,
) -> Result<PsiReport> {
    let residues = psi.clone().map(|f| {
        let r = f.residue();
        (r.re, r.im)
    });
    let relative_residues = psi.clone().map(|f| f.relative_residue());
    let mut symmetry_defect: f64 = 0.0;
    for f in psi {
        symmetry_defect = symmetry_defect.max(f.phi.symmetry_defect(SymmetryMode::Form)?);
    }
    let triple = WeierstrassTriple::Laurent(psi.clone());
    let conformality_defect = triple.conformality_defect(samples)?;
    let regularity_min = triple.regularity_min(samples)?;
    Ok(PsiReport {
        residues,
        relative_residues,
        symmetry_defect,
        conformality_defect,
        regularity_min,
        exact: relative_residues.iter().all(|&r| r <= tol.res),
        symmetric: symmetry_defect < tol.symmetry,
        conformal: conformality_defect < tol.conformality,
        regular: regularity_min > 0.0,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricComparison {
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub c: f64,
    /// `max |ratio - |f(z)||`.
    pub max_f_deviation: f64,
    /// The same deviation relative to `|f(z)|`.
    pub max_f_rel_deviation: f64,
    pub excluded: usize,
    pub within_bounds: bool,
}

/// Pointwise `λ_Ψ(z) / (k |z|^{k-1} λ_Φ(z^k))`, which equals `|f(z)|`.
pub fn metric_comparison(
    psi: &Triple<FormOnAnnulus>,
    base: &Triple<FormOnAnnulus>,
    f: &MultiplierParams,
    params: &ConstructionParams,
    samples: &[Complex64],
) -> Result<MetricComparison> {
    let psi = WeierstrassTriple::Laurent(psi.clone());
    let base = WeierstrassTriple::Laurent(base.clone());
    let k = params.k as i32;
    let mut min_ratio = f64::INFINITY;
    let mut max_ratio: f64 = 0.0;
    let mut max_f_deviation: f64 = 0.0;
    let mut max_f_rel_deviation: f64 = 0.0;
    let mut excluded = 0;
    for &z in samples {
        let base_density = base.metric_density(z.powi(k))?;
        if base_density == 0.0 {
            excluded += 1;
            continue;
        }
        let ratio = psi.metric_density(z)?
            / (k as f64 * z.norm().powi(k - 1) * base_density);
        let abs_f = f.eval_direct(z).norm();
        min_ratio = min_ratio.min(ratio);
        max_ratio = max_ratio.max(ratio);
        max_f_deviation = max_f_deviation.max((ratio - abs_f).abs());
        max_f_rel_deviation = max_f_rel_deviation.max((ratio - abs_f).abs() / abs_f);
    }
    let c = params.c;
    Ok(MetricComparison {
        min_ratio,
        max_ratio,
        c,
        max_f_deviation,
        max_f_rel_deviation,
        excluded,
        within_bounds: 1.0 / c < min_ratio && max_ratio < c,
    })
}
