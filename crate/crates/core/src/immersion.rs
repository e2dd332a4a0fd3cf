//! The immersion `X(z) = Re ∫₁^z (Ψ₁, Ψ₂, Ψ₃)` and its diagnostics.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::laurent::{Annulus, FormOnAnnulus, LaurentCoefficients, RESIDUE_REL_TOL};
use crate::voss::{involution, PunctureConfig, Triple};
use crate::weierstrass::WeierstrassTriple;

#[derive(Clone, Debug)]
pub struct ImmersionData {
    psi: Triple<FormOnAnnulus>,
    primitives: Triple<LaurentCoefficients>,
    base_point: Complex64,
    offset: [f64; 3],
}

/// Integrates exact forms with the default relative residue tolerance.
pub fn integrate(psi: &Triple<FormOnAnnulus>) -> Result<ImmersionData> {
    integrate_with_tolerance(psi, RESIDUE_REL_TOL)
}

pub fn integrate_with_tolerance(psi: &Triple<FormOnAnnulus>, rel_tol: f64) -> Result<ImmersionData> {
    let mut primitives = Vec::with_capacity(3);
    for form in psi {
        primitives.push(form.antiderivative_with_tolerance(rel_tol)?);
    }
    let primitives: Triple<LaurentCoefficients> = primitives.try_into().expect("three primitives");
    let base_point = Complex64::new(1.0, 0.0);
    let mut offset = [0.0; 3];
    for j in 0..3 {
        offset[j] = primitives[j].evaluate(base_point)?.re;
    }
    Ok(ImmersionData {
        psi: psi.clone(),
        primitives,
        base_point,
        offset,
    })
}

impl ImmersionData {
    pub fn annulus(&self) -> Annulus {
        self.primitives[0].annulus()
    }

    pub fn base_point(&self) -> Complex64 {
        self.base_point
    }

    pub fn psi(&self) -> &Triple<FormOnAnnulus> {
        &self.psi
    }

    pub fn primitives(&self) -> &Triple<LaurentCoefficients> {
        &self.primitives
    }

    /// `X(z) = Re(F(z)) - Re(F(1))`.
    pub fn position(&self, z: Complex64) -> Result<[f64; 3]> {
        let mut x = [0.0; 3];
        for ((xj, p), off) in x.iter_mut().zip(&self.primitives).zip(self.offset) {
            *xj = p.evaluate(z)?.re - off;
        }
        Ok(x)
    }

    fn raw(&self, z: Complex64) -> [f64; 3] {
        [0, 1, 2].map(|j| self.primitives[j].evaluate_unchecked(z).re)
    }

    /// `max ‖X(I(z)) - X(z)‖` over `samples`.
    pub fn involution_compat_defect(&self, samples: &[Complex64]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for &z in samples {
            let (a, b) = (self.position(z)?, self.position(involution(z))?);
            worst = worst.max(distance(&a, &b));
        }
        Ok(worst)
    }

    /// `∮_{|z|=1} Ψ_j` by the trapezoid rule.
    pub fn unit_circle_periods(&self, sample_count: usize) -> Result<[Complex64; 3]> {
        let mut out = [Complex64::new(0.0, 0.0); 3];
        let dtheta = TAU / sample_count as f64;
        for s in 0..sample_count {
            let z = Complex64::from_polar(1.0, dtheta * s as f64);
            // Ψ = ψ dz/z with dz/z = i dθ
            for (acc, form) in out.iter_mut().zip(&self.psi) {
                *acc += form.phi.evaluate(z)? * Complex64::new(0.0, dtheta);
            }
        }
        Ok(out)
    }

    /// Largest five-point Laplacian `‖Δ_h X‖` over `centers`, divided by the
    /// metric density there.
    pub fn harmonicity_defect(&self, h: f64, centers: &[Complex64]) -> Result<f64> {
        let triple = WeierstrassTriple::Laurent(self.psi.clone());
        let annulus = self.annulus();
        let mut worst: f64 = 0.0;
        for &z in centers {
            let stencil = [
                z + h,
                z - h,
                z + Complex64::new(0.0, h),
                z - Complex64::new(0.0, h),
            ];
            if stencil.iter().any(|&w| !annulus.contains(w)) {
                return Err(crate::error::Error::Domain(format!(
                    "stencil of width {h} at {z} leaves the annulus"
                )));
            }
            let centre = self.raw(z);
            let mut lap = [0.0; 3];
            for w in stencil {
                let v = self.raw(w);
                for j in 0..3 {
                    lap[j] += v[j];
                }
            }
            for j in 0..3 {
                lap[j] = (lap[j] - 4.0 * centre[j]) / (h * h);
            }
            let norm = lap.iter().map(|v| v * v).sum::<f64>().sqrt();
            worst = worst.max(norm / triple.metric_density(z)?);
        }
        Ok(worst)
    }
}

/// Default stencil centres: 32 points on each of the circles
/// `|z| = ρ^{-1/2}, 1, ρ^{1/2}`.
pub fn harmonic_centers(annulus: &Annulus) -> Vec<Complex64> {
    let mid = annulus.outer.sqrt();
    [1.0 / mid, 1.0, mid]
        .iter()
        .flat_map(|&r| {
            (0..32).map(move |i| Complex64::from_polar(r, TAU * (i as f64 + 0.25) / 32.0))
        })
        .collect()
}

pub fn distance(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// `2|p-q| / sqrt((1+|p|²)(1+|q|²))`.
pub fn chordal_distance(p: Complex64, q: Complex64) -> f64 {
    2.0 * (p - q).norm() / ((1.0 + p.norm_sqr()) * (1.0 + q.norm_sqr())).sqrt()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaussReport {
    pub k: u32,
    pub r: f64,
    /// `[α, β, -1/ᾱ, -1/β̄]` as `(re, im)`.
    pub omitted: [(f64, f64); 4],
    /// Indices into `omitted` grouped by `q ~ -1/q̄`.
    pub projective_classes: Vec<Vec<usize>>,
    /// Euclidean distance from each omitted point to the closed image `Ā(R)`.
    pub clearance: [f64; 4],
    pub chordal_clearance: [f64; 4],
    /// Smallest distance from each omitted point to a sampled Gauss value.
    pub sampled_min_distance: [f64; 4],
    pub sampled_modulus_range: (f64, f64),
    pub sample_count: usize,
}

/// Distance from `q` to `{1/R <= |w| <= R}`, zero inside.
pub fn annulus_clearance(q: Complex64, r: f64) -> f64 {
    let m = q.norm();
    if m > r {
        m - r
    } else if m * r < 1.0 {
        (1.0 - r * m) / r
    } else {
        0.0
    }
}

/// The Gauss map of the construction is `z ↦ z^k` on `A(R^{1/k})`, whose
/// image is `A(R)`; compares it against the omitted punctures.
pub fn gauss_report(
    config: &PunctureConfig,
    k: u32,
    r: f64,
    gauss_samples: &[Complex64],
) -> GaussReport {
    let omitted = config.punctures();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, &q) in omitted.iter().enumerate() {
        let partner = involution(q);
        match classes.iter_mut().find(|c| {
            c.iter().any(|&j| (omitted[j] - partner).norm() <= 1e-12 * (1.0 + partner.norm()))
        }) {
            Some(class) => class.push(i),
            None => classes.push(vec![i]),
        }
    }
    let clearance = omitted.map(|q| annulus_clearance(q, r));
    let chordal_clearance = omitted.map(|q| {
        let m = q.norm();
        let nearest = if m > r {
            q * (r / m)
        } else if m * r < 1.0 {
            q / (m * r)
        } else {
            q
        };
        chordal_distance(q, nearest)
    });
    let mut sampled_min_distance = [f64::INFINITY; 4];
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for &g in gauss_samples {
        lo = lo.min(g.norm());
        hi = hi.max(g.norm());
        for (i, &q) in omitted.iter().enumerate() {
            sampled_min_distance[i] = sampled_min_distance[i].min((g - q).norm());
        }
    }
    GaussReport {
        k,
        r,
        omitted: omitted.map(|q| (q.re, q.im)),
        projective_classes: classes,
        clearance,
        chordal_clearance,
        sampled_min_distance,
        sampled_modulus_range: (lo, hi),
        sample_count: gauss_samples.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::voss::validate_punctures;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn affine() -> ImmersionData {
        // F = (z, -iz, 0) gives X = (x, y, 0) - (1, 0, 0)
        let a = Annulus::symmetric(2.0).unwrap();
        let psi = [
            FormOnAnnulus::new(LaurentCoefficients::from_terms(&[(1, c(1.0, 0.0))], a).unwrap()),
            FormOnAnnulus::new(LaurentCoefficients::from_terms(&[(1, c(0.0, -1.0))], a).unwrap()),
            FormOnAnnulus::new(LaurentCoefficients::from_terms(&[(1, c(0.0, 0.0))], a).unwrap()),
        ];
        integrate(&psi).unwrap()
    }

    #[test]
    fn base_point_maps_to_origin() {
        let x = affine();
        assert_eq!(x.position(c(1.0, 0.0)).unwrap(), [0.0, 0.0, 0.0]);
        let p = x.position(c(1.25, 0.5)).unwrap();
        assert!((p[0] - 0.25).abs() < 1e-15 && (p[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn affine_laplacian_vanishes_exactly() {
        let x = affine();
        let h = 1.0 / 1024.0;
        let centers = [c(1.0, 0.0), c(0.75, 0.5), c(-1.25, 0.25)];
        assert_eq!(x.harmonicity_defect(h, &centers).unwrap(), 0.0);
    }

    #[test]
    fn non_exact_forms_do_not_integrate() {
        let a = Annulus::symmetric(2.0).unwrap();
        let log = FormOnAnnulus::new(LaurentCoefficients::from_terms(&[(0, c(1.0, 0.0))], a).unwrap());
        assert!(integrate(&[log.clone(), log.clone(), log]).is_err());
    }

    #[test]
    fn clearance_examples() {
        assert_eq!(annulus_clearance(c(2.0, 0.0), 1.5), 0.5);
        assert_eq!(annulus_clearance(c(-0.5, 0.0), 1.5), 1.0 / 6.0);
        assert_eq!(annulus_clearance(c(1.0, 0.0), 1.5), 0.0);
    }

    #[test]
    fn omitted_points_form_two_classes() {
        let cfg = validate_punctures(c(2.0, 0.0), c(0.0, 3.0)).unwrap();
        let rep = gauss_report(&cfg, 3, 1.5, &[]);
        assert_eq!(rep.projective_classes, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(rep.clearance[0], 0.5);
        assert_eq!(rep.clearance[2], 1.0 / 6.0);
        assert!(rep.chordal_clearance.iter().all(|&d| d > 0.0));
    }

    #[test]
    fn chordal_distance_to_infinity_limit() {
        let d = chordal_distance(c(0.0, 0.0), c(1e12, 0.0));
        assert!((d - 2.0).abs() < 1e-9);
    }
}
