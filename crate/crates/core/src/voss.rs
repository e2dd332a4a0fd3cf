//! Voss-type Weierstrass data on the four-punctured sphere.
//!
//! `ĝ(z) = z` and `η̂ = i dz / ((z-α)(z-β)(ᾱz+1)(β̄z+1))`. The puncture set
//! `{α, β, -1/ᾱ, -1/β̄}` is closed under `Î(z) = -1/z̄`, which is fixed-point
//! free and satisfies `Î*(Φ̂_j) = conj(Φ̂_j)`.
//!
//! With `|α|, |β| > 1` the unit circle separates the punctures into two
//! `Î`-swapped pairs, so the data restricts to every `A(R)` with
//! `1 < R < min(|α|, |β|)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::laurent::{Annulus, FormOnAnnulus, LaurentCoefficients};

/// Default number of unit-circle samples for coefficient extraction.
pub const DEFAULT_SAMPLES: usize = 4096;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `I(z) = -1/z̄`.
pub fn involution(z: Complex64) -> Complex64 {
    -z.conj().inv()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PunctureConfig {
    alpha: Complex64,
    beta: Complex64,
}

impl PunctureConfig {
    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// `[α, β, -1/ᾱ, -1/β̄]`: the two outer punctures, then their images.
    pub fn punctures(&self) -> [Complex64; 4] {
        [
            self.alpha,
            self.beta,
            involution(self.alpha),
            involution(self.beta),
        ]
    }
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-12 * (1.0 + a.norm().max(b.norm()))
}

pub fn validate_punctures(alpha: Complex64, beta: Complex64) -> Result<PunctureConfig> {
    for (name, p) in [("alpha", alpha), ("beta", beta)] {
        if !p.re.is_finite() || !p.im.is_finite() {
            return Err(Error::InvalidPuncture(format!("{name} = {p} is not finite")));
        }
        if p.is_zero() {
            return Err(Error::InvalidPuncture(format!("{name} must be nonzero")));
        }
    }
    if close(alpha, beta) {
        return Err(Error::InvalidPuncture(format!("alpha = beta = {alpha}")));
    }
    if close(alpha, involution(beta)) {
        return Err(Error::InvalidPuncture(format!(
            "alpha = {alpha} coincides with -1/conj(beta)"
        )));
    }
    for (name, p) in [("alpha", alpha), ("beta", beta)] {
        if p.norm() <= 1.0 {
            return Err(Error::UnitAnnulus(format!(
                "|{name}| = {} must exceed 1",
                p.norm()
            )));
        }
    }
    Ok(PunctureConfig { alpha, beta })
}

/// Values of the data at one point: the `η̂` density and the `dz` densities
/// of `Φ̂_1, Φ̂_2, Φ̂_3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VossValues {
    pub eta: Complex64,
    pub phi_hat: [Complex64; 3],
}

/// One series per coordinate form.
pub type Triple<T> = [T; 3];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VossData {
    config: PunctureConfig,
}

impl VossData {
    pub fn new(config: PunctureConfig) -> Self {
        Self { config }
    }

    pub fn config(&self) -> &PunctureConfig {
        &self.config
    }

    pub fn gauss(&self, z: Complex64) -> Complex64 {
        z
    }

    /// `(z-α)(z-β)(ᾱz+1)(β̄z+1)`.
    fn denominator(&self, z: Complex64) -> Complex64 {
        let (a, b) = (self.config.alpha, self.config.beta);
        (z - a) * (z - b) * (a.conj() * z + 1.0) * (b.conj() * z + 1.0)
    }

    fn check_regular(&self, z: Complex64) -> Result<()> {
        if self.config.punctures().iter().any(|&p| close(p, z)) {
            return Err(Error::Pole(z));
        }
        Ok(())
    }

    pub fn eta_density(&self, z: Complex64) -> Result<Complex64> {
        self.check_regular(z)?;
        let h = I / self.denominator(z);
        if !h.re.is_finite() || !h.im.is_finite() {
            return Err(Error::Pole(z));
        }
        Ok(h)
    }

    pub fn eval(&self, z: Complex64) -> Result<VossValues> {
        let eta = self.eta_density(z)?;
        let g = self.gauss(z);
        let g2 = g * g;
        Ok(VossValues {
            eta,
            phi_hat: [
                0.5 * (1.0 - g2) * eta,
                0.5 * I * (1.0 + g2) * eta,
                g * eta,
            ],
        })
    }

    /// `φ_j(z) = z · (Φ̂_j density)(z)`, the coefficient functions of the
    /// forms written as `φ_j dz/z`.
    pub fn phi(&self, z: Complex64) -> Result<Triple<Complex64>> {
        let v = self.eval(z)?;
        Ok(v.phi_hat.map(|p| z * p))
    }

    /// Metric density `½|η̂|(1+|z|²)` of `dŝ`.
    pub fn metric_density(&self, z: Complex64) -> Result<f64> {
        Ok(0.5 * self.eta_density(z)?.norm() * (1.0 + z.norm_sqr()))
    }

    /// Metric density in the chart `w = 1/z` around `∞`; finite and positive
    /// at `w = 0`.
    pub fn metric_density_at_infinity(&self, w: Complex64) -> f64 {
        let (a, b) = (self.config.alpha, self.config.beta);
        let d = (1.0 - a * w) * (1.0 - b * w) * (a.conj() + w) * (b.conj() + w);
        0.5 * (1.0 + w.norm_sqr()) / d.norm()
    }

    /// Largest violation over `samples` of `ĝ∘Î = -1/conj(ĝ)` and
    /// `Î*(η̂) = -conj(η̂ ĝ²)`.
    pub fn involution_defect(&self, samples: &[Complex64]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for &z in samples {
            let w = involution(z);
            let g_defect = (self.gauss(w) + self.gauss(z).conj().inv()).norm();
            // Î*(h dz) = h(-1/z̄) dz̄/z̄²
            let pulled = self.eta_density(w)? / (z.conj() * z.conj());
            let g = self.gauss(z);
            let target = -(self.eta_density(z)? * g * g).conj();
            worst = worst.max(g_defect).max((pulled - target).norm());
        }
        Ok(worst)
    }

    fn check_radius(&self, r: f64) -> Result<()> {
        let limit = self.config.alpha.norm().min(self.config.beta.norm());
        if !(r > 1.0 && r < limit) {
            return Err(Error::Domain(format!(
                "annulus radius must satisfy 1 < R < {limit}, got {r}"
            )));
        }
        Ok(())
    }

    /// Restricts the data to `A(R)` by sampling `φ_j` on the unit circle and
    /// taking a discrete Fourier transform.
    pub fn restrict_to_annulus(
        &self,
        r: f64,
        band: usize,
        sample_count: usize,
    ) -> Result<Triple<FormOnAnnulus>> {
        self.check_radius(r)?;
        if !sample_count.is_power_of_two() || sample_count < 4 * band.max(1) {
            return Err(Error::Domain(format!(
                "sample count must be a power of two >= 4N = {}, got {sample_count}",
                4 * band
            )));
        }
        let annulus = Annulus::symmetric(r)?;
        let fft = FftPlanner::<f64>::new().plan_fft_forward(sample_count);
        let mut buffers: Triple<Vec<Complex64>> = Default::default();
        for s in 0..sample_count {
            let theta = 2.0 * PI * s as f64 / sample_count as f64;
            let z = Complex64::from_polar(1.0, theta);
            let phi = self.phi(z)?;
            for j in 0..3 {
                buffers[j].push(phi[j]);
            }
        }
        let scale = 1.0 / sample_count as f64;
        let mut out = Vec::with_capacity(3);
        for mut buf in buffers {
            fft.process(&mut buf);
            let coeffs = (-(band as i64)..=band as i64)
                .map(|n| buf[n.rem_euclid(sample_count as i64) as usize] * scale)
                .collect();
            out.push(FormOnAnnulus::new(LaurentCoefficients::from_dense(
                band, coeffs, annulus,
            )?));
        }
        Ok(out.try_into().expect("three forms"))
    }

    /// `(pole, residue)` of `numerator(z)/D(z)` at each of the four simple
    /// poles, where `D` is the `η̂` denominator.
    fn partial_fractions(
        &self,
        numerator: impl Fn(Complex64) -> Complex64,
    ) -> [(Complex64, Complex64); 4] {
        let poles = self.config.punctures();
        let lead = self.config.alpha.conj() * self.config.beta.conj();
        poles.map(|p| {
            let derivative = poles
                .iter()
                .filter(|&&q| q != p)
                .fold(lead, |acc, &q| acc * (p - q));
            (p, numerator(p) / derivative)
        })
    }

    /// Partial-fraction decomposition of the `η̂` density.
    pub fn eta_partial_fractions(&self) -> [(Complex64, Complex64); 4] {
        self.partial_fractions(|_| I)
    }

    /// Closed-form Laurent coefficients of `φ_j` on the natural annulus
    /// `max(1/|α|, 1/|β|) < |z| < min(|α|, |β|)`, from partial fractions and
    /// geometric series.
    pub fn analytic_coefficients(&self, band: usize) -> Result<Triple<LaurentCoefficients>> {
        let outer = self.config.alpha.norm().min(self.config.beta.norm());
        let annulus = Annulus::new(1.0 / outer, outer)?;
        let numerators: [fn(Complex64) -> Complex64; 3] = [
            |z| I * z * 0.5 * (1.0 - z * z),
            |z| I * z * 0.5 * I * (1.0 + z * z),
            |z| I * z * z,
        ];
        let mut out = Vec::with_capacity(3);
        for numerator in numerators {
            let mut coeffs = vec![Complex64::zero(); 2 * band + 1];
            for (p, r) in self.partial_fractions(numerator) {
                if p.norm() > 1.0 {
                    // r/(z-p) = -(r/p) Σ_{n>=0} (z/p)^n
                    let w = p.inv();
                    let mut term = -r * w;
                    for n in 0..=band {
                        coeffs[band + n] += term;
                        term *= w;
                    }
                } else {
                    // r/(z-p) = r Σ_{n>=1} p^{n-1} z^{-n}
                    let mut term = r;
                    for n in 1..=band {
                        coeffs[band - n] += term;
                        term *= p;
                    }
                }
            }
            out.push(LaurentCoefficients::from_dense(band, coeffs, annulus)?);
        }
        Ok(out.try_into().expect("three series"))
    }

    /// Metric lengths `L(ε)` of the ray segment from `target/2` toward
    /// `target`, stopped at distance `ε` from it.
    pub fn completeness_probe(&self, target: Complex64, epsilons: &[f64]) -> Result<Vec<f64>> {
        if target.is_zero() || !target.re.is_finite() || !target.im.is_finite() {
            return Err(Error::Domain("probe target must be finite and nonzero".into()));
        }
        if epsilons.is_empty() {
            return Err(Error::Domain("empty epsilon list".into()));
        }
        let start = 0.5 * target.norm();
        let dir = target / target.norm();
        let others: Vec<Complex64> = self
            .config
            .punctures()
            .into_iter()
            .filter(|&p| !close(p, target))
            .collect();
        let clearance = others
            .iter()
            .map(|&p| (p - target).norm())
            .fold(start, f64::min);
        for w in epsilons.windows(2) {
            if !(w[1] < w[0]) {
                return Err(Error::Domain("epsilons must be strictly decreasing".into()));
            }
        }
        if !(epsilons[0] < clearance) || !(epsilons[epsilons.len() - 1] > 0.0) {
            return Err(Error::Domain(format!(
                "epsilons must lie in (0, {clearance})"
            )));
        }
        // segment [target/2, target]
        for &p in &others {
            let t = ((p - target / 2.0) * dir.conj()).re;
            let foot = target / 2.0 + dir * t.clamp(0.0, start);
            if (p - foot).norm() < 1e-9 {
                return Err(Error::Pole(p));
            }
        }

        // integrate in s = ln r, r = distance to target
        let integrand = |s: f64| -> Result<f64> {
            let r = s.exp();
            Ok(self.metric_density(target - dir * r)? * r)
        };
        let mut lengths = Vec::with_capacity(epsilons.len());
        let mut upper = start.ln();
        let mut total = 0.0;
        for &eps in epsilons {
            let lower = eps.ln();
            total += simpson(&integrand, lower, upper)?;
            lengths.push(total);
            upper = lower;
        }
        Ok(lengths)
    }
}

fn simpson(f: &impl Fn(f64) -> Result<f64>, a: f64, b: f64) -> Result<f64> {
    let panels = (((b - a) * 256.0).ceil() as usize).max(2);
    let n = panels + panels % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a)? + f(b)?;
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * i as f64)?;
    }
    Ok(acc * h / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::SymmetryMode;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn standard() -> VossData {
        VossData::new(validate_punctures(c(2.0, 0.0), c(0.0, 3.0)).unwrap())
    }

    #[test]
    fn validation_examples() {
        assert!(validate_punctures(c(2.0, 0.0), c(0.0, 3.0)).is_ok());
        assert!(matches!(
            validate_punctures(c(2.0, 0.0), c(2.0, 0.0)),
            Err(Error::InvalidPuncture(_))
        ));
        assert!(matches!(
            validate_punctures(c(2.0, 0.0), c(-0.5, 0.0)),
            Err(Error::InvalidPuncture(_))
        ));
        assert!(matches!(
            validate_punctures(c(0.0, 0.0), c(3.0, 0.0)),
            Err(Error::InvalidPuncture(_))
        ));
        assert!(matches!(
            validate_punctures(c(1.0, 0.0), c(0.0, 3.0)),
            Err(Error::UnitAnnulus(_))
        ));
        assert!(matches!(
            validate_punctures(c(2.0, 0.0), c(0.0, 0.7)),
            Err(Error::UnitAnnulus(_))
        ));
    }

    #[test]
    fn puncture_set_closed_under_involution() {
        let cfg = standard().config;
        let ps = cfg.punctures();
        for p in ps {
            let image = involution(p);
            assert!(ps.iter().any(|&q| (q - image).norm() < 1e-15));
        }
    }

    #[test]
    fn eval_at_origin() {
        let v = standard().eval(Complex64::zero()).unwrap();
        assert!((v.eta - c(1.0 / 6.0, 0.0)).norm() < 1e-16);
        assert_eq!(v.phi_hat[2], Complex64::zero());
    }

    #[test]
    fn eval_at_puncture_is_pole() {
        let d = standard();
        for p in d.config.punctures() {
            assert!(matches!(d.eval(p), Err(Error::Pole(_))));
        }
    }

    #[test]
    fn conformal_identity_pointwise() {
        let d = standard();
        for z in [c(0.3, 0.1), c(-1.2, 0.7), c(5.0, -4.0), c(0.01, 0.0)] {
            let v = d.eval(z).unwrap();
            let sum: Complex64 = v.phi_hat.iter().map(|p| p * p).sum();
            let scale: f64 = v.phi_hat.iter().map(|p| p.norm_sqr()).sum();
            assert!(sum.norm() <= 1e-14 * scale);
        }
    }

    #[test]
    fn gauss_relation_is_identity_at_one_plus_i() {
        let d = standard();
        let z = c(1.0, 1.0);
        let w = involution(z);
        assert_eq!((d.gauss(w) + d.gauss(z).conj().inv()).norm(), 0.0);
    }

    #[test]
    fn involution_defect_symmetric_under_swap() {
        let d = standard();
        let zs = [c(1.1, 0.2), c(-0.8, 0.3), c(0.2, -1.3)];
        for z in zs {
            let a = d.involution_defect(&[z]).unwrap();
            let b = d.involution_defect(&[involution(z)]).unwrap();
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn infinity_chart_positive() {
        let d = standard();
        let at_inf = d.metric_density_at_infinity(Complex64::zero());
        assert!((at_inf - 1.0 / 12.0).abs() < 1e-16);
        // agrees with the z chart transported by |dz/dw| = 1/|w|²
        let w = c(1e-3, 2e-3);
        let z = w.inv();
        let transported = d.metric_density(z).unwrap() / w.norm_sqr();
        assert!((transported - d.metric_density_at_infinity(w)).abs() < 1e-12);
    }

    #[test]
    fn restrict_rejects_bad_radius_and_samples() {
        let d = standard();
        assert!(d.restrict_to_annulus(2.5, 8, 64).is_err());
        assert!(d.restrict_to_annulus(1.0, 8, 64).is_err());
        assert!(d.restrict_to_annulus(1.5, 8, 48).is_err());
        assert!(d.restrict_to_annulus(1.5, 48, 128).is_err());
    }

    #[test]
    fn restricted_forms_are_form_symmetric() {
        let forms = standard().restrict_to_annulus(1.5, 48, 4096).unwrap();
        for f in &forms {
            assert!(f.phi.symmetry_defect(SymmetryMode::Form).unwrap() < 1e-10);
        }
    }

    #[test]
    fn eta_partial_fraction_residues_sum_to_zero() {
        let sum: Complex64 = standard().eta_partial_fractions().iter().map(|(_, r)| r).sum();
        assert!(sum.norm() < 1e-15);
    }

    #[test]
    fn probe_rejects_bad_inputs() {
        let d = standard();
        let alpha = c(2.0, 0.0);
        assert!(d.completeness_probe(alpha, &[1e-3, 1e-2]).is_err());
        assert!(d.completeness_probe(alpha, &[]).is_err());
        assert!(d.completeness_probe(alpha, &[2.0]).is_err());
        assert!(d.completeness_probe(Complex64::zero(), &[1e-2]).is_err());
    }

    #[test]
    fn probe_through_another_puncture_is_pole_error() {
        // the probe toward β = 4 starts at |z| = 2, which is α
        let d = VossData::new(validate_punctures(c(2.0, 0.0), c(4.0, 0.0)).unwrap());
        assert!(matches!(
            d.completeness_probe(c(4.0, 0.0), &[1e-2]),
            Err(Error::Pole(_))
        ));
    }
}
