//! Weierstrass triples `(Φ₁, Φ₂, Φ₃)` with
//! `Φ₁ = ½η(1-g²)`, `Φ₂ = (i/2)η(1+g²)`, `Φ₃ = ηg`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::FormOnAnnulus;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub type Evaluator = Arc<dyn Fn(Complex64) -> Result<Complex64> + Send + Sync>;

#[derive(Clone)]
pub enum WeierstrassTriple {
    /// Forms `φ_j dz/z` given by Laurent coefficients.
    Laurent([FormOnAnnulus; 3]),
    /// A Gauss map `g` and the `dz` density of `η`, evaluated pointwise.
    Pair { g: Evaluator, eta: Evaluator },
}

impl fmt::Debug for WeierstrassTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Laurent(forms) => f.debug_tuple("Laurent").field(forms).finish(),
            Self::Pair { .. } => f.write_str("Pair { .. }"),
        }
    }
}

/// A point of the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GaussValue {
    Finite(Complex64),
    Infinity,
}

impl GaussValue {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            Self::Finite(z) => Some(z),
            Self::Infinity => None,
        }
    }
}

pub fn forms_from_pair(g: Evaluator, eta: Evaluator) -> WeierstrassTriple {
    WeierstrassTriple::Pair { g, eta }
}

impl WeierstrassTriple {
    /// The three component values at `z`: `φ_j(z)` for the Laurent
    /// representation, `dz` densities for the pointwise one.
    pub fn components(&self, z: Complex64) -> Result<[Complex64; 3]> {
        match self {
            Self::Laurent(forms) => Ok([
                forms[0].phi.evaluate(z)?,
                forms[1].phi.evaluate(z)?,
                forms[2].phi.evaluate(z)?,
            ]),
            Self::Pair { g, eta } => {
                let (g, h) = (g(z)?, eta(z)?);
                let g2 = g * g;
                Ok([0.5 * h * (1.0 - g2), 0.5 * I * h * (1.0 + g2), h * g])
            }
        }
    }

    /// `-(Φ₁ + iΦ₂)/Φ₃`. Where `Φ₃` vanishes the pointwise representation
    /// answers through `g`; the Laurent one reports `∞`.
    pub fn gauss_map(&self, z: Complex64) -> Result<GaussValue> {
        let [p1, p2, p3] = self.components(z)?;
        let num = -(p1 + I * p2);
        if !p3.is_zero() {
            return Ok(GaussValue::Finite(num / p3));
        }
        match self {
            Self::Pair { g, .. } if !(p1.is_zero() && p2.is_zero()) => {
                Ok(GaussValue::Finite(g(z)?))
            }
            Self::Pair { .. } => Err(Error::Regularity(z)),
            Self::Laurent(_) if num.is_zero() => Err(Error::Regularity(z)),
            Self::Laurent(_) => Ok(GaussValue::Infinity),
        }
    }

    /// `λ` with `ds = λ|dz|`.
    pub fn metric_density(&self, z: Complex64) -> Result<f64> {
        let sum: f64 = self.components(z)?.iter().map(|c| c.norm_sqr()).sum();
        Ok(match self {
            Self::Laurent(_) => sum.sqrt() / z.norm(),
            Self::Pair { .. } => sum.sqrt(),
        })
    }

    /// `max |ΣΦ_j²| / (Σ|Φ_j|)²` over `samples`.
    pub fn conformality_defect(&self, samples: &[Complex64]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for &z in samples {
            let c = self.components(z)?;
            let sq: Complex64 = c.iter().map(|v| v * v).sum();
            let scale: f64 = c.iter().map(|v| v.norm()).sum();
            if scale > 0.0 {
                worst = worst.max(sq.norm() / (scale * scale));
            }
        }
        Ok(worst)
    }

    /// `min Σ|φ_j(z)|²` over `samples`.
    pub fn regularity_min(&self, samples: &[Complex64]) -> Result<f64> {
        let mut best = f64::INFINITY;
        for &z in samples {
            let s: f64 = self.components(z)?.iter().map(|c| c.norm_sqr()).sum();
            best = best.min(s);
        }
        Ok(best)
    }

    /// Multiplies one component by `factor`; only meaningful as a negative
    /// control, since it breaks conformality.
    pub fn with_scaled_component(&self, j: usize, factor: Complex64) -> Result<Self> {
        match self {
            Self::Laurent(forms) => {
                let mut forms = forms.clone();
                forms[j] = FormOnAnnulus::new(forms[j].phi.scaled(factor));
                Ok(Self::Laurent(forms))
            }
            Self::Pair { .. } => Err(Error::Parameter(
                "component scaling needs the Laurent representation".into(),
            )),
        }
    }
}
