//! Dense, band-limited Laurent series on annuli.
//!
//! A series is stored as the coefficients `a_n` for `n` in `[-N, N]`, where
//! `N` is the band. Holomorphic 1-forms are always written `φ(z) dz/z`, so the
//! residue of a form at the origin is simply `a_0` of its `φ`.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Default truncation band for restricted Weierstrass data.
pub const DEFAULT_BAND: usize = 48;

/// Relative residue tolerance: a form is exact when `|a_0| <= τ · max |a_n|`.
pub const RESIDUE_REL_TOL: f64 = 1e-12;

/// Open annulus `inner < |z| < outer`. `inner` may be `0` and `outer` may be
/// infinite for Laurent polynomials.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Annulus {
    pub inner: f64,
    pub outer: f64,
}

impl Annulus {
    pub fn new(inner: f64, outer: f64) -> Result<Self> {
        if !(inner >= 0.0 && inner < outer) || inner.is_nan() || outer.is_nan() {
            return Err(Error::Domain(format!(
                "annulus needs 0 <= inner < outer, got ({inner}, {outer})"
            )));
        }
        Ok(Self { inner, outer })
    }

    /// `A(R) = {1/R < |z| < R}`.
    pub fn symmetric(r: f64) -> Result<Self> {
        if !(r > 1.0) {
            return Err(Error::Domain(format!("A(R) needs R > 1, got {r}")));
        }
        Self::new(1.0 / r, r)
    }

    /// The punctured plane, where every Laurent polynomial converges.
    pub fn punctured_plane() -> Self {
        Self {
            inner: 0.0,
            outer: f64::INFINITY,
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let r = z.norm();
        self.inner < r && r < self.outer
    }

    pub fn contains_unit_circle(&self) -> bool {
        self.inner < 1.0 && 1.0 < self.outer
    }

    pub fn intersect(&self, other: &Annulus) -> Result<Annulus> {
        let inner = self.inner.max(other.inner);
        let outer = self.outer.min(other.outer);
        if inner < outer {
            Ok(Annulus { inner, outer })
        } else {
            Err(Error::DisjointAnnuli(
                self.inner,
                self.outer,
                other.inner,
                other.outer,
            ))
        }
    }

    /// Preimage under `z ↦ z^k`.
    pub fn kth_root(&self, k: u32) -> Annulus {
        let e = 1.0 / k as f64;
        Annulus {
            inner: self.inner.powf(e),
            outer: self.outer.powf(e),
        }
    }
}

/// Which coefficient symmetry encodes compatibility with `I(z) = -1/z̄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryMode {
    /// `f ∘ I = f̄`: `a_{-n} = (-1)^n conj(a_n)`.
    Function,
    /// `I*(φ dz/z) = conj(φ dz/z)`: `a_{-n} = (-1)^{n+1} conj(a_n)`.
    Form,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentCoefficients {
    band: usize,
    coeffs: Vec<Complex64>,
    annulus: Annulus,
}

impl LaurentCoefficients {
    /// Builds a series from a dense slice covering `[-band, band]`.
    pub fn from_dense(band: usize, coeffs: Vec<Complex64>, annulus: Annulus) -> Result<Self> {
        if coeffs.len() != 2 * band + 1 {
            return Err(Error::Domain(format!(
                "band {band} needs {} coefficients, got {}",
                2 * band + 1,
                coeffs.len()
            )));
        }
        if let Some(i) = coeffs.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite(i as i64 - band as i64));
        }
        Ok(Self {
            band,
            coeffs,
            annulus,
        })
    }

    /// Builds a series from sparse `(index, value)` pairs; the band is the
    /// largest `|index|` supplied. Repeated indices accumulate.
    pub fn from_terms(terms: &[(i64, Complex64)], annulus: Annulus) -> Result<Self> {
        let band = terms.iter().map(|(n, _)| n.unsigned_abs() as usize).max().unwrap_or(0);
        let mut coeffs = vec![Complex64::zero(); 2 * band + 1];
        for &(n, c) in terms {
            coeffs[(n + band as i64) as usize] += c;
        }
        Self::from_dense(band, coeffs, annulus)
    }

    pub fn zero(band: usize, annulus: Annulus) -> Self {
        Self {
            band,
            coeffs: vec![Complex64::zero(); 2 * band + 1],
            annulus,
        }
    }

    pub fn band(&self) -> usize {
        self.band
    }

    pub fn annulus(&self) -> Annulus {
        self.annulus
    }

    /// Coefficient of `z^n`; zero outside the band.
    pub fn coeff(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.band {
            Complex64::zero()
        } else {
            self.coeffs[(n + self.band as i64) as usize]
        }
    }

    /// `(index, coefficient)` pairs in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let b = self.band as i64;
        self.coeffs.iter().enumerate().map(move |(i, &c)| (i as i64 - b, c))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            band: self.band,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            annulus: self.annulus,
        }
    }

    /// Replaces one coefficient, widening the band if needed.
    pub fn with_coeff(&self, n: i64, value: Complex64) -> Self {
        let band = self.band.max(n.unsigned_abs() as usize);
        let mut coeffs = vec![Complex64::zero(); 2 * band + 1];
        for (i, c) in self.iter() {
            coeffs[(i + band as i64) as usize] = c;
        }
        coeffs[(n + band as i64) as usize] = value;
        Self {
            band,
            coeffs,
            annulus: self.annulus,
        }
    }

    pub fn with_annulus(mut self, annulus: Annulus) -> Self {
        self.annulus = annulus;
        self
    }

    /// Sums `a_n z^n` in ascending index order.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        if !self.annulus.contains(z) {
            return Err(Error::OutsideAnnulus {
                z,
                inner: self.annulus.inner,
                outer: self.annulus.outer,
            });
        }
        Ok(self.evaluate_unchecked(z))
    }

    pub(crate) fn evaluate_unchecked(&self, z: Complex64) -> Complex64 {
        let n = self.band;
        let mut pos = Vec::with_capacity(n + 1);
        let mut neg = Vec::with_capacity(n + 1);
        let w = z.inv();
        let (mut p, mut q) = (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
        for _ in 0..=n {
            pos.push(p);
            neg.push(q);
            p *= z;
            q *= w;
        }
        let mut acc = Complex64::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let power = if i < n { neg[n - i] } else { pos[i - n] };
            acc += c * power;
        }
        acc
    }

    /// Cauchy product. Bands add; the annulus is the intersection.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let annulus = self.annulus.intersect(&other.annulus)?;
        let band = self.band + other.band;
        let mut coeffs = vec![Complex64::zero(); 2 * band + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_dense(band, coeffs, annulus)
    }

    /// Pullback under `T_k(z) = z^k`: index `n` moves to `k n`.
    pub fn pullback_power(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Parameter("pullback exponent must be >= 1".into()));
        }
        let k = k as usize;
        let band = self.band * k;
        let mut coeffs = vec![Complex64::zero(); 2 * band + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            // offset i - N maps to k(i - N) + kN = k i
            coeffs[k * i] = c;
        }
        Ok(Self {
            band,
            coeffs,
            annulus: self.annulus.kth_root(k as u32),
        })
    }

    /// Largest violation of the coefficient symmetry for `mode`.
    pub fn symmetry_defect(&self, mode: SymmetryMode) -> Result<f64> {
        if !self.annulus.contains_unit_circle() {
            return Err(Error::Domain(
                "symmetry check needs the unit circle inside the annulus".into(),
            ));
        }
        let defect = (0..=self.band as i64)
            .map(|n| {
                let odd = n % 2 == 1;
                let flip = match mode {
                    SymmetryMode::Function => odd,
                    SymmetryMode::Form => !odd,
                };
                let image = if flip {
                    -self.coeff(n).conj()
                } else {
                    self.coeff(n).conj()
                };
                (self.coeff(-n) - image).norm()
            })
            .fold(0.0, f64::max);
        Ok(defect)
    }
}

/// A holomorphic 1-form `φ(z) dz/z` on an annulus.
#[derive(Clone, Debug, PartialEq)]
pub struct FormOnAnnulus {
    pub phi: LaurentCoefficients,
}

impl FormOnAnnulus {
    pub fn new(phi: LaurentCoefficients) -> Self {
        Self { phi }
    }

    pub fn annulus(&self) -> Annulus {
        self.phi.annulus()
    }

    /// Residue at the origin: the index-0 coefficient of `φ`.
    pub fn residue(&self) -> Complex64 {
        self.phi.coeff(0)
    }

    /// `|residue| / max |a_n|`, or 0 for the zero form.
    pub fn relative_residue(&self) -> f64 {
        let scale = self.phi.max_abs();
        if scale == 0.0 {
            0.0
        } else {
            self.residue().norm() / scale
        }
    }

    /// The `dz` density `φ(z)/z`.
    pub fn density(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.phi.evaluate(z)? / z)
    }

    /// Primitive `F` with `dF = φ dz/z` and `F_0 = 0`, using the default
    /// relative residue tolerance.
    pub fn antiderivative(&self) -> Result<LaurentCoefficients> {
        self.antiderivative_with_tolerance(RESIDUE_REL_TOL)
    }

    pub fn antiderivative_with_tolerance(&self, rel_tol: f64) -> Result<LaurentCoefficients> {
        let tolerance = rel_tol * self.phi.max_abs();
        let residue = self.residue();
        if residue.norm() > tolerance {
            return Err(Error::NonExact {
                residue,
                tolerance,
            });
        }
        let coeffs = self
            .phi
            .iter()
            .map(|(n, a)| if n == 0 { Complex64::zero() } else { a / n as f64 })
            .collect();
        LaurentCoefficients::from_dense(self.phi.band(), coeffs, self.phi.annulus())
    }
}
