//! The rational multiplier
//! `f(z) = (z - m₁)(z - m₂)(m₁z + 1)(m₂z + 1) / z²`.
//!
//! With `s = m₁ + m₂` and `p = m₁m₂`,
//! `f(z) = p z² + s(1-p) z + (1 - s² + p²) - s(1-p) z⁻¹ + p z⁻²`.
//! Its poles are `0` and `∞`, real parameters make it satisfy `f∘I = f̄`,
//! and the residue of `f dz/z` at the origin is the constant term
//! `(1 - m₁²)(1 - m₂²) - 2m₁m₂`. All identities here are checked in
//! `ℚ(√D)`, never in floating point.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::laurent::{Annulus, LaurentCoefficients};
use crate::quad::{square_free_split, QuadExact};

/// Highest power of `z` in `f`.
pub const DEGREE: u32 = 2;

/// `(1 - m₁²)(1 - m₂²) - 2 m₁ m₂`.
pub fn residue_invariant(m1: &QuadExact, m2: &QuadExact) -> QuadExact {
    let one = QuadExact::from_integer(1);
    let two = QuadExact::from_integer(2);
    (one.clone() - m1.clone() * m1.clone()) * (one - m2.clone() * m2.clone())
        - two * m1.clone() * m2.clone()
}

/// Roots in `m₂` of `(m₁² - 1) m₂² - 2 m₁ m₂ + (1 - m₁²) = 0`, the root with
/// the `+` branch of the quadratic formula first.
///
/// The discriminant `4(m₁² + (m₁² - 1)²)` must be a rational square times
/// `D`. When `radicand` is `None` the square-free part is computed.
pub fn solve_m2(m1: &BigRational, radicand: Option<u64>) -> Result<Vec<QuadExact>> {
    let one = BigRational::one();
    let m1sq = m1 * m1;
    let a = &m1sq - &one;
    if a.is_zero() {
        // linear case -2 m₁ m₂ = 0 forces m₂ = 0, which is not a zero of f
        return Err(Error::NoValidRoot(format!(
            "m1 = {m1} makes the residue equation degenerate (only m2 = 0)"
        )));
    }
    let b = -BigRational::from_integer(2.into()) * m1;
    let c = &one - &m1sq;
    let disc = &b * &b - BigRational::from_integer(4.into()) * &a * &c;

    // sqrt(disc) = sqrt(num·den)/den = (s/den)·√free
    let prod = disc.numer() * disc.denom();
    let (s, free) = square_free_split(&prod, 10_000_000)
        .ok_or_else(|| Error::DegenerateEquation("discriminant too large to factor".into()))?;
    let root_coeff = BigRational::new(s, disc.denom().clone());
    let free = free
        .to_u64()
        .ok_or_else(|| Error::DegenerateEquation("radicand out of range".into()))?;
    let sqrt_disc = if free == 1 {
        QuadExact::rational(root_coeff)
    } else {
        if let Some(d) = radicand {
            if d != free {
                return Err(Error::Parameter(format!(
                    "roots for m1 = {m1} lie in Q(√{free}), not Q(√{d})"
                )));
            }
        }
        QuadExact::new(BigRational::zero(), root_coeff, free)
    };
    let two_a = QuadExact::rational(BigRational::from_integer(2.into()) * &a);
    let minus_b = QuadExact::rational(-b);
    let plus = (minus_b.clone() + sqrt_disc.clone()) / two_a.clone();
    let minus = (minus_b - sqrt_disc) / two_a;
    Ok(vec![plus, minus])
}

/// Exact coefficients of `f` and its zero set.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplierParams {
    pub m1: QuadExact,
    pub m2: QuadExact,
    /// `b_n` for `n = -2..=2`.
    coeffs: [QuadExact; 5],
    /// `[m₁, m₂, -1/m₁, -1/m₂]`.
    pub zeros: [QuadExact; 4],
}

impl MultiplierParams {
    /// Highest power `m` in `f = Σ_{n=1}^m (b_n z^n + (-1)^n b̄_n z^{-n})`.
    pub fn degree(&self) -> u32 {
        DEGREE
    }

    /// `b_n`, zero outside `[-2, 2]`.
    pub fn b(&self, n: i64) -> QuadExact {
        if n.abs() > 2 {
            QuadExact::from_integer(0)
        } else {
            self.coeffs[(n + 2) as usize].clone()
        }
    }

    /// `f` as a Laurent polynomial on the punctured plane.
    pub fn series(&self) -> LaurentCoefficients {
        let terms: Vec<(i64, Complex64)> = (-2..=2)
            .map(|n| (n, Complex64::new(self.b(n).to_f64(), 0.0)))
            .collect();
        LaurentCoefficients::from_terms(&terms, Annulus::punctured_plane())
            .expect("finite exact coefficients")
    }

    /// Direct rational evaluation `(z-m₁)(z-m₂)(m₁z+1)(m₂z+1)/z²`.
    pub fn eval_direct(&self, z: Complex64) -> Complex64 {
        let (m1, m2) = (self.m1.to_f64(), self.m2.to_f64());
        (z - m1) * (z - m2) * (m1 * z + 1.0) * (m2 * z + 1.0) / (z * z)
    }

    pub fn zero_moduli(&self) -> [f64; 4] {
        self.zeros.clone().map(|z| z.abs().to_f64())
    }

    /// No zero of `f` lies on the unit circle, decided exactly.
    pub fn nonvanishing_on_unit_circle(&self) -> bool {
        let one = QuadExact::from_integer(1);
        self.zeros.iter().all(|z| z.abs() != one)
    }
}

pub fn coefficients(m1: &QuadExact, m2: &QuadExact) -> Result<MultiplierParams> {
    if m1.is_zero() || m2.is_zero() {
        return Err(Error::Parameter("m1 and m2 must be nonzero".into()));
    }
    let one = QuadExact::from_integer(1);
    let s = m1.clone() + m2.clone();
    let p = m1.clone() * m2.clone();
    let b1 = s.clone() * (one.clone() - p.clone());
    let b0 = one - s.clone() * s + p.clone() * p.clone();
    let zeros = [
        m1.clone(),
        m2.clone(),
        -m1.recip()?,
        -m2.recip()?,
    ];
    Ok(MultiplierParams {
        m1: m1.clone(),
        m2: m2.clone(),
        coeffs: [p.clone(), -b1.clone(), b0, b1, p],
        zeros,
    })
}

/// Grid resolution for [`annulus_bounds`].
pub const BOUNDS_GRID: (usize, usize) = (64, 512);

/// A constant `c > 1` with `1/c < |f| < c` on the closed annulus
/// `1/ρ <= |z| <= ρ`: the grid extremes inflated by 1%.
pub fn annulus_bounds(params: &MultiplierParams, rho: f64) -> Result<f64> {
    if !(rho > 1.0) || !rho.is_finite() {
        return Err(Error::Domain(format!("annulus bound needs rho > 1, got {rho}")));
    }
    let rho_exact = QuadExact::rational(
        BigRational::from_float(rho).expect("finite rho"),
    );
    let one = QuadExact::from_integer(1);
    for z in &params.zeros {
        let m = z.abs();
        let inside = m.clone() <= rho_exact && (m.clone() * rho_exact.clone()).cmp(&one) != Ordering::Less;
        if inside {
            return Err(Error::ZeroInAnnulus {
                modulus: m.to_f64(),
                inner: 1.0 / rho,
                outer: rho,
            });
        }
    }
    let (nr, nt) = BOUNDS_GRID;
    let (lo, hi) = ((1.0 / rho).ln(), rho.ln());
    let mut sup: f64 = 0.0;
    let mut inf = f64::INFINITY;
    for i in 0..nr {
        let r = (lo + (hi - lo) * i as f64 / (nr - 1) as f64).exp();
        for j in 0..nt {
            let theta = std::f64::consts::TAU * j as f64 / nt as f64;
            let v = params.eval_direct(Complex64::from_polar(r, theta)).norm();
            sup = sup.max(v);
            inf = inf.min(v);
        }
    }
    Ok(sup.max(1.0 / inf).max(1.0) * 1.01)
}

/// Parses a positive radicand; `1` and non-square-free values are rejected.
pub fn check_radicand(d: u64) -> Result<u64> {
    match square_free_split(&BigInt::from(d), 1_000_000) {
        Some((s, free)) if s.is_one() && free > BigInt::one() => Ok(d),
        _ => Err(Error::Parameter(format!("D = {d} is not a square-free integer > 1"))),
    }
}
