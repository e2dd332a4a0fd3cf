use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point {z} lies outside the annulus {inner} < |z| < {outer}")]
    OutsideAnnulus { z: Complex64, inner: f64, outer: f64 },

    #[error("annuli ({0}, {1}) and ({2}, {3}) do not intersect")]
    DisjointAnnuli(f64, f64, f64, f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("form is not exact: residue {residue} exceeds tolerance {tolerance:e}")]
    NonExact { residue: Complex64, tolerance: f64 },

    #[error("invalid punctures: {0}")]
    InvalidPuncture(String),

    #[error("punctures incompatible with the unit annulus: {0}")]
    UnitAnnulus(String),

    #[error("evaluation at or through a pole near {0}")]
    Pole(Complex64),

    #[error("all three form densities vanish at {0}")]
    Regularity(Complex64),

    #[error("degenerate residue equation: {0}")]
    DegenerateEquation(String),

    #[error("no valid root: {0}")]
    NoValidRoot(String),

    #[error("a zero of the multiplier (modulus {modulus:.6}) lies in the closed annulus [{inner:.6}, {outer:.6}]")]
    ZeroInAnnulus { modulus: f64, inner: f64, outer: f64 },

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("non-finite coefficient at index {0}")]
    NonFinite(i64),

    #[error("config error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
