//! Nonorientable minimal surfaces from Laurent-series Weierstrass data.
//!
//! The pipeline restricts a Voss surface on the punctured sphere to a
//! symmetric annulus, multiplies by a symmetric Laurent polynomial with
//! vanishing residue, pulls back by `z ↦ z^k` and integrates. The result
//! descends to a Möbius strip whose Gauss map omits two points of `ℝP²`.

// `!(x > 0.0)` rejects NaN along with the out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod construction;
pub mod error;
pub mod immersion;
pub mod laurent;
pub mod mesh;
pub mod multiplier;
pub mod pipeline;
pub mod quad;
pub mod report;
pub mod sampling;
pub mod voss;
pub mod weierstrass;

pub use num_complex::Complex64;

pub use config::{config_hash, RunConfig, STANDARD_CONFIG};
pub use construction::{
    assemble_psi, build_psi, choose_k, metric_comparison, verify_psi, ConstructionParams,
    MetricComparison, PsiReport, VerifyTolerances,
};
pub use error::{Error, Result};
pub use immersion::{gauss_report, integrate, GaussReport, ImmersionData};
pub use laurent::{Annulus, FormOnAnnulus, LaurentCoefficients, SymmetryMode};
pub use mesh::{build_mesh, parse_obj, Mesh, MeshSpec, Orientability};
pub use multiplier::{coefficients, residue_invariant, solve_m2, MultiplierParams};
pub use quad::QuadExact;
pub use report::{CheckRecord, Criterion, RunReport};
pub use voss::{involution, validate_punctures, PunctureConfig, Triple, VossData};
pub use weierstrass::{GaussValue, WeierstrassTriple};
