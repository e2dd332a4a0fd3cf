//! Run configuration, read from TOML.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub punctures: Punctures,
    pub annulus: AnnulusSection,
    #[serde(default)]
    pub truncation: Truncation,
    #[serde(default)]
    pub construction: Construction,
    #[serde(default)]
    pub multiplier: Multiplier,
    #[serde(default)]
    pub mesh: MeshSection,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: Output,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Punctures {
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
}

impl Punctures {
    pub fn alpha(&self) -> Complex64 {
        Complex64::new(self.alpha[0], self.alpha[1])
    }

    pub fn beta(&self) -> Complex64 {
        Complex64::new(self.beta[0], self.beta[1])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnulusSection {
    #[serde(rename = "R")]
    pub r: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Truncation {
    #[serde(rename = "N")]
    pub n: usize,
    pub samples: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Self { n: 48, samples: 4096 }
    }
}

/// `k = "auto"` or an explicit integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KChoice {
    Fixed(u32),
    Named(AutoK),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutoK {
    Auto,
}

impl KChoice {
    pub fn fixed(&self) -> Option<u32> {
        match self {
            Self::Fixed(k) => Some(*k),
            Self::Named(AutoK::Auto) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Construction {
    pub k: KChoice,
    pub margin: f64,
}

impl Default for Construction {
    fn default() -> Self {
        Self {
            k: KChoice::Named(AutoK::Auto),
            margin: 0.05,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Multiplier {
    /// Exact rational, e.g. `"2"` or `"5/3"`.
    pub m1: String,
    #[serde(rename = "D")]
    pub d: Option<u64>,
}

impl Default for Multiplier {
    fn default() -> Self {
        Self {
            m1: "2".into(),
            d: Some(13),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshSection {
    pub n_r: usize,
    pub n_theta: usize,
    pub boundary_inset: f64,
    pub quotient: bool,
}

impl Default for MeshSection {
    fn default() -> Self {
        Self {
            n_r: 64,
            n_theta: 256,
            boundary_inset: 0.02,
            quotient: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub res: f64,
    pub symmetry: f64,
    pub conformality: f64,
    pub compat: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            res: 1e-12,
            symmetry: 1e-10,
            conformality: 1e-10,
            compat: 1e-8,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    pub report_path: Option<String>,
    pub mesh_path: Option<String>,
}

/// The reference configuration: α = 2, β = 3i, R = 1.5, N = 48, k = auto.
pub const STANDARD_CONFIG: &str = r#"[punctures]
alpha = [2.0, 0.0]
beta = [0.0, 3.0]

[annulus]
R = 1.5

[truncation]
N = 48
samples = 4096

[construction]
k = "auto"
margin = 0.05

[multiplier]
m1 = "2"
D = 13

[mesh]
n_r = 64
n_theta = 256
boundary_inset = 0.02
quotient = true

[tolerances]
res = 1e-12
symmetry = 1e-10
conformality = 1e-10
compat = 1e-8

[output]
report_path = "report.json"
mesh_path = "mobius.obj"
"#;

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn standard() -> Self {
        Self::from_toml(STANDARD_CONFIG).expect("standard config parses")
    }

    /// Re-serialized form, used when a config was built or overridden in code.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

/// Hex SHA-256 of the config bytes.
pub fn config_hash(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
