//! Run configuration: JSON in, validated domain objects out.
//!
//! Rationals travel as strings (`"1/3"`) so exactness survives
//! serialization. Every field has a default; `{}` is a valid config.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use photonbox::algebra::scheme::{CommutatorScheme, VacuumRole};
use photonbox::field::{ModeSet, PhysicalConstants};
use photonbox::scalar::parse_rational;

#[derive(Debug, thiserror::Error)]
#[error("config error at {path}: {message}")]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

fn bad(path: &str, message: impl Into<String>) -> ConfigError {
    ConfigError {
        path: path.to_string(),
        message: message.into(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SchemeConfig {
    Standard,
    Modified {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<[String; 3]>,
    },
    Custom {
        c: [String; 4],
        roles: [RoleConfig; 4],
    },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum RoleConfig {
    Operator,
    Conjugate,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        SchemeConfig::Modified { n: None }
    }
}

impl SchemeConfig {
    pub fn build(&self) -> Result<CommutatorScheme, ConfigError> {
        match self {
            SchemeConfig::Standard => Ok(CommutatorScheme::standard()),
            SchemeConfig::Modified { n: None } => Ok(CommutatorScheme::modified_isotropic()),
            SchemeConfig::Modified { n: Some(parts) } => {
                let mut weights = Vec::with_capacity(3);
                for (i, text) in parts.iter().enumerate() {
                    weights.push(parse_rational(text).ok_or_else(|| {
                        bad(
                            &format!("scheme.n[{i}]"),
                            format!("not a rational: {text:?}"),
                        )
                    })?);
                }
                let n: [BigRational; 3] =
                    [weights[0].clone(), weights[1].clone(), weights[2].clone()];
                CommutatorScheme::modified(n).map_err(|e| bad("scheme.n", e.to_string()))
            }
            SchemeConfig::Custom { c, roles } => {
                let mut constants = Vec::with_capacity(4);
                for (i, text) in c.iter().enumerate() {
                    constants.push(parse_rational(text).ok_or_else(|| {
                        bad(
                            &format!("scheme.c[{i}]"),
                            format!("not a rational: {text:?}"),
                        )
                    })?);
                }
                let vacuum_roles = roles.map(|r| match r {
                    RoleConfig::Operator => VacuumRole::Operator,
                    RoleConfig::Conjugate => VacuumRole::Conjugate,
                });
                Ok(CommutatorScheme::custom(
                    [
                        constants[0].clone(),
                        constants[1].clone(),
                        constants[2].clone(),
                        constants[3].clone(),
                    ],
                    vacuum_roles,
                ))
            }
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SchemeConfig::Standard => "standard",
            SchemeConfig::Modified { .. } => "modified",
            SchemeConfig::Custom { .. } => "custom",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ConstantsConfig {
    pub hbar: String,
    pub c: String,
}

impl Default for ConstantsConfig {
    fn default() -> Self {
        ConstantsConfig {
            hbar: "1".to_string(),
            c: "1".to_string(),
        }
    }
}

impl ConstantsConfig {
    pub fn build(&self) -> Result<PhysicalConstants, ConfigError> {
        let hbar = parse_rational(&self.hbar)
            .ok_or_else(|| bad("constants.hbar", format!("not a rational: {:?}", self.hbar)))?;
        let c = parse_rational(&self.c)
            .ok_or_else(|| bad("constants.c", format!("not a rational: {:?}", self.c)))?;
        PhysicalConstants::new(hbar, c).map_err(|e| bad("constants", e.to_string()))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ModeSetConfig {
    pub box_length: f64,
    pub modes: Vec<[i32; 3]>,
}

impl Default for ModeSetConfig {
    fn default() -> Self {
        ModeSetConfig {
            box_length: 2.0 * std::f64::consts::PI,
            modes: vec![[0, 0, 1], [0, 0, -1]],
        }
    }
}

impl ModeSetConfig {
    pub fn build(&self) -> Result<ModeSet, ConfigError> {
        ModeSet::new(self.box_length, self.modes.clone()).map_err(|e| bad("modeset", e.to_string()))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CausalityConfig {
    pub r_grid: Vec<f64>,
    pub ct_grid: Vec<f64>,
    pub epsilons: Vec<f64>,
}

impl Default for CausalityConfig {
    fn default() -> Self {
        CausalityConfig {
            r_grid: (1..=10).map(|i| 0.3 * i as f64).collect(),
            ct_grid: (0..10).map(|i| 0.3 * i as f64).collect(),
            epsilons: vec![0.02, 0.01, 0.005],
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub scheme: SchemeConfig,
    #[serde(default)]
    pub constants: ConstantsConfig,
    #[serde(default)]
    pub modeset: ModeSetConfig,
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    #[serde(default = "default_grid_n")]
    pub grid_n: usize,
    #[serde(default = "default_dimension_cap")]
    pub dimension_cap: usize,
    #[serde(default)]
    pub causality: CausalityConfig,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_n_max() -> usize {
    2
}

fn default_grid_n() -> usize {
    8
}

fn default_dimension_cap() -> usize {
    8192
}

fn default_seed() -> u64 {
    7
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scheme: SchemeConfig::default(),
            constants: ConstantsConfig::default(),
            modeset: ModeSetConfig::default(),
            n_max: default_n_max(),
            grid_n: default_grid_n(),
            dimension_cap: default_dimension_cap(),
            causality: CausalityConfig::default(),
            seed: default_seed(),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| bad("<json>", e.to_string()))
    }

    /// Cross-field validation beyond what the builders check.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.scheme.build()?;
        self.constants.build()?;
        self.modeset.build()?;
        if self.n_max == 0 {
            return Err(bad("n_max", "must be at least 1"));
        }
        if self.causality.epsilons.is_empty()
            || self.causality.epsilons.windows(2).any(|w| w[1] >= w[0])
            || self.causality.epsilons.iter().any(|&e| e <= 0.0)
        {
            return Err(bad(
                "causality.epsilons",
                "must be strictly decreasing and positive",
            ));
        }
        Ok(())
    }
}
