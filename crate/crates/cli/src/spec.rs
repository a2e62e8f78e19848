//! The group specification record read from `--spec FILE`.
//!
//! ```json
//! {"family": "sl2", "p": 3, "n": 2}
//! {"modulus": 3, "dim": 2, "generators": [[[1, 1], [0, 1]], [[2, 0], [0, 1]]]}
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use modrep::group::{generate_group, sl2_over, FiniteGroup, GroupError, ResidueMatrix, DEFAULT_CAP};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Family {
        family: String,
        p: u32,
        n: u32,
    },
    Explicit {
        modulus: u32,
        dim: usize,
        generators: Vec<Vec<Vec<i64>>>,
    },
}

impl GroupSpec {
    pub fn sl2(p: u32, n: u32) -> Self {
        GroupSpec::Family { family: "sl2".into(), p, n }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))?;
        serde_json::from_value(value).map_err(|_| {
            CliError::Input(
                "a group spec is either {\"family\", \"p\", \"n\"} or {\"modulus\", \"dim\", \"generators\"}".into(),
            )
        })
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
        Self::parse(&text)
    }

    /// Same group, written with a lowercase family name and generator entries
    /// reduced into `[0, modulus)`.
    pub fn canonical(&self) -> Self {
        match self {
            GroupSpec::Family { family, p, n } => GroupSpec::Family { family: family.to_ascii_lowercase(), p: *p, n: *n },
            GroupSpec::Explicit { modulus, dim, generators } => {
                let m = (*modulus).max(1) as i64;
                let generators = generators
                    .iter()
                    .map(|g| g.iter().map(|row| row.iter().map(|x| x.rem_euclid(m)).collect()).collect())
                    .collect();
                GroupSpec::Explicit { modulus: *modulus, dim: *dim, generators }
            }
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self.canonical()).expect("group specs serialize")
    }

    /// An empty generator list denotes the trivial group.
    pub fn build(&self) -> Result<FiniteGroup, CliError> {
        let group = match self {
            GroupSpec::Family { family, p, n } => {
                if !family.eq_ignore_ascii_case("sl2") {
                    return Err(CliError::Input(format!("unknown family {family:?}; the only family is \"sl2\"")));
                }
                sl2_over(*p, *n, DEFAULT_CAP)
            }
            GroupSpec::Explicit { modulus, dim, generators } => {
                if *modulus < 2 || *dim == 0 {
                    return Err(CliError::Input("modulus must be at least 2 and dim at least 1".into()));
                }
                let mut gens = Vec::with_capacity(generators.len().max(1));
                for (i, g) in generators.iter().enumerate() {
                    if g.len() != *dim || g.iter().any(|row| row.len() != *dim) {
                        return Err(CliError::Input(format!("generator {i} is not a {dim}×{dim} matrix")));
                    }
                    gens.push(ResidueMatrix::from_rows(*modulus, g).map_err(|e| CliError::Input(e.to_string()))?);
                }
                if gens.is_empty() {
                    gens.push(ResidueMatrix::identity(*modulus, *dim));
                }
                generate_group(&gens, DEFAULT_CAP)
            }
        };
        group.map_err(|e| match e {
            GroupError::CapExceeded(_) | GroupError::OrderMismatch { .. } => CliError::computation(e),
            _ => CliError::Input(e.to_string()),
        })
    }
}
