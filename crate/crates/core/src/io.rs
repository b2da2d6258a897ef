//! JSON wire format and resource configuration.
//!
//! Permutations are 1-based in group data; matrices are row-major, act on
//! column vectors and carry entries in `[0, p)`.

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::ffla::{FieldMatrix, PrimeField};
use crate::permgrp::{Perm, PermGroup};
use crate::repmod::{GModule, FULL_TABLE_CAP};
use crate::sympow::DEFAULT_MAX_ENTRIES;

/// Environment variable overriding [`Config::max_tensor_entries`].
pub const MAX_ENTRIES_ENV: &str = "TWISTLAB_MAX_ENTRIES";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub p: u32,
    pub group: GroupJson,
    pub dim: usize,
    pub generator_matrices: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Vec<u8>>,
}

impl GroupJson {
    pub fn from_group(g: &PermGroup) -> Self {
        GroupJson {
            degree: g.degree(),
            generators: g.generators().iter().map(Perm::to_one_based).collect(),
            name: Some(g.name().to_string()),
        }
    }

    pub fn to_group(&self) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|imgs| {
                if imgs.len() != self.degree {
                    return input(format!("generator of length {} in a group of degree {}", imgs.len(), self.degree));
                }
                Perm::from_one_based(imgs)
            })
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(self.degree, gens, self.name.clone().unwrap_or_else(|| "G".into()))
    }
}

impl ModuleJson {
    pub fn from_module(x: &GModule) -> Self {
        ModuleJson {
            p: x.p(),
            group: GroupJson::from_group(x.group()),
            dim: x.dim(),
            generator_matrices: x
                .generator_matrices()
                .iter()
                .map(|m| m.to_rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect())
                .collect(),
            parity: x.parity().map(<[u8]>::to_vec),
        }
    }

    /// Parses and validates; the seed drives spot checks on groups above `table_cap`.
    pub fn to_module(&self, seed: u64, table_cap: usize) -> Result<GModule> {
        let field = PrimeField::new(self.p)?;
        let group = self.group.to_group()?;
        let mut gens = Vec::with_capacity(self.generator_matrices.len());
        for (k, rows) in self.generator_matrices.iter().enumerate() {
            if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                return input(format!("generator matrix {k} is not {0}x{0}", self.dim));
            }
            if rows.iter().flatten().any(|&e| e < 0 || e >= self.p as i64) {
                return input(format!("generator matrix {k} has entries outside [0, {})", self.p));
            }
            gens.push(FieldMatrix::from_rows(field, rows)?);
        }
        if gens.is_empty() {
            return GModule::with_dim(group, field, self.dim, gens, self.parity.clone());
        }
        GModule::validated(group, field, gens, self.parity.clone(), seed, table_cap)
    }
}

pub fn module_to_json(x: &GModule) -> serde_json::Value {
    serde_json::to_value(ModuleJson::from_module(x)).expect("module JSON is always serializable")
}

pub fn module_from_json(v: &serde_json::Value, seed: u64, table_cap: usize) -> Result<GModule> {
    let m: ModuleJson = serde_json::from_value(v.clone()).map_err(|e| crate::error::Error::Input(format!("module JSON: {e}")))?;
    m.to_module(seed, table_cap)
}

pub fn module_from_str(s: &str, seed: u64, table_cap: usize) -> Result<GModule> {
    let m: ModuleJson = serde_json::from_str(s).map_err(|e| crate::error::Error::Input(format!("module JSON: {e}")))?;
    m.to_module(seed, table_cap)
}

/// Effective resource settings, echoed into every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub max_tensor_entries: usize,
    /// `None` means the per-prime default.
    pub max_j: Option<u32>,
    pub group_enumeration_cap: usize,
    pub seed: u64,
    pub output: Option<String>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_tensor_entries: DEFAULT_MAX_ENTRIES,
            max_j: None,
            group_enumeration_cap: FULL_TABLE_CAP,
            seed: 0,
            output: None,
        }
    }
}

impl Config {
    /// Applies [`MAX_ENTRIES_ENV`] if it is set.
    pub fn with_env(mut self) -> Result<Self> {
        if let Ok(v) = std::env::var(MAX_ENTRIES_ENV) {
            self.max_tensor_entries = v.trim().parse().map_err(|_| crate::error::Error::Input(format!("{MAX_ENTRIES_ENV}={v} is not a count")))?;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_tensor_entries == 0 || self.group_enumeration_cap == 0 || self.max_j == Some(0) {
            return input("all resource caps must be positive");
        }
        Ok(())
    }

    pub fn max_j_for(&self, p: u32) -> u32 {
        self.max_j.unwrap_or_else(|| crate::frob::default_max_j(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmod::ValidationState;

    const KLEIN: &str = r#"{"p":2,"group":{"degree":4,"generators":[[2,1,3,4],[1,2,4,3]]},"dim":3,
        "generator_matrices":[[[1,0,1],[0,1,0],[0,0,1]],[[1,0,0],[0,1,1],[0,0,1]]]}"#;

    #[test]
    fn parses_and_round_trips() {
        let x = module_from_str(KLEIN, 0, FULL_TABLE_CAP).unwrap();
        assert_eq!(x.dim(), 3);
        assert_eq!(x.validation_state(), ValidationState::FullTable);
        let back = module_from_json(&module_to_json(&x), 0, FULL_TABLE_CAP).unwrap();
        assert_eq!(back.generator_matrices(), x.generator_matrices());
        assert_eq!(back.group(), x.group());
    }

    #[test]
    fn rejects_bad_input() {
        let bad = KLEIN.replace("[[1,0,1],[0,1,0],[0,0,1]]", "[[1,0,2],[0,1,0],[0,0,1]]");
        assert!(module_from_str(&bad, 0, FULL_TABLE_CAP).is_err());
        let not_hom = KLEIN.replace("[[1,0,0],[0,1,1],[0,0,1]]", "[[0,1,0],[1,0,0],[0,0,1]]");
        assert!(module_from_str(&not_hom, 0, FULL_TABLE_CAP).unwrap_err().kind() == "input");
        assert!(module_from_str("{\"p\":4}", 0, FULL_TABLE_CAP).is_err());
    }

    #[test]
    fn super_spaces_without_generators() {
        let s = r#"{"p":3,"group":{"degree":1,"generators":[]},"dim":2,"generator_matrices":[],"parity":[0,1]}"#;
        let x = module_from_str(s, 0, FULL_TABLE_CAP).unwrap();
        assert_eq!(x.super_dim(), (1, 1));
        let plain = r#"{"p":3,"group":{"degree":1,"generators":[]},"dim":2,"generator_matrices":[]}"#;
        assert!(!module_from_str(plain, 0, FULL_TABLE_CAP).unwrap().is_super());
    }

    #[test]
    fn spot_checks_large_groups() {
        let s9 = PermGroup::symmetric(9);
        let x = GModule::trivial(s9, PrimeField::new(3).unwrap(), 1);
        let j = module_to_json(&x);
        let y = module_from_json(&j, 5, FULL_TABLE_CAP).unwrap();
        assert_eq!(y.validation_state(), ValidationState::SpotChecked);
        let z = module_from_json(&j, 5, 1_000_000).unwrap();
        assert_eq!(z.validation_state(), ValidationState::FullTable);
    }

    #[test]
    fn config_validation() {
        assert!(Config::default().validate().is_ok());
        let c = Config { max_tensor_entries: 0, ..Config::default() };
        assert!(c.validate().is_err());
        assert_eq!(Config::default().max_j_for(3), 2);
        assert_eq!(Config::default().max_j_for(5), 1);
    }
}
