//! Expected values consumed by `verify`.

use std::path::Path;

use serde::Deserialize;

pub const BUILTIN: &str = include_str!("../data/golden.toml");

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Golden {
    #[serde(default)]
    pub irreducible: Option<Irreducible>,
    #[serde(default)]
    pub reduce: Vec<ReduceCase>,
    #[serde(default)]
    pub inflate: Vec<InflateCase>,
    #[serde(default)]
    pub distance: Vec<DistanceCase>,
    #[serde(default)]
    pub genset: Vec<PermList>,
    #[serde(default)]
    pub genset_count: Vec<CountCase>,
    #[serde(default)]
    pub basis: Vec<PermList>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Irreducible {
    pub counts: Vec<u64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ReduceCase {
    pub input: String,
    pub output: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct InflateCase {
    pub perm: String,
    pub vector: Vec<usize>,
    pub output: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct DistanceCase {
    pub model: String,
    pub perm: String,
    pub value: u32,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PermList {
    pub model: String,
    pub k: u32,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CountCase {
    pub model: String,
    pub k: u32,
    pub count: usize,
}

impl Golden {
    pub fn builtin() -> Self {
        toml::from_str(BUILTIN).expect("bundled golden file parses")
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}
