//! Expected values, read from a TOML table per scenario.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub const DEFAULT_GOLDENS: &str = include_str!("../fixtures/goldens.toml");

/// Where a golden value comes from: stated in the literature, produced by
/// this code with no published counterpart, or a structural identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Literature,
    Computed,
    Identity,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Literature => "literature",
            Provenance::Computed => "computed",
            Provenance::Identity => "identity",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct GoldenValue {
    pub name: String,
    pub value: String,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct Golden {
    pub anchor: String,
    pub values: Vec<GoldenValue>,
}

pub type Goldens = BTreeMap<String, Golden>;

pub fn parse_goldens(text: &str) -> Result<Goldens, String> {
    toml::from_str(text).map_err(|e| format!("bad goldens file: {e}"))
}

pub fn load_goldens(path: Option<&Path>) -> Result<Goldens, String> {
    match path {
        None => parse_goldens(DEFAULT_GOLDENS),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            parse_goldens(&text)
        }
    }
}
