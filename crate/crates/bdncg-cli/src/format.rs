//! The instance file schema and its canonical JSON form.
//!
//! ```json
//! {
//!   "variant": "max" | "sum",
//!   "n": 5,
//!   "bounds": 2 | [2, 2, 3, ...],
//!   "buys": [[1], [], ...],
//!   "meta": { "provenance": "...", "params": {...}, "expected": {...} }
//! }
//! ```
//!
//! Files are written canonically: keys sorted (via `serde_json::Value`),
//! node lists sorted, uniform bounds collapsed to a single integer, two-space
//! indentation and a trailing newline. Saving a loaded file is
//! byte-identical.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use bdncg_core::game::{GameSpec, StrategyProfile, Variant};
use bdncg_core::instances::{Expected, Instance};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BoundsField {
    Uniform(u64),
    PerPlayer(Vec<u64>),
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ExpectedField {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub social_cost: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diameter: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimum: Option<u64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default)]
    pub provenance: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedField>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub variant: String,
    pub n: usize,
    pub bounds: BoundsField,
    pub buys: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        let spec = &inst.spec;
        let bounds = match spec.uniform_bound() {
            Some(b) => BoundsField::Uniform(b),
            None => BoundsField::PerPlayer(spec.bounds().to_vec()),
        };
        let buys = (0..spec.n())
            .map(|v| inst.profile.buys(v).iter().copied().collect())
            .collect();
        let e = &inst.expected;
        let expected = (e.stable.is_some()
            || e.social_cost.is_some()
            || e.diameter.is_some()
            || e.optimum.is_some())
        .then_some(ExpectedField {
            stable: e.stable,
            social_cost: e.social_cost,
            diameter: e.diameter,
            optimum: e.optimum,
        });
        InstanceFile {
            variant: spec.variant().to_string(),
            n: spec.n(),
            bounds,
            buys,
            meta: Some(Meta {
                provenance: inst.name.clone(),
                params: inst.params.iter().cloned().collect(),
                expected,
            }),
        }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        let variant = match self.variant.as_str() {
            "max" => Variant::Max,
            "sum" => Variant::Sum,
            other => bail!("unknown variant {other:?} (expected \"max\" or \"sum\")"),
        };
        let bounds = match &self.bounds {
            BoundsField::Uniform(b) => vec![*b; self.n],
            BoundsField::PerPlayer(bs) => {
                if bs.len() != self.n {
                    bail!("bounds has {} entries for n = {}", bs.len(), self.n);
                }
                bs.clone()
            }
        };
        let spec = GameSpec::new(variant, bounds).map_err(|e| anyhow::anyhow!("{e}"))?;
        if self.buys.len() != self.n {
            bail!("buys has {} entries for n = {}", self.buys.len(), self.n);
        }
        let profile =
            StrategyProfile::from_buys(self.buys.clone()).map_err(|e| anyhow::anyhow!("{e}"))?;
        let meta = self.meta.clone().unwrap_or_default();
        let expected = meta.expected.unwrap_or_default();
        Ok(Instance {
            name: meta.provenance,
            params: meta.params.into_iter().collect(),
            spec,
            profile,
            expected: Expected {
                stable: expected.stable,
                social_cost: expected.social_cost,
                diameter: expected.diameter,
                optimum: expected.optimum,
            },
        })
    }

    /// Canonical rendering: sorted keys, sorted lists, trailing newline.
    pub fn to_canonical_json(&self) -> Result<String> {
        let mut me = self.clone();
        for list in &mut me.buys {
            list.sort_unstable();
            list.dedup();
        }
        if let BoundsField::PerPlayer(bs) = &me.bounds {
            if !bs.is_empty() && bs.iter().all(|&b| b == bs[0]) {
                me.bounds = BoundsField::Uniform(bs[0]);
            }
        }
        // round-trip through Value sorts object keys
        let value = serde_json::to_value(&me)?;
        Ok(serde_json::to_string_pretty(&value)? + "\n")
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_canonical_json()?)
            .with_context(|| format!("writing {}", path.display()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file: InstanceFile = serde_json::from_str(&text)
            .with_context(|| format!("parsing {}", path.display()))?;
        file.to_instance().with_context(|| format!("validating {}", path.display()))?;
        Ok(file)
    }
}

pub fn save_instance(inst: &Instance, path: &Path) -> Result<()> {
    InstanceFile::from_instance(inst).save(path)
}

pub fn load_instance(path: &Path) -> Result<Instance> {
    InstanceFile::load(path)?.to_instance()
}
