//! Declarative experiment files: a TOML document with `[group]`,
//! `[generators]`, optional `[run]` defaults and an optional `[chain]` for
//! ball systems.
//!
//! ```toml
//! [group]
//! family = "fg_abelian"
//! rank = 1
//! torsion = [4]
//!
//! [generators]
//! elements = ["(1,0)", "(-1,0)", "(1,1)", "(-1,3)", "(1,3)", "(-1,1)"]
//!
//! [run]
//! r = 12
//! m = 3
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{Element, GeneratingSet, Group, GroupSpec, IntMatrix};
use crate::metrics::lamp_chain;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("validation error: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, ConfigError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    FgAbelian,
    VabExtension,
    Finite,
    Lamplighter,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    pub family: Family,
    pub rank: Option<usize>,
    pub torsion: Option<Vec<i64>>,
    /// Quotient multiplication table, or use `cyclic_quotient`.
    pub table: Option<Vec<Vec<usize>>>,
    pub cyclic_quotient: Option<usize>,
    pub actions: Option<Vec<IntMatrix>>,
    /// Defaults to zero (split extension).
    pub cocycle: Option<Vec<Vec<Vec<i64>>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSection {
    /// Canonical text forms; must be closed under inverses unless
    /// `close_inverses` is set.
    pub elements: Vec<String>,
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub close_inverses: bool,
}

/// Command parameters; every field may also be set on the command line.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub r: Option<u32>,
    pub m: Option<u32>,
    pub n_max: Option<usize>,
    pub k: Option<usize>,
    pub budget: Option<usize>,
    pub gap: Option<u32>,
    pub extreme: Option<String>,
    pub seed: Option<u64>,
    /// Target element for the bend scan.
    pub x: Option<String>,
    /// Length of the re-rooted geodesic in the bend scan.
    pub length: Option<u32>,
    pub out: Option<String>,
}

impl RunConfig {
    /// Fields set in `over` win.
    pub fn merged(&self, over: &RunConfig) -> RunConfig {
        RunConfig {
            r: over.r.or(self.r),
            m: over.m.or(self.m),
            n_max: over.n_max.or(self.n_max),
            k: over.k.or(self.k),
            budget: over.budget.or(self.budget),
            gap: over.gap.or(self.gap),
            extreme: over.extreme.clone().or_else(|| self.extreme.clone()),
            seed: over.seed.or(self.seed),
            x: over.x.clone().or_else(|| self.x.clone()),
            length: over.length.or(self.length),
            out: over.out.clone().or_else(|| self.out.clone()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainKind {
    /// Lamps supported on `[-n, n]`.
    Lamps,
    Trivial,
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSection {
    pub kind: ChainKind,
    pub sets: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    group: GroupSection,
    generators: GeneratorSection,
    #[serde(default)]
    run: RunConfig,
    chain: Option<ChainSection>,
}

#[derive(Clone, Debug)]
pub struct ParsedSpec {
    pub spec: GroupSpec,
    pub group: Group,
    pub generators: GeneratingSet,
    pub run: RunConfig,
    pub chain: Option<ChainSection>,
}

impl ParsedSpec {
    /// The subgroup chain `F_1, ..., F_{n_max}`.
    pub fn chain_sets(&self, n_max: usize) -> Result<Vec<Vec<Element>>> {
        let section = self
            .chain
            .as_ref()
            .ok_or_else(|| ConfigError::Validation("missing [chain] section".into()))?;
        match section.kind {
            ChainKind::Lamps => {
                if self.spec != GroupSpec::LamplighterZ2 {
                    return Err(ConfigError::Validation("lamp chains need the lamplighter".into()));
                }
                Ok(lamp_chain(n_max))
            }
            ChainKind::Trivial => Ok(vec![vec![self.group.identity()]]),
            ChainKind::Explicit => {
                let sets = section
                    .sets
                    .as_ref()
                    .ok_or_else(|| ConfigError::Schema("explicit chain needs `sets`".into()))?;
                sets.iter()
                    .map(|set| set.iter().map(|t| self.element(t)).collect())
                    .collect()
            }
        }
    }

    pub fn element(&self, text: &str) -> Result<Element> {
        self.group
            .parse_element(text)
            .map_err(|e| ConfigError::Validation(e.to_string()))
    }
}

fn need<T>(value: Option<T>, field: &str, family: &str) -> Result<T> {
    value.ok_or_else(|| ConfigError::Schema(format!("[group] family {family} needs `{field}`")))
}

fn group_spec(g: &GroupSection) -> Result<GroupSpec> {
    match g.family {
        Family::FgAbelian => Ok(GroupSpec::FgAbelian {
            rank: need(g.rank, "rank", "fg_abelian")?,
            torsion: g.torsion.clone().unwrap_or_default(),
        }),
        Family::VabExtension => {
            let rank = need(g.rank, "rank", "vab_extension")?;
            let table = match (&g.table, g.cyclic_quotient) {
                (Some(t), None) => t.clone(),
                (None, Some(n)) => GroupSpec::cyclic_table(n),
                _ => {
                    return Err(ConfigError::Schema(
                        "[group] vab_extension needs exactly one of `table`, `cyclic_quotient`".into(),
                    ))
                }
            };
            let actions = need(g.actions.clone(), "actions", "vab_extension")?;
            let order = table.len();
            Ok(GroupSpec::VAbExtension {
                rank,
                table,
                actions,
                cocycle: g
                    .cocycle
                    .clone()
                    .unwrap_or_else(|| vec![vec![vec![0; rank]; order]; order]),
            })
        }
        Family::Finite => Ok(GroupSpec::FiniteGroup {
            table: need(g.table.clone(), "table", "finite")?,
        }),
        Family::Lamplighter => Ok(GroupSpec::LamplighterZ2),
    }
}

pub fn parse_spec_str(text: &str) -> Result<ParsedSpec> {
    let file: SpecFile = toml::from_str(text).map_err(|e| ConfigError::Schema(e.to_string()))?;
    let spec = group_spec(&file.group)?;
    let group = Group::new(spec.clone()).map_err(|e| ConfigError::Validation(e.to_string()))?;
    let gens_section = &file.generators;
    let elems: Vec<Element> = gens_section
        .elements
        .iter()
        .map(|t| group.parse_element(t).map_err(|e| ConfigError::Validation(e.to_string())))
        .collect::<Result<_>>()?;
    if let Some(labels) = &gens_section.labels {
        if labels.len() != elems.len() {
            return Err(ConfigError::Validation(format!(
                "{} labels for {} generators",
                labels.len(),
                elems.len()
            )));
        }
    }
    if !gens_section.close_inverses {
        if let Some(s) = elems.iter().find(|s| !elems.contains(&group.inverse(s))) {
            return Err(ConfigError::Validation(format!(
                "generating set is not symmetric: inverse of {s} is missing"
            )));
        }
    }
    let generators = group
        .symmetric_generating_set(&elems, gens_section.labels.as_deref())
        .map_err(|e| ConfigError::Validation(e.to_string()))?;
    Ok(ParsedSpec {
        spec,
        group,
        generators,
        run: file.run,
        chain: file.chain,
    })
}

pub fn parse_spec(path: &Path) -> Result<ParsedSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    parse_spec_str(&text).map_err(|e| match e {
        ConfigError::Schema(m) => ConfigError::Schema(format!("{}: {m}", path.display())),
        ConfigError::Validation(m) => ConfigError::Validation(format!("{}: {m}", path.display())),
        other => other,
    })
}
