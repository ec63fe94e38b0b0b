//! The `arrangement.json` exchange format.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Arrangement, ArrangementMeta, Stratum};
use crate::error::{Error, Result};
use crate::poly::BivarPolynomial;

#[derive(Serialize, Deserialize)]
struct AmbientJson {
    dim: u32,
    hodge: BivarPolynomial,
}

#[derive(Serialize, Deserialize)]
struct StratumJson {
    id: IdJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    dim: u32,
    hodge: BivarPolynomial,
}

#[derive(Serialize, Deserialize)]
struct IntersectionJson {
    pair: (IdJson, IdJson),
    components: Vec<IdJson>,
}

/// Ids are strings on output; integers are accepted on input.
#[derive(Serialize, Deserialize, Clone)]
#[serde(untagged)]
enum IdJson {
    Text(String),
    Int(i64),
}

impl IdJson {
    fn into_string(self) -> String {
        match self {
            IdJson::Text(s) => s,
            IdJson::Int(n) => n.to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrangementJson {
    ambient: AmbientJson,
    #[serde(default)]
    strata: Vec<StratumJson>,
    #[serde(default)]
    relations: Vec<(IdJson, IdJson)>,
    #[serde(default)]
    intersections: Vec<IntersectionJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    transverse: Vec<(IdJson, IdJson)>,
    #[serde(default, skip_serializing_if = "ArrangementMeta::is_default")]
    meta: ArrangementMeta,
}

impl Arrangement {
    /// Parses `arrangement.json`. Relations may be covers or any generating set.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: ArrangementJson =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        let strata: Vec<Stratum> = raw
            .strata
            .into_iter()
            .map(|s| {
                let id = s.id.into_string();
                Stratum {
                    label: s.label.unwrap_or_else(|| id.clone()),
                    id,
                    dim: s.dim,
                    hodge: s.hodge,
                }
            })
            .collect();
        let positions: HashMap<&str, usize> = strata
            .iter()
            .enumerate()
            .map(|(i, s)| (s.id.as_str(), i))
            .collect();
        let lookup = |id: IdJson| -> Result<usize> {
            let id = id.into_string();
            positions.get(id.as_str()).copied().ok_or(Error::UnknownId(id))
        };
        let relations = raw
            .relations
            .into_iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let intersections = raw
            .intersections
            .into_iter()
            .map(|e| {
                let pair = (lookup(e.pair.0)?, lookup(e.pair.1)?);
                let comps = e
                    .components
                    .into_iter()
                    .map(lookup)
                    .collect::<Result<Vec<_>>>()?;
                Ok((pair, comps))
            })
            .collect::<Result<Vec<_>>>()?;
        let transverse = raw
            .transverse
            .into_iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        drop(positions);
        Arrangement::new(
            raw.ambient.dim,
            raw.ambient.hodge,
            strata,
            relations,
            intersections,
        )?
        .with_meta(raw.meta)
        .with_transverse_pairs(transverse)
    }

    /// Canonical `arrangement.json`: strata in index order, cover relations,
    /// the nonempty intersection entries of incomparable pairs and any
    /// transverse pairs.
    pub fn to_json_value(&self) -> serde_json::Value {
        let id = |i: usize| IdJson::Text(self.stratum(i).id.clone());
        let doc = ArrangementJson {
            ambient: AmbientJson {
                dim: self.ambient_dim(),
                hodge: self.ambient_hodge().clone(),
            },
            strata: self
                .strata()
                .iter()
                .map(|s| StratumJson {
                    id: IdJson::Text(s.id.clone()),
                    label: (s.label != s.id).then(|| s.label.clone()),
                    dim: s.dim,
                    hodge: s.hodge.clone(),
                })
                .collect(),
            relations: self
                .covers()
                .into_iter()
                .map(|(lo, hi)| (id(lo), id(hi)))
                .collect(),
            intersections: self
                .intersection_entries()
                .filter(|(_, comps)| !comps.is_empty())
                .map(|((a, b), comps)| IntersectionJson {
                    pair: (id(a), id(b)),
                    components: comps.iter().map(|&c| id(c)).collect(),
                })
                .collect(),
            transverse: self.transverse_pairs().map(|(a, b)| (id(a), id(b))).collect(),
            meta: self.meta().clone(),
        };
        serde_json::to_value(doc).expect("arrangement serializes")
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("serializable");
        s.push('\n');
        s
    }
}
