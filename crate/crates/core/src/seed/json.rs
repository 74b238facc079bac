use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::{ExtMatrix, Seed, SeedError};
use crate::laurent::{LaurentPoly, Var};

/// Wire form of a seed:
///
/// ```json
/// {"exchangeable": ["x1","x2"], "frozen": ["x3"], "matrix": [[0,1],[-1,0],[0,-1]]}
/// ```
///
/// `values` is present only for non-initial seeds and maps every variable to
/// its value as a Laurent expression.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedJson {
    pub exchangeable: Vec<Var>,
    #[serde(default)]
    pub frozen: Vec<Var>,
    pub matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<IndexMap<Var, String>>,
}

impl From<&Seed> for SeedJson {
    fn from(seed: &Seed) -> Self {
        let values = (!seed.is_initial()).then(|| {
            seed.slots()
                .map(|(v, p)| (v.clone(), p.to_fraction_string()))
                .collect()
        });
        SeedJson {
            exchangeable: seed.ex().to_vec(),
            frozen: seed.fx().to_vec(),
            matrix: seed.matrix().entries().to_vec(),
            values,
        }
    }
}

impl TryFrom<SeedJson> for Seed {
    type Error = SeedError;

    fn try_from(json: SeedJson) -> Result<Self, SeedError> {
        let matrix = ExtMatrix::new(json.exchangeable, json.frozen, json.matrix)?;
        let mut seed = Seed::initial(matrix);
        if let Some(values) = json.values {
            for (v, text) in values {
                let i = seed
                    .matrix
                    .row_index(&v)
                    .ok_or_else(|| SeedError::Malformed(format!("value for unknown variable {v}")))?;
                seed.values[i] = LaurentPoly::parse(&text)?;
            }
        }
        Ok(seed)
    }
}

impl Serialize for Seed {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Seed {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Seed, D::Error> {
        let json = SeedJson::deserialize(deserializer)?;
        Seed::try_from(json).map_err(serde::de::Error::custom)
    }
}

impl Seed {
    pub fn to_json(&self) -> SeedJson {
        SeedJson::from(self)
    }

    pub fn from_json(json: SeedJson) -> Result<Seed, SeedError> {
        Seed::try_from(json)
    }

    pub fn from_json_str(text: &str) -> Result<Seed, SeedError> {
        let json: SeedJson =
            serde_json::from_str(text).map_err(|e| SeedError::Malformed(e.to_string()))?;
        Seed::try_from(json)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        out.push('\n');
        out
    }
}
