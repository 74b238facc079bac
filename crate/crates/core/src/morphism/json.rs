use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::{MorphismError, MorphismSpec};
use crate::laurent::{LaurentPoly, Var};
use crate::seed::{Seed, SeedJson};

/// A seed given inline or as a path to a seed JSON file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeedSource {
    Inline(SeedJson),
    Path(String),
}

/// An image written as a Laurent expression or a bare integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ImageText {
    Text(String),
    Int(i64),
}

impl ImageText {
    fn parse(&self) -> Result<LaurentPoly, MorphismError> {
        Ok(match self {
            ImageText::Text(t) => LaurentPoly::parse(t)?,
            ImageText::Int(k) => LaurentPoly::constant(*k),
        })
    }
}

/// Wire form of a morphism spec:
///
/// ```json
/// {"source": {...}, "target": "target.json",
///  "images": {"x1": "0", "x2": -1, "x3": "0", "x4": "x1"},
///  "generator_table": {"(1+x2)/x1": "x2"}}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub source: SeedSource,
    pub target: SeedSource,
    pub images: IndexMap<Var, ImageText>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub generator_table: IndexMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explicit: Option<bool>,
}

impl MorphismJson {
    /// Builds the spec, loading path seeds through `resolve`.
    pub fn into_spec<F>(self, resolve: F) -> Result<MorphismSpec, MorphismError>
    where
        F: Fn(&str) -> Result<Seed, MorphismError>,
    {
        let load = |s: SeedSource| match s {
            SeedSource::Inline(json) => Ok(Seed::try_from(json)?),
            SeedSource::Path(path) => resolve(&path),
        };
        let source = load(self.source)?;
        let target = load(self.target)?;
        let images = self
            .images
            .iter()
            .map(|(v, t)| Ok((v.clone(), t.parse()?)))
            .collect::<Result<_, MorphismError>>()?;
        let table = self
            .generator_table
            .iter()
            .map(|(k, img)| Ok((LaurentPoly::parse(k)?, LaurentPoly::parse(img)?)))
            .collect::<Result<_, MorphismError>>()?;
        Ok(MorphismSpec::new(source, target, images)?
            .with_generator_table(table)?
            .with_explicit(self.explicit))
    }
}

impl From<&MorphismSpec> for MorphismJson {
    fn from(spec: &MorphismSpec) -> Self {
        MorphismJson {
            source: SeedSource::Inline(spec.source().to_json()),
            target: SeedSource::Inline(spec.target().to_json()),
            images: spec
                .images()
                .iter()
                .map(|(v, p)| (v.clone(), ImageText::Text(p.to_fraction_string())))
                .collect(),
            generator_table: spec
                .generator_table()
                .iter()
                .map(|(k, img)| (k.to_fraction_string(), img.to_fraction_string()))
                .collect(),
            explicit: spec.explicit(),
        }
    }
}

impl MorphismSpec {
    pub fn to_json(&self) -> MorphismJson {
        MorphismJson::from(self)
    }

    /// Parses a spec whose seeds are all inline.
    pub fn from_json_str(text: &str) -> Result<MorphismSpec, MorphismError> {
        MorphismSpec::from_json_str_with(text, |path| {
            Err(MorphismError::Malformed(format!("cannot load seed from path {path}")))
        })
    }

    pub fn from_json_str_with<F>(text: &str, resolve: F) -> Result<MorphismSpec, MorphismError>
    where
        F: Fn(&str) -> Result<Seed, MorphismError>,
    {
        let json: MorphismJson =
            serde_json::from_str(text).map_err(|e| MorphismError::Malformed(e.to_string()))?;
        json.into_spec(resolve)
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    const NON_IDEAL: &str = r#"{
        "source": {"exchangeable": ["x1","x2"], "frozen": ["x3","x4"], "matrix": [[0,1],[-1,0],[0,-1],[0,0]]},
        "target": "a2.json",
        "images": {"x1": "0", "x2": -1, "x3": 0, "x4": "x1"},
        "generator_table": {"(1+x2)/x1": "x2", "(x1+x3)/x2": "0", "(x1+x3+x2*x3)/(x1*x2)": "-1"}
    }"#;

    #[test]
    fn parses_with_paths_and_integers() {
        let spec = MorphismSpec::from_json_str_with(NON_IDEAL, |path| {
            assert_eq!(path, "a2.json");
            Ok(a2_coeffs())
        })
        .unwrap();
        assert_eq!(spec, non_ideal());
        assert!(MorphismSpec::from_json_str(NON_IDEAL).is_err());
    }

    #[test]
    fn round_trip() {
        let spec = non_ideal().with_explicit(Some(true));
        let text = serde_json::to_string(&spec.to_json()).unwrap();
        assert_eq!(MorphismSpec::from_json_str(&text).unwrap(), spec);
    }

    #[test]
    fn rejects_malformed() {
        assert!(MorphismSpec::from_json_str(r#"{"source": 1}"#).is_err());
        let bad_image = NON_IDEAL.replace(r#""x4": "x1""#, r#""x4": "x1/(1+x2)""#);
        assert!(MorphismSpec::from_json_str_with(&bad_image, |_| Ok(a2_coeffs())).is_err());
    }
}
