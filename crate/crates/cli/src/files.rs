//! Input file schemas and loaders.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;
use simprep_core::covers::{BoxScene, CatalogEntry, CatalogFile, SceneFile};
use simprep_core::persistence::lower_star_filtration;
use simprep_core::realroots::parse_rational;
use simprep_core::simplicial::ComplexJson;
use simprep_core::{DeclaredCoverOracle, Filtration, SimplicialComplex};

use crate::error::{CliError, CliResult};

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn from_value<T: DeserializeOwned>(path: &Path, v: Value) -> CliResult<T> {
    serde_json::from_value(v).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_scene(path: &Path) -> CliResult<BoxScene> {
    let f: SceneFile = read_json(path)?;
    Ok(BoxScene::from_file(&f)?)
}

pub fn load_complex(path: &Path) -> CliResult<SimplicialComplex> {
    let j: ComplexJson = read_json(path)?;
    Ok(SimplicialComplex::from_json(&j)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogInput {
    #[serde(default)]
    labels: Option<Vec<String>>,
    entries: Vec<CatalogEntry>,
}

/// A declared catalog and its input labels.
pub struct Catalog {
    pub oracle: DeclaredCoverOracle,
    pub labels: Vec<String>,
}

/// Loads a catalog. Without a `labels` field the inputs are the ids that
/// occur in some key but in no member list.
pub fn load_catalog(path: &Path) -> CliResult<Catalog> {
    let input: CatalogInput = read_json(path)?;
    let labels = match input.labels {
        Some(l) => l,
        None => {
            let members: BTreeSet<&String> =
                input.entries.iter().flat_map(|e| &e.members).collect();
            let ids: BTreeSet<&String> = input.entries.iter().flat_map(|e| &e.key).collect();
            ids.into_iter()
                .filter(|id| !members.contains(id))
                .cloned()
                .collect()
        }
    };
    let oracle = DeclaredCoverOracle::from_file(&CatalogFile {
        entries: input.entries,
    })?;
    Ok(Catalog { oracle, labels })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum LabelValue {
    Number(serde_json::Number),
    Text(String),
}

impl LabelValue {
    fn to_rational(&self) -> CliResult<BigRational> {
        let s = match self {
            LabelValue::Number(n) => n.to_string(),
            LabelValue::Text(t) => t.clone(),
        };
        parse_rational(&s).map_err(|e| CliError::Schema(format!("label `{s}`: {e}")))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StepsInput {
    vertices: usize,
    #[serde(default)]
    labels: Option<Vec<LabelValue>>,
    complexes: Vec<Vec<Vec<usize>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LowerStarInput {
    complex: ComplexJson,
    values: Vec<LabelValue>,
}

/// Loads a filtration file, either explicit steps
/// `{"vertices": n, "labels": [..], "complexes": [[simplex, ..], ..]}`
/// or vertex values `{"complex": {..}, "values": [..]}`.
pub fn load_filtration(path: &Path) -> CliResult<Filtration<BigRational>> {
    let v: Value = read_json(path)?;
    if v.get("values").is_some() {
        let input: LowerStarInput = from_value(path, v)?;
        let k = SimplicialComplex::from_json(&input.complex)?;
        let values = input
            .values
            .iter()
            .map(LabelValue::to_rational)
            .collect::<CliResult<Vec<_>>>()?;
        return Ok(lower_star_filtration(&k, &values)?);
    }
    let input: StepsInput = from_value(path, v)?;
    let labels = match &input.labels {
        Some(l) => l
            .iter()
            .map(LabelValue::to_rational)
            .collect::<CliResult<Vec<_>>>()?,
        None => (0..input.complexes.len())
            .map(|i| BigRational::from_integer(i.into()))
            .collect(),
    };
    let complexes = input
        .complexes
        .iter()
        .map(|gens| SimplicialComplex::from_simplices(input.vertices, gens))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Filtration::new(complexes, labels)?)
}
