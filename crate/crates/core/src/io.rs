//! JSON formats for simplicial sets and cochains.
//!
//! Ordered complex:
//! ```json
//! { "vertices": ["a", "b", "c"], "facets": [["a", "b", "c"]] }
//! ```
//! General face table, faces listed for `k = 0..=dim`:
//! ```json
//! { "generators": [["*"], [], ["σ"]],
//!   "faces": { "σ": [ { "degeneracies": [0], "target": "*" }, ... ] } }
//! ```
//! Cochain over Z₂:
//! ```json
//! { "degree": 1, "support": ["1,2", "2,3"] }
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::chains::Cochain;
use crate::error::{Error, Result};
use crate::simplicial::{FaceSpec, GeneratorSpec, SimplicialSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderedComplexFile {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

impl OrderedComplexFile {
    pub fn build(&self) -> Result<SimplicialSet> {
        SimplicialSet::from_ordered_complex(&self.vertices, &self.facets)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceEntry {
    #[serde(default)]
    pub degeneracies: Vec<usize>,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceTableFile {
    pub generators: Vec<Vec<String>>,
    #[serde(default)]
    pub faces: BTreeMap<String, Vec<FaceEntry>>,
}

impl FaceTableFile {
    pub fn build(&self) -> Result<SimplicialSet> {
        let mut specs = Vec::new();
        for (dim, names) in self.generators.iter().enumerate() {
            for name in names {
                let faces = match self.faces.get(name) {
                    Some(list) => list
                        .iter()
                        .map(|e| FaceSpec { degeneracies: e.degeneracies.clone(), target: e.target.clone() })
                        .collect(),
                    None if dim == 0 => Vec::new(),
                    None => return Err(Error::InvalidSet(format!("no faces given for generator `{name}`"))),
                };
                specs.push(GeneratorSpec { name: name.clone(), dim, faces });
            }
        }
        for name in self.faces.keys() {
            if !self.generators.iter().flatten().any(|g| g == name) {
                return Err(Error::UnknownGenerator(name.clone()));
            }
        }
        SimplicialSet::from_generators(specs)
    }

    pub fn from_set(space: &SimplicialSet) -> Self {
        let mut generators = vec![Vec::new(); space.top_dim() + 1];
        let mut faces = BTreeMap::new();
        for spec in space.to_generator_specs() {
            generators[spec.dim].push(spec.name.clone());
            if spec.dim > 0 {
                faces.insert(
                    spec.name,
                    spec.faces.into_iter().map(|f| FaceEntry { degeneracies: f.degeneracies, target: f.target }).collect(),
                );
            }
        }
        FaceTableFile { generators, faces }
    }
}

/// Parses either space format, deciding by the top-level keys. The result is
/// validated against the simplicial identities.
pub fn parse_space(text: &str) -> Result<SimplicialSet> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let obj = value.as_object().ok_or_else(|| Error::Parse {
        line: 1,
        column: 1,
        message: "expected a JSON object".into(),
    })?;
    let space = if obj.contains_key("facets") {
        serde_json::from_str::<OrderedComplexFile>(text)?.build()?
    } else if obj.contains_key("generators") {
        serde_json::from_str::<FaceTableFile>(text)?.build()?
    } else {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "expected either `vertices`/`facets` or `generators`/`faces`".into(),
        });
    };
    space.validated()
}

pub fn read_space(path: &Path) -> Result<SimplicialSet> {
    parse_space(&std::fs::read_to_string(path)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainFile {
    pub degree: usize,
    pub support: Vec<String>,
}

impl CochainFile {
    pub fn resolve(&self, space: &SimplicialSet) -> Result<Cochain> {
        let ids = self
            .support
            .iter()
            .map(|n| space.find(n).ok_or_else(|| Error::UnknownGenerator(n.clone())))
            .collect::<Result<Vec<_>>>()?;
        Cochain::from_support(space, self.degree, ids)
    }

    pub fn from_cochain(space: &SimplicialSet, c: &Cochain) -> Self {
        CochainFile { degree: c.degree(), support: c.support().iter().map(|&g| space.name(g).to_string()).collect() }
    }
}

pub fn parse_cochain(space: &SimplicialSet, text: &str) -> Result<Cochain> {
    serde_json::from_str::<CochainFile>(text)?.resolve(space)
}

pub fn read_cochain(space: &SimplicialSet, path: &Path) -> Result<Cochain> {
    parse_cochain(space, &std::fs::read_to_string(path)?)
}

pub fn cochain_to_json(space: &SimplicialSet, c: &Cochain) -> String {
    serde_json::to_string(&CochainFile::from_cochain(space, c)).expect("plain data serializes")
}
