//! JSON input files: set families, grids, cubes, and sumset parameter
//! bundles. Field elements are JSON integers; group elements are strings in
//! the `r:v1,...,vr;t:k` text form.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use addcomb_core::groups::{GroupElement, GroupSpec};
use addcomb_core::nullstellensatz::GridFamily;
use addcomb_core::polyring::CoefficientRing;

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("bad JSON in {}: {e}", path.display()))
}

pub fn read_text(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

/// Set family file: arrays of group-element strings.
pub type SetsFile = Vec<Vec<String>>;

pub fn parse_group_sets(
    spec: &GroupSpec,
    raw: &SetsFile,
) -> Result<Vec<Vec<GroupElement>>, String> {
    raw.iter()
        .map(|set| {
            set.iter()
                .map(|s| GroupElement::parse(s, spec).map_err(|e| e.to_string()))
                .collect()
        })
        .collect()
}

/// Grid file for certificate searches.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridFile {
    pub field: FieldSpec,
    pub sets: Vec<Vec<i64>>,
    pub target_degrees: Vec<u32>,
}

/// `"integers"` or a prime modulus.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Prime(u64),
    Named(String),
}

impl FieldSpec {
    pub fn to_ring(&self) -> Result<CoefficientRing, String> {
        match self {
            FieldSpec::Prime(p) => CoefficientRing::mod_p(*p).map_err(|e| e.to_string()),
            FieldSpec::Named(name) if name == "integers" => Ok(CoefficientRing::integers()),
            FieldSpec::Named(name) => Err(format!(
                "unknown field `{name}`; expected a prime or \"integers\""
            )),
        }
    }
}

impl GridFile {
    pub fn to_grid(&self) -> Result<(CoefficientRing, GridFamily), String> {
        let ring = self.field.to_ring()?;
        let sets: Vec<Vec<BigInt>> = self
            .sets
            .iter()
            .map(|set| set.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let grid = GridFamily::new(ring, sets, self.target_degrees.clone())
            .map_err(|e| e.to_string())?;
        Ok((ring, grid))
    }
}

/// Cube file: three levels of nested arrays.
pub type CubeFile = Vec<Vec<Vec<u32>>>;

pub fn cube_from_nested(nested: &CubeFile) -> Result<addcomb_core::latincube::Cube, String> {
    let n = nested.len();
    let mut entries = Vec::with_capacity(n * n * n);
    for plane in nested {
        if plane.len() != n {
            return Err("cube file must be n x n x n".into());
        }
        for line in plane {
            if line.len() != n {
                return Err("cube file must be n x n x n".into());
            }
            entries.extend_from_slice(line);
        }
    }
    addcomb_core::latincube::Cube::from_entries(n, entries).map_err(|e| e.to_string())
}

pub fn cube_to_nested(cube: &addcomb_core::latincube::Cube) -> CubeFile {
    let n = cube.side();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| cube.entry(i, j, k)).collect())
                .collect()
        })
        .collect()
}

/// One pairwise exclusion entry for the difference-restricted bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairEntry {
    pub i: usize,
    pub j: usize,
    pub set: Vec<i64>,
}

/// Parameter bundle for the sumset subcommand. Families may be omitted for
/// the field-side theorems, in which case they are generated from the run
/// seed. Group-side instances carry a `group` spec and element strings.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SumsetParamsFile {
    pub h: Option<u32>,
    pub k: Option<u32>,
    pub l: Option<u32>,
    pub m: Option<u32>,
    pub n: Option<usize>,
    pub group: Option<String>,
    #[serde(default)]
    pub a_sets: Option<Vec<Vec<serde_json::Value>>>,
    #[serde(default)]
    pub b_sets: Option<Vec<Vec<serde_json::Value>>>,
    #[serde(default)]
    pub c: Option<Vec<serde_json::Value>>,
    #[serde(default)]
    pub p_polys: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub q_polys: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub s_excluded: Option<Vec<serde_json::Value>>,
    #[serde(default)]
    pub t_excluded: Option<Vec<serde_json::Value>>,
    #[serde(default)]
    pub s_pairs: Option<Vec<PairEntry>>,
    /// Pairing values for the representative-system subcommand.
    #[serde(default)]
    pub b: Option<Vec<i64>>,
}

pub fn values_to_bigints(values: &[serde_json::Value]) -> Result<Vec<BigInt>, String> {
    values
        .iter()
        .map(|v| {
            v.as_i64()
                .map(BigInt::from)
                .ok_or_else(|| format!("expected integer field element, got {v}"))
        })
        .collect()
}

pub fn value_sets_to_bigints(
    sets: &[Vec<serde_json::Value>],
) -> Result<Vec<Vec<BigInt>>, String> {
    sets.iter().map(|s| values_to_bigints(s)).collect()
}

pub fn values_to_group_elements(
    values: &[serde_json::Value],
    spec: &GroupSpec,
) -> Result<Vec<GroupElement>, String> {
    values
        .iter()
        .map(|v| {
            let s = v
                .as_str()
                .ok_or_else(|| format!("expected group element string, got {v}"))?;
            GroupElement::parse(s, spec).map_err(|e| e.to_string())
        })
        .collect()
}

pub fn pairs_to_map(
    pairs: &[PairEntry],
) -> BTreeMap<(usize, usize), Vec<BigInt>> {
    pairs
        .iter()
        .map(|entry| {
            (
                (entry.i, entry.j),
                entry.set.iter().map(|&v| BigInt::from(v)).collect(),
            )
        })
        .collect()
}
