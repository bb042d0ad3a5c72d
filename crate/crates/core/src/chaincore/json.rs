//! JSON formats for complexes and homology reports.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::complex::{ChainComplex, TruncationWindow};
use super::homology::AbelianGroup;
use super::matrix::SparseMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowJson {
    pub min: i64,
    pub max: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeJson {
    pub d: i64,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialJson {
    pub d: i64,
    pub entries: Vec<(usize, usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub name: String,
    pub window: WindowJson,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub complete: bool,
    pub degrees: Vec<DegreeJson>,
    pub differential: Vec<DifferentialJson>,
}

impl From<&ChainComplex> for ComplexJson {
    fn from(c: &ChainComplex) -> Self {
        let w = c.window();
        ComplexJson {
            name: c.name.clone(),
            window: WindowJson { min: w.min_degree, max: w.max_degree },
            complete: c.is_complete(),
            degrees: w.degrees().map(|d| DegreeJson { d, basis: c.basis(d).to_vec() }).collect(),
            differential: c
                .boundary_degrees()
                .map(|d| DifferentialJson { d, entries: c.boundary_matrix(d).row_major_triplets() })
                .filter(|dj| !dj.entries.is_empty())
                .collect(),
        }
    }
}

impl TryFrom<&ComplexJson> for ChainComplex {
    type Error = Error;

    fn try_from(j: &ComplexJson) -> Result<Self> {
        let window = TruncationWindow::new(j.window.min, j.window.max)?;
        let basis: BTreeMap<i64, Vec<String>> = j.degrees.iter().map(|d| (d.d, d.basis.clone())).collect();
        let mut diff = BTreeMap::new();
        for dj in &j.differential {
            let rows = basis.get(&(dj.d - 1)).map_or(0, |b| b.len());
            let cols = basis.get(&dj.d).map_or(0, |b| b.len());
            if let Some(&(r, c, _)) = dj.entries.iter().find(|(r, c, _)| *r >= rows || *c >= cols) {
                return Err(Error::Parse(format!("entry ({r},{c}) out of range in degree {}", dj.d)));
            }
            diff.insert(dj.d, SparseMatrix::from_triplets(rows, cols, &dj.entries));
        }
        let c = ChainComplex::new(j.name.clone(), window, basis, diff)?;
        Ok(if j.complete { c.into_complete() } else { c })
    }
}

pub fn complex_to_json(c: &ChainComplex) -> String {
    serde_json::to_string_pretty(&ComplexJson::from(c)).expect("serializable")
}

pub fn complex_from_json(s: &str) -> Result<ChainComplex> {
    let j: ComplexJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    ChainComplex::try_from(&j)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyJson {
    pub d: i64,
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

pub fn homology_to_json(h: &BTreeMap<i64, AbelianGroup>) -> Vec<HomologyJson> {
    h.iter()
        .map(|(&d, g)| HomologyJson {
            d,
            free_rank: g.free_rank,
            torsion: g.torsion.iter().map(|t| t.to_u64().expect("torsion coefficient fits in u64")).collect(),
        })
        .collect()
}
