//! JSON form of coalgebras over `𝔖`: the carrier plus the nonzero values
//! `a(x)(c)` as words of cell labels.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Coalgebra, PointedCoalgebra};
use crate::barres::{simplex_label, Simplex};
use crate::chaincore::json::ComplexJson;
use crate::chaincore::ChainComplex;
use crate::error::{Error, Result};
use crate::operad::{lc_insert, BarOperad, Cell, CoEndBasis, CoEndOperad, LinComb, Operad, ShiftedOperad};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarSpec {
    pub max_rank: usize,
    pub max_degree: i64,
    /// `k` for coalgebras over `Σ^k 𝔖`
    #[serde(default, skip_serializing_if = "is_zero")]
    pub shift: i64,
}

fn is_zero(k: &i64) -> bool {
    *k == 0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureJson {
    pub rank: usize,
    pub element: String,
    pub cell: String,
    pub value: Vec<(i64, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoalgebraJson {
    pub name: String,
    pub operad: BarSpec,
    pub carrier: ComplexJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub augmentation: Vec<(String, i64)>,
    pub structure: Vec<StructureJson>,
}

fn label(c: &ChainComplex, x: Cell) -> String {
    c.basis(x.0)[x.1].clone()
}

pub fn dump_coalgebra(k: &Coalgebra<BarOperad>) -> CoalgebraJson {
    dump_table(k, BarSpec { max_rank: k.operad.max_rank, max_degree: k.operad.max_degree, shift: 0 })
}

pub fn dump_shifted(k: &Coalgebra<ShiftedOperad<BarOperad>>) -> CoalgebraJson {
    let b = &k.operad.base;
    dump_table(k, BarSpec { max_rank: b.max_rank, max_degree: b.max_degree, shift: k.operad.k })
}

/// Elements are written with their `𝔖` labels whatever the shift.
fn dump_table<O: Operad<Basis = Simplex>>(k: &Coalgebra<O>, operad: BarSpec) -> CoalgebraJson {
    let c = k.carrier();
    let mut structure = Vec::new();
    for (x, f) in k.entries() {
        for &cell in k.cells() {
            let mut value: Vec<(i64, Vec<String>)> = CoEndOperad::evaluate(f, &cell)
                .into_iter()
                .map(|(w, v)| (v, w.iter().map(|&y| label(c, y)).collect()))
                .collect();
            if value.is_empty() {
                continue;
            }
            value.sort_by(|a, b| a.1.cmp(&b.1));
            structure.push(StructureJson { rank: x[0].n(), element: simplex_label(x), cell: label(c, cell), value });
        }
    }
    CoalgebraJson {
        name: k.name.clone(),
        operad,
        carrier: ComplexJson::from(c.as_ref()),
        basepoint: None,
        augmentation: Vec::new(),
        structure,
    }
}

pub fn dump_pointed(k: &PointedCoalgebra) -> CoalgebraJson {
    let c = k.base.carrier();
    let mut j = dump_coalgebra(&k.base);
    j.basepoint = Some(label(c, k.basepoint));
    j.augmentation = k.augmentation.iter().map(|(&x, &v)| (label(c, x), v)).collect();
    j
}

pub fn load_coalgebra(j: &CoalgebraJson) -> Result<Coalgebra<BarOperad>> {
    if j.operad.shift != 0 {
        return Err(Error::Parse(format!("{} is over a shifted operad", j.name)));
    }
    load_table(j)
}

pub fn load_shifted(j: &CoalgebraJson) -> Result<Coalgebra<ShiftedOperad<BarOperad>>> {
    let k = load_table(j)?;
    let op = ShiftedOperad::new(k.operad.clone(), j.operad.shift);
    k.retag(op)
}

fn load_table(j: &CoalgebraJson) -> Result<Coalgebra<BarOperad>> {
    let carrier = Arc::new(ChainComplex::try_from(&j.carrier)?);
    let op = BarOperad::new(j.operad.max_rank, j.operad.max_degree)?;
    let find = |l: &str| carrier.find(l).ok_or_else(|| Error::UnknownLabel(l.into()));
    let mut table: BTreeMap<_, LinComb<CoEndBasis>> = BTreeMap::new();
    for e in &j.structure {
        let x = op.parse(&e.element)?;
        if op.rank_of(&x) != e.rank {
            return Err(Error::Parse(format!("{} does not have rank {}", e.element, e.rank)));
        }
        let src = find(&e.cell)?;
        let entry = table.entry(x).or_default();
        for (v, w) in &e.value {
            let word = w.iter().map(|l| find(l)).collect::<Result<Vec<_>>>()?;
            if word.len() != e.rank {
                return Err(Error::Parse(format!("value of {} at {} has the wrong length", e.element, e.cell)));
            }
            lc_insert(entry, CoEndBasis { src, word }, *v);
        }
    }
    let k = Coalgebra::from_fn(j.name.clone(), op, carrier, |x| Ok(table.remove(x).unwrap_or_default()))?;
    if let Some(x) = table.keys().next() {
        return Err(Error::Parse(format!("{} lies outside the operad window", k.operad.label(x))));
    }
    Ok(k)
}

pub fn load_pointed(j: &CoalgebraJson) -> Result<PointedCoalgebra> {
    let base = load_coalgebra(j)?;
    let bp = j.basepoint.as_deref().ok_or_else(|| Error::Parse("coalgebra has no basepoint".into()))?;
    let basepoint = base.cell(bp)?;
    let augmentation = j.augmentation.iter().map(|(l, v)| Ok((base.cell(l)?, *v))).collect::<Result<_>>()?;
    Ok(PointedCoalgebra { base, basepoint, augmentation })
}

pub fn coalgebra_to_json(k: &PointedCoalgebra) -> String {
    serde_json::to_string_pretty(&dump_pointed(k)).expect("serializable")
}

pub fn coalgebra_from_json(s: &str) -> Result<PointedCoalgebra> {
    let j: CoalgebraJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    load_pointed(&j)
}
