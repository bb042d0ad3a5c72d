//! Operad dumps: components, generator actions and a composition table.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{check_slot, component, lc_insert, lc_linear, DegreeRange, LinComb, Operad};
use crate::chaincore::json::ComplexJson;
use crate::chaincore::ChainComplex;
use crate::error::{Error, Result};
use crate::symgrp::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionJson {
    /// the adjacent transposition `(j, j+1)`
    pub generator: usize,
    pub d: i64,
    pub entries: Vec<(usize, usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub rank: usize,
    pub complex: ComplexJson,
    pub action: Vec<ActionJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionJson {
    pub a: (usize, String),
    pub i: usize,
    pub b: (usize, String),
    pub value: Vec<(i64, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperadJson {
    pub name: String,
    pub max_rank: usize,
    pub unit: Vec<(i64, String)>,
    pub components: Vec<ComponentJson>,
    /// nonzero `a ∘_i b` with result rank at most `max_rank` and known degree
    pub compositions: Vec<CompositionJson>,
}

fn lc_json<O: Operad>(op: &O, x: &LinComb<O::Basis>) -> Vec<(i64, String)> {
    let mut v: Vec<(i64, String)> = x.iter().map(|(b, &c)| (c, op.label(b))).collect();
    v.sort_by(|p, q| p.1.cmp(&q.1));
    v
}

pub fn dump_operad<O: Operad>(op: &O) -> Result<OperadJson> {
    let max_rank = op.max_rank();
    let mut components = Vec::new();
    let mut elems = vec![Vec::new()];
    for n in 1..=max_rank {
        let (c, lists) = component(op, n)?;
        let mut action = Vec::new();
        for j in 1..n {
            let s = Permutation::transposition(n, j, j + 1);
            for (&d, list) in &lists {
                let index: HashMap<&O::Basis, usize> = list.iter().enumerate().map(|(k, x)| (x, k)).collect();
                let mut entries = Vec::new();
                for (col, x) in list.iter().enumerate() {
                    for (y, v) in op.act(&s, x) {
                        let row = *index.get(&y).ok_or_else(|| Error::UnknownLabel(op.label(&y)))?;
                        entries.push((row, col, v));
                    }
                }
                entries.sort();
                if !entries.is_empty() {
                    action.push(ActionJson { generator: j, d, entries });
                }
            }
        }
        components.push(ComponentJson { rank: n, complex: ComplexJson::from(&c), action });
        elems.push(lists.into_values().flatten().collect::<Vec<_>>());
    }
    let mut compositions = Vec::new();
    for n in 1..=max_rank {
        for m in 1..=max_rank + 1 - n {
            for a in &elems[n] {
                for b in &elems[m] {
                    if !op.degrees(n + m - 1).known(op.degree_of(a) + op.degree_of(b)) {
                        continue;
                    }
                    for i in 1..=m {
                        let v = op.compose(a, i, b)?;
                        if !v.is_empty() {
                            compositions.push(CompositionJson {
                                a: (n, op.label(a)),
                                i,
                                b: (m, op.label(b)),
                                value: lc_json(op, &v),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(OperadJson { name: op.name(), max_rank, unit: lc_json(op, &op.unit()), components, compositions })
}

/// Basis element of a loaded operad: `(rank, degree, index)`.
pub type TableBasis = (usize, i64, usize);

/// An operad read back from a dump. Compositions outside the table's
/// window are errors; missing entries inside it are zero.
#[derive(Clone, Debug)]
pub struct TableOperad {
    name: String,
    max_rank: usize,
    ranges: Vec<DegreeRange>,
    complexes: Vec<ChainComplex>,
    labels: HashMap<(usize, String), TableBasis>,
    /// `generators[n][j-1]` maps a basis element to its image under `(j, j+1)`
    generators: Vec<Vec<HashMap<TableBasis, LinComb<TableBasis>>>>,
    table: HashMap<(TableBasis, usize, TableBasis), LinComb<TableBasis>>,
    unit: LinComb<TableBasis>,
}

impl TableOperad {
    pub fn from_json(j: &OperadJson) -> Result<Self> {
        let mut ranges = Vec::new();
        let mut complexes = Vec::new();
        let mut labels = HashMap::new();
        let mut generators = vec![Vec::new()];
        for (k, comp) in j.components.iter().enumerate() {
            if comp.rank != k + 1 {
                return Err(Error::Parse(format!("component {k} has rank {}", comp.rank)));
            }
            let c = ChainComplex::try_from(&comp.complex)?;
            let w = c.window();
            for d in w.degrees() {
                for (idx, l) in c.basis(d).iter().enumerate() {
                    if labels.insert((comp.rank, l.clone()), (comp.rank, d, idx)).is_some() {
                        return Err(Error::Parse(format!("duplicate label {l} in rank {}", comp.rank)));
                    }
                }
            }
            let mut gens = vec![HashMap::new(); comp.rank.saturating_sub(1)];
            for a in &comp.action {
                if a.generator == 0 || a.generator >= comp.rank {
                    return Err(Error::Parse(format!("generator {} in rank {}", a.generator, comp.rank)));
                }
                let size = c.rank(a.d);
                for &(r, col, v) in &a.entries {
                    if r >= size || col >= size {
                        return Err(Error::Parse(format!("action entry ({r},{col}) out of range")));
                    }
                    let g: &mut HashMap<TableBasis, LinComb<TableBasis>> = &mut gens[a.generator - 1];
                    lc_insert(g.entry((comp.rank, a.d, col)).or_default(), (comp.rank, a.d, r), v);
                }
            }
            ranges.push(DegreeRange::new(w.min_degree, w.max_degree, c.is_complete()));
            complexes.push(c);
            generators.push(gens);
        }
        if j.components.len() != j.max_rank {
            return Err(Error::Parse("component count differs from max_rank".into()));
        }
        let find = |rank: usize, l: &str| {
            labels.get(&(rank, l.to_string())).copied().ok_or_else(|| Error::UnknownLabel(l.into()))
        };
        let parse_lc = |rank: usize, v: &[(i64, String)]| -> Result<LinComb<TableBasis>> {
            let mut out = LinComb::new();
            for (c, l) in v {
                lc_insert(&mut out, find(rank, l)?, *c);
            }
            Ok(out)
        };
        let mut table = HashMap::new();
        for e in &j.compositions {
            let (a, b) = (find(e.a.0, &e.a.1)?, find(e.b.0, &e.b.1)?);
            table.insert((a, e.i, b), parse_lc(e.a.0 + e.b.0 - 1, &e.value)?);
        }
        let unit = parse_lc(1, &j.unit)?;
        Ok(TableOperad {
            name: j.name.clone(),
            max_rank: j.max_rank,
            ranges,
            complexes,
            labels,
            generators,
            table,
            unit,
        })
    }

    pub fn find(&self, rank: usize, label: &str) -> Option<TableBasis> {
        self.labels.get(&(rank, label.to_string())).copied()
    }

    fn act_generator(&self, j: usize, x: &TableBasis) -> LinComb<TableBasis> {
        self.generators[x.0][j - 1].get(x).cloned().unwrap_or_default()
    }
}

/// Adjacent transpositions `j_1, …, j_k` with `σ = s_{j_k} ⋯ s_{j_1}`.
pub fn adjacent_word(sigma: &Permutation) -> Vec<usize> {
    let mut img = sigma.images().to_vec();
    let mut out = Vec::new();
    let mut changed = true;
    while changed {
        changed = false;
        for j in 0..img.len().saturating_sub(1) {
            if img[j] > img[j + 1] {
                img.swap(j, j + 1);
                out.push(j + 1);
                changed = true;
            }
        }
    }
    out
}

impl Operad for TableOperad {
    type Basis = TableBasis;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn max_rank(&self) -> usize {
        self.max_rank
    }

    fn degrees(&self, rank: usize) -> DegreeRange {
        rank.checked_sub(1).and_then(|k| self.ranges.get(k)).copied().unwrap_or(DegreeRange::new(0, -1, false))
    }

    fn basis(&self, rank: usize, degree: i64) -> Vec<TableBasis> {
        match rank.checked_sub(1).and_then(|k| self.complexes.get(k)) {
            Some(c) if c.window().contains(degree) => (0..c.rank(degree)).map(|k| (rank, degree, k)).collect(),
            _ => Vec::new(),
        }
    }

    fn rank_of(&self, x: &TableBasis) -> usize {
        x.0
    }

    fn degree_of(&self, x: &TableBasis) -> i64 {
        x.1
    }

    fn label(&self, x: &TableBasis) -> String {
        self.complexes[x.0 - 1].basis(x.1)[x.2].clone()
    }

    fn boundary(&self, x: &TableBasis) -> LinComb<TableBasis> {
        let c = &self.complexes[x.0 - 1];
        if x.1 <= c.window().min_degree {
            return LinComb::new();
        }
        c.boundary_matrix(x.1).column(x.2).iter().map(|(&r, &v)| ((x.0, x.1 - 1, r), v)).collect()
    }

    fn act(&self, sigma: &Permutation, x: &TableBasis) -> LinComb<TableBasis> {
        let mut cur = LinComb::from([(*x, 1)]);
        for j in adjacent_word(sigma) {
            cur = lc_linear(&cur, |y| self.act_generator(j, y));
        }
        cur
    }

    fn compose(&self, a: &TableBasis, i: usize, b: &TableBasis) -> Result<LinComb<TableBasis>> {
        check_slot(i, b.0)?;
        let rank = a.0 + b.0 - 1;
        if rank > self.max_rank {
            return Err(Error::RankOverflow { rank, max_rank: self.max_rank });
        }
        if !self.degrees(rank).known(a.1 + b.1) {
            return Err(Error::DegreeTruncated { rank, degree: a.1 + b.1 });
        }
        Ok(self.table.get(&(*a, i, *b)).cloned().unwrap_or_default())
    }

    fn unit(&self) -> LinComb<TableBasis> {
        self.unit.clone()
    }
}

pub fn operad_to_json<O: Operad>(op: &O) -> Result<String> {
    Ok(serde_json::to_string_pretty(&dump_operad(op)?).expect("serializable"))
}

pub fn operad_from_json(s: &str) -> Result<TableOperad> {
    let j: OperadJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    TableOperad::from_json(&j)
}
