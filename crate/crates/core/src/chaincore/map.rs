use std::collections::BTreeMap;
use std::sync::Arc;

use super::complex::{ChainComplex, Element};
use super::matrix::SparseMatrix;
use crate::error::{Error, Result};

/// Homogeneous map of degree `k` between two complexes, stored blockwise.
///
/// Block `d` is the matrix `source_d → target_{d+k}`. Blocks exist exactly
/// for the source degrees in `[source.min, valid_max]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub source: Arc<ChainComplex>,
    pub target: Arc<ChainComplex>,
    pub degree: i64,
    blocks: BTreeMap<i64, SparseMatrix>,
    valid_max: i64,
}

fn valid_max_for(source: &ChainComplex, target: &ChainComplex, k: i64) -> i64 {
    let t = target.known_max();
    let from_target = if t == i64::MAX { i64::MAX } else { t - k };
    source.window().max_degree.min(from_target)
}

impl GradedMap {
    pub fn zero(source: Arc<ChainComplex>, target: Arc<ChainComplex>, degree: i64) -> Self {
        let valid_max = valid_max_for(&source, &target, degree);
        let mut blocks = BTreeMap::new();
        for d in source.window().min_degree..=valid_max {
            blocks.insert(d, SparseMatrix::zeros(target.rank(d + degree), source.rank(d)));
        }
        GradedMap { source, target, degree, blocks, valid_max }
    }

    pub fn identity(c: Arc<ChainComplex>) -> Self {
        let mut m = Self::zero(c.clone(), c.clone(), 0);
        for (d, b) in m.blocks.iter_mut() {
            *b = SparseMatrix::identity(c.rank(*d));
        }
        m
    }

    /// Builds a map from the image of every source basis element.
    pub fn from_fn(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        degree: i64,
        mut image: impl FnMut(i64, usize) -> BTreeMap<usize, i64>,
    ) -> Self {
        let mut m = Self::zero(source.clone(), target, degree);
        for (d, b) in m.blocks.iter_mut() {
            for j in 0..source.rank(*d) {
                for (i, v) in image(*d, j) {
                    b.add(i, j, v);
                }
            }
        }
        m
    }

    pub fn valid_max(&self) -> i64 {
        self.valid_max
    }

    /// Top source degree on which the map is known; `i64::MAX` when the
    /// source is complete and every stored block is present.
    pub fn known_through(&self) -> i64 {
        if self.source.is_complete() && self.valid_max >= self.source.window().max_degree {
            i64::MAX
        } else {
            self.valid_max
        }
    }

    pub fn block(&self, d: i64) -> SparseMatrix {
        match self.blocks.get(&d) {
            Some(b) => b.clone(),
            None => SparseMatrix::zeros(self.target.rank(d + self.degree), self.source.rank(d)),
        }
    }

    pub fn set_block(&mut self, d: i64, m: SparseMatrix) -> Result<()> {
        let cur = self
            .blocks
            .get_mut(&d)
            .ok_or_else(|| Error::Precondition(format!("degree {d} outside the valid range of the map")))?;
        if (cur.rows(), cur.cols()) != (m.rows(), m.cols()) {
            return Err(Error::SizeMismatch(format!("block {d}")));
        }
        *cur = m;
        Ok(())
    }

    pub fn blocks(&self) -> impl Iterator<Item = (i64, &SparseMatrix)> {
        self.blocks.iter().map(|(d, m)| (*d, m))
    }

    pub fn apply(&self, x: &Element) -> Element {
        Element { degree: x.degree + self.degree, coeffs: self.block(x.degree).apply(&x.coeffs) }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|b| b.is_zero())
    }

    fn check_same_ends(&self, other: &GradedMap) -> Result<()> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(Error::SizeMismatch("maps have different source, target or degree".into()));
        }
        Ok(())
    }

    pub fn plus(&self, other: &GradedMap) -> Result<GradedMap> {
        self.check_same_ends(other)?;
        let valid_max = self.valid_max.min(other.valid_max);
        let blocks =
            self.blocks.iter().filter(|(d, _)| **d <= valid_max).map(|(d, b)| (*d, b.plus(&other.block(*d)))).collect();
        Ok(GradedMap { blocks, valid_max, ..self.clone() })
    }

    pub fn scale(&self, k: i64) -> GradedMap {
        let blocks = self.blocks.iter().map(|(d, b)| (*d, b.scale(k))).collect();
        GradedMap { blocks, ..self.clone() }
    }

    pub fn minus(&self, other: &GradedMap) -> Result<GradedMap> {
        self.plus(&other.scale(-1))
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &GradedMap) -> Result<GradedMap> {
        if g.target != self.source {
            return Err(Error::SizeMismatch("composition of non-composable maps".into()));
        }
        let degree = self.degree + g.degree;
        let mut valid_max = g.valid_max;
        let known = self.known_through();
        if known != i64::MAX {
            valid_max = valid_max.min(known - g.degree);
        }
        let mut blocks = BTreeMap::new();
        for d in g.source.window().min_degree..=valid_max {
            blocks.insert(d, self.block(d + g.degree).mul(&g.block(d)));
        }
        Ok(GradedMap { source: g.source.clone(), target: self.target.clone(), degree, blocks, valid_max })
    }

    /// `∂f = ∂∘f − (−1)^{deg f} f∘∂`, a map of degree `deg f − 1`.
    pub fn boundary_of_map(&self) -> GradedMap {
        let k = self.degree;
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        let mut blocks = BTreeMap::new();
        for (&d, f) in &self.blocks {
            let left = self.target.boundary_matrix(d + k).mul(f);
            let right = self.block(d - 1).mul(&self.source.boundary_matrix(d));
            blocks.insert(d, left.minus(&right.scale(sign)));
        }
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: k - 1,
            blocks,
            valid_max: self.valid_max,
        }
    }

    pub fn is_chain_map(&self) -> bool {
        self.boundary_of_map().is_zero()
    }

    /// First source degree where `self` and `other` differ.
    pub fn first_difference(&self, other: &GradedMap) -> Option<i64> {
        let top = self.valid_max.min(other.valid_max);
        self.blocks.keys().copied().filter(|d| *d <= top).find(|d| self.block(*d) != other.block(*d))
    }
}
