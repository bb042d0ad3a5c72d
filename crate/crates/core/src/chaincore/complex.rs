use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::matrix::SparseMatrix;
use crate::error::{Error, Result};

/// Range of degrees on which a complex is known exactly.
///
/// Truncation in this crate only ever happens from above: everything below
/// `min_degree` is genuinely zero, while degrees above `max_degree` are
/// simply unknown. Boundaries out of `max_degree` are therefore not stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationWindow {
    pub min_degree: i64,
    pub max_degree: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_rank: Option<usize>,
}

impl TruncationWindow {
    pub fn new(min_degree: i64, max_degree: i64) -> Result<Self> {
        if min_degree > max_degree {
            return Err(Error::EmptyWindow { min: min_degree, max: max_degree });
        }
        Ok(TruncationWindow { min_degree, max_degree, max_rank: None })
    }

    pub fn contains(&self, d: i64) -> bool {
        self.min_degree <= d && d <= self.max_degree
    }

    pub fn shifted(&self, k: i64) -> Self {
        TruncationWindow { min_degree: self.min_degree + k, max_degree: self.max_degree + k, max_rank: self.max_rank }
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.min_degree..=self.max_degree
    }
}

/// Sparse integer vector in one degree of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element {
    pub degree: i64,
    pub coeffs: BTreeMap<usize, i64>,
}

impl Element {
    pub fn basis(degree: i64, index: usize) -> Self {
        Element { degree, coeffs: BTreeMap::from([(index, 1)]) }
    }

    pub fn zero(degree: i64) -> Self {
        Element { degree, coeffs: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// A free graded ℤ-module with labelled basis and a degree −1 differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub name: String,
    window: TruncationWindow,
    basis: BTreeMap<i64, Vec<String>>,
    /// keyed by source degree d: matrix from degree d to degree d-1
    differential: BTreeMap<i64, SparseMatrix>,
    index: HashMap<(i64, String), usize>,
    /// when set, every degree above the window is zero
    complete: bool,
}

impl ChainComplex {
    /// Builds a complex from per-degree bases and boundary matrices.
    ///
    /// Missing matrices are zero. Matrix shapes are checked, `∂∂ = 0` is not
    /// (see [`ChainComplex::check_d_squared`]).
    pub fn new(
        name: impl Into<String>,
        window: TruncationWindow,
        basis: BTreeMap<i64, Vec<String>>,
        differential: BTreeMap<i64, SparseMatrix>,
    ) -> Result<Self> {
        let mut full_basis = BTreeMap::new();
        for d in window.degrees() {
            full_basis.insert(d, basis.get(&d).cloned().unwrap_or_default());
        }
        if let Some((&d, _)) = basis.iter().find(|(d, b)| !window.contains(**d) && !b.is_empty()) {
            return Err(Error::SizeMismatch(format!("basis given in degree {d} outside the window")));
        }
        let mut diff = BTreeMap::new();
        for d in window.min_degree + 1..=window.max_degree {
            let rows = full_basis[&(d - 1)].len();
            let cols = full_basis[&d].len();
            let m = differential.get(&d).cloned().unwrap_or_else(|| SparseMatrix::zeros(rows, cols));
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::SizeMismatch(format!(
                    "boundary out of degree {d} is {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )));
            }
            diff.insert(d, m);
        }
        let mut index = HashMap::new();
        for (&d, labels) in &full_basis {
            for (i, l) in labels.iter().enumerate() {
                if index.insert((d, l.clone()), i).is_some() {
                    return Err(Error::SizeMismatch(format!("duplicate label {l:?} in degree {d}")));
                }
            }
        }
        Ok(ChainComplex { name: name.into(), window, basis: full_basis, differential: diff, index, complete: false })
    }

    pub fn window(&self) -> TruncationWindow {
        self.window
    }

    /// Marks the complex as bounded: nothing lives above the window.
    pub fn into_complete(mut self) -> Self {
        self.complete = true;
        self
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Highest degree known exactly (`i64::MAX` for complete complexes).
    pub fn known_max(&self) -> i64 {
        if self.complete {
            i64::MAX
        } else {
            self.window.max_degree
        }
    }

    pub fn basis(&self, d: i64) -> &[String] {
        self.basis.get(&d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn rank(&self, d: i64) -> usize {
        self.basis(d).len()
    }

    pub fn index_of(&self, d: i64, label: &str) -> Option<usize> {
        self.index.get(&(d, label.to_string())).copied()
    }

    /// Degree of the first basis element carrying `label`.
    pub fn find(&self, label: &str) -> Option<(i64, usize)> {
        self.window.degrees().find_map(|d| self.index_of(d, label).map(|i| (d, i)))
    }

    /// Boundary out of degree `d`, i.e. the matrix `C_d → C_{d-1}`.
    ///
    /// At `d = min_degree` this is the zero map into the (zero) degree below.
    pub fn boundary_matrix(&self, d: i64) -> SparseMatrix {
        match self.differential.get(&d) {
            Some(m) => m.clone(),
            None => SparseMatrix::zeros(self.rank(d - 1), self.rank(d)),
        }
    }

    pub fn boundary(&self, x: &Element) -> Element {
        let m = self.boundary_matrix(x.degree);
        Element { degree: x.degree - 1, coeffs: m.apply(&x.coeffs) }
    }

    /// Degrees `d` whose outgoing boundary is known.
    pub fn boundary_degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.differential.keys().copied()
    }

    /// Checks ∂∘∂ = 0 wherever both factors are known.
    pub fn check_d_squared(&self) -> bool {
        (self.window.min_degree + 2..=self.window.max_degree)
            .all(|d| self.boundary_matrix(d - 1).mul(&self.boundary_matrix(d)).is_zero())
    }

    pub fn total_rank(&self) -> usize {
        self.basis.values().map(|b| b.len()).sum()
    }

    /// Same complex with a smaller top degree.
    pub fn truncate_above(&self, max_degree: i64) -> Result<Self> {
        let w = TruncationWindow::new(self.window.min_degree, max_degree.min(self.window.max_degree))?;
        let basis = self.basis.iter().filter(|(d, _)| w.contains(**d)).map(|(d, b)| (*d, b.clone())).collect();
        let diff = self.differential.iter().filter(|(d, _)| w.contains(**d)).map(|(d, m)| (*d, m.clone())).collect();
        ChainComplex::new(self.name.clone(), w, basis, diff)
    }

    pub fn rename(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Relabels basis elements in each degree by a permutation of indices:
    /// new position `perm[d][i]` receives old basis element `i`.
    pub fn permute_basis(&self, perm: &BTreeMap<i64, Vec<usize>>) -> Result<Self> {
        let mut basis = BTreeMap::new();
        for (&d, labels) in &self.basis {
            let p = &perm[&d];
            let mut nl = vec![String::new(); labels.len()];
            for (i, l) in labels.iter().enumerate() {
                nl[p[i]] = l.clone();
            }
            basis.insert(d, nl);
        }
        let mut diff = BTreeMap::new();
        for (&d, m) in &self.differential {
            let (pr, pc) = (&perm[&(d - 1)], &perm[&d]);
            let t: Vec<_> = m.triplets().into_iter().map(|(r, c, v)| (pr[r], pc[c], v)).collect();
            diff.insert(d, SparseMatrix::from_triplets(m.rows(), m.cols(), &t));
        }
        Ok(ChainComplex { complete: self.complete, ..ChainComplex::new(self.name.clone(), self.window, basis, diff)? })
    }
}

/// Small builder used by constructors throughout the crate.
#[derive(Default)]
pub struct ComplexBuilder {
    basis: BTreeMap<i64, Vec<String>>,
    entries: BTreeMap<i64, Vec<(usize, usize, i64)>>,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn generator(&mut self, d: i64, label: impl Into<String>) -> usize {
        let v = self.basis.entry(d).or_default();
        v.push(label.into());
        v.len() - 1
    }

    /// `∂(source in degree d) ∋ coeff * target in degree d-1`
    pub fn boundary_entry(&mut self, d: i64, source: usize, target: usize, coeff: i64) {
        self.entries.entry(d).or_default().push((target, source, coeff));
    }

    pub fn build(self, name: &str, window: TruncationWindow) -> Result<ChainComplex> {
        let mut diff = BTreeMap::new();
        for (d, t) in self.entries {
            let rows = self.basis.get(&(d - 1)).map_or(0, |b| b.len());
            let cols = self.basis.get(&d).map_or(0, |b| b.len());
            diff.insert(d, SparseMatrix::from_triplets(rows, cols, &t));
        }
        ChainComplex::new(name, window, self.basis, diff)
    }
}

/// `𝒞([0,1])`: vertices `p0`, `p1` and the edge `q` with `∂q = p1 - p0`.
pub fn interval_complex() -> ChainComplex {
    let mut b = ComplexBuilder::new();
    let p0 = b.generator(0, "p0");
    let p1 = b.generator(0, "p1");
    let q = b.generator(1, "q");
    b.boundary_entry(1, q, p1, 1);
    b.boundary_entry(1, q, p0, -1);
    b.build("I", TruncationWindow::new(0, 1).unwrap()).unwrap().into_complete()
}

/// ℤ concentrated in degree `d`.
pub fn integers_in_degree(d: i64, label: &str) -> ChainComplex {
    let mut b = ComplexBuilder::new();
    b.generator(d, label);
    b.build(&format!("Z[{d}]"), TruncationWindow::new(d, d).unwrap()).unwrap().into_complete()
}
