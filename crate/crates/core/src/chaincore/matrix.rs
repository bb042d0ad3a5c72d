use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Column-major sparse integer matrix.
///
/// Column `j` maps basis element `j` of the source to a combination of
/// target basis elements. Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<BTreeMap<usize, i64>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![BTreeMap::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, i64)]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for &(r, c, v) in triplets {
            m.add(r, c, v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.columns[c].get(&r).copied().unwrap_or(0)
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v == 0 {
            self.columns[c].remove(&r);
        } else {
            self.columns[c].insert(r, v);
        }
    }

    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        let cur = self.get(r, c);
        self.set(r, c, cur.checked_add(v).expect("integer overflow"));
    }

    pub fn column(&self, c: usize) -> &BTreeMap<usize, i64> {
        &self.columns[c]
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    /// Triplets in column-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::with_capacity(self.nnz());
        for (c, col) in self.columns.iter().enumerate() {
            for (&r, &v) in col {
                out.push((r, c, v));
            }
        }
        out
    }

    /// Triplets sorted by (row, col), the order used for serialization.
    pub fn row_major_triplets(&self) -> Vec<(usize, usize, i64)> {
        let mut t = self.triplets();
        t.sort_unstable_by_key(|&(r, c, _)| (r, c));
        t
    }

    pub fn apply(&self, v: &BTreeMap<usize, i64>) -> BTreeMap<usize, i64> {
        let mut out = BTreeMap::new();
        for (&j, &x) in v {
            for (&i, &a) in &self.columns[j] {
                let e = out.entry(i).or_insert(0i64);
                *e = e.checked_add(a.checked_mul(x).expect("integer overflow")).expect("integer overflow");
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = SparseMatrix::zeros(self.rows, rhs.cols);
        for (j, col) in rhs.columns.iter().enumerate() {
            out.columns[j] = self.apply(col);
        }
        out
    }

    pub fn scale(&self, k: i64) -> SparseMatrix {
        let mut out = self.clone();
        for col in out.columns.iter_mut() {
            for v in col.values_mut() {
                *v = v.checked_mul(k).expect("integer overflow");
            }
            col.retain(|_, v| *v != 0);
        }
        out
    }

    pub fn plus(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (j, col) in rhs.columns.iter().enumerate() {
            for (&i, &v) in col {
                out.add(i, j, v);
            }
        }
        out
    }

    pub fn minus(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.plus(&rhs.scale(-1))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.cols, self.rows);
        for (r, c, v) in self.triplets() {
            out.set(c, r, v);
        }
        out
    }

    /// Kronecker-style block: entry ((r1,r2),(c1,c2)) = a[r1,c1] * b[r2,c2],
    /// with pair indices flattened row-major. Signs are the caller's business.
    pub fn kron(&self, b: &SparseMatrix) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.rows * b.rows, self.cols * b.cols);
        for (r1, c1, x) in self.triplets() {
            for (r2, c2, y) in b.triplets() {
                out.set(r1 * b.rows + r2, c1 * b.cols + c2, x * y);
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            d[r][c] = v;
        }
        d
    }
}

/// `acc += k·v`, dropping entries that cancel.
pub fn add_into(acc: &mut BTreeMap<usize, i64>, v: &BTreeMap<usize, i64>, k: i64) {
    for (&i, &x) in v {
        let e = acc.entry(i).or_insert(0);
        *e = e.checked_add(x.checked_mul(k).expect("coefficient overflow")).expect("coefficient overflow");
        if *e == 0 {
            acc.remove(&i);
        }
    }
}
