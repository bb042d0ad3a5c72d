//! Tensor products, transpositions and suspensions of complexes and maps.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::complex::{ChainComplex, TruncationWindow};
use super::map::GradedMap;
use super::matrix::SparseMatrix;
use crate::error::{Error, Result};

#[inline]
pub fn sign(exp: i64) -> i64 {
    if exp.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Ordered basis of `(A ⊗ B)_n`: pairs `((deg a, idx a), (deg b, idx b))`,
/// by increasing `deg a`, then row-major.
pub fn tensor_pairs(a: &ChainComplex, b: &ChainComplex, n: i64) -> Vec<((i64, usize), (i64, usize))> {
    let mut out = Vec::new();
    for da in a.window().degrees() {
        let db = n - da;
        for i in 0..a.rank(da) {
            for j in 0..b.rank(db) {
                out.push(((da, i), (db, j)));
            }
        }
    }
    out
}

fn tensor_window(a: &ChainComplex, b: &ChainComplex) -> Result<(TruncationWindow, bool)> {
    let min = a.window().min_degree + b.window().min_degree;
    let mut max = i64::MAX;
    if !a.is_complete() {
        max = max.min(a.window().max_degree + b.window().min_degree);
    }
    if !b.is_complete() {
        max = max.min(b.window().max_degree + a.window().min_degree);
    }
    let complete = max == i64::MAX;
    if complete {
        max = a.window().max_degree + b.window().max_degree;
    }
    Ok((TruncationWindow::new(min, max)?, complete))
}

pub fn tensor_label(a: &str, b: &str) -> String {
    format!("{a}⊗{b}")
}

/// Index lookup for a tensor product built by [`tensor_complex`].
pub struct TensorIndex {
    map: HashMap<((i64, usize), (i64, usize)), (i64, usize)>,
}

impl TensorIndex {
    pub fn new(a: &ChainComplex, b: &ChainComplex, window: TruncationWindow) -> Self {
        let mut map = HashMap::new();
        for n in window.degrees() {
            for (k, p) in tensor_pairs(a, b, n).into_iter().enumerate() {
                map.insert(p, (n, k));
            }
        }
        TensorIndex { map }
    }

    pub fn get(&self, a: (i64, usize), b: (i64, usize)) -> Option<(i64, usize)> {
        self.map.get(&(a, b)).copied()
    }
}

/// `A ⊗ B` with `∂(a⊗b) = ∂a⊗b + (−1)^{deg a} a⊗∂b`.
pub fn tensor_complex(a: &ChainComplex, b: &ChainComplex) -> Result<ChainComplex> {
    let (window, complete) = tensor_window(a, b)?;
    let idx = TensorIndex::new(a, b, window);
    let mut basis = BTreeMap::new();
    let mut diff = BTreeMap::new();
    for n in window.degrees() {
        let pairs = tensor_pairs(a, b, n);
        basis.insert(n, pairs.iter().map(|(x, y)| tensor_label(&a.basis(x.0)[x.1], &b.basis(y.0)[y.1])).collect());
        if n == window.min_degree {
            continue;
        }
        let rows = tensor_pairs(a, b, n - 1).len();
        let mut m = SparseMatrix::zeros(rows, pairs.len());
        for (col, &((da, i), (db, j))) in pairs.iter().enumerate() {
            for (&r, &v) in a.boundary_matrix(da).column(i) {
                if let Some((_, row)) = idx.get((da - 1, r), (db, j)) {
                    m.add(row, col, v);
                }
            }
            let s = sign(da);
            for (&r, &v) in b.boundary_matrix(db).column(j) {
                if let Some((_, row)) = idx.get((da, i), (db - 1, r)) {
                    m.add(row, col, s * v);
                }
            }
        }
        diff.insert(n, m);
    }
    let c = ChainComplex::new(format!("{}⊗{}", a.name, b.name), window, basis, diff)?;
    Ok(if complete { c.into_complete() } else { c })
}

/// `(f⊗g)(a⊗b) = (−1)^{deg g · deg a} f(a)⊗g(b)`.
pub fn tensor_map(f: &GradedMap, g: &GradedMap) -> Result<GradedMap> {
    let src = Arc::new(tensor_complex(&f.source, &g.source)?);
    let tgt = Arc::new(tensor_complex(&f.target, &g.target)?);
    let tidx = TensorIndex::new(&f.target, &g.target, tgt.window());
    let (fa, fb) = (f.source.clone(), g.source.clone());
    let mut out = GradedMap::zero(src.clone(), tgt.clone(), f.degree + g.degree);
    let degrees: Vec<i64> = out.blocks().map(|(d, _)| d).collect();
    for n in degrees {
        let pairs = tensor_pairs(&fa, &fb, n);
        let mut m = out.block(n);
        for (col, &((da, i), (db, j))) in pairs.iter().enumerate() {
            if da > f.known_through() || db > g.known_through() {
                return Err(Error::Precondition(format!(
                    "tensor of maps needs both factors known in degrees ({da}, {db})"
                )));
            }
            let s = sign(g.degree * da);
            let fi = f.block(da);
            let gj = g.block(db);
            for (&r1, &x) in fi.column(i) {
                for (&r2, &y) in gj.column(j) {
                    if let Some((_, row)) = tidx.get((da + f.degree, r1), (db + g.degree, r2)) {
                        m.add(row, col, s * x * y);
                    }
                }
            }
        }
        out.set_block(n, m)?;
    }
    Ok(out)
}

/// The chain map `T(a⊗b) = (−1)^{deg a · deg b} b⊗a`.
pub fn transpose(a: &ChainComplex, b: &ChainComplex) -> Result<GradedMap> {
    let src = Arc::new(tensor_complex(a, b)?);
    let tgt = Arc::new(tensor_complex(b, a)?);
    let tidx = TensorIndex::new(b, a, tgt.window());
    let pairs: BTreeMap<i64, Vec<_>> = src.window().degrees().map(|n| (n, tensor_pairs(a, b, n))).collect();
    Ok(GradedMap::from_fn(src, tgt, 0, |n, col| {
        let ((da, i), (db, j)) = pairs[&n][col];
        let (_, row) = tidx.get((db, j), (da, i)).expect("transposed pair exists");
        BTreeMap::from([(row, sign(da * db))])
    }))
}

/// Label of `x` after shifting its degree by `k`.
///
/// Shifts accumulate: shifting `S^2:x` by `-2` gives back `x`.
pub fn shift_label(label: &str, k: i64) -> String {
    let (base, cur) = split_shift(label);
    let total = cur + k;
    if total == 0 {
        base.to_string()
    } else {
        format!("S^{total}:{base}")
    }
}

fn split_shift(label: &str) -> (&str, i64) {
    if let Some(rest) = label.strip_prefix("S^") {
        if let Some((num, base)) = rest.split_once(':') {
            if let Ok(k) = num.parse::<i64>() {
                return (base, k);
            }
        }
    }
    (label, 0)
}

/// `Σ^k C`: degrees shifted up by `k`, differential `(−1)^k ↑^k ∂ ↓^k`.
///
/// This is the single-shift rule `∂_{ΣC} = −↑∂↓` applied `|k|` times.
pub fn suspend(c: &ChainComplex, k: i64) -> ChainComplex {
    if k == 0 {
        return c.clone();
    }
    let w = c.window().shifted(k);
    let mut basis = BTreeMap::new();
    let mut diff = BTreeMap::new();
    for d in c.window().degrees() {
        basis.insert(d + k, c.basis(d).iter().map(|l| shift_label(l, k)).collect::<Vec<_>>());
        if d > c.window().min_degree {
            diff.insert(d + k, c.boundary_matrix(d).scale(sign(k)));
        }
    }
    let name = if k == 1 { format!("Σ{}", c.name) } else { format!("Σ^{k}{}", c.name) };
    let out = ChainComplex::new(name, w, basis, diff).expect("shifted complex is well formed");
    if c.is_complete() {
        out.into_complete()
    } else {
        out
    }
}

/// `↑^k : C → Σ^k C`, identity on basis elements (a chain map of degree `k`
/// once the sign is accounted for by the suspended differential).
pub fn shift_map(c: &Arc<ChainComplex>, k: i64) -> GradedMap {
    let tgt = Arc::new(suspend(c, k));
    GradedMap::from_fn(c.clone(), tgt, k, |_, j| BTreeMap::from([(j, 1)]))
}

/// `L_k : Σ^{-k}C ⊗ D → Σ^{-k}(C⊗D)`, `c⊗d ↦ c⊗d`.
pub fn susp_iso_l(c: &ChainComplex, d: &ChainComplex, k: i64) -> Result<GradedMap> {
    susp_iso(c, d, k, false)
}

/// `M_k : C ⊗ Σ^{-k}D → Σ^{-k}(C⊗D)`, `c⊗d ↦ (−1)^{ik} c⊗d` for `c ∈ C_i`.
pub fn susp_iso_m(c: &ChainComplex, d: &ChainComplex, k: i64) -> Result<GradedMap> {
    susp_iso(c, d, k, true)
}

fn susp_iso(c: &ChainComplex, d: &ChainComplex, k: i64, on_right: bool) -> Result<GradedMap> {
    if k < 0 {
        return Err(Error::Precondition("suspension isomorphisms need k ≥ 0".into()));
    }
    let (sc, sd) = if on_right { (c.clone(), suspend(d, -k)) } else { (suspend(c, -k), d.clone()) };
    let src = Arc::new(tensor_complex(&sc, &sd)?);
    let cd = tensor_complex(c, d)?;
    let tgt = Arc::new(suspend(&cd, -k));
    let cd_idx = TensorIndex::new(c, d, cd.window());
    let pairs: BTreeMap<i64, Vec<_>> = src.window().degrees().map(|n| (n, tensor_pairs(&sc, &sd, n))).collect();
    Ok(GradedMap::from_fn(src, tgt, 0, |n, col| {
        let ((da, i), (db, j)) = pairs[&n][col];
        // unshifted degrees in C and D
        let (ci, dj) = if on_right { (da, db + k) } else { (da + k, db) };
        let s = if on_right { sign(ci * k) } else { 1 };
        match cd_idx.get((ci, i), (dj, j)) {
            Some((_, row)) => BTreeMap::from([(row, s)]),
            None => BTreeMap::new(),
        }
    }))
}
