//! Normalized bar resolutions `RS_n` of ℤ over ℤS_n.
//!
//! A basis element `g[g_1|…|g_k]` is stored in homogeneous form as the
//! simplex `(σ_0, …, σ_k)` with `σ_0 = g` and `σ_i = σ_{i-1} g_i`.
//! Normalization means consecutive entries differ. In this form
//! `∂ = Σ (−1)^i d_i` (degenerate faces dropped), `S_n` acts diagonally
//! from the left and the contracting homotopy prepends the identity.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::chaincore::snf::smith_form;
use crate::chaincore::{add_into, homology, AbelianGroup, ChainComplex, GradedMap, SparseMatrix, TruncationWindow};
use crate::error::{Error, Result};
use crate::symgrp::Permutation;

/// Basis elements allowed in a single resolution unless overridden.
pub const DEFAULT_BASIS_CAP: usize = 250_000;

pub const BASIS_CAP_ENV: &str = "OPSUSP_BASIS_CAP";

/// `OPSUSP_BASIS_CAP` when set to a number, else the default.
pub fn basis_cap() -> usize {
    std::env::var(BASIS_CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BASIS_CAP)
}

pub type Simplex = Vec<Permutation>;

/// `g*[g1|g2|…]` with one-line permutations.
pub fn simplex_label(s: &[Permutation]) -> String {
    let bars = s.windows(2).map(|w| w[0].inverse().compose(&w[1]).expect("same group").to_string()).join("|");
    format!("{}*[{}]", s[0], bars)
}

/// Inverse of [`simplex_label`].
pub fn parse_simplex(label: &str) -> Result<Simplex> {
    let bad = || Error::UnknownLabel(label.to_string());
    let (g, rest) = label.split_once('*').ok_or_else(bad)?;
    let inner = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
    let mut s = vec![g.parse::<Permutation>()?];
    if !inner.is_empty() {
        for part in inner.split('|') {
            let gi: Permutation = part.parse()?;
            let next = s.last().unwrap().compose(&gi)?;
            s.push(next);
        }
    }
    Ok(s)
}

#[derive(Clone, Debug)]
pub struct BarResolution {
    pub n: usize,
    pub complex: Arc<ChainComplex>,
    simplices: BTreeMap<i64, Vec<Simplex>>,
    index: HashMap<Simplex, usize>,
}

/// Total basis size of `RS_n` through degree `max_degree`.
pub fn bar_basis_count(n: usize, max_degree: i64) -> Option<usize> {
    let order: usize = (1..=n).try_fold(1usize, |a, b| a.checked_mul(b))?;
    let mut total = 0usize;
    let mut layer = order;
    for _ in 0..=max_degree {
        total = total.checked_add(layer)?;
        layer = layer.checked_mul(order - 1)?;
    }
    Some(total)
}

/// `RS_n` through degree `max_degree`.
pub fn build_bar(n: usize, max_degree: i64, cap: usize) -> Result<BarResolution> {
    if n == 0 {
        return Err(Error::Precondition("bar resolution needs n ≥ 1".into()));
    }
    let window = TruncationWindow::new(0, max_degree)?;
    let count = bar_basis_count(n, max_degree).unwrap_or(usize::MAX);
    if count > cap {
        return Err(Error::BasisCap { count, cap });
    }
    let group = Permutation::all(n);
    let mut simplices: BTreeMap<i64, Vec<Simplex>> = BTreeMap::new();
    simplices.insert(0, group.iter().map(|g| vec![g.clone()]).collect());
    for d in 1..=max_degree {
        let mut layer = Vec::new();
        for s in &simplices[&(d - 1)] {
            let last = s.last().unwrap();
            for g in &group {
                if !g.is_identity() {
                    let mut t = s.clone();
                    t.push(last.compose(g).unwrap());
                    layer.push(t);
                }
            }
        }
        simplices.insert(d, layer);
    }
    let mut index = HashMap::new();
    for layer in simplices.values() {
        for (i, s) in layer.iter().enumerate() {
            index.insert(s.clone(), i);
        }
    }
    let basis = simplices.iter().map(|(&d, l)| (d, l.iter().map(|s| simplex_label(s)).collect())).collect();
    let mut diff = BTreeMap::new();
    for d in 1..=max_degree {
        let layer = &simplices[&d];
        let mut m = SparseMatrix::zeros(simplices[&(d - 1)].len(), layer.len());
        for (j, s) in layer.iter().enumerate() {
            for (r, v) in simplex_boundary(&index, s) {
                m.add(r, j, v);
            }
        }
        diff.insert(d, m);
    }
    let complex = ChainComplex::new(format!("RS{n}"), window, basis, diff)?;
    Ok(BarResolution { n, complex: Arc::new(complex), simplices, index })
}

fn simplex_boundary(index: &HashMap<Simplex, usize>, s: &[Permutation]) -> BTreeMap<usize, i64> {
    let mut out = BTreeMap::new();
    for i in 0..s.len() {
        let mut face = s.to_vec();
        face.remove(i);
        if let Some(&r) = index.get(&face) {
            add_into(&mut out, &BTreeMap::from([(r, 1)]), if i % 2 == 0 { 1 } else { -1 });
        }
    }
    out
}

/// Coefficient module for group (co)homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Trivial,
    Sign,
}

impl Coefficients {
    fn chi(self, g: &Permutation) -> i64 {
        match self {
            Coefficients::Trivial => 1,
            Coefficients::Sign => g.sign(),
        }
    }
}

impl BarResolution {
    pub fn max_degree(&self) -> i64 {
        self.complex.window().max_degree
    }

    pub fn simplex(&self, d: i64, idx: usize) -> &Simplex {
        &self.simplices[&d][idx]
    }

    pub fn simplices(&self, d: i64) -> &[Simplex] {
        self.simplices.get(&d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Index of a simplex, `None` if degenerate or beyond the window.
    pub fn index_of(&self, s: &[Permutation]) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// `τ·(σ_0, …, σ_k)`.
    pub fn act_index(&self, tau: &Permutation, d: i64, idx: usize) -> usize {
        let s: Simplex = self.simplex(d, idx).iter().map(|x| tau.compose(x).unwrap()).collect();
        self.index[&s]
    }

    /// Indices of the free ℤS_n-generators `e*[g_1|…|g_k]` in degree `d`.
    pub fn generators(&self, d: i64) -> Vec<usize> {
        (0..self.simplices(d).len()).filter(|&i| self.simplex(d, i)[0].is_identity()).collect()
    }

    /// Contracting homotopy `h(σ_0,…,σ_k) = (e,σ_0,…,σ_k)`, valid up to degree `max−1`.
    pub fn homotopy_of(&self, d: i64, idx: usize) -> BTreeMap<usize, i64> {
        let s = self.simplex(d, idx);
        if s[0].is_identity() || d + 1 > self.max_degree() {
            return BTreeMap::new();
        }
        let mut t = vec![Permutation::identity(self.n)];
        t.extend(s.iter().cloned());
        BTreeMap::from([(self.index[&t], 1)])
    }

    pub fn homotopy(&self) -> GradedMap {
        let c = self.complex.clone();
        let top = self.max_degree() - 1;
        GradedMap::from_fn(c.clone(), c, 1, |d, j| if d <= top { self.homotopy_of(d, j) } else { BTreeMap::new() })
    }

    /// `ε`: every vertex to 1.
    pub fn augmentation(&self, d: i64, _idx: usize) -> i64 {
        i64::from(d == 0)
    }

    /// `η(1) = (e)`.
    pub fn unit_index(&self) -> usize {
        self.index[&vec![Permutation::identity(self.n)]]
    }

    /// `ℤ_χ ⊗_{ℤS_n} RS_n`, with basis the generators `e*[…]`.
    pub fn coinvariants(&self, coeffs: Coefficients) -> Result<ChainComplex> {
        let gens: BTreeMap<i64, Vec<usize>> =
            self.complex.window().degrees().map(|d| (d, self.generators(d))).collect();
        let pos: BTreeMap<(i64, usize), usize> =
            gens.iter().flat_map(|(&d, g)| g.iter().enumerate().map(move |(k, &i)| ((d, i), k))).collect();
        let basis =
            gens.iter().map(|(&d, g)| (d, g.iter().map(|&i| self.complex.basis(d)[i].clone()).collect())).collect();
        let mut diff = BTreeMap::new();
        for d in 1..=self.max_degree() {
            let bm = self.complex.boundary_matrix(d);
            let mut m = SparseMatrix::zeros(gens[&(d - 1)].len(), gens[&d].len());
            for (col, &j) in gens[&d].iter().enumerate() {
                for (&r, &v) in bm.column(j) {
                    // face = g·rep with g its first vertex
                    let face = self.simplex(d - 1, r);
                    let g = &face[0];
                    let rep: Simplex = face.iter().map(|x| g.inverse().compose(x).unwrap()).collect();
                    m.add(pos[&(d - 1, self.index[&rep])], col, v * coeffs.chi(g));
                }
            }
            diff.insert(d, m);
        }
        let name = match coeffs {
            Coefficients::Trivial => format!("Z⊗RS{}", self.n),
            Coefficients::Sign => format!("Zsgn⊗RS{}", self.n),
        };
        ChainComplex::new(name, self.complex.window(), basis, diff)
    }
}

/// `∂h + h∂ = id − ηε` on every degree where `h` is defined.
pub fn contracting_homotopy_check(res: &BarResolution) -> bool {
    let c = &res.complex;
    let unit = res.unit_index();
    for d in 0..res.max_degree() {
        let dn = c.boundary_matrix(d + 1);
        let dd = c.boundary_matrix(d);
        for j in 0..c.rank(d) {
            let mut lhs = BTreeMap::new();
            add_into(&mut lhs, &dn.apply(&res.homotopy_of(d, j)), 1);
            if d > 0 {
                for (&r, &v) in dd.column(j) {
                    add_into(&mut lhs, &res.homotopy_of(d - 1, r), v);
                }
            }
            let mut rhs = BTreeMap::from([(j, 1)]);
            if d == 0 {
                add_into(&mut rhs, &BTreeMap::from([(unit, 1)]), -res.augmentation(0, j));
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// `H_k(S_n; M)` for `k` in `start..=end`.
pub fn group_homology(
    res: &BarResolution,
    coeffs: Coefficients,
    start: i64,
    end: i64,
) -> Result<BTreeMap<i64, AbelianGroup>> {
    homology(&res.coinvariants(coeffs)?, start, end)
}

/// `H^k(S_n; M)` for `k` in `start..=end`, from `Hom_{ℤS_n}(RS_n, M)`.
///
/// The cochain differential is the transpose of the coinvariant boundary,
/// so `H^k` has free rank `c_k − rk ∂_k − rk ∂_{k+1}` and the torsion of `∂_k`.
pub fn group_cohomology(
    res: &BarResolution,
    coeffs: Coefficients,
    start: i64,
    end: i64,
) -> Result<BTreeMap<i64, AbelianGroup>> {
    let c = res.coinvariants(coeffs)?;
    let w = c.window();
    if start < 0 || start > end || end >= w.max_degree {
        return Err(Error::RangeOutsideWindow { start, end, min: w.min_degree, max: w.max_degree });
    }
    let mut out = BTreeMap::new();
    for k in start..=end {
        let below = smith_form(&c.boundary_matrix(k));
        let above = smith_form(&c.boundary_matrix(k + 1));
        out.insert(k, AbelianGroup { free_rank: c.rank(k) - below.rank() - above.rank(), torsion: below.torsion() });
    }
    Ok(out)
}

/// The class of a cochain `φ ∈ Hom_{ℤS_n}(RS_n, M)` of degree `k`, given by
/// its values on the generators `e*[…]` in the order of [`BarResolution::generators`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainClass {
    pub degree: i64,
    pub cocycle: bool,
    /// order of `φ` modulo `B^k`; `None` when infinite
    pub order: Option<BigInt>,
}

impl CochainClass {
    pub fn is_zero(&self) -> bool {
        self.order.as_ref().is_some_and(|o| o.is_one())
    }
}

/// `φ ∈ B^k` iff appending `φ` to `δ_{k−1} = ∂_k^T` keeps both the rank and the
/// product of invariant factors; the ratio of the products is the order of `[φ]`.
pub fn cochain_class(
    res: &BarResolution,
    coeffs: Coefficients,
    k: i64,
    phi: &BTreeMap<usize, i64>,
) -> Result<CochainClass> {
    let c = res.coinvariants(coeffs)?;
    let w = c.window();
    if k < 0 || k >= w.max_degree {
        return Err(Error::RangeOutsideWindow { start: k, end: k + 1, min: w.min_degree, max: w.max_degree });
    }
    if let Some((&j, _)) = phi.iter().find(|(&j, _)| j >= c.rank(k)) {
        return Err(Error::Precondition(format!("cochain value at generator {j} beyond {}", c.rank(k))));
    }
    let cocycle = c.boundary_matrix(k + 1).transpose().apply(phi).is_empty();
    let delta = if k == 0 { SparseMatrix::zeros(c.rank(0), 0) } else { c.boundary_matrix(k).transpose() };
    let mut ext = SparseMatrix::zeros(delta.rows(), delta.cols() + 1);
    for (r, col, v) in delta.triplets() {
        ext.set(r, col, v);
    }
    for (&r, &v) in phi {
        ext.set(r, delta.cols(), v);
    }
    let (a, b) = (smith_form(&delta), smith_form(&ext));
    let order = if a.rank() == b.rank() {
        let prod = |f: &[BigInt]| f.iter().fold(BigInt::one(), |acc, x| acc * x.abs());
        Some(prod(&a.factors) / prod(&b.factors))
    } else {
        None
    };
    Ok(CochainClass { degree: k, cocycle, order })
}

/// A complex with an `S_n`-action and a ℤ-linear contraction onto degree 0:
/// `∂h + h∂ + P = id`, where `P` is zero in positive degrees.
pub trait ContractibleTarget {
    fn complex(&self) -> &Arc<ChainComplex>;
    fn act(&self, tau: &Permutation, d: i64, idx: usize) -> BTreeMap<usize, i64>;
    fn homotopy(&self, d: i64, idx: usize) -> BTreeMap<usize, i64>;
    fn projection(&self, d: i64, _idx: usize) -> BTreeMap<usize, i64>;
}

impl ContractibleTarget for BarResolution {
    fn complex(&self) -> &Arc<ChainComplex> {
        &self.complex
    }

    fn act(&self, tau: &Permutation, d: i64, idx: usize) -> BTreeMap<usize, i64> {
        BTreeMap::from([(self.act_index(tau, d, idx), 1)])
    }

    fn homotopy(&self, d: i64, idx: usize) -> BTreeMap<usize, i64> {
        self.homotopy_of(d, idx)
    }

    fn projection(&self, d: i64, _idx: usize) -> BTreeMap<usize, i64> {
        if d == 0 {
            BTreeMap::from([(self.unit_index(), 1)])
        } else {
            BTreeMap::new()
        }
    }
}

fn apply_basiswise(v: &BTreeMap<usize, i64>, mut f: impl FnMut(usize) -> BTreeMap<usize, i64>) -> BTreeMap<usize, i64> {
    let mut out = BTreeMap::new();
    for (&i, &c) in v {
        add_into(&mut out, &f(i), c);
    }
    out
}

/// Checks `∂h + h∂ + P = id` in degrees `from..=to` of the target.
pub fn check_contraction<T: ContractibleTarget>(t: &T, from: i64, to: i64) -> Option<(i64, usize)> {
    let c = t.complex();
    for d in from..=to {
        let dn = c.boundary_matrix(d + 1);
        let dd = c.boundary_matrix(d);
        for j in 0..c.rank(d) {
            let mut lhs = dn.apply(&t.homotopy(d, j));
            add_into(&mut lhs, &apply_basiswise(dd.column(j), |r| t.homotopy(d - 1, r)), 1);
            add_into(&mut lhs, &t.projection(d, j), 1);
            if lhs != BTreeMap::from([(j, 1)]) {
                return Some((d, j));
            }
        }
    }
    None
}

/// Equivariant chain map `RS_n → T` in degrees `0..=res.max_degree()` (shifted by
/// `degree` in the target) extending `F(e) = seed`.
///
/// On a generator, `F(e*[g_1|…|g_k]) = h(F(∂ e*[g_1|…|g_k]))`; everything else
/// follows by equivariance.
pub fn equivariant_lift<T: ContractibleTarget>(
    res: &BarResolution,
    target: &T,
    degree: i64,
    seed: BTreeMap<usize, i64>,
) -> Result<GradedMap> {
    let tc = target.complex().clone();
    let top = res.max_degree();
    if top + degree > tc.known_max() {
        return Err(Error::RangeOutsideWindow {
            start: degree,
            end: top + degree,
            min: tc.window().min_degree,
            max: tc.window().max_degree,
        });
    }
    if top >= 1 {
        if let Some((d, j)) = check_contraction(target, degree, top + degree - 1) {
            return Err(Error::Precondition(format!(
                "target contraction fails on basis element {:?} in degree {d}",
                tc.basis(d)[j]
            )));
        }
    }
    let mut values: BTreeMap<i64, Vec<BTreeMap<usize, i64>>> = BTreeMap::new();
    for d in 0..=top {
        let mut layer = vec![BTreeMap::new(); res.complex.rank(d)];
        for g in res.generators(d) {
            let v = if d == 0 {
                seed.clone()
            } else {
                let prev = &values[&(d - 1)];
                let fb = apply_basiswise(res.complex.boundary_matrix(d).column(g), |r| prev[r].clone());
                apply_basiswise(&fb, |r| target.homotopy(d - 1 + degree, r))
            };
            for tau in Permutation::all(res.n) {
                let j = res.act_index(&tau, d, g);
                layer[j] = apply_basiswise(&v, |r| target.act(&tau, d + degree, r));
            }
        }
        values.insert(d, layer);
    }
    Ok(GradedMap::from_fn(res.complex.clone(), tc, degree, |d, j| values[&d][j].clone()))
}
