//! Coalgebras over operads, stored as tabulated morphisms `O → CoEnd(C)`.
//!
//! The adjoint `f_n(x ⊗ c) = a(x)(c)` carries no sign, so the coherence
//! diagram with the shuffle `V` is exactly `∘_i`-preservation of `a`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::chaincore::{ChainComplex, ComplexBuilder, TruncationWindow};
use crate::error::{Error, Result};
use crate::operad::{
    check_morphism, lc_add, lc_insert, lc_linear, BarOperad, CoEndBasis, CoEndOperad, LinComb, MorphismReport, Operad,
    OperadMorphism,
};

mod interval;
pub mod json;
mod susp;

pub use interval::{circle, make_interval, Contraction, HomTarget, IntervalLift};
pub use susp::{check_coalgebra_map, flatten_shift, same_complex, shift_coalgebra, suspend_m, tensor_coalgebra};

pub use crate::operad::Cell;
pub use crate::operad::Word;

pub struct Coalgebra<O: Operad> {
    pub name: String,
    pub operad: O,
    pub target: CoEndOperad,
    structure: BTreeMap<O::Basis, LinComb<CoEndBasis>>,
}

impl<O: Operad + Clone> Clone for Coalgebra<O> {
    fn clone(&self) -> Self {
        Coalgebra {
            name: self.name.clone(),
            operad: self.operad.clone(),
            target: self.target.clone(),
            structure: self.structure.clone(),
        }
    }
}

/// Every basis element of ranks `1..=max_rank` in the known degrees.
pub fn window_basis<O: Operad>(op: &O) -> Vec<O::Basis> {
    (1..=op.max_rank()).flat_map(|n| op.degrees(n).iter().flat_map(move |d| op.basis(n, d))).collect()
}

impl<O: Operad> Coalgebra<O> {
    /// Tabulates `a` on the operad's window.
    pub fn from_fn(
        name: impl Into<String>,
        operad: O,
        carrier: Arc<ChainComplex>,
        mut a: impl FnMut(&O::Basis) -> Result<LinComb<CoEndBasis>>,
    ) -> Result<Self> {
        let target = CoEndOperad::new(carrier, operad.max_rank())?;
        let mut structure = BTreeMap::new();
        for x in window_basis(&operad) {
            let v = a(&x)?;
            structure.insert(x, v);
        }
        Ok(Coalgebra { name: name.into(), operad, target, structure })
    }

    pub fn carrier(&self) -> &Arc<ChainComplex> {
        self.target.complex()
    }

    pub fn structure(&self, x: &O::Basis) -> Result<&LinComb<CoEndBasis>> {
        self.structure
            .get(x)
            .ok_or_else(|| Error::DegreeTruncated { rank: self.operad.rank_of(x), degree: self.operad.degree_of(x) })
    }

    pub fn structure_lc(&self, x: &LinComb<O::Basis>) -> Result<LinComb<CoEndBasis>> {
        let mut out = LinComb::new();
        for (b, &c) in x {
            lc_add(&mut out, self.structure(b)?, c);
        }
        Ok(out)
    }

    /// Overwrites one table entry (for mutation tests and hand-built structures).
    pub fn set(&mut self, x: O::Basis, value: LinComb<CoEndBasis>) {
        self.structure.insert(x, value);
    }

    pub fn entries(&self) -> impl Iterator<Item = (&O::Basis, &LinComb<CoEndBasis>)> {
        self.structure.iter()
    }

    /// `f_n(x ⊗ c)`.
    pub fn adjoint(&self, x: &O::Basis, c: Cell) -> Result<LinComb<Word>> {
        Ok(CoEndOperad::evaluate(self.structure(x)?, &c))
    }

    pub fn cell(&self, label: &str) -> Result<Cell> {
        self.carrier().find(label).ok_or_else(|| Error::UnknownLabel(label.into()))
    }

    pub fn word_label(&self, w: &[Cell]) -> String {
        self.target.word_label(w)
    }

    pub fn cells(&self) -> &[Cell] {
        self.target.cells()
    }

    /// The same table over an operad with the same basis and window, e.g. `Σ⁰O`.
    pub fn retag<P: Operad<Basis = O::Basis>>(self, operad: P) -> Result<Coalgebra<P>> {
        if window_basis(&operad).iter().any(|x| !self.structure.contains_key(x)) {
            return Err(Error::Precondition(format!("{} has elements outside the table", operad.name())));
        }
        Ok(Coalgebra { name: self.name, operad, target: self.target, structure: self.structure })
    }

    /// Pushes the structure to a quotient carrier along `proj`, reading
    /// values on the `section` representatives. Fails unless `proj` is a
    /// chain map with `proj∘section = id` whose kernel is a sub-coalgebra.
    pub fn quotient(
        &self,
        name: impl Into<String>,
        carrier: Arc<ChainComplex>,
        proj: &dyn Fn(Cell) -> LinComb<Cell>,
        section: &dyn Fn(Cell) -> Cell,
        kernel: &[LinComb<Cell>],
    ) -> Result<Coalgebra<O>>
    where
        O: Clone,
    {
        let src = self.carrier();
        for &c in self.cells() {
            let lhs = lc_linear(&proj(c), |&y| boundary_cell(&carrier, y));
            let rhs = lc_linear(&boundary_cell(src, c), |&y| proj(y));
            if lhs != rhs {
                return Err(Error::Precondition(format!(
                    "quotient map is not a chain map at {}",
                    self.word_label(&[c])
                )));
            }
        }
        let tgt_cells = CoEndOperad::new(carrier.clone(), 1)?.cells().to_vec();
        for &c in &tgt_cells {
            if proj(section(c)) != LinComb::from([(c, 1)]) {
                return Err(Error::Precondition("section is not a right inverse of the quotient map".into()));
            }
        }
        for k in kernel {
            if !lc_linear(k, |&y| proj(y)).is_empty() {
                return Err(Error::Precondition("kernel element survives the quotient".into()));
            }
        }
        let proj_word = |w: &LinComb<Word>| -> LinComb<Word> {
            lc_linear(w, |word| {
                let mut acc: LinComb<Word> = LinComb::from([(Vec::new(), 1)]);
                for &c in word {
                    let pc = proj(c);
                    let mut next = LinComb::new();
                    for (pre, &a) in &acc {
                        for (&y, &b) in &pc {
                            let mut v = pre.clone();
                            v.push(y);
                            lc_insert(&mut next, v, a * b);
                        }
                    }
                    acc = next;
                }
                acc
            })
        };
        for (x, f) in &self.structure {
            for k in kernel {
                let v = lc_linear(k, |y| CoEndOperad::evaluate(f, y));
                if !proj_word(&v).is_empty() {
                    return Err(Error::Precondition(format!(
                        "kernel of the quotient is not a sub-coalgebra (operad element {})",
                        self.operad.label(x)
                    )));
                }
            }
        }
        Coalgebra::from_fn(name, self.operad.clone(), carrier, |x| {
            let f = self.structure(x)?;
            let mut out = LinComb::new();
            for &c in &tgt_cells {
                for (w, v) in proj_word(&CoEndOperad::evaluate(f, &section(c))) {
                    lc_insert(&mut out, CoEndBasis { src: c, word: w }, v);
                }
            }
            Ok(out)
        })
    }
}

fn boundary_cell(c: &ChainComplex, x: Cell) -> LinComb<Cell> {
    if x.0 <= c.window().min_degree {
        return LinComb::new();
    }
    c.boundary_matrix(x.0).column(x.1).iter().map(|(&r, &v)| ((x.0 - 1, r), v)).collect()
}

impl<O: Operad> OperadMorphism for Coalgebra<O> {
    type Source = O;
    type Target = CoEndOperad;

    fn name(&self) -> String {
        format!("{} over {}", self.name, self.operad.name())
    }

    fn source(&self) -> &O {
        &self.operad
    }

    fn target(&self) -> &CoEndOperad {
        &self.target
    }

    fn apply(&self, x: &O::Basis) -> LinComb<CoEndBasis> {
        self.structure.get(x).cloned().unwrap_or_default()
    }
}

/// Chain map, equivariance and coherence (`∘_i`-preservation) on the window.
pub fn check_coalgebra<O: Operad>(k: &Coalgebra<O>) -> Result<MorphismReport> {
    check_morphism(k)
}

/// `f*K`: same carrier, structure `a∘f`.
pub fn pullback<M>(f: &M, k: &Coalgebra<M::Target>) -> Result<Coalgebra<M::Source>>
where
    M: OperadMorphism,
    M::Source: Clone,
{
    if f.target().name() != k.operad.name() {
        return Err(Error::Precondition(format!(
            "morphism lands in {}, coalgebra is over {}",
            f.target().name(),
            k.operad.name()
        )));
    }
    Coalgebra::from_fn(format!("{}*{}", f.name(), k.name), f.source().clone(), k.carrier().clone(), |x| {
        k.structure_lc(&f.apply(x))
    })
}

/// A coalgebra over `𝔖` with a basepoint spanning a sub-coalgebra `ℤ` and an augmentation.
#[derive(Clone)]
pub struct PointedCoalgebra {
    pub base: Coalgebra<BarOperad>,
    pub basepoint: Cell,
    pub augmentation: BTreeMap<Cell, i64>,
}

impl PointedCoalgebra {
    /// `k` with the basepoint in degree `−k`.
    pub fn level(&self) -> i64 {
        -self.basepoint.0
    }

    pub fn epsilon(&self, c: Cell) -> i64 {
        self.augmentation.get(&c).copied().unwrap_or(0)
    }

    /// `Δ(x) = p⊗x + x⊗p` for every carrier cell `x ≠ p`, and `Δp = p⊗p`.
    pub fn is_reduced(&self) -> Result<bool> {
        let p = self.basepoint;
        let bottom = BarOperad::bottom(2);
        for &c in self.base.cells() {
            let v = self.base.adjoint(&bottom, c)?;
            let expect = if c == p {
                LinComb::from([(vec![p, p], 1)])
            } else {
                LinComb::from([(vec![p, c], 1), (vec![c, p], 1)])
            };
            if v != expect {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `ℤ` in degree 0, `x ↦ (1 ↦ 1^{⊗n})` for vertices `x` of `RS_n`, higher simplices to 0.
pub fn trivial_coalgebra(operad: BarOperad) -> Result<PointedCoalgebra> {
    let mut b = ComplexBuilder::new();
    b.generator(0, "1");
    let c = Arc::new(b.build("Z", TruncationWindow::new(0, 0)?)?.into_complete());
    let one = (0, 0);
    let base = Coalgebra::from_fn("Z", operad, c, |x| {
        Ok(if x.len() == 1 {
            LinComb::from([(CoEndBasis { src: one, word: vec![one; x[0].n()] }, 1)])
        } else {
            LinComb::new()
        })
    })?;
    Ok(PointedCoalgebra { base, basepoint: one, augmentation: BTreeMap::from([(one, 1)]) })
}

/// `C⁺ = C / ℤp`, the window trimmed to the surviving cells.
pub fn reduce(k: &PointedCoalgebra) -> Result<Coalgebra<BarOperad>> {
    let c = k.base.carrier();
    let p = k.basepoint;
    if !boundary_cell(c, p).is_empty() {
        return Err(Error::Precondition("basepoint is not a cycle".into()));
    }
    for (x, f) in k.base.entries() {
        for (w, _) in CoEndOperad::evaluate(f, &p) {
            if w.iter().any(|&y| y != p) {
                return Err(Error::Precondition(format!(
                    "basepoint does not span a sub-coalgebra ({} sends it to {})",
                    simplex_label_of(x),
                    k.base.word_label(&w)
                )));
            }
        }
    }
    let (quot, map) = drop_cells(c, &[p], &format!("{}+", c.name))?;
    let inverse: HashMap<Cell, Cell> = map.iter().map(|(&a, &b)| (b, a)).collect();
    let proj = |x: Cell| map.get(&x).map(|&y| LinComb::from([(y, 1)])).unwrap_or_default();
    let section = |y: Cell| inverse[&y];
    k.base.quotient(format!("{}+", k.base.name), Arc::new(quot), &proj, &section, &[LinComb::from([(p, 1)])])
}

fn simplex_label_of(x: &crate::barres::Simplex) -> String {
    crate::barres::simplex_label(x)
}

/// The complex with `cells` removed (rows into them dropped); returns the old→new cell map.
pub fn drop_cells(c: &ChainComplex, cells: &[Cell], name: &str) -> Result<(ChainComplex, BTreeMap<Cell, Cell>)> {
    let mut b = ComplexBuilder::new();
    let mut map = BTreeMap::new();
    let w = c.window();
    let (mut lo, mut hi) = (i64::MAX, i64::MIN);
    for d in w.degrees() {
        for (i, l) in c.basis(d).iter().enumerate() {
            if !cells.contains(&(d, i)) {
                map.insert((d, i), (d, b.generator(d, l.clone())));
                lo = lo.min(d);
                hi = hi.max(d);
            }
        }
    }
    for (&(d, i), &(_, j)) in &map {
        for (y, v) in boundary_cell(c, (d, i)) {
            if let Some(&(_, r)) = map.get(&y) {
                b.boundary_entry(d, j, r, v);
            }
        }
    }
    let window = if lo > hi { TruncationWindow::new(0, 0)? } else { TruncationWindow::new(lo, hi)? };
    let out = b.build(name, window)?;
    Ok((if c.is_complete() { out.into_complete() } else { out }, map))
}
