//! The unit interval `𝒞([0,1])` as an m-coalgebra, and the circle.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{Coalgebra, PointedCoalgebra};
use crate::barres::{basis_cap, build_bar, equivariant_lift, ContractibleTarget};
use crate::chaincore::{interval_complex, ChainComplex, ComplexBuilder, TruncationWindow};
use crate::error::{Error, Result};
use crate::operad::{component, lc_insert, BarOperad, Cell, CoEndBasis, CoEndOperad, LinComb, Operad, Word};
use crate::symgrp::Permutation;

/// A contraction of `C` onto `ℤ` in degree 0: `ι(1)`, `ε`, and `h` with `∂h + h∂ = 1 − ιε`.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub iota: Cell,
    pub eps: BTreeMap<Cell, i64>,
    pub h: BTreeMap<Cell, LinComb<Cell>>,
}

impl Contraction {
    fn eps(&self, c: &Cell) -> i64 {
        self.eps.get(c).copied().unwrap_or(0)
    }

    /// `h_{C^{⊗n}} = Σ_r (ιε)^{⊗r} ⊗ h ⊗ 1^{⊗(n−r−1)}`; the factors `ιε` only
    /// see degree-0 cells, so no Koszul signs appear.
    pub fn tensor_homotopy(&self, w: &[Cell]) -> LinComb<Word> {
        let mut out = LinComb::new();
        let mut prefix = 1;
        for r in 0..w.len() {
            if let Some(hw) = self.h.get(&w[r]) {
                for (&y, &c) in hw {
                    let mut v = vec![self.iota; r];
                    v.push(y);
                    v.extend_from_slice(&w[r + 1..]);
                    lc_insert(&mut out, v, prefix * c);
                }
            }
            prefix *= self.eps(&w[r]);
            if prefix == 0 {
                break;
            }
        }
        out
    }
}

/// `Hom(C, C^{⊗n})` contracted by `f ↦ h_{C^{⊗n}} ∘ f`, `P(f) = (ιε)^{⊗n} ∘ f`.
pub struct HomTarget {
    pub n: usize,
    coend: CoEndOperad,
    complex: Arc<ChainComplex>,
    lists: BTreeMap<i64, Vec<CoEndBasis>>,
    index: HashMap<CoEndBasis, (i64, usize)>,
    contraction: Contraction,
}

impl HomTarget {
    pub fn new(carrier: Arc<ChainComplex>, n: usize, contraction: Contraction) -> Result<Self> {
        let coend = CoEndOperad::new(carrier, n)?;
        let (c, lists) = component(&coend, n)?;
        let index =
            lists.iter().flat_map(|(&d, l)| l.iter().enumerate().map(move |(i, x)| (x.clone(), (d, i)))).collect();
        Ok(HomTarget { n, coend, complex: Arc::new(c), lists, index, contraction })
    }

    pub fn element(&self, d: i64, idx: usize) -> &CoEndBasis {
        &self.lists[&d][idx]
    }

    pub fn index_of(&self, x: &CoEndBasis) -> Option<(i64, usize)> {
        self.index.get(x).copied()
    }

    fn to_indices(&self, x: &LinComb<CoEndBasis>) -> BTreeMap<usize, i64> {
        x.iter().map(|(b, &c)| (self.index[b].1, c)).collect()
    }
}

impl ContractibleTarget for HomTarget {
    fn complex(&self) -> &Arc<ChainComplex> {
        &self.complex
    }

    fn act(&self, tau: &Permutation, d: i64, idx: usize) -> BTreeMap<usize, i64> {
        self.to_indices(&self.coend.act(tau, self.element(d, idx)))
    }

    fn homotopy(&self, d: i64, idx: usize) -> BTreeMap<usize, i64> {
        let f = self.element(d, idx);
        let mut out = LinComb::new();
        for (w, c) in self.contraction.tensor_homotopy(&f.word) {
            lc_insert(&mut out, CoEndBasis { src: f.src, word: w }, c);
        }
        self.to_indices(&out)
    }

    fn projection(&self, d: i64, idx: usize) -> BTreeMap<usize, i64> {
        let f = self.element(d, idx);
        let e: i64 = f.word.iter().map(|c| self.contraction.eps(c)).product();
        if e == 0 {
            return BTreeMap::new();
        }
        self.to_indices(&LinComb::from([(CoEndBasis { src: f.src, word: vec![self.contraction.iota; self.n] }, e)]))
    }
}

/// Which endpoint the interval is contracted onto when lifting `u_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalLift {
    ToP0,
    ToP1,
}

fn interval_contraction(lift: IntervalLift) -> Contraction {
    let (p0, p1, q) = ((0, 0), (0, 1), (1, 0));
    let eps = BTreeMap::from([(p0, 1), (p1, 1)]);
    match lift {
        IntervalLift::ToP0 => Contraction { iota: p0, eps, h: BTreeMap::from([(p1, LinComb::from([(q, 1)]))]) },
        IntervalLift::ToP1 => Contraction { iota: p1, eps, h: BTreeMap::from([(p0, LinComb::from([(q, -1)]))]) },
    }
}

/// The iterated Alexander–Whitney diagonal of `[0,1]`:
/// `p_i ↦ p_i^{⊗n}`, `q ↦ Σ_j p_0^{⊗j} ⊗ q ⊗ p_1^{⊗(n−1−j)}`.
fn interval_diagonal(n: usize) -> LinComb<CoEndBasis> {
    let (p0, p1, q) = ((0, 0), (0, 1), (1, 0));
    let mut out =
        LinComb::from([(CoEndBasis { src: p0, word: vec![p0; n] }, 1), (CoEndBasis { src: p1, word: vec![p1; n] }, 1)]);
    for j in 0..n {
        let mut w = vec![p0; j];
        w.push(q);
        w.extend(vec![p1; n - 1 - j]);
        out.insert(CoEndBasis { src: q, word: w }, 1);
    }
    out
}

/// `I = 𝒞([0,1])` over `𝔖`: `u_n` is the equivariant lift of the iterated
/// diagonal from `RS_n` into `Hom(I, I^{⊗n})`. Basepoint `p0`.
pub fn make_interval(operad: BarOperad, lift: IntervalLift) -> Result<PointedCoalgebra> {
    let carrier = Arc::new(interval_complex());
    let contraction = interval_contraction(lift);
    let mut table: BTreeMap<Vec<Permutation>, LinComb<CoEndBasis>> = BTreeMap::new();
    for n in 1..=operad.max_rank {
        let res = build_bar(n, operad.max_degree, basis_cap())?;
        let target = HomTarget::new(carrier.clone(), n, contraction.clone())?;
        let seed = target.to_indices(&interval_diagonal(n));
        let u = equivariant_lift(&res, &target, 0, seed)?;
        for d in 0..=operad.max_degree {
            let block = u.block(d);
            for (j, s) in res.simplices(d).iter().enumerate() {
                let v: LinComb<CoEndBasis> =
                    block.column(j).iter().map(|(&r, &c)| (target.element(d, r).clone(), c)).collect();
                table.insert(s.clone(), v);
            }
        }
    }
    let name = match lift {
        IntervalLift::ToP0 => "I",
        IntervalLift::ToP1 => "I'",
    };
    let base = Coalgebra::from_fn(name, operad, carrier, |x| {
        table.get(x).cloned().ok_or_else(|| Error::UnknownLabel(crate::barres::simplex_label(x)))
    })?;
    Ok(PointedCoalgebra { base, basepoint: (0, 0), augmentation: BTreeMap::from([((0, 0), 1), ((0, 1), 1)]) })
}

/// `S¹ = I / (p1 ∼ p0)` with cells `v` (basepoint) and `e`.
pub fn circle(interval: &PointedCoalgebra) -> Result<PointedCoalgebra> {
    let mut b = ComplexBuilder::new();
    b.generator(0, "v");
    b.generator(1, "e");
    let c = Arc::new(b.build("S1", TruncationWindow::new(0, 1)?)?.into_complete());
    let (p0, p1, q) = ((0, 0), (0, 1), (1, 0));
    let (v, e) = ((0, 0), (1, 0));
    let proj = |x: Cell| -> LinComb<Cell> {
        if x == q {
            LinComb::from([(e, 1)])
        } else {
            LinComb::from([(v, 1)])
        }
    };
    let section = |y: Cell| if y == e { q } else { p0 };
    let kernel = [LinComb::from([(p1, 1), (p0, -1)])];
    let base = interval.base.quotient("S1", c, &proj, &section, &kernel)?;
    Ok(PointedCoalgebra { base, basepoint: v, augmentation: BTreeMap::from([(v, 1)]) })
}
