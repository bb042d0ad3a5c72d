//! Coendomorphism and endomorphism operads of a bounded complex.

use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;

use super::{check_slot, lc_insert, lc_term, DegreeRange, LinComb, Operad};
use crate::chaincore::{sign, ChainComplex};
use crate::error::{Error, Result};
use crate::symgrp::Permutation;

/// Basis element of a bounded complex: `(degree, index)`.
pub type Cell = (i64, usize);

/// A word `w_1 ⊗ ⋯ ⊗ w_n` of basis elements.
pub type Word = Vec<Cell>;

pub fn word_degree(w: &[Cell]) -> i64 {
    w.iter().map(|c| c.0).sum()
}

/// `T_σ w`: factor `l` moves to position `σ(l)`, with the Koszul sign.
pub fn permute_word(sigma: &Permutation, w: &[Cell]) -> (i64, Word) {
    let n = w.len();
    let mut out = vec![(0, 0); n];
    let mut e = 0;
    for l in 0..n {
        out[sigma.apply(l + 1) - 1] = w[l];
        for l2 in l + 1..n {
            if sigma.apply(l + 1) > sigma.apply(l2 + 1) {
                e += w[l].0 * w[l2].0;
            }
        }
    }
    (sign(e), out)
}

/// Shared data for `CoEnd(C)` and `End(C)`.
#[derive(Clone, Debug)]
struct Carrier {
    c: Arc<ChainComplex>,
    cells: Vec<Cell>,
    /// `∂x` as a list of cells with coefficients
    down: BTreeMap<Cell, Vec<(Cell, i64)>>,
    /// cells `y` with `c·x` in `∂y`, listed under `x`
    up: BTreeMap<Cell, Vec<(Cell, i64)>>,
}

impl Carrier {
    fn new(c: Arc<ChainComplex>) -> Result<Self> {
        if !c.is_complete() {
            return Err(Error::Precondition(format!("{} must be bounded to form its (co)endomorphism operad", c.name)));
        }
        let mut cells = Vec::new();
        let mut down: BTreeMap<Cell, Vec<(Cell, i64)>> = BTreeMap::new();
        let mut up: BTreeMap<Cell, Vec<(Cell, i64)>> = BTreeMap::new();
        for d in c.window().degrees() {
            let m = c.boundary_matrix(d);
            for j in 0..c.rank(d) {
                cells.push((d, j));
                down.entry((d, j)).or_default();
                up.entry((d, j)).or_default();
                for (&r, &v) in m.column(j) {
                    down.get_mut(&(d, j)).unwrap().push(((d - 1, r), v));
                    up.entry((d - 1, r)).or_default().push(((d, j), v));
                }
            }
        }
        Ok(Carrier { c, cells, down, up })
    }

    fn label(&self, x: &Cell) -> String {
        self.c.basis(x.0)[x.1].clone()
    }

    fn word_label(&self, w: &[Cell]) -> String {
        w.iter().map(|x| self.label(x)).join("⊗")
    }

    fn words(&self, n: usize, degree: i64) -> Vec<Word> {
        if n == 0 {
            return if degree == 0 { vec![Vec::new()] } else { Vec::new() };
        }
        (0..n)
            .map(|_| self.cells.iter().copied())
            .multi_cartesian_product()
            .filter(|w| word_degree(w) == degree)
            .collect()
    }

    /// `∂` on `C^{⊗n}`.
    fn word_boundary(&self, w: &[Cell]) -> Vec<(Word, i64)> {
        let mut out = Vec::new();
        let mut before = 0;
        for l in 0..w.len() {
            for &(y, v) in &self.down[&w[l]] {
                let mut w2 = w.to_vec();
                w2[l] = y;
                out.push((w2, sign(before) * v));
            }
            before += w[l].0;
        }
        out
    }

    /// Words `w'` with `c·w` in `∂w'`.
    fn word_coboundary(&self, w: &[Cell]) -> Vec<(Word, i64)> {
        let mut out = Vec::new();
        let mut before = 0;
        for l in 0..w.len() {
            for &(y, v) in &self.up[&w[l]] {
                let mut w2 = w.to_vec();
                w2[l] = y;
                out.push((w2, sign(before) * v));
            }
            before += w[l].0;
        }
        out
    }

    fn degree_span(&self, n: usize) -> DegreeRange {
        let w = self.c.window();
        let (lo, hi) = (w.min_degree, w.max_degree);
        DegreeRange::new(n as i64 * lo - hi, n as i64 * hi - lo, true)
    }
}

/// Elementary map `src ↦ word` of `Hom(C, C^{⊗n})`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoEndBasis {
    pub src: Cell,
    pub word: Word,
}

impl CoEndBasis {
    pub fn degree(&self) -> i64 {
        word_degree(&self.word) - self.src.0
    }
}

/// `CoEnd(C)`: rank `n` is `Hom(C, C^{⊗n})`, `S_n` acts by permuting output
/// factors, `a ∘_i b = (1^{i−1} ⊗ a ⊗ 1^{m−i}) ∘ b`.
#[derive(Clone, Debug)]
pub struct CoEndOperad {
    carrier: Carrier,
    pub max_rank: usize,
}

impl CoEndOperad {
    pub fn new(c: Arc<ChainComplex>, max_rank: usize) -> Result<Self> {
        Ok(CoEndOperad { carrier: Carrier::new(c)?, max_rank })
    }

    pub fn complex(&self) -> &Arc<ChainComplex> {
        &self.carrier.c
    }

    pub fn cells(&self) -> &[Cell] {
        &self.carrier.cells
    }

    pub fn word_label(&self, w: &[Cell]) -> String {
        self.carrier.word_label(w)
    }

    /// `f(x)` for `f` a combination of elementary maps.
    pub fn evaluate(f: &LinComb<CoEndBasis>, x: &Cell) -> LinComb<Word> {
        let mut out = LinComb::new();
        for (e, &c) in f {
            if e.src == *x {
                lc_insert(&mut out, e.word.clone(), c);
            }
        }
        out
    }
}

impl Operad for CoEndOperad {
    type Basis = CoEndBasis;

    fn name(&self) -> String {
        format!("CoEnd({})", self.carrier.c.name)
    }

    fn max_rank(&self) -> usize {
        self.max_rank
    }

    fn degrees(&self, rank: usize) -> DegreeRange {
        self.carrier.degree_span(rank)
    }

    fn basis(&self, rank: usize, degree: i64) -> Vec<CoEndBasis> {
        let mut out = Vec::new();
        for &x in &self.carrier.cells {
            for w in self.carrier.words(rank, degree + x.0) {
                out.push(CoEndBasis { src: x, word: w });
            }
        }
        out.sort();
        out
    }

    fn rank_of(&self, x: &CoEndBasis) -> usize {
        x.word.len()
    }

    fn degree_of(&self, x: &CoEndBasis) -> i64 {
        x.degree()
    }

    fn label(&self, x: &CoEndBasis) -> String {
        format!("{}→{}", self.carrier.label(&x.src), self.carrier.word_label(&x.word))
    }

    /// `∂f = ∂∘f − (−1)^{|f|} f∘∂`.
    fn boundary(&self, x: &CoEndBasis) -> LinComb<CoEndBasis> {
        let mut out = LinComb::new();
        for (w, v) in self.carrier.word_boundary(&x.word) {
            lc_insert(&mut out, CoEndBasis { src: x.src, word: w }, v);
        }
        let s = -sign(x.degree());
        for &(y, v) in &self.carrier.up[&x.src] {
            lc_insert(&mut out, CoEndBasis { src: y, word: x.word.clone() }, s * v);
        }
        out
    }

    fn act(&self, sigma: &Permutation, x: &CoEndBasis) -> LinComb<CoEndBasis> {
        let (s, w) = permute_word(sigma, &x.word);
        lc_term(CoEndBasis { src: x.src, word: w }, s)
    }

    fn compose(&self, a: &CoEndBasis, i: usize, b: &CoEndBasis) -> Result<LinComb<CoEndBasis>> {
        check_slot(i, b.word.len())?;
        if b.word[i - 1] != a.src {
            return Ok(LinComb::new());
        }
        let before = word_degree(&b.word[..i - 1]);
        let mut w = b.word[..i - 1].to_vec();
        w.extend(a.word.iter().copied());
        w.extend(b.word[i..].iter().copied());
        Ok(lc_term(CoEndBasis { src: b.src, word: w }, sign(a.degree() * before)))
    }

    fn unit(&self) -> LinComb<CoEndBasis> {
        self.carrier.cells.iter().map(|&x| (CoEndBasis { src: x, word: vec![x] }, 1)).collect()
    }
}

/// Elementary map `inputs ↦ output` of `Hom(C^{⊗n}, C)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EndBasis {
    pub inputs: Word,
    pub output: Cell,
}

impl EndBasis {
    pub fn degree(&self) -> i64 {
        self.output.0 - word_degree(&self.inputs)
    }
}

/// `End(C)`: rank `n` is `Hom(C^{⊗n}, C)`, `(σ·f) = f ∘ T_σ⁻¹`,
/// `a ∘_i b = (−1)^{|a||b|} b ∘ (1^{i−1} ⊗ a ⊗ 1^{m−i})`.
///
/// The Koszul sign for writing the outer map on the right keeps
/// `∂(a ∘_i b) = ∂a ∘_i b + (−1)^{|a|} a ∘_i ∂b`.
#[derive(Clone, Debug)]
pub struct EndOperad {
    carrier: Carrier,
    pub max_rank: usize,
}

impl EndOperad {
    pub fn new(c: Arc<ChainComplex>, max_rank: usize) -> Result<Self> {
        Ok(EndOperad { carrier: Carrier::new(c)?, max_rank })
    }
}

impl Operad for EndOperad {
    type Basis = EndBasis;

    fn name(&self) -> String {
        format!("End({})", self.carrier.c.name)
    }

    fn max_rank(&self) -> usize {
        self.max_rank
    }

    fn degrees(&self, rank: usize) -> DegreeRange {
        let w = self.carrier.c.window();
        let (lo, hi) = (w.min_degree, w.max_degree);
        DegreeRange::new(lo - rank as i64 * hi, hi - rank as i64 * lo, true)
    }

    fn basis(&self, rank: usize, degree: i64) -> Vec<EndBasis> {
        let mut out = Vec::new();
        for &y in &self.carrier.cells {
            for w in self.carrier.words(rank, y.0 - degree) {
                out.push(EndBasis { inputs: w, output: y });
            }
        }
        out.sort();
        out
    }

    fn rank_of(&self, x: &EndBasis) -> usize {
        x.inputs.len()
    }

    fn degree_of(&self, x: &EndBasis) -> i64 {
        x.degree()
    }

    fn label(&self, x: &EndBasis) -> String {
        format!("{}→{}", self.carrier.word_label(&x.inputs), self.carrier.label(&x.output))
    }

    fn boundary(&self, x: &EndBasis) -> LinComb<EndBasis> {
        let mut out = LinComb::new();
        for &(y, v) in &self.carrier.down[&x.output] {
            lc_insert(&mut out, EndBasis { inputs: x.inputs.clone(), output: y }, v);
        }
        let s = -sign(x.degree());
        for (w, v) in self.carrier.word_coboundary(&x.inputs) {
            lc_insert(&mut out, EndBasis { inputs: w, output: x.output }, s * v);
        }
        out
    }

    fn act(&self, sigma: &Permutation, x: &EndBasis) -> LinComb<EndBasis> {
        let (s, w) = permute_word(sigma, &x.inputs);
        lc_term(EndBasis { inputs: w, output: x.output }, s)
    }

    fn compose(&self, a: &EndBasis, i: usize, b: &EndBasis) -> Result<LinComb<EndBasis>> {
        check_slot(i, b.inputs.len())?;
        if b.inputs[i - 1] != a.output {
            return Ok(LinComb::new());
        }
        let before = word_degree(&b.inputs[..i - 1]);
        let mut w = b.inputs[..i - 1].to_vec();
        w.extend(a.inputs.iter().copied());
        w.extend(b.inputs[i..].iter().copied());
        Ok(lc_term(EndBasis { inputs: w, output: b.output }, sign(a.degree() * (before + b.degree()))))
    }

    fn unit(&self) -> LinComb<EndBasis> {
        self.carrier.cells.iter().map(|&x| (EndBasis { inputs: vec![x], output: x }, 1)).collect()
    }
}
