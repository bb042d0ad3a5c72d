//! Operads given by their basis, differential, symmetric-group action and
//! `∘_i` compositions.
//!
//! Slot convention: for `a` of rank `n` and `b` of rank `m`, `a ∘_i b` with
//! `1 ≤ i ≤ m` substitutes `a` into the i-th input of `b` and has rank
//! `n + m − 1`. In `CoEnd(C)` this is `(1^{i−1} ⊗ a ⊗ 1^{m−i}) ∘ b`.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::chaincore::{ChainComplex, ComplexBuilder, TruncationWindow};
use crate::error::{Error, Result};
use crate::symgrp::Permutation;

mod bar;
mod basic;
mod check;
mod coend;
pub mod json;
mod morphism;
mod tensor;

pub use bar::{aw_diagonal, check_aw_coassociative, BarOperad, HopfDiagonal};
pub use basic::{CoassocOperad, S0Operad, SuspOperad};
pub use check::{check_axioms, check_axioms_up_to, gamma, AxiomReport, Law, Mutant, Violation};
pub use coend::{permute_word, word_degree, Cell, CoEndBasis, CoEndOperad, EndBasis, EndOperad, Word};
pub use morphism::{
    augmentation_to_coassoc, augmentation_to_s0, check_morphism, check_morphism_up_to, coend_pairing,
    compose_morphisms, identity_morphism, susp_witness, FnMorphism, MorphismLaw, MorphismReport, MorphismViolation,
    OperadMorphism,
};
pub use tensor::{ShiftedOperad, TensorOperad};

/// Finite formal sum of basis elements with integer coefficients.
pub type LinComb<B> = BTreeMap<B, i64>;

pub fn lc_term<B: Ord>(b: B, c: i64) -> LinComb<B> {
    let mut out = BTreeMap::new();
    if c != 0 {
        out.insert(b, c);
    }
    out
}

pub fn lc_insert<B: Ord>(acc: &mut LinComb<B>, b: B, c: i64) {
    if c == 0 {
        return;
    }
    match acc.get_mut(&b) {
        Some(v) => {
            *v = v.checked_add(c).expect("coefficient overflow");
            if *v == 0 {
                acc.remove(&b);
            }
        }
        None => {
            acc.insert(b, c);
        }
    }
}

/// `acc += k·x`.
pub fn lc_add<B: Ord + Clone>(acc: &mut LinComb<B>, x: &LinComb<B>, k: i64) {
    for (b, &c) in x {
        lc_insert(acc, b.clone(), c.checked_mul(k).expect("coefficient overflow"));
    }
}

pub fn lc_scale<B: Ord + Clone>(x: &LinComb<B>, k: i64) -> LinComb<B> {
    let mut out = BTreeMap::new();
    lc_add(&mut out, x, k);
    out
}

/// Linear extension of `f` from basis elements.
pub fn lc_linear<B, C: Ord + Clone>(x: &LinComb<B>, mut f: impl FnMut(&B) -> LinComb<C>) -> LinComb<C> {
    let mut out = BTreeMap::new();
    for (b, &c) in x {
        lc_add(&mut out, &f(b), c);
    }
    out
}

/// Bilinear extension of `f`.
pub fn lc_bilinear<A, B, C: Ord + Clone>(
    x: &LinComb<A>,
    y: &LinComb<B>,
    mut f: impl FnMut(&A, &B) -> Result<LinComb<C>>,
) -> Result<LinComb<C>> {
    let mut out = BTreeMap::new();
    for (a, &c) in x {
        for (b, &d) in y {
            lc_add(&mut out, &f(a, b)?, c.checked_mul(d).expect("coefficient overflow"));
        }
    }
    Ok(out)
}

/// `2·x - y` style rendering, `0` when empty.
pub fn format_lc<O: Operad + ?Sized>(op: &O, x: &LinComb<O::Basis>) -> String {
    if x.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (b, &c)) in x.iter().enumerate() {
        let l = op.label(b);
        match (k, c) {
            (0, 1) => out.push_str(&l),
            (0, -1) => out.push_str(&format!("-{l}")),
            (0, c) => out.push_str(&format!("{c}·{l}")),
            (_, 1) => out.push_str(&format!(" + {l}")),
            (_, -1) => out.push_str(&format!(" - {l}")),
            (_, c) if c < 0 => out.push_str(&format!(" - {}·{l}", -c)),
            (_, c) => out.push_str(&format!(" + {c}·{l}")),
        }
    }
    out
}

/// Known degrees of one component: `[lo, hi]`, and nothing above `hi` when complete.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeRange {
    pub lo: i64,
    pub hi: i64,
    pub complete: bool,
}

impl DegreeRange {
    pub fn new(lo: i64, hi: i64, complete: bool) -> Self {
        DegreeRange { lo, hi, complete }
    }

    pub fn known(&self, d: i64) -> bool {
        d <= self.hi || self.complete
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn shifted(&self, k: i64) -> Self {
        DegreeRange { lo: self.lo + k, hi: self.hi + k, complete: self.complete }
    }
}

pub trait Operad {
    type Basis: Clone + Ord + Eq + Hash + Debug;

    fn name(&self) -> String;
    /// Ranks `1..=max_rank` are enumerated by checkers and dumps.
    fn max_rank(&self) -> usize;
    fn degrees(&self, rank: usize) -> DegreeRange;
    fn basis(&self, rank: usize, degree: i64) -> Vec<Self::Basis>;
    fn rank_of(&self, x: &Self::Basis) -> usize;
    fn degree_of(&self, x: &Self::Basis) -> i64;
    fn label(&self, x: &Self::Basis) -> String;
    fn boundary(&self, x: &Self::Basis) -> LinComb<Self::Basis>;
    fn act(&self, sigma: &Permutation, x: &Self::Basis) -> LinComb<Self::Basis>;
    /// `a ∘_i b`, see the module docs for the slot convention.
    fn compose(&self, a: &Self::Basis, i: usize, b: &Self::Basis) -> Result<LinComb<Self::Basis>>;
    fn unit(&self) -> LinComb<Self::Basis>;

    fn boundary_lc(&self, x: &LinComb<Self::Basis>) -> LinComb<Self::Basis> {
        lc_linear(x, |b| self.boundary(b))
    }

    fn act_lc(&self, sigma: &Permutation, x: &LinComb<Self::Basis>) -> LinComb<Self::Basis> {
        lc_linear(x, |b| self.act(sigma, b))
    }

    fn compose_lc(&self, a: &LinComb<Self::Basis>, i: usize, b: &LinComb<Self::Basis>) -> Result<LinComb<Self::Basis>> {
        lc_bilinear(a, b, |x, y| self.compose(x, i, y))
    }
}

/// Checks `1 ≤ i ≤ rank(b)`.
pub fn check_slot(i: usize, rank: usize) -> Result<()> {
    if i == 0 || i > rank {
        return Err(Error::BadSlot { slot: i, rank });
    }
    Ok(())
}

/// Rank-`n` component as a chain complex, with the basis listed per degree.
pub fn component<O: Operad>(op: &O, rank: usize) -> Result<(ChainComplex, BTreeMap<i64, Vec<O::Basis>>)> {
    let range = op.degrees(rank);
    let mut builder = ComplexBuilder::new();
    let mut lists = BTreeMap::new();
    let mut index: BTreeMap<O::Basis, usize> = BTreeMap::new();
    for d in range.iter() {
        let b = op.basis(rank, d);
        for x in &b {
            index.insert(x.clone(), builder.generator(d, op.label(x)));
        }
        lists.insert(d, b);
    }
    for d in range.lo + 1..=range.hi {
        for x in &lists[&d] {
            for (y, c) in op.boundary(x) {
                let r = *index.get(&y).ok_or_else(|| Error::UnknownLabel(op.label(&y)))?;
                builder.boundary_entry(d, index[x], r, c);
            }
        }
    }
    let c = builder.build(&format!("{}({rank})", op.name()), TruncationWindow::new(range.lo, range.hi)?)?;
    Ok((if range.complete { c.into_complete() } else { c }, lists))
}
