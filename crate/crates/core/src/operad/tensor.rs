//! Tensor products of operads and operadic (de)suspensions.

use super::{lc_insert, lc_linear, DegreeRange, LinComb, Operad};
use crate::chaincore::ops::shift_label;
use crate::chaincore::sign;
use crate::error::Result;
use crate::symgrp::Permutation;

/// `A ⊗ B` rankwise, diagonal action, `(a⊗b) ∘_i (c⊗d) = (−1)^{|b||c|} (a∘_i c) ⊗ (b∘_i d)`.
#[derive(Clone, Debug)]
pub struct TensorOperad<A, B> {
    pub left: A,
    pub right: B,
}

impl<A: Operad, B: Operad> TensorOperad<A, B> {
    pub fn new(left: A, right: B) -> Self {
        TensorOperad { left, right }
    }
}

impl<A: Operad, B: Operad> Operad for TensorOperad<A, B> {
    type Basis = (A::Basis, B::Basis);

    fn name(&self) -> String {
        format!("{}⊗{}", self.left.name(), self.right.name())
    }

    fn max_rank(&self) -> usize {
        self.left.max_rank().min(self.right.max_rank())
    }

    fn degrees(&self, rank: usize) -> DegreeRange {
        let (a, b) = (self.left.degrees(rank), self.right.degrees(rank));
        let mut hi = i64::MAX;
        if !a.complete {
            hi = hi.min(a.hi + b.lo);
        }
        if !b.complete {
            hi = hi.min(b.hi + a.lo);
        }
        let complete = hi == i64::MAX;
        DegreeRange::new(a.lo + b.lo, if complete { a.hi + b.hi } else { hi }, complete)
    }

    fn basis(&self, rank: usize, degree: i64) -> Vec<Self::Basis> {
        let mut out = Vec::new();
        for da in self.left.degrees(rank).iter() {
            let rb = self.right.basis(rank, degree - da);
            if rb.is_empty() {
                continue;
            }
            for a in self.left.basis(rank, da) {
                for b in &rb {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    fn rank_of(&self, x: &Self::Basis) -> usize {
        self.left.rank_of(&x.0)
    }

    fn degree_of(&self, x: &Self::Basis) -> i64 {
        self.left.degree_of(&x.0) + self.right.degree_of(&x.1)
    }

    fn label(&self, x: &Self::Basis) -> String {
        format!("{}⊗{}", self.left.label(&x.0), self.right.label(&x.1))
    }

    fn boundary(&self, x: &Self::Basis) -> LinComb<Self::Basis> {
        let mut out = LinComb::new();
        for (a, c) in self.left.boundary(&x.0) {
            lc_insert(&mut out, (a, x.1.clone()), c);
        }
        let s = sign(self.left.degree_of(&x.0));
        for (b, c) in self.right.boundary(&x.1) {
            lc_insert(&mut out, (x.0.clone(), b), s * c);
        }
        out
    }

    fn act(&self, sigma: &Permutation, x: &Self::Basis) -> LinComb<Self::Basis> {
        let mut out = LinComb::new();
        for (a, c) in self.left.act(sigma, &x.0) {
            for (b, d) in self.right.act(sigma, &x.1) {
                lc_insert(&mut out, (a.clone(), b), c * d);
            }
        }
        out
    }

    fn compose(&self, x: &Self::Basis, i: usize, y: &Self::Basis) -> Result<LinComb<Self::Basis>> {
        let s = sign(self.right.degree_of(&x.1) * self.left.degree_of(&y.0));
        let l = self.left.compose(&x.0, i, &y.0)?;
        if l.is_empty() {
            return Ok(LinComb::new());
        }
        let r = self.right.compose(&x.1, i, &y.1)?;
        let mut out = LinComb::new();
        for (a, c) in &l {
            for (b, d) in &r {
                lc_insert(&mut out, (a.clone(), b.clone()), s * c * d);
            }
        }
        Ok(out)
    }

    fn unit(&self) -> LinComb<Self::Basis> {
        let mut out = LinComb::new();
        for (a, c) in self.left.unit() {
            for (b, d) in self.right.unit() {
                lc_insert(&mut out, (a.clone(), b), c * d);
            }
        }
        out
    }
}

/// `Σ^k A`, i.e. `Susp^{⊗k} ⊗ A` (or `(Susp⁻¹)^{⊗|k|} ⊗ A`) with `s⊗⋯⊗s⊗x`
/// relabelled `S^{k(n−1)}:x`.
///
/// Rank-`n` components are the chain suspensions `Σ^{k(n−1)} A(n)`; the action
/// picks up `(−1)^{k·parity}` and `x ∘_i y` picks up
/// `(−1)^{|k| |x|(m−1) + |k|(|k|−1)/2 (m−1)(n−1) + |k|(i−1)(n−1)}`
/// for `x` of rank `n` and degree `|x|` in `A`, `y` of rank `m`.
#[derive(Clone, Debug)]
pub struct ShiftedOperad<A> {
    pub base: A,
    pub k: i64,
}

impl<A: Operad> ShiftedOperad<A> {
    pub fn new(base: A, k: i64) -> Self {
        ShiftedOperad { base, k }
    }

    fn shift(&self, rank: usize) -> i64 {
        self.k * (rank as i64 - 1)
    }
}

impl<A: Operad> Operad for ShiftedOperad<A> {
    type Basis = A::Basis;

    fn name(&self) -> String {
        match self.k {
            0 => self.base.name(),
            1 => format!("Σ{}", self.base.name()),
            k => format!("Σ^{k}{}", self.base.name()),
        }
    }

    fn max_rank(&self) -> usize {
        self.base.max_rank()
    }

    fn degrees(&self, rank: usize) -> DegreeRange {
        self.base.degrees(rank).shifted(self.shift(rank))
    }

    fn basis(&self, rank: usize, degree: i64) -> Vec<A::Basis> {
        self.base.basis(rank, degree - self.shift(rank))
    }

    fn rank_of(&self, x: &A::Basis) -> usize {
        self.base.rank_of(x)
    }

    fn degree_of(&self, x: &A::Basis) -> i64 {
        self.base.degree_of(x) + self.shift(self.base.rank_of(x))
    }

    fn label(&self, x: &A::Basis) -> String {
        shift_label(&self.base.label(x), self.shift(self.base.rank_of(x)))
    }

    fn boundary(&self, x: &A::Basis) -> LinComb<A::Basis> {
        let s = sign(self.shift(self.base.rank_of(x)));
        lc_linear(&self.base.boundary(x), |b| LinComb::from([(b.clone(), s)]))
    }

    fn act(&self, sigma: &Permutation, x: &A::Basis) -> LinComb<A::Basis> {
        let s = sign(self.k * sigma.parity() as i64);
        lc_linear(&self.base.act(sigma, x), |b| LinComb::from([(b.clone(), s)]))
    }

    fn compose(&self, x: &A::Basis, i: usize, y: &A::Basis) -> Result<LinComb<A::Basis>> {
        let k = self.k.abs();
        let n = self.base.rank_of(x) as i64;
        let m = self.base.rank_of(y) as i64;
        let e =
            k * self.base.degree_of(x) * (m - 1) + k * (k - 1) / 2 * (m - 1) * (n - 1) + k * (i as i64 - 1) * (n - 1);
        let s = sign(e);
        Ok(lc_linear(&self.base.compose(x, i, y)?, |b| LinComb::from([(b.clone(), s)])))
    }

    fn unit(&self) -> LinComb<A::Basis> {
        self.base.unit()
    }
}
