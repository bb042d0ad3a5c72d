//! Operads concentrated in one degree per rank: 𝔖₀, Coassoc, Susp.

use super::{check_slot, lc_term, DegreeRange, LinComb, Operad};
use crate::chaincore::sign;
use crate::error::Result;
use crate::symgrp::{tmap, CompositionShape, Permutation};

/// `𝔖₀`: rank `n` is `ℤS_n` in degree 0, `S_n` acting by left multiplication.
///
/// `σ ∈ S_n` is modelled by `σ·Δ_n`, the n-fold diagonal followed by a
/// factor permutation, which fixes the composition.
#[derive(Clone, Debug)]
pub struct S0Operad {
    pub max_rank: usize,
}

impl S0Operad {
    pub fn new(max_rank: usize) -> Self {
        S0Operad { max_rank }
    }

    /// `γ(σ_1, …, σ_k; σ) = T_α(σ) ∘ (σ_{σ(1)} ⊕ ⋯ ⊕ σ_{σ(k)})` with `α` the ranks of the `σ_l`.
    pub fn gamma_direct(inputs: &[Permutation], sigma: &Permutation) -> Result<Permutation> {
        let alpha = CompositionShape::new(inputs.iter().map(|p| p.n()).collect());
        let t = tmap(&alpha, sigma)?;
        let blocks: Vec<Permutation> = sigma.images().iter().map(|&j| inputs[j - 1].clone()).collect();
        t.compose(&Permutation::block_sum(&blocks))
    }
}

impl Operad for S0Operad {
    type Basis = Permutation;

    fn name(&self) -> String {
        "S0".into()
    }

    fn max_rank(&self) -> usize {
        self.max_rank
    }

    fn degrees(&self, _rank: usize) -> DegreeRange {
        DegreeRange::new(0, 0, true)
    }

    fn basis(&self, rank: usize, degree: i64) -> Vec<Permutation> {
        if degree == 0 && rank >= 1 {
            Permutation::all(rank)
        } else {
            Vec::new()
        }
    }

    fn rank_of(&self, x: &Permutation) -> usize {
        x.n()
    }

    fn degree_of(&self, _x: &Permutation) -> i64 {
        0
    }

    fn label(&self, x: &Permutation) -> String {
        x.to_string()
    }

    fn boundary(&self, _x: &Permutation) -> LinComb<Permutation> {
        LinComb::new()
    }

    fn act(&self, sigma: &Permutation, x: &Permutation) -> LinComb<Permutation> {
        lc_term(sigma.compose(x).expect("action within S_n"), 1)
    }

    /// `σ ∘_i τ = T_β(τ) ∘ (1_{j−1} ⊕ σ ⊕ 1_{m−j})`, `j = τ⁻¹(i)`, `β` = `n` in slot `i`.
    fn compose(&self, a: &Permutation, i: usize, b: &Permutation) -> Result<LinComb<Permutation>> {
        let (n, m) = (a.n(), b.n());
        check_slot(i, m)?;
        let j = b.inverse().apply(i);
        let inner = Permutation::block_sum(&[Permutation::identity(j - 1), a.clone(), Permutation::identity(m - j)]);
        let t = tmap(&CompositionShape::slot(m, i, n), b)?;
        Ok(lc_term(t.compose(&inner)?, 1))
    }

    fn unit(&self) -> LinComb<Permutation> {
        lc_term(Permutation::identity(1), 1)
    }
}

/// One generator `b_n` in each rank, degree 0, trivial action, `b_n ∘_i b_m = b_{n+m−1}`.
#[derive(Clone, Debug)]
pub struct CoassocOperad {
    pub max_rank: usize,
}

impl CoassocOperad {
    pub fn new(max_rank: usize) -> Self {
        CoassocOperad { max_rank }
    }
}

impl Operad for CoassocOperad {
    type Basis = usize;

    fn name(&self) -> String {
        "Coassoc".into()
    }

    fn max_rank(&self) -> usize {
        self.max_rank
    }

    fn degrees(&self, _rank: usize) -> DegreeRange {
        DegreeRange::new(0, 0, true)
    }

    fn basis(&self, rank: usize, degree: i64) -> Vec<usize> {
        if degree == 0 && rank >= 1 {
            vec![rank]
        } else {
            Vec::new()
        }
    }

    fn rank_of(&self, x: &usize) -> usize {
        *x
    }

    fn degree_of(&self, _x: &usize) -> i64 {
        0
    }

    fn label(&self, x: &usize) -> String {
        format!("b{x}")
    }

    fn boundary(&self, _x: &usize) -> LinComb<usize> {
        LinComb::new()
    }

    fn act(&self, _sigma: &Permutation, x: &usize) -> LinComb<usize> {
        lc_term(*x, 1)
    }

    fn compose(&self, a: &usize, i: usize, b: &usize) -> Result<LinComb<usize>> {
        check_slot(i, *b)?;
        Ok(lc_term(a + b - 1, 1))
    }

    fn unit(&self) -> LinComb<usize> {
        lc_term(1, 1)
    }
}

/// `CoEnd(Σ^k ℤ)` in closed form: `s_n` in degree `k(n−1)`,
/// `σ·s_n = (−1)^{k·parity σ} s_n`, `s_n ∘_i s_m = (−1)^{k(i−1)(n−1)} s_{n+m−1}`.
///
/// `k = 1` is `Susp`, `k = −1` is `Susp⁻¹`.
#[derive(Clone, Debug)]
pub struct SuspOperad {
    pub k: i64,
    pub max_rank: usize,
}

impl SuspOperad {
    pub fn new(k: i64, max_rank: usize) -> Self {
        SuspOperad { k, max_rank }
    }

    pub fn susp(max_rank: usize) -> Self {
        Self::new(1, max_rank)
    }

    pub fn desusp(max_rank: usize) -> Self {
        Self::new(-1, max_rank)
    }
}

impl Operad for SuspOperad {
    type Basis = usize;

    fn name(&self) -> String {
        match self.k {
            1 => "Susp".into(),
            -1 => "Susp-".into(),
            k => format!("Susp^{k}"),
        }
    }

    fn max_rank(&self) -> usize {
        self.max_rank
    }

    fn degrees(&self, rank: usize) -> DegreeRange {
        let d = self.k * (rank as i64 - 1);
        DegreeRange::new(d, d, true)
    }

    fn basis(&self, rank: usize, degree: i64) -> Vec<usize> {
        if rank >= 1 && degree == self.k * (rank as i64 - 1) {
            vec![rank]
        } else {
            Vec::new()
        }
    }

    fn rank_of(&self, x: &usize) -> usize {
        *x
    }

    fn degree_of(&self, x: &usize) -> i64 {
        self.k * (*x as i64 - 1)
    }

    fn label(&self, x: &usize) -> String {
        match self.k {
            1 => format!("s{x}"),
            -1 => format!("s-{x}"),
            k => format!("s^{k}_{x}"),
        }
    }

    fn boundary(&self, _x: &usize) -> LinComb<usize> {
        LinComb::new()
    }

    fn act(&self, sigma: &Permutation, x: &usize) -> LinComb<usize> {
        lc_term(*x, sign(self.k * sigma.parity() as i64))
    }

    fn compose(&self, a: &usize, i: usize, b: &usize) -> Result<LinComb<usize>> {
        check_slot(i, *b)?;
        let e = self.k * (i as i64 - 1) * (*a as i64 - 1);
        Ok(lc_term(a + b - 1, sign(e)))
    }

    fn unit(&self) -> LinComb<usize> {
        lc_term(1, 1)
    }
}
