//! The operad `𝔖` with components `RS_n`.
//!
//! A simplex `(σ_0, …, σ_p)` of `E S_n` composes with `(τ_0, …, τ_q)` through
//! the 𝔖₀-composition of vertices, taken along every lattice path of the
//! `p × q` grid (the Eilenberg–Zilber shuffle map). Degenerate results are
//! dropped.

use std::collections::BTreeMap;

use itertools::Itertools;

use super::basic::S0Operad;
use super::{check_slot, lc_insert, lc_term, DegreeRange, LinComb, Operad, TensorOperad};
use crate::barres::{basis_cap, build_bar, parse_simplex, simplex_label, Simplex};
use crate::error::{Error, Result};
use crate::symgrp::Permutation;

#[derive(Clone, Debug)]
pub struct BarOperad {
    pub max_rank: usize,
    pub max_degree: i64,
    layers: Vec<BTreeMap<i64, Vec<Simplex>>>,
}

impl BarOperad {
    pub fn new(max_rank: usize, max_degree: i64) -> Result<Self> {
        Self::with_cap(max_rank, max_degree, basis_cap())
    }

    pub fn with_cap(max_rank: usize, max_degree: i64, cap: usize) -> Result<Self> {
        let mut layers = Vec::new();
        for n in 1..=max_rank {
            let r = build_bar(n, max_degree, cap)?;
            layers.push((0..=max_degree).map(|d| (d, r.simplices(d).to_vec())).collect());
        }
        Ok(BarOperad { max_rank, max_degree, layers })
    }

    pub fn parse(&self, label: &str) -> Result<Simplex> {
        parse_simplex(label)
    }

    /// `(e)` in `RS_n`, the bottom generator `[ ]`.
    pub fn bottom(n: usize) -> Simplex {
        vec![Permutation::identity(n)]
    }
}

fn s0_circ(a: &Permutation, i: usize, b: &Permutation) -> Permutation {
    let s0 = S0Operad::new(0);
    s0.compose(a, i, b).expect("slot checked").into_keys().next().expect("𝔖₀ composition is a single permutation")
}

fn nondegenerate(s: &[Permutation]) -> bool {
    s.windows(2).all(|w| w[0] != w[1])
}

impl Operad for BarOperad {
    type Basis = Simplex;

    fn name(&self) -> String {
        "S".into()
    }

    fn max_rank(&self) -> usize {
        self.max_rank
    }

    fn degrees(&self, rank: usize) -> DegreeRange {
        if rank == 1 {
            DegreeRange::new(0, 0, true)
        } else {
            DegreeRange::new(0, self.max_degree, false)
        }
    }

    fn basis(&self, rank: usize, degree: i64) -> Vec<Simplex> {
        if rank == 0 || degree < 0 || degree > self.max_degree {
            return Vec::new();
        }
        if rank <= self.max_rank {
            return self.layers[rank - 1].get(&degree).cloned().unwrap_or_default();
        }
        build_bar(rank, degree, usize::MAX).map(|r| r.simplices(degree).to_vec()).unwrap_or_default()
    }

    fn rank_of(&self, x: &Simplex) -> usize {
        x[0].n()
    }

    fn degree_of(&self, x: &Simplex) -> i64 {
        x.len() as i64 - 1
    }

    fn label(&self, x: &Simplex) -> String {
        simplex_label(x)
    }

    fn boundary(&self, x: &Simplex) -> LinComb<Simplex> {
        let mut out = LinComb::new();
        if x.len() == 1 {
            return out;
        }
        for j in 0..x.len() {
            let mut f = x.clone();
            f.remove(j);
            if nondegenerate(&f) {
                lc_insert(&mut out, f, if j % 2 == 0 { 1 } else { -1 });
            }
        }
        out
    }

    fn act(&self, sigma: &Permutation, x: &Simplex) -> LinComb<Simplex> {
        lc_term(x.iter().map(|s| sigma.compose(s).expect("same rank")).collect(), 1)
    }

    fn compose(&self, x: &Simplex, i: usize, y: &Simplex) -> Result<LinComb<Simplex>> {
        check_slot(i, y[0].n())?;
        let (p, q) = (x.len() - 1, y.len() - 1);
        let mut out = LinComb::new();
        // positions of the p steps in x among p+q steps
        for xs in (0..p + q).combinations(p) {
            let (mut a, mut b) = (0, 0);
            let mut z = vec![s0_circ(&x[0], i, &y[0])];
            let mut inversions = 0;
            let mut xi = xs.iter().peekable();
            for t in 0..p + q {
                if xi.peek() == Some(&&t) {
                    xi.next();
                    a += 1;
                    inversions += b;
                } else {
                    b += 1;
                }
                z.push(s0_circ(&x[a], i, &y[b]));
            }
            if nondegenerate(&z) {
                lc_insert(&mut out, z, if inversions % 2 == 0 { 1 } else { -1 });
            }
        }
        Ok(out)
    }

    fn unit(&self) -> LinComb<Simplex> {
        lc_term(Self::bottom(1), 1)
    }
}

/// A diagonal `Δ_n: 𝒰(n) → 𝒰(n) ⊗ 𝒰(n)`, rankwise.
pub trait HopfDiagonal: Operad + Sized {
    fn diagonal(&self, x: &Self::Basis) -> LinComb<(Self::Basis, Self::Basis)>;
}

/// Alexander–Whitney: `Δ(σ_0, …, σ_k) = Σ_i (σ_0, …, σ_i) ⊗ (σ_i, …, σ_k)`.
pub fn aw_diagonal(x: &Simplex) -> LinComb<(Simplex, Simplex)> {
    (0..x.len()).map(|i| ((x[..=i].to_vec(), x[i..].to_vec()), 1)).collect()
}

impl HopfDiagonal for BarOperad {
    fn diagonal(&self, x: &Simplex) -> LinComb<(Simplex, Simplex)> {
        aw_diagonal(x)
    }
}

/// Coassociativity and the chain-map property of Δ on `RS_n`, degrees `0..=max_degree`.
/// Returns the first offending basis element.
pub fn check_aw_coassociative(op: &BarOperad, rank: usize) -> std::result::Result<(), String> {
    if rank == 0 || rank > op.max_rank {
        return Err(Error::RankOverflow { rank, max_rank: op.max_rank }.to_string());
    }
    let tensor = TensorOperad::new(op.clone(), op.clone());
    for d in 0..=op.max_degree {
        for x in op.basis(rank, d) {
            let dx = aw_diagonal(&x);
            let mut left: LinComb<(Simplex, Simplex, Simplex)> = LinComb::new();
            let mut right: LinComb<(Simplex, Simplex, Simplex)> = LinComb::new();
            for ((a, b), c) in &dx {
                for ((a1, a2), c1) in aw_diagonal(a) {
                    lc_insert(&mut left, (a1, a2, b.clone()), c * c1);
                }
                for ((b1, b2), c2) in aw_diagonal(b) {
                    lc_insert(&mut right, (a.clone(), b1, b2), c * c2);
                }
            }
            if left != right {
                return Err(format!("coassociativity fails on {}", simplex_label(&x)));
            }
            let lhs = super::lc_linear(&op.boundary(&x), aw_diagonal);
            let rhs = tensor.boundary_lc(&dx);
            if lhs != rhs {
                return Err(format!("Δ is not a chain map on {}", simplex_label(&x)));
            }
        }
    }
    Ok(())
}
