//! Exhaustive verification of the operad laws on a truncation window.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{format_lc, lc_scale, DegreeRange, LinComb, Operad};
use crate::chaincore::sign;
use crate::error::Result;
use crate::symgrp::{tmap, CompositionShape, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Law {
    DSquared,
    ActionChainMap,
    GroupAction,
    CompositionChainMap,
    LeftUnit,
    RightUnit,
    Associativity,
    Commutativity,
    Equivariance,
    BlockEquivariance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: Law,
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}] {}: {} ≠ {}", self.law, self.instance, self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub operad: String,
    pub max_rank: usize,
    pub checked: BTreeMap<Law, usize>,
    pub failures: BTreeMap<Law, usize>,
    /// the first few violations, in enumeration order
    pub violations: Vec<Violation>,
}

const KEPT: usize = 20;

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first(&self, law: Law) -> Option<&Violation> {
        self.violations.iter().find(|v| v.law == law)
    }

    fn record<B: Ord>(
        &mut self,
        law: Law,
        lhs: &LinComb<B>,
        rhs: &LinComb<B>,
        describe: impl FnOnce() -> (String, String, String),
    ) {
        *self.checked.entry(law).or_insert(0) += 1;
        if lhs != rhs {
            *self.failures.entry(law).or_insert(0) += 1;
            if self.violations.len() < KEPT {
                let (instance, l, r) = describe();
                self.violations.push(Violation { law, instance, lhs: l, rhs: r });
            }
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (ranks ≤ {})", self.operad, self.max_rank)?;
        for (law, n) in &self.checked {
            let bad = self.failures.get(law).copied().unwrap_or(0);
            writeln!(f, "  {law:?}: {n} instances, {bad} violations")?;
        }
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

fn known<O: Operad>(op: &O, rank: usize, degree: i64, max_rank: usize) -> bool {
    rank <= max_rank && op.degrees(rank).known(degree)
}

/// Every basis element of ranks `1..=max_rank`, grouped by rank.
fn all_elements<O: Operad>(op: &O, max_rank: usize) -> Vec<Vec<O::Basis>> {
    let mut out = vec![Vec::new()];
    for n in 1..=max_rank {
        let r: DegreeRange = op.degrees(n);
        out.push(r.iter().flat_map(|d| op.basis(n, d)).collect());
    }
    out
}

/// Checks every law on all basis instances whose ranks, including those of
/// all intermediate results, are at most `op.max_rank()`, and whose result
/// degrees are known.
pub fn check_axioms<O: Operad>(op: &O) -> Result<AxiomReport> {
    check_axioms_up_to(op, op.max_rank())
}

pub fn check_axioms_up_to<O: Operad>(op: &O, max_rank: usize) -> Result<AxiomReport> {
    let mut rep = AxiomReport { operad: op.name(), max_rank, ..Default::default() };
    let elems = all_elements(op, max_rank);
    let groups: Vec<Vec<Permutation>> =
        (0..=max_rank).map(|n| if n == 0 { vec![] } else { Permutation::all(n) }).collect();
    let lbl = |x: &O::Basis| op.label(x);
    let show = |x: &LinComb<O::Basis>| format_lc(op, x);
    let unit = op.unit();

    for n in 1..=max_rank {
        for x in &elems[n] {
            let dd = op.boundary_lc(&op.boundary(x));
            rep.record(Law::DSquared, &dd, &LinComb::new(), || (lbl(x), show(&dd), "0".into()));
            for s in &groups[n] {
                let sx = op.act(s, x);
                let lhs = op.boundary_lc(&sx);
                let rhs = op.act_lc(s, &op.boundary(x));
                rep.record(Law::ActionChainMap, &lhs, &rhs, || {
                    (format!("σ={s}, x={}", lbl(x)), show(&lhs), show(&rhs))
                });
                for t in &groups[n] {
                    let lhs = op.act_lc(s, &op.act(t, x));
                    let rhs = op.act(&s.compose(t)?, x);
                    rep.record(Law::GroupAction, &lhs, &rhs, || {
                        (format!("σ={s}, τ={t}, x={}", lbl(x)), show(&lhs), show(&rhs))
                    });
                }
            }
            // units
            let xl = LinComb::from([(x.clone(), 1)]);
            for i in 1..=n {
                let lhs = op.compose_lc(&unit, i, &xl)?;
                rep.record(Law::LeftUnit, &lhs, &xl, || (format!("e ∘_{i} {}", lbl(x)), show(&lhs), show(&xl)));
            }
            let lhs = op.compose_lc(&xl, 1, &unit)?;
            rep.record(Law::RightUnit, &lhs, &xl, || (format!("{} ∘_1 e", lbl(x)), show(&lhs), show(&xl)));
        }
    }

    for n in 1..=max_rank {
        for m in 1..=max_rank {
            if n + m - 1 > max_rank {
                continue;
            }
            for a in &elems[n] {
                let da = op.degree_of(a);
                for b in &elems[m] {
                    let db = op.degree_of(b);
                    if !known(op, n + m - 1, da + db, max_rank) {
                        continue;
                    }
                    for i in 1..=m {
                        let ab = op.compose(a, i, b)?;
                        // ∂(a∘_i b) = ∂a ∘_i b + (−1)^{|a|} a ∘_i ∂b
                        let lhs = op.boundary_lc(&ab);
                        let mut rhs = op.compose_lc(&op.boundary(a), i, &LinComb::from([(b.clone(), 1)]))?;
                        let t = op.compose_lc(&LinComb::from([(a.clone(), 1)]), i, &op.boundary(b))?;
                        super::lc_add(&mut rhs, &t, sign(da));
                        rep.record(Law::CompositionChainMap, &lhs, &rhs, || {
                            (format!("{} ∘_{i} {}", lbl(a), lbl(b)), show(&lhs), show(&rhs))
                        });
                        // a ∘_{σ(i)} (σ·b) = T(σ)·(a ∘_i b)
                        for s in &groups[m] {
                            let si = s.apply(i);
                            let lhs = op.compose_lc(&LinComb::from([(a.clone(), 1)]), si, &op.act(s, b))?;
                            let t = tmap(&CompositionShape::slot(m, si, n), s)?;
                            let rhs = op.act_lc(&t, &ab);
                            rep.record(Law::Equivariance, &lhs, &rhs, || {
                                (format!("σ={s}, {} ∘_{i} {}", lbl(a), lbl(b)), show(&lhs), show(&rhs))
                            });
                        }
                        // (τ·a) ∘_i b = (1 ⊕ τ ⊕ 1)·(a ∘_i b)
                        for t in &groups[n] {
                            let lhs = op.compose_lc(&op.act(t, a), i, &LinComb::from([(b.clone(), 1)]))?;
                            let block = Permutation::block_sum(&[
                                Permutation::identity(i - 1),
                                t.clone(),
                                Permutation::identity(m - i),
                            ]);
                            let rhs = op.act_lc(&block, &ab);
                            rep.record(Law::BlockEquivariance, &lhs, &rhs, || {
                                (format!("τ={t}, {} ∘_{i} {}", lbl(a), lbl(b)), show(&lhs), show(&rhs))
                            });
                        }
                    }
                }
            }
        }
    }

    for n in 1..=max_rank {
        for m in 1..=max_rank {
            for p in 1..=max_rank {
                if n + m + p - 2 > max_rank {
                    continue;
                }
                for a in &elems[n] {
                    let da = op.degree_of(a);
                    let al = LinComb::from([(a.clone(), 1)]);
                    for b in &elems[m] {
                        let db = op.degree_of(b);
                        if !known(op, n + m - 1, da + db, max_rank) {
                            continue;
                        }
                        let bl = LinComb::from([(b.clone(), 1)]);
                        for c in &elems[p] {
                            let dc = op.degree_of(c);
                            let total = da + db + dc;
                            if !known(op, n + m + p - 2, total, max_rank)
                                || !known(op, m + p - 1, db + dc, max_rank)
                                || !known(op, n + p - 1, da + dc, max_rank)
                            {
                                continue;
                            }
                            let cl = LinComb::from([(c.clone(), 1)]);
                            for j in 1..=p {
                                let bc = op.compose(b, j, c)?;
                                for i in 1..=m {
                                    let lhs = op.compose_lc(&op.compose(a, i, b)?, j, &cl)?;
                                    let rhs = op.compose_lc(&al, i + j - 1, &bc)?;
                                    rep.record(Law::Associativity, &lhs, &rhs, || {
                                        (
                                            format!("({} ∘_{i} {}) ∘_{j} {}", lbl(a), lbl(b), lbl(c)),
                                            show(&lhs),
                                            show(&rhs),
                                        )
                                    });
                                }
                                // j < i ≤ p
                                for i in j + 1..=p {
                                    let lhs = op.compose_lc(&al, i + m - 1, &bc)?;
                                    let ac = op.compose(a, i, c)?;
                                    let rhs = lc_scale(&op.compose_lc(&bl, j, &ac)?, sign(da * db));
                                    rep.record(Law::Commutativity, &lhs, &rhs, || {
                                        (
                                            format!("a={}, b={}, c={}, i={i}, j={j}", lbl(a), lbl(b), lbl(c)),
                                            show(&lhs),
                                            show(&rhs),
                                        )
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// `γ(u_1, …, u_k; u) = u_1 ∘_1 (u_2 ∘_2 ( ⋯ (u_k ∘_k u)))`.
pub fn gamma<O: Operad>(op: &O, us: &[LinComb<O::Basis>], u: &LinComb<O::Basis>) -> Result<LinComb<O::Basis>> {
    let mut acc = u.clone();
    for (l, ul) in us.iter().enumerate().rev() {
        acc = op.compose_lc(ul, l + 1, &acc)?;
    }
    Ok(acc)
}

type ComposeFn<O> =
    dyn Fn(&O, &<O as Operad>::Basis, usize, &<O as Operad>::Basis) -> Result<LinComb<<O as Operad>::Basis>>;
type ActFn<O> = dyn Fn(&O, &Permutation, &<O as Operad>::Basis) -> LinComb<<O as Operad>::Basis>;

/// An operad with its composition or action replaced, for mutation tests.
pub struct Mutant<O: Operad> {
    pub base: O,
    compose: Option<Box<ComposeFn<O>>>,
    act: Option<Box<ActFn<O>>>,
}

impl<O: Operad> Mutant<O> {
    pub fn new(base: O) -> Self {
        Mutant { base, compose: None, act: None }
    }

    pub fn with_compose(
        mut self,
        f: impl Fn(&O, &O::Basis, usize, &O::Basis) -> Result<LinComb<O::Basis>> + 'static,
    ) -> Self {
        self.compose = Some(Box::new(f));
        self
    }

    pub fn with_act(mut self, f: impl Fn(&O, &Permutation, &O::Basis) -> LinComb<O::Basis> + 'static) -> Self {
        self.act = Some(Box::new(f));
        self
    }
}

impl<O: Operad> Operad for Mutant<O> {
    type Basis = O::Basis;

    fn name(&self) -> String {
        format!("mutant {}", self.base.name())
    }

    fn max_rank(&self) -> usize {
        self.base.max_rank()
    }

    fn degrees(&self, rank: usize) -> DegreeRange {
        self.base.degrees(rank)
    }

    fn basis(&self, rank: usize, degree: i64) -> Vec<O::Basis> {
        self.base.basis(rank, degree)
    }

    fn rank_of(&self, x: &O::Basis) -> usize {
        self.base.rank_of(x)
    }

    fn degree_of(&self, x: &O::Basis) -> i64 {
        self.base.degree_of(x)
    }

    fn label(&self, x: &O::Basis) -> String {
        self.base.label(x)
    }

    fn boundary(&self, x: &O::Basis) -> LinComb<O::Basis> {
        self.base.boundary(x)
    }

    fn act(&self, sigma: &Permutation, x: &O::Basis) -> LinComb<O::Basis> {
        match &self.act {
            Some(f) => f(&self.base, sigma, x),
            None => self.base.act(sigma, x),
        }
    }

    fn compose(&self, a: &O::Basis, i: usize, b: &O::Basis) -> Result<LinComb<O::Basis>> {
        match &self.compose {
            Some(f) => f(&self.base, a, i, b),
            None => self.base.compose(a, i, b),
        }
    }

    fn unit(&self) -> LinComb<O::Basis> {
        self.base.unit()
    }
}
