//! Operad morphisms given on basis elements, and their verification.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::basic::{CoassocOperad, S0Operad, SuspOperad};
use super::coend::{CoEndBasis, CoEndOperad};
use super::{format_lc, lc_linear, lc_term, BarOperad, LinComb, Operad, TensorOperad};
use crate::chaincore::ops::TensorIndex;
use crate::chaincore::{integers_in_degree, sign, tensor_complex, ChainComplex};
use crate::error::{Error, Result};
use crate::symgrp::Permutation;

pub trait OperadMorphism {
    type Source: Operad;
    type Target: Operad;

    fn name(&self) -> String;
    fn source(&self) -> &Self::Source;
    fn target(&self) -> &Self::Target;
    fn apply(&self, x: &<Self::Source as Operad>::Basis) -> LinComb<<Self::Target as Operad>::Basis>;

    fn apply_lc(&self, x: &LinComb<<Self::Source as Operad>::Basis>) -> LinComb<<Self::Target as Operad>::Basis> {
        lc_linear(x, |b| self.apply(b))
    }
}

type MapFn<S, T> = dyn Fn(&<S as Operad>::Basis) -> LinComb<<T as Operad>::Basis> + Send + Sync;

/// A morphism defined by a closure on basis elements.
pub struct FnMorphism<S: Operad, T: Operad> {
    pub name: String,
    pub source: S,
    pub target: T,
    f: Arc<MapFn<S, T>>,
}

impl<S: Operad + Clone, T: Operad + Clone> Clone for FnMorphism<S, T> {
    fn clone(&self) -> Self {
        FnMorphism {
            name: self.name.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            f: self.f.clone(),
        }
    }
}

impl<S: Operad, T: Operad> FnMorphism<S, T> {
    pub fn new(
        name: impl Into<String>,
        source: S,
        target: T,
        f: impl Fn(&S::Basis) -> LinComb<T::Basis> + Send + Sync + 'static,
    ) -> Self {
        FnMorphism { name: name.into(), source, target, f: Arc::new(f) }
    }
}

impl<S: Operad, T: Operad> OperadMorphism for FnMorphism<S, T> {
    type Source = S;
    type Target = T;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn source(&self) -> &S {
        &self.source
    }

    fn target(&self) -> &T {
        &self.target
    }

    fn apply(&self, x: &S::Basis) -> LinComb<T::Basis> {
        (self.f)(x)
    }
}

pub fn identity_morphism<O: Operad + Clone>(op: O) -> FnMorphism<O, O> {
    FnMorphism::new(format!("id_{}", op.name()), op.clone(), op, |x| lc_term(x.clone(), 1))
}

/// `g ∘ f`.
pub fn compose_morphisms<A, B, C>(f: &FnMorphism<A, B>, g: &FnMorphism<B, C>) -> FnMorphism<A, C>
where
    A: Operad + Clone,
    B: Operad,
    C: Operad + Clone,
    A::Basis: 'static,
    B::Basis: 'static,
    C::Basis: 'static,
{
    let (ff, gf) = (f.f.clone(), g.f.clone());
    FnMorphism::new(format!("{}∘{}", g.name, f.name), f.source.clone(), g.target.clone(), move |x| {
        lc_linear(&ff(x), |y| gf(y))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum MorphismLaw {
    ChainMap,
    Equivariance,
    Composition,
    Unit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismViolation {
    pub law: MorphismLaw,
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}] {}: {} ≠ {}", self.law, self.instance, self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct MorphismReport {
    pub morphism: String,
    pub max_rank: usize,
    pub checked: BTreeMap<MorphismLaw, usize>,
    pub failures: BTreeMap<MorphismLaw, usize>,
    pub violations: Vec<MorphismViolation>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first(&self, law: MorphismLaw) -> Option<&MorphismViolation> {
        self.violations.iter().find(|v| v.law == law)
    }

    fn record<B: Ord>(
        &mut self,
        law: MorphismLaw,
        lhs: &LinComb<B>,
        rhs: &LinComb<B>,
        describe: impl FnOnce() -> (String, String, String),
    ) {
        *self.checked.entry(law).or_insert(0) += 1;
        if lhs != rhs {
            *self.failures.entry(law).or_insert(0) += 1;
            if self.violations.len() < 20 {
                let (instance, l, r) = describe();
                self.violations.push(MorphismViolation { law, instance, lhs: l, rhs: r });
            }
        }
    }
}

impl fmt::Display for MorphismReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (ranks ≤ {})", self.morphism, self.max_rank)?;
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

/// Chain map, equivariance, `∘_i` and unit preservation on every source
/// basis instance of rank at most `max_rank` (default: the source's).
pub fn check_morphism<M: OperadMorphism>(m: &M) -> Result<MorphismReport> {
    check_morphism_up_to(m, m.source().max_rank())
}

pub fn check_morphism_up_to<M: OperadMorphism>(m: &M, max_rank: usize) -> Result<MorphismReport> {
    let (s, t) = (m.source(), m.target());
    let mut rep = MorphismReport { morphism: m.name(), max_rank, ..Default::default() };
    let mut elems = vec![Vec::new()];
    for n in 1..=max_rank {
        elems.push(s.degrees(n).iter().flat_map(|d| s.basis(n, d)).collect::<Vec<_>>());
    }
    let show = |y: &LinComb<<M::Target as Operad>::Basis>| format_lc(t, y);

    let lhs = m.apply_lc(&s.unit());
    rep.record(MorphismLaw::Unit, &lhs, &t.unit(), || ("e".into(), show(&lhs), show(&t.unit())));

    for n in 1..=max_rank {
        let group = Permutation::all(n);
        for x in &elems[n] {
            let fx = m.apply(x);
            let lhs = m.apply_lc(&s.boundary(x));
            let rhs = t.boundary_lc(&fx);
            rep.record(MorphismLaw::ChainMap, &lhs, &rhs, || (format!("∂ {}", s.label(x)), show(&lhs), show(&rhs)));
            for g in &group {
                let lhs = m.apply_lc(&s.act(g, x));
                let rhs = t.act_lc(g, &fx);
                rep.record(MorphismLaw::Equivariance, &lhs, &rhs, || {
                    (format!("σ={g}, x={}", s.label(x)), show(&lhs), show(&rhs))
                });
            }
        }
    }

    for n in 1..=max_rank {
        for k in 1..=max_rank + 1 - n {
            for a in &elems[n] {
                let fa = m.apply(a);
                for b in &elems[k] {
                    if !s.degrees(n + k - 1).known(s.degree_of(a) + s.degree_of(b)) {
                        continue;
                    }
                    let fb = m.apply(b);
                    for i in 1..=k {
                        let lhs = m.apply_lc(&s.compose(a, i, b)?);
                        let rhs = t.compose_lc(&fa, i, &fb)?;
                        rep.record(MorphismLaw::Composition, &lhs, &rhs, || {
                            (format!("{} ∘_{i} {}", s.label(a), s.label(b)), show(&lhs), show(&rhs))
                        });
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Degree-0 projection `𝔖 → 𝔖₀`, `(σ) ↦ σ`, higher simplices to zero.
pub fn augmentation_to_s0(bar: BarOperad) -> FnMorphism<BarOperad, S0Operad> {
    let target = S0Operad::new(bar.max_rank);
    FnMorphism::new("𝔖→𝔖₀", bar, target, |x| if x.len() == 1 { lc_term(x[0].clone(), 1) } else { LinComb::new() })
}

/// `ε: 𝔖 → Coassoc`, `(σ) ↦ b_n`, higher simplices to zero.
pub fn augmentation_to_coassoc(bar: BarOperad) -> FnMorphism<BarOperad, CoassocOperad> {
    let target = CoassocOperad::new(bar.max_rank);
    FnMorphism::new("𝔖→Coassoc", bar, target, |x| if x.len() == 1 { lc_term(x[0].n(), 1) } else { LinComb::new() })
}

/// `𝔈: CoEnd(A) ⊗ CoEnd(B) → CoEnd(A⊗B)`, `f⊗g ↦ V∘(f⊗g)` where `V`
/// interleaves `(v_1⊗⋯⊗v_n)⊗(w_1⊗⋯⊗w_n)` into `(v_1⊗w_1)⊗⋯⊗(v_n⊗w_n)`.
///
/// `(f⊗g)(a⊗b) = (−1)^{|g||a|} f(a)⊗g(b)`; moving each `w_j` past `v_l`, `l > j`,
/// costs `(−1)^{|w_j||v_l|}`.
pub fn coend_pairing(
    a: Arc<ChainComplex>,
    b: Arc<ChainComplex>,
    max_rank: usize,
) -> Result<FnMorphism<TensorOperad<CoEndOperad, CoEndOperad>, CoEndOperad>> {
    let ab = Arc::new(tensor_complex(&a, &b)?);
    let idx = TensorIndex::new(&a, &b, ab.window());
    let source = TensorOperad::new(CoEndOperad::new(a, max_rank)?, CoEndOperad::new(b, max_rank)?);
    let target = CoEndOperad::new(ab, max_rank)?;
    Ok(FnMorphism::new("𝔈", source, target, move |(f, g): &(CoEndBasis, CoEndBasis)| {
        let n = f.word.len();
        let mut e = g.degree() * f.src.0;
        for j in 0..n {
            for l in j + 1..n {
                e += g.word[j].0 * f.word[l].0;
            }
        }
        let src = idx.get(f.src, g.src).expect("tensor cell");
        let word = (0..n).map(|j| idx.get(f.word[j], g.word[j]).expect("tensor cell")).collect();
        lc_term(CoEndBasis { src, word }, sign(e))
    }))
}

/// The iso `CoEnd(Σℤ) → Susp`, `(x ↦ x^{⊗n}) ↦ s_n`.
pub fn susp_witness(max_rank: usize) -> Result<FnMorphism<CoEndOperad, SuspOperad>> {
    let c = Arc::new(integers_in_degree(1, "x"));
    let source = CoEndOperad::new(c, max_rank)?;
    if source.cells().len() != 1 {
        return Err(Error::Precondition("Σℤ has one generator".into()));
    }
    Ok(FnMorphism::new("CoEnd(Σℤ)→Susp", source, SuspOperad::susp(max_rank), |x: &CoEndBasis| {
        lc_term(x.word.len(), 1)
    }))
}
