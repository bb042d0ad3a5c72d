use std::sync::Arc;

use opsusp_core::chaincore::{integers_in_degree, interval_complex, suspend, ComplexBuilder, TruncationWindow};
use opsusp_core::operad::json::{adjacent_word, dump_operad, operad_from_json, operad_to_json};
use opsusp_core::operad::*;
use opsusp_core::symgrp::{CompositionShape, Permutation};
use opsusp_core::tmap;

fn assert_passes<O: Operad>(op: &O) -> AxiomReport {
    let rep = check_axioms(op).unwrap();
    assert!(rep.passed(), "{rep}");
    rep
}

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

#[test]
fn s0_axioms_through_rank_4() {
    let rep = assert_passes(&S0Operad::new(4));
    for law in [Law::Associativity, Law::Commutativity, Law::Equivariance, Law::BlockEquivariance] {
        assert!(rep.checked[&law] > 0, "{law:?} never exercised");
    }
}

#[test]
fn s0_components_and_degree() {
    let op = S0Operad::new(4);
    for n in 1..=4 {
        let expect: usize = (1..=n).product();
        assert_eq!(op.basis(n, 0).len(), expect);
        assert!(op.basis(n, 1).is_empty());
    }
}

#[test]
fn coassoc_and_susp_axioms() {
    let rep = assert_passes(&CoassocOperad::new(6));
    assert!(rep.checked[&Law::Associativity] > 0);
    assert!(op_boundary_zero(&CoassocOperad::new(6)));
    assert_passes(&SuspOperad::susp(5));
    assert_passes(&SuspOperad::desusp(5));
    assert_passes(&SuspOperad::new(2, 5));
}

fn op_boundary_zero<O: Operad>(op: &O) -> bool {
    (1..=op.max_rank()).all(|n| op.degrees(n).iter().flat_map(|d| op.basis(n, d)).all(|x| op.boundary(&x).is_empty()))
}

#[test]
fn susp_components() {
    let s = SuspOperad::susp(5);
    let d = SuspOperad::desusp(5);
    for n in 1..=5usize {
        let k = n as i64 - 1;
        assert_eq!(s.basis(n, k), vec![n]);
        assert!(s.basis(n, k + 1).is_empty() && s.basis(n, k - 1).is_empty());
        assert_eq!(d.basis(n, -k), vec![n]);
    }
    let t = TensorOperad::new(s.clone(), d.clone());
    for n in 1..=5 {
        let r = t.degrees(n);
        assert_eq!((r.lo, r.hi), (0, 0));
    }
    // (−1)^{|b||c|} with |b| = |c| = 1
    let sq = TensorOperad::new(s.clone(), s);
    assert_eq!(sq.compose(&(2, 2), 1, &(2, 2)).unwrap(), LinComb::from([((3, 3), -1)]));
}

#[test]
fn gamma_direct_matches_iterated_circ() {
    let op = S0Operad::new(9);
    for k in 1..=3usize {
        for sigma in Permutation::all(k) {
            let shapes: Vec<Vec<usize>> = (0..k).map(|_| (1..=3).collect()).collect();
            for ranks in itertools_product(&shapes) {
                let choices: Vec<Vec<Permutation>> = ranks.iter().map(|&r| Permutation::all(r)).collect();
                for inputs in itertools_product(&choices) {
                    let us: Vec<LinComb<Permutation>> =
                        inputs.iter().map(|x| LinComb::from([(x.clone(), 1)])).collect();
                    let lhs = gamma(&op, &us, &LinComb::from([(sigma.clone(), 1)])).unwrap();
                    let rhs = S0Operad::gamma_direct(&inputs, &sigma).unwrap();
                    assert_eq!(lhs, LinComb::from([(rhs, 1)]), "σ={sigma}, inputs={inputs:?}");
                }
            }
        }
    }
}

fn itertools_product<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![vec![]];
    for l in lists {
        out = out.into_iter().flat_map(|pre| l.iter().map(move |x| [pre.clone(), vec![x.clone()]].concat())).collect();
    }
    out
}

#[test]
fn s0_gamma_equivariance_with_tmap() {
    // γ(u_1, …, u_k; σ·u) = T_α(σ)·γ(u_{σ(1)}, …, u_{σ(k)}; u), α the ranks of u_1, …, u_k
    let op = S0Operad::new(9);
    let one = |x: &Permutation| LinComb::from([(x.clone(), 1)]);
    for k in 1..=3usize {
        let alphas = itertools_product(&(0..k).map(|_| (1..=3usize).collect::<Vec<_>>()).collect::<Vec<_>>());
        for alpha in alphas {
            let t_shape = CompositionShape::new(alpha.clone());
            let choices: Vec<Vec<Permutation>> = alpha.iter().map(|&r| Permutation::all(r)).collect();
            for inputs in itertools_product(&choices) {
                let us: Vec<_> = inputs.iter().map(one).collect();
                for sigma in Permutation::all(k) {
                    let t = tmap(&t_shape, &sigma).unwrap();
                    let permuted: Vec<_> = (1..=k).map(|l| us[sigma.apply(l) - 1].clone()).collect();
                    for u in Permutation::all(k) {
                        let lhs = gamma(&op, &us, &op.act(&sigma, &u)).unwrap();
                        let rhs = op.act_lc(&t, &gamma(&op, &permuted, &one(&u)).unwrap());
                        assert_eq!(lhs, rhs, "α={alpha:?} σ={sigma} u={u}");
                    }
                }
            }
        }
    }
}

#[test]
fn mutated_susp_sign_is_located() {
    let m = Mutant::new(SuspOperad::susp(5)).with_compose(|_, a, i, b| {
        check_slot(i, *b)?;
        Ok(LinComb::from([(a + b - 1, 1)]))
    });
    let rep = check_axioms(&m).unwrap();
    assert!(!rep.passed());
    let v = rep.first(Law::Equivariance).or(rep.violations.first()).unwrap();
    assert!(!v.instance.is_empty());
}

#[test]
fn mutated_s0_action_is_located() {
    let m = Mutant::new(S0Operad::new(3)).with_act(|_, s, x| LinComb::from([(x.compose(s).unwrap(), 1)]));
    let rep = check_axioms(&m).unwrap();
    assert!(!rep.passed());
    assert!(rep.first(Law::GroupAction).is_some(), "{rep}");
}

#[test]
fn mutated_bar_sign_is_located() {
    let bar = BarOperad::new(3, 2).unwrap();
    let m = Mutant::new(bar).with_compose(|op, a, i, b| {
        let v = op.compose(a, i, b)?;
        Ok(if a.len() == 2 && b.len() == 2 { lc_scale(&v, -1) } else { v })
    });
    let rep = check_axioms(&m).unwrap();
    assert!(!rep.passed(), "{rep}");
}

#[test]
fn coend_of_suspended_integers_matches_closed_form() {
    let c = Arc::new(integers_in_degree(1, "x"));
    let co = CoEndOperad::new(c, 5).unwrap();
    let susp = SuspOperad::susp(5);
    for n in 1..=5usize {
        let b = co.basis(n, n as i64 - 1);
        assert_eq!(b.len(), 1);
        assert!(co.basis(n, n as i64).is_empty());
    }
    for n in 1..=5usize {
        for m in 1..=6 - n {
            let (a, b) = (&co.basis(n, n as i64 - 1)[0], &co.basis(m, m as i64 - 1)[0]);
            for i in 1..=m {
                let brute = co.compose(a, i, b).unwrap();
                let c = *brute.values().next().unwrap();
                let closed = if (i - 1) * (n - 1) % 2 == 0 { 1 } else { -1 };
                assert_eq!(c, closed, "n={n} m={m} i={i}");
                assert_eq!(susp.compose(&n, i, &m).unwrap(), LinComb::from([(n + m - 1, closed)]));
            }
        }
    }
    let w = susp_witness(5).unwrap();
    let rep = check_morphism(&w).unwrap();
    assert!(rep.passed(), "{rep}");
}

#[test]
fn coend_and_end_axioms() {
    let i = Arc::new(interval_complex());
    assert_passes(&CoEndOperad::new(i.clone(), 3).unwrap());
    assert_passes(&EndOperad::new(i, 3).unwrap());
    let z = Arc::new(integers_in_degree(-1, "y"));
    assert_passes(&CoEndOperad::new(z.clone(), 4).unwrap());
    assert_passes(&EndOperad::new(z, 4).unwrap());
}

#[test]
fn coend_unit_is_identity_map() {
    let op = CoEndOperad::new(Arc::new(interval_complex()), 2).unwrap();
    let u = op.unit();
    assert_eq!(u.len(), 3);
    assert!(op.boundary_lc(&u).is_empty());
    for x in op.basis(2, 0) {
        let xl = LinComb::from([(x.clone(), 1)]);
        assert_eq!(op.compose_lc(&u, 1, &xl).unwrap(), xl);
        assert_eq!(op.compose_lc(&xl, 1, &u).unwrap(), xl);
    }
}

#[test]
fn shifted_operad_matches_nested_tensor() {
    let base = CoEndOperad::new(Arc::new(interval_complex()), 3).unwrap();
    for k in [1i64, -1] {
        let sh = ShiftedOperad::new(base.clone(), k);
        let nested = TensorOperad::new(SuspOperad::new(k, 3), base.clone());
        compare_shift(&sh, &nested, k);
    }
    let sh = ShiftedOperad::new(base.clone(), 2);
    let nested = TensorOperad::new(SuspOperad::susp(3), TensorOperad::new(SuspOperad::susp(3), base.clone()));
    for n in 1..=2usize {
        for m in 1..=2usize {
            for a in sh.degrees(n).iter().flat_map(|d| sh.basis(n, d)) {
                for b in sh.degrees(m).iter().flat_map(|d| sh.basis(m, d)) {
                    for i in 1..=m {
                        let l = sh.compose(&a, i, &b).unwrap();
                        let r = nested.compose(&(n, (n, a.clone())), i, &(m, (m, b.clone()))).unwrap();
                        let r: LinComb<CoEndBasis> = r.iter().map(|(x, &c)| (x.1 .1.clone(), c)).collect();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }
    assert_passes(&sh);
}

fn compare_shift(sh: &ShiftedOperad<CoEndOperad>, nested: &TensorOperad<SuspOperad, CoEndOperad>, k: i64) {
    for n in 1..=3usize {
        let (comp, _) = component(sh, n).unwrap();
        let (base, _) = component(&sh.base, n).unwrap();
        let expect = suspend(&base, k * (n as i64 - 1));
        assert_eq!(comp.window(), expect.window());
        for d in comp.window().degrees() {
            assert_eq!(comp.basis(d), expect.basis(d));
            assert_eq!(comp.boundary_matrix(d), expect.boundary_matrix(d));
        }
    }
    let strip = |x: &LinComb<(usize, CoEndBasis)>| -> LinComb<CoEndBasis> {
        x.iter().map(|(b, &c)| (b.1.clone(), c)).collect()
    };
    for n in 1..=3usize {
        for x in sh.degrees(n).iter().flat_map(|d| sh.basis(n, d)) {
            let nx = (n, x.clone());
            assert_eq!(sh.boundary(&x), strip(&nested.boundary(&nx)));
            for s in Permutation::all(n) {
                assert_eq!(sh.act(&s, &x), strip(&nested.act(&s, &nx)));
            }
        }
    }
    for n in 1..=2usize {
        for m in 1..=2usize {
            for a in sh.degrees(n).iter().flat_map(|d| sh.basis(n, d)) {
                for b in sh.degrees(m).iter().flat_map(|d| sh.basis(m, d)) {
                    for i in 1..=m {
                        let l = sh.compose(&a, i, &b).unwrap();
                        let r = nested.compose(&(n, a.clone()), i, &(m, b.clone())).unwrap();
                        assert_eq!(l, strip(&r), "k={k}");
                    }
                }
            }
        }
    }
}

#[test]
fn bar_axioms_rank_3_degree_3() {
    let rep = assert_passes(&BarOperad::new(3, 3).unwrap());
    assert!(rep.checked[&Law::CompositionChainMap] > 0);
}

#[test]
fn bar_degree_zero_is_s0() {
    let bar = BarOperad::new(3, 1).unwrap();
    let s0 = S0Operad::new(3);
    for a in Permutation::all(2) {
        for b in Permutation::all(2) {
            for i in 1..=2 {
                let x = bar.compose(&vec![a.clone()], i, &vec![b.clone()]).unwrap();
                let y = s0.compose(&a, i, &b).unwrap();
                let y: LinComb<Vec<Permutation>> = y.into_iter().map(|(p, c)| (vec![p], c)).collect();
                assert_eq!(x, y);
            }
        }
    }
}

#[test]
fn bar_degree_one_compositions() {
    let bar = BarOperad::new(3, 2).unwrap();
    let tau = vec![p("12"), p("21")];
    let e2 = BarOperad::bottom(2);
    // [τ] ∘_1 [ ] = (e∘_1 e, τ∘_1 e)
    let x = bar.compose(&tau, 1, &e2).unwrap();
    assert_eq!(x, LinComb::from([(vec![p("123"), p("213")], 1)]));
    // [ ] ∘_1 [τ] = (e∘_1 e, e∘_1 τ)
    let y = bar.compose(&e2, 1, &tau).unwrap();
    assert_eq!(y, LinComb::from([(vec![p("123"), p("312")], 1)]));
    let y2 = bar.compose(&e2, 2, &tau).unwrap();
    assert_eq!(y2, LinComb::from([(vec![p("123"), p("231")], 1)]));
    // unit
    let e1 = BarOperad::bottom(1);
    for i in 1..=2 {
        assert_eq!(bar.compose(&e1, i, &tau).unwrap(), LinComb::from([(tau.clone(), 1)]));
    }
    assert_eq!(bar.compose(&tau, 1, &e1).unwrap(), LinComb::from([(tau.clone(), 1)]));
    // [τ] ∘_1 [τ] is the two shuffles of a 1×1 square
    let z = bar.compose(&tau, 1, &tau).unwrap();
    assert_eq!(z.len(), 2);
    assert_eq!(z.values().copied().collect::<Vec<_>>().iter().sum::<i64>(), 0);
}

#[test]
fn aw_diagonal_examples() {
    let bar = BarOperad::new(2, 3).unwrap();
    let e = BarOperad::bottom(2);
    assert_eq!(aw_diagonal(&e), LinComb::from([((e.clone(), e.clone()), 1)]));
    let tau = vec![p("12"), p("21")];
    let d = aw_diagonal(&tau);
    // [ ]⊗[τ] + [τ]⊗τ[ ]
    assert_eq!(d, LinComb::from([((e.clone(), tau.clone()), 1), ((tau.clone(), vec![p("21")]), 1)]));
    check_aw_coassociative(&bar, 2).unwrap();
    let bar3 = BarOperad::new(3, 2).unwrap();
    check_aw_coassociative(&bar3, 3).unwrap();
}

#[test]
fn morphisms() {
    let s0 = S0Operad::new(4);
    assert!(check_morphism(&identity_morphism(s0)).unwrap().passed());
    let bar = BarOperad::new(3, 2).unwrap();
    let eps = augmentation_to_coassoc(bar.clone());
    assert!(check_morphism(&eps).unwrap().passed());
    // degree-0 projection preserves ∘_i and the action but not ∂
    let proj = augmentation_to_s0(bar.clone());
    let rep = check_morphism(&proj).unwrap();
    assert!(!rep.passed());
    assert_eq!(rep.failures.keys().copied().collect::<Vec<_>>(), vec![MorphismLaw::ChainMap]);
    let id = identity_morphism(bar.clone());
    let twice = compose_morphisms(&id, &eps);
    assert!(check_morphism(&twice).unwrap().passed());
    // corrupt one sign
    let bad = FnMorphism::new("bad", bar, CoassocOperad::new(3), |x: &Vec<Permutation>| {
        if x.len() == 1 {
            let c = if x[0].n() == 3 && x[0].parity() == 1 { -1 } else { 1 };
            LinComb::from([(x[0].n(), c)])
        } else {
            LinComb::new()
        }
    });
    let rep = check_morphism(&bad).unwrap();
    assert!(!rep.passed());
    assert!(!rep.violations[0].instance.is_empty());
}

fn two_cell_complex() -> Arc<ortho::ChainComplex> {
    let mut b = ComplexBuilder::new();
    let a = b.generator(1, "a");
    let c = b.generator(0, "c");
    b.boundary_entry(1, a, c, 1);
    Arc::new(b.build("A", TruncationWindow::new(0, 1).unwrap()).unwrap().into_complete())
}

mod ortho {
    pub use opsusp_core::chaincore::ChainComplex;
}

#[test]
fn coend_pairing_is_a_morphism() {
    let x = Arc::new(integers_in_degree(1, "x"));
    let y = Arc::new(integers_in_degree(0, "y"));
    for (a, b) in [(x.clone(), y.clone()), (y.clone(), x.clone()), (x.clone(), x.clone())] {
        let e = coend_pairing(a, b, 3).unwrap();
        let rep = check_morphism(&e).unwrap();
        assert!(rep.passed(), "{rep}");
    }
    let e = coend_pairing(x.clone(), two_cell_complex(), 2).unwrap();
    let rep = check_morphism(&e).unwrap();
    assert!(rep.passed(), "{rep}");
    // rank 1 is the ordinary tensor of maps
    let e = coend_pairing(two_cell_complex(), two_cell_complex(), 1).unwrap();
    assert!(check_morphism(&e).unwrap().passed());
}

#[test]
fn coend_of_suspension_is_susp_tensor_coend() {
    // CoEnd(Σℤ ⊗ C) ≅ Susp ⊗ CoEnd(C) through 𝔈 and the witness
    let c = two_cell_complex();
    let e = coend_pairing(Arc::new(integers_in_degree(1, "x")), c.clone(), 3).unwrap();
    let src = &e.source;
    for n in 1..=3usize {
        let r = src.degrees(n);
        let total: usize = r.iter().map(|d| src.basis(n, d).len()).sum();
        let t = &e.target;
        let tr = t.degrees(n);
        let total_t: usize = tr.iter().map(|d| t.basis(n, d).len()).sum();
        assert_eq!(total, total_t, "rank {n}");
        // injective on basis: distinct images
        let mut images = std::collections::BTreeSet::new();
        for d in r.iter() {
            for x in src.basis(n, d) {
                let y = e.apply(&x);
                assert_eq!(y.len(), 1);
                images.insert(y.into_keys().next().unwrap());
            }
        }
        assert_eq!(images.len(), total);
    }
    let _ = suspend(&c, 1);
}

#[test]
fn dump_round_trip() {
    let bar = BarOperad::new(3, 2).unwrap();
    let s = operad_to_json(&bar).unwrap();
    let t = operad_from_json(&s).unwrap();
    assert_eq!(operad_to_json(&t).unwrap(), s);
    let rep = check_axioms(&t).unwrap();
    assert!(rep.passed(), "{rep}");
    let j = dump_operad(&SuspOperad::desusp(4)).unwrap();
    assert_eq!(j.components.len(), 4);
    let t = opsusp_core::operad::json::TableOperad::from_json(&j).unwrap();
    assert!(check_axioms(&t).unwrap().passed());
}

#[test]
fn adjacent_words_rebuild_permutations() {
    for n in 1..=4 {
        for s in Permutation::all(n) {
            let mut acc = Permutation::identity(n);
            for j in adjacent_word(&s) {
                acc = Permutation::transposition(n, j, j + 1).compose(&acc).unwrap();
            }
            assert_eq!(acc, s);
        }
    }
}

#[test]
fn aw_diagonal_is_an_operad_morphism() {
    let bar = BarOperad::new(3, 4).unwrap();
    let t = TensorOperad::new(bar.clone(), bar.clone());
    let m = FnMorphism::new("Δ", bar, t, |x: &Vec<Permutation>| aw_diagonal(x));
    let rep = check_morphism(&m).unwrap();
    assert!(rep.passed(), "{rep}");
    assert!(rep.checked[&MorphismLaw::Composition] > 10_000);
}
