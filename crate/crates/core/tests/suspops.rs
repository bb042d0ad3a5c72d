use std::collections::BTreeMap;
use std::sync::OnceLock;

use opsusp_core::barres::{build_bar, cochain_class, group_cohomology, Coefficients, Simplex, DEFAULT_BASIS_CAP};
use opsusp_core::coalg::*;
use opsusp_core::operad::*;
use opsusp_core::suspops::*;
use opsusp_core::symgrp::Permutation;
use proptest::prelude::*;

fn bar() -> BarOperad {
    BarOperad::new(3, 3).unwrap()
}

fn v() -> &'static VMorphism {
    static V: OnceLock<VMorphism> = OnceLock::new();
    V.get_or_init(|| make_v(bar(), IntervalLift::ToP0).unwrap())
}

fn interval() -> PointedCoalgebra {
    make_interval(bar(), IntervalLift::ToP0).unwrap()
}

fn p(images: &[usize]) -> Permutation {
    Permutation::new(images.to_vec()).unwrap()
}

#[test]
fn suspension_iso_identities() {
    for dir in [1, -1] {
        let r = make_suspension_iso(bar(), dir).unwrap().check().unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.checked["composition"] > 3000);
    }
    assert!(make_suspension_iso(S0Operad::new(4), 1).unwrap().check().unwrap().passed());
    assert!(make_suspension_iso(CoassocOperad::new(5), -1).unwrap().check().unwrap().passed());
    assert!(make_suspension_iso(bar(), 2).is_err());
}

#[test]
fn suspension_iso_examples() {
    let iso = make_suspension_iso(bar(), 1).unwrap();
    let e = BarOperad::bottom(1);
    assert_eq!(iso.shifted.degree_of(&(1, e.clone())), 0);
    assert_eq!(iso.apply(&e), iso.shifted.unit());
    // n = m = 2, dim a = 0, i = 2
    let a = BarOperad::bottom(2);
    let b = bar().parse("12*[21]").unwrap();
    let lhs = iso.apply(&bar().compose(&a, 2, &b).unwrap().into_iter().next().unwrap().0);
    let rhs = iso.shifted.compose(&(2, a), 2, &(2, b)).unwrap();
    assert_eq!(rhs.values().copied().collect::<Vec<_>>(), vec![-1]);
    assert_eq!(lhs.keys().collect::<Vec<_>>(), rhs.keys().collect::<Vec<_>>());
}

#[test]
fn double_suspension_iso_is_the_shift_by_two() {
    let once = make_suspension_iso(bar(), 1).unwrap();
    let twice = make_suspension_iso(once.shifted.clone(), 1).unwrap();
    assert!(twice.check().unwrap().passed());
    let flat = ShiftedOperad::new(bar(), 2);
    let m = FnMorphism::new("𝓘𝓘", flat, twice.shifted.clone(), |x: &Simplex| {
        let n = x[0].n();
        LinComb::from([((n, (n, x.clone())), 1)])
    });
    assert!(check_morphism(&m).unwrap().passed());
}

#[test]
fn tau_values() {
    let tau = make_tau(3).unwrap();
    let i = interval();
    let t = |x: &str| tau.apply_lc(i.base.structure(&bar().parse(x).unwrap()).unwrap());
    assert_eq!(t("12*[21]"), LinComb::from([(2, 1)]));
    assert!(t("12*[]").is_empty());
    assert_eq!(t("1*[]"), LinComb::from([(1, 1)]));
    let q = tau.source.complex().find("q").unwrap();
    for n in 1..=3 {
        assert_eq!(tau.apply(&CoEndBasis { src: q, word: vec![q; n] }), LinComb::from([(n, 1)]));
    }
}

#[test]
fn tau_is_a_morphism_on_the_relative_maps_only() {
    let tau = make_tau(3).unwrap();
    let i = interval();
    let table: BTreeMap<Simplex, LinComb<usize>> =
        i.base.entries().map(|(x, f)| (x.clone(), tau.apply_lc(f))).collect();
    let tau_u = FnMorphism::new("τ∘u", bar(), SuspOperad::susp(3), move |x: &Simplex| table[x].clone());
    assert!(check_morphism(&tau_u).unwrap().passed());
    let full = check_morphism(&tau).unwrap();
    assert!(full.first(MorphismLaw::ChainMap).unwrap().instance.starts_with("∂ p"));
}

#[test]
fn v_is_an_operad_morphism() {
    let r = check_morphism(v()).unwrap();
    assert!(r.passed(), "{r}");
    assert!(v().check_triangle().unwrap().passed());
}

#[test]
fn v_examples() {
    let v = v();
    let b = bar();
    assert!(v.value(&b.parse("12*[]").unwrap()).unwrap().is_empty());
    // Δ[τ] = [ ]⊗[τ] + [τ]⊗τ[ ], and only the second term has a top cell
    let tau_vertex = b.parse("21*[]").unwrap();
    assert_eq!(v.value(&b.parse("12*[21]").unwrap()).unwrap(), &LinComb::from([((2, tau_vertex), 1)]));
    assert_eq!(v.value(&b.parse("1*[]").unwrap()).unwrap(), &LinComb::from([((1, BarOperad::bottom(1)), 1)]));
}

#[test]
fn v_vanishes_below_dimension_n_minus_one() {
    let b = bar();
    for n in 1..=3 {
        for d in 0..n as i64 - 1 {
            for x in b.basis(n, d) {
                assert!(v().value(&x).unwrap().is_empty());
            }
        }
    }
}

#[test]
fn alpha_two_is_the_nonzero_class() {
    let res = build_bar(2, 2, DEFAULT_BASIS_CAP).unwrap();
    let h1 = &group_cohomology(&res, Coefficients::Sign, 1, 1).unwrap()[&1];
    assert_eq!(h1.free_rank, 0);
    assert_eq!(h1.torsion, vec![2.into()]);
    let a = v().alpha(2, Coefficients::Sign).unwrap();
    assert!(a.cocycle);
    assert_eq!(a.order, Some(2.into()));
}

#[test]
fn alpha_three() {
    let res = build_bar(3, 3, DEFAULT_BASIS_CAP).unwrap();
    let h2 = &group_cohomology(&res, Coefficients::Sign, 2, 2).unwrap()[&2];
    let a = v().alpha(3, Coefficients::Sign).unwrap();
    assert!(a.cocycle);
    assert_eq!(a.order, Some(3.into()));
    assert!(h2.torsion.iter().any(|t| t % 3 == 0.into()), "{h2:?}");
}

#[test]
fn sign_twisted_augmentation_gives_no_trivial_class() {
    for n in 2..=3 {
        assert!(!v().alpha(n, Coefficients::Trivial).unwrap().cocycle);
    }
}

#[test]
fn cochain_class_oracle() {
    let res = build_bar(2, 3, DEFAULT_BASIS_CAP).unwrap();
    let c =
        |k, phi: &[(usize, i64)]| cochain_class(&res, Coefficients::Sign, k, &phi.iter().copied().collect()).unwrap();
    assert!(c(1, &[]).is_zero());
    // δ of the degree-0 generator is 2 on [τ] with sign coefficients
    assert!(c(1, &[(0, 2)]).is_zero());
    assert_eq!(c(1, &[(0, 1)]).order, Some(2.into()));
    assert!(!c(0, &[(0, 1)]).cocycle);
}

#[test]
fn v_is_seed_independent_through_rank_two() {
    let v1 = make_v(bar(), IntervalLift::ToP1).unwrap();
    for (x, val) in v().entries() {
        if x[0].n() <= 2 {
            assert_eq!(v1.value(x).unwrap(), val);
        }
    }
    for n in 2..=3 {
        let res = build_bar(n, n as i64, DEFAULT_BASIS_CAP).unwrap();
        let (_, a) = v().cochain(n, Coefficients::Sign).unwrap();
        let (_, b) = v1.cochain(n, Coefficients::Sign).unwrap();
        let mut diff = a.clone();
        for (k, x) in b {
            *diff.entry(k).or_insert(0) -= x;
        }
        diff.retain(|_, x| *x != 0);
        assert!(cochain_class(&res, Coefficients::Sign, n as i64 - 1, &diff).unwrap().is_zero());
    }
}

#[test]
fn u_powers() {
    let u = make_u(v());
    assert!(check_morphism(&u).unwrap().passed());
    assert!(u.apply(&BarOperad::bottom(2)).is_empty());
    assert_eq!(u.apply(&bar().parse("12*[21]").unwrap()), LinComb::from([(bar().parse("21*[]").unwrap(), 1)]));
    let u2 = u_power(v(), 2);
    assert!(check_morphism(&u2).unwrap().passed());
    let u0 = u_power(v(), 0);
    for x in window_basis(&bar()) {
        assert_eq!(u0.apply(&x), LinComb::from([(x.clone(), 1)]));
    }
}

#[test]
fn kappa_signs() {
    assert_eq!((1..=6).map(kappa).collect::<Vec<_>>(), vec![1, 1, -1, -1, 1, 1]);
}

#[test]
fn u_with_the_wrong_kappa_is_not_a_morphism() {
    let u = make_u(v());
    let wrong = FnMorphism::new("𝔘 without κ", u.source.clone(), bar(), move |x: &Simplex| {
        let mut y = u.apply(x);
        let n = x[0].n();
        y.values_mut().for_each(|c| *c *= kappa(n));
        y
    });
    assert!(!check_morphism(&wrong).unwrap().passed());
}

#[test]
fn pullback_along_u_keeps_the_carrier() {
    let ip = reduce(&interval()).unwrap();
    for k in 0..=2 {
        let pulled = pullback(&u_power(v(), k), &ip).unwrap();
        assert!(same_complex(pulled.carrier(), ip.carrier()));
        assert!(check_coalgebra(&pulled).unwrap().passed());
    }
}

#[test]
fn suspension_theorem_for_the_interval() {
    let i = interval();
    let r = check_suspension_theorem(&i, &i, v()).unwrap();
    assert!(r.passed(), "{r}");
    assert!(r.checked["a⁺_SC = Σa⁺_C∘𝔙"] >= bar().basis(2, 3).len());
}

#[test]
fn suspension_theorem_for_the_circle() {
    let i = interval();
    let r = check_suspension_theorem(&circle(&i).unwrap(), &i, v()).unwrap();
    assert!(r.passed(), "{r}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn v_commutes_with_the_action(n in 1usize..=3, d in 0i64..=3, pick in 0usize..10_000, g in 0usize..6) {
        let b = bar();
        let xs = b.basis(n, d);
        prop_assume!(!xs.is_empty());
        let x = &xs[pick % xs.len()];
        let gs = Permutation::all(n);
        let g = &gs[g % gs.len()];
        let lhs = v().apply_lc(&b.act(g, x));
        let rhs = v().target.act_lc(g, &v().apply(x));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn suspension_iso_action_sign(images in Just(vec![2usize, 3, 1]).prop_shuffle()) {
        let iso = make_suspension_iso(bar(), 1).unwrap();
        let g = p(&images);
        let x = bar().parse("123*[213]").unwrap();
        let lhs: LinComb<(usize, Simplex)> = bar().act(&g, &x).into_iter().map(|(y, c)| ((3, y), c)).collect();
        let mut rhs = iso.shifted.act_lc(&g, &iso.apply(&x));
        rhs.values_mut().for_each(|c| *c *= g.sign());
        prop_assert_eq!(lhs, rhs);
    }
}
