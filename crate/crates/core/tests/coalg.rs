use std::collections::BTreeMap;

use opsusp_core::chaincore::suspend;
use opsusp_core::coalg::json::{coalgebra_from_json, coalgebra_to_json};
use opsusp_core::coalg::*;
use opsusp_core::operad::{
    compose_morphisms, identity_morphism, BarOperad, CoEndBasis, LinComb, MorphismLaw, Operad, ShiftedOperad,
};
use proptest::prelude::*;

fn bar() -> BarOperad {
    BarOperad::new(3, 3).unwrap()
}

fn interval() -> PointedCoalgebra {
    make_interval(bar(), IntervalLift::ToP0).unwrap()
}

fn words(k: &Coalgebra<BarOperad>, x: &str, c: &str) -> BTreeMap<String, i64> {
    let x = k.operad.parse(x).unwrap();
    k.adjoint(&x, k.cell(c).unwrap()).unwrap().into_iter().map(|(w, v)| (k.word_label(&w), v)).collect()
}

fn expect(terms: &[(&str, i64)]) -> BTreeMap<String, i64> {
    terms.iter().map(|&(w, v)| (w.to_string(), v)).collect()
}

#[test]
fn interval_is_a_coalgebra() {
    let i = interval();
    let r = check_coalgebra(&i.base).unwrap();
    assert!(r.passed(), "{r}");
    assert!(r.checked[&MorphismLaw::Composition] > 3000);
}

#[test]
fn interval_lift_onto_p1_is_only_homotopy_coherent() {
    let i = make_interval(bar(), IntervalLift::ToP1).unwrap();
    let r = check_coalgebra(&i.base).unwrap();
    assert_eq!(r.failures.keys().copied().collect::<Vec<_>>(), vec![MorphismLaw::Composition], "{r}");
}

#[test]
fn interval_diagonal_in_degree_zero() {
    let i = interval();
    assert_eq!(words(&i.base, "12*[]", "q"), expect(&[("p0⊗q", 1), ("q⊗p1", 1)]));
    assert_eq!(words(&i.base, "12*[]", "p1"), expect(&[("p1⊗p1", 1)]));
    assert_eq!(words(&i.base, "123*[]", "q"), expect(&[("p0⊗p0⊗q", 1), ("p0⊗q⊗p1", 1), ("q⊗p1⊗p1", 1)]));
}

#[test]
fn interval_cup_one_is_q_tensor_q() {
    for lift in [IntervalLift::ToP0, IntervalLift::ToP1] {
        let i = make_interval(bar(), lift).unwrap();
        assert_eq!(words(&i.base, "12*[21]", "q"), expect(&[("q⊗q", 1)]));
        assert!(words(&i.base, "12*[21]", "p0").is_empty());
    }
}

#[test]
fn boundary_of_cup_one_is_the_commutator() {
    let i = interval();
    let x = i.base.operad.parse("12*[21]").unwrap();
    let dx = i.base.operad.boundary(&x);
    let v = i.base.structure_lc(&dx).unwrap();
    let q = i.base.cell("q").unwrap();
    let got: BTreeMap<String, i64> = opsusp_core::operad::CoEndOperad::evaluate(&v, &q)
        .into_iter()
        .map(|(w, c)| (i.base.word_label(&w), c))
        .collect();
    assert_eq!(got, expect(&[("p1⊗q", 1), ("p0⊗q", -1), ("q⊗p1", -1), ("q⊗p0", 1)]));
}

#[test]
fn rank_two_vanishes_above_degree_one() {
    let i = interval();
    for d in 2..=3 {
        for x in i.base.operad.basis(2, d) {
            assert!(i.base.structure(&x).unwrap().is_empty(), "{}", i.base.operad.label(&x));
        }
    }
}

#[test]
fn dropping_cup_one_breaks_the_chain_map_law() {
    let mut i = interval();
    let x = i.base.operad.parse("12*[21]").unwrap();
    i.base.set(x, LinComb::new());
    let r = check_coalgebra(&i.base).unwrap();
    assert!(r.first(MorphismLaw::ChainMap).is_some(), "{r}");
}

#[test]
fn trivial_coalgebra_and_its_reduction() {
    let z = trivial_coalgebra(bar()).unwrap();
    assert!(check_coalgebra(&z.base).unwrap().passed());
    assert!(z.is_reduced().unwrap());
    let zp = reduce(&z).unwrap();
    assert!(zp.cells().is_empty());
}

#[test]
fn reduced_interval() {
    let ip = reduce(&interval()).unwrap();
    let c = ip.carrier();
    assert_eq!(c.basis(0), ["p1"]);
    assert_eq!(c.basis(1), ["q"]);
    assert!(check_coalgebra(&ip).unwrap().passed());
}

#[test]
fn pullbacks() {
    let i = interval();
    let id = identity_morphism(bar());
    let same = pullback(&id, &i.base).unwrap();
    assert!(same.entries().eq(i.base.entries()));
    let twice = compose_morphisms(&id, &id);
    let again = pullback(&twice, &i.base).unwrap();
    assert!(again.entries().eq(i.base.entries()));
    let smaller = identity_morphism(BarOperad::new(2, 3).unwrap());
    let restricted = pullback(&smaller, &i.base).unwrap();
    assert!(restricted.entries().all(|(x, v)| i.base.structure(x).unwrap() == v));
    assert!(check_coalgebra(&restricted).unwrap().passed());
}

#[test]
fn circle_is_a_reduced_coalgebra() {
    let s = circle(&interval()).unwrap();
    assert!(check_coalgebra(&s.base).unwrap().passed());
    assert!(s.is_reduced().unwrap());
    assert_eq!(words(&s.base, "12*[21]", "e"), expect(&[("e⊗e", 1)]));
}

#[test]
fn interval_tensor_interval() {
    let i = interval();
    let ii = tensor_coalgebra(&i.base, &i.base).unwrap();
    let r = check_coalgebra(&ii).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn suspension_of_the_interval() {
    let i = interval();
    let si = suspend_m(&i, &i).unwrap();
    assert_eq!(si.base.carrier().basis(0), ["[0]⊗p0"]);
    assert!(check_coalgebra(&si.base).unwrap().passed());
    let sip = reduce(&si).unwrap();
    let sigma = suspend(&reduce(&i).unwrap().carrier().as_ref().clone(), 1);
    assert!(same_complex(sip.carrier(), &sigma));
}

#[test]
fn suspension_of_the_circle() {
    let i = interval();
    let s2 = suspend_m(&circle(&i).unwrap(), &i).unwrap();
    assert_eq!(s2.base.carrier().basis(2), ["S^1:e"]);
    let r = check_coalgebra(&s2.base).unwrap();
    assert!(r.passed(), "{r}");
    assert!(s2.is_reduced().unwrap());
}

#[test]
fn desuspension_of_reduced_coalgebras() {
    let ip = reduce(&interval()).unwrap();
    let down = shift_coalgebra(&ip, -1).unwrap();
    assert_eq!(down.carrier().basis(-1), ["S^-1:p1"]);
    assert!(check_coalgebra(&down).unwrap().passed());
    let up = shift_coalgebra(&ip, 1).unwrap();
    assert!(check_coalgebra(&up).unwrap().passed());
    let twice = flatten_shift(shift_coalgebra(&down, -1).unwrap());
    assert_eq!(twice.operad.name(), ShiftedOperad::new(bar(), -2).name());
    assert!(check_coalgebra(&twice).unwrap().passed());
    assert!(shift_coalgebra(&ip, 2).is_err());
}

#[test]
fn coalgebra_maps() {
    let i = interval();
    let id = |c: Cell| LinComb::from([(c, 1)]);
    assert!(check_coalgebra_map(&i.base, &i.base, &id).unwrap().is_none());
    let zero = |_: Cell| LinComb::new();
    assert!(check_coalgebra_map(&i.base, &i.base, &zero).unwrap().is_none());
    let (p0, p1, q) = ((0, 0), (0, 1), (1, 0));
    let flip = |c: Cell| match c {
        c if c == p0 => LinComb::from([(p1, 1)]),
        c if c == p1 => LinComb::from([(p0, 1)]),
        _ => LinComb::from([(q, -1)]),
    };
    assert_eq!(check_coalgebra_map(&i.base, &i.base, &flip).unwrap().unwrap().0, "12*[]");
    let s = circle(&i).unwrap();
    let to_circle = |c: Cell| LinComb::from([(if c == q { (1, 0) } else { (0, 0) }, 1)]);
    assert!(check_coalgebra_map(&i.base, &s.base, &to_circle).unwrap().is_none());
}

#[test]
fn quotient_rejects_non_sub_coalgebras() {
    let i = interval();
    let c = i.base.carrier().clone();
    let q = i.base.cell("q").unwrap();
    // the identity does not kill q
    let r = i.base.quotient("bad", c, &|x| LinComb::from([(x, 1)]), &|x| x, &[LinComb::from([(q, 1)])]);
    assert!(r.is_err());
}

#[test]
fn json_round_trip() {
    let i = interval();
    let s = coalgebra_to_json(&i);
    let back = coalgebra_from_json(&s).unwrap();
    assert_eq!(back.basepoint, i.basepoint);
    assert_eq!(back.augmentation, i.augmentation);
    assert!(back.base.entries().eq(i.base.entries()));
    assert_eq!(coalgebra_to_json(&back), s);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn perturbing_one_value_is_detected(rank in 2usize..=3, pick in 0usize..1000, coeff in 1i64..4) {
        let mut i = interval();
        let op = i.base.operad.clone();
        let xs: Vec<_> = (0..=1).flat_map(|d| op.basis(rank, d)).collect();
        let x = xs[pick % xs.len()].clone();
        let q = i.base.cell("q").unwrap();
        let mut v = i.base.structure(&x).unwrap().clone();
        let w = CoEndBasis { src: q, word: vec![q; rank] };
        *v.entry(w).or_insert(0) += coeff;
        i.base.set(x, v);
        prop_assert!(!check_coalgebra(&i.base).unwrap().passed());
    }
}
