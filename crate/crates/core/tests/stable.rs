use std::collections::BTreeMap;
use std::sync::OnceLock;

use opsusp_core::chaincore::suspend;
use opsusp_core::coalg::*;
use opsusp_core::operad::{check_axioms, check_morphism, component, BarOperad, LinComb};
use opsusp_core::stable::*;
use opsusp_core::suspops::{make_v, VMorphism};

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

fn point() -> PointedCoalgebra {
    trivial_coalgebra(bar()).unwrap()
}

fn ground(k: &Coalgebra<BarOperad>) -> LevelledObject {
    LevelledObject::ground(k).unwrap()
}

fn cell_map(
    from: &LevelledObject,
    to: &LevelledObject,
    pairs: &[(&str, &[(i64, &str)])],
) -> BTreeMap<Cell, LinComb<Cell>> {
    pairs
        .iter()
        .map(|(c, img)| {
            let v = img.iter().map(|&(k, l)| (to.coalgebra.cell(l).unwrap(), k)).collect();
            (from.coalgebra.cell(c).unwrap(), v)
        })
        .collect()
}

fn arrow(z: &[LevelledObject], from: usize, to: usize, pairs: &[(&str, &[(i64, &str)])]) -> Arrow {
    let direction = if to > from { Direction::Right } else { Direction::Left };
    Arrow {
        from,
        to,
        direction,
        map: cell_map(&z[from], &z[to], pairs),
        qiso_range: (direction == Direction::Left).then_some((0, 1)),
    }
}

fn identity_zigzag() -> Zigzag {
    let i = ground(&interval().base);
    let cells = i.coalgebra.cells().to_vec();
    Zigzag { objects: vec![i.clone(), i], arrows: vec![identity_arrow(0, 1, Direction::Right, &cells, None)] }
}

fn point_label() -> String {
    let p = point();
    p.base.carrier().basis(0)[0].clone()
}

/// `ℤ → I ← ℤ`, both arrows the inclusion at `p0`.
fn inclusion_zigzag() -> Zigzag {
    let pt = point_label();
    let objects = vec![ground(&point().base), ground(&interval().base), ground(&point().base)];
    let arrows = vec![arrow(&objects, 0, 1, &[(&pt, &[(1, "p0")])]), arrow(&objects, 2, 1, &[(&pt, &[(1, "p0")])])];
    Zigzag { objects, arrows }
}

/// `I → ℤ ← I` by the augmentation.
fn retraction_zigzag() -> Zigzag {
    let pt = point_label();
    let objects = vec![ground(&interval().base), ground(&point().base), ground(&interval().base)];
    let eps: &[(&str, &[(i64, &str)])] = &[("p0", &[(1, &pt)]), ("p1", &[(1, &pt)])];
    let arrows = vec![arrow(&objects, 0, 1, eps), arrow(&objects, 2, 1, eps)];
    Zigzag { objects, arrows }
}

/// `I⁺ → Σ⁻¹(SI)⁺`, the identity on labels, across levels 0 and 1.
fn two_level_zigzag() -> Zigzag {
    let i = interval();
    let low = ground(&reduce(&i).unwrap());
    let high = LevelledObject::desuspended(&reduce(&suspend_m(&i, &i).unwrap()).unwrap(), 1).unwrap();
    assert!(same_complex(low.coalgebra.carrier(), high.coalgebra.carrier()));
    let cells = low.coalgebra.cells().to_vec();
    Zigzag { objects: vec![low, high], arrows: vec![identity_arrow(0, 1, Direction::Right, &cells, None)] }
}

#[test]
fn finite_levels_are_desuspensions_of_the_bar_operad() {
    for n in 0..=2 {
        let f = finite_level(n, v());
        for r in 1..=3 {
            let (top, _) = component(&f, r).unwrap();
            let (base, _) = component(&bar(), r).unwrap();
            assert!(same_complex(&top, &suspend(&base, -(n as i64) * (r as i64 - 1))), "n={n}, r={r}");
        }
    }
    let f0 = finite_level(0, v());
    for x in window_basis(&bar()) {
        assert_eq!(f0.sequence(&x), vec![LinComb::from([(x.clone(), 1)])]);
    }
    assert!(check_axioms(&finite_level(1, v())).unwrap().passed());
}

#[test]
fn projections_are_compatible() {
    for n in 1..=2 {
        let f = finite_level(n, v());
        let r = f.check_projections().unwrap();
        assert!(r.passed(), "{r}");
        for i in 0..=n {
            assert!(check_morphism(&f.projection(i).unwrap()).unwrap().passed(), "n={n}, i={i}");
        }
    }
    assert!(finite_level(1, v()).projection(2).is_err());
}

#[test]
fn pulling_back_in_stages_agrees() {
    let low = ground(&reduce(&interval()).unwrap());
    let direct = low.pulled_to(2, v()).unwrap();
    let staged = low.pulled_to(1, v()).unwrap().pulled_to(2, v()).unwrap();
    assert_eq!(direct.level, 2);
    assert_eq!(direct.coalgebra.entries().collect::<Vec<_>>(), staged.coalgebra.entries().collect::<Vec<_>>());
    assert!(check_coalgebra(&direct.coalgebra).unwrap().passed());
    assert!(direct.pulled_to(1, v()).is_err());
}

#[test]
fn desuspended_objects_have_their_level() {
    let i = reduce(&interval()).unwrap();
    for k in 0..=2 {
        let o = LevelledObject::desuspended(&i, k).unwrap();
        assert_eq!(o.level, k);
        assert_eq!(o.coalgebra.operad.k, -(k as i64));
        assert!(check_coalgebra(&o.coalgebra).unwrap().passed());
    }
}

#[test]
fn certificates_are_accepted() {
    for (name, z) in [
        ("identity", identity_zigzag()),
        ("inclusion", inclusion_zigzag()),
        ("retraction", retraction_zigzag()),
        ("two levels", two_level_zigzag()),
    ] {
        let r = verify_zigzag(&z, v(), None);
        assert!(r.accepted, "{name}: {r:?}");
    }
    assert_eq!(level_of(&two_level_zigzag()), 1);
}

#[test]
fn a_zero_left_arrow_is_rejected_in_degree_zero() {
    let mut z = inclusion_zigzag();
    z.arrows[1].map.clear();
    let r = verify_zigzag(&z, v(), None);
    assert!(!r.accepted);
    let bad = &r.arrows[1];
    assert!(bad.coalgebra_witness.is_none());
    assert_eq!(bad.quasi_iso, Some(false));
    assert_eq!(bad.homology_witness.as_ref().map(|w| w.0), Some(0));
    assert!(r.arrows[0].passed());
}

#[test]
fn a_map_that_breaks_the_structure_is_rejected() {
    let mut z = identity_zigzag();
    let (a, b) = (&z.objects[0], &z.objects[1]);
    z.arrows[0].map = cell_map(a, b, &[("p0", &[(1, "p1")]), ("p1", &[(1, "p0")]), ("q", &[(-1, "q")])]);
    let r = verify_zigzag(&z, v(), None);
    assert!(!r.accepted);
    assert!(r.arrows[0].coalgebra_witness.is_some());
    assert!(align_zigzag(&z, v()).is_err());
}

#[test]
fn malformed_zigzags_are_rejected() {
    let mut z = retraction_zigzag();
    z.arrows[1].qiso_range = None;
    assert!(verify_zigzag(&z, v(), None).arrows[1].error.is_some());
    assert!(verify_zigzag(&z, v(), Some((0, 1))).accepted);
    let mut z = identity_zigzag();
    z.arrows[0].direction = Direction::Left;
    assert!(!verify_zigzag(&z, v(), Some((0, 1))).accepted);
    assert!(!verify_zigzag(&Zigzag { objects: vec![], arrows: vec![] }, v(), None).accepted);
}

#[test]
fn alignment_is_idempotent_and_keeps_acceptance() {
    for z in [two_level_zigzag(), inclusion_zigzag()] {
        let a = align_zigzag(&z, v()).unwrap();
        assert!(a.objects.iter().all(|o| o.level == level_of(&z)));
        let b = align_zigzag(&a, v()).unwrap();
        assert_eq!(zigzag_to_json(&a), zigzag_to_json(&b));
        assert_eq!(verify_zigzag(&z, v(), None).accepted, verify_zigzag(&a, v(), None).accepted);
    }
}

#[test]
fn zigzag_json_round_trip() {
    for z in [two_level_zigzag(), retraction_zigzag()] {
        let s = zigzag_to_json(&z);
        let back = zigzag_from_json(&s).unwrap();
        assert_eq!(zigzag_to_json(&back), s);
        assert!(verify_zigzag(&back, v(), None).accepted);
    }
    assert!(zigzag_from_json("{\"objects\": []}").is_err());
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(12))]

    #[test]
    fn pullbacks_compose(start in 0usize..=1, mid in 0usize..=1, extra in 0usize..=1) {
        let i = reduce(&interval()).unwrap();
        let o = LevelledObject::desuspended(&i, start).unwrap();
        let (j, k) = (start + mid, start + mid + extra);
        let staged = o.pulled_to(j, v()).unwrap().pulled_to(k, v()).unwrap();
        let direct = o.pulled_to(k, v()).unwrap();
        proptest::prop_assert_eq!(staged.level, k);
        proptest::prop_assert!(staged.coalgebra.entries().eq(direct.coalgebra.entries()));
    }
}
