use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use opsusp_core::barres::*;
use opsusp_core::chaincore::{homology, AbelianGroup, ChainComplex, Element, GradedMap};
use opsusp_core::symgrp::Permutation;

fn bar(n: usize, d: i64) -> BarResolution {
    build_bar(n, d, DEFAULT_BASIS_CAP).unwrap()
}

fn element(c: &ChainComplex, d: i64, terms: &[(&str, i64)]) -> Element {
    Element { degree: d, coeffs: terms.iter().map(|(l, v)| (c.index_of(d, l).unwrap(), *v)).collect() }
}

#[test]
fn basis_sizes() {
    let r = bar(3, 3);
    for d in 0..=3 {
        assert_eq!(r.complex.rank(d), 6 * 5usize.pow(d as u32));
        assert_eq!(r.generators(d).len(), 5usize.pow(d as u32));
    }
    assert_eq!(bar_basis_count(2, 4), Some(10));
    assert!(matches!(build_bar(4, 4, 10_000), Err(opsusp_core::Error::BasisCap { .. })));
}

#[test]
fn low_degree_boundaries_for_s2() {
    let r = bar(2, 3);
    let c = &r.complex;
    assert_eq!(c.basis(1), ["12*[21]", "21*[21]"]);
    let x = element(c, 1, &[("12*[21]", 1)]);
    assert_eq!(c.boundary(&x), element(c, 0, &[("21*[]", 1), ("12*[]", -1)]));
    let y = element(c, 2, &[("12*[21|21]", 1)]);
    assert_eq!(c.boundary(&y), element(c, 1, &[("21*[21]", 1), ("12*[21]", 1)]));
}

#[test]
fn augmentation_kills_boundaries() {
    let r = bar(3, 2);
    let m = r.complex.boundary_matrix(1);
    for j in 0..r.complex.rank(1) {
        let total: i64 = m.column(j).iter().map(|(&i, &v)| v * r.augmentation(0, i)).sum();
        assert_eq!(total, 0);
    }
}

#[test]
fn labels_round_trip() {
    let r = bar(3, 2);
    for d in 0..=2 {
        for (i, l) in r.complex.basis(d).iter().enumerate() {
            assert_eq!(&parse_simplex(l).unwrap(), r.simplex(d, i));
        }
    }
}

#[test]
fn differential_is_equivariant() {
    let r = bar(3, 3);
    let c = &r.complex;
    for d in 1..=3 {
        let m = c.boundary_matrix(d);
        for tau in Permutation::all(3) {
            for j in 0..c.rank(d) {
                let moved: BTreeMap<usize, i64> =
                    m.column(j).iter().map(|(&i, &v)| (r.act_index(&tau, d - 1, i), v)).collect();
                assert_eq!(&moved, m.column(r.act_index(&tau, d, j)));
            }
        }
    }
}

#[test]
fn contracting_homotopy() {
    assert!(contracting_homotopy_check(&bar(2, 4)));
    assert!(contracting_homotopy_check(&bar(3, 3)));
    let r = bar(2, 3);
    let mut broken = r.clone();
    let mut diff = BTreeMap::new();
    for d in 1..=3 {
        diff.insert(d, r.complex.boundary_matrix(d));
    }
    let mut m2 = diff[&2].clone();
    m2.add(0, 0, 1);
    diff.insert(2, m2);
    let basis = (0..=3).map(|d| (d, r.complex.basis(d).to_vec())).collect();
    broken.complex = Arc::new(ChainComplex::new("bad", r.complex.window(), basis, diff).unwrap());
    assert!(!contracting_homotopy_check(&broken));
}

#[test]
fn resolutions_are_acyclic() {
    for (n, d) in [(2, 5), (3, 4)] {
        let r = bar(n, d);
        assert!(r.complex.check_d_squared());
        let h = homology(&r.complex, 0, d - 1).unwrap();
        assert_eq!(h[&0], AbelianGroup::free(1));
        assert!((1..d).all(|k| h[&k].is_zero()));
    }
}

#[test]
fn homology_of_s2_and_s3() {
    let r = bar(2, 5);
    let h = group_homology(&r, Coefficients::Trivial, 0, 4).unwrap();
    assert_eq!(h[&0], AbelianGroup::free(1));
    assert_eq!(h[&1], AbelianGroup::cyclic(2));
    assert!(h[&2].is_zero());
    assert_eq!(h[&3], AbelianGroup::cyclic(2));
    assert!(h[&4].is_zero());

    let c = group_cohomology(&r, Coefficients::Trivial, 0, 3).unwrap();
    assert_eq!(c[&0], AbelianGroup::free(1));
    assert!(c[&1].is_zero());
    assert_eq!(c[&2], AbelianGroup::cyclic(2));
    let s = group_cohomology(&r, Coefficients::Sign, 0, 3).unwrap();
    assert!(s[&0].is_zero());
    assert_eq!(s[&1], AbelianGroup::cyclic(2));
    assert!(s[&2].is_zero());

    // H_*(S_3; ℤ) = ℤ, ℤ/2, 0, ℤ/6
    let r = bar(3, 4);
    let h = group_homology(&r, Coefficients::Trivial, 0, 3).unwrap();
    assert_eq!(h[&1], AbelianGroup::cyclic(2));
    assert!(h[&2].is_zero());
    assert_eq!(h[&3].torsion, vec![BigInt::from(6)]);
    assert!(group_cohomology(&r, Coefficients::Trivial, 0, 4).is_err());
}

#[test]
fn lift_of_identity_seed() {
    let r = bar(3, 3);
    let f = equivariant_lift(&r, &r, 0, BTreeMap::from([(r.unit_index(), 1)])).unwrap();
    assert!(f.is_chain_map());
    assert_eq!(f.first_difference(&GradedMap::identity(r.complex.clone())), None);
}

#[test]
fn lift_of_twisted_seed_is_equivariant_chain_map() {
    // F(e) = (e) + (21) − (12)·(e) ... any seed with augmentation 1
    let r = bar(2, 4);
    let tau = Permutation::transposition(2, 1, 2);
    let tidx = r.act_index(&tau, 0, r.unit_index());
    let seed = BTreeMap::from([(r.unit_index(), 2), (tidx, -1)]);
    let f = equivariant_lift(&r, &r, 0, seed).unwrap();
    assert!(f.is_chain_map());
    for d in 0..=4 {
        for j in 0..r.complex.rank(d) {
            let fj = f.block(d).column(j).clone();
            let moved: BTreeMap<usize, i64> = fj.iter().map(|(&i, &v)| (r.act_index(&tau, d, i), v)).collect();
            assert_eq!(&moved, f.block(d).column(r.act_index(&tau, d, j)));
        }
    }
}
