use itertools::iproduct;
use opsusp_core::symgrp::{tmap, CompositionShape, Permutation};
use proptest::prelude::*;

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

#[test]
fn composition_is_function_composition() {
    assert_eq!(p("2314").compose(&p("4321")).unwrap(), p("4132"));
    assert!(p("12").compose(&p("123")).is_err());
}

#[test]
fn group_laws_on_s4() {
    let s4 = Permutation::all(4);
    assert_eq!(s4.len(), 24);
    let e = Permutation::identity(4);
    for (a, b) in iproduct!(&s4, &s4) {
        let ab = a.compose(b).unwrap();
        assert_eq!(ab.parity(), (a.parity() + b.parity()) % 2);
        for c in &s4 {
            assert_eq!(ab.compose(c).unwrap(), a.compose(&b.compose(c).unwrap()).unwrap());
        }
    }
    for a in &s4 {
        assert_eq!(a.compose(&e).unwrap(), *a);
        assert_eq!(e.compose(a).unwrap(), *a);
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
    }
}

#[test]
fn parity_examples() {
    assert_eq!(Permutation::identity(5).parity(), 0);
    for (i, j) in [(1, 2), (1, 5), (2, 4)] {
        assert_eq!(Permutation::transposition(5, i, j).parity(), 1);
    }
    assert_eq!(p("456123").parity(), 1);
}

#[test]
fn block_sums() {
    let t = Permutation::block_sum(&[p("21"), p("1")]);
    assert_eq!(t, p("213"));
    assert!(Permutation::block_sum(&[Permutation::identity(2), Permutation::identity(3)]).is_identity());
    for (a, b) in iproduct!(Permutation::all(2), Permutation::all(3)) {
        for c in Permutation::all(2) {
            let s = Permutation::block_sum(&[a.clone(), b.clone(), c.clone()]);
            assert_eq!(s.parity(), (a.parity() + b.parity() + c.parity()) % 2);
        }
    }
}

#[test]
fn tmap_worked_example() {
    let t = tmap(&CompositionShape::new(vec![2, 1, 3]), &p("312")).unwrap();
    assert_eq!(t, p("456123"));
    assert_eq!(t, Permutation::parse_cycles("(1,4)(2,5)(3,6)", 6).unwrap());
}

#[test]
fn tmap_of_unit_shape_is_identity_map() {
    for n in 1..=4 {
        for s in Permutation::all(n) {
            assert_eq!(tmap(&CompositionShape::new(vec![1; n]), &s).unwrap(), s);
        }
        let alpha = CompositionShape::new((1..=n).collect());
        assert!(tmap(&alpha, &Permutation::identity(n)).unwrap().is_identity());
    }
    assert!(tmap(&CompositionShape::new(vec![1, 2]), &p("123")).is_err());
}

#[test]
fn tmap_constant_shape_is_homomorphism() {
    for n in 1..=3 {
        for k in 1..=3 {
            let alpha = CompositionShape::new(vec![k; n]);
            for (a, b) in iproduct!(Permutation::all(n), Permutation::all(n)) {
                let lhs = tmap(&alpha, &a.compose(&b).unwrap()).unwrap();
                let rhs = tmap(&alpha, &a).unwrap().compose(&tmap(&alpha, &b).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

/// Oracle: list `1..=|α|` sorted by (position of its block in σ's one-line form, value).
fn tmap_oracle(alpha: &[usize], sigma: &Permutation) -> Vec<usize> {
    let mut owner = Vec::new();
    for (j, &a) in alpha.iter().enumerate() {
        owner.extend(std::iter::repeat_n(j + 1, a));
    }
    let inv = sigma.inverse();
    let mut xs: Vec<usize> = (1..=owner.len()).collect();
    xs.sort_by_key(|&x| (inv.apply(owner[x - 1]), x));
    xs
}

proptest! {
    #[test]
    fn tmap_matches_block_oracle(
        (alpha, images) in (1usize..=4).prop_flat_map(|n| (
            prop::collection::vec(0usize..=3, n),
            Just((1..=n).collect::<Vec<_>>()).prop_shuffle(),
        ))
    ) {
        prop_assume!(alpha.iter().sum::<usize>() > 0 && alpha.iter().sum::<usize>() <= 7);
        let sigma = Permutation::new(images).unwrap();
        let t = tmap(&CompositionShape::new(alpha.clone()), &sigma).unwrap();
        let expect = tmap_oracle(&alpha, &sigma);
        prop_assert_eq!(t.images(), expect.as_slice());
    }

    #[test]
    fn cycle_parser_round_trip(images in Just((1..=7usize).collect::<Vec<_>>()).prop_shuffle()) {
        let s = Permutation::new(images).unwrap();
        // cycle notation of s
        let mut seen = [false; 8];
        let mut text = String::new();
        for start in 1..=7 {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = s.apply(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = s.apply(x);
            }
            text.push_str(&format!("({})", cyc.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")));
        }
        prop_assert_eq!(Permutation::parse_cycles(&text, 7).unwrap(), s);
    }
}

#[test]
fn parsing_and_json() {
    assert_eq!(Permutation::parse_cycles("()", 3).unwrap(), Permutation::identity(3));
    assert_eq!(Permutation::parse_cycles("(1 2 3)", 3).unwrap(), p("231"));
    assert!(Permutation::parse_cycles("(1,1)", 3).is_err());
    assert!("122".parse::<Permutation>().is_err());
    let big: Permutation = "2,1,3,4,5,6,7,8,9,10".parse().unwrap();
    assert_eq!(big.to_string(), "2,1,3,4,5,6,7,8,9,10");
    assert_eq!(serde_json::to_string(&p("312")).unwrap(), "[3,1,2]");
    assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
}
