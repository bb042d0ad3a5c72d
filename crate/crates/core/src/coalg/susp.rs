//! Tensor products, chain (de)suspension and the m-coalgebra suspension `SC`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{boundary_cell, Coalgebra, PointedCoalgebra};
use crate::chaincore::ops::{shift_label, TensorIndex};
use crate::chaincore::{integers_in_degree, suspend, ChainComplex, ComplexBuilder, TruncationWindow};
use crate::error::{Error, Result};
use crate::operad::{
    aw_diagonal, coend_pairing, lc_bilinear, lc_insert, BarOperad, Cell, CoEndBasis, CoEndOperad, LinComb, Operad,
    OperadMorphism, ShiftedOperad, Word,
};

/// `A ⊗ B` over `𝔖` through the diagonal: `x ↦ 𝔈(a(x') ⊗ b(x''))` summed over `Δx`.
pub fn tensor_coalgebra(a: &Coalgebra<BarOperad>, b: &Coalgebra<BarOperad>) -> Result<Coalgebra<BarOperad>> {
    let pairing = coend_pairing(a.carrier().clone(), b.carrier().clone(), a.operad.max_rank)?;
    let carrier = pairing.target.complex().clone();
    Coalgebra::from_fn(format!("{}⊗{}", a.name, b.name), a.operad.clone(), carrier, |x| {
        let mut out = LinComb::new();
        for ((x1, x2), c) in aw_diagonal(x) {
            let v =
                lc_bilinear(a.structure(&x1)?, b.structure(&x2)?, |f, g| Ok(pairing.apply(&(f.clone(), g.clone()))))?;
            crate::operad::lc_add(&mut out, &v, c);
        }
        Ok(out)
    })
}

/// `Σ^k D` over `Σ^k O` for `k = ±1`: `x ↦ 𝔈(w_n ⊗ a(x))` with `w_n = (z ↦ z^{⊗n})`
/// in `CoEnd(Σ^k ℤ)`, then `Σ^kℤ ⊗ D ≅ Σ^k D` on labels.
pub fn shift_coalgebra<O: Operad + Clone>(k: &Coalgebra<O>, shift: i64) -> Result<Coalgebra<ShiftedOperad<O>>> {
    if shift.abs() != 1 {
        return Err(Error::Precondition("shift_coalgebra shifts by ±1; iterate for more".into()));
    }
    let z = Arc::new(integers_in_degree(shift, "z"));
    let d = k.carrier().clone();
    let pairing = coend_pairing(z.clone(), d.clone(), k.operad.max_rank())?;
    let zd = pairing.target.complex().clone();
    let sd = Arc::new(suspend(&d, shift));
    let idx = TensorIndex::new(&z, &d, zd.window());
    let mut cell_map: BTreeMap<Cell, Cell> = BTreeMap::new();
    for &c in k.cells() {
        cell_map.insert(idx.get((shift, 0), c).expect("tensor cell"), (c.0 + shift, c.1));
    }
    let zc = (shift, 0);
    let op = ShiftedOperad::new(k.operad.clone(), shift);
    Coalgebra::from_fn(shift_label(&k.name, shift), op, sd, |x| {
        let n = k.operad.rank_of(x);
        let w = CoEndBasis { src: zc, word: vec![zc; n] };
        let mut out = LinComb::new();
        for (g, &c) in k.structure(x)? {
            for (e, v) in pairing.apply(&(w.clone(), g.clone())) {
                let e2 = CoEndBasis { src: cell_map[&e.src], word: e.word.iter().map(|y| cell_map[y]).collect() };
                lc_insert(&mut out, e2, c * v);
            }
        }
        Ok(out)
    })
}

/// Re-tags `Σ^a Σ^b O` as `Σ^{a+b} O`; the two operads agree on the nose.
pub fn flatten_shift<O: Operad + Clone>(k: Coalgebra<ShiftedOperad<ShiftedOperad<O>>>) -> Coalgebra<ShiftedOperad<O>> {
    let shift = k.operad.k + k.operad.base.k;
    Coalgebra {
        name: k.name,
        operad: ShiftedOperad::new(k.operad.base.base, shift),
        target: k.target,
        structure: k.structure,
    }
}

/// `SC = (I ⊗ C) / ([0]⊗C⁺ + [1]⊗C⁺ + [0,1]⊗p)`, basepoint `b = [0]⊗p`.
///
/// With `C⁺` read as `ker ε`, the quotient sends `p_j ⊗ c ↦ ε(c) b`,
/// `q ⊗ p ↦ 0` and `q ⊗ c ↦ S^1:c`.
pub fn suspend_m(k: &PointedCoalgebra, interval: &PointedCoalgebra) -> Result<PointedCoalgebra> {
    let ic = interval.base.carrier().clone();
    let c = k.base.carrier().clone();
    let prod = tensor_coalgebra(&interval.base, &k.base)?;
    let idx = TensorIndex::new(&ic, &c, prod.carrier().window());
    let p = k.basepoint;
    let (p0, p1, q) = ((0, 0), (0, 1), (1, 0));

    let mut b = ComplexBuilder::new();
    let mut sc_cell: BTreeMap<Cell, Cell> = BTreeMap::new();
    let (mut lo, mut hi) = (p.0, p.0);
    let bp = (p.0, b.generator(p.0, format!("[0]⊗{}", c.basis(p.0)[p.1])));
    for &x in k.base.cells() {
        if x != p {
            let d = x.0 + 1;
            sc_cell.insert(x, (d, b.generator(d, shift_label(&c.basis(x.0)[x.1], 1))));
            lo = lo.min(d);
            hi = hi.max(d);
        }
    }
    for (&x, &(d, j)) in &sc_cell {
        for (y, v) in boundary_cell(&c, x) {
            if let Some(&(_, r)) = sc_cell.get(&y) {
                b.boundary_entry(d, j, r, -v);
            }
        }
    }
    let sc = Arc::new(b.build(&format!("S{}", c.name), TruncationWindow::new(lo, hi)?)?.into_complete());

    let pairs: BTreeMap<Cell, (Cell, Cell)> = ic
        .window()
        .degrees()
        .flat_map(|d| (0..ic.rank(d)).map(move |i| (d, i)))
        .flat_map(|a| k.base.cells().iter().map(move |&x| (a, x)))
        .map(|(a, x)| (idx.get(a, x).expect("tensor cell"), (a, x)))
        .collect();
    let eps = |x: Cell| k.epsilon(x);
    let proj = |t: Cell| -> LinComb<Cell> {
        let (a, x) = pairs[&t];
        if a == q {
            sc_cell.get(&x).map(|&y| LinComb::from([(y, 1)])).unwrap_or_default()
        } else {
            LinComb::from([(bp, eps(x))]).into_iter().filter(|(_, v)| *v != 0).collect()
        }
    };
    let inverse: BTreeMap<Cell, Cell> = sc_cell.iter().map(|(&x, &y)| (y, x)).collect();
    let section = |y: Cell| -> Cell {
        if y == bp {
            idx.get(p0, p).expect("tensor cell")
        } else {
            idx.get(q, inverse[&y]).expect("tensor cell")
        }
    };
    let base_cell = idx.get(p0, p).expect("tensor cell");
    let mut kernel = vec![LinComb::from([(idx.get(q, p).expect("tensor cell"), 1)])];
    for &x in k.base.cells() {
        for a in [p0, p1] {
            let mut v = LinComb::from([(idx.get(a, x).expect("tensor cell"), 1)]);
            lc_insert(&mut v, base_cell, -eps(x));
            if !v.is_empty() {
                kernel.push(v);
            }
        }
    }
    let base = prod.quotient(format!("S{}", k.base.name), sc, &proj, &section, &kernel)?;
    Ok(PointedCoalgebra { base, basepoint: bp, augmentation: BTreeMap::from([(bp, 1)]) })
}

/// First `(operad element, cell)` where `f` fails to intertwine the structures,
/// checking `f^{⊗n} ∘ a_1(x) = a_2(x) ∘ f` on every window element.
pub fn check_coalgebra_map<O: Operad>(
    a: &Coalgebra<O>,
    b: &Coalgebra<O>,
    f: &dyn Fn(Cell) -> LinComb<Cell>,
) -> Result<Option<(String, String)>> {
    let tensor_f = |w: &Word| -> LinComb<Word> {
        let mut acc: LinComb<Word> = LinComb::from([(Vec::new(), 1)]);
        for &c in w {
            let fc = f(c);
            let mut next = LinComb::new();
            for (pre, &u) in &acc {
                for (&y, &v) in &fc {
                    let mut t = pre.clone();
                    t.push(y);
                    lc_insert(&mut next, t, u * v);
                }
            }
            acc = next;
        }
        acc
    };
    for &c in a.cells() {
        let lhs = crate::operad::lc_linear(&f(c), |&y| boundary_cell(b.carrier(), y));
        let rhs = crate::operad::lc_linear(&boundary_cell(a.carrier(), c), |&y| f(y));
        if lhs != rhs {
            return Ok(Some(("∂".into(), a.word_label(&[c]))));
        }
    }
    for (x, fa) in a.entries() {
        let fb = b.structure(x)?;
        for &c in a.cells() {
            let lhs = crate::operad::lc_linear(&CoEndOperad::evaluate(fa, &c), |w| tensor_f(w));
            let rhs = crate::operad::lc_linear(&f(c), |y| CoEndOperad::evaluate(fb, y));
            if lhs != rhs {
                return Ok(Some((a.operad.label(x), a.word_label(&[c]))));
            }
        }
    }
    Ok(None)
}

/// Complexes equal as labelled data: windows, bases and differential matrices.
pub fn same_complex(a: &ChainComplex, b: &ChainComplex) -> bool {
    a.window() == b.window()
        && a.is_complete() == b.is_complete()
        && a.window().degrees().all(|d| a.basis(d) == b.basis(d) && a.boundary_matrix(d) == b.boundary_matrix(d))
}
