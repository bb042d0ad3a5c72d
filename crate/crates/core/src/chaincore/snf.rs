//! Smith normal form over the integers.
//!
//! Only the invariant factors are computed. A sparse pass first eliminates
//! every unit pivot it can find (boundary matrices of bar-type complexes
//! are dominated by ±1 entries); what is left is reduced densely with
//! arbitrary-precision arithmetic.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::SparseMatrix;

/// Invariant factors `d_1 | d_2 | ... | d_r`, all positive; `r` is the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors different from one, ascending.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_form(m: &SparseMatrix) -> SmithForm {
    let mut rows: Vec<BTreeMap<usize, i128>> = vec![BTreeMap::new(); m.rows()];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (r, c, v) in m.triplets() {
        rows[r].insert(c, v as i128);
        col_rows[c].insert(r);
    }
    let mut units = 0usize;
    let mut alive_rows: BTreeSet<usize> = (0..m.rows()).filter(|&r| !rows[r].is_empty()).collect();

    loop {
        // Markowitz-style choice among unit entries.
        let mut best: Option<(usize, usize, usize)> = None;
        for &r in &alive_rows {
            let rl = rows[r].len();
            for (&c, &v) in &rows[r] {
                if v == 1 || v == -1 {
                    let cost = (rl - 1) * (col_rows[c].len() - 1);
                    if best.is_none_or(|(_, _, b)| cost < b) {
                        best = Some((r, c, cost));
                    }
                }
            }
            if matches!(best, Some((_, _, 0))) {
                break;
            }
        }
        let Some((pr, pc, _)) = best else { break };
        let prow = rows[pr].clone();
        let pv = prow[&pc];
        let others: Vec<usize> = col_rows[pc].iter().copied().filter(|&r| r != pr).collect();
        for r in others {
            let factor = rows[r][&pc] * pv; // pv = ±1 so a/pv = a*pv
            for (&c, &v) in &prow {
                let e = rows[r].entry(c).or_insert(0);
                *e = e
                    .checked_sub(factor.checked_mul(v).expect("overflow in elimination"))
                    .expect("overflow in elimination");
                if *e == 0 {
                    rows[r].remove(&c);
                    col_rows[c].remove(&r);
                } else {
                    col_rows[c].insert(r);
                }
            }
            if rows[r].is_empty() {
                alive_rows.remove(&r);
            }
        }
        for &c in prow.keys() {
            col_rows[c].remove(&pr);
        }
        rows[pr].clear();
        alive_rows.remove(&pr);
        units += 1;
    }

    // Dense remainder.
    let live_cols: Vec<usize> = (0..m.cols()).filter(|&c| !col_rows[c].is_empty()).collect();
    let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut dense: Vec<Vec<BigInt>> = alive_rows
        .iter()
        .map(|&r| {
            let mut row = vec![BigInt::zero(); live_cols.len()];
            for (&c, &v) in &rows[r] {
                row[col_pos[&c]] = BigInt::from(v);
            }
            row
        })
        .collect();
    let mut factors: Vec<BigInt> = vec![BigInt::one(); units];
    factors.extend(dense_smith(&mut dense));
    factors.sort();
    SmithForm { factors }
}

/// In-place dense reduction; returns the nonzero diagonal, normalized to a
/// divisibility chain.
fn dense_smith(a: &mut [Vec<BigInt>]) -> Vec<BigInt> {
    let nr = a.len();
    if nr == 0 {
        return Vec::new();
    }
    let nc = a[0].len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // smallest nonzero entry of the trailing block
        let mut piv: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !a[i][j].is_zero() && piv.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                    piv = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                for j in t..nc {
                    let s = &q * &a[t][j];
                    a[i][j] -= s;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                for i in t..nr {
                    let s = &q * &a[i][t];
                    a[i][j] -= s;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the trailing block
                let bad = (t + 1..nr).find_map(|i| (t + 1..nc).find(|&j| !(&a[i][j] % &a[t][t]).is_zero()).map(|_| i));
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..nc {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t back to the pivot
            let mut best = (t, t);
            for i in t..nr {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..nc {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: usize, cols: usize, t: &[(usize, usize, i64)]) -> Vec<i64> {
        let f = smith_form(&SparseMatrix::from_triplets(rows, cols, t));
        f.factors.iter().map(|d| d.try_into().unwrap()).collect()
    }

    #[test]
    fn scalar_two() {
        assert_eq!(factors(1, 1, &[(0, 0, 2)]), vec![2]);
    }

    #[test]
    fn classic_example() {
        // diag(2,4,6) ~ diag(2,2,12)
        assert_eq!(factors(3, 3, &[(0, 0, 2), (1, 1, 4), (2, 2, 6)]), vec![2, 2, 12]);
    }

    #[test]
    fn non_diagonal() {
        // [[2,4],[6,8]] has det -8, gcd of entries 2 -> (2,4)
        assert_eq!(factors(2, 2, &[(0, 0, 2), (0, 1, 4), (1, 0, 6), (1, 1, 8)]), vec![2, 4]);
    }

    #[test]
    fn zero_matrix() {
        assert!(factors(3, 2, &[]).is_empty());
    }

    #[test]
    fn mixed_units() {
        // unit block plus a 3 that survives the sparse stage
        assert_eq!(factors(3, 3, &[(0, 0, 1), (0, 1, 1), (1, 1, 3), (2, 2, -1)]), vec![1, 1, 3]);
    }
}
