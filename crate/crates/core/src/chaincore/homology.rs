use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::complex::{ChainComplex, ComplexBuilder, TruncationWindow};
use super::map::GradedMap;
use super::snf::smith_form;
use crate::error::{Error, Result};

/// `ℤ^free_rank ⊕ ⨁ ℤ/t` with `t` ascending, each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        AbelianGroup { free_rank: 0, torsion: vec![BigInt::from(n)] }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Checks that `[start, end]` can be computed: the top needs one more
/// known degree unless the complex is complete.
fn check_range(c: &ChainComplex, start: i64, end: i64) -> Result<()> {
    let w = c.window();
    if start > end || start < w.min_degree || (end >= c.known_max()) {
        return Err(Error::RangeOutsideWindow { start, end, min: w.min_degree, max: w.max_degree });
    }
    Ok(())
}

/// Integral homology `H_d` for `d` in `start..=end`.
pub fn homology(c: &ChainComplex, start: i64, end: i64) -> Result<BTreeMap<i64, AbelianGroup>> {
    check_range(c, start, end)?;
    let mut snfs = BTreeMap::new();
    for d in start..=end + 1 {
        snfs.insert(d, smith_form(&c.boundary_matrix(d)));
    }
    let mut out = BTreeMap::new();
    for d in start..=end {
        let rank_out = snfs[&d].rank();
        let rank_in = snfs[&(d + 1)].rank();
        out.insert(d, AbelianGroup { free_rank: c.rank(d) - rank_out - rank_in, torsion: snfs[&(d + 1)].torsion() });
    }
    Ok(out)
}

/// Mapping cone of a degree-0 map: `Cone_d = A_{d-1} ⊕ B_d`,
/// `∂(a, b) = (−∂a, f(a) + ∂b)`.
pub fn mapping_cone(f: &GradedMap) -> Result<ChainComplex> {
    if f.degree != 0 {
        return Err(Error::Precondition("mapping cone needs a degree-0 map".into()));
    }
    let (a, b) = (&f.source, &f.target);
    let min = (a.window().min_degree + 1).min(b.window().min_degree);
    let from_a = match f.known_through() {
        i64::MAX => i64::MAX,
        k => k + 1,
    };
    let mut max = b.known_max().min(from_a);
    let complete = max == i64::MAX;
    if complete {
        max = (a.window().max_degree + 1).max(b.window().max_degree);
    }
    let window = TruncationWindow::new(min, max)?;
    let mut builder = ComplexBuilder::new();
    let mut a_idx: BTreeMap<(i64, usize), usize> = BTreeMap::new();
    let mut b_idx: BTreeMap<(i64, usize), usize> = BTreeMap::new();
    for d in window.degrees() {
        for (i, l) in a.basis(d - 1).iter().enumerate() {
            a_idx.insert((d - 1, i), builder.generator(d, format!("cone:{l}")));
        }
        for (i, l) in b.basis(d).iter().enumerate() {
            b_idx.insert((d, i), builder.generator(d, l.clone()));
        }
    }
    for d in window.min_degree + 1..=window.max_degree {
        for i in 0..a.rank(d - 1) {
            let src = a_idx[&(d - 1, i)];
            for (&r, &v) in a.boundary_matrix(d - 1).column(i) {
                builder.boundary_entry(d, src, a_idx[&(d - 2, r)], -v);
            }
            for (&r, &v) in f.block(d - 1).column(i) {
                builder.boundary_entry(d, src, b_idx[&(d - 1, r)], v);
            }
        }
        for i in 0..b.rank(d) {
            let src = b_idx[&(d, i)];
            for (&r, &v) in b.boundary_matrix(d).column(i) {
                builder.boundary_entry(d, src, b_idx[&(d - 1, r)], v);
            }
        }
    }
    let c = builder.build(&format!("Cone({}→{})", a.name, b.name), window)?;
    Ok(if complete { c.into_complete() } else { c })
}

/// Whether `f` induces isomorphisms `H_d(A) → H_d(B)` for `d` in `start..=end`.
///
/// Certified by acyclicity of the mapping cone in degrees `start..=end+1`;
/// by the long exact sequence this also asks `H_{start-1}(f)` to be injective
/// and `H_{end+1}(f)` surjective, both of which hold for any genuine
/// quasi-isomorphism.
pub fn is_quasi_iso(f: &GradedMap, start: i64, end: i64) -> Result<bool> {
    if !f.is_chain_map() {
        return Err(Error::Precondition("is_quasi_iso expects a chain map".into()));
    }
    let cone = mapping_cone(f)?;
    let h = homology(&cone, start.max(cone.window().min_degree), end + 1)?;
    Ok(h.values().all(|g| g.is_zero()))
}

/// Degree of the first failure, for reporting.
pub fn quasi_iso_witness(f: &GradedMap, start: i64, end: i64) -> Result<Option<(i64, AbelianGroup)>> {
    let cone = mapping_cone(f)?;
    let h = homology(&cone, start.max(cone.window().min_degree), end + 1)?;
    Ok(h.into_iter().find(|(_, g)| !g.is_zero()))
}
