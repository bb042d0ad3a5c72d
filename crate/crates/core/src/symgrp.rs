//! Symmetric groups in one-line notation.
//!
//! Products are composites of functions, `(p·q)(i) = p(q(i))`, matching a
//! left action.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of `S_n` stored by its images `σ(1), …, σ(n)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    /// From 1-based images.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty image list".into()));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 1..={n}")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// The transposition exchanging `i` and `j` (1-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, j - 1);
        Permutation { images }
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        (1..=n).permutations(n).map(|images| Permutation { images }).collect()
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(i)`, 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// `self · q`, i.e. `self` after `q`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        if self.n() != q.n() {
            return Err(Error::SizeMismatch(format!("composing S_{} with S_{}", self.n(), q.n())));
        }
        Ok(Permutation { images: q.images.iter().map(|&i| self.images[i - 1]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Number of inversions mod 2.
    pub fn parity(&self) -> u8 {
        let inv = self.images.iter().tuple_combinations().filter(|(a, b)| a > b).count();
        (inv % 2) as u8
    }

    pub fn sign(&self) -> i64 {
        if self.parity() == 0 {
            1
        } else {
            -1
        }
    }

    /// `τ_1 ⊕ ⋯ ⊕ τ_k`, acting as `τ_s` on the s-th contiguous block.
    pub fn block_sum(taus: &[Permutation]) -> Permutation {
        let mut images = Vec::new();
        let mut offset = 0;
        for t in taus {
            images.extend(t.images.iter().map(|&x| x + offset));
            offset += t.n();
        }
        Permutation { images }
    }

    /// Parses cycle notation such as `(1,4)(2,5)(3,6)` or `(1 2 3)` into `S_n`.
    /// `()` denotes the identity.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Permutation> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut seen = vec![false; n];
        let s = s.trim();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = open.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let body = &open[..close];
            rest = open[close + 1..].trim_start();
            let cycle: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<_>>()?;
            for &x in &cycle {
                if x == 0 || x > n || seen[x - 1] {
                    return Err(Error::InvalidPermutation(format!("{s:?} in S_{n}")));
                }
                seen[x - 1] = true;
            }
            for (k, &x) in cycle.iter().enumerate() {
                images[x - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::new(images)
    }
}

/// One-line notation: digits run together when `n ≤ 9`, comma-separated otherwise.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            write!(f, "{}", self.images.iter().join(""))
        } else {
            write!(f, "{}", self.images.iter().join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let images: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("{s:?}"))))
                .collect::<Result<_>>()?
        };
        Permutation::new(images)
    }
}

/// Arity list `α = (α_1, …, α_n)` of nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CompositionShape {
    pub alpha: Vec<usize>,
}

impl CompositionShape {
    pub fn new(alpha: Vec<usize>) -> Self {
        CompositionShape { alpha }
    }

    /// `(1, …, 1, m, 1, …, 1)` with `m` in slot `i` of `n`; `tmap` of this is `T_i`.
    pub fn slot(n: usize, i: usize, m: usize) -> Self {
        let mut alpha = vec![1; n];
        alpha[i - 1] = m;
        CompositionShape { alpha }
    }

    pub fn total(&self) -> usize {
        self.alpha.iter().sum()
    }

    /// `A_i = Σ_{j<i} α_j`, for `i = 1..=n`.
    pub fn offsets(&self) -> Vec<usize> {
        self.alpha
            .iter()
            .scan(0, |acc, &a| {
                let start = *acc;
                *acc += a;
                Some(start)
            })
            .collect()
    }
}

/// `T_α(σ)`: the blocks `L_i = (A_i+1, …, A_i+α_i)` rearranged as
/// `L_{σ(1)}, …, L_{σ(n)}`, read as one-line notation.
pub fn tmap(alpha: &CompositionShape, sigma: &Permutation) -> Result<Permutation> {
    if alpha.alpha.len() != sigma.n() {
        return Err(Error::SizeMismatch(format!(
            "shape of length {} with a permutation in S_{}",
            alpha.alpha.len(),
            sigma.n()
        )));
    }
    let offsets = alpha.offsets();
    let mut images = Vec::with_capacity(alpha.total());
    for &j in sigma.images() {
        images.extend(offsets[j - 1] + 1..=offsets[j - 1] + alpha.alpha[j - 1]);
    }
    if images.is_empty() {
        return Err(Error::Precondition("T-map of an empty shape".into()));
    }
    Ok(Permutation { images })
}
