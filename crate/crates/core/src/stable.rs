//! Finite levels of `𝔖_{−∞}`, levelled coalgebras and zigzag certificates.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::barres::Simplex;
use crate::chaincore::homology::quasi_iso_witness;
use crate::chaincore::{AbelianGroup, GradedMap};
use crate::coalg::json::{dump_shifted, load_shifted, CoalgebraJson};
use crate::coalg::{
    check_coalgebra_map, flatten_shift, make_interval, pullback, reduce, shift_coalgebra, suspend_m, trivial_coalgebra,
    window_basis, Cell, Coalgebra, IntervalLift,
};
use crate::error::{Error, Result};
use crate::operad::{lc_add, BarOperad, DegreeRange, LinComb, Operad, OperadMorphism, ShiftedOperad};
use crate::suspops::{kappa, IdentityReport, VMorphism};
use crate::symgrp::Permutation;

/// `Σ^{−from}𝔖 → Σ^{−to}𝔖` for `from ≥ to`, the conjugate `Σ^{−to}𝔘^{from−to}`.
#[derive(Clone)]
pub struct ShiftedU {
    pub source: ShiftedOperad<BarOperad>,
    pub target: ShiftedOperad<BarOperad>,
    v: VMorphism,
}

impl ShiftedU {
    pub fn new(v: &VMorphism, from: usize, to: usize) -> Result<Self> {
        if to > from {
            return Err(Error::Precondition(format!("𝔘 lowers the level: {from} → {to}")));
        }
        let bar = v.source.clone();
        Ok(ShiftedU {
            source: ShiftedOperad::new(bar.clone(), -(from as i64)),
            target: ShiftedOperad::new(bar, -(to as i64)),
            v: v.clone(),
        })
    }

    pub fn steps(&self) -> usize {
        (self.target.k - self.source.k) as usize
    }
}

fn u_step(v: &VMorphism, x: &LinComb<Simplex>) -> LinComb<Simplex> {
    let mut out = LinComb::new();
    for (s, &c) in x {
        let image: LinComb<Simplex> = v.apply(s).into_iter().map(|((_, y), e)| (y, e)).collect();
        lc_add(&mut out, &image, c * kappa(s[0].n()));
    }
    out
}

impl OperadMorphism for ShiftedU {
    type Source = ShiftedOperad<BarOperad>;
    type Target = ShiftedOperad<BarOperad>;

    fn name(&self) -> String {
        format!("𝔘^{}: {} → {}", self.steps(), self.source.name(), self.target.name())
    }

    fn source(&self) -> &Self::Source {
        &self.source
    }

    fn target(&self) -> &Self::Target {
        &self.target
    }

    fn apply(&self, x: &Simplex) -> LinComb<Simplex> {
        let mut cur = LinComb::from([(x.clone(), 1)]);
        for _ in 0..self.steps() {
            cur = u_step(&self.v, &cur);
        }
        cur
    }
}

/// `Fⁿ{Σ^{−i}𝔖}`: sequences `(α_0, …, α_n)` with `α_i = 𝔘(α_{i+1})`, stored by
/// the top coordinate, so the operad is `Σ^{−n}𝔖` and `𝔭_i = 𝔘^{n−i}`.
#[derive(Clone)]
pub struct FiniteLevelOperad {
    pub n: usize,
    pub top: ShiftedOperad<BarOperad>,
    v: VMorphism,
}

pub fn finite_level(n: usize, v: &VMorphism) -> FiniteLevelOperad {
    FiniteLevelOperad { n, top: ShiftedOperad::new(v.source.clone(), -(n as i64)), v: v.clone() }
}

impl FiniteLevelOperad {
    pub fn projection(&self, i: usize) -> Result<ShiftedU> {
        ShiftedU::new(&self.v, self.n, i)
    }

    /// `(α_0, …, α_n)` for `α_n = x`.
    pub fn sequence(&self, x: &Simplex) -> Vec<LinComb<Simplex>> {
        let mut seq = vec![LinComb::from([(x.clone(), 1)])];
        for _ in 0..self.n {
            let next = u_step(&self.v, seq.last().expect("nonempty"));
            seq.push(next);
        }
        seq.reverse();
        seq
    }

    /// `α_i = 𝔘(α_{i+1})` and `𝔭_0 = 𝔘^k ∘ 𝔭_k` on every window element.
    pub fn check_projections(&self) -> Result<IdentityReport> {
        let mut rep = IdentityReport::new(format!("projections of F^{}", self.n));
        for x in window_basis(&self.top) {
            let seq = self.sequence(&x);
            for i in 0..=self.n {
                let p = self.projection(i)?.apply(&x);
                rep.record("𝔭_i = 𝔘^{n−i}", p == seq[i], || format!("i={i}, x={}", self.top.label(&x)));
                let mut down = p;
                for _ in 0..i {
                    down = u_step(&self.v, &down);
                }
                rep.record("𝔭_0 = 𝔘^k∘𝔭_k", down == seq[0], || format!("k={i}, x={}", self.top.label(&x)));
            }
        }
        Ok(rep)
    }
}

impl Operad for FiniteLevelOperad {
    type Basis = Simplex;

    fn name(&self) -> String {
        format!("F^{}", self.n)
    }

    fn max_rank(&self) -> usize {
        self.top.max_rank()
    }

    fn degrees(&self, rank: usize) -> DegreeRange {
        self.top.degrees(rank)
    }

    fn basis(&self, rank: usize, degree: i64) -> Vec<Simplex> {
        self.top.basis(rank, degree)
    }

    fn rank_of(&self, x: &Simplex) -> usize {
        self.top.rank_of(x)
    }

    fn degree_of(&self, x: &Simplex) -> i64 {
        self.top.degree_of(x)
    }

    fn label(&self, x: &Simplex) -> String {
        self.top.label(x)
    }

    fn boundary(&self, x: &Simplex) -> LinComb<Simplex> {
        self.top.boundary(x)
    }

    fn act(&self, sigma: &Permutation, x: &Simplex) -> LinComb<Simplex> {
        self.top.act(sigma, x)
    }

    fn compose(&self, a: &Simplex, i: usize, b: &Simplex) -> Result<LinComb<Simplex>> {
        self.top.compose(a, i, b)
    }

    fn unit(&self) -> LinComb<Simplex> {
        self.top.unit()
    }
}

/// A coalgebra over `Σ^{−k}𝔖`; `k` is the level.
#[derive(Clone)]
pub struct LevelledObject {
    pub level: usize,
    pub coalgebra: Coalgebra<ShiftedOperad<BarOperad>>,
}

impl LevelledObject {
    pub fn new(coalgebra: Coalgebra<ShiftedOperad<BarOperad>>) -> Result<Self> {
        if coalgebra.operad.k > 0 {
            return Err(Error::Precondition(format!("{} is not a desuspension of 𝔖", coalgebra.operad.name())));
        }
        Ok(LevelledObject { level: (-coalgebra.operad.k) as usize, coalgebra })
    }

    /// An m-coalgebra at level 0.
    pub fn ground(c: &Coalgebra<BarOperad>) -> Result<Self> {
        let op = ShiftedOperad::new(c.operad.clone(), 0);
        Self::new(c.clone().retag(op)?)
    }

    /// `Σ^{−k}C` over `Σ^{−k}𝔖`.
    pub fn desuspended(c: &Coalgebra<BarOperad>, k: usize) -> Result<Self> {
        let mut cur = Self::ground(c)?.coalgebra;
        for _ in 0..k {
            cur = flatten_shift(shift_coalgebra(&cur, -1)?);
        }
        Self::new(cur)
    }

    /// `(𝔘^{k−level})^*` of this object, `k ≥ level`; the carrier is untouched.
    pub fn pulled_to(&self, k: usize, v: &VMorphism) -> Result<Self> {
        if k == self.level {
            return Ok(self.clone());
        }
        let u = ShiftedU::new(v, k, self.level)?;
        Self::new(pullback(&u, &self.coalgebra)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

/// A cell map `objects[from] → objects[to]`; right arrows go `i → i+1`,
/// left arrows `i+1 → i` and carry the range of their quasi-iso claim.
#[derive(Clone, Debug)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub direction: Direction,
    pub map: BTreeMap<Cell, LinComb<Cell>>,
    pub qiso_range: Option<(i64, i64)>,
}

impl Arrow {
    pub fn image(&self, c: Cell) -> LinComb<Cell> {
        self.map.get(&c).cloned().unwrap_or_default()
    }
}

#[derive(Clone)]
pub struct Zigzag {
    pub objects: Vec<LevelledObject>,
    pub arrows: Vec<Arrow>,
}

pub fn level_of(z: &Zigzag) -> usize {
    z.objects.iter().map(|o| o.level).max().unwrap_or(0)
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrowCheck {
    pub index: usize,
    pub direction: Direction,
    /// `(operad element, cell)` where the structure square fails
    pub coalgebra_witness: Option<(String, String)>,
    pub quasi_iso: Option<bool>,
    pub homology_witness: Option<(i64, String)>,
    pub error: Option<String>,
}

impl ArrowCheck {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.coalgebra_witness.is_none() && self.quasi_iso != Some(false)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ZigzagReport {
    pub level: usize,
    pub arrows: Vec<ArrowCheck>,
    pub accepted: bool,
}

fn arrow_shape(z: &Zigzag, a: &Arrow) -> Result<()> {
    let n = z.objects.len();
    if a.from >= n || a.to >= n {
        return Err(Error::Precondition(format!("arrow {} → {} leaves the zigzag", a.from, a.to)));
    }
    let ok = match a.direction {
        Direction::Right => a.to == a.from + 1,
        Direction::Left => a.from == a.to + 1,
    };
    if !ok {
        return Err(Error::Precondition(format!("{:?} arrow {} → {}", a.direction, a.from, a.to)));
    }
    Ok(())
}

fn graded_map(
    a: &Arrow,
    src: &Coalgebra<ShiftedOperad<BarOperad>>,
    tgt: &Coalgebra<ShiftedOperad<BarOperad>>,
) -> GradedMap {
    GradedMap::from_fn(src.carrier().clone(), tgt.carrier().clone(), 0, |d, j| {
        a.image((d, j)).into_iter().filter(|((e, _), _)| *e == d).map(|((_, i), v)| (i, v)).collect()
    })
}

fn check_arrow(z: &Zigzag, index: usize, v: &VMorphism, range: Option<(i64, i64)>) -> ArrowCheck {
    let a = &z.arrows[index];
    let mut out = ArrowCheck {
        index,
        direction: a.direction,
        coalgebra_witness: None,
        quasi_iso: None,
        homology_witness: None,
        error: None,
    };
    let run = || -> Result<(Option<(String, String)>, Option<(bool, Option<(i64, AbelianGroup)>)>)> {
        arrow_shape(z, a)?;
        let (s, t) = (&z.objects[a.from], &z.objects[a.to]);
        let k = s.level.max(t.level);
        let (s, t) = (s.pulled_to(k, v)?, t.pulled_to(k, v)?);
        let f = |c: Cell| a.image(c);
        let witness = check_coalgebra_map(&s.coalgebra, &t.coalgebra, &f)?;
        let qiso = match (a.direction, range.or(a.qiso_range)) {
            (Direction::Left, Some((lo, hi))) if witness.is_none() => {
                let w = quasi_iso_witness(&graded_map(a, &s.coalgebra, &t.coalgebra), lo, hi)?;
                Some((w.is_none(), w))
            }
            (Direction::Left, None) => return Err(Error::Precondition("left arrow without a homology range".into())),
            _ => None,
        };
        Ok((witness, qiso))
    };
    match run() {
        Ok((w, q)) => {
            out.coalgebra_witness = w;
            if let Some((ok, hw)) = q {
                out.quasi_iso = Some(ok);
                out.homology_witness = hw.map(|(d, g)| (d, g.to_string()));
            }
        }
        Err(e) => out.error = Some(e.to_string()),
    }
    out
}

/// Every arrow is a coalgebra map over the common level of its ends and every
/// left arrow is a quasi-iso on `range` (or its own claim when `range` is `None`).
pub fn verify_zigzag(z: &Zigzag, v: &VMorphism, range: Option<(i64, i64)>) -> ZigzagReport {
    let arrows: Vec<ArrowCheck> = (0..z.arrows.len()).map(|i| check_arrow(z, i, v, range)).collect();
    let accepted = !z.objects.is_empty() && arrows.iter().all(ArrowCheck::passed);
    ZigzagReport { level: level_of(z), arrows, accepted }
}

/// All objects pulled to `level_of(z)`; arrows are reinterpreted unchanged.
pub fn align_zigzag(z: &Zigzag, v: &VMorphism) -> Result<Zigzag> {
    for i in 0..z.arrows.len() {
        let c = check_arrow(z, i, v, Some((0, 0)));
        if let Some(e) = c.error.filter(|e| !e.contains("range")) {
            return Err(Error::Precondition(format!("arrow {i}: {e}")));
        }
        if let Some((x, cell)) = c.coalgebra_witness {
            return Err(Error::Precondition(format!("arrow {i} is not a coalgebra map at ({x}, {cell})")));
        }
    }
    let k = level_of(z);
    let objects = z.objects.iter().map(|o| o.pulled_to(k, v)).collect::<Result<Vec<_>>>()?;
    Ok(Zigzag { objects, arrows: z.arrows.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelledJson {
    pub level: usize,
    pub coalgebra: CoalgebraJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub from: usize,
    pub to: usize,
    pub direction: Direction,
    /// `[source cell, [[coefficient, target cell], …]]`, nonzero images only
    pub map: Vec<(String, Vec<(i64, String)>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qiso_range: Option<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZigzagJson {
    pub objects: Vec<LevelledJson>,
    pub arrows: Vec<ArrowJson>,
}

pub fn dump_zigzag(z: &Zigzag) -> ZigzagJson {
    let label = |o: usize, c: Cell| z.objects[o].coalgebra.carrier().basis(c.0)[c.1].clone();
    ZigzagJson {
        objects: z
            .objects
            .iter()
            .map(|o| LevelledJson { level: o.level, coalgebra: dump_shifted(&o.coalgebra) })
            .collect(),
        arrows: z
            .arrows
            .iter()
            .map(|a| ArrowJson {
                from: a.from,
                to: a.to,
                direction: a.direction,
                map: a
                    .map
                    .iter()
                    .filter(|(_, v)| !v.is_empty())
                    .map(|(&c, v)| (label(a.from, c), v.iter().map(|(&y, &k)| (k, label(a.to, y))).collect()))
                    .collect(),
                qiso_range: a.qiso_range,
            })
            .collect(),
    }
}

pub fn load_zigzag(j: &ZigzagJson) -> Result<Zigzag> {
    let mut objects = Vec::new();
    for o in &j.objects {
        let obj = LevelledObject::new(load_shifted(&o.coalgebra)?)?;
        if obj.level != o.level {
            return Err(Error::Parse(format!("object at level {} is over {}", o.level, obj.coalgebra.operad.name())));
        }
        objects.push(obj);
    }
    let find = |o: usize, l: &str| -> Result<Cell> {
        objects.get(o).ok_or_else(|| Error::Parse(format!("no object {o}")))?.coalgebra.cell(l)
    };
    let mut arrows = Vec::new();
    for a in &j.arrows {
        let mut map = BTreeMap::new();
        for (src, image) in &a.map {
            let v = image.iter().map(|(k, l)| Ok((find(a.to, l)?, *k))).collect::<Result<LinComb<Cell>>>()?;
            map.insert(find(a.from, src)?, v);
        }
        arrows.push(Arrow { from: a.from, to: a.to, direction: a.direction, map, qiso_range: a.qiso_range });
    }
    Ok(Zigzag { objects, arrows })
}

pub fn zigzag_to_json(z: &Zigzag) -> String {
    serde_json::to_string_pretty(&dump_zigzag(z)).expect("serializable")
}

pub fn zigzag_from_json(s: &str) -> Result<Zigzag> {
    let j: ZigzagJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    load_zigzag(&j)
}

/// Identity-on-cells arrow between objects with the same carrier.
pub fn identity_arrow(
    z_from: usize,
    z_to: usize,
    direction: Direction,
    cells: &[Cell],
    range: Option<(i64, i64)>,
) -> Arrow {
    Arrow {
        from: z_from,
        to: z_to,
        direction,
        map: cells.iter().map(|&c| (c, LinComb::from([(c, 1)]))).collect(),
        qiso_range: range,
    }
}

/// Built-in certificates over the interval `I` and the point `ℤ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Certificate {
    /// `I → I`, the identity
    Identity,
    /// `ℤ → I ← ℤ`, inclusions at `p0`
    Cone,
    /// `I → ℤ ← I`, the augmentation
    Retraction,
    /// `I⁺ → Σ⁻¹(SI)⁺` across levels 0 and 1
    Levels,
}

impl std::str::FromStr for Certificate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(Certificate::Identity),
            "cone" => Ok(Certificate::Cone),
            "retraction" => Ok(Certificate::Retraction),
            "levels" => Ok(Certificate::Levels),
            _ => Err(Error::Parse(format!("unknown certificate {s:?}"))),
        }
    }
}

fn label_arrow(objects: &[LevelledObject], from: usize, to: usize, pairs: &[(&str, &str)]) -> Result<Arrow> {
    let mut map = BTreeMap::new();
    for (a, b) in pairs {
        map.insert(objects[from].coalgebra.cell(a)?, LinComb::from([(objects[to].coalgebra.cell(b)?, 1)]));
    }
    let direction = if to > from { Direction::Right } else { Direction::Left };
    Ok(Arrow { from, to, direction, map, qiso_range: (direction == Direction::Left).then_some((0, 1)) })
}

pub fn certificate(kind: Certificate, bar: &BarOperad) -> Result<Zigzag> {
    let i = make_interval(bar.clone(), IntervalLift::ToP0)?;
    let pt = trivial_coalgebra(bar.clone())?;
    let io = LevelledObject::ground(&i.base)?;
    let po = LevelledObject::ground(&pt.base)?;
    let p = pt.base.carrier().basis(0)[0].clone();
    Ok(match kind {
        Certificate::Identity => Zigzag {
            arrows: vec![identity_arrow(0, 1, Direction::Right, io.coalgebra.cells(), None)],
            objects: vec![io.clone(), io],
        },
        Certificate::Cone => {
            let objects = vec![po.clone(), io, po];
            let arrows = vec![label_arrow(&objects, 0, 1, &[(&p, "p0")])?, label_arrow(&objects, 2, 1, &[(&p, "p0")])?];
            Zigzag { objects, arrows }
        }
        Certificate::Retraction => {
            let objects = vec![io.clone(), po, io];
            let eps = [("p0", p.as_str()), ("p1", p.as_str())];
            let arrows = vec![label_arrow(&objects, 0, 1, &eps)?, label_arrow(&objects, 2, 1, &eps)?];
            Zigzag { objects, arrows }
        }
        Certificate::Levels => {
            let low = LevelledObject::ground(&reduce(&i)?)?;
            let high = LevelledObject::desuspended(&reduce(&suspend_m(&i, &i)?)?, 1)?;
            Zigzag {
                arrows: vec![identity_arrow(0, 1, Direction::Right, low.coalgebra.cells(), None)],
                objects: vec![low, high],
            }
        }
    })
}

/// The window of `𝔖` the zigzag's objects are built over.
pub fn zigzag_window(z: &Zigzag) -> Result<BarOperad> {
    let first = z.objects.first().ok_or_else(|| Error::Precondition("zigzag has no objects".into()))?;
    let bar = first.coalgebra.operad.base.clone();
    if z.objects.iter().any(|o| o.coalgebra.operad.base.name() != bar.name()) {
        return Err(Error::Precondition("objects live over different windows of 𝔖".into()));
    }
    Ok(bar)
}
