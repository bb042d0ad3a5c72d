//! Suspension of operads: the isomorphism `𝓘`, the collapse `τ`, the
//! morphism `𝔙: 𝔖 → Σ𝔖` and its desuspended powers `𝔘^k: Σ^{−k}𝔖 → 𝔖`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::barres::{basis_cap, build_bar, cochain_class, simplex_label, CochainClass, Coefficients, Simplex};
use crate::chaincore::interval_complex;
use crate::coalg::{
    check_coalgebra_map, make_interval, pullback, reduce, same_complex, shift_coalgebra, suspend_m, Cell, Coalgebra,
    IntervalLift, PointedCoalgebra,
};
use crate::error::{Error, Result};
use crate::operad::{
    aw_diagonal, lc_add, lc_insert, BarOperad, CoEndBasis, CoEndOperad, FnMorphism, LinComb, Operad, OperadMorphism,
    ShiftedOperad, SuspOperad, TensorOperad,
};
use crate::symgrp::Permutation;

/// Pass/fail tallies for a family of exact identities.
#[derive(Clone, Debug, Default, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub checked: BTreeMap<String, usize>,
    pub failures: BTreeMap<String, usize>,
    pub witnesses: Vec<String>,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>) -> Self {
        IdentityReport { name: name.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && !self.checked.is_empty()
    }

    pub fn record(&mut self, law: &str, ok: bool, witness: impl FnOnce() -> String) {
        *self.checked.entry(law.into()).or_insert(0) += 1;
        if !ok {
            *self.failures.entry(law.into()).or_insert(0) += 1;
            if self.witnesses.len() < 20 {
                self.witnesses.push(format!("[{law}] {}", witness()));
            }
        }
    }

    pub fn absorb(&mut self, other: IdentityReport) {
        for (k, v) in other.checked {
            *self.checked.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.failures {
            *self.failures.entry(k).or_insert(0) += v;
        }
        self.witnesses.extend(other.witnesses.into_iter().take(20usize.saturating_sub(self.witnesses.len())));
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.name)?;
        for (law, n) in &self.checked {
            writeln!(f, "  {law}: {n} instances, {} violations", self.failures.get(law).copied().unwrap_or(0))?;
        }
        for w in &self.witnesses {
            writeln!(f, "  {w}")?;
        }
        Ok(())
    }
}

/// `𝓘_n(x) = s_n ⊗ x`, from `A` to `Susp^{±1} ⊗ A`.
pub struct SuspensionIso<A: Operad> {
    pub base: A,
    pub shifted: TensorOperad<SuspOperad, A>,
    pub direction: i64,
}

pub fn make_suspension_iso<A: Operad + Clone>(base: A, direction: i64) -> Result<SuspensionIso<A>> {
    if direction.abs() != 1 {
        return Err(Error::Precondition("direction is +1 or −1".into()));
    }
    let shifted = TensorOperad::new(SuspOperad::new(direction, base.max_rank()), base.clone());
    Ok(SuspensionIso { base, shifted, direction })
}

impl<A: Operad> SuspensionIso<A> {
    pub fn apply(&self, x: &A::Basis) -> LinComb<(usize, A::Basis)> {
        LinComb::from([((self.base.rank_of(x), x.clone()), 1)])
    }

    fn apply_lc(&self, x: &LinComb<A::Basis>) -> LinComb<(usize, A::Basis)> {
        x.iter().map(|(b, &c)| ((self.base.rank_of(b), b.clone()), c)).collect()
    }

    /// `𝓘(g·x) = (−1)^{parity g} g·𝓘(x)` and
    /// `𝓘(a∘_i b) = (−1)^{(m−1)|a| + (n−1)(i−1)} 𝓘(a)∘_i 𝓘(b)`.
    pub fn check(&self) -> Result<IdentityReport> {
        let a = &self.base;
        let mut rep = IdentityReport::new(format!("𝓘: {} → {}", a.name(), self.shifted.name()));
        let elems: Vec<Vec<A::Basis>> = (0..=a.max_rank())
            .map(|n| if n == 0 { Vec::new() } else { a.degrees(n).iter().flat_map(|d| a.basis(n, d)).collect() })
            .collect();
        for n in 1..=a.max_rank() {
            for x in &elems[n] {
                for g in Permutation::all(n) {
                    let lhs = self.apply_lc(&a.act(&g, x));
                    let mut rhs = self.shifted.act_lc(&g, &self.apply(x));
                    rhs.values_mut().for_each(|v| *v *= g.sign());
                    rep.record("action", lhs == rhs, || format!("σ={g}, x={}", a.label(x)));
                }
            }
        }
        for n in 1..=a.max_rank() {
            for m in 1..=a.max_rank() + 1 - n {
                for x in &elems[n] {
                    for y in &elems[m] {
                        if !a.degrees(n + m - 1).known(a.degree_of(x) + a.degree_of(y)) {
                            continue;
                        }
                        for i in 1..=m {
                            let e = (m as i64 - 1) * a.degree_of(x) + (n as i64 - 1) * (i as i64 - 1);
                            let lhs = self.apply_lc(&a.compose(x, i, y)?);
                            let mut rhs = self.shifted.compose_lc(&self.apply(x), i, &self.apply(y))?;
                            rhs.values_mut().for_each(|v| *v *= if e % 2 == 0 { 1 } else { -1 });
                            rep.record("composition", lhs == rhs, || format!("{} ∘_{i} {}", a.label(x), a.label(y)));
                        }
                    }
                }
            }
        }
        Ok(rep)
    }
}

/// `τ: CoEnd(I) → Susp`, the coefficient of `q ↦ q^{⊗n}`: the map induced by
/// the collapse `I → I/I_0 = Σℤ`. It is a morphism on the maps that send
/// `I_0` into words containing a vertex.
pub fn make_tau(max_rank: usize) -> Result<FnMorphism<CoEndOperad, SuspOperad>> {
    let coend = CoEndOperad::new(Arc::new(interval_complex()), max_rank)?;
    let q = coend.complex().find("q").expect("interval cell");
    Ok(FnMorphism::new("τ", coend, SuspOperad::susp(max_rank), move |f: &CoEndBasis| {
        if f.src == q && f.word.iter().all(|&c| c == q) {
            LinComb::from([(f.word.len(), 1)])
        } else {
            LinComb::new()
        }
    }))
}

/// `𝔙 = (τ⊗1)∘(u⊗1)∘Δ`, tabulated on the window of `𝔖`.
#[derive(Clone)]
pub struct VMorphism {
    pub source: BarOperad,
    pub target: TensorOperad<SuspOperad, BarOperad>,
    table: Arc<BTreeMap<Simplex, LinComb<(usize, Simplex)>>>,
}

pub fn make_v(bar: BarOperad, lift: IntervalLift) -> Result<VMorphism> {
    let interval = make_interval(bar.clone(), lift)?;
    make_v_from(&interval.base)
}

/// `𝔙` from a given interval structure `u`.
pub fn make_v_from(u: &Coalgebra<BarOperad>) -> Result<VMorphism> {
    let bar = u.operad.clone();
    let tau = make_tau(bar.max_rank)?;
    let mut table = BTreeMap::new();
    for n in 1..=bar.max_rank {
        for d in bar.degrees(n).iter() {
            for x in bar.basis(n, d) {
                let mut v = LinComb::new();
                for ((x1, x2), c) in aw_diagonal(&x) {
                    for (s, t) in tau.apply_lc(u.structure(&x1)?) {
                        lc_insert(&mut v, (s, x2.clone()), c * t);
                    }
                }
                table.insert(x, v);
            }
        }
    }
    let target = TensorOperad::new(SuspOperad::susp(bar.max_rank), bar.clone());
    Ok(VMorphism { source: bar, target, table: Arc::new(table) })
}

impl VMorphism {
    pub fn value(&self, x: &Simplex) -> Result<&LinComb<(usize, Simplex)>> {
        self.table.get(x).ok_or_else(|| Error::UnknownLabel(simplex_label(x)))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Simplex, &LinComb<(usize, Simplex)>)> {
        self.table.iter()
    }

    /// The triangle `(𝔙⊗1)∘Δ = (𝓘⊗1)∘Δ∘𝓘^{−1}∘𝔙`.
    pub fn check_triangle(&self) -> Result<IdentityReport> {
        let mut rep = IdentityReport::new("(𝔙⊗1)Δ = (𝓘⊗1)Δ𝓘⁻¹𝔙");
        for (x, v) in self.entries() {
            let mut lhs: LinComb<(usize, Simplex, Simplex)> = LinComb::new();
            for ((x1, x2), c) in aw_diagonal(x) {
                for ((s, y), e) in self.value(&x1)? {
                    lc_insert(&mut lhs, (*s, y.clone(), x2.clone()), c * e);
                }
            }
            let mut rhs = LinComb::new();
            for ((s, y), e) in v {
                for ((y1, y2), c) in aw_diagonal(y) {
                    lc_insert(&mut rhs, (*s, y1, y2), c * e);
                }
            }
            rep.record("triangle", lhs == rhs, || self.source.label(x));
        }
        Ok(rep)
    }

    /// `φ(x) = Σ c_y χ'(y)` over `𝔙(x) = Σ c_y s_n⊗y` on the degree-`(n−1)`
    /// generators of `RS_n`, with `χ'(y) = 1` for `ℤ_sign` and `sign(y)` for `ℤ`.
    pub fn cochain(&self, n: usize, coeffs: Coefficients) -> Result<(Vec<Simplex>, BTreeMap<usize, i64>)> {
        let res = build_bar(n, n as i64, basis_cap())?;
        let k = n as i64 - 1;
        let gens: Vec<Simplex> = res.generators(k).into_iter().map(|i| res.simplex(k, i).clone()).collect();
        let mut phi = BTreeMap::new();
        for (pos, s) in gens.iter().enumerate() {
            let mut val = 0;
            for ((_, y), &c) in self.value(s)? {
                val += c * match coeffs {
                    Coefficients::Sign => 1,
                    Coefficients::Trivial => y[0].sign(),
                };
            }
            if val != 0 {
                phi.insert(pos, val);
            }
        }
        Ok((gens, phi))
    }

    /// `α_n ∈ H^{n−1}(S_n; M)`.
    pub fn alpha(&self, n: usize, coeffs: Coefficients) -> Result<CochainClass> {
        let res = build_bar(n, n as i64, basis_cap())?;
        let (_, phi) = self.cochain(n, coeffs)?;
        cochain_class(&res, coeffs, n as i64 - 1, &phi)
    }
}

impl OperadMorphism for VMorphism {
    type Source = BarOperad;
    type Target = TensorOperad<SuspOperad, BarOperad>;

    fn name(&self) -> String {
        "𝔙".into()
    }

    fn source(&self) -> &BarOperad {
        &self.source
    }

    fn target(&self) -> &Self::Target {
        &self.target
    }

    fn apply(&self, x: &Simplex) -> LinComb<(usize, Simplex)> {
        self.table.get(x).cloned().unwrap_or_default()
    }
}

/// `κ_n = (−1)^{(n−1)(n−2)/2}`, the sign of `Susp⁻¹ ⊗ Susp ≅ Com` in rank `n`.
pub fn kappa(n: usize) -> i64 {
    let n = n as i64;
    if ((n - 1) * (n - 2) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `𝔘^k = Σ^{−k}𝔙^k: Σ^{−k}𝔖 → 𝔖`, each factor `x ↦ κ_n Σ c_y y` over `𝔙(x)`.
#[derive(Clone)]
pub struct UPower {
    pub k: usize,
    pub source: ShiftedOperad<BarOperad>,
    pub target: BarOperad,
    v: VMorphism,
}

pub fn make_u(v: &VMorphism) -> UPower {
    u_power(v, 1)
}

pub fn u_power(v: &VMorphism, k: usize) -> UPower {
    let bar = v.source.clone();
    UPower { k, source: ShiftedOperad::new(bar.clone(), -(k as i64)), target: bar, v: v.clone() }
}

impl UPower {
    fn step(&self, x: &LinComb<Simplex>) -> LinComb<Simplex> {
        let mut out = LinComb::new();
        for (s, &c) in x {
            let n = self.target.rank_of(s);
            let image: LinComb<Simplex> = self.v.apply(s).into_iter().map(|((_, y), e)| (y, e)).collect();
            lc_add(&mut out, &image, c * kappa(n));
        }
        out
    }
}

impl OperadMorphism for UPower {
    type Source = ShiftedOperad<BarOperad>;
    type Target = BarOperad;

    fn name(&self) -> String {
        match self.k {
            1 => "𝔘".into(),
            k => format!("𝔘^{k}"),
        }
    }

    fn source(&self) -> &Self::Source {
        &self.source
    }

    fn target(&self) -> &BarOperad {
        &self.target
    }

    fn apply(&self, x: &Simplex) -> LinComb<Simplex> {
        let mut cur = LinComb::from([(x.clone(), 1)]);
        for _ in 0..self.k {
            cur = self.step(&cur);
        }
        cur
    }
}

/// The suspension theorem for `C`:
/// (1) `(SC)⁺` equals `ΣC⁺` bit for bit;
/// (2) `a⁺_{SC} = Σa⁺_C ∘ 𝔙` on every window element, `Σa⁺_C` being the structure
///     of `ΣC⁺` over `Σ𝔖` (through `𝔈` and `𝓘`);
/// (3) for the identity `SC → SC`, `𝔘^*C⁺ = Σ^{−1}(SC)⁺` over `Σ^{−1}𝔖`.
pub fn check_suspension_theorem(
    c: &PointedCoalgebra,
    interval: &PointedCoalgebra,
    v: &VMorphism,
) -> Result<IdentityReport> {
    let mut rep = IdentityReport::new(format!("suspension theorem for {}", c.base.name));
    let cp = reduce(c)?;
    let sc = suspend_m(c, interval)?;
    let scp = reduce(&sc)?;
    let sigma = shift_coalgebra(&cp, 1)?;
    let carrier_ok = same_complex(scp.carrier(), sigma.carrier());
    rep.record("(SC)⁺ = ΣC⁺", carrier_ok, || format!("{} vs {}", scp.carrier().name, sigma.carrier().name));
    if !carrier_ok {
        return Ok(rep);
    }
    for (x, lhs) in scp.entries() {
        let mut rhs = LinComb::new();
        for ((_, y), &e) in v.value(x)? {
            lc_add(&mut rhs, sigma.structure(y)?, e);
        }
        rep.record("a⁺_SC = Σa⁺_C∘𝔙", *lhs == rhs, || {
            format!("{}: {} ≠ {}", scp.operad.label(x), fmt_coend(&scp, lhs), fmt_coend(&scp, &rhs))
        });
    }
    let u = make_u(v);
    let up = pullback(&u, &cp)?;
    let down = shift_coalgebra(&scp, -1)?;
    let carrier_ok = same_complex(up.carrier(), down.carrier());
    rep.record("Σ⁻¹(SC)⁺ = C⁺", carrier_ok, || format!("{} vs {}", down.carrier().name, up.carrier().name));
    if carrier_ok {
        let id = |x: Cell| LinComb::from([(x, 1)]);
        let bad = check_coalgebra_map(&up, &down, &id)?;
        rep.record("𝔘^*C⁺ → Σ⁻¹(SC)⁺", bad.is_none(), || format!("{bad:?}"));
    }
    Ok(rep)
}

fn fmt_coend<O: Operad>(k: &Coalgebra<O>, x: &LinComb<CoEndBasis>) -> String {
    if x.is_empty() {
        return "0".into();
    }
    x.iter().map(|(b, c)| format!("{c}*{}", k.target.label(b))).collect::<Vec<_>>().join(" + ")
}
