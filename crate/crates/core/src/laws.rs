//! Container distributive laws `(u1, u2, v1, v2)` and their three equation
//! suites, the natural transformation they denote, and the Beck-diagram
//! oracle.
//!
//! Slot 1 holds the `(S, P)` container and slot 2 the `(T, Q)` container,
//! with the data typed as
//!
//! ```text
//! u1 : Π s. (P s -> T) -> T
//! u2 : Π s f. Q (u1 s f) -> S
//! v1 : Π {s f} q. P (u2 s f q) -> P s
//! v2 : Π {s f} q p. Q (f (v1 q p))
//! ```
//!
//! For monad-monad laws slot 1 is the inner and slot 2 the outer monad of
//! the composite: γ maps `slot1 ∘ slot2` to `slot2 ∘ slot1`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::container::{compose_containers, Container, ExtElement, SigmaIndex};
use crate::directed::DirectedContainer;
use crate::error::{Error, Result};
use crate::eval::{bind, holds, render_list, require, same, tp, Ev, Outcome, Stop, TPos, Tally};
use crate::kernel::{pow_checked, unrank_uniform, DepTable, FamilySpace};
use crate::monadic::{
    check_pointwise, eta, fmap_at, mu, node_of, EquationReport, EquationResult, MonadicContainer,
    Value,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawKind {
    /// Both slots monadic.
    MndMnd,
    /// Slot 1 directed, slot 2 monadic.
    MndDir,
    /// Slot 1 monadic, slot 2 directed.
    DirMnd,
}

impl LawKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LawKind::MndMnd => "mnd-mnd",
            LawKind::MndDir => "mnd-dir",
            LawKind::DirMnd => "dir-mnd",
        }
    }

    pub fn equations(self) -> Vec<&'static str> {
        equation_defs(self).iter().map(|d| d.name).collect()
    }
}

impl fmt::Display for LawKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LawKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mnd-mnd" => Ok(LawKind::MndMnd),
            "mnd-dir" => Ok(LawKind::MndDir),
            "dir-mnd" => Ok(LawKind::DirMnd),
            other => Err(Error::invalid("kind", format!("unknown law kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slot {
    Monadic(MonadicContainer),
    Directed(DirectedContainer),
}

impl Slot {
    pub fn base(&self) -> &Container {
        match self {
            Slot::Monadic(m) => m.base(),
            Slot::Directed(d) => d.base(),
        }
    }

    pub fn as_monadic(&self) -> Option<&MonadicContainer> {
        match self {
            Slot::Monadic(m) => Some(m),
            Slot::Directed(_) => None,
        }
    }

    pub fn as_directed(&self) -> Option<&DirectedContainer> {
        match self {
            Slot::Directed(d) => Some(d),
            Slot::Monadic(_) => None,
        }
    }
}

/// The two slots of a law together with the key layout of its tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawSignature {
    kind: LawKind,
    slot1: Slot,
    slot2: Slot,
    fam: FamilySpace,
    max_q: u32,
    max_p: u32,
}

impl LawSignature {
    pub fn new(kind: LawKind, slot1: Slot, slot2: Slot) -> Result<Self> {
        let ok = matches!(
            (kind, &slot1, &slot2),
            (LawKind::MndMnd, Slot::Monadic(_), Slot::Monadic(_))
                | (LawKind::MndDir, Slot::Directed(_), Slot::Monadic(_))
                | (LawKind::DirMnd, Slot::Monadic(_), Slot::Directed(_))
        );
        if !ok {
            return Err(Error::Rejected(format!(
                "{kind} needs {} in slot 1 and {} in slot 2",
                if kind == LawKind::MndDir { "a directed" } else { "a monadic" },
                if kind == LawKind::DirMnd { "a directed" } else { "a monadic" },
            )));
        }
        if !slot2.base().is_finite() {
            return Err(Error::Unsupported("slot 2 must be finite".into()));
        }
        let fam = slot1.base().families(slot2.base().shape_count())?;
        let max_q = slot2.base().max_positions();
        let max_p = slot1.base().max_positions();
        let len = u128::from(fam.total()) * u128::from(max_q.max(1)) * u128::from(max_p.max(1));
        if len > 1 << 26 {
            return Err(Error::Unsupported("law tables too large".into()));
        }
        Ok(LawSignature {
            kind,
            slot1,
            slot2,
            fam,
            max_q,
            max_p,
        })
    }

    pub fn kind(&self) -> LawKind {
        self.kind
    }

    pub fn slot1(&self) -> &Slot {
        &self.slot1
    }

    pub fn slot2(&self) -> &Slot {
        &self.slot2
    }

    /// Families `(s, f : P s -> T)`, the row keys of `u1`.
    pub fn families(&self) -> &FamilySpace {
        &self.fam
    }

    pub(crate) fn n1(&self) -> u32 {
        self.slot1.base().shape_count()
    }

    pub(crate) fn n2(&self) -> u32 {
        self.slot2.base().shape_count()
    }

    pub(crate) fn p(&self, s: u32) -> u32 {
        self.slot1.base().pos(s)
    }

    pub(crate) fn q(&self, t: u32) -> u32 {
        self.slot2.base().pos(t)
    }

    pub(crate) fn u2_key(&self, fi: u64, q: u32) -> usize {
        (fi * u64::from(self.max_q) + u64::from(q)) as usize
    }

    pub(crate) fn v_key(&self, fi: u64, q: u32, p: u32) -> usize {
        (self.u2_key(fi, q) as u64 * u64::from(self.max_p) + u64::from(p)) as usize
    }

    pub(crate) fn table_lens(&self) -> [usize; 4] {
        let f = self.fam.total() as usize;
        let u2 = f * self.max_q as usize;
        [f, u2, u2 * self.max_p as usize, u2 * self.max_p as usize]
    }

    /// Variable id of entry `key` of table `table` (0 = u1 .. 3 = v2).
    pub(crate) fn var(&self, table: usize, key: usize) -> u32 {
        let lens = self.table_lens();
        (lens[..table].iter().sum::<usize>() + key) as u32
    }

    pub(crate) fn max_qp(&self) -> (u32, u32) {
        (self.max_q, self.max_p)
    }

    pub(crate) fn var_count(&self) -> usize {
        self.table_lens().iter().sum()
    }

    fn monadic1(&self) -> &MonadicContainer {
        self.slot1.as_monadic().expect("kind checked")
    }

    fn monadic2(&self) -> &MonadicContainer {
        self.slot2.as_monadic().expect("kind checked")
    }

    fn directed1(&self) -> &DirectedContainer {
        self.slot1.as_directed().expect("kind checked")
    }

    fn directed2(&self) -> &DirectedContainer {
        self.slot2.as_directed().expect("kind checked")
    }
}

/// Partial or total tables, keyed by the signature's layout. A `u2` entry
/// equal to the slot-1 shape count marks a shape beyond the fuel bound.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LawTables {
    pub(crate) t: [Vec<Option<u32>>; 4],
}

impl LawTables {
    pub fn empty(sig: &LawSignature) -> Self {
        let lens = sig.table_lens();
        LawTables {
            t: lens.map(|n| vec![None; n]),
        }
    }

    pub(crate) fn set_var(&mut self, sig: &LawSignature, var: u32, v: Option<u32>) {
        let (table, key) = split_var(sig, var);
        self.t[table][key] = v;
    }

    pub fn assigned(&self) -> usize {
        self.t.iter().flatten().filter(|v| v.is_some()).count()
    }
}

pub(crate) fn split_var(sig: &LawSignature, var: u32) -> (usize, usize) {
    let mut k = var as usize;
    for (i, n) in sig.table_lens().into_iter().enumerate() {
        if k < n {
            return (i, k);
        }
        k -= n;
    }
    panic!("variable {var} out of range")
}

/// A total distributive-law candidate: every live entry is assigned and
/// respects its dependent bound. Equations are not implied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistLawData {
    sig: LawSignature,
    tables: LawTables,
}

/// Live table entries in canonical order: `u1` rows, then `u2`, `v1`, `v2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawRows {
    pub u1: Vec<(u32, Vec<u32>, u32)>,
    pub u2: Vec<(u32, Vec<u32>, u32, u32)>,
    pub v1: Vec<(u32, Vec<u32>, u32, u32, u32)>,
    pub v2: Vec<(u32, Vec<u32>, u32, u32, u32)>,
}

impl DistLawData {
    #[allow(clippy::type_complexity)]
    pub fn from_fns(
        kind: LawKind,
        slot1: Slot,
        slot2: Slot,
        u1: impl Fn(u32, &[u32]) -> u32,
        u2: impl Fn(u32, &[u32], u32) -> u32,
        v1: impl Fn(u32, &[u32], u32, u32) -> u32,
        v2: impl Fn(u32, &[u32], u32, u32) -> u32,
    ) -> Result<Self> {
        let sig = LawSignature::new(kind, slot1, slot2)?;
        let mut tables = LawTables::empty(&sig);
        for fi in 0..sig.fam.total() {
            let (s, f) = sig.fam.decode(fi);
            let t = u1(s, &f);
            tables.t[0][fi as usize] = Some(t);
            if t >= sig.n2() {
                return Err(Error::invalid(format!("u1[{fi}]"), format!("{t} is not a shape")));
            }
            for q in 0..sig.q(t) {
                let a = u2(s, &f, q);
                tables.t[1][sig.u2_key(fi, q)] = Some(a);
                if a >= sig.n1() {
                    return Err(Error::invalid(
                        format!("u2[{fi}][{q}]"),
                        format!("{a} is not a shape"),
                    ));
                }
                for p in 0..sig.p(a) {
                    let k = sig.v_key(fi, q, p);
                    tables.t[2][k] = Some(v1(s, &f, q, p));
                    if tables.t[2][k].unwrap() < sig.p(s) {
                        tables.t[3][k] = Some(v2(s, &f, q, p));
                    }
                }
            }
        }
        DistLawData::from_tables(sig, tables)
    }

    pub fn from_tables(sig: LawSignature, tables: LawTables) -> Result<Self> {
        let lens = sig.table_lens();
        if tables.t.iter().zip(lens).any(|(t, n)| t.len() != n) {
            return Err(Error::invalid("tables", "length does not match the layout"));
        }
        for fi in 0..sig.fam.total() {
            let (s, f) = sig.fam.decode(fi);
            let path = format!("s={} f={}", sig.slot1.base().label(s), render_list(&f));
            let t = tables.t[0][fi as usize]
                .ok_or_else(|| Error::invalid(format!("u1 {path}"), "missing"))?;
            if t >= sig.n2() {
                return Err(Error::invalid(format!("u1 {path}"), format!("{t} is not a shape")));
            }
            for q in 0..sig.q(t) {
                let a = tables.t[1][sig.u2_key(fi, q)]
                    .ok_or_else(|| Error::invalid(format!("u2 {path} q={q}"), "missing"))?;
                if a >= sig.n1() {
                    return Err(Error::invalid(
                        format!("u2 {path} q={q}"),
                        format!("{a} is not a shape"),
                    ));
                }
                for p in 0..sig.p(a) {
                    let k = sig.v_key(fi, q, p);
                    let x = tables.t[2][k]
                        .ok_or_else(|| Error::invalid(format!("v1 {path} q={q} p={p}"), "missing"))?;
                    if x >= sig.p(s) {
                        return Err(Error::invalid(
                            format!("v1 {path} q={q} p={p}"),
                            format!("{x} is not a position"),
                        ));
                    }
                    let y = tables.t[3][k]
                        .ok_or_else(|| Error::invalid(format!("v2 {path} q={q} p={p}"), "missing"))?;
                    if y >= sig.q(f[x as usize]) {
                        return Err(Error::invalid(
                            format!("v2 {path} q={q} p={p}"),
                            format!("{y} is not a position"),
                        ));
                    }
                }
            }
        }
        Ok(DistLawData { sig, tables })
    }

    pub fn kind(&self) -> LawKind {
        self.sig.kind
    }

    pub fn signature(&self) -> &LawSignature {
        &self.sig
    }

    pub fn tables(&self) -> &LawTables {
        &self.tables
    }

    pub fn slot1(&self) -> &Slot {
        &self.sig.slot1
    }

    pub fn slot2(&self) -> &Slot {
        &self.sig.slot2
    }

    pub fn u1(&self, s: u32, f: &[u32]) -> u32 {
        self.tables.t[0][self.sig.fam.index(s, f) as usize].expect("validated")
    }

    pub fn u2(&self, s: u32, f: &[u32], q: u32) -> u32 {
        let fi = self.sig.fam.index(s, f);
        self.tables.t[1][self.sig.u2_key(fi, q)].expect("validated")
    }

    pub fn v1(&self, s: u32, f: &[u32], q: u32, p: u32) -> u32 {
        let fi = self.sig.fam.index(s, f);
        self.tables.t[2][self.sig.v_key(fi, q, p)].expect("validated")
    }

    pub fn v2(&self, s: u32, f: &[u32], q: u32, p: u32) -> u32 {
        let fi = self.sig.fam.index(s, f);
        self.tables.t[3][self.sig.v_key(fi, q, p)].expect("validated")
    }

    pub fn rows(&self) -> LawRows {
        let mut r = LawRows {
            u1: vec![],
            u2: vec![],
            v1: vec![],
            v2: vec![],
        };
        for fi in 0..self.sig.fam.total() {
            let (s, f) = self.sig.fam.decode(fi);
            let t = self.u1(s, &f);
            r.u1.push((s, f.clone(), t));
            for q in 0..self.sig.q(t) {
                let a = self.u2(s, &f, q);
                r.u2.push((s, f.clone(), q, a));
                for p in 0..self.sig.p(a) {
                    r.v1.push((s, f.clone(), q, p, self.v1(s, &f, q, p)));
                    r.v2.push((s, f.clone(), q, p, self.v2(s, &f, q, p)));
                }
            }
        }
        r
    }

    /// Live entries in canonical variable order; laws over the same slots
    /// are ordered by this sequence.
    pub fn flat(&self) -> Vec<u32> {
        self.tables.t.iter().flatten().filter_map(|v| *v).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Base {
    /// `[t]`
    T,
    /// `[s]`
    S,
    /// `[fi]`, a family index `(s, f : P s -> T)`
    SF,
    /// `[s, rank fS, rank g]` with `fS : P s -> S`, `g : Σ_p P (fS p) -> T`
    SFsG,
    /// `[fi, rank g]` with `g : Σ_p Q (f p) -> T`
    SFG,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Ix {
    Q,
    P,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Eq {
    UiS(u8),
    UiT(u8),
    MulS(u8),
    MulT(u8),
    UnitOS(u8),
    DirMulS(u8),
    UnitOT(u8),
    DirMulT(u8),
}

pub(crate) struct EqDef {
    pub name: &'static str,
    pub base: Base,
    pub ix: &'static [Ix],
    pub eq: Eq,
}

const fn d(name: &'static str, base: Base, ix: &'static [Ix], eq: Eq) -> EqDef {
    EqDef { name, base, ix, eq }
}

use Ix::{P as IP, Q as IQ};

const UNIT_IOTA_S: [EqDef; 4] = [
    d("unit-ιS-s1", Base::T, &[], Eq::UiS(0)),
    d("unit-ιS-s2", Base::T, &[IQ], Eq::UiS(1)),
    d("unit-ιS-p1", Base::T, &[IQ, IP], Eq::UiS(2)),
    d("unit-ιS-p2", Base::T, &[IQ, IP], Eq::UiS(3)),
];

const UNIT_IOTA_T: [EqDef; 4] = [
    d("unit-ιT-s1", Base::S, &[], Eq::UiT(0)),
    d("unit-ιT-s2", Base::S, &[IQ], Eq::UiT(1)),
    d("unit-ιT-p1", Base::S, &[IQ, IP], Eq::UiT(2)),
    d("unit-ιT-p2", Base::S, &[IQ, IP], Eq::UiT(3)),
];

const MUL_S: [EqDef; 5] = [
    d("mul-S-s1", Base::SFsG, &[], Eq::MulS(0)),
    d("mul-S-s2", Base::SFsG, &[IQ], Eq::MulS(1)),
    d("mul-S-p1", Base::SFsG, &[IQ, IP], Eq::MulS(2)),
    d("mul-S-p21", Base::SFsG, &[IQ, IP], Eq::MulS(3)),
    d("mul-S-p22", Base::SFsG, &[IQ, IP], Eq::MulS(4)),
];

const MUL_T: [EqDef; 5] = [
    d("mul-T-s1", Base::SFG, &[], Eq::MulT(0)),
    d("mul-T-s2", Base::SFG, &[IQ], Eq::MulT(1)),
    d("mul-T-p1", Base::SFG, &[IQ, IP], Eq::MulT(2)),
    d("mul-T-p21", Base::SFG, &[IQ, IP], Eq::MulT(3)),
    d("mul-T-p22", Base::SFG, &[IQ, IP], Eq::MulT(4)),
];

const UNIT_O_S: [EqDef; 3] = [
    d("unit-oS-s", Base::SF, &[], Eq::UnitOS(0)),
    d("unit-oS-p1", Base::SF, &[IQ], Eq::UnitOS(1)),
    d("unit-oS-p2", Base::SF, &[IQ], Eq::UnitOS(2)),
];

const DIR_MUL_S: [EqDef; 3] = [
    d("mul-S-s3", Base::SF, &[IQ, IP], Eq::DirMulS(0)),
    d("mul-S-p1", Base::SF, &[IQ, IP, IP], Eq::DirMulS(1)),
    d("mul-S-p2", Base::SF, &[IQ, IP, IP], Eq::DirMulS(2)),
];

const UNIT_O_T: [EqDef; 3] = [
    d("unit-oT-s", Base::SF, &[], Eq::UnitOT(0)),
    d("unit-oT-p1", Base::SF, &[IP], Eq::UnitOT(1)),
    d("unit-oT-p2", Base::SF, &[IP], Eq::UnitOT(2)),
];

const DIR_MUL_T: [EqDef; 4] = [
    d("mul-T-s1", Base::SF, &[IQ], Eq::DirMulT(0)),
    d("mul-T-s2", Base::SF, &[IQ, IQ], Eq::DirMulT(1)),
    d("mul-T-p1", Base::SF, &[IQ, IQ, IP], Eq::DirMulT(2)),
    d("mul-T-p2", Base::SF, &[IQ, IQ, IP], Eq::DirMulT(3)),
];

pub(crate) fn equation_defs(kind: LawKind) -> Vec<&'static EqDef> {
    match kind {
        LawKind::MndMnd => UNIT_IOTA_S
            .iter()
            .chain(&UNIT_IOTA_T)
            .chain(&MUL_S)
            .chain(&MUL_T)
            .collect(),
        LawKind::MndDir => UNIT_O_S
            .iter()
            .chain(&DIR_MUL_S)
            .chain(&UNIT_IOTA_T[1..])
            .chain(&MUL_T[1..])
            .collect(),
        LawKind::DirMnd => UNIT_IOTA_S
            .iter()
            .chain(&MUL_S)
            .chain(&UNIT_O_T)
            .chain(&DIR_MUL_T)
            .collect(),
    }
}

/// Calls `visit` on every parameter tuple of `def`; returns the number of
/// tuples skipped because a slot-1 multiplication left the fuel bound.
pub(crate) fn for_each_instance(
    sig: &LawSignature,
    def: &EqDef,
    visit: &mut dyn FnMut(&[u64]),
) -> Result<u64> {
    let mut deferred = 0u64;
    let mut bases: Vec<Vec<u64>> = Vec::new();
    match def.base {
        Base::T => bases.extend((0..sig.n2()).map(|t| vec![u64::from(t)])),
        Base::S => bases.extend((0..sig.n1()).map(|s| vec![u64::from(s)])),
        Base::SF => bases.extend((0..sig.fam.total()).map(|fi| vec![fi])),
        Base::SFsG => {
            let m = sig.monadic1();
            for s in 0..sig.n1() {
                for fr in 0..pow_checked(sig.n1(), sig.p(s))? {
                    let fs = unrank_uniform(fr, sig.n1(), sig.p(s) as usize);
                    let total: u32 = fs.iter().map(|&x| sig.p(x)).sum();
                    let gcount = pow_checked(sig.n2(), total)?;
                    if m.sigma(s, &fs).is_none() {
                        deferred = deferred.saturating_add(gcount);
                        continue;
                    }
                    if gcount > 1 << 24 {
                        return Err(Error::Unsupported("too many instances".into()));
                    }
                    bases.extend((0..gcount).map(|gr| vec![u64::from(s), fr, gr]));
                }
            }
        }
        Base::SFG => {
            for fi in 0..sig.fam.total() {
                let (_, f) = sig.fam.decode(fi);
                let total: u32 = f.iter().map(|&t| sig.q(t)).sum();
                let gcount = pow_checked(sig.n2(), total)?;
                if gcount > 1 << 24 {
                    return Err(Error::Unsupported("too many instances".into()));
                }
                bases.extend((0..gcount).map(|gr| vec![fi, gr]));
            }
        }
    }
    let bounds: Vec<u32> = def
        .ix
        .iter()
        .map(|ix| match ix {
            Ix::Q => sig.max_q,
            Ix::P => sig.max_p,
        })
        .collect();
    let mut params = Vec::new();
    for b in bases {
        for idx in crate::kernel::DepMaps::new(&bounds) {
            params.clear();
            params.extend_from_slice(&b);
            params.extend(idx.iter().map(|&i| u64::from(i)));
            visit(&params);
        }
    }
    Ok(deferred)
}

/// Evaluates equations against possibly partial tables.
pub(crate) struct Evaluator<'a> {
    pub sig: &'a LawSignature,
    pub tables: &'a LawTables,
}

impl Evaluator<'_> {
    fn ppos(&self, s: u32, idx: u64) -> Ev<TPos> {
        if idx < u64::from(self.sig.p(s)) {
            Ok(tp(s, idx as u32))
        } else {
            Err(Stop::Vacuous)
        }
    }

    fn qpos(&self, t: u32, idx: u64) -> Ev<TPos> {
        if idx < u64::from(self.sig.q(t)) {
            Ok(tp(t, idx as u32))
        } else {
            Err(Stop::Vacuous)
        }
    }

    fn look(&self, table: usize, key: usize) -> Ev<u32> {
        self.tables.t[table][key].ok_or_else(|| Stop::Pending(self.sig.var(table, key)))
    }

    fn u1(&self, s: u32, f: &[u32]) -> Ev<u32> {
        self.look(0, self.sig.fam.index(s, f) as usize)
    }

    fn u2(&self, s: u32, f: &[u32], q: TPos) -> Ev<u32> {
        if q.shape != self.u1(s, f)? {
            return Err(Stop::Blocked);
        }
        let a = self.look(1, self.sig.u2_key(self.sig.fam.index(s, f), q.idx))?;
        if a >= self.sig.n1() {
            return Err(Stop::Deferred);
        }
        Ok(a)
    }

    fn v1(&self, s: u32, f: &[u32], q: TPos, p: TPos) -> Ev<TPos> {
        if p.shape != self.u2(s, f, q)? {
            return Err(Stop::Blocked);
        }
        let k = self.sig.v_key(self.sig.fam.index(s, f), q.idx, p.idx);
        Ok(tp(s, self.look(2, k)?))
    }

    fn v2(&self, s: u32, f: &[u32], q: TPos, p: TPos) -> Ev<TPos> {
        let x = self.v1(s, f, q, p)?;
        let k = self.sig.v_key(self.sig.fam.index(s, f), q.idx, p.idx);
        Ok(tp(f[x.idx as usize], self.look(3, k)?))
    }

    fn sigma_s(&self, s: u32, f: &[u32]) -> Ev<u32> {
        self.sig.monadic1().sigma_ev(s, f)
    }

    fn sigma_t(&self, t: u32, f: &[u32]) -> Ev<u32> {
        self.sig.monadic2().sigma_ev(t, f)
    }

    fn pr_s(&self, s: u32, f: &[u32], p: TPos) -> Ev<(TPos, TPos)> {
        pr_typed(self.sig.monadic1(), s, f, p)
    }

    fn pr_t(&self, t: u32, f: &[u32], q: TPos) -> Ev<(TPos, TPos)> {
        pr_typed(self.sig.monadic2(), t, f, q)
    }

    fn gamma_fam(&self, s: u32, f: &[u32], q: TPos, b: u32, g: &[u32], sig: &SigmaIndex) -> Ev<Vec<u32>> {
        (0..self.sig.p(b))
            .map(|p| {
                let pp = tp(b, p);
                let x = self.v1(s, f, q, pp)?;
                let y = self.v2(s, f, q, pp)?;
                Ok(g[sig.flat(x.idx, y.idx) as usize])
            })
            .collect()
    }

    pub fn eval(&self, def: &EqDef, prm: &[u64]) -> Ev<Outcome> {
        match def.eq {
            Eq::UiS(k) => self.unit_iota_s(k, prm),
            Eq::UiT(k) => self.unit_iota_t(k, prm),
            Eq::MulS(k) => self.mul_s(k, prm),
            Eq::MulT(k) => self.mul_t(k, prm),
            Eq::UnitOS(k) => self.unit_o_s(k, prm),
            Eq::DirMulS(k) => self.dir_mul_s(k, prm),
            Eq::UnitOT(k) => self.unit_o_t(k, prm),
            Eq::DirMulT(k) => self.dir_mul_t(k, prm),
        }
    }

    fn unit_iota_s(&self, k: u8, prm: &[u64]) -> Ev<Outcome> {
        let t = prm[0] as u32;
        let iota = self.sig.monadic1().iota();
        let f = vec![t; self.sig.p(iota) as usize];
        let u = self.u1(iota, &f)?;
        if k == 0 {
            return Ok(holds(u == t));
        }
        let q = self.qpos(u, prm[1])?;
        let a = self.u2(iota, &f, q)?;
        if k == 1 {
            return Ok(holds(a == iota));
        }
        let p = self.ppos(a, prm[2])?;
        if k == 2 {
            same(self.v1(iota, &f, q, p)?, p)
        } else {
            same(self.v2(iota, &f, q, p)?, q)
        }
    }

    fn unit_iota_t(&self, k: u8, prm: &[u64]) -> Ev<Outcome> {
        let s = prm[0] as u32;
        let iota = self.sig.monadic2().iota();
        let f = vec![iota; self.sig.p(s) as usize];
        let u = self.u1(s, &f)?;
        if k == 0 {
            return Ok(holds(u == iota));
        }
        let q = self.qpos(u, prm[1])?;
        let a = self.u2(s, &f, q)?;
        if k == 1 {
            return Ok(holds(a == s));
        }
        let p = self.ppos(a, prm[2])?;
        if k == 2 {
            same(self.v1(s, &f, q, p)?, p)
        } else {
            same(self.v2(s, &f, q, p)?, q)
        }
    }

    fn mul_s(&self, k: u8, prm: &[u64]) -> Ev<Outcome> {
        let sg = self.sig;
        let s = prm[0] as u32;
        let fs = unrank_uniform(prm[1], sg.n1(), sg.p(s) as usize);
        let sig = SigmaIndex::new(fs.iter().map(|&x| sg.p(x)));
        let g = unrank_uniform(prm[2], sg.n2(), sig.total() as usize);
        let row = |p: u32| &g[sig.range(p)];
        let a = self.sigma_s(s, &fs)?;
        let m1 = sg.monadic1();
        let gpr: Vec<u32> = (0..sg.p(a))
            .map(|x| {
                let (a1, a2) = m1.pr(s, &fs, x);
                g[sig.flat(a1, a2) as usize]
            })
            .collect();
        let big_f: Vec<u32> = (0..sg.p(s))
            .map(|p| self.u1(fs[p as usize], row(p)))
            .collect::<Ev<_>>()?;
        let l1 = self.u1(a, &gpr)?;
        let r1 = self.u1(s, &big_f)?;
        if k == 0 {
            return Ok(holds(l1 == r1));
        }
        let ql = self.qpos(l1, prm[3])?;
        let lhs2 = self.u2(a, &gpr, ql)?;
        if l1 != r1 {
            return Err(Stop::Blocked);
        }
        let qr = tp(r1, ql.idx);
        let b = self.u2(s, &big_f, qr)?;
        let h: Vec<u32> = (0..sg.p(b))
            .map(|p| {
                let pp = tp(b, p);
                let p0 = self.v1(s, &big_f, qr, pp)?;
                let y = self.v2(s, &big_f, qr, pp)?;
                self.u2(fs[p0.idx as usize], row(p0.idx), y)
            })
            .collect::<Ev<_>>()?;
        let rhs2 = self.sigma_s(b, &h)?;
        if k == 1 {
            return Ok(holds(lhs2 == rhs2));
        }
        let pl = self.ppos(lhs2, prm[4])?;
        let x = self.v1(a, &gpr, ql, pl)?;
        let (c1, c2) = self.pr_s(s, &fs, x)?;
        let (y1, y2) = self.pr_s(b, &h, pl)?;
        let p0 = self.v1(s, &big_f, qr, y1)?;
        let o1 = same(c1, p0)?;
        if k == 2 {
            return Ok(o1);
        }
        require(o1)?;
        let q2 = self.v2(s, &big_f, qr, y1)?;
        let fp0 = fs[p0.idx as usize];
        let r21 = self.v1(fp0, row(p0.idx), q2, y2)?;
        let o21 = same(c2, r21)?;
        if k == 3 {
            return Ok(o21);
        }
        require(o21)?;
        same(self.v2(a, &gpr, ql, pl)?, self.v2(fp0, row(p0.idx), q2, y2)?)
    }

    fn mul_t(&self, k: u8, prm: &[u64]) -> Ev<Outcome> {
        let sg = self.sig;
        let (s, f) = sg.fam.decode(prm[0]);
        let sig = SigmaIndex::new(f.iter().map(|&t| sg.q(t)));
        let g = unrank_uniform(prm[1], sg.n2(), sig.total() as usize);
        let row = |p: u32| &g[sig.range(p)];
        let big_g: Vec<u32> = (0..sg.p(s))
            .map(|p| self.sigma_t(f[p as usize], row(p)))
            .collect::<Ev<_>>()?;
        let t0 = self.u1(s, &f)?;
        let kk: Vec<u32> = (0..sg.q(t0))
            .map(|q| {
                let qq = tp(t0, q);
                let b = self.u2(s, &f, qq)?;
                let gv = self.gamma_fam(s, &f, qq, b, &g, &sig)?;
                self.u1(b, &gv)
            })
            .collect::<Ev<_>>()?;
        let tl = self.u1(s, &big_g)?;
        if k == 0 {
            return Ok(holds(tl == self.sigma_t(t0, &kk)?));
        }
        let ql = self.qpos(tl, prm[2])?;
        let (q1, q2) = self.pr_t(t0, &kk, ql)?;
        let b = self.u2(s, &f, q1)?;
        let gv = self.gamma_fam(s, &f, q1, b, &g, &sig)?;
        let lhs2 = self.u2(s, &big_g, ql)?;
        let rhs2 = self.u2(b, &gv, q2)?;
        if k == 1 {
            return Ok(holds(lhs2 == rhs2));
        }
        let pl = self.ppos(lhs2, prm[3])?;
        if lhs2 != rhs2 {
            return Err(Stop::Blocked);
        }
        let pr = tp(rhs2, pl.idx);
        let inner = self.v1(b, &gv, q2, pr)?;
        let lhs = self.v1(s, &f, q1, inner)?;
        let rhs = self.v1(s, &big_g, ql, pl)?;
        let o1 = same(lhs, rhs)?;
        if k == 2 {
            return Ok(o1);
        }
        require(o1)?;
        let l21 = self.v2(s, &f, q1, inner)?;
        let w = self.v2(s, &big_g, ql, pl)?;
        let (w1, w2) = self.pr_t(f[rhs.idx as usize], row(rhs.idx), w)?;
        let o21 = same(l21, w1)?;
        if k == 3 {
            return Ok(o21);
        }
        require(o21)?;
        same(self.v2(b, &gv, q2, pr)?, w2)
    }

    fn unit_o_s(&self, k: u8, prm: &[u64]) -> Ev<Outcome> {
        let d = self.sig.directed1();
        let (s, f) = self.sig.fam.decode(prm[0]);
        let u = self.u1(s, &f)?;
        if k == 0 {
            return Ok(holds(u == f[d.o(s) as usize]));
        }
        let q = self.qpos(u, prm[1])?;
        let a = self.u2(s, &f, q)?;
        let p = tp(a, d.o(a));
        let o1 = same(self.v1(s, &f, q, p)?, tp(s, d.o(s)))?;
        if k == 1 {
            return Ok(o1);
        }
        require(o1)?;
        same(self.v2(s, &f, q, p)?, q)
    }

    fn dir_mul_s(&self, k: u8, prm: &[u64]) -> Ev<Outcome> {
        let d = self.sig.directed1();
        let (s, f) = self.sig.fam.decode(prm[0]);
        let u = self.u1(s, &f)?;
        let q = self.qpos(u, prm[1])?;
        let a = self.u2(s, &f, q)?;
        let p = self.ppos(a, prm[2])?;
        let lhs = down(d, a, p)?;
        let x = self.v1(s, &f, q, p)?;
        let s2 = down(d, s, x)?;
        let f2: Vec<u32> = (0..self.sig.p(s2))
            .map(|p2| Ok(f[oplus(d, s, x, tp(s2, p2))?.idx as usize]))
            .collect::<Ev<_>>()?;
        let y = self.v2(s, &f, q, p)?;
        let rhs = self.u2(s2, &f2, y)?;
        let o3 = holds(lhs == rhs);
        if k == 0 {
            return Ok(o3);
        }
        require(o3)?;
        let pl = self.ppos(lhs, prm[3])?;
        let pr = tp(rhs, pl.idx);
        let l = self.v1(s, &f, q, oplus(d, a, p, pl)?)?;
        let inner = self.v1(s2, &f2, y, pr)?;
        let o1 = same(l, oplus(d, s, x, inner)?)?;
        if k == 1 {
            return Ok(o1);
        }
        require(o1)?;
        same(self.v2(s, &f, q, oplus(d, a, p, pl)?)?, self.v2(s2, &f2, y, pr)?)
    }

    fn unit_o_t(&self, k: u8, prm: &[u64]) -> Ev<Outcome> {
        let d = self.sig.directed2();
        let (s, f) = self.sig.fam.decode(prm[0]);
        let u = self.u1(s, &f)?;
        let o = tp(u, d.o(u));
        let a = self.u2(s, &f, o)?;
        if k == 0 {
            return Ok(holds(a == s));
        }
        let p = self.ppos(a, prm[1])?;
        let x = self.v1(s, &f, o, p)?;
        let o1 = same(x, p)?;
        if k == 1 {
            return Ok(o1);
        }
        require(o1)?;
        let fx = f[x.idx as usize];
        same(self.v2(s, &f, o, p)?, tp(fx, d.o(fx)))
    }

    fn dir_mul_t(&self, k: u8, prm: &[u64]) -> Ev<Outcome> {
        let d = self.sig.directed2();
        let (s, f) = self.sig.fam.decode(prm[0]);
        let t = self.u1(s, &f)?;
        let q = self.qpos(t, prm[1])?;
        let lhs = down(d, t, q)?;
        let b = self.u2(s, &f, q)?;
        let h: Vec<u32> = (0..self.sig.p(b))
            .map(|p| {
                let pp = tp(b, p);
                let x = self.v1(s, &f, q, pp)?;
                let y = self.v2(s, &f, q, pp)?;
                down(d, f[x.idx as usize], y)
            })
            .collect::<Ev<_>>()?;
        let rhs = self.u1(b, &h)?;
        let o1 = holds(lhs == rhs);
        if k == 0 {
            return Ok(o1);
        }
        require(o1)?;
        let q2 = self.qpos(lhs, prm[2])?;
        let qsum = oplus(d, t, q, q2)?;
        let q2r = tp(rhs, q2.idx);
        let l2 = self.u2(s, &f, qsum)?;
        let r2 = self.u2(b, &h, q2r)?;
        let o2 = holds(l2 == r2);
        if k == 1 {
            return Ok(o2);
        }
        require(o2)?;
        let p = self.ppos(l2, prm[3])?;
        let pr = tp(r2, p.idx);
        let lhs = self.v1(s, &f, qsum, p)?;
        let p2 = self.v1(b, &h, q2r, pr)?;
        let rhs = self.v1(s, &f, q, p2)?;
        let o3 = same(lhs, rhs)?;
        if k == 2 {
            return Ok(o3);
        }
        require(o3)?;
        let y = self.v2(s, &f, q, p2)?;
        let z = self.v2(b, &h, q2r, pr)?;
        same(
            self.v2(s, &f, qsum, p)?,
            oplus(d, f[rhs.idx as usize], y, z)?,
        )
    }
}

fn pr_typed(m: &MonadicContainer, s: u32, f: &[u32], p: TPos) -> Ev<(TPos, TPos)> {
    if p.shape != m.sigma_ev(s, f)? {
        return Err(Stop::Blocked);
    }
    let (a, b) = m.pr(s, f, p.idx);
    Ok((tp(s, a), tp(f[a as usize], b)))
}

fn down(d: &DirectedContainer, s: u32, p: TPos) -> Ev<u32> {
    if p.shape != s {
        return Err(Stop::Blocked);
    }
    Ok(d.down(s, p.idx))
}

fn oplus(d: &DirectedContainer, s: u32, p: TPos, p2: TPos) -> Ev<TPos> {
    if p2.shape != down(d, s, p)? {
        return Err(Stop::Blocked);
    }
    Ok(tp(s, d.oplus(s, p.idx, p2.idx)))
}

/// Human-readable bindings for an instance of `def`.
pub(crate) fn render_instance(sig: &LawSignature, def: &EqDef, prm: &[u64]) -> Vec<(String, String)> {
    let l1 = |s: u32| sig.slot1.base().label(s).to_string();
    let l2 = |t: u32| sig.slot2.base().label(t).to_string();
    let mut out = Vec::new();
    let rest = match def.base {
        Base::T => {
            out.push(bind("t", l2(prm[0] as u32)));
            1
        }
        Base::S => {
            out.push(bind("s", l1(prm[0] as u32)));
            1
        }
        Base::SF => {
            let (s, f) = sig.fam.decode(prm[0]);
            out.push(bind("s", l1(s)));
            out.push(bind("f", sig.slot2.base().render_family(&f)));
            1
        }
        Base::SFsG => {
            let s = prm[0] as u32;
            let fs = unrank_uniform(prm[1], sig.n1(), sig.p(s) as usize);
            let total: u32 = fs.iter().map(|&x| sig.p(x)).sum();
            let g = unrank_uniform(prm[2], sig.n2(), total as usize);
            out.push(bind("s", l1(s)));
            out.push(bind("f", sig.slot1.base().render_family(&fs)));
            out.push(bind("g", sig.slot2.base().render_family(&g)));
            3
        }
        Base::SFG => {
            let (s, f) = sig.fam.decode(prm[0]);
            let total: u32 = f.iter().map(|&t| sig.q(t)).sum();
            let g = unrank_uniform(prm[1], sig.n2(), total as usize);
            out.push(bind("s", l1(s)));
            out.push(bind("f", sig.slot2.base().render_family(&f)));
            out.push(bind("g", sig.slot2.base().render_family(&g)));
            2
        }
    };
    let (mut nq, mut np) = (0, 0);
    for (ix, v) in def.ix.iter().zip(&prm[rest..]) {
        let name = match ix {
            Ix::Q => {
                nq += 1;
                if nq == 1 { "q" } else { "q'" }
            }
            Ix::P => {
                np += 1;
                if np == 1 { "p" } else { "p'" }
            }
        };
        out.push(bind(name, v));
    }
    out
}

fn check_defs(law: &DistLawData, subject: &str) -> EquationReport {
    let sig = &law.sig;
    let defs = equation_defs(sig.kind);
    let results: Vec<EquationResult> = defs
        .par_iter()
        .map(|def| {
            let ev = Evaluator {
                sig,
                tables: &law.tables,
            };
            let mut t = Tally::default();
            let skipped = for_each_instance(sig, def, &mut |prm| {
                t.record(ev.eval(def, prm), || render_instance(sig, def, prm));
            });
            let mut r = match skipped {
                Ok(n) => {
                    t.deferred += n;
                    t.finish(def.name)
                }
                Err(e) => {
                    let mut r = t.finish(def.name);
                    r.note = Some(e.to_string());
                    r
                }
            };
            if def.eq == Eq::UnitOS(0) {
                r.note = Some("determines u1".into());
            }
            r
        })
        .collect();
    EquationReport::new(subject, results)
}

pub fn check_law(law: &DistLawData) -> EquationReport {
    let subject = format!("{} law", law.kind());
    check_defs(law, &subject)
}

fn expect_kind(law: &DistLawData, kind: LawKind) -> Result<()> {
    if law.kind() != kind {
        return Err(Error::Rejected(format!("expected a {kind} law, got {}", law.kind())));
    }
    Ok(())
}

pub fn check_mnd_mnd(law: &DistLawData) -> Result<EquationReport> {
    expect_kind(law, LawKind::MndMnd)?;
    Ok(check_law(law))
}

pub fn check_mnd_dir(law: &DistLawData) -> Result<EquationReport> {
    expect_kind(law, LawKind::MndDir)?;
    Ok(check_law(law))
}

pub fn check_dir_mnd(law: &DistLawData) -> Result<EquationReport> {
    expect_kind(law, LawKind::DirMnd)?;
    Ok(check_law(law))
}

/// `γ` on a value of `slot1 (slot2 X)`.
pub fn gamma_value(law: &DistLawData, v: &Value) -> Result<Value> {
    let (c1, c2) = (law.slot1().base(), law.slot2().base());
    let (s, cs) = node_of(c1, v)?;
    let mut f = Vec::with_capacity(cs.len());
    let mut fills = Vec::with_capacity(cs.len());
    for ch in cs {
        let (t, fill) = node_of(c2, ch)?;
        f.push(t);
        fills.push(fill);
    }
    if law.slot1().base().fuel().is_some() {
        return Err(Error::Unsupported("γ needs a finite slot 1".into()));
    }
    let t = law.u1(s, &f);
    let children = (0..c2.pos(t))
        .map(|q| {
            let a = law.u2(s, &f, q);
            let fill = (0..c1.pos(a))
                .map(|p| {
                    let x = law.v1(s, &f, q, p);
                    let y = law.v2(s, &f, q, p);
                    fills[x as usize][y as usize].clone()
                })
                .collect();
            Value::Node(a, fill)
        })
        .collect();
    Ok(Value::Node(t, children))
}

/// `γ_X` on the composite extensions: an element of `⟦slot1 ∘ slot2⟧ X`
/// goes to `⟦slot2 ∘ slot1⟧ X`.
pub fn law_gamma(law: &DistLawData, x: u32, e: &ExtElement) -> Result<ExtElement> {
    if law.kind() != LawKind::MndMnd {
        return Err(Error::Rejected("γ is defined for monad-monad laws".into()));
    }
    let (c1, c2) = (law.slot1().base(), law.slot2().base());
    let src = compose_containers(c1, c2)?;
    let dst = compose_containers(c2, c1)?;
    e.validate(src.container(), x)?;
    let (s, f) = src.decode(e.shape);
    let children = f
        .iter()
        .enumerate()
        .map(|(p, &t)| {
            let fill = (0..c2.pos(t))
                .map(|q| Value::Leaf(e.fill[src.join_pos(e.shape, p as u32, q) as usize]))
                .collect();
            Value::Node(t, fill)
        })
        .collect();
    let out = gamma_value(law, &Value::Node(s, children))?;
    let (t, cs) = out.shape()?;
    let mut g = Vec::new();
    let mut fill = Vec::new();
    for ch in cs {
        let (a, leaves) = ch.shape()?;
        g.push(a);
        for l in leaves {
            if let Value::Leaf(v) = l {
                fill.push(*v);
            }
        }
    }
    Ok(ExtElement {
        shape: dst.encode(t, &g),
        fill,
    })
}

fn map_leaves(v: &Value, h: &DepTable) -> Value {
    match v {
        Value::Leaf(x) => Value::Leaf(h.get(*x as usize)),
        Value::Node(s, cs) => Value::Node(*s, cs.iter().map(|c| map_leaves(c, h)).collect()),
    }
}

pub const BECK_EQUATIONS: [&str; 5] = [
    "unit-inner",
    "unit-outer",
    "mul-inner",
    "mul-outer",
    "naturality",
];

/// Checks the four Beck diagrams and naturality for the γ of a monad-monad
/// law, pointwise at each `|X|` in `sizes`. Naturality is checked for all
/// maps between sets of size at most 2.
pub fn beck_oracle(law: &DistLawData, sizes: &[u32]) -> Result<EquationReport> {
    expect_kind(law, LawKind::MndMnd)?;
    let inner = law.sig.monadic1();
    let outer = law.sig.monadic2();
    if !inner.base().is_finite() || !outer.base().is_finite() {
        return Err(Error::Rejected("the Beck oracle needs finite slots".into()));
    }
    let (ci, co) = (inner.base(), outer.base());
    let gamma = |v: &Value| gamma_value(law, v);
    let mut t = vec![Tally::default(); 5];
    let mut record = |k: usize, pw: crate::monadic::Pointwise, x: u32| {
        t[k].checked += pw.checked;
        if let (Some(el), None) = (pw.failure, &t[k].fail) {
            t[k].fail = Some(crate::monadic::Counterexample {
                bindings: vec![bind("|X|", x), bind("element", el)],
            });
        }
    };
    for &x in sizes {
        // γ ∘ η^I_O = O η^I
        let l = |v: &Value| gamma(&eta(inner, v.clone()));
        let r = |v: &Value| fmap_at(v, 1, &|w| Ok(eta(inner, w.clone())));
        record(0, check_pointwise(&[co], x, &l, &r)?, x);
        // γ ∘ I η^O = η^O_I
        let l = |v: &Value| gamma(&fmap_at(v, 1, &|w| Ok(eta(outer, w.clone())))?);
        let r = |v: &Value| Ok(eta(outer, v.clone()));
        record(1, check_pointwise(&[ci], x, &l, &r)?, x);
        // O μ^I ∘ γ_I ∘ I γ = γ ∘ μ^I_O
        let l = |v: &Value| {
            let w = gamma(&fmap_at(v, 1, &gamma)?)?;
            fmap_at(&w, 1, &|z| mu(inner, z))
        };
        let r = |v: &Value| gamma(&mu(inner, v)?);
        record(2, check_pointwise(&[ci, ci, co], x, &l, &r)?, x);
        // μ^O_I ∘ O γ ∘ γ_O = γ ∘ I μ^O
        let l = |v: &Value| {
            let w = fmap_at(&gamma(v)?, 1, &gamma)?;
            mu(outer, &w)
        };
        let r = |v: &Value| gamma(&fmap_at(v, 1, &|z| mu(outer, z))?);
        record(3, check_pointwise(&[ci, co, co], x, &l, &r)?, x);
    }
    for xs in 0..=2u32 {
        for ys in 0..=2u32 {
            let elems = crate::monadic::layered_elements(&[ci, co], xs);
            for h in crate::kernel::enumerate_dep_maps(&vec![ys; xs as usize]) {
                for e in &elems {
                    t[4].checked += 1;
                    let l = gamma(&map_leaves(e, &h))?;
                    let r = map_leaves(&gamma(e)?, &h);
                    if l != r && t[4].fail.is_none() {
                        t[4].fail = Some(crate::monadic::Counterexample {
                            bindings: vec![bind("element", e), bind("h", render_list(h.entries()))],
                        });
                    }
                }
            }
        }
    }
    let eqs = t
        .into_iter()
        .zip(BECK_EQUATIONS)
        .map(|(t, n)| t.finish(n))
        .collect();
    Ok(EquationReport::new("Beck diagrams", eqs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn writer(n: u32) -> MonadicContainer {
        MonadicContainer::tabulate(
            Container::from_counts(vec![1; n as usize]),
            0,
            move |a, f| Some((a + f[0]) % n),
            |_, _, _| (0, 0),
        )
        .unwrap()
    }

    fn maybe() -> MonadicContainer {
        MonadicContainer::tabulate(
            Container::from_counts(vec![1, 0]),
            0,
            |s, f| Some(if s == 0 { f[0] } else { 1 }),
            |_, _, p| (0, p),
        )
        .unwrap()
    }

    fn example_exception_law(outer: MonadicContainer) -> DistLawData {
        let iota = outer.iota();
        DistLawData::from_fns(
            LawKind::MndMnd,
            Slot::Monadic(maybe()),
            Slot::Monadic(outer),
            |s, f| if s == 0 { f[0] } else { iota },
            move |s, _, _| s,
            |_, _, _, _| 0,
            |_, _, q, _| q,
        )
        .unwrap()
    }

    #[test]
    fn exception_law_over_writer_verifies() {
        let law = example_exception_law(writer(2));
        let r = check_law(&law);
        assert!(r.is_verified(), "{}", r.render_text());
        assert_eq!(r.equations.len(), 18);
        assert!(beck_oracle(&law, &[0, 1, 2]).unwrap().is_verified());
    }

    #[test]
    fn equation_counts() {
        assert_eq!(LawKind::MndMnd.equations().len(), 18);
        assert_eq!(LawKind::MndDir.equations().len(), 13);
        assert_eq!(LawKind::DirMnd.equations().len(), 16);
    }

    #[test]
    fn kind_must_match_slots() {
        let err = LawSignature::new(LawKind::MndDir, Slot::Monadic(maybe()), Slot::Monadic(maybe()));
        assert!(matches!(err, Err(Error::Rejected(_))));
    }
}
