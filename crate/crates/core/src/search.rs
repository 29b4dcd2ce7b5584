//! Exhaustive search for law tables, bounded refutation over fueled
//! containers, and the constant-counting obstruction to monad-monad laws.
//!
//! The search assigns table entries depth first in variable order (`u1`,
//! `u2`, `v1`, `v2`, each in key order). Every equation instance watches
//! the first unassigned entry it reads; assigning that entry re-evaluates
//! the instance, which then either settles or moves to its next missing
//! entry.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::{bind, holds, render_list, Outcome, Stop, Tally};
use crate::kernel::DepMaps;
use crate::laws::{
    equation_defs, for_each_instance, split_var, DistLawData, EqDef, Evaluator, LawKind,
    LawSignature, LawTables, Slot,
};
use crate::monadic::{EquationReport, EquationResult, MonadicContainer};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone)]
pub struct SearchProblem {
    pub signature: LawSignature,
    /// Node limit: one node per tentative assignment.
    pub budget: u64,
}

impl SearchProblem {
    pub fn new(kind: LawKind, slot1: Slot, slot2: Slot, budget: u64) -> Result<Self> {
        Ok(SearchProblem {
            signature: LawSignature::new(kind, slot1, slot2)?,
            budget,
        })
    }

    pub fn fuel(&self) -> Option<u32> {
        self.signature.slot1().base().fuel()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchVerdict {
    /// Every law, sorted by `DistLawData::flat`.
    Complete { laws: Vec<DistLawData>, nodes: u64 },
    /// No assignment of the in-fuel fragment satisfies the in-fuel
    /// instances, so no law exists.
    BoundedUnsat { fuel: Option<u32>, instances: u64, nodes: u64 },
    /// An assignment of the in-fuel fragment satisfying every in-fuel
    /// instance. `u2` entries equal to the slot-1 shape count point beyond
    /// the fuel bound.
    Consistent { fuel: Option<u32>, partial: LawTables, nodes: u64 },
    BudgetExceeded { nodes: u64, found: usize },
}

impl SearchVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            SearchVerdict::Complete { .. } => "complete",
            SearchVerdict::BoundedUnsat { .. } => "bounded-unsat",
            SearchVerdict::Consistent { .. } => "consistent",
            SearchVerdict::BudgetExceeded { .. } => "budget-exceeded",
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            SearchVerdict::Complete { nodes, .. }
            | SearchVerdict::BoundedUnsat { nodes, .. }
            | SearchVerdict::Consistent { nodes, .. }
            | SearchVerdict::BudgetExceeded { nodes, .. } => *nodes,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    All,
    First,
}

struct Solver<'a> {
    sig: &'a LawSignature,
    defs: Vec<&'static EqDef>,
    /// `(def index, parameters)` per watched instance.
    instances: Vec<(usize, Vec<u64>)>,
    watch: Vec<Vec<u32>>,
    trail: Vec<u32>,
    tables: LawTables,
    forced: Vec<Option<u32>>,
    sentinel: bool,
    nodes: u64,
    budget: u64,
    static_conflict: bool,
    instance_count: u64,
}

enum Dfs {
    Done,
    Stopped,
    Budget,
}

impl<'a> Solver<'a> {
    fn new(sig: &'a LawSignature, sentinel: bool, budget: u64) -> Result<Self> {
        let defs = equation_defs(sig.kind());
        let n = sig.var_count();
        let mut s = Solver {
            sig,
            defs,
            instances: Vec::new(),
            watch: vec![Vec::new(); n],
            trail: Vec::new(),
            tables: LawTables::empty(sig),
            forced: vec![None; n],
            sentinel,
            nodes: 0,
            budget,
            static_conflict: false,
            instance_count: 0,
        };
        s.force_units();
        s.collect_instances()?;
        Ok(s)
    }

    fn force(&mut self, table: usize, key: usize, v: u32) {
        let var = self.sig.var(table, key) as usize;
        match self.forced[var] {
            Some(w) if w != v => self.static_conflict = true,
            _ => self.forced[var] = Some(v),
        }
    }

    /// Shape entries fixed by the unit equations.
    fn force_units(&mut self) {
        let sig = self.sig;
        let fam = sig.families().clone();
        let unit1 = |this: &mut Self, m: &MonadicContainer| {
            let iota = m.iota();
            for t in 0..sig.n2() {
                let fi = fam.index(iota, &vec![t; sig.p(iota) as usize]);
                this.force(0, fi as usize, t);
                for q in 0..sig.q(t) {
                    this.force(1, sig.u2_key(fi, q), iota);
                }
            }
        };
        match (sig.slot1(), sig.slot2()) {
            (Slot::Monadic(m1), Slot::Monadic(m2)) => {
                unit1(self, m1);
                let it = m2.iota();
                for s in 0..sig.n1() {
                    let fi = fam.index(s, &vec![it; sig.p(s) as usize]);
                    self.force(0, fi as usize, it);
                    for q in 0..sig.q(it) {
                        self.force(1, sig.u2_key(fi, q), s);
                    }
                }
            }
            (Slot::Directed(d), Slot::Monadic(m2)) => {
                for fi in 0..fam.total() {
                    let (s, f) = fam.decode(fi);
                    self.force(0, fi as usize, f[d.o(s) as usize]);
                }
                let it = m2.iota();
                for s in 0..sig.n1() {
                    let fi = fam.index(s, &vec![it; sig.p(s) as usize]);
                    for q in 0..sig.q(it) {
                        self.force(1, sig.u2_key(fi, q), s);
                    }
                }
            }
            (Slot::Monadic(m1), Slot::Directed(_)) => unit1(self, m1),
            (Slot::Directed(_), Slot::Directed(_)) => unreachable!("rejected by the signature"),
        }
    }

    fn collect_instances(&mut self) -> Result<()> {
        let ev = Evaluator {
            sig: self.sig,
            tables: &self.tables,
        };
        let mut instances = Vec::new();
        let mut watch: Vec<(u32, u32)> = Vec::new();
        let mut conflict = false;
        let mut count = 0u64;
        for (di, def) in self.defs.iter().enumerate() {
            for_each_instance(self.sig, def, &mut |prm| {
                count += 1;
                match ev.eval(def, prm) {
                    Err(Stop::Pending(v)) => {
                        watch.push((v, instances.len() as u32));
                        instances.push((di, prm.to_vec()));
                    }
                    Ok(Outcome::Fails) | Err(Stop::Blocked) => conflict = true,
                    _ => {}
                }
            })?;
        }
        for (v, i) in watch {
            self.watch[v as usize].push(i);
        }
        self.instances = instances;
        self.instance_count = count;
        self.static_conflict |= conflict;
        Ok(())
    }

    /// Value range of `var` under the current assignment, or None if the
    /// entry is not live.
    fn domain(&self, var: u32) -> Option<std::ops::Range<u32>> {
        let sig = self.sig;
        let (table, key) = split_var(sig, var);
        let (mq, mp) = sig.max_qp();
        let t = &self.tables.t;
        match table {
            0 => Some(0..sig.n2()),
            1 => {
                let fi = key / mq as usize;
                let u = t[0][fi]?;
                if (key % mq as usize) as u32 >= sig.q(u) {
                    return None;
                }
                let extra = u32::from(self.sentinel);
                Some(0..sig.n1() + extra)
            }
            _ => {
                let u2k = key / mp as usize;
                let p = (key % mp as usize) as u32;
                let a = t[1][u2k]?;
                if a >= sig.n1() || p >= sig.p(a) {
                    return None;
                }
                let fi = (u2k / mq as usize) as u64;
                let (s, f) = sig.families().decode(fi);
                if table == 2 {
                    Some(0..sig.p(s))
                } else {
                    let x = t[2][key]?;
                    Some(0..sig.q(f[x as usize]))
                }
            }
        }
    }

    fn next_live(&self, from: u32) -> Option<u32> {
        (from..self.watch.len() as u32).find(|&v| self.domain(v).is_some())
    }

    /// Re-evaluates the instances watching `var`; false on a conflict.
    fn propagate(&mut self, var: u32) -> bool {
        let mut i = 0;
        while i < self.watch[var as usize].len() {
            let inst = self.watch[var as usize][i];
            let (di, prm) = &self.instances[inst as usize];
            let ev = Evaluator {
                sig: self.sig,
                tables: &self.tables,
            };
            match ev.eval(self.defs[*di], prm) {
                Err(Stop::Pending(j)) => {
                    self.watch[j as usize].push(inst);
                    self.trail.push(j);
                }
                Ok(Outcome::Fails) | Err(Stop::Blocked) => return false,
                _ => {}
            }
            i += 1;
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let j = self.trail.pop().expect("nonempty");
            self.watch[j as usize].pop();
        }
    }

    fn run(&mut self, mode: Mode, out: &mut Vec<LawTables>) -> Dfs {
        if self.static_conflict {
            return Dfs::Done;
        }
        struct Frame {
            var: u32,
            next: u32,
            end: u32,
            mark: usize,
        }
        let mut stack: Vec<Frame> = Vec::new();
        let frame = |this: &Self, var: u32| {
            let r = this.domain(var).expect("live");
            let (next, end) = match this.forced[var as usize] {
                Some(v) if r.contains(&v) => (v, v + 1),
                Some(_) => (0, 0),
                None => (r.start, r.end),
            };
            Frame {
                var,
                next,
                end,
                mark: this.trail.len(),
            }
        };
        match self.next_live(0) {
            None => {
                out.push(self.tables.clone());
                return if mode == Mode::First { Dfs::Stopped } else { Dfs::Done };
            }
            Some(v) => stack.push(frame(self, v)),
        }
        while let Some(top) = stack.last_mut() {
            let var = top.var;
            let mark = top.mark;
            if top.next >= top.end {
                self.undo(mark);
                self.tables.set_var(self.sig, var, None);
                stack.pop();
                continue;
            }
            let v = top.next;
            top.next += 1;
            self.undo(mark);
            self.tables.set_var(self.sig, var, Some(v));
            self.nodes += 1;
            if self.nodes > self.budget {
                return Dfs::Budget;
            }
            if !self.propagate(var) {
                continue;
            }
            match self.next_live(var + 1) {
                None => {
                    out.push(self.tables.clone());
                    if mode == Mode::First {
                        return Dfs::Stopped;
                    }
                }
                Some(n) => stack.push(frame(self, n)),
            }
        }
        Dfs::Done
    }
}

/// Every law of the problem's kind between its two finite slots.
pub fn search_laws(p: &SearchProblem) -> Result<SearchVerdict> {
    let sig = &p.signature;
    if !sig.slot1().base().is_finite() {
        return Err(Error::Unsupported(
            "complete search needs finite slots; use refute_bounded".into(),
        ));
    }
    let mut solver = Solver::new(sig, false, p.budget)?;
    let mut found = Vec::new();
    match solver.run(Mode::All, &mut found) {
        Dfs::Budget => Ok(SearchVerdict::BudgetExceeded {
            nodes: solver.nodes,
            found: found.len(),
        }),
        _ => {
            let mut laws = found
                .into_iter()
                .map(|t| DistLawData::from_tables(sig.clone(), t))
                .collect::<Result<Vec<_>>>()?;
            laws.sort_by_key(|l| l.flat());
            laws.dedup();
            Ok(SearchVerdict::Complete {
                laws,
                nodes: solver.nodes,
            })
        }
    }
}

/// Looks for one assignment of the in-fuel fragment. Instances that
/// multiply beyond the fuel bound, or read a `u2` entry pointing there,
/// are not checked, so `BoundedUnsat` is a proof of nonexistence while
/// `Consistent` is only evidence.
pub fn refute_bounded(p: &SearchProblem) -> Result<SearchVerdict> {
    let sig = &p.signature;
    let sentinel = !sig.slot1().base().is_finite();
    let mut solver = Solver::new(sig, sentinel, p.budget)?;
    let mut found = Vec::new();
    let fuel = p.fuel();
    Ok(match solver.run(Mode::First, &mut found) {
        Dfs::Budget => SearchVerdict::BudgetExceeded {
            nodes: solver.nodes,
            found: 0,
        },
        _ => match found.pop() {
            Some(partial) => SearchVerdict::Consistent {
                fuel,
                partial,
                nodes: solver.nodes,
            },
            None => SearchVerdict::BoundedUnsat {
                fuel,
                instances: solver.instance_count,
                nodes: solver.nodes,
            },
        },
    })
}

/// Every total table assignment in canonical order, without checking any
/// equation; stops after `limit` candidates.
pub fn enumerate_candidates(sig: &LawSignature, limit: usize) -> Result<Vec<DistLawData>> {
    let mut out = Vec::new();
    let mut tables = LawTables::empty(sig);
    fn go(
        sig: &LawSignature,
        tables: &mut LawTables,
        fi: u64,
        out: &mut Vec<DistLawData>,
        limit: usize,
    ) -> Result<()> {
        if out.len() >= limit {
            return Ok(());
        }
        if fi == sig.families().total() {
            out.push(DistLawData::from_tables(sig.clone(), tables.clone())?);
            return Ok(());
        }
        let (s, f) = sig.families().decode(fi);
        for t in 0..sig.n2() {
            tables.t[0][fi as usize] = Some(t);
            let q = sig.q(t);
            for u2 in DepMaps::new(&vec![sig.n1(); q as usize]) {
                // v entries per (q, p): v1 over P s, then v2 over Q (f v1).
                let mut slots = Vec::new();
                for (qi, &a) in u2.iter().enumerate() {
                    for pi in 0..sig.p(a) {
                        slots.push((qi as u32, pi));
                    }
                }
                let mut dims = Vec::new();
                for _ in &slots {
                    dims.push(sig.p(s));
                }
                for v1 in DepMaps::new(&dims) {
                    let vdims: Vec<u32> = v1.iter().map(|&x| sig.q(f[x as usize])).collect();
                    for v2 in DepMaps::new(&vdims) {
                        for (qi, &a) in u2.iter().enumerate() {
                            tables.t[1][sig.u2_key(fi, qi as u32)] = Some(a);
                        }
                        for (k, &(qi, pi)) in slots.iter().enumerate() {
                            let key = sig.v_key(fi, qi, pi);
                            tables.t[2][key] = Some(v1[k]);
                            tables.t[3][key] = Some(v2[k]);
                        }
                        go(sig, tables, fi + 1, out, limit)?;
                        for &(qi, pi) in &slots {
                            let key = sig.v_key(fi, qi, pi);
                            tables.t[2][key] = None;
                            tables.t[3][key] = None;
                        }
                        if out.len() >= limit {
                            return Ok(());
                        }
                    }
                }
            }
            for qi in 0..q {
                tables.t[1][sig.u2_key(fi, qi)] = None;
            }
        }
        tables.t[0][fi as usize] = None;
        Ok(())
    }
    go(sig, &mut tables, 0, &mut out, limit)?;
    Ok(out)
}

/// `P ι` has exactly one position.
pub fn check_singleton(m: &MonadicContainer) -> bool {
    m.base().pos(m.iota()) == 1
}

/// Shapes with no positions.
pub fn constant_shapes(m: &MonadicContainer) -> Vec<u32> {
    let c = m.base();
    (0..c.shape_count()).filter(|&s| c.pos(s) == 0).collect()
}

/// `P s` is nonempty and overwriting `f` with `ι` at any single position
/// makes `σ` return `ι`. Multiplications beyond the fuel bound count as
/// failures.
pub fn is_s3_witness(m: &MonadicContainer, s: u32, f: &[u32]) -> bool {
    let n = m.base().pos(s);
    n > 0
        && (0..n).all(|p| {
            let mut g = f.to_vec();
            g[p as usize] = m.iota();
            m.sigma(s, &g) == Some(m.iota())
        })
}

fn s3_witnesses(m: &MonadicContainer) -> impl Iterator<Item = (u32, Vec<u32>)> + '_ {
    let fam = m.families();
    (0..fam.total())
        .map(|i| fam.decode(i))
        .filter(|(s, f)| is_s3_witness(m, *s, f))
}

/// The first witness in family order.
pub fn check_s3(m: &MonadicContainer) -> Option<(u32, Vec<u32>)> {
    s3_witnesses(m).next()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum NogoCertificate {
    Applicable {
        shape: u32,
        family: Vec<u32>,
        positions: (u32, u32),
        constants: (u32, u32),
    },
    NotApplicable { reason: String },
}

/// Decides the hypotheses of the constant-counting obstruction: slot 1 has
/// the singleton property and an S3 witness with two distinct positions,
/// and slot 2 has two distinct constant shapes. When they hold there is no
/// monad-monad law of `m1` over `m2`.
pub fn nogo_certificate(m1: &MonadicContainer, m2: &MonadicContainer) -> NogoCertificate {
    let na = |r: &str| NogoCertificate::NotApplicable { reason: r.into() };
    if !check_singleton(m1) {
        return na("slot 1 lacks the singleton property");
    }
    let Some((shape, family)) = s3_witnesses(m1).find(|(s, _)| m1.base().pos(*s) >= 2) else {
        return na("no S3 witness shape with two distinct positions");
    };
    let consts = constant_shapes(m2);
    if consts.len() < 2 {
        return na(if consts.is_empty() {
            "slot 2 has no constant shapes"
        } else {
            "slot 2 has only one constant shape"
        });
    }
    NogoCertificate::Applicable {
        shape,
        family,
        positions: (0, 1),
        constants: (consts[0], consts[1]),
    }
}

/// `σ s f = s` for every constant shape `s`.
pub fn check_left_zero(m: &MonadicContainer) -> EquationReport {
    let mut t = Tally::default();
    for s in constant_shapes(m) {
        let ev = m.sigma(s, &[]).map(|v| holds(v == s)).ok_or(Stop::Deferred);
        t.record(ev, || vec![bind("s", m.base().label(s))]);
    }
    EquationReport::new("left zeros", vec![t.finish("left-zero")])
}

/// `u1 s δ = t` where `δ` is `t` at one position of an S3 witness shape
/// `s` and `ι` elsewhere, for every `t` and position. None when slot 1 has
/// no S3 witness or lacks the singleton property.
pub fn check_composite_s3(law: &DistLawData) -> Option<EquationResult> {
    let (Slot::Monadic(m1), Slot::Monadic(m2)) = (law.slot1(), law.slot2()) else {
        return None;
    };
    if law.kind() != LawKind::MndMnd || !check_singleton(m1) {
        return None;
    }
    let mut t = Tally::default();
    let mut any = false;
    for (s, f) in s3_witnesses(m1) {
        any = true;
        for target in 0..m2.base().shape_count() {
            for p in 0..m1.base().pos(s) {
                let mut delta = vec![m2.iota(); m1.base().pos(s) as usize];
                delta[p as usize] = target;
                t.record(Ok(holds(law.u1(s, &delta) == target)), || {
                    vec![
                        bind("s", m1.base().label(s)),
                        bind("f", render_list(&f)),
                        bind("t", m2.base().label(target)),
                        bind("p", p),
                    ]
                });
            }
        }
    }
    any.then(|| t.finish("composite-s3"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::check_law;
    use crate::zoo::{exception, exception_law, list, reader, reader_law, state, writer, Monoid};

    fn mnd(a: MonadicContainer, b: MonadicContainer) -> SearchProblem {
        SearchProblem::new(LawKind::MndMnd, Slot::Monadic(a), Slot::Monadic(b), DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn unique_exception_law() {
        let z2 = writer(&Monoid::cyclic(2));
        let v = search_laws(&mnd(exception(1), z2.clone())).unwrap();
        let SearchVerdict::Complete { laws, .. } = v else { panic!("{v:?}") };
        assert_eq!(laws.len(), 1);
        assert_eq!(laws[0], exception_law(1, z2).unwrap());
    }

    #[test]
    fn unique_reader_law() {
        let z2 = writer(&Monoid::cyclic(2));
        let v = search_laws(&mnd(z2.clone(), reader(2))).unwrap();
        let SearchVerdict::Complete { laws, .. } = v else { panic!("{v:?}") };
        assert_eq!(laws, vec![reader_law(z2, 2).unwrap()]);
    }

    #[test]
    fn pruned_search_matches_brute_force() {
        let z2 = writer(&Monoid::cyclic(2));
        let p = mnd(z2.clone(), z2);
        let all = enumerate_candidates(&p.signature, usize::MAX).unwrap();
        assert_eq!(all.len(), 256);
        let mut brute: Vec<_> = all.into_iter().filter(|l| check_law(l).is_verified()).collect();
        brute.sort_by_key(|l| l.flat());
        let SearchVerdict::Complete { laws, .. } = search_laws(&p).unwrap() else { panic!() };
        assert_eq!(laws, brute);
    }

    #[test]
    fn s3_witnesses() {
        assert_eq!(check_s3(&list(3).unwrap()), Some((1, vec![0])));
        assert_eq!(check_s3(&writer(&Monoid::cyclic(2))), Some((0, vec![0])));
        let st = state(2).unwrap();
        // shapes: [0,0] [0,1] [1,0] [1,1]; identity is 1
        assert_eq!(check_s3(&st), Some((1, vec![0, 1])));
        assert!(is_s3_witness(&st, 1, &[1, 1]));
        assert!(!check_singleton(&st));
    }

    #[test]
    fn nogo_examples() {
        let l = list(3).unwrap();
        assert!(matches!(nogo_certificate(&l, &exception(2)), NogoCertificate::Applicable { .. }));
        assert!(matches!(nogo_certificate(&l, &exception(1)), NogoCertificate::NotApplicable { .. }));
        assert!(matches!(
            nogo_certificate(&writer(&Monoid::cyclic(2)), &exception(2)),
            NogoCertificate::NotApplicable { .. }
        ));
        assert_eq!(constant_shapes(&exception(2)), vec![1, 2]);
        assert_eq!(constant_shapes(&l), vec![0]);
        assert!(check_left_zero(&exception(2)).is_verified());
        assert!(check_left_zero(&l).is_verified());
    }

    #[test]
    fn refutation_on_lists() {
        let p = mnd(list(3).unwrap(), exception(1));
        assert!(matches!(refute_bounded(&p).unwrap(), SearchVerdict::Consistent { .. }));
        let p = mnd(list(3).unwrap(), exception(2));
        assert!(matches!(refute_bounded(&p).unwrap(), SearchVerdict::BoundedUnsat { .. }));
    }

    #[test]
    fn found_laws_satisfy_composite_s3() {
        let z2 = writer(&Monoid::cyclic(2));
        let mut checked = 0;
        for p in [mnd(z2.clone(), z2.clone()), mnd(z2.clone(), exception(2)), mnd(z2, reader(2))] {
            let SearchVerdict::Complete { laws, .. } = search_laws(&p).unwrap() else { panic!() };
            for l in &laws {
                if let Some(r) = check_composite_s3(l) {
                    assert_eq!(r.status, crate::monadic::Status::Verified, "{r:?}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }
}
