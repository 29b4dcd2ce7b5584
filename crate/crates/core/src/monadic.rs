//! Monadic containers `(S ◁ P, ι, σ, pr)`, their axiom checker, the monad
//! they denote on finite sets, and Σ-universe detection.

use serde::Serialize;

use crate::container::{Container, SigmaIndex};
use crate::error::{Error, Result};
use crate::eval::{bind, holds, render_list, same, tp, Ev, Outcome, Stop, Tally};
use crate::kernel::{pow_checked, unrank_uniform, FamilySpace};

/// Tabulated monadic structure. `sigma[i]` and `pr[i]` are indexed by the
/// family index of `(s, f)` with `f : P s -> S`; a `None` sigma entry means
/// the result lies beyond the fuel bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonadicContainer {
    base: Container,
    iota: u32,
    families: FamilySpace,
    sigma: Vec<Option<u32>>,
    pr: Vec<Vec<(u32, u32)>>,
}

impl MonadicContainer {
    pub fn tabulate<F, G>(base: Container, iota: u32, sigma: F, pr: G) -> Result<Self>
    where
        F: Fn(u32, &[u32]) -> Option<u32>,
        G: Fn(u32, &[u32], u32) -> (u32, u32),
    {
        let families = base.families(base.shape_count())?;
        let mut st = Vec::with_capacity(families.total() as usize);
        let mut pt = Vec::with_capacity(families.total() as usize);
        for i in 0..families.total() {
            let (s, f) = families.decode(i);
            let out = sigma(s, &f);
            let row = match out {
                Some(o) if o < base.shape_count() => (0..base.pos(o)).map(|p| pr(s, &f, p)).collect(),
                _ => Vec::new(),
            };
            st.push(out);
            pt.push(row);
        }
        MonadicContainer::from_tables(base, iota, st, pt)
    }

    pub fn from_tables(
        base: Container,
        iota: u32,
        sigma: Vec<Option<u32>>,
        pr: Vec<Vec<(u32, u32)>>,
    ) -> Result<Self> {
        let n = base.shape_count();
        if iota >= n {
            return Err(Error::invalid("iota", format!("{iota} is not a shape")));
        }
        let families = base.families(n)?;
        if sigma.len() as u64 != families.total() || pr.len() != sigma.len() {
            return Err(Error::invalid(
                "sigma",
                format!("expected {} rows", families.total()),
            ));
        }
        for (i, (out, row)) in sigma.iter().zip(&pr).enumerate() {
            let (s, f) = families.decode(i as u64);
            match out {
                None => {
                    if base.is_finite() {
                        return Err(Error::invalid(
                            format!("sigma[{i}]"),
                            "missing entry in a finite container",
                        ));
                    }
                    if !row.is_empty() {
                        return Err(Error::invalid(format!("pr[{i}]"), "rows for an undefined sigma"));
                    }
                }
                Some(o) => {
                    if *o >= n {
                        return Err(Error::invalid(format!("sigma[{i}]"), format!("{o} is not a shape")));
                    }
                    if row.len() != base.pos(*o) as usize {
                        return Err(Error::invalid(
                            format!("pr[{i}]"),
                            format!("{} entries for {} positions", row.len(), base.pos(*o)),
                        ));
                    }
                    for (p, &(p1, p2)) in row.iter().enumerate() {
                        if p1 >= base.pos(s) || p2 >= base.pos(f[p1 as usize]) {
                            return Err(Error::invalid(
                                format!("pr[{i}][{p}]"),
                                format!("({p1},{p2}) out of range"),
                            ));
                        }
                    }
                }
            }
        }
        Ok(MonadicContainer {
            base,
            iota,
            families,
            sigma,
            pr,
        })
    }

    pub fn base(&self) -> &Container {
        &self.base
    }

    pub fn iota(&self) -> u32 {
        self.iota
    }

    pub fn families(&self) -> &FamilySpace {
        &self.families
    }

    pub fn sigma(&self, s: u32, f: &[u32]) -> Option<u32> {
        self.sigma[self.families.index(s, f) as usize]
    }

    pub fn sigma_row(&self, index: u64) -> Option<u32> {
        self.sigma[index as usize]
    }

    pub fn pr_row(&self, index: u64) -> &[(u32, u32)] {
        &self.pr[index as usize]
    }

    /// `pr {s} {f} p`; `p` must be a position of `σ s f`.
    pub fn pr(&self, s: u32, f: &[u32], p: u32) -> (u32, u32) {
        self.pr[self.families.index(s, f) as usize][p as usize]
    }

    pub(crate) fn sigma_ev(&self, s: u32, f: &[u32]) -> Ev<u32> {
        self.sigma(s, f).ok_or(Stop::Deferred)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub bindings: Vec<(String, String)>,
}

impl std::fmt::Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .bindings
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "counterexample")]
pub enum Status {
    Verified,
    BoundedVerified,
    Refuted(Counterexample),
    /// Some instances were ill-typed because a governing equation failed.
    Blocked,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquationResult {
    pub name: String,
    pub checked: u64,
    pub deferred: u64,
    pub blocked: u64,
    #[serde(flatten)]
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Verified,
    BoundedVerified,
    Refuted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquationReport {
    pub subject: String,
    pub equations: Vec<EquationResult>,
}

impl EquationReport {
    pub fn new(subject: impl Into<String>, equations: Vec<EquationResult>) -> Self {
        EquationReport {
            subject: subject.into(),
            equations,
        }
    }

    pub fn verdict(&self) -> Verdict {
        let refuted = self
            .equations
            .iter()
            .any(|e| matches!(e.status, Status::Refuted(_) | Status::Blocked));
        if refuted {
            Verdict::Refuted
        } else if self.equations.iter().any(|e| e.deferred > 0) {
            Verdict::BoundedVerified
        } else {
            Verdict::Verified
        }
    }

    pub fn is_verified(&self) -> bool {
        self.verdict() == Verdict::Verified
    }

    /// No equation refuted; deferred instances allowed.
    pub fn holds(&self) -> bool {
        self.verdict() != Verdict::Refuted
    }

    pub fn passed(&self) -> usize {
        self.equations
            .iter()
            .filter(|e| matches!(e.status, Status::Verified | Status::BoundedVerified))
            .count()
    }

    pub fn get(&self, name: &str) -> Option<&EquationResult> {
        self.equations.iter().find(|e| e.name == name)
    }

    pub fn first_refuted(&self) -> Option<&EquationResult> {
        self.equations
            .iter()
            .find(|e| matches!(e.status, Status::Refuted(_)))
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "{}: {:?} ({}/{})\n",
            self.subject,
            self.verdict(),
            self.passed(),
            self.equations.len()
        );
        for e in &self.equations {
            let status = match &e.status {
                Status::Verified => "verified".to_string(),
                Status::BoundedVerified => "bounded-verified".to_string(),
                Status::Blocked => "blocked".to_string(),
                Status::Refuted(cx) => format!("REFUTED at {cx}"),
            };
            out.push_str(&format!(
                "  {:<14} {:<22} checked={} deferred={} blocked={}",
                e.name, status, e.checked, e.deferred, e.blocked
            ));
            if let Some(n) = &e.note {
                out.push_str(&format!(" ({n})"));
            }
            out.push('\n');
        }
        out
    }
}

pub const MONADIC_EQUATIONS: [&str; 8] = [
    "sigma-unit-l",
    "sigma-unit-r",
    "pr-unit-l",
    "pr-unit-r",
    "sigma-assoc",
    "pr1-assoc",
    "pr21-assoc",
    "pr22-assoc",
];

/// Checks the eight monadic container equations on every in-fuel instance.
pub fn check_monadic(m: &MonadicContainer) -> EquationReport {
    let c = m.base();
    let n = c.shape_count();
    let iota = m.iota();
    let mut t: Vec<Tally> = vec![Tally::default(); 8];
    let lab = |s: u32| c.label(s).to_string();

    for s in 0..n {
        let fl = vec![s; c.pos(iota) as usize];
        let l = m.sigma(iota, &fl);
        t[0].record(l.map(|v| holds(v == s)).ok_or(Stop::Deferred), || {
            vec![bind("s", lab(s))]
        });
        let fr = vec![iota; c.pos(s) as usize];
        let r = m.sigma(s, &fr);
        t[1].record(r.map(|v| holds(v == s)).ok_or(Stop::Deferred), || {
            vec![bind("s", lab(s))]
        });
        match l {
            Some(l) => {
                for p in 0..c.pos(l) {
                    let (_, p2) = m.pr(iota, &fl, p);
                    t[2].record(same(tp(s, p2), tp(l, p)), || {
                        vec![bind("s", lab(s)), bind("p", p)]
                    });
                }
            }
            None => t[2].deferred += 1,
        }
        match r {
            Some(r) => {
                for p in 0..c.pos(r) {
                    let (p1, _) = m.pr(s, &fr, p);
                    t[3].record(same(tp(s, p1), tp(r, p)), || {
                        vec![bind("s", lab(s)), bind("p", p)]
                    });
                }
            }
            None => t[3].deferred += 1,
        }
    }

    let fam = m.families();
    for s in 0..n {
        for fr in 0..fam.count(s) {
            let f = fam.family(s, fr);
            let sig = SigmaIndex::new(f.iter().map(|&x| c.pos(x)));
            let gcount = pow_checked(n, sig.total()).unwrap_or(u64::MAX);
            let sf = match m.sigma(s, &f) {
                Some(v) => v,
                None => {
                    for k in 4..8 {
                        t[k].deferred = t[k].deferred.saturating_add(gcount);
                    }
                    continue;
                }
            };
            for gr in 0..gcount {
                let g = unrank_uniform(gr, n, sig.total() as usize);
                let binds = |extra: Option<u32>| {
                    let mut b = vec![
                        bind("s", lab(s)),
                        bind("f", c.render_family(&f)),
                        bind("g", c.render_family(&g)),
                    ];
                    if let Some(p) = extra {
                        b.push(bind("p", p));
                    }
                    b
                };
                let big_f: Option<Vec<u32>> = (0..c.pos(s))
                    .map(|p| m.sigma(f[p as usize], &g[sig.range(p)]))
                    .collect();
                let gpr: Vec<u32> = (0..c.pos(sf))
                    .map(|x| {
                        let (a, b) = m.pr(s, &f, x);
                        g[sig.flat(a, b) as usize]
                    })
                    .collect();
                let rhs = m.sigma(sf, &gpr);
                let lhs = big_f.as_ref().and_then(|bf| m.sigma(s, bf));
                let ev = match (lhs, rhs) {
                    (Some(a), Some(b)) => Ok(holds(a == b)),
                    _ => Err(Stop::Deferred),
                };
                t[4].record(ev, || binds(None));
                let (l, r, bf) = match (lhs, rhs, big_f) {
                    (Some(l), Some(r), Some(bf)) => (l, r, bf),
                    _ => {
                        for k in 5..8 {
                            t[k].deferred += 1;
                        }
                        continue;
                    }
                };
                for p in 0..c.pos(r) {
                    if l != r {
                        for k in 5..8 {
                            t[k].blocked += 1;
                        }
                        continue;
                    }
                    let (a1, a2) = m.pr(s, &bf, p);
                    let (b1, b2) = m.pr(sf, &gpr, p);
                    let (c1, c2) = m.pr(s, &f, b1);
                    let o1 = holds(a1 == c1);
                    t[5].record(Ok(o1), || binds(Some(p)));
                    if o1 != Outcome::Holds {
                        t[6].blocked += 1;
                        t[7].blocked += 1;
                        continue;
                    }
                    let (d1, d2) = m.pr(f[a1 as usize], &g[sig.range(a1)], a2);
                    let o2 = holds(d1 == c2);
                    t[6].record(Ok(o2), || binds(Some(p)));
                    if o2 != Outcome::Holds {
                        t[7].blocked += 1;
                        continue;
                    }
                    t[7].record(Ok(holds(d2 == b2)), || binds(Some(p)));
                }
            }
        }
    }
    let eqs = t
        .into_iter()
        .zip(MONADIC_EQUATIONS)
        .map(|(t, name)| t.finish(name))
        .collect();
    EquationReport::new("monadic container", eqs)
}

/// Elements of iterated extensions: a leaf is an element of X, a node is a
/// shape with one child per position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Leaf(u32),
    Node(u32, Vec<Value>),
}

impl Value {
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            Value::Leaf(x) => out.push(*x),
            Value::Node(_, cs) => cs.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// The same tree with every leaf replaced by 0.
    pub fn erased(&self) -> Value {
        match self {
            Value::Leaf(_) => Value::Leaf(0),
            Value::Node(s, cs) => Value::Node(*s, cs.iter().map(|c| c.erased()).collect()),
        }
    }

    /// Renumbers leaves 0, 1, 2, ... in order.
    pub fn generic(&self) -> Value {
        let mut next = 0;
        self.renumber(&mut next)
    }

    fn renumber(&self, next: &mut u32) -> Value {
        match self {
            Value::Leaf(_) => {
                *next += 1;
                Value::Leaf(*next - 1)
            }
            Value::Node(s, cs) => Value::Node(*s, cs.iter().map(|c| c.renumber(next)).collect()),
        }
    }

    pub fn shape(&self) -> Result<(u32, &[Value])> {
        match self {
            Value::Node(s, cs) => Ok((*s, cs)),
            Value::Leaf(_) => Err(Error::invalid("value", "expected a node, found a leaf")),
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Leaf(x) => write!(f, "x{x}"),
            Value::Node(s, cs) => {
                write!(f, "{s}(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Applies `h` at nesting depth `depth` (0 = the whole value).
pub fn fmap_at(v: &Value, depth: usize, h: &dyn Fn(&Value) -> Result<Value>) -> Result<Value> {
    if depth == 0 {
        return h(v);
    }
    let (s, cs) = v.shape()?;
    let cs = cs
        .iter()
        .map(|c| fmap_at(c, depth - 1, h))
        .collect::<Result<Vec<_>>>()?;
    Ok(Value::Node(s, cs))
}

/// Checks that a node is a well-formed element at the top layer.
pub(crate) fn node_of<'a>(c: &Container, v: &'a Value) -> Result<(u32, &'a [Value])> {
    let (s, cs) = v.shape()?;
    if s >= c.shape_count() || cs.len() != c.pos(s) as usize {
        return Err(Error::invalid("value", format!("malformed node {v}")));
    }
    Ok((s, cs))
}

/// `η (x) = (ι, λ_. x)`.
pub fn eta(m: &MonadicContainer, v: Value) -> Value {
    Value::Node(m.iota(), vec![v; m.base().pos(m.iota()) as usize])
}

/// `μ (s, f) = (σ s (π₁ ∘ f), π₂ ∘ f ∘ pr)` on a two-layer value.
pub fn mu(m: &MonadicContainer, v: &Value) -> Result<Value> {
    let c = m.base();
    let (s, cs) = node_of(c, v)?;
    let mut shapes = Vec::with_capacity(cs.len());
    let mut fills = Vec::with_capacity(cs.len());
    for child in cs {
        let (t, fill) = node_of(c, child)?;
        shapes.push(t);
        fills.push(fill);
    }
    let sig = m
        .sigma(s, &shapes)
        .ok_or_else(|| Error::Unsupported("multiplication beyond the fuel bound".into()))?;
    let fill = (0..c.pos(sig))
        .map(|p| {
            let (a, b) = m.pr(s, &shapes, p);
            fills[a as usize][b as usize].clone()
        })
        .collect();
    Ok(Value::Node(sig, fill))
}

/// The monad `(⟦M⟧, η, μ)` at a fixed finite set X.
pub struct MonadInterpretation<'a> {
    pub monad: &'a MonadicContainer,
    pub x: u32,
}

impl MonadInterpretation<'_> {
    pub fn eta(&self, x: u32) -> Result<Value> {
        if x >= self.x {
            return Err(Error::invalid("x", format!("{x} is not below {}", self.x)));
        }
        Ok(eta(self.monad, Value::Leaf(x)))
    }

    pub fn mu(&self, v: &Value) -> Result<Value> {
        check_layers(&[self.monad.base(), self.monad.base()], self.x, v)?;
        mu(self.monad, v)
    }
}

pub fn interpret_monad(m: &MonadicContainer, x: u32) -> MonadInterpretation<'_> {
    MonadInterpretation { monad: m, x }
}

/// Checks that `v` is an element of `C1 (C2 (.. X))`.
pub fn check_layers(layers: &[&Container], x: u32, v: &Value) -> Result<()> {
    match (layers.split_first(), v) {
        (None, Value::Leaf(a)) if *a < x => Ok(()),
        (None, _) => Err(Error::invalid("value", format!("expected an element of X, found {v}"))),
        (Some((c, rest)), _) => {
            let (_, cs) = node_of(c, v)?;
            cs.iter().try_for_each(|ch| check_layers(rest, x, ch))
        }
    }
}

/// `|C1 (C2 (.. X))|`, saturating.
pub fn layered_count(layers: &[&Container], x: u32) -> u128 {
    match layers.split_first() {
        None => u128::from(x),
        Some((c, rest)) => {
            let inner = layered_count(rest, x);
            c.positions()
                .iter()
                .map(|&p| inner.saturating_pow(p))
                .fold(0u128, |a, b| a.saturating_add(b))
        }
    }
}

/// Every element of `C1 (C2 (.. X))`.
pub fn layered_elements(layers: &[&Container], x: u32) -> Vec<Value> {
    match layers.split_first() {
        None => (0..x).map(Value::Leaf).collect(),
        Some((c, rest)) => {
            let inner = layered_elements(rest, x);
            let mut out = Vec::new();
            for s in 0..c.shape_count() {
                let sizes = vec![inner.len() as u32; c.pos(s) as usize];
                for pick in crate::kernel::DepMaps::new(&sizes) {
                    out.push(Value::Node(
                        s,
                        pick.iter().map(|&i| inner[i as usize].clone()).collect(),
                    ));
                }
            }
            out
        }
    }
}

/// Concrete enumeration is used up to this many elements; beyond it each
/// structural skeleton is evaluated once on distinct leaves.
pub const CONCRETE_LIMIT: u128 = 1 << 16;

#[derive(Debug, Clone, Default)]
pub(crate) struct Pointwise {
    pub checked: u64,
    pub failure: Option<String>,
}

/// Decides `lhs = rhs` on all of `layers X`. Both sides must be built from
/// natural operations, so a skeleton with distinct leaves decides every
/// instance with the same skeleton at once.
pub(crate) fn check_pointwise(
    layers: &[&Container],
    x: u32,
    lhs: &dyn Fn(&Value) -> Result<Value>,
    rhs: &dyn Fn(&Value) -> Result<Value>,
) -> Result<Pointwise> {
    let mut out = Pointwise::default();
    if layered_count(layers, x) <= CONCRETE_LIMIT {
        for v in layered_elements(layers, x) {
            out.checked += 1;
            if lhs(&v)? != rhs(&v)? && out.failure.is_none() {
                out.failure = Some(v.to_string());
            }
        }
        return Ok(out);
    }
    for sk in layered_elements(layers, 1) {
        let g = sk.generic();
        let n = g.leaves().len();
        if x == 0 && n > 0 {
            continue;
        }
        out.checked += 1;
        let (l, r) = (lhs(&g)?, rhs(&g)?);
        let differs = if x == 1 { l.erased() != r.erased() } else { l != r };
        if differs && out.failure.is_none() {
            out.failure = Some(format!("{g} (generic, |X|={x})"));
        }
    }
    Ok(out)
}

fn oracle_tally(t: &mut Tally, pw: Pointwise, x: u32) {
    t.checked += pw.checked;
    if let Some(v) = pw.failure {
        if t.fail.is_none() {
            t.fail = Some(Counterexample {
                bindings: vec![bind("|X|", x), bind("element", v)],
            });
        }
    }
}

/// Checks the monad laws of `(η, μ)` pointwise at each `|X|` in `sizes`.
pub fn monad_laws_oracle(m: &MonadicContainer, sizes: &[u32]) -> Result<EquationReport> {
    if !m.base().is_finite() {
        return Err(Error::Rejected("the monad-law oracle needs a finite container".into()));
    }
    let c = m.base();
    let mut t = vec![Tally::default(); 3];
    let id = |v: &Value| Ok(v.clone());
    for &x in sizes {
        let left = |v: &Value| mu(m, &eta(m, v.clone()));
        oracle_tally(&mut t[0], check_pointwise(&[c], x, &left, &id)?, x);
        let right = |v: &Value| mu(m, &fmap_at(v, 1, &|w| Ok(eta(m, w.clone())))?);
        oracle_tally(&mut t[1], check_pointwise(&[c], x, &right, &id)?, x);
        let outer = |v: &Value| mu(m, &mu(m, v)?);
        let inner = |v: &Value| mu(m, &fmap_at(v, 1, &|w| mu(m, w))?);
        oracle_tally(&mut t[2], check_pointwise(&[c, c, c], x, &outer, &inner)?, x);
    }
    let names = ["monad-unit-l", "monad-unit-r", "monad-assoc"];
    let eqs = t.into_iter().zip(names).map(|(t, n)| t.finish(n)).collect();
    Ok(EquationReport::new("monad laws", eqs))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaUniverseCheck {
    pub is_universe: bool,
    /// Some `σ s f` lay beyond the fuel bound and were not inspected.
    pub bounded: bool,
    pub failures: Vec<String>,
}

/// `P ι` has one position and every `pr {s} {f}` is a bijection onto
/// `Σ_p P (f p)`.
pub fn check_sigma_universe(m: &MonadicContainer) -> SigmaUniverseCheck {
    let c = m.base();
    let mut failures = Vec::new();
    let mut bounded = false;
    if c.pos(m.iota()) != 1 {
        failures.push(format!("P ι has {} positions", c.pos(m.iota())));
    }
    let fam = m.families();
    for i in 0..fam.total() {
        let (s, f) = fam.decode(i);
        if m.sigma_row(i).is_none() {
            bounded = true;
            continue;
        }
        let sig = SigmaIndex::new(f.iter().map(|&x| c.pos(x)));
        let row = m.pr_row(i);
        let mut seen = vec![false; sig.total() as usize];
        for &(a, b) in row {
            seen[sig.flat(a, b) as usize] = true;
        }
        if row.len() != seen.len() || seen.iter().any(|&b| !b) {
            failures.push(format!(
                "pr at s={} f={} is not a bijection",
                c.label(s),
                render_list(&f)
            ));
        }
    }
    SigmaUniverseCheck {
        is_universe: failures.is_empty(),
        bounded,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn writer_z2() -> MonadicContainer {
        MonadicContainer::tabulate(
            Container::from_counts(vec![1, 1]),
            0,
            |a, f| Some((a + f[0]) % 2),
            |_, _, _| (0, 0),
        )
        .unwrap()
    }

    fn broken_writer() -> MonadicContainer {
        MonadicContainer::tabulate(
            Container::from_counts(vec![1, 1]),
            0,
            |_, _| Some(1),
            |_, _, _| (0, 0),
        )
        .unwrap()
    }

    #[test]
    fn writer_verifies() {
        let r = check_monadic(&writer_z2());
        assert!(r.is_verified(), "{}", r.render_text());
        assert_eq!(r.passed(), 8);
    }

    #[test]
    fn constant_sigma_fails_left_unit_at_zero() {
        let r = check_monadic(&broken_writer());
        let e = r.get("sigma-unit-l").unwrap();
        match &e.status {
            Status::Refuted(cx) => assert_eq!(cx.bindings, vec![bind("s", "0")]),
            other => panic!("{other:?}"),
        }
        let o = monad_laws_oracle(&broken_writer(), &[0, 1, 2, 3]).unwrap();
        assert_eq!(o.verdict(), Verdict::Refuted);
    }

    #[test]
    fn eta_is_unit_shape_with_constant_fill() {
        let m = writer_z2();
        let i = interpret_monad(&m, 2);
        assert_eq!(i.eta(1).unwrap(), Value::Node(0, vec![Value::Leaf(1)]));
        assert!(i.eta(2).is_err());
    }

    #[test]
    fn generic_decision_matches_concrete() {
        let m = writer_z2();
        let c = m.base();
        let outer = |v: &Value| mu(&m, &mu(&m, v)?);
        let inner = |v: &Value| mu(&m, &fmap_at(v, 1, &|w| mu(&m, w))?);
        for x in 0..4 {
            let concrete = {
                let mut ok = true;
                for v in layered_elements(&[c, c, c], x) {
                    ok &= outer(&v).unwrap() == inner(&v).unwrap();
                }
                ok
            };
            let pw = check_pointwise(&[c, c, c], x, &outer, &inner).unwrap();
            assert_eq!(pw.failure.is_none(), concrete);
        }
    }
}
