//! Command-line front end and the JSON document format.
//!
//! Slots are named `--inner` (the `(S, P)` slot, slot 1) and `--outer`
//! (the `(T, Q)` slot, slot 2). A reference is either a path to a JSON
//! document or a builtin:
//!
//! ```text
//! exception:E  maybe  writer:MONOID  reader:K  state:K  list[:FUEL]
//! writer-dir:K  reader-dir:MONOID
//! MONOID = zN | and | path to {"size", "unit", "mul"}
//! ```

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::compose::{check_compatible, composite_from_law, law_from_composite, CompatibleComposite};
use crate::container::Container;
use crate::directed::{check_directed, DirectedContainer};
use crate::error::{Error, Result};
use crate::laws::{beck_oracle, check_law, DistLawData, LawKind, LawSignature, LawTables, Slot};
use crate::monadic::{check_monadic, EquationReport, MonadicContainer, Verdict};
use crate::search::{
    nogo_certificate, refute_bounded, search_laws, NogoCertificate, SearchProblem, SearchVerdict,
    DEFAULT_BUDGET,
};
use crate::zoo;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "containerlaws", version, about = "Check, search and compose container distributive laws")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Largest list length handled by `list` builtins without an explicit fuel.
    #[arg(long, global = true, default_value_t = 3)]
    fuel: u32,
    /// Search node limit.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for equation checking.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the equations of one structure.
    Check(CheckArgs),
    /// Check a monad-monad law against the Beck diagrams on small sets.
    Oracle {
        #[arg(long)]
        law: String,
        /// Set sizes, `A..B` (inclusive) or a comma list.
        #[arg(long, default_value = "0..3")]
        sizes: String,
    },
    /// Enumerate every law between two finite slots.
    Search(SlotArgs),
    /// Look for a law on the in-fuel fragment of a fueled inner slot.
    Refute(SlotArgs),
    /// Build the composite monadic container of a monad-monad law.
    Compose {
        #[arg(long)]
        law: String,
    },
    /// Recover the monad-monad law of a compatible composite.
    ExtractLaw {
        #[arg(long)]
        composite: String,
    },
    /// Decide the constant-counting obstruction and cross-check by refutation.
    Nogo {
        #[arg(long)]
        inner: String,
        #[arg(long)]
        outer: String,
    },
    /// Print a builtin structure as a document.
    Zoo { name: String },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct CheckArgs {
    #[arg(long)]
    monadic: Option<String>,
    #[arg(long)]
    directed: Option<String>,
    #[arg(long)]
    law: Option<String>,
    #[arg(long)]
    composite: Option<String>,
}

#[derive(Args, Debug)]
struct SlotArgs {
    #[arg(long, default_value = "mnd-mnd")]
    kind: LawKind,
    #[arg(long)]
    inner: String,
    #[arg(long)]
    outer: String,
}

// Documents

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SigmaRow {
    pub s: u32,
    pub f: Vec<u32>,
    pub out: u32,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct PrRow {
    pub s: u32,
    pub f: Vec<u32>,
    pub p: u32,
    pub out: (u32, u32),
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct U2Row {
    pub s: u32,
    pub f: Vec<u32>,
    pub q: u32,
    pub out: u32,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct VRow {
    pub s: u32,
    pub f: Vec<u32>,
    pub q: u32,
    pub p: u32,
    pub out: u32,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ContainerDoc {
    pub shapes: Vec<String>,
    pub positions: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fuel: Option<u32>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct MonadicDoc {
    #[serde(flatten)]
    pub base: ContainerDoc,
    pub iota: u32,
    pub sigma: Vec<SigmaRow>,
    pub pr: Vec<PrRow>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct DirectedDoc {
    #[serde(flatten)]
    pub base: ContainerDoc,
    pub o: Vec<u32>,
    pub down: Vec<Vec<u32>>,
    pub oplus: Vec<Vec<Vec<u32>>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(untagged)]
pub enum SlotRef {
    Builtin(String),
    Inline(Box<Document>),
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct LawDoc {
    pub inner: SlotRef,
    pub outer: SlotRef,
    pub u1: Vec<SigmaRow>,
    pub u2: Vec<U2Row>,
    pub v1: Vec<VRow>,
    pub v2: Vec<VRow>,
}

/// Shape indices in `sigma` and `pr` rows are composite shape indices.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CompositeDoc {
    pub inner: SlotRef,
    pub outer: SlotRef,
    pub iota: u32,
    pub sigma: Vec<SigmaRow>,
    pub pr: Vec<PrRow>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Container(ContainerDoc),
    Monadic(MonadicDoc),
    Directed(DirectedDoc),
    MndMnd(LawDoc),
    MndDir(LawDoc),
    DirMnd(LawDoc),
    Composite(CompositeDoc),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Container(Container),
    Monadic(MonadicContainer),
    Directed(DirectedContainer),
    Law(DistLawData),
    Composite(CompatibleComposite),
}

impl Structure {
    fn kind(&self) -> &'static str {
        match self {
            Structure::Container(_) => "container",
            Structure::Monadic(_) => "monadic",
            Structure::Directed(_) => "directed",
            Structure::Law(_) => "law",
            Structure::Composite(_) => "composite",
        }
    }
}

fn container_of(d: &ContainerDoc) -> Result<Container> {
    match d.fuel {
        Some(fuel) => Container::fueled(d.shapes.clone(), d.positions.clone(), fuel),
        None => Container::finite(d.shapes.clone(), d.positions.clone()),
    }
}

fn doc_of_container(c: &Container) -> ContainerDoc {
    ContainerDoc {
        shapes: c.labels().to_vec(),
        positions: c.positions().to_vec(),
        fuel: c.fuel(),
    }
}

fn check_family(c: &Container, radix: u32, s: u32, f: &[u32], path: &str) -> Result<()> {
    if s >= c.shape_count() {
        return Err(Error::invalid(format!("{path}.s"), format!("{s} is not a shape")));
    }
    if f.len() != c.pos(s) as usize {
        return Err(Error::invalid(
            format!("{path}.f"),
            format!("{} entries for {} positions", f.len(), c.pos(s)),
        ));
    }
    if let Some(k) = f.iter().position(|&x| x >= radix) {
        return Err(Error::invalid(format!("{path}.f[{k}]"), format!("{} is out of range", f[k])));
    }
    Ok(())
}

/// σ and pr tables over `base` from rows; rows for σ beyond the fuel bound
/// may be omitted.
fn monadic_tables(
    base: &Container,
    sigma: &[SigmaRow],
    pr: &[PrRow],
) -> Result<(Vec<Option<u32>>, Vec<Vec<(u32, u32)>>)> {
    let n = base.shape_count();
    let fam = base.families(n)?;
    let mut st: Vec<Option<u32>> = vec![None; fam.total() as usize];
    for (i, r) in sigma.iter().enumerate() {
        let path = format!("sigma[{i}]");
        check_family(base, n, r.s, &r.f, &path)?;
        if r.out >= n {
            return Err(Error::invalid(format!("{path}.out"), format!("{} is not a shape", r.out)));
        }
        let k = fam.index(r.s, &r.f) as usize;
        if st[k].replace(r.out).is_some() {
            return Err(Error::invalid(path, "duplicate row"));
        }
    }
    if base.is_finite() {
        if let Some(k) = st.iter().position(|x| x.is_none()) {
            let (s, f) = fam.decode(k as u64);
            return Err(Error::invalid(
                "sigma",
                format!("missing row s={s} f={}", crate::eval::render_list(&f)),
            ));
        }
    }
    let mut pt: Vec<Vec<Option<(u32, u32)>>> = st
        .iter()
        .map(|o| vec![None; o.map_or(0, |o| base.pos(o)) as usize])
        .collect();
    for (i, r) in pr.iter().enumerate() {
        let path = format!("pr[{i}]");
        check_family(base, n, r.s, &r.f, &path)?;
        let k = fam.index(r.s, &r.f) as usize;
        let Some(out) = st[k] else {
            return Err(Error::invalid(path, "no sigma row for this family"));
        };
        if r.p >= base.pos(out) {
            return Err(Error::invalid(format!("{path}.p"), format!("{} is not a position", r.p)));
        }
        let (p1, p2) = r.out;
        if p1 >= base.pos(r.s) {
            return Err(Error::invalid(format!("{path}.out[0]"), format!("{p1} is not a position")));
        }
        if p2 >= base.pos(r.f[p1 as usize]) {
            return Err(Error::invalid(format!("{path}.out[1]"), format!("{p2} is not a position")));
        }
        if pt[k][r.p as usize].replace(r.out).is_some() {
            return Err(Error::invalid(path, "duplicate row"));
        }
    }
    let mut rows = Vec::with_capacity(pt.len());
    for (k, row) in pt.into_iter().enumerate() {
        let row: Option<Vec<(u32, u32)>> = row.into_iter().collect();
        match row {
            Some(r) => rows.push(r),
            None => {
                let (s, f) = fam.decode(k as u64);
                return Err(Error::invalid(
                    "pr",
                    format!("missing row s={s} f={}", crate::eval::render_list(&f)),
                ));
            }
        }
    }
    Ok((st, rows))
}

fn monadic_rows(m: &MonadicContainer) -> (Vec<SigmaRow>, Vec<PrRow>) {
    let fam = m.families();
    let mut sigma = Vec::new();
    let mut pr = Vec::new();
    for i in 0..fam.total() {
        let (s, f) = fam.decode(i);
        if let Some(out) = m.sigma_row(i) {
            sigma.push(SigmaRow { s, f: f.clone(), out });
            for (p, &o) in m.pr_row(i).iter().enumerate() {
                pr.push(PrRow {
                    s,
                    f: f.clone(),
                    p: p as u32,
                    out: o,
                });
            }
        }
    }
    (sigma, pr)
}

pub fn doc_of_monadic(m: &MonadicContainer) -> Document {
    let (sigma, pr) = monadic_rows(m);
    Document::Monadic(MonadicDoc {
        base: doc_of_container(m.base()),
        iota: m.iota(),
        sigma,
        pr,
    })
}

pub fn doc_of_directed(d: &DirectedContainer) -> Document {
    Document::Directed(DirectedDoc {
        base: doc_of_container(d.base()),
        o: d.o_table().to_vec(),
        down: d.down_table().to_vec(),
        oplus: d.oplus_table().to_vec(),
    })
}

fn doc_of_slot(s: &Slot) -> SlotRef {
    SlotRef::Inline(Box::new(match s {
        Slot::Monadic(m) => doc_of_monadic(m),
        Slot::Directed(d) => doc_of_directed(d),
    }))
}

pub fn doc_of_law(law: &DistLawData) -> Document {
    let rows = law.rows();
    let doc = LawDoc {
        inner: doc_of_slot(law.slot1()),
        outer: doc_of_slot(law.slot2()),
        u1: rows.u1.into_iter().map(|(s, f, out)| SigmaRow { s, f, out }).collect(),
        u2: rows.u2.into_iter().map(|(s, f, q, out)| U2Row { s, f, q, out }).collect(),
        v1: rows.v1.into_iter().map(|(s, f, q, p, out)| VRow { s, f, q, p, out }).collect(),
        v2: rows.v2.into_iter().map(|(s, f, q, p, out)| VRow { s, f, q, p, out }).collect(),
    };
    match law.kind() {
        LawKind::MndMnd => Document::MndMnd(doc),
        LawKind::MndDir => Document::MndDir(doc),
        LawKind::DirMnd => Document::DirMnd(doc),
    }
}

pub fn doc_of_composite(cc: &CompatibleComposite) -> Document {
    let (sigma, pr) = monadic_rows(cc.monadic());
    Document::Composite(CompositeDoc {
        inner: SlotRef::Inline(Box::new(doc_of_monadic(cc.inner()))),
        outer: SlotRef::Inline(Box::new(doc_of_monadic(cc.outer()))),
        iota: cc.monadic().iota(),
        sigma,
        pr,
    })
}

pub fn doc_of_structure(s: &Structure) -> Document {
    match s {
        Structure::Container(c) => Document::Container(doc_of_container(c)),
        Structure::Monadic(m) => doc_of_monadic(m),
        Structure::Directed(d) => doc_of_directed(d),
        Structure::Law(l) => doc_of_law(l),
        Structure::Composite(c) => doc_of_composite(c),
    }
}

/// Settings shared by reference resolution.
#[derive(Debug, Clone, Copy)]
pub struct Env {
    pub fuel: u32,
}

impl Default for Env {
    fn default() -> Self {
        Env { fuel: 3 }
    }
}

fn resolve_slot(r: &SlotRef, env: Env, path: &str) -> Result<Slot> {
    let s = match r {
        SlotRef::Builtin(name) => resolve(name, env)?,
        SlotRef::Inline(doc) => structure_of(doc, env)?,
    };
    match s {
        Structure::Monadic(m) => Ok(Slot::Monadic(m)),
        Structure::Directed(d) => Ok(Slot::Directed(d)),
        other => Err(Error::invalid(path, format!("expected a monadic or directed container, got {}", other.kind()))),
    }
}

fn resolve_monadic(r: &SlotRef, env: Env, path: &str) -> Result<MonadicContainer> {
    match resolve_slot(r, env, path)? {
        Slot::Monadic(m) => Ok(m),
        Slot::Directed(_) => Err(Error::invalid(path, "expected a monadic container")),
    }
}

fn law_of(kind: LawKind, d: &LawDoc, env: Env) -> Result<DistLawData> {
    let slot1 = resolve_slot(&d.inner, env, "inner")?;
    let slot2 = resolve_slot(&d.outer, env, "outer")?;
    let sig = LawSignature::new(kind, slot1, slot2)?;
    let c1 = sig.slot1().base().clone();
    let c2 = sig.slot2().base().clone();
    let fam = sig.families().clone();
    let mut t = LawTables::empty(&sig);
    let (mq, mp) = sig.max_qp();
    for (i, r) in d.u1.iter().enumerate() {
        let path = format!("u1[{i}]");
        check_family(&c1, c2.shape_count(), r.s, &r.f, &path)?;
        if r.out >= c2.shape_count() {
            return Err(Error::invalid(format!("{path}.out"), format!("{} is not a shape", r.out)));
        }
        if t.t[0][fam.index(r.s, &r.f) as usize].replace(r.out).is_some() {
            return Err(Error::invalid(path, "duplicate row"));
        }
    }
    for (i, r) in d.u2.iter().enumerate() {
        let path = format!("u2[{i}]");
        check_family(&c1, c2.shape_count(), r.s, &r.f, &path)?;
        let fi = fam.index(r.s, &r.f);
        let Some(u) = t.t[0][fi as usize] else {
            return Err(Error::invalid(path, "no u1 row for this family"));
        };
        if r.q >= c2.pos(u) {
            return Err(Error::invalid(format!("{path}.q"), format!("{} is not a position", r.q)));
        }
        if r.out >= c1.shape_count() {
            return Err(Error::invalid(format!("{path}.out"), format!("{} is not a shape", r.out)));
        }
        if t.t[1][sig.u2_key(fi, r.q)].replace(r.out).is_some() {
            return Err(Error::invalid(path, "duplicate row"));
        }
    }
    debug_assert!(mq > 0 || d.u2.is_empty());
    for (table, rows, name) in [(2, &d.v1, "v1"), (3, &d.v2, "v2")] {
        for (i, r) in rows.iter().enumerate() {
            let path = format!("{name}[{i}]");
            check_family(&c1, c2.shape_count(), r.s, &r.f, &path)?;
            let fi = fam.index(r.s, &r.f);
            let live = t.t[0][fi as usize].is_some_and(|u| r.q < c2.pos(u));
            let a = if live { t.t[1][sig.u2_key(fi, r.q)] } else { None };
            let Some(a) = a else {
                return Err(Error::invalid(path, "no u2 row for this entry"));
            };
            if r.p >= c1.pos(a) || mp == 0 {
                return Err(Error::invalid(format!("{path}.p"), format!("{} is not a position", r.p)));
            }
            if t.t[table][sig.v_key(fi, r.q, r.p)].replace(r.out).is_some() {
                return Err(Error::invalid(path, "duplicate row"));
            }
        }
    }
    DistLawData::from_tables(sig, t)
}

pub fn structure_of(doc: &Document, env: Env) -> Result<Structure> {
    Ok(match doc {
        Document::Container(c) => Structure::Container(container_of(c)?),
        Document::Monadic(d) => {
            let base = container_of(&d.base)?;
            let (st, pt) = monadic_tables(&base, &d.sigma, &d.pr)?;
            Structure::Monadic(MonadicContainer::from_tables(base, d.iota, st, pt)?)
        }
        Document::Directed(d) => Structure::Directed(DirectedContainer::from_tables(
            container_of(&d.base)?,
            d.o.clone(),
            d.down.clone(),
            d.oplus.clone(),
        )?),
        Document::MndMnd(d) => Structure::Law(law_of(LawKind::MndMnd, d, env)?),
        Document::MndDir(d) => Structure::Law(law_of(LawKind::MndDir, d, env)?),
        Document::DirMnd(d) => Structure::Law(law_of(LawKind::DirMnd, d, env)?),
        Document::Composite(d) => {
            let inner = resolve_monadic(&d.inner, env, "inner")?;
            let outer = resolve_monadic(&d.outer, env, "outer")?;
            let comp = crate::container::compose_containers(outer.base(), inner.base())?;
            let (st, pt) = monadic_tables(comp.container(), &d.sigma, &d.pr)?;
            Structure::Composite(CompatibleComposite::new(outer, inner, d.iota, st, pt)?)
        }
    })
}

pub fn parse_document(text: &str) -> Result<Document> {
    serde_json::from_str(text).map_err(|e| Error::invalid("document", e.to_string()))
}

pub fn parse_structure(text: &str, env: Env) -> Result<Structure> {
    structure_of(&parse_document(text)?, env)
}

fn parse_num(name: &str, arg: Option<&str>) -> Result<u32> {
    let a = arg.ok_or_else(|| Error::invalid(name, "missing argument"))?;
    a.parse()
        .map_err(|_| Error::invalid(name, format!("{a:?} is not a number")))
}

pub fn resolve_monoid(name: &str) -> Result<zoo::Monoid> {
    if name == "and" {
        return Ok(zoo::Monoid::and());
    }
    if let Some(n) = name.strip_prefix('z').and_then(|n| n.parse::<u32>().ok()) {
        if n == 0 {
            return Err(Error::invalid("monoid", "z0 is empty"));
        }
        return Ok(zoo::Monoid::cyclic(n));
    }
    let text = std::fs::read_to_string(name)
        .map_err(|e| Error::invalid("monoid", format!("{name}: {e}")))?;
    zoo::Monoid::from_json(&text)
}

/// A builtin name or a path to a document.
pub fn resolve(reference: &str, env: Env) -> Result<Structure> {
    if reference.ends_with(".json") || Path::new(reference).is_file() {
        let text = std::fs::read_to_string(reference)
            .map_err(|e| Error::invalid(reference, e.to_string()))?;
        return parse_structure(&text, env).map_err(|e| match e {
            Error::Invalid { path, msg } => Error::invalid(format!("{reference}: {path}"), msg),
            other => other,
        });
    }
    let (name, arg) = match reference.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (reference, None),
    };
    Ok(match name {
        "exception" => Structure::Monadic(zoo::exception(parse_num(reference, arg)?)),
        "maybe" => Structure::Monadic(zoo::maybe()),
        "writer" => Structure::Monadic(zoo::writer(&resolve_monoid(arg.unwrap_or("z2"))?)),
        "reader" => Structure::Monadic(zoo::reader(parse_num(reference, arg)?)),
        "state" => Structure::Monadic(zoo::state(parse_num(reference, arg)?)?),
        "list" => {
            let fuel = match arg {
                Some(_) => parse_num(reference, arg)?,
                None => env.fuel,
            };
            Structure::Monadic(zoo::list(fuel)?)
        }
        "writer-dir" => Structure::Directed(zoo::writer_dir(parse_num(reference, arg)?)),
        "reader-dir" => Structure::Directed(zoo::reader_dir(&resolve_monoid(arg.unwrap_or("z2"))?)),
        _ => {
            return Err(Error::invalid(
                "reference",
                format!("{reference:?} is neither a file nor a builtin"),
            ))
        }
    })
}

fn slot_of(reference: &str, env: Env) -> Result<Slot> {
    match resolve(reference, env)? {
        Structure::Monadic(m) => Ok(Slot::Monadic(m)),
        Structure::Directed(d) => Ok(Slot::Directed(d)),
        other => Err(Error::invalid(reference, format!("expected a container with structure, got {}", other.kind()))),
    }
}

fn expect_law(reference: &str, env: Env) -> Result<DistLawData> {
    match resolve(reference, env)? {
        Structure::Law(l) => Ok(l),
        other => Err(Error::invalid(reference, format!("expected a law, got {}", other.kind()))),
    }
}

fn expect_monadic(reference: &str, env: Env) -> Result<MonadicContainer> {
    match resolve(reference, env)? {
        Structure::Monadic(m) => Ok(m),
        other => Err(Error::invalid(reference, format!("expected a monadic container, got {}", other.kind()))),
    }
}

/// `A..B` inclusive, or `a,b,c`.
pub fn parse_sizes(s: &str) -> Result<Vec<u32>> {
    let bad = || Error::invalid("sizes", format!("{s:?} is not A..B or a comma list"));
    if let Some((a, b)) = s.split_once("..") {
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        let b: u32 = b.trim().parse().map_err(|_| bad())?;
        return Ok((a..=b).collect());
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

// Output

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn exit_for(r: &EquationReport) -> i32 {
    if r.verdict() == Verdict::Refuted {
        EXIT_REFUTED
    } else {
        EXIT_OK
    }
}

fn report_out(r: &EquationReport, fmt: Format) -> String {
    match fmt {
        Format::Text => r.render_text(),
        Format::Json => to_json(r),
    }
}

/// One line per live table entry.
pub fn render_law_text(law: &DistLawData) -> String {
    let l1 = law.slot1().base();
    let l2 = law.slot2().base();
    let rows = law.rows();
    let mut out = String::new();
    for (s, f, t) in rows.u1 {
        let _ = writeln!(out, "  u1 {} {} = {}", l1.label(s), l2.render_family(&f), l2.label(t));
    }
    for (s, f, q, a) in rows.u2 {
        let _ = writeln!(out, "  u2 {} {} {q} = {}", l1.label(s), l2.render_family(&f), l1.label(a));
    }
    for (name, rows) in [("v1", rows.v1), ("v2", rows.v2)] {
        for (s, f, q, p, x) in rows {
            let _ = writeln!(out, "  {name} {} {} {q} {p} = {x}", l1.label(s), l2.render_family(&f));
        }
    }
    out
}

#[derive(Serialize)]
struct SearchJson<'a> {
    verdict: &'a str,
    nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    laws: Vec<Document>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fuel: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    instances: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partial: Option<PartialJson>,
}

#[derive(Serialize)]
struct PartialJson {
    u1: Vec<Option<u32>>,
    u2: Vec<Option<u32>>,
    v1: Vec<Option<u32>>,
    v2: Vec<Option<u32>>,
}

fn search_json(v: &SearchVerdict) -> SearchJson<'_> {
    let mut j = SearchJson {
        verdict: v.name(),
        nodes: v.nodes(),
        count: None,
        laws: Vec::new(),
        fuel: None,
        instances: None,
        partial: None,
    };
    match v {
        SearchVerdict::Complete { laws, .. } => {
            j.count = Some(laws.len());
            j.laws = laws.iter().map(doc_of_law).collect();
        }
        SearchVerdict::BoundedUnsat { fuel, instances, .. } => {
            j.fuel = *fuel;
            j.instances = Some(*instances);
        }
        SearchVerdict::Consistent { fuel, partial, .. } => {
            j.fuel = *fuel;
            let [u1, u2, v1, v2] = partial.t.clone();
            j.partial = Some(PartialJson { u1, u2, v1, v2 });
        }
        SearchVerdict::BudgetExceeded { found, .. } => j.count = Some(*found),
    }
    j
}

fn search_text(v: &SearchVerdict) -> String {
    let mut out = String::new();
    match v {
        SearchVerdict::Complete { laws, nodes } => {
            let _ = writeln!(out, "complete: {} law(s), {nodes} nodes", laws.len());
            for (i, l) in laws.iter().enumerate() {
                let _ = writeln!(out, "law {i}:");
                out.push_str(&render_law_text(l));
            }
        }
        SearchVerdict::BoundedUnsat { fuel, instances, nodes } => {
            let fuel = fuel.map_or("none".to_string(), |f| f.to_string());
            let _ = writeln!(out, "bounded-unsat: no law on the fragment (fuel {fuel}, {instances} instances, {nodes} nodes)");
        }
        SearchVerdict::Consistent { fuel, partial, nodes } => {
            let fuel = fuel.map_or("none".to_string(), |f| f.to_string());
            let _ = writeln!(
                out,
                "consistent: partial law found (fuel {fuel}, {} entries, {nodes} nodes)",
                partial.assigned()
            );
        }
        SearchVerdict::BudgetExceeded { nodes, found } => {
            let _ = writeln!(out, "budget-exceeded after {nodes} nodes ({found} found)");
        }
    }
    out
}

fn search_exit(v: &SearchVerdict) -> i32 {
    match v {
        SearchVerdict::Complete { .. } | SearchVerdict::Consistent { .. } => EXIT_OK,
        SearchVerdict::BoundedUnsat { .. } => EXIT_REFUTED,
        SearchVerdict::BudgetExceeded { .. } => EXIT_BUDGET,
    }
}

fn structure_summary(s: &Structure) -> String {
    let c = match s {
        Structure::Container(c) => c,
        Structure::Monadic(m) => m.base(),
        Structure::Directed(d) => d.base(),
        Structure::Law(l) => {
            return format!(
                "{} law: {} live entries\n{}",
                l.kind(),
                l.flat().len(),
                render_law_text(l)
            )
        }
        Structure::Composite(cc) => cc.composite().container(),
    };
    let mut out = format!("{}: {} shapes", s.kind(), c.shape_count());
    if let Some(f) = c.fuel() {
        let _ = write!(out, " (fuel {f})");
    }
    out.push('\n');
    for i in 0..c.shape_count() {
        let _ = writeln!(out, "  {:<12} {} positions", c.label(i), c.pos(i));
    }
    out
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let env = Env { fuel: cli.fuel };
    let fmt = cli.format;
    Ok(match &cli.command {
        Command::Check(a) => {
            let r = if let Some(r) = &a.monadic {
                check_monadic(&expect_monadic(r, env)?)
            } else if let Some(r) = &a.directed {
                match resolve(r, env)? {
                    Structure::Directed(d) => check_directed(&d),
                    other => return Err(Error::invalid(r, format!("expected a directed container, got {}", other.kind()))),
                }
            } else if let Some(r) = &a.law {
                check_law(&expect_law(r, env)?)
            } else if let Some(r) = &a.composite {
                match resolve(r, env)? {
                    Structure::Composite(cc) => check_compatible(&cc),
                    other => return Err(Error::invalid(r, format!("expected a composite, got {}", other.kind()))),
                }
            } else {
                unreachable!("clap requires one")
            };
            (exit_for(&r), report_out(&r, fmt))
        }
        Command::Oracle { law, sizes } => {
            let r = beck_oracle(&expect_law(law, env)?, &parse_sizes(sizes)?)?;
            (exit_for(&r), report_out(&r, fmt))
        }
        Command::Search(a) | Command::Refute(a) => {
            let p = SearchProblem::new(a.kind, slot_of(&a.inner, env)?, slot_of(&a.outer, env)?, cli.budget)?;
            let v = if matches!(cli.command, Command::Search(_)) {
                search_laws(&p)?
            } else {
                refute_bounded(&p)?
            };
            let out = match fmt {
                Format::Text => search_text(&v),
                Format::Json => to_json(&search_json(&v)),
            };
            (search_exit(&v), out)
        }
        Command::Compose { law } => {
            let cc = composite_from_law(&expect_law(law, env)?)?;
            let r = check_compatible(&cc);
            let out = match fmt {
                Format::Text => format!(
                    "{}{}",
                    structure_summary(&Structure::Composite(cc.clone())),
                    r.render_text()
                ),
                Format::Json => to_json(&doc_of_composite(&cc)),
            };
            (exit_for(&r), out)
        }
        Command::ExtractLaw { composite } => {
            let cc = match resolve(composite, env)? {
                Structure::Composite(cc) => cc,
                other => return Err(Error::invalid(composite, format!("expected a composite, got {}", other.kind()))),
            };
            let law = law_from_composite(&cc)?;
            let r = check_law(&law);
            let out = match fmt {
                Format::Text => format!("{}{}", render_law_text(&law), r.render_text()),
                Format::Json => to_json(&doc_of_law(&law)),
            };
            (exit_for(&r), out)
        }
        Command::Nogo { inner, outer } => {
            let m1 = expect_monadic(inner, env)?;
            let m2 = expect_monadic(outer, env)?;
            let cert = nogo_certificate(&m1, &m2);
            let p = SearchProblem::new(LawKind::MndMnd, Slot::Monadic(m1), Slot::Monadic(m2), cli.budget)?;
            let v = refute_bounded(&p)?;
            let applicable = matches!(cert, NogoCertificate::Applicable { .. });
            let code = match (&v, applicable) {
                (SearchVerdict::BudgetExceeded { .. }, _) => EXIT_BUDGET,
                (SearchVerdict::Consistent { .. }, true) => EXIT_REFUTED,
                _ => EXIT_OK,
            };
            let out = match fmt {
                Format::Text => {
                    let c = match &cert {
                        NogoCertificate::Applicable { shape, family, positions, constants } => format!(
                            "certificate: applicable (S3 witness s={shape} f={} at positions {} and {}; constants {} and {})\n",
                            crate::eval::render_list(family),
                            positions.0,
                            positions.1,
                            constants.0,
                            constants.1
                        ),
                        NogoCertificate::NotApplicable { reason } => {
                            format!("certificate: not applicable ({reason})\n")
                        }
                    };
                    format!("{c}cross-check: {}", search_text(&v))
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct NogoJson<'a> {
                        certificate: &'a NogoCertificate,
                        cross_check: SearchJson<'a>,
                        agree: bool,
                    }
                    to_json(&NogoJson {
                        certificate: &cert,
                        cross_check: search_json(&v),
                        agree: code != EXIT_REFUTED,
                    })
                }
            };
            (code, out)
        }
        Command::Zoo { name } => {
            let s = resolve(name, env)?;
            let out = match fmt {
                Format::Text => structure_summary(&s),
                Format::Json => to_json(&doc_of_structure(&s)),
            };
            (EXIT_OK, out)
        }
    })
}

/// Runs one command line; returns the exit code, stdout and stderr.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                (code, text, String::new())
            } else {
                (code, String::new(), text)
            };
        }
    };
    if let Some(n) = cli.jobs {
        // Fails harmlessly if the pool is already configured.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(&cli) {
        Ok((code, out)) => (code, out, String::new()),
        Err(e) => (EXIT_USAGE, String::new(), format!("error: {e}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_documents() {
        let env = Env::default();
        let items = [
            Structure::Monadic(zoo::exception(2)),
            Structure::Monadic(zoo::list(2).unwrap()),
            Structure::Directed(zoo::reader_dir(&zoo::Monoid::cyclic(2))),
            Structure::Law(zoo::exception_law(1, zoo::writer(&zoo::Monoid::cyclic(2))).unwrap()),
            Structure::Law(zoo::writer_reader_mixed_law(2, 2).unwrap()),
        ];
        for s in items {
            let doc = doc_of_structure(&s);
            let text = serde_json::to_string(&doc).unwrap();
            assert_eq!(parse_document(&text).unwrap(), doc);
            assert_eq!(structure_of(&doc, env).unwrap(), s);
        }
    }

    #[test]
    fn pr_out_of_bounds_names_the_row() {
        let Document::Monadic(mut d) = doc_of_monadic(&zoo::exception(1)) else { panic!() };
        d.pr[0].out = (0, 5);
        let e = structure_of(&Document::Monadic(d), Env::default()).unwrap_err();
        assert_eq!(e, Error::invalid("pr[0].out[1]", "5 is not a position"));
    }

    #[test]
    fn sizes() {
        assert_eq!(parse_sizes("0..3").unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(parse_sizes("1,2").unwrap(), vec![1, 2]);
        assert!(parse_sizes("x").is_err());
    }
}
