//! Concrete containers and laws, and the correspondences between laws on
//! writer/reader carriers and structures on monoids.

use serde::Deserialize;

use crate::container::{Container, ContainerMorphism};
use crate::directed::DirectedContainer;
use crate::error::{Error, Result};
use crate::kernel::{unrank_uniform, DepMaps};
use crate::laws::{check_law, DistLawData, LawKind, Slot};
use crate::monadic::MonadicContainer;

/// A finite monoid on `0..size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monoid {
    size: u32,
    unit: u32,
    table: Vec<u32>,
}

#[derive(Deserialize)]
struct MonoidFile {
    size: u32,
    unit: u32,
    mul: Vec<Vec<u32>>,
}

impl Monoid {
    /// `table[a * size + b] = a ⊗ b`; unit laws and associativity are checked.
    pub fn new(size: u32, unit: u32, table: Vec<u32>) -> Result<Self> {
        let n = size as usize;
        if table.len() != n * n {
            return Err(Error::invalid("mul", format!("expected {} entries", n * n)));
        }
        if size > 0 && unit >= size {
            return Err(Error::invalid("unit", "not an element"));
        }
        if size == 0 {
            return Err(Error::invalid("size", "a monoid has at least its unit"));
        }
        if let Some(i) = table.iter().position(|&x| x >= size) {
            return Err(Error::invalid(format!("mul[{}][{}]", i / n, i % n), "not an element"));
        }
        let m = Monoid { size, unit, table };
        for a in 0..size {
            if m.mul(unit, a) != a || m.mul(a, unit) != a {
                return Err(Error::invalid("unit", format!("not neutral for {a}")));
            }
            for b in 0..size {
                for c in 0..size {
                    if m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c)) {
                        return Err(Error::invalid("mul", format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: MonoidFile =
            serde_json::from_str(text).map_err(|e| Error::invalid("monoid", e.to_string()))?;
        if f.mul.len() != f.size as usize {
            return Err(Error::invalid("mul", "one row per element"));
        }
        Monoid::new(f.size, f.unit, f.mul.concat())
    }

    /// `Z/n` under addition.
    pub fn cyclic(n: u32) -> Self {
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Monoid::new(n, 0, table).expect("cyclic group")
    }

    /// `{0, 1}` under minimum, with unit 1.
    pub fn and() -> Self {
        Monoid::new(2, 1, vec![0, 0, 0, 1]).expect("meet semilattice")
    }

    /// Every monoid structure on `0..size` (labelled, not up to isomorphism).
    pub fn all(size: u32) -> Vec<Monoid> {
        let n = size as usize;
        let mut out = Vec::new();
        for unit in 0..size {
            for table in DepMaps::new(&vec![size; n * n]) {
                if let Ok(m) = Monoid::new(size, unit, table) {
                    out.push(m);
                }
            }
        }
        out
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn unit(&self) -> u32 {
        self.unit
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[(a * self.size + b) as usize]
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// The same carrier with `a ⊗' b = b ⊗ a`.
    pub fn opposite(&self) -> Monoid {
        let table = (0..self.size * self.size)
            .map(|i| self.mul(i % self.size, i / self.size))
            .collect();
        Monoid {
            size: self.size,
            unit: self.unit,
            table,
        }
    }
}

fn labels(prefix: &str, n: u32) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// `(⊤ + E) ◁ Tr`: shape `inl` carries one position, each `inr e` none.
pub fn exception(e: u32) -> MonadicContainer {
    let mut names = vec!["inl".to_string()];
    names.extend((0..e).map(|i| format!("inr{i}")));
    let mut pos = vec![1];
    pos.extend(std::iter::repeat(0).take(e as usize));
    let base = Container::finite(names, pos).expect("lengths agree");
    MonadicContainer::tabulate(base, 0, |s, f| Some(if s == 0 { f[0] } else { s }), |_, _, p| (0, p))
        .expect("exception tables are valid")
}

pub fn maybe() -> MonadicContainer {
    exception(1)
}

/// `A ◁ const ⊤` with `σ a b = a ⊗ b`.
pub fn writer(m: &Monoid) -> MonadicContainer {
    let base = Container::from_counts(vec![1; m.size() as usize]);
    MonadicContainer::tabulate(base, m.unit(), |a, f| Some(m.mul(a, f[0])), |_, _, _| (0, 0))
        .expect("writer tables are valid")
}

/// `⊤ ◁ const A`; the unit laws force `σ = ⋆` and `pr a = (a, a)`.
pub fn reader(k: u32) -> MonadicContainer {
    let base = Container::finite(vec!["*".into()], vec![k]).expect("lengths agree");
    MonadicContainer::tabulate(base, 0, |_, _| Some(0), |_, _, a| (a, a)).expect("reader tables are valid")
}

/// `(S -> S) ◁ const S`, shapes ranked lexicographically.
pub fn state(k: u32) -> Result<MonadicContainer> {
    let count = crate::kernel::pow_checked(k, k)?;
    if count > 4096 {
        return Err(Error::Unsupported(format!("state on {k} elements has too many shapes")));
    }
    let funcs: Vec<Vec<u32>> = (0..count).map(|r| unrank_uniform(r, k, k as usize)).collect();
    let names = funcs.iter().map(|f| crate::eval::render_list(f)).collect();
    let base = Container::finite(names, vec![k; count as usize])?;
    let rank = |f: &[u32]| crate::kernel::rank_uniform(f, k) as u32;
    let id: Vec<u32> = (0..k).collect();
    let fs = funcs.clone();
    MonadicContainer::tabulate(
        base,
        rank(&id),
        move |s, g| {
            let f = &fs[s as usize];
            let out: Vec<u32> = (0..k)
                .map(|x| funcs[g[x as usize] as usize][f[x as usize] as usize])
                .collect();
            Some(rank(&out))
        },
        move |s, _, x| (x, unrank_uniform(u64::from(s), k, k as usize)[x as usize]),
    )
}

/// `ℕ ◁ Fin` truncated to lengths `0..=fuel`; `σ n f = Σ f`.
pub fn list(fuel: u32) -> Result<MonadicContainer> {
    if fuel == 0 {
        return Err(Error::invalid("fuel", "must be at least 1 so the unit shape 1 is in scope"));
    }
    let base = Container::fueled(labels("", fuel + 1), (0..=fuel).collect(), fuel)?;
    MonadicContainer::tabulate(
        base,
        1,
        move |_, f| {
            let n: u32 = f.iter().sum();
            (n <= fuel).then_some(n)
        },
        |_, f, p| list_pr(f, p),
    )
}

/// The block of the concatenation containing position `p`: the last `i`
/// whose prefix sum `f0 + .. + f(i-1)` is at most `p`, and the offset in it.
pub fn list_pr(f: &[u32], p: u32) -> (u32, u32) {
    let mut prefix = 0;
    let mut best = (0, p);
    for (i, &len) in f.iter().enumerate() {
        if prefix <= p {
            best = (i as u32, p - prefix);
        }
        prefix += len;
    }
    best
}

/// `A ◁ const ⊤` with its unique directed structure.
pub fn writer_dir(k: u32) -> DirectedContainer {
    DirectedContainer::tabulate(Container::from_counts(vec![1; k as usize]), |_| 0, |s, _| s, |_, _, _| 0)
        .expect("writer directed tables are valid")
}

/// `⊤ ◁ const A` with `o = e` and `p ⊕ p' = p ⊗ p'`.
pub fn reader_dir(m: &Monoid) -> DirectedContainer {
    let base = Container::finite(vec!["*".into()], vec![m.size()]).expect("lengths agree");
    DirectedContainer::tabulate(base, |_| m.unit(), |_, _| 0, |_, a, b| m.mul(a, b))
        .expect("reader directed tables are valid")
}

/// Lists of length up to `fuel` to `⊤ + ℕ`: the empty list fails, and a
/// nonempty list maps to its tail.
pub fn list_tail_morphism(fuel: u32) -> Result<ContainerMorphism> {
    let source = Container::fueled(labels("", fuel + 1), (0..=fuel).collect(), fuel)?;
    let mut names = vec!["inl".to_string()];
    names.extend((0..fuel).map(|n| format!("inr{n}")));
    let mut pos = vec![0];
    pos.extend(0..fuel);
    let target = Container::fueled(names, pos, fuel)?;
    let shape_map = (0..=fuel).collect();
    let maps = (0..=fuel)
        .map(|n| if n == 0 { vec![] } else { (1..n).collect() })
        .collect();
    ContainerMorphism::new(source, target, shape_map, maps)
}

/// The law of a container over `(⊤ + E) ◁ Tr`: `inl` passes its family
/// through, `inr e` stays put.
pub fn exception_law(e: u32, other: MonadicContainer) -> Result<DistLawData> {
    let iota = other.iota();
    DistLawData::from_fns(
        LawKind::MndMnd,
        Slot::Monadic(exception(e)),
        Slot::Monadic(other),
        move |s, f| if s == 0 { f[0] } else { iota },
        |s, _, _| s,
        |_, _, _, _| 0,
        |_, _, q, _| q,
    )
}

/// The law of `⊤ ◁ const A` over any monadic container: `u s f = (⋆, const s)`.
pub fn reader_law(other: MonadicContainer, k: u32) -> Result<DistLawData> {
    DistLawData::from_fns(
        LawKind::MndMnd,
        Slot::Monadic(other),
        Slot::Monadic(reader(k)),
        |_, _| 0,
        |s, _, _| s,
        |_, _, _, p| p,
        |_, _, q, _| q,
    )
}

/// The mixed law of the reader monadic container `⊤ ◁ const B` over the
/// writer directed container `A ◁ const ⊤`.
pub fn writer_reader_mixed_law(a: u32, b: u32) -> Result<DistLawData> {
    DistLawData::from_fns(
        LawKind::MndDir,
        Slot::Directed(writer_dir(a)),
        Slot::Monadic(reader(b)),
        |_, _| 0,
        |s, _, _| s,
        |_, _, _, _| 0,
        |_, _, q, _| q,
    )
}

fn monoid_of_writer(m: &MonadicContainer) -> Result<Monoid> {
    if m.base().positions().iter().any(|&p| p != 1) || !m.base().is_finite() {
        return Err(Error::Rejected("not a writer container".into()));
    }
    let n = m.base().shape_count();
    let table = (0..n * n).map(|i| m.sigma(i / n, &[i % n]).expect("finite")).collect();
    Monoid::new(n, m.iota(), table)
}

fn monoid_of_reader_dir(d: &DirectedContainer) -> Result<Monoid> {
    if d.base().shape_count() != 1 {
        return Err(Error::Rejected("not a reader directed container".into()));
    }
    let n = d.base().pos(0);
    let table = (0..n * n).map(|i| d.oplus(0, i / n, i % n)).collect();
    Monoid::new(n, d.o(0), table)
}

/// Actions `α : A × B -> A` and `β : A × B -> B`, tables indexed `a * |B| + b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingPair {
    a: Monoid,
    b: Monoid,
    alpha: Vec<u32>,
    beta: Vec<u32>,
}

impl MatchingPair {
    /// Valid exactly when the writer/writer law it induces holds.
    pub fn new(a: Monoid, b: Monoid, alpha: Vec<u32>, beta: Vec<u32>) -> Result<Self> {
        let mp = MatchingPair::unchecked(a, b, alpha, beta)?;
        let law = law_from_matching_pair(&mp)?;
        let r = check_law(&law);
        if !r.is_verified() {
            let name = r.first_refuted().map(|e| e.name.as_str()).unwrap_or("?");
            return Err(Error::Rejected(format!("not a matching pair (fails {name})")));
        }
        Ok(mp)
    }

    pub fn unchecked(a: Monoid, b: Monoid, alpha: Vec<u32>, beta: Vec<u32>) -> Result<Self> {
        let n = (a.size() * b.size()) as usize;
        if alpha.len() != n || beta.len() != n {
            return Err(Error::invalid("alpha", format!("expected {n} entries")));
        }
        if alpha.iter().any(|&x| x >= a.size()) || beta.iter().any(|&x| x >= b.size()) {
            return Err(Error::invalid("alpha", "entry out of range"));
        }
        Ok(MatchingPair { a, b, alpha, beta })
    }

    pub fn a(&self) -> &Monoid {
        &self.a
    }

    pub fn b(&self) -> &Monoid {
        &self.b
    }

    pub fn alpha(&self, a: u32, b: u32) -> u32 {
        self.alpha[(a * self.b.size() + b) as usize]
    }

    pub fn beta(&self, a: u32, b: u32) -> u32 {
        self.beta[(a * self.b.size() + b) as usize]
    }
}

/// `u a b = (β (a, b), const α (a, b))`, `v = (⋆, ⋆)`, with slot 1 the
/// writer container of `A` and slot 2 that of `B`.
pub fn law_from_matching_pair(mp: &MatchingPair) -> Result<DistLawData> {
    let mp2 = mp.clone();
    let mp3 = mp.clone();
    DistLawData::from_fns(
        LawKind::MndMnd,
        Slot::Monadic(writer(&mp.a)),
        Slot::Monadic(writer(&mp.b)),
        move |a, f| mp2.beta(a, f[0]),
        move |a, f, _| mp3.alpha(a, f[0]),
        |_, _, _, _| 0,
        |_, _, _, _| 0,
    )
}

pub fn matching_pair_from_law(law: &DistLawData) -> Result<MatchingPair> {
    let (s1, s2) = match (law.kind(), law.slot1(), law.slot2()) {
        (LawKind::MndMnd, Slot::Monadic(a), Slot::Monadic(b)) => (a, b),
        _ => return Err(Error::Rejected("expected a writer/writer monad law".into())),
    };
    let a = monoid_of_writer(s1)?;
    let b = monoid_of_writer(s2)?;
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for x in 0..a.size() {
        for y in 0..b.size() {
            beta.push(law.u1(x, &[y]));
            alpha.push(law.u2(x, &[y], 0));
        }
    }
    MatchingPair::new(a, b, alpha, beta)
}

/// The directed-monadic law of the writer monadic container of `B` and the
/// reader directed container of `A` (with the opposite product):
/// `u2 b _ a = β (a, b)` and `v2 b _ a ⋆ = α (a, b)`.
pub fn dir_mnd_law_from_matching_pair(mp: &MatchingPair) -> Result<DistLawData> {
    let mp2 = mp.clone();
    let mp3 = mp.clone();
    DistLawData::from_fns(
        LawKind::DirMnd,
        Slot::Monadic(writer(&mp.b)),
        Slot::Directed(reader_dir(&mp.a.opposite())),
        |_, _| 0,
        move |b, _, a| mp2.beta(a, b),
        |_, _, _, _| 0,
        move |b, _, a, _| mp3.alpha(a, b),
    )
}

pub fn matching_pair_from_dir_mnd_law(law: &DistLawData) -> Result<MatchingPair> {
    let (s1, s2) = match (law.kind(), law.slot1(), law.slot2()) {
        (LawKind::DirMnd, Slot::Monadic(b), Slot::Directed(a)) => (b, a),
        _ => return Err(Error::Rejected("expected a writer/reader directed-monadic law".into())),
    };
    let b = monoid_of_writer(s1)?;
    let a = monoid_of_reader_dir(s2)?.opposite();
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for x in 0..a.size() {
        for y in 0..b.size() {
            beta.push(law.u2(y, &[0], x));
            alpha.push(law.v2(y, &[0], x, 0));
        }
    }
    MatchingPair::new(a, b, alpha, beta)
}

/// The product monoid on `B × A` obtained from the composite of the
/// writer/writer law; element `(b, a)` has index `b * |A| + a`.
pub fn zappa_szep(mp: &MatchingPair) -> Result<Monoid> {
    let law = law_from_matching_pair(mp)?;
    let comp = crate::compose::composite_from_law(&law)?;
    monoid_of_writer(comp.monadic())
}

/// `α : (A -> B) -> A -> A`, indexed `rank f * |A| + a` where `f` is
/// ranked as a table `A -> B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalAction {
    a: Monoid,
    b: Monoid,
    alpha: Vec<u32>,
}

impl FunctionalAction {
    pub fn new(a: Monoid, b: Monoid, alpha: Vec<u32>) -> Result<Self> {
        let fa = FunctionalAction::unchecked(a, b, alpha)?;
        if let Some(k) = fa.first_failing_equation() {
            return Err(Error::Rejected(format!("functional action equation {k} fails")));
        }
        Ok(fa)
    }

    pub fn unchecked(a: Monoid, b: Monoid, alpha: Vec<u32>) -> Result<Self> {
        let fcount = crate::kernel::pow_checked(b.size(), a.size())?;
        let n = fcount as usize * a.size() as usize;
        if alpha.len() != n {
            return Err(Error::invalid("alpha", format!("expected {n} entries")));
        }
        if alpha.iter().any(|&x| x >= a.size()) {
            return Err(Error::invalid("alpha", "entry out of range"));
        }
        Ok(FunctionalAction { a, b, alpha })
    }

    pub fn a(&self) -> &Monoid {
        &self.a
    }

    pub fn b(&self) -> &Monoid {
        &self.b
    }

    pub fn apply(&self, f: &[u32], x: u32) -> u32 {
        let r = crate::kernel::rank_uniform(f, self.b.size());
        self.alpha[(r * u64::from(self.a.size()) + u64::from(x)) as usize]
    }

    /// 1-based index of the first of the four action equations that fails.
    pub fn first_failing_equation(&self) -> Option<usize> {
        let (a, b) = (&self.a, &self.b);
        let n = a.size();
        let funcs: Vec<Vec<u32>> = DepMaps::new(&vec![b.size(); n as usize]).collect();
        let e = a.unit();
        let mut fails = [false; 4];
        for f in &funcs {
            fails[0] |= self.apply(f, e) != e;
            for x in 0..n {
                for y in 0..n {
                    let ax = self.apply(f, x);
                    let shifted: Vec<u32> = (0..n).map(|z| f[a.mul(ax, z) as usize]).collect();
                    fails[1] |= self.apply(f, a.mul(x, y)) != a.mul(ax, self.apply(&shifted, y));
                }
                for g in &funcs {
                    let fg: Vec<u32> = (0..n).map(|z| b.mul(f[z as usize], g[z as usize])).collect();
                    let gf: Vec<u32> = (0..n).map(|z| g[self.apply(f, z) as usize]).collect();
                    fails[3] |= self.apply(&fg, x) != self.apply(f, self.apply(&gf, x));
                }
            }
        }
        let unit_f = vec![b.unit(); n as usize];
        fails[2] = (0..n).any(|x| self.apply(&unit_f, x) != x);
        fails.iter().position(|&b| b).map(|k| k + 1)
    }
}

/// `u1 ⋆ f = f e`, `v1 ⋆ f ⋆ a = α f a`, with slot 1 the reader directed
/// container of `A` and slot 2 the writer monadic container of `B`.
pub fn mixed_law_from_functional_action(fa: &FunctionalAction) -> Result<DistLawData> {
    let e = fa.a.unit();
    let fa2 = fa.clone();
    DistLawData::from_fns(
        LawKind::MndDir,
        Slot::Directed(reader_dir(&fa.a)),
        Slot::Monadic(writer(&fa.b)),
        move |_, f| f[e as usize],
        |_, _, _| 0,
        move |_, f, _, x| fa2.apply(f, x),
        |_, _, _, _| 0,
    )
}

pub fn functional_action_from_mixed_law(law: &DistLawData) -> Result<FunctionalAction> {
    let (d, m) = match (law.kind(), law.slot1(), law.slot2()) {
        (LawKind::MndDir, Slot::Directed(d), Slot::Monadic(m)) => (d, m),
        _ => return Err(Error::Rejected("expected a reader directed / writer monadic law".into())),
    };
    let a = monoid_of_reader_dir(d)?;
    let b = monoid_of_writer(m)?;
    let mut alpha = Vec::new();
    for f in DepMaps::new(&vec![b.size(); a.size() as usize]) {
        for x in 0..a.size() {
            alpha.push(law.v1(0, &f, 0, x));
        }
    }
    FunctionalAction::unchecked(a, b, alpha)
}

/// Refinement types over a Σ-universe: the composite with the maybe
/// container through the exception law.
pub fn mk_predicate_universe(m: &MonadicContainer) -> Result<MonadicContainer> {
    let check = crate::monadic::check_sigma_universe(m);
    if !check.is_universe {
        return Err(Error::Rejected(format!(
            "not a Σ-universe: {}",
            check.failures.join("; ")
        )));
    }
    let law = exception_law(1, m.clone())?;
    Ok(crate::compose::composite_from_law(&law)?.monadic().clone())
}
