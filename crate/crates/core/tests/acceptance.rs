//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::time::{Duration, Instant};

use containerlaws::compose::{check_compatible, composite_from_law, law_from_composite};
use containerlaws::directed::check_directed;
use containerlaws::kernel::{rank_uniform, DepMaps};
use containerlaws::laws::{
    beck_oracle, check_dir_mnd, check_mnd_dir, check_mnd_mnd, DistLawData, LawKind,
    LawSignature, Slot,
};
use containerlaws::monadic::{check_monadic, check_sigma_universe, Status, Verdict};
use containerlaws::search::{
    check_left_zero, enumerate_candidates, nogo_certificate, refute_bounded, search_laws,
    NogoCertificate, SearchProblem, SearchVerdict, DEFAULT_BUDGET,
};
use containerlaws::zoo::{self, Monoid};

const CRITERION_1_LIMIT: Duration = Duration::from_secs(10);
const CRITERION_3_LIMIT: Duration = Duration::from_secs(300);
const SIZES: [u32; 4] = [0, 1, 2, 3];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn laws_of(kind: LawKind, s1: Slot, s2: Slot) -> Result<Vec<DistLawData>, String> {
    let p = SearchProblem::new(kind, s1, s2, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    match search_laws(&p).map_err(|e| e.to_string())? {
        SearchVerdict::Complete { laws, .. } => Ok(laws),
        other => Err(format!("search ended {}", other.name())),
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let z2 = Monoid::cyclic(2);
    let mut monadic = vec![
        ("exception(0)", zoo::exception(0)),
        ("exception(1)", zoo::exception(1)),
        ("exception(2)", zoo::exception(2)),
        ("writer(Z2)", zoo::writer(&z2)),
        ("writer(Z3)", zoo::writer(&Monoid::cyclic(3))),
        ("state(2)", zoo::state(2).unwrap()),
    ];
    for k in 1..=3 {
        monadic.push(("reader", zoo::reader(k)));
    }
    for (name, m) in &monadic {
        let r = check_monadic(m);
        ensure(r.verdict() == Verdict::Verified, format!("{name}: {:?}", r.verdict()))?;
    }
    for (name, d) in [("writer-dir(2)", zoo::writer_dir(2)), ("reader-dir(Z2)", zoo::reader_dir(&z2))] {
        let r = check_directed(&d);
        ensure(r.verdict() == Verdict::Verified, format!("{name}: {:?}", r.verdict()))?;
    }
    let r = check_monadic(&zoo::list(4).unwrap());
    ensure(r.verdict() == Verdict::BoundedVerified, format!("list(4): {:?}", r.verdict()))?;
    ensure(r.first_refuted().is_none(), "list(4) has a refutation")?;
    let elapsed = start.elapsed();
    ensure(elapsed < CRITERION_1_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!("{} suites verified, list(4) bounded-verified, {elapsed:.2?}", monadic.len() + 2))
}

fn criterion_2() -> Outcome {
    let z2 = Monoid::cyclic(2);
    let ex43 = zoo::exception_law(1, zoo::writer(&z2)).unwrap();
    let ex45 = zoo::reader_law(zoo::writer(&z2), 2).unwrap();
    for (name, law) in [("exception law", &ex43), ("reader law", &ex45)] {
        let r = check_mnd_mnd(law).unwrap();
        let tags: Vec<&str> = r.equations.iter().map(|e| e.name.as_str()).collect();
        ensure(tags == LawKind::MndMnd.equations(), format!("{name}: tags {tags:?}"))?;
        ensure(r.equations.iter().all(|e| e.status == Status::Verified), format!("{name}: {}", r.render_text()))?;
        let b = beck_oracle(law, &SIZES).unwrap();
        ensure(b.is_verified(), format!("{name} Beck: {}", b.render_text()))?;
    }
    let mixed = check_mnd_dir(&zoo::writer_reader_mixed_law(2, 2).unwrap()).unwrap();
    ensure(mixed.equations.len() == 13 && mixed.is_verified(), mixed.render_text())?;
    // β (a, b) = b, α (a, b) = a on Z2
    let mp = zoo::MatchingPair::new(z2.clone(), z2, vec![0, 0, 1, 1], vec![0, 1, 0, 1]).unwrap();
    let dm = check_dir_mnd(&zoo::dir_mnd_law_from_matching_pair(&mp).unwrap()).unwrap();
    ensure(dm.equations.len() == 16 && dm.is_verified(), dm.render_text())?;
    Ok("18/18 + Beck 0..3 (x2), 13/13, 16/16".into())
}

fn writer_pair() -> LawSignature {
    let w = zoo::writer(&Monoid::cyclic(2));
    LawSignature::new(LawKind::MndMnd, Slot::Monadic(w.clone()), Slot::Monadic(w)).unwrap()
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let all = enumerate_candidates(&writer_pair(), usize::MAX).map_err(|e| e.to_string())?;
    let mut by_eqs = Vec::new();
    let mut by_beck = Vec::new();
    for (i, l) in all.iter().enumerate() {
        if check_mnd_mnd(l).unwrap().is_verified() {
            by_eqs.push(i);
        }
        if beck_oracle(l, &SIZES).unwrap().is_verified() {
            by_beck.push(i);
        }
    }
    ensure(by_eqs == by_beck, format!("pass sets differ: {by_eqs:?} vs {by_beck:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < CRITERION_3_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!("{} candidates, {} pass both, {elapsed:.2?}", all.len(), by_eqs.len()))
}

fn criterion_4() -> Outcome {
    let z2 = zoo::writer(&Monoid::cyclic(2));
    let counts = [
        laws_of(LawKind::MndMnd, Slot::Monadic(zoo::exception(1)), Slot::Monadic(z2.clone()))?.len(),
        laws_of(LawKind::MndMnd, Slot::Monadic(zoo::exception(2)), Slot::Monadic(z2.clone()))?.len(),
        laws_of(LawKind::MndMnd, Slot::Monadic(z2), Slot::Monadic(zoo::reader(2)))?.len(),
        laws_of(LawKind::MndDir, Slot::Directed(zoo::writer_dir(2)), Slot::Monadic(zoo::reader(2)))?.len(),
    ];
    ensure(counts == [1, 1, 1, 1], format!("counts {counts:?}"))?;
    Ok("exactly one law in each of the four searches".into())
}

fn criterion_5() -> Outcome {
    let z2 = zoo::writer(&Monoid::cyclic(2));
    let mut laws = Vec::new();
    laws.extend(laws_of(LawKind::MndMnd, Slot::Monadic(zoo::exception(1)), Slot::Monadic(z2.clone()))?);
    laws.extend(laws_of(LawKind::MndMnd, Slot::Monadic(zoo::exception(2)), Slot::Monadic(z2.clone()))?);
    laws.extend(laws_of(LawKind::MndMnd, Slot::Monadic(z2.clone()), Slot::Monadic(zoo::reader(2)))?);
    laws.extend(laws_of(LawKind::MndMnd, Slot::Monadic(z2.clone()), Slot::Monadic(z2))?);
    for l in &laws {
        let cc = composite_from_law(l).map_err(|e| e.to_string())?;
        let r = check_compatible(&cc);
        ensure(r.equations.len() == 16 && r.is_verified(), r.render_text())?;
        let back = law_from_composite(&cc).map_err(|e| e.to_string())?;
        ensure(back.flat() == l.flat(), "composite to law changed the tables")?;
    }
    Ok(format!("{} laws round-trip through compatible composites", laws.len()))
}

fn mp_axioms(a: &Monoid, b: &Monoid, alpha: &[u32], beta: &[u32]) -> bool {
    let nb = b.size();
    let al = |x: u32, y: u32| alpha[(x * nb + y) as usize];
    let be = |x: u32, y: u32| beta[(x * nb + y) as usize];
    let (ea, eb) = (a.unit(), b.unit());
    for x in 0..a.size() {
        for y in 0..nb {
            if be(ea, y) != y || al(ea, y) != ea || be(x, eb) != eb || al(x, eb) != x {
                return false;
            }
            for x2 in 0..a.size() {
                if be(a.mul(x, x2), y) != be(x, be(x2, y)) {
                    return false;
                }
                if al(a.mul(x, x2), y) != a.mul(al(x, be(x2, y)), al(x2, y)) {
                    return false;
                }
            }
            for y2 in 0..nb {
                if al(x, b.mul(y, y2)) != al(al(x, y), y2) {
                    return false;
                }
                if be(x, b.mul(y, y2)) != b.mul(be(x, y), be(al(x, y), y2)) {
                    return false;
                }
            }
        }
    }
    true
}

fn matching_pairs(a: &Monoid, b: &Monoid) -> usize {
    let n = (a.size() * b.size()) as usize;
    let mut count = 0;
    for alpha in DepMaps::new(&vec![a.size(); n]) {
        for beta in DepMaps::new(&vec![b.size(); n]) {
            count += usize::from(mp_axioms(a, b, &alpha, &beta));
        }
    }
    count
}

fn fa_axioms(a: &Monoid, b: &Monoid, alpha: &[u32]) -> bool {
    let n = a.size();
    let ap = |f: &[u32], x: u32| alpha[(rank_uniform(f, b.size()) * u64::from(n) + u64::from(x)) as usize];
    let funcs: Vec<Vec<u32>> = DepMaps::new(&vec![b.size(); n as usize]).collect();
    let e = a.unit();
    let unit_b = vec![b.unit(); n as usize];
    for x in 0..n {
        if ap(&unit_b, x) != x {
            return false;
        }
    }
    for f in &funcs {
        if ap(f, e) != e {
            return false;
        }
        for x in 0..n {
            for y in 0..n {
                let g: Vec<u32> = (0..n).map(|z| f[a.mul(ap(f, x), z) as usize]).collect();
                if ap(f, a.mul(x, y)) != a.mul(ap(f, x), ap(&g, y)) {
                    return false;
                }
            }
            for g in &funcs {
                let fg: Vec<u32> = (0..n).map(|z| b.mul(f[z as usize], g[z as usize])).collect();
                let gf: Vec<u32> = (0..n).map(|z| g[ap(f, z) as usize]).collect();
                if ap(&fg, x) != ap(f, ap(&gf, x)) {
                    return false;
                }
            }
        }
    }
    true
}

fn functional_actions(a: &Monoid, b: &Monoid) -> usize {
    let len = b.size().pow(a.size()) * a.size();
    DepMaps::new(&vec![a.size(); len as usize])
        .filter(|t| fa_axioms(a, b, t))
        .count()
}

fn monoid_ok(m: &Monoid) -> bool {
    let n = m.size();
    (0..n).all(|x| m.mul(m.unit(), x) == x && m.mul(x, m.unit()) == x)
        && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| m.mul(m.mul(x, y), z) == m.mul(x, m.mul(y, z)))))
}

fn criterion_6() -> Outcome {
    let monoids = Monoid::all(2);
    ensure(monoids.len() == 4, "expected four monoids on two elements")?;
    let mut rows = Vec::new();
    for a in &monoids {
        for b in &monoids {
            let mm = laws_of(LawKind::MndMnd, Slot::Monadic(zoo::writer(a)), Slot::Monadic(zoo::writer(b)))?;
            let mp = matching_pairs(a, b);
            ensure(mm.len() == mp, format!("writer/writer: {} laws vs {mp} matching pairs", mm.len()))?;
            for l in &mm {
                let pair = zoo::matching_pair_from_law(l).map_err(|e| e.to_string())?;
                let zs = zoo::zappa_szep(&pair).map_err(|e| e.to_string())?;
                ensure(monoid_ok(&zs) && zs.size() == 4, "Zappa-Szép product is not a monoid")?;
            }
            let md = laws_of(LawKind::MndDir, Slot::Directed(zoo::reader_dir(a)), Slot::Monadic(zoo::writer(b)))?;
            let fa = functional_actions(a, b);
            ensure(md.len() == fa, format!("reader-dir/writer: {} laws vs {fa} actions", md.len()))?;
            let dm = laws_of(LawKind::DirMnd, Slot::Monadic(zoo::writer(b)), Slot::Directed(zoo::reader_dir(&a.opposite())))?;
            ensure(dm.len() == mp, format!("writer/reader-dir: {} laws vs {mp} matching pairs", dm.len()))?;
            rows.push(format!("{mp}/{fa}"));
        }
    }
    Ok(format!("16 monoid pairs agree (matching pairs/actions: {})", rows.join(" ")))
}

fn criterion_7() -> Outcome {
    let list = zoo::list(3).unwrap();
    let cert = nogo_certificate(&list, &zoo::exception(2));
    ensure(matches!(cert, NogoCertificate::Applicable { .. }), format!("{cert:?}"))?;
    let p = SearchProblem::new(LawKind::MndMnd, Slot::Monadic(list.clone()), Slot::Monadic(zoo::exception(2)), DEFAULT_BUDGET).unwrap();
    let v = refute_bounded(&p).unwrap();
    ensure(matches!(v, SearchVerdict::BoundedUnsat { fuel: Some(3), .. }), format!("E=2: {}", v.name()))?;
    let cert = nogo_certificate(&list, &zoo::exception(1));
    ensure(matches!(cert, NogoCertificate::NotApplicable { .. }), format!("{cert:?}"))?;
    let p = SearchProblem::new(LawKind::MndMnd, Slot::Monadic(list.clone()), Slot::Monadic(zoo::exception(1)), DEFAULT_BUDGET).unwrap();
    let v2 = refute_bounded(&p).unwrap();
    ensure(matches!(v2, SearchVerdict::Consistent { .. }), format!("E=1: {}", v2.name()))?;
    for (name, m) in [("exception(2)", zoo::exception(2)), ("list(3)", list)] {
        ensure(check_left_zero(&m).is_verified(), format!("left zero fails on {name}"))?;
    }
    Ok(format!("certificate applicable, bounded-unsat in {} nodes; E=1 consistent", v.nodes()))
}

fn criterion_8() -> Outcome {
    let m = zoo::exception(1);
    let pu = zoo::mk_predicate_universe(&m).map_err(|e| e.to_string())?;
    ensure(check_monadic(&pu).is_verified(), "predicate universe fails the monadic equations")?;
    ensure(check_sigma_universe(&pu).is_universe, "predicate universe is not a Σ-universe")?;
    let cc = composite_from_law(&zoo::exception_law(1, m.clone()).unwrap()).unwrap();
    for s in 0..m.base().shape_count() {
        let e = cc.j_outer(s);
        for x in 0..=3u32 {
            let orig = x.pow(m.base().pos(s));
            let emb = x.pow(pu.base().pos(e));
            ensure(orig == emb, format!("shape {s} at |X|={x}: {orig} vs {emb}"))?;
        }
    }
    Ok(format!("{} shapes, Σ-universe, embedding preserves extension sizes", pu.base().shape_count()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("axiom suites", criterion_1),
        ("example laws", criterion_2),
        ("oracle equivalence", criterion_3),
        ("uniqueness by enumeration", criterion_4),
        ("composite round trips", criterion_5),
        ("monoid correspondences", criterion_6),
        ("no-go", criterion_7),
        ("predicate universe", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
