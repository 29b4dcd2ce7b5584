//! Composite monadic containers built from distributive laws, the
//! compatibility conditions on a composite, and the law recovered from one.
//!
//! The composite of a law with slot 1 `I` and slot 2 `O` lives on `O ∘ I`:
//! a shape is `(o, g)` with `g : Q o -> I`, a position is `(q, p)`.

use crate::container::{compose_containers, Composite};
use crate::error::{Error, Result};
use crate::eval::{bind, holds, Outcome, Stop, Tally};
use crate::laws::{DistLawData, LawKind, Slot};
use crate::monadic::{check_monadic, EquationReport, MonadicContainer, MONADIC_EQUATIONS};

/// A monadic structure on `O ∘ I` together with the two factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibleComposite {
    outer: MonadicContainer,
    inner: MonadicContainer,
    composite: Composite,
    monadic: MonadicContainer,
}

impl CompatibleComposite {
    /// Tables are indexed like those of any monadic container on
    /// `compose_containers(outer, inner)`.
    pub fn new(
        outer: MonadicContainer,
        inner: MonadicContainer,
        iota: u32,
        sigma: Vec<Option<u32>>,
        pr: Vec<Vec<(u32, u32)>>,
    ) -> Result<Self> {
        let composite = compose_containers(outer.base(), inner.base())?;
        let monadic = MonadicContainer::from_tables(composite.container().clone(), iota, sigma, pr)?;
        Ok(CompatibleComposite {
            outer,
            inner,
            composite,
            monadic,
        })
    }

    pub fn outer(&self) -> &MonadicContainer {
        &self.outer
    }

    pub fn inner(&self) -> &MonadicContainer {
        &self.inner
    }

    pub fn composite(&self) -> &Composite {
        &self.composite
    }

    pub fn monadic(&self) -> &MonadicContainer {
        &self.monadic
    }

    /// `o ↦ (o, const ι)`.
    pub fn j_outer(&self, o: u32) -> u32 {
        let q = self.outer.base().pos(o) as usize;
        self.composite.encode(o, &vec![self.inner.iota(); q])
    }

    /// `i ↦ (ι, const i)`.
    pub fn j_inner(&self, i: u32) -> u32 {
        let io = self.outer.iota();
        let q = self.outer.base().pos(io) as usize;
        self.composite.encode(io, &vec![i; q])
    }
}

fn monadic_slots(law: &DistLawData) -> Result<(&MonadicContainer, &MonadicContainer)> {
    match (law.kind(), law.slot1(), law.slot2()) {
        (LawKind::MndMnd, Slot::Monadic(i), Slot::Monadic(o)) => Ok((i, o)),
        (k, _, _) => Err(Error::Unsupported(format!("composite of a {k} law"))),
    }
}

struct Step {
    q: u32,
    q2: u32,
    h: Vec<u32>,
    s: u32,
    k: Vec<u32>,
}

/// The monadic container on `O ∘ I` induced by a monad-monad law.
pub fn composite_from_law(law: &DistLawData) -> Result<CompatibleComposite> {
    let (inner, outer) = monadic_slots(law)?;
    let comp = compose_containers(outer.base(), inner.base())?;
    let (ob, ib) = (outer.base(), inner.base());

    // The outer shape of σ (c, G) with its per-position data, or None when
    // an inner σ lies beyond the fuel bound.
    let plan = |c: u32, big_g: &[u32]| -> Option<(u32, Vec<Step>)> {
        let (o, f) = comp.decode(c);
        let hs: Vec<Vec<u32>> = (0..ob.pos(o))
            .map(|q| {
                (0..ib.pos(f[q as usize]))
                    .map(|p| comp.decode(big_g[comp.join_pos(c, q, p) as usize]).0)
                    .collect()
            })
            .collect();
        let big_f: Vec<u32> = (0..ob.pos(o))
            .map(|q| law.u1(f[q as usize], &hs[q as usize]))
            .collect();
        let o2 = outer.sigma(o, &big_f)?;
        let mut steps = Vec::new();
        for q_out in 0..ob.pos(o2) {
            let (q, q2) = outer.pr(o, &big_f, q_out);
            let s = f[q as usize];
            let h = hs[q as usize].clone();
            let s2 = law.u2(s, &h, q2);
            let k: Vec<u32> = (0..ib.pos(s2))
                .map(|p| {
                    let p1 = law.v1(s, &h, q2, p);
                    let q3 = law.v2(s, &h, q2, p);
                    let inner_c = big_g[comp.join_pos(c, q, p1) as usize];
                    comp.decode(inner_c).1[q3 as usize]
                })
                .collect();
            steps.push(Step { q, q2, h, s: s2, k });
        }
        Some((o2, steps))
    };
    let sigma = |c: u32, big_g: &[u32]| -> Option<u32> {
        let (o2, steps) = plan(c, big_g)?;
        let g2: Option<Vec<u32>> = steps.iter().map(|st| inner.sigma(st.s, &st.k)).collect();
        Some(comp.encode(o2, &g2?))
    };
    let pr = |c: u32, big_g: &[u32], x: u32| -> (u32, u32) {
        let (o2, steps) = plan(c, big_g).expect("pr is only asked where σ is defined");
        let g2: Vec<u32> = steps
            .iter()
            .map(|st| inner.sigma(st.s, &st.k).expect("defined"))
            .collect();
        let out = comp.encode(o2, &g2);
        let (q_out, p_out) = comp.split_pos(out, x);
        let st = &steps[q_out as usize];
        let (_, f) = comp.decode(c);
        let s = f[st.q as usize];
        let (p1, p2) = inner.pr(st.s, &st.k, p_out);
        let p_src = law.v1(s, &st.h, st.q2, p1);
        let q3 = law.v2(s, &st.h, st.q2, p1);
        let first = comp.join_pos(c, st.q, p_src);
        let second = comp.join_pos(big_g[first as usize], q3, p2);
        (first, second)
    };
    let iota = comp.encode(outer.iota(), &vec![inner.iota(); ob.pos(outer.iota()) as usize]);
    let monadic = MonadicContainer::tabulate(comp.container().clone(), iota, sigma, pr)?;
    Ok(CompatibleComposite {
        outer: outer.clone(),
        inner: inner.clone(),
        composite: comp,
        monadic,
    })
}

pub const COMPATIBILITY_EQUATIONS: [&str; 8] = [
    "jO-shape",
    "jO-pos1",
    "jO-pos2",
    "jI-shape",
    "jI-pos1",
    "jI-pos2",
    "middle-shape",
    "middle-pos",
];

/// The monadic equations of the composite, the two unit inclusions as
/// monad morphisms, and the middle unitary law.
pub fn check_compatible(cc: &CompatibleComposite) -> EquationReport {
    let m = &cc.monadic;
    let comp = &cc.composite;
    let (outer, inner) = (&cc.outer, &cc.inner);
    let (ob, ib) = (outer.base(), inner.base());
    let cb = comp.container();
    let mut t: Vec<Tally> = vec![Tally::default(); 8];
    let lab = |s: u32| cb.label(s).to_string();

    let fam = outer.families();
    for i in 0..fam.total() {
        let (o, f) = fam.decode(i);
        let binds = || vec![bind("o", ob.label(o)), bind("f", ob.render_family(&f))];
        let c = cc.j_outer(o);
        let big_g: Vec<u32> = (0..cb.pos(c))
            .map(|x| cc.j_outer(f[comp.split_pos(c, x).0 as usize]))
            .collect();
        let so = outer.sigma(o, &f).expect("outer is finite");
        let lhs = cc.j_outer(so);
        let Some(rhs) = m.sigma(c, &big_g) else {
            t[0].record(Err(Stop::Deferred), binds);
            continue;
        };
        let shape = holds(lhs == rhs);
        t[0].record(Ok(shape), binds);
        for x in 0..cb.pos(rhs) {
            if shape == Outcome::Fails {
                t[1].blocked += 1;
                t[2].blocked += 1;
                continue;
            }
            let (q_out, _) = comp.split_pos(rhs, x);
            let (a, b) = outer.pr(o, &f, q_out);
            let (y1, y2) = m.pr(c, &big_g, x);
            let (qa, _) = comp.split_pos(c, y1);
            let pos1 = holds(qa == a);
            let xb = || {
                let mut v = binds();
                v.push(bind("x", x));
                v
            };
            t[1].record(Ok(pos1), xb);
            if pos1 == Outcome::Fails {
                t[2].blocked += 1;
                continue;
            }
            let (qb, _) = comp.split_pos(big_g[y1 as usize], y2);
            t[2].record(Ok(holds(qb == b)), xb);
        }
    }

    let fam = inner.families();
    for i in 0..fam.total() {
        let (s, f) = fam.decode(i);
        let binds = || vec![bind("i", ib.label(s)), bind("f", ib.render_family(&f))];
        let c = cc.j_inner(s);
        let big_g: Vec<u32> = (0..cb.pos(c))
            .map(|x| cc.j_inner(f[comp.split_pos(c, x).1 as usize]))
            .collect();
        let (Some(si), Some(rhs)) = (inner.sigma(s, &f), m.sigma(c, &big_g)) else {
            t[3].record(Err(Stop::Deferred), binds);
            continue;
        };
        let shape = holds(cc.j_inner(si) == rhs);
        t[3].record(Ok(shape), binds);
        for x in 0..cb.pos(rhs) {
            if shape == Outcome::Fails {
                t[4].blocked += 1;
                t[5].blocked += 1;
                continue;
            }
            let (_, p_out) = comp.split_pos(rhs, x);
            let (a, b) = inner.pr(s, &f, p_out);
            let (y1, y2) = m.pr(c, &big_g, x);
            let (_, pa) = comp.split_pos(c, y1);
            let pos1 = holds(pa == a);
            let xb = || {
                let mut v = binds();
                v.push(bind("x", x));
                v
            };
            t[4].record(Ok(pos1), xb);
            if pos1 == Outcome::Fails {
                t[5].blocked += 1;
                continue;
            }
            let (_, pb) = comp.split_pos(big_g[y1 as usize], y2);
            t[5].record(Ok(holds(pb == b)), xb);
        }
    }

    for c in 0..cb.shape_count() {
        let (o, g) = comp.decode(c);
        let binds = || vec![bind("c", lab(c))];
        let c0 = cc.j_outer(o);
        let big_g: Vec<u32> = (0..cb.pos(c0))
            .map(|x| cc.j_inner(g[comp.split_pos(c0, x).0 as usize]))
            .collect();
        let Some(r) = m.sigma(c0, &big_g) else {
            t[6].record(Err(Stop::Deferred), binds);
            continue;
        };
        let shape = holds(r == c);
        t[6].record(Ok(shape), binds);
        for x in 0..cb.pos(c) {
            if shape == Outcome::Fails {
                t[7].blocked += 1;
                continue;
            }
            let (q, p) = comp.split_pos(c, x);
            let (y1, y2) = m.pr(c0, &big_g, x);
            let (q0, _) = comp.split_pos(c0, y1);
            let (_, p1) = comp.split_pos(big_g[y1 as usize], y2);
            t[7].record(Ok(holds(q0 == q && p1 == p)), || {
                let mut v = binds();
                v.push(bind("x", x));
                v
            });
        }
    }

    let mut eqs = check_monadic(m).equations;
    debug_assert_eq!(eqs.len(), MONADIC_EQUATIONS.len());
    eqs.extend(
        t.into_iter()
            .zip(COMPATIBILITY_EQUATIONS)
            .map(|(t, n)| t.finish(n)),
    );
    EquationReport::new("compatible composite", eqs)
}

/// `u i f = σ ((ι, const i), λ(q, p). (f p, const ι))`, with `v` read off
/// the projection of that multiplication.
pub fn law_from_composite(cc: &CompatibleComposite) -> Result<DistLawData> {
    let comp = &cc.composite;
    let (outer, inner) = (&cc.outer, &cc.inner);
    let m = &cc.monadic;
    let cb = comp.container();
    let arg = |i: u32, f: &[u32]| -> (u32, Vec<u32>) {
        let c0 = cc.j_inner(i);
        let big_g = (0..cb.pos(c0))
            .map(|x| cc.j_outer(f[comp.split_pos(c0, x).1 as usize]))
            .collect();
        (c0, big_g)
    };
    let ifam = inner.base().families(outer.base().shape_count())?;
    for idx in 0..ifam.total() {
        let (i, f) = ifam.decode(idx);
        let (c0, big_g) = arg(i, &f);
        if m.sigma(c0, &big_g).is_none() {
            return Err(Error::Unsupported(format!(
                "composite multiplication undefined at i={} f={}",
                inner.base().label(i),
                outer.base().render_family(&f)
            )));
        }
    }
    let result = |i: u32, f: &[u32]| {
        let (c0, g) = arg(i, f);
        let r = m.sigma(c0, &g).expect("checked above");
        (c0, g, r)
    };
    let v = |i: u32, f: &[u32], q: u32, p: u32| {
        let (c0, g, r) = result(i, f);
        let (y1, y2) = m.pr(c0, &g, comp.join_pos(r, q, p));
        let (_, p0) = comp.split_pos(c0, y1);
        let (q1, _) = comp.split_pos(g[y1 as usize], y2);
        (p0, q1)
    };
    DistLawData::from_fns(
        LawKind::MndMnd,
        Slot::Monadic(inner.clone()),
        Slot::Monadic(outer.clone()),
        |i, f| comp.decode(result(i, f).2).0,
        |i, f, q| comp.decode(result(i, f).2).1[q as usize],
        |i, f, q, p| v(i, f, q, p).0,
        |i, f, q, p| v(i, f, q, p).1,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::check_law;
    use crate::zoo::{exception_law, list, writer, Monoid};

    #[test]
    fn exception_composite_is_compatible() {
        let law = exception_law(1, writer(&Monoid::cyclic(2))).unwrap();
        let cc = composite_from_law(&law).unwrap();
        let r = check_compatible(&cc);
        assert_eq!(r.equations.len(), 16);
        assert!(r.is_verified(), "{}", r.render_text());
    }

    #[test]
    fn law_round_trips_through_composite() {
        let law = exception_law(2, writer(&Monoid::cyclic(3))).unwrap();
        assert!(check_law(&law).is_verified());
        let cc = composite_from_law(&law).unwrap();
        let back = law_from_composite(&cc).unwrap();
        assert_eq!(back.flat(), law.flat());
        let cc2 = composite_from_law(&back).unwrap();
        assert_eq!(cc2, cc);
    }

    #[test]
    fn fueled_inner_defers() {
        let law = crate::zoo::reader_law(list(1).unwrap(), 2);
        // slot 2 is the reader: the composite is reader ∘ list.
        let cc = composite_from_law(&law.unwrap()).unwrap();
        let r = check_compatible(&cc);
        assert!(r.holds(), "{}", r.render_text());
    }

    #[test]
    fn rejects_other_kinds() {
        let law = crate::zoo::writer_reader_mixed_law(2, 2).unwrap();
        assert!(composite_from_law(&law).is_err());
    }
}
