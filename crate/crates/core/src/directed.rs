//! Directed containers `(S ◁ P, o, ↓, ⊕)` and their five laws.

use crate::container::Container;
use crate::error::{Error, Result};
use crate::eval::{bind, holds, same, tp, Outcome, Stop, Tally};
use crate::monadic::EquationReport;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedContainer {
    base: Container,
    o: Vec<u32>,
    down: Vec<Vec<u32>>,
    oplus: Vec<Vec<Vec<u32>>>,
}

impl DirectedContainer {
    pub fn tabulate<O, D, A>(base: Container, o: O, down: D, oplus: A) -> Result<Self>
    where
        O: Fn(u32) -> u32,
        D: Fn(u32, u32) -> u32,
        A: Fn(u32, u32, u32) -> u32,
    {
        let n = base.shape_count();
        let ot = (0..n).map(&o).collect();
        let dt: Vec<Vec<u32>> = (0..n)
            .map(|s| (0..base.pos(s)).map(|p| down(s, p)).collect())
            .collect();
        let mut at = Vec::with_capacity(n as usize);
        for s in 0..n {
            let mut rows = Vec::new();
            for p in 0..base.pos(s) {
                let t = dt[s as usize][p as usize];
                let len = if t < n { base.pos(t) } else { 0 };
                rows.push((0..len).map(|p2| oplus(s, p, p2)).collect());
            }
            at.push(rows);
        }
        DirectedContainer::from_tables(base, ot, dt, at)
    }

    pub fn from_tables(
        base: Container,
        o: Vec<u32>,
        down: Vec<Vec<u32>>,
        oplus: Vec<Vec<Vec<u32>>>,
    ) -> Result<Self> {
        if !base.is_finite() {
            return Err(Error::Unsupported("directed containers must be finite".into()));
        }
        let n = base.shape_count() as usize;
        if o.len() != n || down.len() != n || oplus.len() != n {
            return Err(Error::invalid("o", format!("expected {n} shapes")));
        }
        for s in 0..n {
            let ps = base.pos(s as u32);
            if o[s] >= ps {
                return Err(Error::invalid(format!("o[{s}]"), format!("{} is not a position", o[s])));
            }
            if down[s].len() != ps as usize || oplus[s].len() != ps as usize {
                return Err(Error::invalid(format!("down[{s}]"), format!("expected {ps} entries")));
            }
            for p in 0..ps as usize {
                let t = down[s][p];
                if t as usize >= n {
                    return Err(Error::invalid(format!("down[{s}][{p}]"), format!("{t} is not a shape")));
                }
                if oplus[s][p].len() != base.pos(t) as usize {
                    return Err(Error::invalid(
                        format!("oplus[{s}][{p}]"),
                        format!("expected {} entries", base.pos(t)),
                    ));
                }
                if let Some(k) = oplus[s][p].iter().position(|&x| x >= ps) {
                    return Err(Error::invalid(format!("oplus[{s}][{p}][{k}]"), "not a position"));
                }
            }
        }
        Ok(DirectedContainer { base, o, down, oplus })
    }

    pub fn base(&self) -> &Container {
        &self.base
    }

    pub fn o(&self, s: u32) -> u32 {
        self.o[s as usize]
    }

    pub fn down(&self, s: u32, p: u32) -> u32 {
        self.down[s as usize][p as usize]
    }

    /// `p ⊕{s} p'` with `p' : P (s ↓ p)`.
    pub fn oplus(&self, s: u32, p: u32, p2: u32) -> u32 {
        self.oplus[s as usize][p as usize][p2 as usize]
    }

    pub fn o_table(&self) -> &[u32] {
        &self.o
    }

    pub fn down_table(&self) -> &[Vec<u32>] {
        &self.down
    }

    pub fn oplus_table(&self) -> &[Vec<Vec<u32>>] {
        &self.oplus
    }
}

pub const DIRECTED_EQUATIONS: [&str; 5] = [
    "down-unit",
    "down-assoc",
    "oplus-unit-r",
    "oplus-unit-l",
    "oplus-assoc",
];

pub fn check_directed(d: &DirectedContainer) -> EquationReport {
    let c = d.base();
    let mut t: Vec<Tally> = vec![Tally::default(); 5];
    for s in 0..c.shape_count() {
        let lab = c.label(s).to_string();
        let o = d.o(s);
        let law1 = holds(d.down(s, o) == s);
        t[0].record(Ok(law1), || vec![bind("s", &lab)]);
        for p in 0..c.pos(s) {
            let sp = d.down(s, p);
            t[2].record(Ok(holds(d.oplus(s, p, d.o(sp)) == p)), || {
                vec![bind("s", &lab), bind("p", p)]
            });
            for p2 in 0..c.pos(sp) {
                let pp = d.oplus(s, p, p2);
                let law2 = holds(d.down(s, pp) == d.down(sp, p2));
                t[1].record(Ok(law2), || {
                    vec![bind("s", &lab), bind("p", p), bind("p'", p2)]
                });
                let spp = d.down(sp, p2);
                for p3 in 0..c.pos(spp) {
                    let ev = if law2 == Outcome::Holds {
                        same(tp(s, d.oplus(s, pp, p3)), tp(s, d.oplus(s, p, d.oplus(sp, p2, p3))))
                    } else {
                        Err(Stop::Blocked)
                    };
                    t[4].record(ev, || {
                        vec![bind("s", &lab), bind("p", p), bind("p'", p2), bind("p''", p3)]
                    });
                }
            }
        }
        let so = d.down(s, o);
        for p in 0..c.pos(so) {
            let ev = if law1 == Outcome::Holds {
                same(tp(s, d.oplus(s, o, p)), tp(so, p))
            } else {
                Err(Stop::Blocked)
            };
            t[3].record(ev, || vec![bind("s", &lab), bind("p", p)]);
        }
    }
    let eqs = t
        .into_iter()
        .zip(DIRECTED_EQUATIONS)
        .map(|(t, n)| t.finish(n))
        .collect();
    EquationReport::new("directed container", eqs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monadic::Status;

    fn reader_dir(mul: impl Fn(u32, u32) -> u32) -> DirectedContainer {
        DirectedContainer::tabulate(Container::from_counts(vec![2]), |_| 0, |_, _| 0, |_, p, q| mul(p, q))
            .unwrap()
    }

    #[test]
    fn xor_reader_verifies() {
        assert!(check_directed(&reader_dir(|a, b| a ^ b)).is_verified());
    }

    #[test]
    fn non_associative_table_fails_associativity() {
        let r = check_directed(&reader_dir(|a, _| 1 - a));
        assert!(matches!(r.get("oplus-assoc").unwrap().status, Status::Refuted(_)));
        // Three elements: unit laws hold, associativity does not.
        let d = DirectedContainer::tabulate(
            Container::from_counts(vec![3]),
            |_| 0,
            |_, _| 0,
            |_, a, b| match (a, b) {
                (0, x) | (x, 0) => x,
                (1, 1) => 2,
                (1, 2) | (2, 1) => 0,
                _ => 2,
            },
        )
        .unwrap();
        let r = check_directed(&d);
        assert!(matches!(r.get("oplus-assoc").unwrap().status, Status::Refuted(_)));
        assert_eq!(r.get("oplus-unit-l").unwrap().status, Status::Verified);
        assert_eq!(r.get("oplus-unit-r").unwrap().status, Status::Verified);
    }

    #[test]
    fn bad_o_blocks_left_unit() {
        let d = DirectedContainer::tabulate(
            Container::from_counts(vec![1, 1]),
            |_| 0,
            |s, _| 1 - s,
            |_, _, _| 0,
        )
        .unwrap();
        let r = check_directed(&d);
        assert!(matches!(r.get("down-unit").unwrap().status, Status::Refuted(_)));
        assert_eq!(r.get("oplus-unit-l").unwrap().status, Status::Blocked);
    }
}
