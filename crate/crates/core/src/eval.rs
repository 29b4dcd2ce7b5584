//! Evaluation plumbing shared by the equation checkers.
//!
//! Positions carry the shape whose position set they live in, so that a
//! dependent equation whose two sides end up in different sets is reported
//! as blocked rather than compared.

use crate::monadic::{Counterexample, EquationResult, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Stop {
    /// A governing equation fails here, so this one is ill-typed.
    Blocked,
    /// A shape beyond the fuel bound is involved.
    Deferred,
    /// A table entry that is not assigned yet (search only).
    Pending(u32),
    /// A bound index lies outside its value-dependent range.
    Vacuous,
}

pub(crate) type Ev<T> = Result<T, Stop>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Outcome {
    Holds,
    Fails,
}

pub(crate) fn holds(b: bool) -> Outcome {
    if b {
        Outcome::Holds
    } else {
        Outcome::Fails
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct TPos {
    pub shape: u32,
    pub idx: u32,
}

pub(crate) fn tp(shape: u32, idx: u32) -> TPos {
    TPos { shape, idx }
}

/// Heterogeneous equality of positions.
pub(crate) fn same(a: TPos, b: TPos) -> Ev<Outcome> {
    if a.shape != b.shape {
        Err(Stop::Blocked)
    } else {
        Ok(holds(a.idx == b.idx))
    }
}

/// Fails with `Blocked` unless a governing equation held.
pub(crate) fn require(o: Outcome) -> Ev<()> {
    match o {
        Outcome::Holds => Ok(()),
        Outcome::Fails => Err(Stop::Blocked),
    }
}

#[derive(Debug, Default, Clone)]
pub(crate) struct Tally {
    pub checked: u64,
    pub deferred: u64,
    pub blocked: u64,
    pub fail: Option<Counterexample>,
}

impl Tally {
    pub fn record<F>(&mut self, ev: Ev<Outcome>, bindings: F)
    where
        F: FnOnce() -> Vec<(String, String)>,
    {
        match ev {
            Ok(Outcome::Holds) => self.checked += 1,
            Ok(Outcome::Fails) => {
                self.checked += 1;
                if self.fail.is_none() {
                    self.fail = Some(Counterexample {
                        bindings: bindings(),
                    });
                }
            }
            Err(Stop::Vacuous) => {}
            Err(Stop::Deferred) => self.deferred += 1,
            Err(Stop::Blocked) | Err(Stop::Pending(_)) => self.blocked += 1,
        }
    }

    pub fn finish(self, name: &str) -> EquationResult {
        let status = match self.fail {
            Some(cx) => Status::Refuted(cx),
            None if self.blocked > 0 => Status::Blocked,
            None if self.deferred > 0 => Status::BoundedVerified,
            None => Status::Verified,
        };
        EquationResult {
            name: name.to_string(),
            checked: self.checked,
            deferred: self.deferred,
            blocked: self.blocked,
            status,
            note: None,
        }
    }
}

pub(crate) fn bind(name: &str, value: impl ToString) -> (String, String) {
    (name.to_string(), value.to_string())
}

pub(crate) fn render_list(xs: &[u32]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}
