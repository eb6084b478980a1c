//! The `SC_σ` stack machine.
//!
//! Entries of the input are read left to right. Before pushing the pending
//! entry `x`, the machine looks at the triple `(x, top, second-from-top)`;
//! while the stack holds at least two entries and that triple has the
//! relative order `σ`, the top is popped to the output. Otherwise `x` is
//! pushed. Once the input is exhausted the stack is drained top-first.
//!
//! Pops caused by the pattern test are [`EventKind::SigmaPop`]; the final
//! drain produces [`EventKind::DrainPop`]. Their count is the CRO statistic.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{Pattern3, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EventKind {
    Push,
    SigmaPop,
    DrainPop,
}

impl EventKind {
    pub fn is_pop(self) -> bool {
        !matches!(self, EventKind::Push)
    }

    fn tag(self) -> &'static str {
        match self {
            EventKind::Push => "PUSH",
            EventKind::SigmaPop => "POP_SIGMA",
            EventKind::DrainPop => "POP_DRAIN",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MachineEvent {
    pub kind: EventKind,
    pub value: u32,
    /// 1-based ordinal within the trace.
    pub step: usize,
}

/// Full event log of one run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MachineTrace {
    pub sigma: Pattern3,
    pub input: Permutation,
    pub output: Permutation,
    pub events: Vec<MachineEvent>,
}

/// Stack contents (bottom to top) followed by the unread input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombinationView {
    pub entries: Vec<u32>,
}

/// Runs the machine over `input` with an arbitrary pop predicate
/// `pop(pending, top, second)`. Each push and pop is reported to `sink`,
/// which may return false to stop early; the return value is false iff the
/// run was stopped.
#[inline]
pub(crate) fn drive<P, S>(input: &[u32], stack: &mut Vec<u32>, mut pop: P, mut sink: S) -> bool
where
    P: FnMut(u32, u32, u32) -> bool,
    S: FnMut(EventKind, u32) -> bool,
{
    stack.clear();
    for &x in input {
        while stack.len() >= 2 {
            let top = stack[stack.len() - 1];
            let second = stack[stack.len() - 2];
            if !pop(x, top, second) {
                break;
            }
            stack.pop();
            if !sink(EventKind::SigmaPop, top) {
                return false;
            }
        }
        stack.push(x);
        if !sink(EventKind::Push, x) {
            return false;
        }
    }
    while let Some(top) = stack.pop() {
        if !sink(EventKind::DrainPop, top) {
            return false;
        }
    }
    true
}

/// Reusable machine for hot loops; keeps its stack allocation between runs.
#[derive(Clone, Debug)]
pub struct Machine {
    sigma: Pattern3,
    stack: Vec<u32>,
}

impl Machine {
    pub fn new(sigma: Pattern3) -> Self {
        Machine {
            sigma,
            stack: Vec::new(),
        }
    }

    pub fn sigma(&self) -> Pattern3 {
        self.sigma
    }

    /// Writes the image of `input` into `out` (cleared first).
    pub fn map_into(&mut self, input: &[u32], out: &mut Vec<u32>) {
        out.clear();
        let sigma = self.sigma;
        drive(
            input,
            &mut self.stack,
            |x, t, s| sigma.matches(x, t, s),
            |kind, v| {
                if kind.is_pop() {
                    out.push(v);
                }
                true
            },
        );
    }

    /// Whether `input` maps to `target`, stopping at the first mismatch.
    pub fn maps_to(&mut self, input: &[u32], target: &[u32]) -> bool {
        debug_assert_eq!(input.len(), target.len());
        let sigma = self.sigma;
        let mut next = 0;
        drive(
            input,
            &mut self.stack,
            |x, t, s| sigma.matches(x, t, s),
            |kind, v| {
                if !kind.is_pop() {
                    return true;
                }
                let ok = target[next] == v;
                next += 1;
                ok
            },
        )
    }
}

/// `SC_σ(τ)`.
pub fn sc_map(sigma: Pattern3, tau: &Permutation) -> Permutation {
    let mut out = Vec::with_capacity(tau.len());
    Machine::new(sigma).map_into(tau.entries(), &mut out);
    Permutation::from_vec_unchecked(out)
}

/// Instrumented run of `SC_σ` on `τ`.
pub fn sc_trace(sigma: Pattern3, tau: &Permutation) -> MachineTrace {
    sc_trace_with_rule(sigma, tau, |x, t, s| sigma.matches(x, t, s))
}

/// Instrumented run with a caller-supplied pop predicate in place of the
/// pattern test. The predicate sees `(pending, top, second)` and is only
/// consulted when the stack holds at least two entries. Used for mutation
/// testing of the verification harness.
pub fn sc_trace_with_rule<P>(sigma: Pattern3, tau: &Permutation, rule: P) -> MachineTrace
where
    P: FnMut(u32, u32, u32) -> bool,
{
    let n = tau.len();
    let mut events = Vec::with_capacity(2 * n);
    let mut output = Vec::with_capacity(n);
    let mut stack = Vec::with_capacity(n);
    drive(tau.entries(), &mut stack, rule, |kind, value| {
        if kind.is_pop() {
            output.push(value);
        }
        events.push(MachineEvent {
            kind,
            value,
            step: events.len() + 1,
        });
        true
    });
    MachineTrace {
        sigma,
        input: tau.clone(),
        output: Permutation::from_vec_unchecked(output),
        events,
    }
}

/// Number of pops caused by the pattern test (drain pops excluded).
pub fn cro(sigma: Pattern3, tau: &Permutation) -> usize {
    let mut count = 0;
    let mut stack = Vec::with_capacity(tau.len());
    drive(
        tau.entries(),
        &mut stack,
        |x, t, s| sigma.matches(x, t, s),
        |kind, _| {
            count += (kind == EventKind::SigmaPop) as usize;
            true
        },
    );
    count
}

impl MachineTrace {
    pub fn cro(&self) -> usize {
        self.events
            .iter()
            .filter(|e| e.kind == EventKind::SigmaPop)
            .count()
    }

    pub fn pop_count(&self) -> usize {
        self.events.iter().filter(|e| e.kind.is_pop()).count()
    }

    /// Values of all pops in event order.
    pub fn pop_values(&self) -> Vec<u32> {
        self.events
            .iter()
            .filter(|e| e.kind.is_pop())
            .map(|e| e.value)
            .collect()
    }

    pub fn sigma_pop_values(&self) -> Vec<u32> {
        self.events
            .iter()
            .filter(|e| e.kind == EventKind::SigmaPop)
            .map(|e| e.value)
            .collect()
    }

    /// The combination just after `after_pops` pops have happened.
    pub fn combination_view(&self, after_pops: usize) -> Result<CombinationView> {
        let total = self.pop_count();
        if after_pops > total {
            return Err(Error::invalid(format!(
                "after_pops = {after_pops} exceeds the {total} pops of this trace"
            )));
        }
        let mut stack = Vec::new();
        let mut pushed = 0;
        let mut popped = 0;
        for e in &self.events {
            if popped == after_pops {
                break;
            }
            match e.kind {
                EventKind::Push => {
                    stack.push(e.value);
                    pushed += 1;
                }
                EventKind::SigmaPop | EventKind::DrainPop => {
                    stack.pop();
                    popped += 1;
                }
            }
        }
        stack.extend_from_slice(&self.input.entries()[pushed..]);
        Ok(CombinationView { entries: stack })
    }

    /// Checks the structural invariants every trace must satisfy. Returns a
    /// description of the first violation.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let n = self.input.len();
        let pushes = self
            .events
            .iter()
            .filter(|e| e.kind == EventKind::Push)
            .count();
        if pushes != n || self.pop_count() != n {
            return Err(format!(
                "expected {n} pushes and {n} pops, saw {pushes} and {}",
                self.pop_count()
            ));
        }
        if self.events.iter().enumerate().any(|(i, e)| e.step != i + 1) {
            return Err("event steps are not 1, 2, 3, ...".into());
        }
        let last_push = self.events.iter().rposition(|e| e.kind == EventKind::Push);
        let first_drain = self
            .events
            .iter()
            .position(|e| e.kind == EventKind::DrainPop);
        if let (Some(p), Some(d)) = (last_push, first_drain) {
            if d < p {
                return Err("drain pop before the final push".into());
            }
        }
        if self.events[last_push.unwrap_or(0)..]
            .iter()
            .any(|e| e.kind == EventKind::SigmaPop)
        {
            return Err("pattern pop after the final push".into());
        }
        if self.pop_values() != self.output.entries() {
            return Err("pop values differ from the output".into());
        }
        let mut sorted = self.output.entries().to_vec();
        sorted.sort_unstable();
        if sorted != (1..=n as u32).collect::<Vec<_>>() {
            return Err("output is not a rearrangement of the input".into());
        }
        Ok(())
    }

    /// Line-oriented serialization: one `PUSH v` / `POP_SIGMA v` /
    /// `POP_DRAIN v` per event, then `OUTPUT <perm>` and `CRO <k>`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MachineTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.events {
            writeln!(f, "{} {}", e.kind.tag(), e.value)?;
        }
        writeln!(f, "OUTPUT {}", self.output)?;
        writeln!(f, "CRO {}", self.cro())
    }
}
