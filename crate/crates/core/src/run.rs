//! Concrete runs and an independent replayer for each energy semantics.

use serde::Serialize;
use thiserror::Error;

use crate::arena::{Arena, StateId};

/// How an edge weight updates the energy level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semantics {
    /// Strict lower bound only.
    Lower { lower: i64 },
    /// Strict interval `[lower, upper]`.
    Interval { lower: i64, upper: i64 },
    /// Strict lower bound, surplus above `cap` is discarded.
    Weak { lower: i64, cap: i64 },
}

impl Semantics {
    pub fn lower(&self) -> i64 {
        match *self {
            Semantics::Lower { lower }
            | Semantics::Interval { lower, .. }
            | Semantics::Weak { lower, .. } => lower,
        }
    }

    pub fn admits(&self, level: i64) -> bool {
        match *self {
            Semantics::Lower { lower } => level >= lower,
            Semantics::Interval { lower, upper } => (lower..=upper).contains(&level),
            Semantics::Weak { lower, cap } => (lower..=cap).contains(&level),
        }
    }

    /// Level after taking an edge of weight `w` from `level`, or `None` when
    /// the move breaks the constraint.
    pub fn step(&self, level: i64, w: i64) -> Option<i64> {
        let raw = level.checked_add(w)?;
        let next = match *self {
            Semantics::Weak { cap, .. } => raw.min(cap),
            _ => raw,
        };
        self.admits(next).then_some(next)
    }
}

/// A finite run: the visited states with their energy levels, and the arena
/// edges linking consecutive positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Run {
    pub steps: Vec<(StateId, i64)>,
    pub edges: Vec<usize>,
}

impl Run {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn levels(&self) -> Vec<i64> {
        self.steps.iter().map(|&(_, l)| l).collect()
    }

    pub fn states(&self) -> Vec<StateId> {
        self.steps.iter().map(|&(q, _)| q).collect()
    }

    pub fn last(&self) -> (StateId, i64) {
        *self.steps.last().expect("a run has at least one position")
    }

    pub fn visits_target(&self, arena: &Arena) -> bool {
        self.steps.iter().any(|&(q, _)| arena.is_target(q))
    }

    /// CSV trace `index,state,level[,violating]`.
    pub fn to_csv(&self, arena: &Arena, soft: Option<i64>) -> String {
        let mut out = String::from(if soft.is_some() {
            "index,state,level,violating\n"
        } else {
            "index,state,level\n"
        });
        for (i, &(q, l)) in self.steps.iter().enumerate() {
            match soft {
                Some(s) => out.push_str(&format!("{i},{},{l},{}\n", arena.name(q), l > s)),
                None => out.push_str(&format!("{i},{},{l}\n", arena.name(q))),
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("initial level {0} violates the constraint")]
    BadStartLevel(i64),
    #[error("edge index {0} does not exist")]
    UnknownEdge(usize),
    #[error("edge at position {index} does not start at the current state")]
    Disconnected { index: usize },
    #[error("energy constraint broken at position {index} (from level {level})")]
    Infeasible { index: usize, level: i64 },
}

/// Replays `edges` from `(start, level)` under `sem`, checking every step.
pub fn replay(
    arena: &Arena,
    sem: Semantics,
    start: StateId,
    level: i64,
    edges: &[usize],
) -> Result<Run, ReplayError> {
    if !sem.admits(level) {
        return Err(ReplayError::BadStartLevel(level));
    }
    let mut steps = Vec::with_capacity(edges.len() + 1);
    steps.push((start, level));
    let (mut q, mut l) = (start, level);
    for (index, &ei) in edges.iter().enumerate() {
        if ei >= arena.edges().len() {
            return Err(ReplayError::UnknownEdge(ei));
        }
        let e = arena.edge(ei);
        if e.src != q {
            return Err(ReplayError::Disconnected { index });
        }
        l = sem
            .step(l, e.weight)
            .ok_or(ReplayError::Infeasible { index, level: l })?;
        q = e.dst;
        steps.push((q, l));
    }
    Ok(Run {
        steps,
        edges: edges.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn weak_semantics_clamps() {
        let sem = Semantics::Weak { lower: 0, cap: 5 };
        assert_eq!(sem.step(4, 2), Some(5));
        assert_eq!(sem.step(2, -3), None);
        let strict = Semantics::Interval { lower: 0, upper: 5 };
        assert_eq!(strict.step(4, 2), None);
    }

    #[test]
    fn replay_rejects_disconnected_paths() {
        let a = samples::weak_bound();
        // edge 0 is q0->q1, edge 2 is q2->q3
        let err = replay(&a, Semantics::Lower { lower: 0 }, a.initial(), 0, &[0, 2]).unwrap_err();
        assert_eq!(err, ReplayError::Disconnected { index: 1 });
    }
}
