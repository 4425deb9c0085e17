//! Compact witnesses: plain edge segments interleaved with set-jumps that
//! stand for an optimal cycle iterated `W-L` times.

use serde::Serialize;

use crate::arena::{Arena, StateId};
use crate::run::{replay, ReplayError, Run, Semantics};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Segment {
    Path { edges: Vec<usize> },
    SetJump { state: StateId, level: i64, cycle: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub lower: i64,
    pub cap: i64,
    pub start: StateId,
    pub segments: Vec<Segment>,
}

/// One move of the augmented arena.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Move {
    Edge(usize),
    Jump(StateId),
}

impl Witness {
    pub fn jumps(&self) -> usize {
        self.segments
            .iter()
            .filter(|s| matches!(s, Segment::SetJump { .. }))
            .count()
    }

    pub fn paths(&self) -> impl Iterator<Item = &[usize]> {
        self.segments.iter().filter_map(|s| match s {
            Segment::Path { edges } => Some(edges.as_slice()),
            _ => None,
        })
    }

    /// Arena edges of the expanded run; each cycle is repeated `W-L` times.
    pub fn expanded_edges(&self) -> Vec<usize> {
        let reps = (self.cap - self.lower) as usize;
        let mut out = Vec::new();
        for s in &self.segments {
            match s {
                Segment::Path { edges } => out.extend_from_slice(edges),
                Segment::SetJump { cycle, .. } => {
                    for _ in 0..reps {
                        out.extend_from_slice(cycle);
                    }
                }
            }
        }
        out
    }

    /// Concrete run, checked step by step under the weak semantics.
    pub fn expand(&self, arena: &Arena) -> Result<Run, ReplayError> {
        let sem = Semantics::Weak {
            lower: self.lower,
            cap: self.cap,
        };
        replay(arena, sem, self.start, self.lower, &self.expanded_edges())
    }

    /// Number of edges of the expanded run, without building it.
    pub fn expanded_len(&self) -> u64 {
        let reps = (self.cap - self.lower) as u64;
        self.segments
            .iter()
            .map(|s| match s {
                Segment::Path { edges } => edges.len() as u64,
                Segment::SetJump { cycle, .. } => cycle.len() as u64 * reps,
            })
            .sum()
    }
}

/// Groups augmented moves into segments.
pub(crate) fn segments_of(moves: &[Move], jump: impl Fn(StateId) -> (i64, Vec<usize>)) -> Vec<Segment> {
    let mut segments = Vec::new();
    let mut current = Vec::new();
    for m in moves {
        match m {
            Move::Edge(e) => current.push(*e),
            Move::Jump(q) => {
                if !current.is_empty() {
                    segments.push(Segment::Path {
                        edges: std::mem::take(&mut current),
                    });
                }
                let (level, cycle) = jump(*q);
                segments.push(Segment::SetJump {
                    state: *q,
                    level,
                    cycle,
                });
            }
        }
    }
    if !current.is_empty() {
        segments.push(Segment::Path { edges: current });
    }
    segments
}
