//! Polynomial-time reachability for one-player games with a strict lower
//! bound and a weak upper bound, and the explicit two-player solver.
//!
//! The one-player algorithm computes, for every state, the best positive
//! universal cycle; adds a set-jump self-loop standing for that cycle
//! iterated `W-L` times; then keeps only the maximal level per state over a
//! layered unfolding of depth `(|Q|+1)^2`.

mod labels;
mod witness;

pub use labels::{
    best_cycle_at, label_dag, label_step, universal_cycle_table, CycleLabel, LabelDag, LabelEntry, UniversalCycle,
    UniversalCycleTable,
};
pub use witness::{Segment, Witness};

use serde::Serialize;

use crate::arena::{Arena, Player, StateId};
use crate::constraint::{check_order, Objective};
use crate::error::SolveError;
use crate::expanded::{build_lw, ExpandedArena};
use crate::game::{attractor, solve_safety, WinningRegion};
use witness::{segments_of, Move};

/// The arena together with one optional set-jump self-loop per state.
#[derive(Clone, Debug)]
pub struct AugmentedArena<'a> {
    pub arena: &'a Arena,
    pub table: UniversalCycleTable,
}

impl<'a> AugmentedArena<'a> {
    pub fn jump_level(&self, q: StateId) -> Option<i64> {
        self.table.jump_level(q)
    }

    pub fn jump_count(&self) -> usize {
        self.table.cycles.iter().filter(|c| c.is_some()).count()
    }

    /// Level after `mv` from `level`, or `None` below `L`.
    fn apply(&self, level: i64, mv: &Move) -> Option<(StateId, i64)> {
        match *mv {
            Move::Edge(e) => {
                let e = self.arena.edge(e);
                let next = crate::arith::add(level, e.weight).min(self.table.cap);
                (next >= self.table.lower).then_some((e.dst, next))
            }
            Move::Jump(q) => Some((q, self.jump_level(q).expect("jump only where a cycle exists"))),
        }
    }

    /// Positions visited by `moves` from `(start, L)`, or `None` if infeasible.
    fn trace(&self, start: StateId, moves: &[Move]) -> Option<Vec<(StateId, i64)>> {
        let mut pos = vec![(start, self.table.lower)];
        for mv in moves {
            let (_, l) = *pos.last().unwrap();
            pos.push(self.apply(l, mv)?);
        }
        Some(pos)
    }
}

pub fn augment_with_set_edges(arena: &Arena, table: UniversalCycleTable) -> AugmentedArena<'_> {
    assert_eq!(table.cycles.len(), arena.num_states(), "table belongs to another arena");
    AugmentedArena { arena, table }
}

#[derive(Clone, Debug, Serialize)]
pub struct LwReachReport {
    pub witness: Option<Witness>,
    /// Maximal level reachable per state within the unfolding (`None` if never reached).
    pub max_levels: Vec<Option<i64>>,
    pub table: UniversalCycleTable,
    pub depth: usize,
}

impl LwReachReport {
    pub fn reachable(&self) -> bool {
        self.witness.is_some()
    }
}

fn check_1p(arena: &Arena, lower: i64, cap: i64) -> Result<(), SolveError> {
    check_order("L", lower, "W", cap)?;
    if let Some(q) = arena.states().find(|&q| arena.owner(q) == Player::P2) {
        return Err(SolveError::NotOnePlayer(arena.name(q).to_string()));
    }
    if arena.targets().is_empty() {
        return Err(SolveError::NoTargets);
    }
    Ok(())
}

/// Decides whether a target is reachable from `(init, L)` and, if so,
/// returns a compact witness.
pub fn solve_lw_reach_1p(arena: &Arena, lower: i64, cap: i64) -> Result<LwReachReport, SolveError> {
    check_1p(arena, lower, cap)?;
    let table = universal_cycle_table(arena, lower, cap);
    let aug = augment_with_set_edges(arena, table);
    let n = arena.num_states();
    let depth = (n + 1) * (n + 1);

    let mut cur: Vec<Option<i64>> = vec![None; n];
    cur[arena.initial().0] = Some(lower);
    let mut max_levels = cur.clone();
    // parents[d][q]: move into q at layer d
    let mut parents: Vec<Vec<Option<(StateId, Move)>>> = vec![vec![None; n]];
    let mut hit: Option<(usize, StateId)> = arena.targets().iter().find(|t| cur[t.0].is_some()).map(|&t| (0, t));
    for d in 0..depth {
        let mut next: Vec<Option<i64>> = vec![None; n];
        let mut par: Vec<Option<(StateId, Move)>> = vec![None; n];
        for q in arena.states() {
            let Some(l) = cur[q.0] else { continue };
            let moves = aug
                .jump_level(q)
                .map(|_| Move::Jump(q))
                .into_iter()
                .chain(arena.out_edges(q).iter().map(|&e| Move::Edge(e)));
            for mv in moves {
                let Some((dst, nl)) = aug.apply(l, &mv) else { continue };
                if next[dst.0].is_none_or(|old| nl > old) {
                    next[dst.0] = Some(nl);
                    par[dst.0] = Some((q, mv));
                }
            }
        }
        for q in 0..n {
            if let Some(l) = next[q] {
                max_levels[q] = Some(max_levels[q].map_or(l, |m: i64| m.max(l)));
            }
        }
        parents.push(par);
        cur = next;
        if hit.is_none() {
            hit = arena.targets().iter().find(|t| cur[t.0].is_some()).map(|&t| (d + 1, t));
        }
    }

    let witness = hit.map(|(d, t)| {
        let mut moves = Vec::with_capacity(d);
        let mut q = t;
        for layer in (1..=d).rev() {
            let (p, mv) = parents[layer][q.0].clone().expect("reached nodes have a parent");
            moves.push(mv);
            q = p;
        }
        moves.reverse();
        let moves = normalize(&aug, arena.initial(), moves);
        let segments = segments_of(&moves, |q| {
            let c = aug.table.get(q).expect("jump has a cycle");
            (cap - c.gap, c.edges.clone())
        });
        Witness {
            lower,
            cap,
            start: arena.initial(),
            segments,
        }
    });
    let table = aug.table;
    Ok(LwReachReport {
        witness,
        max_levels,
        table,
        depth,
    })
}

/// Cuts every loop whose second visit is not higher than the first, and
/// anything after the first target. Replaying from a higher level never
/// hurts under the weak semantics, so the result stays feasible.
fn normalize(aug: &AugmentedArena<'_>, start: StateId, mut moves: Vec<Move>) -> Vec<Move> {
    'outer: loop {
        let mut pos = aug.trace(start, &moves).expect("normalized paths stay feasible");
        if let Some(t) = pos.iter().position(|(q, _)| aug.arena.is_target(*q)) {
            moves.truncate(t);
            pos.truncate(t + 1);
        }
        for j in 1..pos.len() {
            for i in 0..j {
                if pos[i].0 == pos[j].0 && pos[j].1 <= pos[i].1 {
                    moves.drain(i..j);
                    continue 'outer;
                }
            }
        }
        return moves;
    }
}

/// Result of the explicit solver on the weak-bound expansion.
#[derive(Clone, Debug)]
pub struct LwGame {
    pub expanded: ExpandedArena,
    pub region: WinningRegion,
}

impl LwGame {
    pub fn p1_wins(&self) -> bool {
        self.region.wins(self.expanded.init(), Player::P1)
    }
}

/// Two-player LW games solved exactly on the expanded arena: attractor of
/// the good target configurations, or safety against `Err`.
pub fn solve_lw_2p(arena: &Arena, lower: i64, cap: i64, objective: Objective) -> Result<LwGame, SolveError> {
    if objective == Objective::Reach && arena.targets().is_empty() {
        return Err(SolveError::NoTargets);
    }
    let expanded = build_lw(arena, lower, cap)?;
    let region = match objective {
        Objective::Reach => attractor(&expanded, expanded.target_mask(), Player::P1),
        Objective::InfiniteRun => solve_safety(&expanded, &expanded.bad_mask(), Player::P1),
    };
    Ok(LwGame { expanded, region })
}
