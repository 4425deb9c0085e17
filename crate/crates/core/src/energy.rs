//! Lower-bound energy games with an infinite-run objective.
//!
//! Two-player games use a progress measure: `credit[q]` is the least extra
//! energy above `L` with which player 1 survives from `q`, or `None` (top)
//! when no finite credit suffices. One-player games also have a direct
//! Bellman-Ford route that does not share code with the lifting loop.

use std::collections::VecDeque;

use crate::arena::{Arena, Player, StateId};
use crate::game::WinningRegion;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LEnergySolution {
    /// Minimal initial credit above `L` per state (`None` = infinite).
    pub credit: Vec<Option<i64>>,
    /// Winner when starting at level `L`, with a memoryless strategy.
    pub region: WinningRegion,
}

impl LEnergySolution {
    pub fn p1_wins(&self, q: StateId) -> bool {
        self.region.wins(q.0, Player::P1)
    }
}

/// Credit after taking an edge of weight `w` into a state needing `need`.
fn lift_edge(need: Option<i64>, w: i64, cap: i64) -> Option<i64> {
    let c = crate::arith::sub(need?, w).max(0);
    (c <= cap).then_some(c)
}

/// `None` sorts above every finite credit.
fn worse(a: Option<i64>, b: Option<i64>) -> bool {
    match (a, b) {
        (None, _) => b.is_some(),
        (Some(_), None) => false,
        (Some(x), Some(y)) => x > y,
    }
}

fn best_for(arena: &Arena, credit: &[Option<i64>], q: StateId, cap: i64) -> (Option<i64>, usize) {
    let maximize = arena.owner(q) == Player::P2;
    let mut best: Option<(Option<i64>, usize)> = None;
    for &ei in arena.out_edges(q) {
        let e = arena.edge(ei);
        let v = lift_edge(credit[e.dst.0], e.weight, cap);
        let better = match best {
            None => true,
            Some((b, _)) => {
                if maximize {
                    worse(v, b)
                } else {
                    worse(b, v)
                }
            }
        };
        if better {
            best = Some((v, ei));
        }
    }
    best.expect("every state has an outgoing edge")
}

/// Minimal credits by monotone lifting from zero. The credit of a winning
/// state never exceeds the total negative weight, so anything larger is top.
pub fn minimal_credit(arena: &Arena) -> Vec<Option<i64>> {
    let n = arena.num_states();
    let cap = arena.sum_neg_weights();
    let mut preds = vec![Vec::new(); n];
    for e in arena.edges() {
        preds[e.dst.0].push(e.src.0);
    }
    let mut credit = vec![Some(0i64); n];
    let mut queued = vec![true; n];
    let mut work: VecDeque<usize> = (0..n).collect();
    while let Some(q) = work.pop_front() {
        queued[q] = false;
        let (v, _) = best_for(arena, &credit, StateId(q), cap);
        if worse(v, credit[q]) {
            credit[q] = v;
            for &p in &preds[q] {
                if !queued[p] {
                    queued[p] = true;
                    work.push_back(p);
                }
            }
        }
    }
    credit
}

/// Solves the lower-bound infinite-run game from every state at level `L`.
/// The answer does not depend on `L` itself, only on the credit.
pub fn solve_l_energy(arena: &Arena) -> LEnergySolution {
    let credit = minimal_credit(arena);
    let cap = arena.sum_neg_weights();
    let n = arena.num_states();
    let mut winner = vec![Player::P2; n];
    let mut strategy = vec![None; n];
    for q in arena.states() {
        let p1 = credit[q.0] == Some(0);
        winner[q.0] = if p1 { Player::P1 } else { Player::P2 };
        let owner = arena.owner(q);
        if (owner == Player::P1) == p1 {
            strategy[q.0] = Some(best_for(arena, &credit, q, cap).1);
        }
    }
    LEnergySolution {
        credit,
        region: WinningRegion { winner, strategy },
    }
}

/// One-player route: does an infinite run from `start` keep the level at or
/// above `lower` forever? Bellman-Ford on the maximal reachable level.
pub fn one_player_survives(arena: &Arena, lower: i64, start: StateId) -> bool {
    let n = arena.num_states();
    let mut best: Vec<Option<i64>> = vec![None; n];
    best[start.0] = Some(lower);
    for _round in 0..n {
        let mut changed = false;
        for e in arena.edges() {
            let Some(b) = best[e.src.0] else { continue };
            let next = crate::arith::add(b, e.weight);
            if next >= lower && best[e.dst.0].is_none_or(|d| next > d) {
                best[e.dst.0] = Some(next);
                changed = true;
            }
        }
        if !changed {
            return tight_cycle(arena, &best);
        }
    }
    // still improving after |Q| rounds: a positive cycle is reachable and
    // feasible, so it can be pumped forever
    true
}

/// Whether the tight edges (`best[dst] == best[src] + w`) contain a cycle.
fn tight_cycle(arena: &Arena, best: &[Option<i64>]) -> bool {
    let n = arena.num_states();
    let tight = |ei: usize| {
        let e = arena.edge(ei);
        matches!((best[e.src.0], best[e.dst.0]), (Some(a), Some(b)) if b == a + e.weight)
    };
    // Kahn: a cycle exists iff not every node gets peeled
    let mut indeg = vec![0usize; n];
    for ei in 0..arena.edges().len() {
        if tight(ei) {
            indeg[arena.edge(ei).dst.0] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&q| indeg[q] == 0).collect();
    let mut peeled = 0;
    while let Some(q) = stack.pop() {
        peeled += 1;
        for &ei in arena.out_edges(StateId(q)) {
            if tight(ei) {
                let d = arena.edge(ei).dst.0;
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    stack.push(d);
                }
            }
        }
    }
    peeled < n
}

/// One-player solution: winners from the Bellman-Ford route, strategy from
/// the progress measure.
pub fn solve_l_energy_1p(arena: &Arena, lower: i64) -> LEnergySolution {
    let mut sol = solve_l_energy(arena);
    for q in arena.states() {
        sol.region.winner[q.0] = if one_player_survives(arena, lower, q) {
            Player::P1
        } else {
            Player::P2
        };
    }
    sol
}
