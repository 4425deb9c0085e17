//! Translations between lower-bound energy games (infinite run) and
//! lower-bound energy reachability games.
//!
//! The rational perturbation of the weights is made integral by scaling
//! every weight by `|Q|+1` and perturbing by one: a simple cycle has at most
//! `|Q|` edges, so the perturbation never flips the sign of a cycle.

use std::collections::HashSet;

use serde::Serialize;

use crate::arena::{Arena, Edge, Player, StateId};
use crate::energy::solve_l_energy;
use crate::error::SolveError;
use crate::game::attractor;

#[derive(Clone, Debug, Serialize)]
pub struct ReductionOutput {
    #[serde(skip)]
    pub arena: Arena,
    pub scale: i64,
    pub delta: Option<i64>,
    /// For each original state, the states standing for it in the new arena.
    pub mapping: Vec<Vec<StateId>>,
}

impl ReductionOutput {
    /// The reduced arena in the text format, preceded by the state mapping
    /// as comments.
    pub fn to_text(&self, original: &Arena) -> String {
        let mut s = format!("# scale {}\n", self.scale);
        if let Some(d) = self.delta {
            s.push_str(&format!("# delta {d}\n"));
        }
        for (q, images) in self.mapping.iter().enumerate() {
            let names: Vec<&str> = images.iter().map(|&i| self.arena.name(i)).collect();
            s.push_str(&format!("# {} -> {}\n", original.name(StateId(q)), names.join(" ")));
        }
        s.push_str(&self.arena.to_text());
        s
    }
}

fn fresh(taken: &HashSet<String>, base: &str) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}_{i}"))
        .find(|n| !taken.contains(n))
        .expect("some suffix is free")
}

fn names(arena: &Arena) -> HashSet<String> {
    arena.states().map(|q| arena.name(q).to_string()).collect()
}

/// Infinite-run game to reachability game: every edge `q -w-> q'` becomes
/// `q -(scale*w+1)-> copy(q')`; the player-1 copy either continues to `q'`
/// with weight 0 or pays `delta` to enter the fresh target.
pub fn reduce_energy_to_reach(arena: &Arena) -> ReductionOutput {
    let n = arena.num_states();
    let scale = n as i64 + 1;
    let mut taken = names(arena);
    let mut states: Vec<(String, Player)> = arena
        .states()
        .map(|q| (arena.name(q).to_string(), arena.owner(q)))
        .collect();
    for q in arena.states() {
        let name = fresh(&taken, &format!("{}_c", arena.name(q)));
        taken.insert(name.clone());
        states.push((name, Player::P1));
    }
    let target = StateId(states.len());
    states.push((fresh(&taken, "qt"), Player::P1));

    let scaled: Vec<i64> = arena
        .edges()
        .iter()
        .map(|e| crate::arith::add(crate::arith::mul(scale, e.weight), 1))
        .collect();
    let delta = crate::arith::add(scaled.iter().filter(|&&w| w > 0).fold(0, |a, &w| crate::arith::add(a, w)), 1);

    let copy = |q: StateId| StateId(n + q.0);
    let mut edges: Vec<Edge> = arena
        .edges()
        .iter()
        .zip(&scaled)
        .map(|(e, &w)| Edge {
            src: e.src,
            weight: w,
            dst: copy(e.dst),
        })
        .collect();
    for q in arena.states() {
        edges.push(Edge {
            src: copy(q),
            weight: 0,
            dst: q,
        });
        edges.push(Edge {
            src: copy(q),
            weight: -delta,
            dst: target,
        });
    }
    edges.push(Edge {
        src: target,
        weight: 0,
        dst: target,
    });
    let reduced = Arena::new(states, edges, arena.initial(), [target]).expect("reduction output is well formed");
    ReductionOutput {
        arena: reduced,
        scale,
        delta: Some(delta),
        mapping: arena.states().map(|q| vec![q, copy(q)]).collect(),
    }
}

/// Reachability game to infinite-run game: keep player 1's qualitative
/// attractor of the targets, turn targets into zero self-loops, perturb the
/// other weights down by one and enter through a fresh state paying `scale`.
pub fn reduce_reach_to_energy(arena: &Arena) -> Result<ReductionOutput, SolveError> {
    if arena.targets().is_empty() {
        return Err(SolveError::NoTargets);
    }
    let n = arena.num_states();
    let scale = n as i64 + 1;
    let mask: Vec<bool> = (0..n).map(|q| arena.is_target(StateId(q))).collect();
    let attr = attractor(arena, &mask, Player::P1);
    let inside: Vec<bool> = (0..n).map(|q| attr.wins(q, Player::P1)).collect();

    let mut new_id = vec![None; n];
    let mut states = Vec::new();
    for q in arena.states().filter(|q| inside[q.0]) {
        new_id[q.0] = Some(StateId(states.len()));
        states.push((arena.name(q).to_string(), arena.owner(q)));
    }
    let mut taken = names(arena);
    let init = StateId(states.len());
    let init_name = fresh(&taken, "init");
    taken.insert(init_name.clone());
    states.push((init_name, Player::P1));

    let mut edges = Vec::new();
    for q in arena.states().filter(|q| inside[q.0]) {
        let src = new_id[q.0].unwrap();
        if arena.is_target(q) {
            edges.push(Edge { src, weight: 0, dst: src });
            continue;
        }
        for &ei in arena.out_edges(q) {
            let e = arena.edge(ei);
            // player 1 never needs to leave the attractor; player 2 cannot
            if let Some(dst) = new_id[e.dst.0] {
                let w = crate::arith::sub(crate::arith::mul(scale, e.weight), 1);
                edges.push(Edge { src, weight: w, dst });
            }
        }
    }
    match new_id[arena.initial().0] {
        Some(dst) => edges.push(Edge {
            src: init,
            weight: scale,
            dst,
        }),
        None => {
            let sink = StateId(states.len());
            states.push((fresh(&taken, "sink"), Player::P1));
            edges.push(Edge {
                src: init,
                weight: scale,
                dst: sink,
            });
            edges.push(Edge {
                src: sink,
                weight: -1,
                dst: sink,
            });
        }
    }
    let reduced = Arena::new(states, edges, init, []).expect("reduction output is well formed");
    Ok(ReductionOutput {
        arena: reduced,
        scale,
        delta: None,
        mapping: (0..n).map(|q| new_id[q].into_iter().collect()).collect(),
    })
}

/// Lower-bound reachability from `(init, L)`, decided through the reduction
/// and the progress measure.
pub fn solve_l_reach(arena: &Arena) -> Result<bool, SolveError> {
    let red = reduce_reach_to_energy(arena)?;
    Ok(solve_l_energy(&red.arena).p1_wins(red.arena.initial()))
}

/// Lower-bound infinite-run game from `(init, L)`, decided as reachability
/// on the reduced arena with the explicit capped expansion.
pub fn solve_l_energy_via_reach(arena: &Arena, lower: i64) -> Result<bool, SolveError> {
    let red = reduce_energy_to_reach(arena);
    let x = crate::expanded::build_l_capped_for(&red.arena, lower, crate::constraint::Objective::Reach)?;
    let region = attractor(&x, x.target_mask(), Player::P1);
    Ok(region.wins(x.init(), Player::P1))
}
