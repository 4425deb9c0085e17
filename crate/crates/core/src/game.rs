//! Generic turn-based graph games: attractors, safety, breadth-first witnesses.

use std::collections::VecDeque;

use crate::arena::{Arena, Player, StateId};

/// Read-only view of a finite game graph with integer node and edge ids.
pub trait GameGraph {
    fn node_count(&self) -> usize;
    fn node_owner(&self, node: usize) -> Player;
    /// Edge ids leaving `node`, in canonical order.
    fn out_edge_ids(&self, node: usize) -> &[usize];
    fn edge_target(&self, edge: usize) -> usize;
}

impl GameGraph for Arena {
    fn node_count(&self) -> usize {
        self.num_states()
    }

    fn node_owner(&self, node: usize) -> Player {
        self.owner(StateId(node))
    }

    fn out_edge_ids(&self, node: usize) -> &[usize] {
        self.out_edges(StateId(node))
    }

    fn edge_target(&self, edge: usize) -> usize {
        self.edge(edge).dst.0
    }
}

/// Winner per node plus a memoryless strategy for the owner of every node
/// that its owner wins (where one is known).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinningRegion {
    pub winner: Vec<Player>,
    pub strategy: Vec<Option<usize>>,
}

impl WinningRegion {
    pub fn winner(&self, node: usize) -> Player {
        self.winner[node]
    }

    pub fn wins(&self, node: usize, player: Player) -> bool {
        self.winner[node] == player
    }

    pub fn strategy(&self, node: usize) -> Option<usize> {
        self.strategy[node]
    }

    pub fn region(&self, player: Player) -> Vec<usize> {
        (0..self.winner.len())
            .filter(|&n| self.winner[n] == player)
            .collect()
    }
}

fn predecessors<G: GameGraph + ?Sized>(g: &G) -> Vec<Vec<usize>> {
    let mut preds = vec![Vec::new(); g.node_count()];
    for n in 0..g.node_count() {
        for &e in g.out_edge_ids(n) {
            preds[g.edge_target(e)].push(n);
        }
    }
    preds
}

/// Ranks of the nodes from which `player` forces a visit to `targets`
/// (`None` outside the attractor). Targets have rank 0.
fn attractor_ranks<G: GameGraph + ?Sized>(g: &G, targets: &[bool], player: Player) -> Vec<Option<usize>> {
    let n = g.node_count();
    let preds = predecessors(g);
    let mut rank = vec![None; n];
    let mut remaining: Vec<usize> = (0..n).map(|v| g.out_edge_ids(v).len()).collect();
    let mut queue = VecDeque::new();
    for v in 0..n {
        if targets[v] {
            rank[v] = Some(0);
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        let r = rank[u].expect("queued nodes are ranked");
        for &p in &preds[u] {
            if rank[p].is_some() {
                continue;
            }
            // one counter decrement per edge p -> u
            remaining[p] -= 1;
            if g.node_owner(p) == player || remaining[p] == 0 {
                rank[p] = Some(r + 1);
                queue.push_back(p);
            }
        }
    }
    rank
}

/// Attractor of `targets` for `player`: `player` wins exactly on the nodes
/// from which she can force a visit to `targets`. Linear in the edges.
pub fn attractor<G: GameGraph + ?Sized>(g: &G, targets: &[bool], player: Player) -> WinningRegion {
    let n = g.node_count();
    assert_eq!(targets.len(), n, "target mask has wrong length");
    let rank = attractor_ranks(g, targets, player);
    let mut winner = vec![player.opponent(); n];
    let mut strategy = vec![None; n];
    for v in 0..n {
        let owner = g.node_owner(v);
        match rank[v] {
            Some(r) => {
                winner[v] = player;
                if owner == player {
                    let edges = g.out_edge_ids(v);
                    // lowest edge index making progress; on targets, any edge
                    // staying in the attractor
                    strategy[v] = edges
                        .iter()
                        .copied()
                        .find(|&e| matches!(rank[g.edge_target(e)], Some(s) if r == 0 || s < r))
                        .or_else(|| edges.first().copied());
                }
            }
            None => {
                if owner != player {
                    strategy[v] = g
                        .out_edge_ids(v)
                        .iter()
                        .copied()
                        .find(|&e| rank[g.edge_target(e)].is_none());
                }
            }
        }
    }
    WinningRegion { winner, strategy }
}

/// Safety for `player`: she wins exactly outside the opponent's attractor to
/// `avoid`.
pub fn solve_safety<G: GameGraph + ?Sized>(g: &G, avoid: &[bool], player: Player) -> WinningRegion {
    // the opponent's reachability game is exactly the dual
    attractor(g, avoid, player.opponent())
}

/// Shortest edge path from `start` to a node in `targets` that never enters a
/// `blocked` node. Ties are broken by canonical edge order.
pub fn shortest_path<G: GameGraph + ?Sized>(
    g: &G,
    start: usize,
    targets: &[bool],
    blocked: &[bool],
) -> Option<Vec<usize>> {
    if blocked[start] {
        return None;
    }
    if targets[start] {
        return Some(Vec::new());
    }
    let n = g.node_count();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &e in g.out_edge_ids(u) {
            let v = g.edge_target(e);
            if seen[v] || blocked[v] {
                continue;
            }
            seen[v] = true;
            parent[v] = Some((u, e));
            if targets[v] {
                let mut path = vec![e];
                let mut cur = u;
                while let Some((p, pe)) = parent[cur] {
                    path.push(pe);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(v);
        }
    }
    None
}

/// Nodes reachable from `start` (inclusive).
pub fn reachable<G: GameGraph + ?Sized>(g: &G, start: usize) -> Vec<bool> {
    let mut seen = vec![false; g.node_count()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &e in g.out_edge_ids(u) {
            let v = g.edge_target(e);
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}
