//! Seeded random arenas.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arena::{Arena, Edge, Player, StateId};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, rename_all = "camelCase")]
pub struct GenParams {
    pub seed: u64,
    pub n_states: usize,
    pub p2_fraction: f64,
    pub weight_min: i64,
    pub weight_max: i64,
    pub edge_density: f64,
    pub target_count: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            seed: 0,
            n_states: 5,
            p2_fraction: 0.0,
            weight_min: -4,
            weight_max: 4,
            edge_density: 0.35,
            target_count: 1,
        }
    }
}

/// Deterministic in `params`. States are `q0..`, `q0` is initial, and every
/// state without an outgoing edge gets one random edge.
pub fn random_arena(params: &GenParams) -> Arena {
    assert!(params.n_states > 0, "need at least one state");
    assert!(params.weight_min <= params.weight_max, "empty weight range");
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    random_arena_with(&mut rng, params)
}

pub(crate) fn random_arena_with(rng: &mut ChaCha8Rng, params: &GenParams) -> Arena {
    let n = params.n_states;
    let states: Vec<(String, Player)> = (0..n)
        .map(|i| {
            let p2 = rng.gen_bool(params.p2_fraction.clamp(0.0, 1.0));
            (format!("q{i}"), if p2 { Player::P2 } else { Player::P1 })
        })
        .collect();
    let weight = |rng: &mut ChaCha8Rng| rng.gen_range(params.weight_min..=params.weight_max);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(params.edge_density.clamp(0.0, 1.0)) {
                let w = weight(rng);
                edges.push(Edge {
                    src: StateId(i),
                    weight: w,
                    dst: StateId(j),
                });
            }
        }
    }
    // repair pass
    for i in 0..n {
        if !edges.iter().any(|e| e.src.0 == i) {
            let j = rng.gen_range(0..n);
            let w = weight(rng);
            edges.push(Edge {
                src: StateId(i),
                weight: w,
                dst: StateId(j),
            });
        }
    }
    edges.sort_by_key(|e| e.src.0);
    let k = params.target_count.min(n);
    let mut targets: Vec<StateId> = sample(rng, n, k).into_iter().map(StateId).collect();
    targets.sort();
    Arena::new(states, edges, StateId(0), targets).expect("generated arenas are valid")
}
