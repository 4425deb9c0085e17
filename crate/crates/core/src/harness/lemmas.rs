//! Generated (path, level) cases for the replay properties of the weak
//! upper bound semantics.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arena::{Arena, StateId};
use crate::harness::gen::{random_arena_with, GenParams};
use crate::run::{replay, Run, Semantics};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// Replaying a feasible path from a higher level stays feasible and ends
    /// at least as high.
    HigherStartDominates,
    /// The effect of a path does not grow with the start level; when it
    /// shrinks, the higher replay touched the cap.
    EffectNonIncreasing,
    /// Replaying from the cap: back at the cap if the original maximum is at
    /// the end, `W + u' - u` if it is at the start.
    ReplayFromCap,
    /// Cutting out a cycle that did not raise the level never lowers the
    /// final level.
    NonPositiveCycleExcision,
    /// `W-L` turns of a non-decreasing cycle reach a fixed point.
    CycleIterationFixpoint,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::HigherStartDominates,
        Property::EffectNonIncreasing,
        Property::ReplayFromCap,
        Property::NonPositiveCycleExcision,
        Property::CycleIterationFixpoint,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Property::HigherStartDominates => "higher_start_dominates",
            Property::EffectNonIncreasing => "effect_non_increasing",
            Property::ReplayFromCap => "replay_from_cap",
            Property::NonPositiveCycleExcision => "non_positive_cycle_excision",
            Property::CycleIterationFixpoint => "cycle_iteration_fixpoint",
        }
    }
}

/// A feasible weak-semantics path in a random one-player arena.
#[derive(Clone, Debug)]
pub struct Case {
    pub arena: Arena,
    pub lower: i64,
    pub cap: i64,
    pub run: Run,
}

impl Case {
    fn sem(&self) -> Semantics {
        Semantics::Weak {
            lower: self.lower,
            cap: self.cap,
        }
    }

    fn start(&self) -> (StateId, i64) {
        self.run.steps[0]
    }

    fn replay_from(&self, level: i64, edges: &[usize]) -> Option<Run> {
        replay(&self.arena, self.sem(), self.start().0, level, edges).ok()
    }
}

/// Random walk choosing only edges that keep the level feasible.
pub fn random_case(seed: u64) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = GenParams {
        seed,
        n_states: rng.gen_range(1..=6),
        weight_min: -3,
        weight_max: 3,
        edge_density: rng.gen_range(0.2..0.7),
        ..GenParams::default()
    };
    let arena = random_arena_with(&mut rng, &params);
    let lower = rng.gen_range(-2..=2);
    let cap = lower + rng.gen_range(1..=6);
    let sem = Semantics::Weak { lower, cap };
    let start = StateId(rng.gen_range(0..arena.num_states()));
    let level = rng.gen_range(lower..=cap);
    let len = rng.gen_range(1..=14);
    let (mut q, mut l) = (start, level);
    let mut edges = Vec::new();
    for _ in 0..len {
        let ok: Vec<usize> = arena
            .out_edges(q)
            .iter()
            .copied()
            .filter(|&e| sem.step(l, arena.edge(e).weight).is_some())
            .collect();
        let Some(&e) = ok.choose(&mut rng) else { break };
        l = sem.step(l, arena.edge(e).weight).unwrap();
        q = arena.edge(e).dst;
        edges.push(e);
    }
    let run = replay(&arena, sem, start, level, &edges).expect("walk is feasible");
    Case { arena, lower, cap, run }
}

/// `Ok(true)`: property holds, `Ok(false)`: case not applicable,
/// `Err`: counterexample.
pub fn check(p: Property, case: &Case) -> Result<bool, String> {
    let (_, u) = case.start();
    let u_end = case.run.last().1;
    let edges = &case.run.edges;
    match p {
        Property::HigherStartDominates | Property::EffectNonIncreasing => {
            for v in u..=case.cap {
                let r = case
                    .replay_from(v, edges)
                    .ok_or_else(|| format!("infeasible from higher level {v}"))?;
                let v_end = r.last().1;
                if p == Property::HigherStartDominates && v_end < u_end {
                    return Err(format!("from {v} ends at {v_end} < {u_end}"));
                }
                if p == Property::EffectNonIncreasing {
                    if u_end - u < v_end - v {
                        return Err(format!("effect from {v} is {} > {}", v_end - v, u_end - u));
                    }
                    if u_end - u > v_end - v && !r.levels().contains(&case.cap) {
                        return Err(format!("effect shrank from {v} without touching the cap"));
                    }
                }
            }
            Ok(true)
        }
        Property::ReplayFromCap => {
            let levels = case.run.levels();
            let max = *levels.iter().max().unwrap();
            let at_end = u_end == max;
            let at_start = u == max;
            if !at_end && !at_start {
                return Ok(false);
            }
            let r = case
                .replay_from(case.cap, edges)
                .ok_or_else(|| "infeasible from the cap".to_string())?;
            let end = r.last().1;
            if at_end && end != case.cap {
                return Err(format!("maximum at the end, but replay from cap ends at {end}"));
            }
            if at_start && end != case.cap + u_end - u {
                return Err(format!("maximum at the start, replay from cap ends at {end}, expected {}", case.cap + u_end - u));
            }
            Ok(true)
        }
        Property::NonPositiveCycleExcision => {
            let steps = &case.run.steps;
            let mut applied = false;
            for j in 1..steps.len() {
                for i in 0..j {
                    if steps[i].0 != steps[j].0 || steps[j].1 > steps[i].1 {
                        continue;
                    }
                    applied = true;
                    let mut cut = edges[..i].to_vec();
                    cut.extend_from_slice(&edges[j..]);
                    let r = case
                        .replay_from(u, &cut)
                        .ok_or_else(|| format!("excising {i}..{j} breaks feasibility"))?;
                    if r.last().1 < u_end {
                        return Err(format!("excising {i}..{j} lowers the end to {}", r.last().1));
                    }
                }
            }
            Ok(applied)
        }
        Property::CycleIterationFixpoint => {
            let steps = &case.run.steps;
            let mut applied = false;
            for j in 1..steps.len() {
                for i in 0..j {
                    if steps[i].0 != steps[j].0 || steps[j].1 < steps[i].1 {
                        continue;
                    }
                    applied = true;
                    let cycle = &edges[i..j];
                    let reps = (case.cap - case.lower) as usize;
                    let iterated: Vec<usize> = (0..reps).flat_map(|_| cycle.iter().copied()).collect();
                    let r = replay(&case.arena, case.sem(), steps[i].0, steps[i].1, &iterated)
                        .map_err(|e| format!("iterating {i}..{j}: {e}"))?;
                    let x = r.last().1;
                    let once = replay(&case.arena, case.sem(), steps[i].0, x, cycle)
                        .map_err(|e| format!("one more turn of {i}..{j}: {e}"))?;
                    if once.last().1 != x {
                        return Err(format!("turn {} of {i}..{j} moves {x} to {}", reps + 1, once.last().1));
                    }
                }
            }
            Ok(applied)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub property: &'static str,
    pub cases: usize,
    pub attempts: u64,
    pub counterexamples: Vec<(u64, String)>,
}

/// Draws cases from consecutive seeds until `wanted` applicable ones have
/// been checked (or `max_attempts` seeds were tried).
pub fn run_property(p: Property, first_seed: u64, wanted: usize, max_attempts: u64) -> PropertyReport {
    let mut report = PropertyReport {
        property: p.name(),
        cases: 0,
        attempts: 0,
        counterexamples: Vec::new(),
    };
    let mut seed = first_seed;
    while report.cases < wanted && report.attempts < max_attempts {
        let case = random_case(seed);
        report.attempts += 1;
        match check(p, &case) {
            Ok(true) => report.cases += 1,
            Ok(false) => {}
            Err(msg) => {
                report.cases += 1;
                report.counterexamples.push((seed, msg));
            }
        }
        seed = seed.wrapping_add(1);
    }
    report
}
