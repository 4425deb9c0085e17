//! Explicit configuration graphs: an arena unfolded with its energy level and,
//! for soft bounds, one violation counter.
//!
//! Only the fragment reachable from the initial configuration is built. A
//! broken strict bound leads to the single `Err` sink (zero self-loop) for the
//! interval and weak semantics. For soft bounds an exceeded level or counter
//! leads to `Tainted(q)`, one absorbing copy of each arena state.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::arena::{Arena, Player, StateId};
use crate::constraint::{check_order, Measure, Objective};
use crate::error::SolveError;
use crate::game::GameGraph;
use crate::run::Run;

/// Hard limit on the number of materialized configurations.
pub const MAX_CONFIGS: usize = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Config {
    Err,
    At {
        state: StateId,
        level: i64,
        counter: Option<i64>,
    },
    Tainted {
        state: StateId,
    },
}

impl Config {
    pub fn state(&self) -> Option<StateId> {
        match *self {
            Config::Err => None,
            Config::At { state, .. } | Config::Tainted { state } => Some(state),
        }
    }

    pub fn level(&self) -> Option<i64> {
        match *self {
            Config::At { level, .. } => Some(level),
            _ => None,
        }
    }

    pub fn is_bad(&self) -> bool {
        !matches!(self, Config::At { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExEdge {
    pub src: usize,
    pub weight: i64,
    pub dst: usize,
    /// Arena edge this transition comes from (`None` for the `Err` loop).
    pub arena_edge: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ExpandedArena {
    configs: Vec<Config>,
    owners: Vec<Player>,
    edges: Vec<ExEdge>,
    out: Vec<Vec<usize>>,
    init: usize,
    targets: Vec<bool>,
    index: HashMap<Config, usize>,
}

impl ExpandedArena {
    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn configs(&self) -> &[Config] {
        &self.configs
    }

    pub fn config(&self, i: usize) -> Config {
        self.configs[i]
    }

    pub fn edges(&self) -> &[ExEdge] {
        &self.edges
    }

    pub fn init(&self) -> usize {
        self.init
    }

    pub fn index_of(&self, c: &Config) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn is_bad(&self, i: usize) -> bool {
        self.configs[i].is_bad()
    }

    pub fn is_target(&self, i: usize) -> bool {
        self.targets[i]
    }

    pub fn target_mask(&self) -> &[bool] {
        &self.targets
    }

    pub fn bad_mask(&self) -> Vec<bool> {
        self.configs.iter().map(Config::is_bad).collect()
    }

    /// True when every configuration is owned by player 1.
    pub fn is_one_player(&self) -> bool {
        self.owners.iter().all(|&p| p == Player::P1)
    }

    /// Converts a path of expanded edges from `init` into an arena run.
    /// Panics if the path leaves the good configurations.
    pub fn to_run(&self, path: &[usize]) -> Run {
        let at = |i: usize| match self.configs[i] {
            Config::At { state, level, .. } => (state, level),
            other => panic!("path enters bad configuration {other:?}"),
        };
        let mut steps = vec![at(self.init)];
        let mut edges = Vec::with_capacity(path.len());
        for &e in path {
            let ex = self.edges[e];
            steps.push(at(ex.dst));
            edges.push(ex.arena_edge.expect("good configurations only use arena edges"));
        }
        Run { steps, edges }
    }

    pub fn config_name(&self, arena: &Arena, i: usize) -> String {
        match self.configs[i] {
            Config::Err => "err".to_string(),
            Config::Tainted { state } => format!("{}@bot", arena.name(state)),
            Config::At {
                state,
                level,
                counter: None,
            } => format!("{}@{level}", arena.name(state)),
            Config::At {
                state,
                level,
                counter: Some(c),
            } => format!("{}@{level}@{c}", arena.name(state)),
        }
    }

    /// The expanded arena in the arena text format, config names
    /// `state@level[@counter]`.
    pub fn to_text(&self, arena: &Arena) -> String {
        let mut s = String::new();
        for i in 0..self.len() {
            let owner = match self.owners[i] {
                Player::P1 => 1,
                Player::P2 => 2,
            };
            let _ = write!(s, "state {} owner={owner}", self.config_name(arena, i));
            if i == self.init {
                s.push_str(" init");
            }
            if self.targets[i] {
                s.push_str(" target");
            }
            s.push('\n');
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "edge {} {} {}",
                self.config_name(arena, e.src),
                e.weight,
                self.config_name(arena, e.dst)
            );
        }
        s
    }
}

impl GameGraph for ExpandedArena {
    fn node_count(&self) -> usize {
        self.configs.len()
    }

    fn node_owner(&self, node: usize) -> Player {
        self.owners[node]
    }

    fn out_edge_ids(&self, node: usize) -> &[usize] {
        &self.out[node]
    }

    fn edge_target(&self, edge: usize) -> usize {
        self.edges[edge].dst
    }
}

/// Forward exploration from `(initial, start_level, start_counter)`.
/// `step(level, counter, weight)` returns the successor payload, or `None`
/// when the move is bad.
fn explore(
    arena: &Arena,
    start_level: i64,
    start_counter: Option<i64>,
    step: impl Fn(i64, Option<i64>, i64) -> Option<(i64, Option<i64>)>,
    bad_to_err: bool,
) -> Result<ExpandedArena, SolveError> {
    let mut x = ExpandedArena {
        configs: Vec::new(),
        owners: Vec::new(),
        edges: Vec::new(),
        out: Vec::new(),
        init: 0,
        targets: Vec::new(),
        index: HashMap::new(),
    };
    let mut queue = VecDeque::new();
    let intern = |x: &mut ExpandedArena, c: Config, queue: &mut VecDeque<usize>| -> Result<usize, SolveError> {
        if let Some(&i) = x.index.get(&c) {
            return Ok(i);
        }
        if x.configs.len() >= MAX_CONFIGS {
            return Err(SolveError::TooLarge {
                what: "expanded arena",
                limit: MAX_CONFIGS as u64,
            });
        }
        let i = x.configs.len();
        x.configs.push(c);
        x.owners.push(match c {
            Config::Err => Player::P1,
            Config::At { state, .. } | Config::Tainted { state } => arena.owner(state),
        });
        x.targets.push(matches!(c, Config::At { state, .. } if arena.is_target(state)));
        x.out.push(Vec::new());
        x.index.insert(c, i);
        queue.push_back(i);
        Ok(i)
    };
    let init = Config::At {
        state: arena.initial(),
        level: start_level,
        counter: start_counter,
    };
    x.init = intern(&mut x, init, &mut queue)?;
    while let Some(i) = queue.pop_front() {
        let c = x.configs[i];
        let mut succ: Vec<(i64, Config, Option<usize>)> = Vec::new();
        match c {
            Config::Err => succ.push((0, Config::Err, None)),
            Config::Tainted { state } => {
                for &ei in arena.out_edges(state) {
                    let e = arena.edge(ei);
                    succ.push((e.weight, Config::Tainted { state: e.dst }, Some(ei)));
                }
            }
            Config::At { state, level, counter } => {
                for &ei in arena.out_edges(state) {
                    let e = arena.edge(ei);
                    let next = match step(level, counter, e.weight) {
                        Some((level, counter)) => Config::At {
                            state: e.dst,
                            level,
                            counter,
                        },
                        None if bad_to_err => Config::Err,
                        None => Config::Tainted { state: e.dst },
                    };
                    succ.push((e.weight, next, Some(ei)));
                }
            }
        }
        for (weight, next, arena_edge) in succ {
            let j = intern(&mut x, next, &mut queue)?;
            let id = x.edges.len();
            x.edges.push(ExEdge {
                src: i,
                weight,
                dst: j,
                arena_edge,
            });
            x.out[i].push(id);
        }
    }
    Ok(x)
}

/// Interval semantics `[lower, upper]`: a move leaving the interval goes to `Err`.
pub fn build_lu(arena: &Arena, lower: i64, upper: i64) -> Result<ExpandedArena, SolveError> {
    check_order("L", lower, "U", upper)?;
    explore(
        arena,
        lower,
        None,
        |l, _, w| {
            let next = crate::arith::add(l, w);
            (lower..=upper).contains(&next).then_some((next, None))
        },
        true,
    )
}

/// Weak upper bound: levels are clamped at `cap`, dropping below `lower` goes
/// to `Err`.
pub fn build_lw(arena: &Arena, lower: i64, cap: i64) -> Result<ExpandedArena, SolveError> {
    check_order("L", lower, "W", cap)?;
    explore(
        arena,
        lower,
        None,
        |l, _, w| {
            let next = crate::arith::add(l, w).min(cap);
            (next >= lower).then_some((next, None))
        },
        true,
    )
}

/// Soft bound `soft` inside the strict interval `[lower, upper]`, at most
/// `max_violations` under `measure`. Only the selected counter is stored.
pub fn build_luv(
    arena: &Arena,
    lower: i64,
    soft: i64,
    upper: i64,
    max_violations: i64,
    measure: Measure,
) -> Result<ExpandedArena, SolveError> {
    check_order("L", lower, "S", soft)?;
    check_order("S", soft, "U", upper)?;
    if max_violations < 0 {
        return Err(SolveError::NegativeViolationBound(max_violations));
    }
    let update = move |counter: i64, level: i64| -> Option<i64> {
        let violating = level > soft;
        let next = match measure {
            Measure::Count => counter + i64::from(violating),
            Measure::Consecutive => {
                if violating {
                    counter + 1
                } else {
                    0
                }
            }
            Measure::Sum => {
                if violating {
                    crate::arith::add(counter, level - soft)
                } else {
                    counter
                }
            }
        };
        (next <= max_violations).then_some(next)
    };
    // the initial position counts too (it cannot violate when lower <= soft)
    let Some(c0) = update(0, lower) else {
        unreachable!("the initial level never exceeds the soft bound");
    };
    explore(
        arena,
        lower,
        Some(c0),
        |l, c, w| {
            let next = crate::arith::add(l, w);
            if !(lower..=upper).contains(&next) {
                return None;
            }
            let c = update(c.expect("soft configurations carry a counter"), next)?;
            Some((next, Some(c)))
        },
        false,
    )
}

/// Cap used for the finite stand-in of the unbounded lower-bound arena:
/// `lower + sum of positive weights + 1`.
pub fn l_energy_cap(arena: &Arena, lower: i64) -> i64 {
    crate::arith::add(crate::arith::add(lower, arena.sum_pos_weights()), 1)
}

/// Cap large enough for both objectives: reachability may need to bank the
/// total negative weight of an acyclic path before leaving a pumping cycle.
pub fn l_energy_cap_for(arena: &Arena, lower: i64, objective: Objective) -> i64 {
    match objective {
        Objective::InfiniteRun => l_energy_cap(arena, lower),
        Objective::Reach => {
            let bank = arena.sum_pos_weights().max(arena.sum_neg_weights());
            crate::arith::add(crate::arith::add(lower, bank), 1)
        }
    }
}

/// Weak-bound arena with cap [`l_energy_cap`]; a finite oracle for the
/// lower-bound game with infinite-run objective.
pub fn build_l_capped(arena: &Arena, lower: i64) -> Result<ExpandedArena, SolveError> {
    build_lw(arena, lower, l_energy_cap(arena, lower))
}

/// Like [`build_l_capped`] with the cap chosen for `objective`.
pub fn build_l_capped_for(arena: &Arena, lower: i64, objective: Objective) -> Result<ExpandedArena, SolveError> {
    build_lw(arena, lower, l_energy_cap_for(arena, lower, objective))
}

/// The set of expanded targets restricted to good configurations whose arena
/// state is in `states`.
pub fn targets_on(x: &ExpandedArena, states: &BTreeSet<StateId>) -> Vec<bool> {
    x.configs()
        .iter()
        .map(|c| matches!(c, Config::At { state, .. } if states.contains(state)))
        .collect()
}
