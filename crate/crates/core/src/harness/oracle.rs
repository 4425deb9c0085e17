//! Brute-force references. None of these share code with the solvers they
//! are compared against beyond the arena model and the replayer.

use std::collections::{HashMap, VecDeque};

use crate::arena::{Arena, Player, StateId};
use crate::constraint::{ConstraintSpec, Kind, Measure, Objective};
use crate::energy::one_player_survives;
use crate::error::SolveError;
use crate::expanded::{build_lu, build_lw, l_energy_cap_for, ExpandedArena};
use crate::game::{attractor, solve_safety, WinningRegion};
use crate::lwpoly::solve_lw_reach_1p;
use crate::reductions::solve_l_reach;
use crate::run::{replay, Run, Semantics};
use crate::violation::{solve_lv, violation_stats, SoftBound};

/// Largest number of memoryless opponent strategies enumerated.
pub const MAX_P2_STRATEGIES: u64 = 10_000;

/// Explicit attractor (reach good targets) or safety (avoid bad
/// configurations) on an expanded arena.
pub fn oracle_solve(x: &ExpandedArena, objective: Objective) -> WinningRegion {
    match objective {
        Objective::Reach => attractor(x, x.target_mask(), Player::P1),
        Objective::InfiniteRun => solve_safety(x, &x.bad_mask(), Player::P1),
    }
}

fn soft_bound(spec: &ConstraintSpec) -> Result<SoftBound, SolveError> {
    let need = |v: Option<i64>, p| v.ok_or(SolveError::MissingParameter(p, "LV"));
    Ok(SoftBound {
        lower: spec.lower,
        soft: need(spec.soft, "S")?,
        upper: need(spec.upper, "U")?,
        violations: need(spec.violations, "V")?,
        measure: spec.measure.ok_or(SolveError::MissingParameter("measure", "LV"))?,
    })
}

/// Winner at the initial state of a one-player arena, using the dedicated
/// one-player solver for the query where one exists.
pub fn solve_one_player(arena: &Arena, spec: &ConstraintSpec) -> Result<bool, SolveError> {
    spec.validate(arena)?;
    let need = |v: Option<i64>, p| v.ok_or(SolveError::MissingParameter(p, "LW"));
    Ok(match (spec.kind, spec.objective) {
        (Kind::L, Objective::InfiniteRun) => one_player_survives(arena, spec.lower, arena.initial()),
        (Kind::L, Objective::Reach) => solve_l_reach(arena)?,
        (Kind::LW, Objective::Reach) => solve_lw_reach_1p(arena, spec.lower, need(spec.weak, "W")?)?.reachable(),
        (Kind::LW, obj) => {
            let x = build_lw(arena, spec.lower, need(spec.weak, "W")?)?;
            oracle_solve(&x, obj).wins(x.init(), Player::P1)
        }
        (Kind::LU, obj) => {
            let x = build_lu(arena, spec.lower, spec.upper.ok_or(SolveError::MissingParameter("U", "LU"))?)?;
            oracle_solve(&x, obj).wins(x.init(), Player::P1)
        }
        (Kind::LV, obj) => solve_lv(arena, &soft_bound(spec)?, obj)?.p1_wins(),
    })
}

/// Player 2 wins iff one of her memoryless strategies leaves player 1 a
/// losing one-player game.
pub fn enumerate_p2_memoryless(arena: &Arena, spec: &ConstraintSpec) -> Result<Player, SolveError> {
    let p2: Vec<StateId> = arena.states().filter(|&q| arena.owner(q) == Player::P2).collect();
    let mut total: u64 = 1;
    for &q in &p2 {
        total = total.saturating_mul(arena.out_edges(q).len() as u64);
        if total > MAX_P2_STRATEGIES {
            return Err(SolveError::TooLarge {
                what: "memoryless opponent strategies",
                limit: MAX_P2_STRATEGIES,
            });
        }
    }
    let mut choice = vec![0usize; p2.len()];
    loop {
        let mut keep: Vec<usize> = Vec::new();
        for q in arena.states() {
            match p2.iter().position(|&p| p == q) {
                Some(k) => keep.push(arena.out_edges(q)[choice[k]]),
                None => keep.extend_from_slice(arena.out_edges(q)),
            }
        }
        keep.sort_unstable();
        let induced = arena.restrict_edges(&keep).expect("one edge kept per state").as_one_player();
        if !solve_one_player(&induced, spec)? {
            return Ok(Player::P2);
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == p2.len() {
                return Ok(Player::P1);
            }
            choice[k] += 1;
            if choice[k] < arena.out_edges(p2[k]).len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Search key: state, level, and violation data of the prefix (count,
/// trailing block, longest block, sum), zeroed where the measure ignores it.
type Key = (usize, i64, i64, i64, i64, i64);

struct Search<'a> {
    arena: &'a Arena,
    spec: &'a ConstraintSpec,
    sem: Semantics,
    soft: Option<(i64, i64, Measure)>,
    keys: Vec<Key>,
    index: HashMap<Key, usize>,
    parent: Vec<Option<(usize, usize)>>,
    succ: Vec<Vec<(usize, usize)>>,
}

impl<'a> Search<'a> {
    fn levels_to(&self, mut k: usize, extra: Option<i64>) -> Vec<i64> {
        let mut levels: Vec<i64> = extra.into_iter().collect();
        loop {
            levels.push(self.keys[k].1);
            match self.parent[k] {
                Some((p, _)) => k = p,
                None => break,
            }
        }
        levels.reverse();
        levels
    }

    fn path_to(&self, mut k: usize) -> Vec<usize> {
        let mut edges = Vec::new();
        while let Some((p, e)) = self.parent[k] {
            edges.push(e);
            k = p;
        }
        edges.reverse();
        edges
    }

    /// Successor key, with the violation data recomputed from the whole
    /// level sequence.
    fn next_key(&self, k: usize, edge: usize) -> Option<Key> {
        let e = self.arena.edge(edge);
        let (_, level, ..) = self.keys[k];
        let next = self.sem.step(level, e.weight)?;
        match self.soft {
            None => Some((e.dst.0, next, 0, 0, 0, 0)),
            Some((soft, v, measure)) => {
                let levels = self.levels_to(k, Some(next));
                let st = violation_stats(&levels, soft);
                if st.get(measure) > v {
                    return None;
                }
                // only the data the selected measure depends on; the others
                // may grow without bound
                Some(match measure {
                    Measure::Count => (e.dst.0, next, st.count, 0, 0, 0),
                    Measure::Sum => (e.dst.0, next, 0, 0, 0, st.sum),
                    Measure::Consecutive => {
                        let trailing = levels.iter().rev().take_while(|&&l| l > soft).count() as i64;
                        (e.dst.0, next, 0, trailing, st.max_consecutive, 0)
                    }
                })
            }
        }
    }

    fn intern(&mut self, key: Key, parent: Option<(usize, usize)>) -> (usize, bool) {
        if let Some(&i) = self.index.get(&key) {
            return (i, false);
        }
        let i = self.keys.len();
        self.keys.push(key);
        self.index.insert(key, i);
        self.parent.push(parent);
        self.succ.push(Vec::new());
        (i, true)
    }
}

/// Soft bound, violation budget and measure, when violations are tracked.
type Tracking = Option<(i64, i64, Measure)>;

fn semantics_for(arena: &Arena, spec: &ConstraintSpec) -> Result<(Semantics, Tracking), SolveError> {
    spec.validate(arena)?;
    Ok(match spec.kind {
        // unbounded levels are clipped by a cap large enough for the objective
        Kind::L => (
            Semantics::Weak {
                lower: spec.lower,
                cap: l_energy_cap_for(arena, spec.lower, spec.objective),
            },
            None,
        ),
        Kind::LU => (
            Semantics::Interval {
                lower: spec.lower,
                upper: spec.upper.unwrap(),
            },
            None,
        ),
        Kind::LW => (
            Semantics::Weak {
                lower: spec.lower,
                cap: spec.weak.unwrap(),
            },
            None,
        ),
        Kind::LV => (
            Semantics::Interval {
                lower: spec.lower,
                upper: spec.upper.unwrap(),
            },
            Some((spec.soft.unwrap(), spec.violations.unwrap(), spec.measure.unwrap())),
        ),
    })
}

/// Shortest run of at most `max_len` edges satisfying `spec` in a one-player
/// arena. For reachability the run ends on the first target; for infinite
/// runs it is a lasso (prefix followed by one turn of a repeatable cycle,
/// ending where the cycle starts). Every returned run is replayed.
pub fn bounded_run_oracle(arena: &Arena, spec: &ConstraintSpec, max_len: usize) -> Result<Option<Run>, SolveError> {
    if !arena.is_one_player() {
        let q = arena.states().find(|&q| arena.owner(q) == Player::P2).unwrap();
        return Err(SolveError::NotOnePlayer(arena.name(q).to_string()));
    }
    let (sem, soft) = semantics_for(arena, spec)?;
    let mut s = Search {
        arena,
        spec,
        sem,
        soft,
        keys: Vec::new(),
        index: HashMap::new(),
        parent: Vec::new(),
        succ: Vec::new(),
    };
    let (root, _) = s.intern((arena.initial().0, spec.lower, 0, 0, 0, 0), None);
    let mut depth = vec![0usize];
    let mut queue = VecDeque::from([root]);
    let reach = spec.objective == Objective::Reach;
    while let Some(k) = queue.pop_front() {
        if reach && arena.is_target(StateId(s.keys[k].0)) {
            return Ok(Some(checked(&s, s.path_to(k))));
        }
        if depth[k] == max_len {
            continue;
        }
        for &e in arena.out_edges(StateId(s.keys[k].0)) {
            let Some(key) = s.next_key(k, e) else { continue };
            let (j, new) = s.intern(key, Some((k, e)));
            s.succ[k].push((j, e));
            if new {
                depth.push(depth[k] + 1);
                queue.push_back(j);
            }
        }
    }
    if reach {
        return Ok(None);
    }
    Ok(find_lasso(&s).map(|edges| checked(&s, edges)))
}

/// Among explored keys, the one on a cycle with the shortest prefix, and
/// the shortest cycle through it.
fn find_lasso(s: &Search<'_>) -> Option<Vec<usize>> {
    let n = s.keys.len();
    // keys whose expansion was cut by the length bound have no recorded
    // successors and never lie on a cycle
    // keys are numbered in breadth-first order
    for k in 0..n {
        // BFS from k's successors back to k
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &(j, e) in &s.succ[k] {
            if !seen[j] {
                seen[j] = true;
                parent[j] = Some((k, e));
                queue.push_back(j);
            }
        }
        while let Some(u) = queue.pop_front() {
            if u == k {
                let mut cycle = Vec::new();
                let mut cur = k;
                loop {
                    let (p, e) = parent[cur].unwrap();
                    cycle.push(e);
                    cur = p;
                    if cur == k {
                        break;
                    }
                }
                cycle.reverse();
                let mut edges = s.path_to(k);
                edges.extend(cycle);
                return Some(edges);
            }
            for &(j, e) in &s.succ[u] {
                if !seen[j] {
                    seen[j] = true;
                    parent[j] = Some((u, e));
                    queue.push_back(j);
                }
            }
        }
    }
    None
}

fn checked(s: &Search<'_>, edges: Vec<usize>) -> Run {
    let sem = match s.spec.kind {
        Kind::L => Semantics::Lower { lower: s.spec.lower },
        _ => s.sem,
    };
    let run = replay(s.arena, sem, s.arena.initial(), s.spec.lower, &edges).expect("oracle runs replay");
    if let Some((soft, v, measure)) = s.soft {
        assert!(violation_stats(&run.levels(), soft).get(measure) <= v, "oracle run exceeds violations");
    }
    run
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::parse_arena;
    use crate::expanded::build_lw;
    use crate::samples;

    #[test]
    fn oracle_on_weak_bound_sample() {
        let a = samples::weak_bound();
        let x = build_lw(&a, 0, 5).unwrap();
        assert!(oracle_solve(&x, Objective::Reach).wins(x.init(), Player::P1));
        let x = build_lw(&a, 0, 4).unwrap();
        assert!(!oracle_solve(&x, Objective::Reach).wins(x.init(), Player::P1));
        let avoid_all = vec![true; x.len()];
        assert!(solve_safety(&x, &avoid_all, Player::P1).region(Player::P1).is_empty());
    }

    #[test]
    fn enumeration_on_one_player_matches() {
        let a = samples::weak_bound();
        let spec = ConstraintSpec::weak(0, 5, Objective::Reach);
        assert_eq!(enumerate_p2_memoryless(&a, &spec).unwrap(), Player::P1);
    }

    #[test]
    fn enumeration_finds_spoiler() {
        let a = parse_arena(
            "state a owner=2 init\nstate b owner=1\nstate t owner=1 target\nedge a 0 t\nedge a -1 b\nedge b 0 b\nedge t 0 t\n",
        )
        .unwrap();
        let spec = ConstraintSpec::weak(0, 2, Objective::Reach);
        assert_eq!(enumerate_p2_memoryless(&a, &spec).unwrap(), Player::P2);
    }

    #[test]
    fn enumeration_guard() {
        let mut text = String::new();
        for i in 0..6 {
            text.push_str(&format!("state s{i} owner=2{}\n", if i == 0 { " init target" } else { "" }));
        }
        for i in 0..6 {
            for j in 0..6 {
                text.push_str(&format!("edge s{i} 0 s{j}\n"));
            }
        }
        let a = parse_arena(&text).unwrap();
        let spec = ConstraintSpec::weak(0, 1, Objective::Reach);
        assert!(matches!(enumerate_p2_memoryless(&a, &spec), Err(SolveError::TooLarge { .. })));
    }

    #[test]
    fn bounded_runs() {
        let a = samples::weak_bound();
        let spec = ConstraintSpec::weak(0, 5, Objective::Reach);
        let run = bounded_run_oracle(&a, &spec, 100).unwrap().unwrap();
        assert_eq!(run.last().1, 0);
        assert!(bounded_run_oracle(&a, &spec, 0).unwrap().is_none());
        let lasso = bounded_run_oracle(&a, &ConstraintSpec::weak(0, 5, Objective::InfiniteRun), 100)
            .unwrap()
            .unwrap();
        assert_eq!(lasso.steps.iter().filter(|s| **s == lasso.last()).count(), 2);
    }

    #[test]
    fn bounded_soft_run() {
        let a = samples::soft_bound();
        let spec = ConstraintSpec::soft(0, 3, 6, 2, Measure::Count, Objective::Reach);
        let run = bounded_run_oracle(&a, &spec, 100).unwrap().unwrap();
        assert_eq!(violation_stats(&run.levels(), 3).count, 2);
        let spec = ConstraintSpec::soft(0, 3, 6, 1, Measure::Count, Objective::Reach);
        assert!(bounded_run_oracle(&a, &spec, 100).unwrap().is_none());
    }
}
