//! One entry point per query: picks the solver for a constraint spec and
//! collects a serializable report.

use std::time::Instant;

use serde::Serialize;

use crate::arena::{Arena, Player};
use crate::constraint::{ConstraintSpec, Kind, Objective};
use crate::energy::solve_l_energy;
use crate::error::SolveError;
use crate::expanded::{build_l_capped_for, build_lu, build_lw, ExpandedArena};
use crate::game::shortest_path;
use crate::harness::oracle::oracle_solve;
use crate::lwpoly::{solve_lw_2p, solve_lw_reach_1p, Witness};
use crate::reductions::solve_l_reach;
use crate::run::Run;
use crate::violation::{solve_lv, SoftBound};

#[derive(Clone, Debug, Serialize)]
pub struct Stats {
    pub configs: Option<usize>,
    pub labels: Option<usize>,
    #[serde(rename = "wallMs", skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    /// Compact form (set-jumps and paths), when the polynomial solver ran.
    pub compact: Option<Witness>,
    pub length: u64,
    pub states: Vec<String>,
    pub levels: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub query: ConstraintSpec,
    pub solver: &'static str,
    pub winner: Player,
    pub witness: Option<WitnessReport>,
    pub stats: Stats,
}

impl SolveReport {
    pub fn p1_wins(&self) -> bool {
        self.winner == Player::P1
    }
}

/// Report plus the concrete winning run, if one was computed.
#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub report: SolveReport,
    pub run: Option<Run>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    /// Use the explicit expansion even where a dedicated solver exists.
    pub oracle: bool,
    /// Leave wall time out of the report.
    pub stable: bool,
}

fn explicit(x: &ExpandedArena, arena: &Arena, objective: Objective) -> (Player, Option<Run>) {
    let region = oracle_solve(x, objective);
    let winner = region.winner(x.init());
    let run = (winner == Player::P1 && objective == Objective::Reach && arena.is_one_player())
        .then(|| shortest_path(x, x.init(), x.target_mask(), &x.bad_mask()).map(|p| x.to_run(&p)))
        .flatten();
    (winner, run)
}

pub fn solve(arena: &Arena, spec: &ConstraintSpec, opts: SolveOptions) -> Result<SolveOutcome, SolveError> {
    spec.validate(arena)?;
    let start = Instant::now();
    let one_player = arena.is_one_player();
    let mut compact = None;
    let mut labels = None;
    let mut configs = None;
    let (solver, winner, run) = match spec.kind {
        Kind::L if !opts.oracle => {
            let p1 = match spec.objective {
                Objective::InfiniteRun => solve_l_energy(arena).p1_wins(arena.initial()),
                Objective::Reach => solve_l_reach(arena)?,
            };
            let winner = if p1 { Player::P1 } else { Player::P2 };
            // a concrete run comes from the capped expansion
            let run = if p1 && one_player && spec.objective == Objective::Reach {
                let x = build_l_capped_for(arena, spec.lower, Objective::Reach)?;
                configs = Some(x.len());
                explicit(&x, arena, spec.objective).1
            } else {
                None
            };
            let name = match spec.objective {
                Objective::InfiniteRun => "progress-measure",
                Objective::Reach => "reduction+progress-measure",
            };
            (name, winner, run)
        }
        Kind::L => {
            let x = build_l_capped_for(arena, spec.lower, spec.objective)?;
            configs = Some(x.len());
            let (w, r) = explicit(&x, arena, spec.objective);
            ("capped-expansion", w, r)
        }
        Kind::LU => {
            let x = build_lu(arena, spec.lower, spec.upper.unwrap())?;
            configs = Some(x.len());
            let (w, r) = explicit(&x, arena, spec.objective);
            ("expansion", w, r)
        }
        Kind::LW if one_player && spec.objective == Objective::Reach && !opts.oracle => {
            let rep = solve_lw_reach_1p(arena, spec.lower, spec.weak.unwrap())?;
            labels = Some(rep.table.labels);
            let run = match &rep.witness {
                Some(w) => Some(
                    w.expand(arena)
                        .map_err(|e| SolveError::Unsupported(format!("witness does not replay: {e}")))?,
                ),
                None => None,
            };
            compact = rep.witness;
            let winner = if run.is_some() { Player::P1 } else { Player::P2 };
            ("lwpoly", winner, run)
        }
        Kind::LW if opts.oracle => {
            let x = build_lw(arena, spec.lower, spec.weak.unwrap())?;
            configs = Some(x.len());
            let (w, r) = explicit(&x, arena, spec.objective);
            ("expansion", w, r)
        }
        Kind::LW => {
            let g = solve_lw_2p(arena, spec.lower, spec.weak.unwrap(), spec.objective)?;
            configs = Some(g.expanded.len());
            let (w, r) = explicit(&g.expanded, arena, spec.objective);
            ("expansion", w, r)
        }
        Kind::LV => {
            let bound = SoftBound {
                lower: spec.lower,
                soft: spec.soft.unwrap(),
                upper: spec.upper.unwrap(),
                violations: spec.violations.unwrap(),
                measure: spec.measure.unwrap(),
            };
            let sol = solve_lv(arena, &bound, spec.objective)?;
            configs = Some(sol.expanded.len());
            let winner = sol.region.winner(sol.expanded.init());
            let run = if winner == Player::P1 { sol.witness } else { None };
            ("expansion", winner, run)
        }
    };
    let witness = run.as_ref().map(|r| WitnessReport {
        length: compact.as_ref().map_or(r.len() as u64, Witness::expanded_len),
        compact,
        states: r.states().into_iter().map(|q| arena.name(q).to_string()).collect(),
        levels: r.levels(),
    });
    let wall_ms = (!opts.stable).then(|| start.elapsed().as_secs_f64() * 1e3);
    Ok(SolveOutcome {
        report: SolveReport {
            query: spec.clone(),
            solver,
            winner,
            witness,
            stats: Stats {
                configs,
                labels,
                wall_ms,
            },
        },
        run,
    })
}
