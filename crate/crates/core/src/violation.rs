//! Soft upper bounds: violation measures, the explicit solver, the bound
//! existence check and violation minimization.

use serde::Serialize;

use crate::arena::{Arena, Player};
use crate::constraint::{check_order, Measure, Objective};
use crate::error::SolveError;
use crate::expanded::{build_luv, ExpandedArena};
use crate::game::{attractor, shortest_path, solve_safety, WinningRegion};
use crate::run::Run;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ViolationStats {
    pub count: i64,
    #[serde(rename = "maxConsecutive")]
    pub max_consecutive: i64,
    pub sum: i64,
}

impl ViolationStats {
    pub fn get(&self, measure: Measure) -> i64 {
        match measure {
            Measure::Count => self.count,
            Measure::Consecutive => self.max_consecutive,
            Measure::Sum => self.sum,
        }
    }
}

/// Violations of the soft bound `soft` along a sequence of levels, one per
/// position.
pub fn violation_stats(levels: &[i64], soft: i64) -> ViolationStats {
    let mut stats = ViolationStats::default();
    let mut block = 0;
    for &l in levels {
        if l > soft {
            stats.count += 1;
            stats.sum = crate::arith::add(stats.sum, l - soft);
            block += 1;
            stats.max_consecutive = stats.max_consecutive.max(block);
        } else {
            block = 0;
        }
    }
    stats
}

/// Strict bounds `L <= S <= U` plus at most `violations` under `measure`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SoftBound {
    pub lower: i64,
    pub soft: i64,
    pub upper: i64,
    pub violations: i64,
    pub measure: Measure,
}

impl SoftBound {
    pub fn with(&self, upper: i64, violations: i64) -> SoftBound {
        SoftBound {
            upper,
            violations,
            ..*self
        }
    }
}

#[derive(Clone, Debug)]
pub struct LvSolution {
    pub expanded: ExpandedArena,
    pub region: WinningRegion,
    /// Shortest winning run, for one-player reachability only.
    pub witness: Option<Run>,
}

impl LvSolution {
    pub fn p1_wins(&self) -> bool {
        self.region.wins(self.expanded.init(), Player::P1)
    }
}

pub fn solve_lv(arena: &Arena, bound: &SoftBound, objective: Objective) -> Result<LvSolution, SolveError> {
    if objective == Objective::Reach && arena.targets().is_empty() {
        return Err(SolveError::NoTargets);
    }
    let x = build_luv(arena, bound.lower, bound.soft, bound.upper, bound.violations, bound.measure)?;
    let bad = x.bad_mask();
    let (region, witness) = match objective {
        Objective::Reach => {
            let region = attractor(&x, x.target_mask(), Player::P1);
            let witness = if arena.is_one_player() {
                shortest_path(&x, x.init(), x.target_mask(), &bad).map(|p| x.to_run(&p))
            } else {
                None
            };
            (region, witness)
        }
        Objective::InfiniteRun => (solve_safety(&x, &bad, Player::P1), None),
    };
    Ok(LvSolution {
        expanded: x,
        region,
        witness,
    })
}

fn wins(arena: &Arena, bound: &SoftBound, objective: Objective) -> Result<bool, SolveError> {
    Ok(solve_lv(arena, bound, objective)?.p1_wins())
}

/// Upper bound that is as good as any: `S + V * w_max`. Returns it when
/// player 1 wins with it.
pub fn bound_existence(
    arena: &Arena,
    lower: i64,
    soft: i64,
    violations: i64,
    measure: Measure,
    objective: Objective,
) -> Result<Option<i64>, SolveError> {
    check_order("L", lower, "S", soft)?;
    if violations < 0 {
        return Err(SolveError::NegativeViolationBound(violations));
    }
    let upper = crate::arith::add(soft, crate::arith::mul(violations, arena.max_pos_weight()));
    let bound = SoftBound {
        lower,
        soft,
        upper,
        violations,
        measure,
    };
    Ok(wins(arena, &bound, objective)?.then_some(upper))
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimizeResult {
    #[serde(rename = "bestV")]
    pub best_v: i64,
    #[serde(rename = "bestU")]
    pub best_u: i64,
    #[serde(skip)]
    pub solution: LvSolution,
}

/// Least violation bound `V <= v_max` with which player 1 wins for some `U`,
/// then the least `U` winning with that `V`. Both searches are binary,
/// relying on winning being monotone in `V` and in `U`.
pub fn minimize(
    arena: &Arena,
    lower: i64,
    soft: i64,
    v_max: i64,
    measure: Measure,
    objective: Objective,
) -> Result<Option<MinimizeResult>, SolveError> {
    check_order("L", lower, "S", soft)?;
    if v_max < 0 {
        return Err(SolveError::NegativeViolationBound(v_max));
    }
    if bound_existence(arena, lower, soft, v_max, measure, objective)?.is_none() {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0, v_max);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if bound_existence(arena, lower, soft, mid, measure, objective)?.is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let best_v = lo;
    let base = SoftBound {
        lower,
        soft,
        upper: soft,
        violations: best_v,
        measure,
    };
    let (mut ulo, mut uhi) = (soft, crate::arith::add(soft, crate::arith::mul(best_v, arena.max_pos_weight())));
    while ulo < uhi {
        let mid = ulo + (uhi - ulo) / 2;
        if wins(arena, &base.with(mid, best_v), objective)? {
            uhi = mid;
        } else {
            ulo = mid + 1;
        }
    }
    let solution = solve_lv(arena, &base.with(ulo, best_v), objective)?;
    debug_assert!(solution.p1_wins());
    Ok(Some(MinimizeResult {
        best_v,
        best_u: ulo,
        solution,
    }))
}
