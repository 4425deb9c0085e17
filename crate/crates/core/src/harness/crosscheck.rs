//! Solver/oracle pairs run over seeded random instances.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arena::{Arena, Player};
use crate::constraint::{ConstraintSpec, Measure, Objective};
use crate::energy::{solve_l_energy, solve_l_energy_1p};
use crate::error::SolveError;
use crate::expanded::{build_l_capped, build_l_capped_for, build_lw};
use crate::game::shortest_path;
use crate::harness::gen::{random_arena_with, GenParams};
use crate::harness::oracle::{bounded_run_oracle, enumerate_p2_memoryless, oracle_solve};
use crate::lwpoly::{solve_lw_2p, solve_lw_reach_1p};
use crate::reductions::{solve_l_energy_via_reach, solve_l_reach};
use crate::violation::{solve_lv, SoftBound};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Pair {
    /// One-player weak-bound reachability: polynomial solver vs explicit expansion.
    LwPolyExpanded,
    /// Two-player weak-bound reachability: expansion vs opponent enumeration.
    Lw2pEnumeration,
    /// Lower-bound infinite run: progress measure vs capped expansion.
    EnergyExpanded,
    /// Lower-bound infinite run: progress measure vs reduction to reachability.
    EnergyReduction,
    /// Lower-bound reachability: reduction to infinite run vs capped expansion.
    ReachExpanded,
    /// Lower-bound infinite run, one player: Bellman-Ford vs progress measure.
    OnePlayerEnergy,
    /// Soft bounds, one player: expansion vs bounded run search.
    LvBounded,
    /// Shortest weak-bound witness: expansion vs bounded run search.
    LwShortest,
}

impl Pair {
    pub const ALL: [Pair; 8] = [
        Pair::LwPolyExpanded,
        Pair::Lw2pEnumeration,
        Pair::EnergyExpanded,
        Pair::EnergyReduction,
        Pair::ReachExpanded,
        Pair::OnePlayerEnergy,
        Pair::LvBounded,
        Pair::LwShortest,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Pair::LwPolyExpanded => "lwpoly:exglw",
            Pair::Lw2pEnumeration => "lw2p:enum",
            Pair::EnergyExpanded => "energy:exgl",
            Pair::EnergyReduction => "energy:reduction",
            Pair::ReachExpanded => "reach:exgl",
            Pair::OnePlayerEnergy => "bellman:energy",
            Pair::LvBounded => "lv:bounded",
            Pair::LwShortest => "exglw:bounded",
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pair {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pair::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Pair::ALL.iter().map(Pair::name).collect();
                format!("unknown pair `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Divergence {
    pub seed: u64,
    pub query: String,
    pub solver: String,
    pub oracle: String,
    pub arena: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckReport {
    pub pair: String,
    pub instances: u64,
    pub skipped: u64,
    pub divergences: Vec<Divergence>,
}

impl CrossCheckReport {
    pub fn ok(&self) -> bool {
        self.divergences.is_empty()
    }

    /// Writes one reproducer file per divergence into `dir`.
    pub fn write_reproducers(&self, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        for d in &self.divergences {
            let path = dir.join(format!("{}-{}.arena", self.pair.replace(':', "_"), d.seed));
            let body = format!(
                "# pair {}\n# seed {}\n# query {}\n# solver {}\n# oracle {}\n{}",
                self.pair, d.seed, d.query, d.solver, d.oracle, d.arena
            );
            std::fs::write(&path, body)?;
            written.push(path);
        }
        Ok(written)
    }
}

/// Default generator shape for a pair; `template` overrides it.
fn params_for(pair: Pair, rng: &mut ChaCha8Rng, seed: u64, template: Option<&GenParams>) -> GenParams {
    if let Some(t) = template {
        return GenParams { seed, ..t.clone() };
    }
    let (max_states, p2) = match pair {
        Pair::Lw2pEnumeration => (5, 0.5),
        Pair::EnergyExpanded | Pair::EnergyReduction | Pair::ReachExpanded => (6, 0.5),
        _ => (6, 0.0),
    };
    GenParams {
        seed,
        n_states: rng.gen_range(1..=max_states),
        p2_fraction: p2,
        weight_min: -4,
        weight_max: 4,
        edge_density: rng.gen_range(0.2..0.6),
        target_count: 1,
    }
}

enum Outcome {
    Agree,
    Skip,
    Diverge { query: String, solver: String, oracle: String },
}

fn verdict(query: String, solver: impl fmt::Debug, oracle: impl fmt::Debug) -> Outcome {
    let (s, o) = (format!("{solver:?}"), format!("{oracle:?}"));
    if s == o {
        Outcome::Agree
    } else {
        Outcome::Diverge {
            query,
            solver: s,
            oracle: o,
        }
    }
}

fn run_one(pair: Pair, arena: &Arena, rng: &mut ChaCha8Rng) -> Result<Outcome, SolveError> {
    let lower = rng.gen_range(0..=2);
    Ok(match pair {
        Pair::LwPolyExpanded => {
            let cap = lower + rng.gen_range(0..=6);
            let poly = solve_lw_reach_1p(arena, lower, cap)?;
            if let Some(w) = &poly.witness {
                let run = w.expand(arena).map_err(|e| SolveError::Unsupported(format!("witness replay: {e}")))?;
                if !run.visits_target(arena) {
                    return Ok(Outcome::Diverge {
                        query: format!("L={lower} W={cap}"),
                        solver: "witness misses target".into(),
                        oracle: "-".into(),
                    });
                }
            }
            let x = build_lw(arena, lower, cap)?;
            let oracle = oracle_solve(&x, Objective::Reach).wins(x.init(), Player::P1);
            verdict(format!("LW reach L={lower} W={cap}"), poly.reachable(), oracle)
        }
        Pair::Lw2pEnumeration => {
            let cap = rng.gen_range(lower..=4);
            let spec = ConstraintSpec::weak(lower, cap, Objective::Reach);
            let enumerated = match enumerate_p2_memoryless(arena, &spec) {
                Err(SolveError::TooLarge { .. }) => return Ok(Outcome::Skip),
                other => other?,
            };
            let solved = solve_lw_2p(arena, lower, cap, Objective::Reach)?;
            let winner = solved.region.winner(solved.expanded.init());
            verdict(format!("LW reach L={lower} W={cap}"), winner, enumerated)
        }
        Pair::EnergyExpanded => {
            let pm = solve_l_energy(arena).p1_wins(arena.initial());
            let x = build_l_capped(arena, lower)?;
            let oracle = oracle_solve(&x, Objective::InfiniteRun).wins(x.init(), Player::P1);
            verdict(format!("L inf L={lower}"), pm, oracle)
        }
        Pair::EnergyReduction => {
            let pm = solve_l_energy(arena).p1_wins(arena.initial());
            verdict(format!("L inf L={lower}"), pm, solve_l_energy_via_reach(arena, lower)?)
        }
        Pair::ReachExpanded => {
            let via = solve_l_reach(arena)?;
            let x = build_l_capped_for(arena, lower, Objective::Reach)?;
            let oracle = oracle_solve(&x, Objective::Reach).wins(x.init(), Player::P1);
            verdict(format!("L reach L={lower}"), via, oracle)
        }
        Pair::OnePlayerEnergy => {
            let bf = solve_l_energy_1p(arena, lower).region.winner;
            let pm = solve_l_energy(arena).region.winner;
            verdict(format!("L inf all states L={lower}"), bf, pm)
        }
        Pair::LvBounded => {
            let soft = lower + rng.gen_range(0..=3);
            let upper = soft + rng.gen_range(0..=3);
            let violations = rng.gen_range(0..=4);
            let objective = if rng.gen_bool(0.5) {
                Objective::Reach
            } else {
                Objective::InfiniteRun
            };
            let mut solved = Vec::new();
            let mut oracle = Vec::new();
            for measure in [Measure::Count, Measure::Consecutive, Measure::Sum] {
                let bound = SoftBound {
                    lower,
                    soft,
                    upper,
                    violations,
                    measure,
                };
                solved.push(solve_lv(arena, &bound, objective)?.p1_wins());
                let spec = ConstraintSpec::soft(lower, soft, upper, violations, measure, objective);
                oracle.push(bounded_run_oracle(arena, &spec, usize::MAX)?.is_some());
            }
            let query = format!("LV {objective:?} L={lower} S={soft} U={upper} V={violations} count/cons/sum");
            verdict(query, solved, oracle)
        }
        Pair::LwShortest => {
            let cap = lower + rng.gen_range(0..=5);
            let x = build_lw(arena, lower, cap)?;
            let path = shortest_path(&x, x.init(), x.target_mask(), &x.bad_mask()).map(|p| p.len());
            let spec = ConstraintSpec::weak(lower, cap, Objective::Reach);
            let oracle = bounded_run_oracle(arena, &spec, usize::MAX)?.map(|r| r.len());
            verdict(format!("LW reach L={lower} W={cap}"), path, oracle)
        }
    })
}

/// Runs `pair` on seeds `first_seed..first_seed+seeds`.
pub fn crosscheck(pair: Pair, first_seed: u64, seeds: u64, template: Option<&GenParams>) -> Result<CrossCheckReport, SolveError> {
    let mut report = CrossCheckReport {
        pair: pair.name().to_string(),
        instances: 0,
        skipped: 0,
        divergences: Vec::new(),
    };
    for seed in first_seed..first_seed + seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0000_0000);
        let params = params_for(pair, &mut rng, seed, template);
        let arena = random_arena_with(&mut rng, &params);
        let arena = match pair {
            Pair::LwPolyExpanded | Pair::OnePlayerEnergy | Pair::LvBounded | Pair::LwShortest => arena.as_one_player(),
            _ => arena,
        };
        match run_one(pair, &arena, &mut rng)? {
            Outcome::Agree => report.instances += 1,
            Outcome::Skip => report.skipped += 1,
            Outcome::Diverge { query, solver, oracle } => {
                report.instances += 1;
                report.divergences.push(Divergence {
                    seed,
                    query,
                    solver,
                    oracle,
                    arena: arena.to_text(),
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_names_round_trip() {
        for p in Pair::ALL {
            assert_eq!(p.name().parse::<Pair>().unwrap(), p);
        }
        assert!("nope".parse::<Pair>().is_err());
    }

    #[test]
    fn every_pair_agrees_on_a_few_seeds() {
        for p in Pair::ALL {
            let r = crosscheck(p, 0, 25, None).unwrap();
            assert!(r.ok(), "{p}: {:?}", r.divergences);
        }
    }

    #[test]
    fn reproducers_are_written() {
        let report = CrossCheckReport {
            pair: "lw2p:enum".into(),
            instances: 1,
            skipped: 0,
            divergences: vec![Divergence {
                seed: 7,
                query: "q".into(),
                solver: "P1".into(),
                oracle: "P2".into(),
                arena: "state a owner=1 init\nedge a 0 a\n".into(),
            }],
        };
        let dir = std::env::temp_dir().join(format!("enarena-repro-{}", std::process::id()));
        let files = report.write_reproducers(&dir).unwrap();
        let text = std::fs::read_to_string(&files[0]).unwrap();
        assert!(crate::arena::parse_arena(&text).is_ok());
        std::fs::remove_dir_all(dir).unwrap();
    }
}
