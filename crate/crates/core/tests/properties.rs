use proptest::prelude::*;

use enarena::harness::{random_arena, GenParams};
use enarena::lwpoly::{label_dag, solve_lw_reach_1p, Segment};
use enarena::run::{replay, Semantics};
use enarena::violation::{bound_existence, minimize, violation_stats};
use enarena::{Arena, Measure, Objective};

fn one_player(seed: u64, n: usize, density: f64) -> Arena {
    random_arena(&GenParams {
        seed,
        n_states: n,
        edge_density: density,
        ..GenParams::default()
    })
}

/// Counts runs of positions above `soft` directly, one pass per measure.
fn naive_stats(levels: &[i64], soft: i64) -> (i64, i64, i64) {
    let count = levels.iter().filter(|&&l| l > soft).count() as i64;
    let sum = levels.iter().map(|&l| (l - soft).max(0)).sum();
    let mut best = 0;
    for i in 0..levels.len() {
        let block = levels[i..].iter().take_while(|&&l| l > soft).count();
        best = best.max(block as i64);
    }
    (count, best, sum)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn witness_replays_and_is_compact(seed in any::<u64>(), n in 1usize..8, dens in 0.15f64..0.7,
                                      lower in 0i64..3, extra in 0i64..6) {
        let a = one_player(seed, n, dens);
        let cap = lower + extra;
        let rep = solve_lw_reach_1p(&a, lower, cap).unwrap();
        if let Some(w) = &rep.witness {
            let run = w.expand(&a).unwrap();
            prop_assert!(run.visits_target(&a));
            prop_assert_eq!(run.steps[0], (a.initial(), lower));
            prop_assert_eq!(run.len() as u64, w.expanded_len());
            prop_assert!(w.jumps() <= n);
            let acyclic_total: usize = w.paths().map(<[usize]>::len).sum();
            prop_assert!(acyclic_total <= (n + 1) * (n + 1));
            for seg in &w.segments {
                if let Segment::SetJump { state, level, .. } = seg {
                    prop_assert_eq!(rep.table.jump_level(*state), Some(*level));
                }
            }
            // only the first visit to a target matters
            let first = run.steps.iter().position(|&(q, _)| a.is_target(q)).unwrap();
            prop_assert_eq!(first, run.len());
        }
    }

    #[test]
    fn labels_describe_their_prefix(seed in any::<u64>(), n in 1usize..7, lower in -1i64..2, extra in 0i64..5) {
        let a = one_player(seed, n, 0.4);
        let cap = lower + extra;
        let sem = Semantics::Weak { lower, cap };
        for root in a.states() {
            let dag = label_dag(&a, lower, cap, root);
            for d in 0..=dag.depth() {
                for q in a.states() {
                    for i in 0..dag.layers[d][q.0].len() {
                        let label = dag.layers[d][q.0][i].label;
                        let run = replay(&a, sem, root, lower, &dag.path_to(q, d, i)).unwrap();
                        prop_assert_eq!(run.last(), (q, label.level()));
                        prop_assert_eq!(run.levels().into_iter().max(), Some(label.peak));
                    }
                }
            }
        }
    }

    #[test]
    fn violation_measures(levels in prop::collection::vec(-3i64..10, 0..40), soft in 0i64..6) {
        let s = violation_stats(&levels, soft);
        let (count, cons, sum) = naive_stats(&levels, soft);
        prop_assert_eq!((s.count, s.max_consecutive, s.sum), (count, cons, sum));
        prop_assert_eq!(s.get(Measure::Count), count);
        prop_assert_eq!(s.get(Measure::Consecutive), cons);
        prop_assert_eq!(s.get(Measure::Sum), sum);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn minimize_is_tight(seed in any::<u64>(), n in 2usize..6, soft in 0i64..3, m in 0usize..3) {
        let a = one_player(seed, n, 0.4);
        let measure = [Measure::Count, Measure::Consecutive, Measure::Sum][m];
        let res = minimize(&a, 0, soft, 6, measure, Objective::Reach).unwrap();
        let Some(r) = res else {
            prop_assert!(bound_existence(&a, 0, soft, 6, measure, Objective::Reach).unwrap().is_none());
            return Ok(());
        };
        prop_assert!(r.best_u >= soft);
        prop_assert!(r.solution.p1_wins());
        if r.best_v > 0 {
            prop_assert!(bound_existence(&a, 0, soft, r.best_v - 1, measure, Objective::Reach).unwrap().is_none());
        }
        if r.best_u > soft {
            let tighter = enarena::violation::SoftBound {
                lower: 0, soft, upper: r.best_u - 1, violations: r.best_v, measure,
            };
            prop_assert!(!enarena::violation::solve_lv(&a, &tighter, Objective::Reach).unwrap().p1_wins());
        }
    }
}
