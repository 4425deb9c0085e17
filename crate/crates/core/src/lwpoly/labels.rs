//! Cycle labels `(M, m)` on the depth-|Q| unfolding rooted at one state, and
//! the per-state table of best positive universal cycles.

use serde::Serialize;

use crate::arena::{Arena, StateId};

/// `peak` is the highest level seen from `L`, `gap` how far the current level
/// sits below it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CycleLabel {
    pub peak: i64,
    pub gap: i64,
}

impl CycleLabel {
    pub fn new(peak: i64, gap: i64) -> Self {
        CycleLabel { peak, gap }
    }

    pub fn level(&self) -> i64 {
        self.peak - self.gap
    }

    /// `self ⪯ other`: other ends at least as high with at most the same gap.
    pub fn dominated_by(&self, other: &CycleLabel) -> bool {
        self.level() <= other.level() && other.gap <= self.gap
    }
}

/// Label after one edge of weight `w`, or `None` if the level drops below
/// `lower`.
pub fn label_step(label: CycleLabel, w: i64, lower: i64, cap: i64) -> Option<CycleLabel> {
    let CycleLabel { peak, gap } = label;
    if w > gap {
        let raised = crate::arith::add(peak - gap, w);
        Some(CycleLabel::new(cap.min(raised), 0))
    } else if w >= gap + lower - peak {
        Some(CycleLabel::new(peak, gap - w))
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LabelEntry {
    pub label: CycleLabel,
    /// `(previous state, index of the label there, arena edge)`; `None` at the root.
    pub from: Option<(StateId, usize, usize)>,
}

/// Labels per `[state, depth]` for depths `0..=|Q|`.
#[derive(Clone, Debug)]
pub struct LabelDag {
    pub root: StateId,
    /// `layers[d][q]` holds the ⪯-maximal labels of node `[q, d]`.
    pub layers: Vec<Vec<Vec<LabelEntry>>>,
}

impl LabelDag {
    pub fn labels(&self, q: StateId, depth: usize) -> Vec<CycleLabel> {
        self.layers[depth][q.0].iter().map(|e| e.label).collect()
    }

    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn total_labels(&self) -> usize {
        self.layers.iter().flatten().map(Vec::len).sum()
    }

    /// Nodes `(q, d)`, `d > 0`, holding more than `d·|Q|` labels.
    pub fn size_bound_violations(&self) -> Vec<(StateId, usize)> {
        let n = self.layers[0].len();
        let mut bad = Vec::new();
        for (d, layer) in self.layers.iter().enumerate().skip(1) {
            for (q, labels) in layer.iter().enumerate() {
                if labels.len() > d * n {
                    bad.push((StateId(q), d));
                }
            }
        }
        bad
    }

    /// Arena edges of the prefix leading to label `index` at `[q, depth]`.
    pub fn path_to(&self, q: StateId, depth: usize, index: usize) -> Vec<usize> {
        let mut path = Vec::with_capacity(depth);
        let (mut q, mut i) = (q, index);
        for d in (1..=depth).rev() {
            let (p, pi, e) = self.layers[d][q.0][i]
                .from
                .expect("non-root labels have a predecessor");
            path.push(e);
            q = p;
            i = pi;
        }
        path.reverse();
        path
    }
}

/// Keeps the ⪯-maximal labels, one per equivalence class, first in the
/// given order.
fn prune(mut cands: Vec<LabelEntry>) -> Vec<LabelEntry> {
    // stable: equal labels keep generation order
    cands.sort_by(|a, b| {
        b.label
            .level()
            .cmp(&a.label.level())
            .then(a.label.gap.cmp(&b.label.gap))
    });
    let mut kept = Vec::new();
    let mut min_gap = i64::MAX;
    for c in cands {
        if c.label.gap < min_gap {
            min_gap = c.label.gap;
            kept.push(c);
        }
    }
    kept
}

/// Unfolds the one-player arena from `root` to depth |Q|, starting from the
/// label `(L, 0)`.
pub fn label_dag(arena: &Arena, lower: i64, cap: i64, root: StateId) -> LabelDag {
    let n = arena.num_states();
    let mut root_layer = vec![Vec::new(); n];
    root_layer[root.0].push(LabelEntry {
        label: CycleLabel::new(lower, 0),
        from: None,
    });
    let mut layers = vec![root_layer];
    for d in 0..n {
        let mut cands: Vec<Vec<LabelEntry>> = vec![Vec::new(); n];
        for q in arena.states() {
            for (i, entry) in layers[d][q.0].iter().enumerate() {
                for &ei in arena.out_edges(q) {
                    let e = arena.edge(ei);
                    if let Some(label) = label_step(entry.label, e.weight, lower, cap) {
                        cands[e.dst.0].push(LabelEntry {
                            label,
                            from: Some((q, i, ei)),
                        });
                    }
                }
            }
        }
        layers.push(cands.into_iter().map(prune).collect());
    }
    LabelDag { root, layers }
}

/// Best positive universal cycle on one state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalCycle {
    /// `m_q`: iterating the cycle `W-L` times ends at level `W - gap`.
    pub gap: i64,
    pub label: CycleLabel,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalCycleTable {
    pub lower: i64,
    pub cap: i64,
    pub cycles: Vec<Option<UniversalCycle>>,
    /// Labels stored over all unfoldings.
    pub labels: usize,
}

impl UniversalCycleTable {
    pub fn get(&self, q: StateId) -> Option<&UniversalCycle> {
        self.cycles[q.0].as_ref()
    }

    /// Level a set-jump at `q` leads to.
    pub fn jump_level(&self, q: StateId) -> Option<i64> {
        self.get(q).map(|c| self.cap - c.gap)
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.iter().all(Option::is_none)
    }
}

/// Per state, the cycle label with least gap among those at `[q, d]`,
/// `0 < d <= |Q|`, that end above `L` and whose iterated level `W - m`
/// exceeds `L`. Ties go to the shallower depth, then canonical order.
pub fn best_cycle_at(arena: &Arena, lower: i64, cap: i64, q: StateId) -> Option<UniversalCycle> {
    best_cycle_in(&label_dag(arena, lower, cap, q), lower, cap)
}

fn best_cycle_in(dag: &LabelDag, lower: i64, cap: i64) -> Option<UniversalCycle> {
    let q = dag.root;
    let mut best: Option<(CycleLabel, usize, usize)> = None;
    for d in 1..=dag.depth() {
        for (i, entry) in dag.layers[d][q.0].iter().enumerate() {
            let CycleLabel { peak, gap } = entry.label;
            if peak > lower + gap && lower + gap < cap && best.is_none_or(|(b, _, _)| gap < b.gap) {
                best = Some((entry.label, d, i));
            }
        }
    }
    best.map(|(label, d, i)| UniversalCycle {
        gap: label.gap,
        label,
        edges: dag.path_to(q, d, i),
    })
}

pub fn universal_cycle_table(arena: &Arena, lower: i64, cap: i64) -> UniversalCycleTable {
    let mut labels = 0;
    let cycles = arena
        .states()
        .map(|q| {
            let dag = label_dag(arena, lower, cap, q);
            labels += dag.total_labels();
            best_cycle_in(&dag, lower, cap)
        })
        .collect();
    UniversalCycleTable {
        lower,
        cap,
        cycles,
        labels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::run::{replay, Semantics};
    use crate::samples;

    #[test]
    fn step_examples() {
        let s = |p, g, w| label_step(CycleLabel::new(p, g), w, 0, 5);
        assert_eq!(s(0, 0, 2), Some(CycleLabel::new(2, 0)));
        assert_eq!(s(5, 0, -3), Some(CycleLabel::new(5, 3)));
        assert_eq!(s(2, 0, -3), None);
        assert_eq!(s(5, 4, 10), Some(CycleLabel::new(5, 0)));
    }

    #[test]
    fn root_layer() {
        let a = samples::two_cycles();
        let dag = label_dag(&a, 0, 5, StateId(0));
        assert_eq!(dag.labels(StateId(0), 0), vec![CycleLabel::new(0, 0)]);
        for q in 1..a.num_states() {
            assert!(dag.labels(StateId(q), 0).is_empty());
        }
    }

    #[test]
    fn labels_describe_their_prefix() {
        for a in [samples::two_cycles(), samples::weak_bound(), samples::soft_bound()] {
            for root in a.states() {
                let dag = label_dag(&a, 0, 5, root);
                for d in 0..=dag.depth() {
                    for q in a.states() {
                        for (i, e) in dag.layers[d][q.0].iter().enumerate() {
                            let path = dag.path_to(q, d, i);
                            let run = replay(&a, Semantics::Weak { lower: 0, cap: 5 }, root, 0, &path).unwrap();
                            assert_eq!(run.last(), (q, e.label.level()));
                            assert_eq!(run.levels().into_iter().max(), Some(e.label.peak));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pruning_keeps_incomparable_labels() {
        let entry = |p, g| LabelEntry {
            label: CycleLabel::new(p, g),
            from: None,
        };
        let kept = prune(vec![entry(5, 4), entry(4, 1), entry(4, 1), entry(3, 3), entry(5, 1)]);
        let labels: Vec<_> = kept.iter().map(|e| (e.label.peak, e.label.gap)).collect();
        assert_eq!(labels, vec![(5, 1)]);
        let kept = prune(vec![entry(5, 0), entry(5, 3), entry(3, 0)]);
        let labels: Vec<_> = kept.iter().map(|e| (e.label.peak, e.label.gap)).collect();
        assert_eq!(labels, vec![(5, 0)]);
        let kept = prune(vec![entry(5, 4), entry(5, 1)]);
        assert_eq!(kept.len(), 1);
        let kept = prune(vec![entry(2, 0), entry(5, 2)]);
        assert_eq!(kept.len(), 2);
    }

    #[test]
    fn iterated_cycle_reaches_claimed_level() {
        for a in [samples::two_cycles(), samples::weak_bound()] {
            for cap in 1..=7 {
                let t = universal_cycle_table(&a, 0, cap);
                for q in a.states() {
                    let Some(c) = t.get(q) else { continue };
                    assert_eq!(a.edge(*c.edges.last().unwrap()).dst, q);
                    for start in 0..=cap {
                        let path: Vec<usize> = (0..cap).flat_map(|_| c.edges.iter().copied()).collect();
                        let run = replay(&a, Semantics::Weak { lower: 0, cap }, q, start, &path).unwrap();
                        assert_eq!(run.last().1, cap - c.gap);
                    }
                }
            }
        }
    }

    #[test]
    fn negative_cycles_only() {
        let a = crate::arena::parse_arena("state a owner=1 init\nedge a -1 a\nedge a 0 a\n").unwrap();
        assert!(universal_cycle_table(&a, 0, 5).is_empty());
    }
}
