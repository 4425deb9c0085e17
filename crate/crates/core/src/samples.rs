//! Small hand-made arenas used by tests, the CLI and the Python bindings.

use crate::arena::{parse_arena, Arena, ArenaBuilder, Player};

pub const SOFT_BOUND: &str = include_str!("../data/soft_bound.arena");
pub const WEAK_BOUND: &str = include_str!("../data/weak_bound.arena");
pub const TWO_CYCLES: &str = include_str!("../data/two_cycles.arena");

/// Five states; reaching `qt` needs level 5 at `q3` (use L=0, S=3).
pub fn soft_bound() -> Arena {
    parse_arena(SOFT_BOUND).expect("bundled arena parses")
}

/// Six states; reaching `qt` needs two different cycles on `q1` (L=0, W=5).
pub fn weak_bound() -> Arena {
    parse_arena(WEAK_BOUND).expect("bundled arena parses")
}

/// Two universal cycles on `q0` with different (M, m) labels (L=0, W=5).
pub fn two_cycles() -> Arena {
    parse_arena(TWO_CYCLES).expect("bundled arena parses")
}

/// Ladder of three-edge cycles on two hub states `s` and `s2` joined by
/// zero-weight chains of `k` edges.
///
/// Hub `s` carries cycle `c_i` for odd `i < w`, hub `s2` for even `i < w`;
/// `c_i` has weights `-i, +w, -w+i+1`. `q0 -(+1)-> s` enters the ladder and
/// `s2 -(-w)-> qt` leaves it. With L=0 and weak bound `w`, reaching `qt`
/// requires climbing the ladder one cycle at a time.
pub fn cycle_ladder(w: i64, k: usize) -> Arena {
    assert!(w >= 2 && w % 2 == 0, "ladder needs an even bound >= 2");
    assert!(k >= 1, "chains need at least one edge");
    let mut b = ArenaBuilder::new();
    let q0 = b.state("q0", Player::P1);
    let s = b.state("s", Player::P1);
    let s2 = b.state("s2", Player::P1);
    let qt = b.state("qt", Player::P1);
    b.initial(q0).target(qt);
    b.edge(q0, 1, s).edge(s2, -w, qt).edge(qt, 0, qt);
    for i in 0..w {
        let hub = if i % 2 == 1 { s } else { s2 };
        let a = b.state(format!("c{i}a"), Player::P1);
        let c = b.state(format!("c{i}b"), Player::P1);
        b.edge(hub, -i, a).edge(a, w, c).edge(c, -w + i + 1, hub);
    }
    for (from, to, tag) in [(s, s2, "f"), (s2, s, "r")] {
        let mut prev = from;
        for j in 1..k {
            let mid = b.state(format!("{tag}{j}"), Player::P1);
            b.edge(prev, 0, mid);
            prev = mid;
        }
        b.edge(prev, 0, to);
    }
    b.build().expect("ladder is well formed")
}
