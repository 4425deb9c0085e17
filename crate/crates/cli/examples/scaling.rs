//! Explored configurations (explicit expansion) against stored labels
//! (polynomial solver) on the ladder family and on random arenas.

use std::time::Instant;

use enarena::expanded::build_lw;
use enarena::harness::{random_arena, GenParams};
use enarena::lwpoly::solve_lw_reach_1p;
use enarena::samples;

fn main() {
    println!("family,param,states,W,configs,labels,expand_ms,poly_ms");
    for w in [2, 4, 8, 16, 32, 64] {
        let a = samples::cycle_ladder(w, 2);
        row("ladder", w, &a, w);
    }
    for n in [4, 8, 16, 32] {
        let a = random_arena(&GenParams {
            seed: n as u64,
            n_states: n,
            edge_density: 3.0 / n as f64,
            ..GenParams::default()
        });
        row("random", n as i64, &a, 16);
    }
    // the expansion grows with W, the labels do not
    for w in [100, 10_000, 300_000] {
        row("ladder-bigW", 4, &samples::cycle_ladder(4, 2), w);
    }
}

fn row(family: &str, param: i64, a: &enarena::Arena, w: i64) {
    let t = Instant::now();
    let x = build_lw(a, 0, w).expect("expansion fits");
    let expand_ms = t.elapsed().as_secs_f64() * 1e3;
    let t = Instant::now();
    let rep = solve_lw_reach_1p(a, 0, w).expect("one-player arena");
    let poly_ms = t.elapsed().as_secs_f64() * 1e3;
    println!(
        "{family},{param},{},{w},{},{},{expand_ms:.2},{poly_ms:.2}",
        a.num_states(),
        x.len(),
        rep.table.labels
    );
}
