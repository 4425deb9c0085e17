//! Energy games with lower, upper, weak and soft bounds.

pub mod arena;
mod arith;
pub mod constraint;
pub mod energy;
pub mod error;
pub mod expanded;
pub mod game;
pub mod harness;
pub mod lwpoly;
pub mod reductions;
pub mod run;
pub mod samples;
pub mod solve;
pub mod violation;

pub use arena::{load_arena, parse_arena, parse_arena_json, Arena, ArenaBuilder, Edge, Player, StateId};
pub use constraint::{ConstraintSpec, Kind, Measure, Objective};
pub use error::{ArenaError, SolveError};
pub use expanded::{Config, ExpandedArena};
pub use game::{GameGraph, WinningRegion};
pub use run::{replay, Run, Semantics};
