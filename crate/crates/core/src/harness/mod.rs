//! Seeded instance generation, brute-force oracles and solver/oracle
//! cross-checks.

pub mod crosscheck;
pub mod gen;
pub mod lemmas;
pub mod oracle;

pub use crosscheck::{crosscheck, CrossCheckReport, Divergence, Pair};
pub use gen::{random_arena, GenParams};
pub use oracle::{bounded_run_oracle, enumerate_p2_memoryless, oracle_solve, solve_one_player};
