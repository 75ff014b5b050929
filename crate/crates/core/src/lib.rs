//! Workbench for sparse Ising / weighted MaxCut optimization on the Gset
//! benchmark suite.
//!
//! The crate is organized around the benchmark workflow:
//!
//! * [`instances`] — acquire, cache and parse Gset instances; registry of
//!   instance metadata and best-known cut values.
//! * [`model`] — spin configurations, cut/energy objectives and O(degree)
//!   incremental flip evaluation.
//! * [`verify`] — hex solution codec and cut certification, including the
//!   two bundled record solutions for G72 (7008) and G77 (9940).
//! * [`solvers`] — baseline heuristics (local search, simulated annealing,
//!   parallel tempering with isoenergetic cluster moves) and the seeded
//!   trial-batch runner.
//! * [`metrics`] — time-to-target, sweeps-to-target, quality, speedup,
//!   energy-to-target and the BLS projection arithmetic.
//! * [`reference`] — published benchmark observations used as comparison
//!   constants.

pub mod instances;
pub mod metrics;
pub mod model;
pub mod reference;
pub mod solvers;
pub mod verify;

pub use instances::{load_instance, parse_gset, ProblemInstance};
pub use model::{cut_value, ising_energy, IncrementalState, SpinConfig};
pub use solvers::{run_trials, BenchRecord, SolverKind, SolverParams, TrialRecord};
pub use verify::{certify, decode_hex_solution, encode_hex_solution, HexSolution};
