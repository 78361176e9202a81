//! Classification engine for locally checkable labelings (LCLs) on labeled
//! paths and cycles.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//!   problem  ->  type automaton  ->  decider  ->  synthesized algorithm
//!   (model)      (pumping engine)    (class)      (LOCAL-model simulation)
//! ```
//!
//! * [`problem`] / [`instance`]: the problem and instance model plus JSON codecs.
//! * [`verify`] / [`solve`]: reference verifier and exact (global) solver.
//! * [`types`]: path types, extendibility tables, the type automaton, pumping.
//! * [`decider`]: feasible-function searches and the three-way classifier.
//! * [`sim`]: LOCAL-model round simulation and the synthesized algorithms.
//! * [`lba`]: bounded-tape machine pipeline (compiler, canonical solver, probe).
//! * [`normalize`]: reduction to binary-input normalized form.

pub mod decider;
pub mod error;
pub mod fixtures;
pub mod instance;
pub mod lba;
pub mod normalize;
pub mod problem;
pub mod sim;
pub mod solve;
pub mod types;
pub mod verify;

pub use error::Error;
pub use instance::{Instance, Labeling, Topology};
pub use problem::{Alphabet, LclProblem, NormalizedLcl, Window};
