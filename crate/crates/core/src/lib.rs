//! Simulator for the amoeba particle model: particles on the hexagonal grid
//! that act as probabilistic finite automata in synchronous rounds, moving
//! by expanding and contracting, and able to divide and die.

pub mod algorithms;
pub mod engine;
pub mod geometry;
pub mod io;
pub mod model;
pub mod render;

pub use algorithms::{builtin, AlgorithmSpec};
pub use engine::{
    Algorithm, ConflictPolicy, DisconnectPolicy, EngineError, EnginePolicy, Outcome,
    RandomnessSource, RoundReport, Simulation,
};
pub use geometry::{Cell, Direction, Shape};
pub use model::{Action, LocalView, ParticleConfig, ParticleId, StateLabel, SystemConfig};
