//! Transition-function interface and the built-in algorithm library.
//!
//! Built-ins are small demonstrations; each one comes with a documented
//! input family ([`documented_input`]) on which it keeps the system
//! connected.

mod basic;
mod reaper;
mod replicator;
mod script;
mod walker;

use std::fmt;

use rustc_hash::FxHashSet;
use thiserror::Error;

use crate::engine::{Algorithm, ParticleRng};
use crate::geometry::Shape;
use crate::model::{Action, LocalView, StateLabel, SystemConfig};

pub use replicator::{replicator, MAX_GENERATIONS};
pub use script::{demo_script, scripted, Track};
pub use walker::{circuit_length_from, ring_with_walker, walker_circuit_length};

pub type DeltaFn =
    dyn Fn(&StateLabel, Shape, &LocalView, &mut ParticleRng) -> (StateLabel, Action) + Send + Sync;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgorithmError {
    #[error("unknown algorithm {0:?}")]
    UnknownAlgorithm(String),
    #[error("algorithm {0} declares no states")]
    NoStates(String),
    #[error("start state {state} of algorithm {name} is not declared")]
    UndeclaredStart { name: String, state: StateLabel },
    #[error("algorithm {name} declares state {state} twice")]
    DuplicateState { name: String, state: StateLabel },
    #[error("unsupported ring size {0}: expected 3 or a positive multiple of 6")]
    RingSize(usize),
}

/// A named finite automaton: declared states, start state and transition
/// function.
pub struct AlgorithmSpec {
    name: String,
    description: String,
    states: Vec<StateLabel>,
    lookup: FxHashSet<StateLabel>,
    start_state: StateLabel,
    delta: Box<DeltaFn>,
}

impl AlgorithmSpec {
    pub fn new<F>(
        name: &str,
        description: &str,
        states: Vec<StateLabel>,
        start_state: StateLabel,
        delta: F,
    ) -> Result<Self, AlgorithmError>
    where
        F: Fn(&StateLabel, Shape, &LocalView, &mut ParticleRng) -> (StateLabel, Action)
            + Send
            + Sync
            + 'static,
    {
        if states.is_empty() {
            return Err(AlgorithmError::NoStates(name.to_string()));
        }
        let mut lookup = FxHashSet::default();
        for s in &states {
            if !lookup.insert(s.clone()) {
                return Err(AlgorithmError::DuplicateState {
                    name: name.to_string(),
                    state: s.clone(),
                });
            }
        }
        if !lookup.contains(&start_state) {
            return Err(AlgorithmError::UndeclaredStart {
                name: name.to_string(),
                state: start_state,
            });
        }
        Ok(Self {
            name: name.to_string(),
            description: description.to_string(),
            states,
            lookup,
            start_state,
            delta: Box::new(delta),
        })
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// Looks up a declared state by name.
    pub fn state(&self, name: &str) -> Option<&StateLabel> {
        self.states.iter().find(|s| s.as_str() == name)
    }
}

impl fmt::Debug for AlgorithmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgorithmSpec")
            .field("name", &self.name)
            .field("states", &self.states)
            .field("start_state", &self.start_state)
            .finish_non_exhaustive()
    }
}

impl Algorithm for AlgorithmSpec {
    fn name(&self) -> &str {
        &self.name
    }

    fn states(&self) -> &[StateLabel] {
        &self.states
    }

    fn start_state(&self) -> &StateLabel {
        &self.start_state
    }

    fn delta(
        &self,
        state: &StateLabel,
        shape: Shape,
        view: &LocalView,
        rng: &mut ParticleRng,
    ) -> (StateLabel, Action) {
        (self.delta)(state, shape, view, rng)
    }

    fn has_state(&self, state: &StateLabel) -> bool {
        self.lookup.contains(state)
    }
}

/// Registry keys with one-line descriptions.
pub const REGISTRY: &[(&str, &str)] = &[
    ("idle", "every particle performs the null action forever"),
    ("spinner", "every particle turns every round"),
    ("idle_spinner", "particles in state 'spin' turn, particles in state 'idle' stay put"),
    ("oscillator", "contracted particles expand, expanded particles contract: one cell per two rounds"),
    ("tumbler", "random walk: a contracted particle expands with probability 1/3, otherwise turns"),
    ("surface_walker", "a 'walker' particle circles a static 'anchor' structure clockwise"),
    ("replicator_1", "expand then divide for 1 generation"),
    ("replicator_2", "expand then divide for 2 generations: one particle becomes a chain of four"),
    ("replicator_3", "expand then divide for 3 generations"),
    ("replicator_4", "expand then divide for 4 generations"),
    ("reaper", "'marked' particles next to an 'anchor' particle kill themselves"),
    ("demo_script", "three scripted particles exercising turn, expand, contract, divide and kill over five rounds"),
];

/// Returns the built-in algorithm registered under `name`.
pub fn builtin(name: &str) -> Result<AlgorithmSpec, AlgorithmError> {
    match name {
        "idle" => Ok(basic::idle()),
        "spinner" => Ok(basic::spinner()),
        "idle_spinner" => Ok(basic::idle_spinner()),
        "oscillator" => Ok(basic::oscillator()),
        "tumbler" => Ok(basic::tumbler()),
        "surface_walker" => Ok(walker::surface_walker()),
        "reaper" => Ok(reaper::reaper()),
        "demo_script" => Ok(demo_script()),
        _ => {
            if let Some(k) = name.strip_prefix("replicator_") {
                if let Ok(k) = k.parse::<u8>() {
                    if (1..=MAX_GENERATIONS).contains(&k) {
                        return Ok(replicator(k));
                    }
                }
            }
            Err(AlgorithmError::UnknownAlgorithm(name.to_string()))
        }
    }
}

/// A representative initial configuration from the input family each
/// built-in is documented for.
pub fn documented_input(name: &str) -> Result<SystemConfig, AlgorithmError> {
    use crate::geometry::{Cell, Direction};
    let alg = builtin(name)?;
    let s = |n: &str| alg.state(n).expect("declared state").clone();
    let row = |state: StateLabel, n: i64| {
        (0..n)
            .map(|y| (state.clone(), Shape::S1, Cell::new(0, y), Direction::new(0)))
            .collect::<Vec<_>>()
    };
    let particles = match name {
        "idle" | "spinner" => row(alg.start_state().clone(), 5),
        "idle_spinner" => (0..6)
            .map(|i| {
                let st = if i % 2 == 0 { s("idle") } else { s("spin") };
                (st, Shape::S1, Cell::new(i / 3, i % 3), Direction::new(i))
            })
            .collect(),
        // A single particle, or a line of particles all facing along the line.
        "oscillator" => row(s("moving"), 4),
        "tumbler" => row(s("roam"), 1),
        "surface_walker" => return ring_with_walker(6),
        "reaper" => vec![
            (s("anchor"), Shape::S1, Cell::new(0, 0), Direction::new(0)),
            (s("anchor"), Shape::S1, Cell::new(0, 1), Direction::new(0)),
            (s("marked"), Shape::S1, Cell::new(1, 0), Direction::new(0)),
            (s("marked"), Shape::S1, Cell::new(-1, 1), Direction::new(2)),
            (s("anchor"), Shape::S1, Cell::new(0, 2), Direction::new(0)),
        ],
        "demo_script" => return Ok(script::demo_input()),
        _ => row(alg.start_state().clone(), 1),
    };
    Ok(SystemConfig::from_unnumbered(particles).expect("fixture is valid"))
}
