//! Per-particle action scripts.
//!
//! Each track is a named list of actions. A particle in state `name@i`
//! performs action `i` of track `name` and moves to `name@{i+1}`; past the
//! end of the track it does nothing. A failed action leaves the state
//! untouched, so the same step is retried next round.

use rustc_hash::FxHashMap;

use super::AlgorithmSpec;
use crate::geometry::{Cell, Direction, Shape};
use crate::model::{Action, StateLabel, SystemConfig};

#[derive(Clone, Debug)]
pub struct Track {
    pub name: String,
    pub actions: Vec<Action>,
}

impl Track {
    pub fn new(name: &str, actions: &[Action]) -> Self {
        Self {
            name: name.to_string(),
            actions: actions.to_vec(),
        }
    }

    /// The state a particle starts this track in.
    pub fn start(&self) -> StateLabel {
        StateLabel::new(&format!("{}@0", self.name))
    }
}

/// Builds an algorithm running the given tracks. The start state is the
/// first step of the first track.
pub fn scripted(name: &str, tracks: &[Track]) -> AlgorithmSpec {
    assert!(!tracks.is_empty(), "a script needs at least one track");
    let mut states = Vec::new();
    let mut steps: FxHashMap<StateLabel, (Action, StateLabel)> = FxHashMap::default();
    for track in tracks {
        let labels: Vec<_> = (0..=track.actions.len())
            .map(|i| StateLabel::new(&format!("{}@{i}", track.name)))
            .collect();
        for (i, label) in labels.iter().enumerate() {
            let step = match track.actions.get(i) {
                Some(&a) => (a, labels[i + 1].clone()),
                None => (Action::Null, label.clone()),
            };
            steps.insert(label.clone(), step);
        }
        states.extend(labels);
    }
    let start = tracks[0].start();
    AlgorithmSpec::new(
        name,
        "scripted actions",
        states,
        start,
        move |state, _, _, _| {
            let (action, next) = steps
                .get(state)
                .cloned()
                .unwrap_or((Action::Null, state.clone()));
            (next, action)
        },
    )
    .expect("valid script")
}

fn demo_tracks() -> [Track; 3] {
    use Action::*;
    [
        Track::new("a", &[Expand, Turn, Contract, Turn, Null]),
        Track::new("b", &[Turn, Expand, Divide, Null, Expand]),
        Track::new("c", &[Null, Null, Null, Kill]),
    ]
}

/// Five rounds in which three particles perform every action.
pub fn demo_script() -> AlgorithmSpec {
    scripted("demo_script", &demo_tracks())
}

/// The starting triangle for [`demo_script`]: `a` at the origin, `b` to its
/// lower right, `c` below it, all facing direction 0.
pub(super) fn demo_input() -> SystemConfig {
    let [a, b, c] = demo_tracks();
    SystemConfig::from_unnumbered([
        (a.start(), Shape::S1, Cell::new(0, 0), Direction::new(0)),
        (b.start(), Shape::S1, Cell::new(1, -1), Direction::new(0)),
        (c.start(), Shape::S1, Cell::new(0, -1), Direction::new(0)),
    ])
    .expect("valid demo input")
}
