//! Replication by expand-then-divide.
//!
//! A contracted particle in generation `g` expands into the cell it faces.
//! Once expanded it divides, and both halves move on to generation `g + 1`
//! (or `done` after the last generation). A particle whose front is blocked
//! but whose back is free reverses in three turns and grows backwards; one
//! with both ends blocked turns in place until it finds room.
//!
//! Starting from one particle, `replicator_2` ends as a straight chain of
//! four. Every action only adds cells next to the particle's own, so the
//! system stays connected.

use super::AlgorithmSpec;
use crate::geometry::Shape;
use crate::model::{Action, StateLabel};

pub const MAX_GENERATIONS: u8 = 4;

#[derive(Copy, Clone, PartialEq, Eq)]
enum Phase {
    Grow(u8),
    Reverse(u8, u8),
    Done,
}

fn label(phase: Phase) -> String {
    match phase {
        Phase::Grow(g) => format!("gen{g}"),
        Phase::Reverse(g, t) => format!("gen{g}_turn{t}"),
        Phase::Done => "done".to_string(),
    }
}

/// `replicator_k` for `k` in `1..=MAX_GENERATIONS`.
pub fn replicator(generations: u8) -> AlgorithmSpec {
    assert!((1..=MAX_GENERATIONS).contains(&generations));
    let mut phases = Vec::new();
    for g in 1..=generations {
        phases.extend([Phase::Grow(g), Phase::Reverse(g, 1), Phase::Reverse(g, 2)]);
    }
    phases.push(Phase::Done);
    let table: Vec<(StateLabel, Phase)> = phases
        .iter()
        .map(|&p| (StateLabel::new(&label(p)), p))
        .collect();
    let states: Vec<_> = table.iter().map(|(s, _)| s.clone()).collect();
    let start = states[0].clone();
    let lookup = move |phase: Phase| -> StateLabel {
        table
            .iter()
            .find(|(_, p)| *p == phase)
            .map(|(s, _)| s.clone())
            .expect("phase has a label")
    };
    let phase_of = {
        let names: Vec<_> = phases.iter().map(|&p| (label(p), p)).collect();
        move |state: &StateLabel| {
            names
                .iter()
                .find(|(n, _)| n == state.as_str())
                .map(|(_, p)| *p)
                .unwrap_or(Phase::Done)
        }
    };
    let name = format!("replicator_{generations}");
    AlgorithmSpec::new(
        &name,
        "expand and divide for a fixed number of generations",
        states,
        start,
        move |state, shape, view, _| {
            let phase = phase_of(state);
            let (next, action) = match (phase, shape) {
                (Phase::Done, Shape::S1) => (Phase::Done, Action::Null),
                (Phase::Grow(g), Shape::S2) => {
                    let next = if g == generations {
                        Phase::Done
                    } else {
                        Phase::Grow(g + 1)
                    };
                    (next, Action::Divide)
                }
                (_, Shape::S2) => (phase, Action::Contract),
                (Phase::Grow(g), Shape::S1) => {
                    if !view.is_occupied(0) {
                        (phase, Action::Expand)
                    } else if !view.is_occupied(3) {
                        (Phase::Reverse(g, 1), Action::Turn)
                    } else {
                        (phase, Action::Turn)
                    }
                }
                (Phase::Reverse(g, 1), Shape::S1) => (Phase::Reverse(g, 2), Action::Turn),
                (Phase::Reverse(g, _), Shape::S1) => (Phase::Grow(g), Action::Turn),
            };
            let state = if next == phase {
                state.clone()
            } else {
                lookup(next)
            };
            (state, action)
        },
    )
    .expect("valid")
}
