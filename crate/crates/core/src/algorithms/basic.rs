use rand::Rng;

use super::AlgorithmSpec;
use crate::geometry::Shape;
use crate::model::{Action, StateLabel};

pub(super) fn idle() -> AlgorithmSpec {
    let q = StateLabel::new("idle");
    AlgorithmSpec::new(
        "idle",
        "always null",
        vec![q.clone()],
        q,
        |state, _, _, _| (state.clone(), Action::Null),
    )
    .expect("valid")
}

pub(super) fn spinner() -> AlgorithmSpec {
    let q = StateLabel::new("spin");
    AlgorithmSpec::new(
        "spinner",
        "always turn",
        vec![q.clone()],
        q,
        |state, _, _, _| (state.clone(), Action::Turn),
    )
    .expect("valid")
}

pub(super) fn idle_spinner() -> AlgorithmSpec {
    let idle = StateLabel::new("idle");
    let spin = StateLabel::new("spin");
    let turner = spin.clone();
    AlgorithmSpec::new(
        "idle_spinner",
        "turn in state spin, null in state idle",
        vec![idle.clone(), spin],
        idle,
        move |state, _, _, _| {
            let action = if *state == turner {
                Action::Turn
            } else {
                Action::Null
            };
            (state.clone(), action)
        },
    )
    .expect("valid")
}

pub(super) fn oscillator() -> AlgorithmSpec {
    let q = StateLabel::new("moving");
    AlgorithmSpec::new(
        "oscillator",
        "expand when contracted, contract when expanded",
        vec![q.clone()],
        q,
        |state, shape, _, _| {
            let action = match shape {
                Shape::S1 => Action::Expand,
                Shape::S2 => Action::Contract,
            };
            (state.clone(), action)
        },
    )
    .expect("valid")
}

pub(super) fn tumbler() -> AlgorithmSpec {
    let q = StateLabel::new("roam");
    AlgorithmSpec::new(
        "tumbler",
        "random walk of a single particle",
        vec![q.clone()],
        q,
        |state, shape, _, rng| {
            let action = match shape {
                Shape::S2 => Action::Contract,
                Shape::S1 if rng.random_ratio(1, 3) => Action::Expand,
                Shape::S1 => Action::Turn,
            };
            (state.clone(), action)
        },
    )
    .expect("valid")
}
