//! A single walker that follows the outer surface of a static structure.
//!
//! Structure particles sit in state `anchor` and never act. The walker, when
//! contracted, looks for the first slot `m` (in its own numbering) that is
//! free while slot `m + 1` holds an anchor. Moving into that cell keeps the
//! structure on its clockwise side. It turns until it faces the cell, expands
//! into it and contracts on the next round.

use super::{AlgorithmError, AlgorithmSpec};
use crate::engine::{step, EnginePolicy, RandomnessSource};
use crate::geometry::{cell_neighborhood, Cell, Direction, Shape};
use crate::model::{Action, LocalView, StateLabel, SystemConfig};

pub(super) fn surface_walker() -> AlgorithmSpec {
    let anchor = StateLabel::new("anchor");
    let walker = StateLabel::new("walker");
    let wall = anchor.clone();
    AlgorithmSpec::new(
        "surface_walker",
        "walker circles an anchor structure clockwise",
        vec![walker.clone(), anchor],
        walker,
        move |state, shape, view, _| {
            if *state == wall {
                return (state.clone(), Action::Null);
            }
            let action = match shape {
                Shape::S2 => Action::Contract,
                Shape::S1 => match next_slot(view, &wall) {
                    Some(0) => Action::Expand,
                    Some(_) => Action::Turn,
                    None => Action::Null,
                },
            };
            (state.clone(), action)
        },
    )
    .expect("valid")
}

fn next_slot(view: &LocalView, wall: &StateLabel) -> Option<usize> {
    (0..6)
        .find(|&m| !view.is_occupied(m) && view.slot((m + 1) % 6).is_some_and(|n| &n.state == wall))
}

/// Cells of the static ring used for walker tests: a triangle for size 3,
/// otherwise the hexagonal ring of radius `size / 6` around the origin.
fn ring_cells(size: usize) -> Result<Vec<Cell>, AlgorithmError> {
    match size {
        3 => Ok(vec![Cell::new(0, 0), Cell::new(1, 0), Cell::new(1, -1)]),
        n if n > 0 && n % 6 == 0 => {
            let radius = (n / 6) as i64;
            // Start at the top and walk the six sides.
            let mut cell = Cell::new(0, radius);
            let mut cells = Vec::with_capacity(n);
            for side in 0..6u8 {
                let d = Direction::new(2) + side;
                for _ in 0..radius {
                    cells.push(cell);
                    cell = cell.neighbor(d);
                }
            }
            Ok(cells)
        }
        n => Err(AlgorithmError::RingSize(n)),
    }
}

/// A static ring of `size` anchors with the walker (id 0) on top of it,
/// facing direction 0.
pub fn ring_with_walker(size: usize) -> Result<SystemConfig, AlgorithmError> {
    let ring = ring_cells(size)?;
    let top = *ring
        .iter()
        .max_by_key(|c| (2 * c.y + c.x, c.x))
        .expect("non-empty");
    let start = top.neighbor(Direction::new(0));
    debug_assert!(cell_neighborhood(start).iter().any(|c| ring.contains(c)));
    let anchor = StateLabel::new("anchor");
    let walker = StateLabel::new("walker");
    let mut particles = vec![(walker, Shape::S1, start, Direction::new(0))];
    particles.extend(
        ring.into_iter()
            .map(|c| (anchor.clone(), Shape::S1, c, Direction::new(0))),
    );
    Ok(SystemConfig::from_unnumbered(particles).expect("ring fixture is valid"))
}

/// Rounds the walker needs to travel around a ring of `size` anchors and be
/// back, contracted, on its start cell. `None` if it does not return within
/// `100 * size` rounds.
pub fn walker_circuit_length(size: usize) -> Result<Option<u64>, AlgorithmError> {
    let sys = ring_with_walker(size)?;
    Ok(circuit_length_from(&sys, 100 * size as u64))
}

/// Runs `surface_walker` on `sys`, whose particle with the lowest id is the
/// walker, until that walker is contracted on its start cell again.
pub fn circuit_length_from(sys: &SystemConfig, limit: u64) -> Option<u64> {
    let alg = surface_walker();
    let rng = RandomnessSource::new(0);
    let policy = EnginePolicy::default();
    let walker = sys.particles().first()?.clone();
    let mut current = sys.clone();
    let mut left = false;
    for round in 1..=limit {
        current = step(&current, &alg, &rng, &policy, round).ok()?.0;
        let w = current.get(walker.id)?;
        left |= w.head != walker.head;
        if left && w.shape == Shape::S1 && w.head == walker.head {
            return Some(round);
        }
    }
    None
}
