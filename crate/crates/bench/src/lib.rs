//! Workloads shared by the benchmarks in `benches/`.

use amoeba_core::{builtin, Algorithm, AlgorithmSpec, Cell, Direction, Shape, SystemConfig};

/// A `side` x `side` rhombus of contracted `idle_spinner` particles,
/// alternating between the idle and spinning states.
pub fn idle_spinner_block(side: i64) -> (SystemConfig, AlgorithmSpec) {
    let alg = builtin("idle_spinner").expect("built-in");
    let idle = alg.state("idle").expect("declared").clone();
    let spin = alg.state("spin").expect("declared").clone();
    let particles = (0..side)
        .flat_map(|x| (0..side).map(move |y| (x, y)))
        .map(|(x, y)| {
            let state = if (x + y) % 2 == 0 {
                idle.clone()
            } else {
                spin.clone()
            };
            (state, Shape::S1, Cell::new(x, y), Direction::new(x * 7 + y))
        });
    let sys = SystemConfig::from_unnumbered(particles).expect("block is exclusive");
    (sys, alg)
}

/// A `side` x `side` block of `tumbler` particles on every other row, so
/// expansions compete for the free rows in between.
pub fn tumbler_rows(side: i64) -> (SystemConfig, AlgorithmSpec) {
    let alg = builtin("tumbler").expect("built-in");
    let roam = alg.start_state().clone();
    let particles = (0..side)
        .flat_map(|x| (0..side).map(move |y| (x, 2 * y)))
        .map(|(x, y)| {
            (
                roam.clone(),
                Shape::S1,
                Cell::new(x, y),
                Direction::new(x + y),
            )
        });
    let sys = SystemConfig::from_unnumbered(particles).expect("rows are exclusive");
    (sys, alg)
}
