//! Engine-independent oracles shared by the integration tests and the
//! acceptance harness.

#![allow(dead_code)]

use amoeba_core::engine::ConflictPolicy;
use amoeba_core::{
    Action, Cell, Direction, Outcome, ParticleConfig, RandomnessSource, Shape, SystemConfig,
};
use rand::Rng;

pub const OFF: [(i64, i64); 6] = [(0, 1), (1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1)];

pub type Pt = (i64, i64);

pub fn nb(c: Pt, d: usize) -> Pt {
    let (dx, dy) = OFF[d % 6];
    (c.0 + dx, c.1 + dy)
}

pub fn adjacent(a: Pt, b: Pt) -> bool {
    OFF.contains(&(b.0 - a.0, b.1 - a.1))
}

pub fn pt(c: Cell) -> Pt {
    (c.x, c.y)
}

pub fn body(head: Pt, r: usize, expanded: bool) -> Vec<Pt> {
    if expanded {
        vec![head, nb(head, r + 3)]
    } else {
        vec![head]
    }
}

/// Planar position with y up; direction 0 points up and the direction index
/// grows clockwise.
fn planar(c: Pt) -> (f64, f64) {
    (
        1.5 * c.0 as f64,
        3f64.sqrt() * (c.1 as f64 + c.0 as f64 / 2.0),
    )
}

/// Clockwise bearing from north, in [0, 360).
fn bearing(from: (f64, f64), to: (f64, f64)) -> f64 {
    (to.0 - from.0)
        .atan2(to.1 - from.1)
        .to_degrees()
        .rem_euclid(360.0)
}

/// The neighborhood of a particle built by set difference and ordered
/// clockwise around the particle's centroid, starting at `nb(head, r)`.
pub fn oracle_neighborhood(head: Pt, r: usize, expanded: bool) -> Vec<Pt> {
    let occupied = body(head, r, expanded);
    let mut ring: Vec<Pt> = Vec::new();
    for &c in &occupied {
        for d in 0..6 {
            let n = nb(c, d);
            if !occupied.contains(&n) && !ring.contains(&n) {
                ring.push(n);
            }
        }
    }
    let pts: Vec<_> = occupied.iter().map(|&c| planar(c)).collect();
    let centroid = (
        pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64,
        pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64,
    );
    let start = bearing(centroid, planar(nb(head, r)));
    ring.sort_by(|a, b| {
        let ka = (bearing(centroid, planar(*a)) - start).rem_euclid(360.0);
        let kb = (bearing(centroid, planar(*b)) - start).rem_euclid(360.0);
        ka.partial_cmp(&kb).unwrap()
    });
    ring
}

/// Grows a random connected configuration of `n` particles. Every new
/// particle's head touches a cell already in use.
pub fn random_config(rng: &mut impl Rng, n: usize) -> SystemConfig {
    let mut parts: Vec<(Pt, usize, bool)> = Vec::new();
    let mut used: Vec<Pt> = Vec::new();
    while parts.len() < n {
        let r = rng.random_range(0..6);
        let expanded = rng.random_bool(0.5);
        let head = if used.is_empty() {
            (rng.random_range(-50..50), rng.random_range(-50..50))
        } else {
            let base = used[rng.random_range(0..used.len())];
            nb(base, rng.random_range(0..6))
        };
        let cells = body(head, r, expanded);
        if cells.iter().any(|c| used.contains(c)) {
            continue;
        }
        used.extend(&cells);
        parts.push((head, r, expanded));
    }
    let states = ["a", "b", "c"];
    SystemConfig::new(
        parts
            .into_iter()
            .enumerate()
            .map(|(i, (h, r, e))| {
                ParticleConfig::new(
                    i as u64,
                    states[rng.random_range(0..3)],
                    if e { Shape::S2 } else { Shape::S1 },
                    h,
                    r as u8,
                )
            })
            .collect(),
    )
    .expect("grown configuration is exclusive")
}

/// A particle as seen by the reference resolver.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RefParticle {
    pub id: u64,
    pub state: String,
    pub head: Pt,
    pub r: usize,
    pub expanded: bool,
}

impl RefParticle {
    pub fn from_config(p: &ParticleConfig) -> Self {
        Self {
            id: p.id.0,
            state: p.state.to_string(),
            head: pt(p.head),
            r: p.orientation.value() as usize,
            expanded: p.shape == Shape::S2,
        }
    }

    pub fn cells(&self) -> Vec<Pt> {
        body(self.head, self.r, self.expanded)
    }

    pub fn same_as(&self, p: &ParticleConfig) -> bool {
        *self == Self::from_config(p)
    }
}

fn admissible(a: Action, expanded: bool) -> bool {
    match a {
        Action::Null | Action::Turn => true,
        Action::Expand | Action::Kill => !expanded,
        Action::Contract | Action::Divide => expanded,
    }
}

pub fn admissible_actions(expanded: bool) -> Vec<Action> {
    Action::ALL
        .into_iter()
        .filter(|&a| admissible(a, expanded))
        .collect()
}

/// Result of the reference resolver: per-particle outcomes in input order
/// and the particles after the round, sorted by id.
#[derive(Debug, PartialEq, Eq)]
pub struct RefRound {
    pub outcomes: Vec<Outcome>,
    pub after: Vec<RefParticle>,
}

/// Brute-force resolution of one round.
///
/// Every subset of the admissible expansions is tried as the set of
/// winners. A subset is legal when the resulting cells are pairwise
/// disjoint and every losing expansion targets a cell occupied afterwards.
/// Among legal subsets the policy fixes which contender may win a cell;
/// exactly one subset must survive.
pub fn reference_round(
    before: &[RefParticle],
    intents: &[(Action, String)],
    next_id: u64,
    policy: ConflictPolicy,
    rng: &RandomnessSource,
    round: u64,
) -> RefRound {
    assert_eq!(before.len(), intents.len());
    let n = before.len();
    let ok: Vec<bool> = (0..n)
        .map(|i| admissible(intents[i].0, before[i].expanded))
        .collect();
    let expanders: Vec<usize> = (0..n)
        .filter(|&i| ok[i] && intents[i].0 == Action::Expand)
        .collect();
    let target = |i: usize| nb(before[i].head, before[i].r);

    let mut found: Vec<(u32, Vec<RefParticle>)> = Vec::new();
    for mask in 0u32..(1 << expanders.len()) {
        let wins = |i: usize| {
            expanders
                .iter()
                .position(|&e| e == i)
                .is_some_and(|k| mask & (1 << k) != 0)
        };
        let mut after = Vec::new();
        let mut copies = Vec::new();
        let mut fresh = next_id;
        for i in 0..n {
            let p = &before[i];
            let (action, state) = (&intents[i].0, intents[i].1.clone());
            let applied = ok[i] && (*action != Action::Expand || wins(i));
            if !applied {
                after.push(p.clone());
                continue;
            }
            let mut q = p.clone();
            q.state = state.clone();
            match action {
                Action::Null => {}
                Action::Turn if p.expanded => {
                    q.head = nb(p.head, p.r + 3);
                    q.r = (p.r + 3) % 6;
                }
                Action::Turn => q.r = (p.r + 1) % 6,
                Action::Expand => {
                    q.head = nb(p.head, p.r);
                    q.expanded = true;
                }
                Action::Contract => q.expanded = false,
                Action::Divide => {
                    q.expanded = false;
                    copies.push(RefParticle {
                        id: fresh,
                        state,
                        head: nb(p.head, p.r + 3),
                        r: p.r,
                        expanded: false,
                    });
                    fresh += 1;
                }
                Action::Kill => continue,
            }
            after.push(q);
        }
        after.extend(copies);

        let cells: Vec<Pt> = after.iter().flat_map(|p| p.cells()).collect();
        let disjoint = (0..cells.len()).all(|a| (a + 1..cells.len()).all(|b| cells[a] != cells[b]));
        if !disjoint {
            continue;
        }
        let losers_blocked = expanders
            .iter()
            .filter(|&&e| !wins(e))
            .all(|&e| cells.contains(&target(e)));
        if !losers_blocked {
            continue;
        }
        let policy_ok = expanders.iter().filter(|&&w| wins(w)).all(|&w| {
            let group: Vec<usize> = expanders
                .iter()
                .copied()
                .filter(|&e| target(e) == target(w))
                .collect();
            let pick = match policy {
                ConflictPolicy::LowestId => *group.iter().min_by_key(|&&e| before[e].id).unwrap(),
                ConflictPolicy::Seeded => {
                    let mut sorted = group.clone();
                    sorted.sort_by_key(|&e| before[e].id);
                    let t = target(w);
                    sorted[rng.conflict_pick(round, Cell::new(t.0, t.1), sorted.len())]
                }
            };
            pick == w
        });
        if policy_ok {
            found.push((mask, after));
        }
    }
    assert_eq!(
        found.len(),
        1,
        "reference resolution is not unique for {before:?} {intents:?}"
    );
    let (mask, mut after) = found.pop().unwrap();

    let outcomes = (0..n)
        .map(|i| {
            if !ok[i] {
                return Outcome::FailedInadmissible;
            }
            if intents[i].0 != Action::Expand {
                return Outcome::Applied;
            }
            let k = expanders.iter().position(|&e| e == i).unwrap();
            if mask & (1 << k) != 0 {
                return Outcome::Applied;
            }
            let t = target(i);
            let taken_by_winner = expanders
                .iter()
                .enumerate()
                .any(|(kk, &e)| mask & (1 << kk) != 0 && target(e) == t);
            if taken_by_winner {
                Outcome::FailedConflict
            } else {
                Outcome::FailedOccupied
            }
        })
        .collect();
    after.sort();
    RefRound { outcomes, after }
}

/// Connectivity of a reference configuration by flood fill over cells.
pub fn reference_connected(ps: &[RefParticle]) -> bool {
    if ps.is_empty() {
        return true;
    }
    let bodies: Vec<Vec<Pt>> = ps.iter().map(|p| p.cells()).collect();
    let mut seen = vec![false; ps.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..ps.len() {
            if !seen[j]
                && bodies[i]
                    .iter()
                    .any(|&a| bodies[j].iter().any(|&b| adjacent(a, b)))
            {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Rotates a configuration clockwise by `k` sixths of a turn about the
/// origin and then translates it by `shift`.
pub fn rotate_translate(sys: &SystemConfig, k: usize, shift: Pt) -> SystemConfig {
    let rot = |c: Cell| {
        let mut p = (c.x, c.y);
        for _ in 0..k {
            p = (p.0 + p.1, -p.0);
        }
        Cell::new(p.0 + shift.0, p.1 + shift.1)
    };
    SystemConfig::from_unnumbered(sys.particles().iter().map(|p| {
        (
            p.state.clone(),
            p.shape,
            rot(p.head),
            Direction::new(p.orientation.value() as i64 + k as i64),
        )
    }))
    .expect("rigid motions keep exclusivity")
}
