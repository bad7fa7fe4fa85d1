//! Particle and system configurations.

mod action;
mod view;

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{occupied_cells, particle_neighborhood, Cell, CellList, Direction, Shape};

pub use action::{apply_action, Action};
pub use view::{build_local_view, LocalView, NeighborInfo, SlotSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("cell {cell} is claimed by both particle {first} and particle {second}")]
    DuplicateOccupancy {
        cell: Cell,
        first: ParticleId,
        second: ParticleId,
    },
    #[error("action {action} is not admissible for shape {shape}")]
    InadmissibleShape { action: Action, shape: Shape },
    #[error("particle ids must be strictly increasing, found {0} after {1}")]
    UnorderedIds(ParticleId, ParticleId),
}

/// Identifier of a particle within one run. Never reused, never visible to
/// other particles.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParticleId(pub u64);

impl fmt::Display for ParticleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// An opaque state token drawn from an algorithm's finite state set.
#[derive(Clone, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "String", into = "String")]
pub struct StateLabel(Arc<str>);

impl StateLabel {
    pub fn new(name: &str) -> Self {
        StateLabel(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl PartialEq for StateLabel {
    #[inline]
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl std::hash::Hash for StateLabel {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.as_str().hash(state);
    }
}

impl From<String> for StateLabel {
    fn from(s: String) -> Self {
        StateLabel(Arc::from(s))
    }
}

impl From<&str> for StateLabel {
    fn from(s: &str) -> Self {
        StateLabel::new(s)
    }
}

impl From<StateLabel> for String {
    fn from(s: StateLabel) -> String {
        s.0.to_string()
    }
}

impl fmt::Debug for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The configuration `(q, s, h, r)` of one particle, plus its id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParticleConfig {
    pub id: ParticleId,
    pub state: StateLabel,
    pub shape: Shape,
    pub head: Cell,
    pub orientation: Direction,
}

impl ParticleConfig {
    pub fn new(
        id: u64,
        state: impl Into<StateLabel>,
        shape: Shape,
        head: impl Into<Cell>,
        orientation: u8,
    ) -> Self {
        Self {
            id: ParticleId(id),
            state: state.into(),
            shape,
            head: head.into(),
            orientation: Direction::new(orientation as i64),
        }
    }

    #[inline]
    pub fn cells(&self) -> CellList<2> {
        occupied_cells(self.head, self.orientation, self.shape)
    }

    #[inline]
    pub fn neighborhood(&self) -> CellList<8> {
        particle_neighborhood(self.head, self.orientation, self.shape)
    }

    /// The cell an expansion would move the head into.
    pub fn expansion_target(&self) -> Cell {
        self.head.neighbor(self.orientation)
    }
}

pub type Occupancy = FxHashMap<Cell, ParticleId>;

/// Maps every occupied cell to its occupant.
pub fn build_occupancy<'a>(
    particles: impl IntoIterator<Item = &'a ParticleConfig>,
) -> Result<Occupancy, ModelError> {
    let particles = particles.into_iter();
    let mut occupancy =
        Occupancy::with_capacity_and_hasher(particles.size_hint().0 * 2, Default::default());
    for p in particles {
        for &cell in &p.cells() {
            if let Some(&first) = occupancy.get(&cell) {
                return Err(ModelError::DuplicateOccupancy {
                    cell,
                    first,
                    second: p.id,
                });
            }
            occupancy.insert(cell, p.id);
        }
    }
    Ok(occupancy)
}

/// True iff some cell of `v` lies in the neighborhood of `u`.
pub fn particles_connected(u: &ParticleConfig, v: &ParticleConfig) -> bool {
    let cells = v.cells();
    u.neighborhood().iter().any(|c| cells.contains(c))
}

/// The configuration of a particle system: particles ordered by id plus the
/// derived occupancy index.
#[derive(Clone, Debug)]
pub struct SystemConfig {
    particles: Vec<ParticleConfig>,
    occupancy: Occupancy,
    next_id: u64,
}

impl PartialEq for SystemConfig {
    fn eq(&self, other: &Self) -> bool {
        self.particles == other.particles && self.next_id == other.next_id
    }
}

impl Eq for SystemConfig {}

impl SystemConfig {
    /// Builds a system from particles with strictly increasing ids.
    pub fn new(particles: Vec<ParticleConfig>) -> Result<Self, ModelError> {
        let next_id = particles.last().map_or(0, |p| p.id.0 + 1);
        Self::with_next_id(particles, next_id)
    }

    /// Like [`SystemConfig::new`], but with an explicit id counter so ids of
    /// removed particles are not handed out again.
    pub fn with_next_id(particles: Vec<ParticleConfig>, next_id: u64) -> Result<Self, ModelError> {
        for w in particles.windows(2) {
            if w[1].id <= w[0].id {
                return Err(ModelError::UnorderedIds(w[1].id, w[0].id));
            }
        }
        let occupancy = build_occupancy(&particles)?;
        let next_id = particles
            .last()
            .map_or(next_id, |p| next_id.max(p.id.0 + 1));
        Ok(Self {
            particles,
            occupancy,
            next_id,
        })
    }

    /// Assigns ids `0..n` in input order.
    pub fn from_unnumbered(
        particles: impl IntoIterator<Item = (StateLabel, Shape, Cell, Direction)>,
    ) -> Result<Self, ModelError> {
        let particles = particles
            .into_iter()
            .enumerate()
            .map(|(i, (state, shape, head, orientation))| ParticleConfig {
                id: ParticleId(i as u64),
                state,
                shape,
                head,
                orientation,
            })
            .collect();
        Self::new(particles)
    }

    pub fn empty() -> Self {
        Self {
            particles: Vec::new(),
            occupancy: Occupancy::default(),
            next_id: 0,
        }
    }

    pub fn particles(&self) -> &[ParticleConfig] {
        &self.particles
    }

    pub fn into_particles(self) -> Vec<ParticleConfig> {
        self.particles
    }

    pub fn occupancy(&self) -> &Occupancy {
        &self.occupancy
    }

    pub fn next_id(&self) -> u64 {
        self.next_id
    }

    pub fn len(&self) -> usize {
        self.particles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.particles.is_empty()
    }

    pub fn get(&self, id: ParticleId) -> Option<&ParticleConfig> {
        self.index_of(id).map(|i| &self.particles[i])
    }

    pub fn index_of(&self, id: ParticleId) -> Option<usize> {
        self.particles.binary_search_by_key(&id, |p| p.id).ok()
    }

    #[inline]
    pub fn occupant(&self, cell: Cell) -> Option<&ParticleConfig> {
        self.occupancy.get(&cell).and_then(|&id| self.get(id))
    }

    pub fn is_free(&self, cell: Cell) -> bool {
        !self.occupancy.contains_key(&cell)
    }

    /// Edges `{u, v}` (with `u < v`) of the connectivity graph.
    pub fn connectivity_graph(&self) -> ConnectivityGraph {
        let mut edges = Vec::new();
        for p in &self.particles {
            let mut seen: Vec<ParticleId> = Vec::with_capacity(8);
            for cell in &p.neighborhood() {
                if let Some(&q) = self.occupancy.get(cell) {
                    if q > p.id && !seen.contains(&q) {
                        seen.push(q);
                    }
                }
            }
            seen.sort();
            edges.extend(seen.into_iter().map(|q| (p.id, q)));
        }
        ConnectivityGraph {
            vertices: self.particles.iter().map(|p| p.id).collect(),
            edges,
        }
    }

    /// Whether the connectivity graph is connected. Empty and single-particle
    /// systems are connected.
    pub fn is_connected(&self) -> bool {
        let n = self.particles.len();
        if n <= 1 {
            return true;
        }
        let mut visited = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        visited[0] = true;
        let mut count = 1;
        while let Some(i) = queue.pop_front() {
            for cell in &self.particles[i].neighborhood() {
                if let Some(&q) = self.occupancy.get(cell) {
                    let j = self
                        .index_of(q)
                        .expect("occupancy refers to a live particle");
                    if !visited[j] {
                        visited[j] = true;
                        count += 1;
                        queue.push_back(j);
                    }
                }
            }
        }
        count == n
    }
}

pub fn is_connected(sys: &SystemConfig) -> bool {
    sys.is_connected()
}

pub fn connectivity_graph(sys: &SystemConfig) -> ConnectivityGraph {
    sys.connectivity_graph()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityGraph {
    pub vertices: Vec<ParticleId>,
    pub edges: Vec<(ParticleId, ParticleId)>,
}
