use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ParticleConfig, StateLabel, SystemConfig};
use crate::geometry::Shape;

/// A subset of `{0, ..., 7}`.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotSet(u8);

impl SlotSet {
    pub const EMPTY: SlotSet = SlotSet(0);

    pub fn from_bits(bits: u8) -> Self {
        SlotSet(bits)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn insert(&mut self, slot: usize) {
        debug_assert!(slot < 8);
        self.0 |= 1 << slot;
    }

    pub fn contains(self, slot: usize) -> bool {
        slot < 8 && self.0 & (1 << slot) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..8).filter(move |&i| self.contains(i))
    }
}

impl FromIterator<usize> for SlotSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = SlotSet::EMPTY;
        for i in iter {
            set.insert(i);
        }
        set
    }
}

impl fmt::Debug for SlotSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for SlotSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for SlotSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let slots = Vec::<usize>::deserialize(d)?;
        if let Some(bad) = slots.iter().find(|&&s| s >= 8) {
            return Err(serde::de::Error::custom(format!("slot {bad} out of range")));
        }
        Ok(slots.into_iter().collect())
    }
}

/// What a particle perceives about one occupied neighboring cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NeighborInfo {
    pub state: StateLabel,
    pub shape: Shape,
    /// Slots `j` of the neighbor whose cell `n_j` belongs to the observer.
    pub backrefs: SlotSet,
}

/// The eight-slot local view that is the only input a transition function
/// gets about its surroundings. Carries no ids and no coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalView {
    slots: [Option<NeighborInfo>; 8],
}

impl LocalView {
    pub fn new(slots: [Option<NeighborInfo>; 8]) -> Self {
        Self { slots }
    }

    pub fn slot(&self, i: usize) -> Option<&NeighborInfo> {
        self.slots.get(i).and_then(Option::as_ref)
    }

    pub fn slots(&self) -> &[Option<NeighborInfo>; 8] {
        &self.slots
    }

    pub fn is_occupied(&self, i: usize) -> bool {
        self.slot(i).is_some()
    }

    /// Set of slots that hold a neighbor.
    pub fn occupied(&self) -> SlotSet {
        (0..8).filter(|&i| self.is_occupied(i)).collect()
    }

    pub fn is_isolated(&self) -> bool {
        self.slots.iter().all(Option::is_none)
    }

    pub fn any_in_state(&self, state: &StateLabel) -> bool {
        self.slots.iter().flatten().any(|n| &n.state == state)
    }
}

/// Builds the local view of `p` from the configuration `sys`.
///
/// Slot `i` is empty when `i >= |N(p)|` or the cell `n_i(p)` is free;
/// otherwise it records the occupant's state, shape, and back references.
pub fn build_local_view(sys: &SystemConfig, p: &ParticleConfig) -> LocalView {
    let own = p.cells();
    let mut slots: [Option<NeighborInfo>; 8] = Default::default();
    let mut prev = None;
    for (i, cell) in p.neighborhood().iter().enumerate() {
        let Some(other) = sys.occupant(*cell) else {
            prev = None;
            continue;
        };
        // A two-cell neighbor may cover two consecutive slots; reuse its record.
        if prev == Some(other.id) {
            slots[i] = slots[i - 1].clone();
            continue;
        }
        prev = Some(other.id);
        let backrefs = other
            .neighborhood()
            .iter()
            .enumerate()
            .filter(|(_, c)| own.contains(c))
            .map(|(j, _)| j)
            .collect();
        slots[i] = Some(NeighborInfo {
            state: other.state.clone(),
            shape: other.shape,
            backrefs,
        });
    }
    LocalView { slots }
}
