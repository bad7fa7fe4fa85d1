//! Hexagonal grid geometry.
//!
//! Cells are addressed by two integer coordinates. The six neighbor offsets
//! are indexed by a [`Direction`] in `Z_6`; increasing the index walks the
//! neighbors clockwise.

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

/// A cell of the infinite hexagonal grid.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub const ORIGIN: Cell = Cell { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    /// The neighbor of this cell in direction `d`.
    #[inline]
    pub fn neighbor(self, d: Direction) -> Cell {
        self + d.offset()
    }

    /// Whether `other` is one of the six neighbors of this cell.
    pub fn is_adjacent(self, other: Cell) -> bool {
        Direction::from_offset(other - self).is_some()
    }
}

impl From<[i64; 2]> for Cell {
    fn from([x, y]: [i64; 2]) -> Self {
        Cell { x, y }
    }
}

impl From<Cell> for [i64; 2] {
    fn from(c: Cell) -> Self {
        [c.x, c.y]
    }
}

impl From<(i64, i64)> for Cell {
    fn from((x, y): (i64, i64)) -> Self {
        Cell { x, y }
    }
}

impl Add for Cell {
    type Output = Cell;

    #[inline]
    fn add(self, rhs: Cell) -> Cell {
        Cell::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Cell {
    type Output = Cell;

    #[inline]
    fn sub(self, rhs: Cell) -> Cell {
        Cell::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

const OFFSETS: [Cell; 6] = [
    Cell::new(0, 1),
    Cell::new(1, 0),
    Cell::new(1, -1),
    Cell::new(0, -1),
    Cell::new(-1, 0),
    Cell::new(-1, 1),
];

/// A direction in `Z_6`. Arithmetic wraps modulo 6.
#[derive(
    Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(try_from = "u8", into = "u8")]
pub struct Direction(u8);

impl Direction {
    pub const ALL: [Direction; 6] = [
        Direction(0),
        Direction(1),
        Direction(2),
        Direction(3),
        Direction(4),
        Direction(5),
    ];

    /// Builds a direction from any integer, reducing it modulo 6.
    pub fn new(value: i64) -> Self {
        Direction(value.rem_euclid(6) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn opposite(self) -> Self {
        self + 3
    }

    #[inline]
    pub fn offset(self) -> Cell {
        OFFSETS[self.0 as usize]
    }

    /// The direction whose offset equals `delta`, if any.
    pub fn from_offset(delta: Cell) -> Option<Direction> {
        OFFSETS
            .iter()
            .position(|&o| o == delta)
            .map(|i| Direction(i as u8))
    }
}

impl Add<u8> for Direction {
    type Output = Direction;

    #[inline]
    fn add(self, rhs: u8) -> Direction {
        Direction(((self.0 as u16 + rhs as u16) % 6) as u8)
    }
}

impl Add<Direction> for Direction {
    type Output = Direction;

    #[inline]
    fn add(self, rhs: Direction) -> Direction {
        self + rhs.0
    }
}

impl TryFrom<u8> for Direction {
    type Error = String;

    fn try_from(value: u8) -> Result<Self, Self::Error> {
        if value < 6 {
            Ok(Direction(value))
        } else {
            Err(format!("direction must be in 0..=5, got {value}"))
        }
    }
}

impl From<Direction> for u8 {
    fn from(d: Direction) -> u8 {
        d.0
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Contracted (one cell) or expanded (two cells).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    S1,
    S2,
}

impl Shape {
    pub fn cell_count(self) -> usize {
        match self {
            Shape::S1 => 1,
            Shape::S2 => 2,
        }
    }

    /// Size of the particle neighborhood: 6 or 8.
    pub fn neighborhood_size(self) -> usize {
        match self {
            Shape::S1 => 6,
            Shape::S2 => 8,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::S1 => "s1",
            Shape::S2 => "s2",
        })
    }
}

/// Up to eight cells, stored inline.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct CellList<const N: usize> {
    cells: [Cell; N],
    len: u8,
}

impl<const N: usize> CellList<N> {
    fn from_slice(src: &[Cell]) -> Self {
        let mut cells = [Cell::ORIGIN; N];
        cells[..src.len()].copy_from_slice(src);
        Self {
            cells,
            len: src.len() as u8,
        }
    }

    pub fn as_slice(&self) -> &[Cell] {
        &self.cells[..self.len as usize]
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, c: &Cell) -> bool {
        self.as_slice().contains(c)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Cell> {
        self.as_slice().iter()
    }
}

impl<const N: usize> std::ops::Deref for CellList<N> {
    type Target = [Cell];

    fn deref(&self) -> &[Cell] {
        self.as_slice()
    }
}

impl<'a, const N: usize> IntoIterator for &'a CellList<N> {
    type Item = &'a Cell;
    type IntoIter = std::slice::Iter<'a, Cell>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

#[inline]
pub fn neighbor(c: Cell, d: Direction) -> Cell {
    c.neighbor(d)
}

/// The six neighbors of `c`, in direction order.
pub fn cell_neighborhood(c: Cell) -> [Cell; 6] {
    Direction::ALL.map(|d| c.neighbor(d))
}

/// Cells occupied by a particle: the head, then (for `S2`) the tail behind it.
#[inline]
pub fn occupied_cells(head: Cell, r: Direction, shape: Shape) -> CellList<2> {
    match shape {
        Shape::S1 => CellList::from_slice(&[head]),
        Shape::S2 => CellList::from_slice(&[head, head.neighbor(r + 3)]),
    }
}

/// The numbered neighborhood of a particle. Slot 0 is `neighbor(head, r)`
/// and the numbering proceeds clockwise around the particle.
#[inline]
pub fn particle_neighborhood(head: Cell, r: Direction, shape: Shape) -> CellList<8> {
    match shape {
        Shape::S1 => {
            let mut out = [Cell::ORIGIN; 6];
            for (i, slot) in out.iter_mut().enumerate() {
                *slot = head.neighbor(r + i as u8);
            }
            CellList::from_slice(&out)
        }
        Shape::S2 => {
            let tail = head.neighbor(r + 3);
            CellList::from_slice(&[
                head.neighbor(r),
                head.neighbor(r + 1),
                head.neighbor(r + 2),
                tail.neighbor(r + 2),
                tail.neighbor(r + 3),
                tail.neighbor(r + 4),
                head.neighbor(r + 4),
                head.neighbor(r + 5),
            ])
        }
    }
}
