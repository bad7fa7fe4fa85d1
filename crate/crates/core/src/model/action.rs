use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ModelError, ParticleConfig, ParticleId, StateLabel};
use crate::geometry::Shape;

/// The action alphabet `{N, T, E, C, D, K}`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Action {
    #[serde(rename = "N")]
    Null,
    #[serde(rename = "T")]
    Turn,
    #[serde(rename = "E")]
    Expand,
    #[serde(rename = "C")]
    Contract,
    #[serde(rename = "D")]
    Divide,
    #[serde(rename = "K")]
    Kill,
}

impl Action {
    pub const ALL: [Action; 6] = [
        Action::Null,
        Action::Turn,
        Action::Expand,
        Action::Contract,
        Action::Divide,
        Action::Kill,
    ];

    pub fn is_admissible(self, shape: Shape) -> bool {
        match self {
            Action::Null | Action::Turn => true,
            Action::Expand | Action::Kill => shape == Shape::S1,
            Action::Contract | Action::Divide => shape == Shape::S2,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Action::Null => 'N',
            Action::Turn => 'T',
            Action::Expand => 'E',
            Action::Contract => 'C',
            Action::Divide => 'D',
            Action::Kill => 'K',
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Action {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "N" | "null" => Ok(Action::Null),
            "T" | "turn" => Ok(Action::Turn),
            "E" | "expand" => Ok(Action::Expand),
            "C" | "contract" => Ok(Action::Contract),
            "D" | "divide" => Ok(Action::Divide),
            "K" | "kill" => Ok(Action::Kill),
            other => Err(format!("unknown action {other:?}")),
        }
    }
}

/// Applies `action` to `p`, replacing its state with `new_state`.
///
/// Returns the successor configurations: none for `Kill`, two for `Divide`
/// (parent first, then the copy carrying `copy_id`), one otherwise.
pub fn apply_action(
    p: &ParticleConfig,
    action: Action,
    new_state: StateLabel,
    copy_id: ParticleId,
) -> Result<Vec<ParticleConfig>, ModelError> {
    if !action.is_admissible(p.shape) {
        return Err(ModelError::InadmissibleShape {
            action,
            shape: p.shape,
        });
    }
    let mut next = ParticleConfig {
        state: new_state,
        ..p.clone()
    };
    match action {
        Action::Null => {}
        Action::Turn => match p.shape {
            Shape::S1 => next.orientation = p.orientation + 1,
            Shape::S2 => {
                next.head = p.head.neighbor(p.orientation + 3);
                next.orientation = p.orientation + 3;
            }
        },
        Action::Expand => {
            next.head = p.head.neighbor(p.orientation);
            next.shape = Shape::S2;
        }
        Action::Contract => next.shape = Shape::S1,
        Action::Divide => {
            next.shape = Shape::S1;
            let copy = ParticleConfig {
                id: copy_id,
                head: p.head.neighbor(p.orientation + 3),
                ..next.clone()
            };
            return Ok(vec![next, copy]);
        }
        Action::Kill => return Ok(Vec::new()),
    }
    Ok(vec![next])
}
