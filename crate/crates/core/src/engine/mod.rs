//! Synchronous round execution.
//!
//! A round reads one immutable snapshot: every particle's transition is
//! sampled from its local view of that snapshot ([`propose`]), the proposals
//! are checked against shape admissibility and expansion targets
//! ([`resolve`]), and all successful actions are applied at once
//! ([`commit`]).

mod rng;

use std::fmt;

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Cell, Shape};
use crate::model::{
    apply_action, build_local_view, build_occupancy, Action, LocalView, ModelError, ParticleId,
    StateLabel, SystemConfig,
};

pub use rng::{ParticleRng, RandomnessSource};

/// Above this population, proposals are sampled on the rayon pool.
const PARALLEL_THRESHOLD: usize = 2048;

/// A probabilistic finite automaton run by every particle.
///
/// `delta` sees only the particle's state, its shape, its local view and its
/// private random stream.
pub trait Algorithm: Send + Sync {
    fn name(&self) -> &str;

    fn states(&self) -> &[StateLabel];

    fn start_state(&self) -> &StateLabel;

    fn delta(
        &self,
        state: &StateLabel,
        shape: Shape,
        view: &LocalView,
        rng: &mut ParticleRng,
    ) -> (StateLabel, Action);

    fn has_state(&self, state: &StateLabel) -> bool {
        self.states().contains(state)
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConflictPolicy {
    /// The contender with the smallest id wins.
    #[default]
    LowestId,
    /// The winner is drawn from the run's seed, the round and the target cell.
    Seeded,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DisconnectPolicy {
    #[default]
    Halt,
    Warn,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnginePolicy {
    pub conflict: ConflictPolicy,
    pub on_disconnect: DisconnectPolicy,
    pub strict_init: bool,
}

impl EnginePolicy {
    /// Lowest-id conflicts, halt on disconnection, strict initial checks.
    pub fn strict() -> Self {
        Self {
            strict_init: true,
            ..Self::default()
        }
    }
}

/// Result of one particle's proposal in a round.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Applied,
    FailedInadmissible,
    FailedOccupied,
    FailedConflict,
}

impl Outcome {
    pub fn is_applied(self) -> bool {
        self == Outcome::Applied
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Applied => "applied",
            Outcome::FailedInadmissible => "failed_inadmissible",
            Outcome::FailedOccupied => "failed_occupied",
            Outcome::FailedConflict => "failed_conflict",
        })
    }
}

/// A sampled transition for one particle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Proposal {
    pub id: ParticleId,
    pub state: StateLabel,
    pub action: Action,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Event {
    pub id: ParticleId,
    pub action: Action,
    pub result: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundReport {
    pub round: u64,
    /// One event per particle alive at the start of the round, by id.
    pub events: Vec<Event>,
    pub created: Vec<ParticleId>,
    pub removed: Vec<ParticleId>,
    pub connected_after: bool,
}

impl RoundReport {
    pub fn applied(&self, action: Action) -> usize {
        self.events
            .iter()
            .filter(|e| e.action == action && e.result.is_applied())
            .count()
    }
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("initial configuration is not connected")]
    NotConnected,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("particle {id} violates the initial condition: {reason}")]
    StrictInitViolation { id: ParticleId, reason: String },
    #[error("particle {id} is in state {state:?}, which algorithm {algorithm} does not declare")]
    UnknownState {
        id: ParticleId,
        state: StateLabel,
        algorithm: String,
    },
    #[error("transition of particle {id} produced undeclared state {state:?}")]
    AlgorithmState { id: ParticleId, state: StateLabel },
    #[error("configuration became disconnected in round {}", report.round)]
    Disconnected {
        report: Box<RoundReport>,
        config: Box<SystemConfig>,
    },
    #[error("round {round} produced overlapping particles: {source}")]
    InternalExclusivityViolation { round: u64, source: ModelError },
    #[error("proposals do not match the particles of the configuration")]
    ProposalMismatch,
}

/// Checks the initial configuration: cell exclusivity, connectedness, known
/// states and, when `strict`, that every particle is contracted and in the
/// start state.
pub fn validate_initial(
    sys: &SystemConfig,
    alg: &dyn Algorithm,
    strict: bool,
) -> Result<(), EngineError> {
    build_occupancy(sys.particles())?;
    for p in sys.particles() {
        if !alg.has_state(&p.state) {
            return Err(EngineError::UnknownState {
                id: p.id,
                state: p.state.clone(),
                algorithm: alg.name().to_string(),
            });
        }
    }
    if !sys.is_connected() {
        return Err(EngineError::NotConnected);
    }
    if strict {
        for p in sys.particles() {
            if p.shape != Shape::S1 {
                return Err(EngineError::StrictInitViolation {
                    id: p.id,
                    reason: format!("shape is {}, expected s1", p.shape),
                });
            }
            if &p.state != alg.start_state() {
                return Err(EngineError::StrictInitViolation {
                    id: p.id,
                    reason: format!(
                        "state is {}, expected start state {}",
                        p.state,
                        alg.start_state()
                    ),
                });
            }
        }
    }
    Ok(())
}

/// Samples one transition per particle from the round-start snapshot.
pub fn propose(
    sys: &SystemConfig,
    alg: &dyn Algorithm,
    rng: &RandomnessSource,
    round: u64,
) -> Result<Vec<Proposal>, EngineError> {
    let sample = |p: &crate::model::ParticleConfig| {
        let view = build_local_view(sys, p);
        let mut stream = rng.stream(p.id, round);
        let (state, action) = alg.delta(&p.state, p.shape, &view, &mut stream);
        if !alg.has_state(&state) {
            return Err(EngineError::AlgorithmState { id: p.id, state });
        }
        Ok(Proposal {
            id: p.id,
            state,
            action,
        })
    };
    if sys.len() >= PARALLEL_THRESHOLD {
        sys.particles().par_iter().map(sample).collect()
    } else {
        sys.particles().iter().map(sample).collect()
    }
}

/// Decides which proposals succeed.
///
/// Inadmissible actions fail. An expansion fails if its target is occupied
/// now and stays occupied after the round; targets vacated by a contraction
/// or a kill are available. Among expansions into the same available cell
/// exactly one succeeds, chosen by `policy`.
pub fn resolve(
    sys: &SystemConfig,
    proposals: &[Proposal],
    policy: ConflictPolicy,
    rng: &RandomnessSource,
    round: u64,
) -> Result<Vec<Outcome>, EngineError> {
    check_alignment(sys, proposals)?;
    let particles = sys.particles();
    let mut results = vec![Outcome::Applied; particles.len()];

    let mut freed: FxHashSet<Cell> = FxHashSet::default();
    for (i, (p, prop)) in particles.iter().zip(proposals).enumerate() {
        if !prop.action.is_admissible(p.shape) {
            results[i] = Outcome::FailedInadmissible;
            continue;
        }
        match prop.action {
            Action::Contract => {
                freed.insert(p.cells()[1]);
            }
            Action::Kill => {
                freed.insert(p.head);
            }
            _ => {}
        }
    }

    let mut contenders: FxHashMap<Cell, Vec<usize>> = FxHashMap::default();
    for (i, (p, prop)) in particles.iter().zip(proposals).enumerate() {
        if prop.action != Action::Expand || results[i] != Outcome::Applied {
            continue;
        }
        let target = p.expansion_target();
        if !sys.is_free(target) && !freed.contains(&target) {
            results[i] = Outcome::FailedOccupied;
        } else {
            contenders.entry(target).or_default().push(i);
        }
    }

    for (target, group) in contenders {
        if group.len() < 2 {
            continue;
        }
        // `group` is in id order because particles are.
        let winner = match policy {
            ConflictPolicy::LowestId => 0,
            ConflictPolicy::Seeded => rng.conflict_pick(round, target, group.len()),
        };
        for (k, &i) in group.iter().enumerate() {
            if k != winner {
                results[i] = Outcome::FailedConflict;
            }
        }
    }
    Ok(results)
}

/// Applies every successful proposal simultaneously and reports the round.
pub fn commit(
    sys: &SystemConfig,
    proposals: &[Proposal],
    results: &[Outcome],
    round: u64,
) -> Result<(SystemConfig, RoundReport), EngineError> {
    check_alignment(sys, proposals)?;
    if results.len() != proposals.len() {
        return Err(EngineError::ProposalMismatch);
    }
    let mut next_id = sys.next_id();
    let mut survivors = Vec::with_capacity(sys.len());
    let mut copies = Vec::new();
    let mut events = Vec::with_capacity(sys.len());
    let mut removed = Vec::new();

    for ((p, prop), &result) in sys.particles().iter().zip(proposals).zip(results) {
        events.push(Event {
            id: p.id,
            action: prop.action,
            result,
        });
        if !result.is_applied() {
            survivors.push(p.clone());
            continue;
        }
        let mut out = apply_action(p, prop.action, prop.state.clone(), ParticleId(next_id))?;
        match prop.action {
            Action::Kill => removed.push(p.id),
            Action::Divide => {
                next_id += 1;
                copies.push(out.pop().expect("divide yields a copy"));
            }
            _ => {}
        }
        survivors.extend(out);
    }

    let created: Vec<_> = copies.iter().map(|c| c.id).collect();
    survivors.extend(copies);
    let next = SystemConfig::with_next_id(survivors, next_id)
        .map_err(|source| EngineError::InternalExclusivityViolation { round, source })?;
    let connected_after = next.is_connected();
    Ok((
        next,
        RoundReport {
            round,
            events,
            created,
            removed,
            connected_after,
        },
    ))
}

/// Runs one synchronous round.
pub fn step(
    sys: &SystemConfig,
    alg: &dyn Algorithm,
    rng: &RandomnessSource,
    policy: &EnginePolicy,
    round: u64,
) -> Result<(SystemConfig, RoundReport), EngineError> {
    let proposals = propose(sys, alg, rng, round)?;
    let results = resolve(sys, &proposals, policy.conflict, rng, round)?;
    let (next, report) = commit(sys, &proposals, &results, round)?;
    if !report.connected_after && policy.on_disconnect == DisconnectPolicy::Halt {
        return Err(EngineError::Disconnected {
            report: Box::new(report),
            config: Box::new(next),
        });
    }
    Ok((next, report))
}

/// Runs up to `rounds` rounds starting at round 1. Stops early once the
/// system is empty.
pub fn run(
    sys: &SystemConfig,
    alg: &dyn Algorithm,
    rng: &RandomnessSource,
    policy: &EnginePolicy,
    rounds: u64,
) -> Result<(SystemConfig, Vec<RoundReport>), EngineError> {
    let mut current = sys.clone();
    let mut reports = Vec::new();
    for round in 1..=rounds {
        if current.is_empty() {
            break;
        }
        let (next, report) = step(&current, alg, rng, policy, round)?;
        current = next;
        reports.push(report);
    }
    Ok((current, reports))
}

fn check_alignment(sys: &SystemConfig, proposals: &[Proposal]) -> Result<(), EngineError> {
    let aligned = sys.len() == proposals.len()
        && sys
            .particles()
            .iter()
            .zip(proposals)
            .all(|(p, prop)| p.id == prop.id);
    if aligned {
        Ok(())
    } else {
        Err(EngineError::ProposalMismatch)
    }
}

/// Drives a run one round at a time.
pub struct Simulation<'a> {
    alg: &'a dyn Algorithm,
    rng: RandomnessSource,
    policy: EnginePolicy,
    config: SystemConfig,
    round: u64,
}

impl<'a> Simulation<'a> {
    /// Validates `initial` under the policy's strictness.
    pub fn new(
        initial: SystemConfig,
        alg: &'a dyn Algorithm,
        rng: RandomnessSource,
        policy: EnginePolicy,
    ) -> Result<Self, EngineError> {
        validate_initial(&initial, alg, policy.strict_init)?;
        Ok(Self {
            alg,
            rng,
            policy,
            config: initial,
            round: 0,
        })
    }

    pub fn config(&self) -> &SystemConfig {
        &self.config
    }

    /// Number of committed rounds.
    pub fn round(&self) -> u64 {
        self.round
    }

    pub fn policy(&self) -> &EnginePolicy {
        &self.policy
    }

    /// Executes the next round. On a halting disconnection the round still
    /// counts and the disconnected configuration becomes current.
    pub fn step(&mut self) -> Result<RoundReport, EngineError> {
        let round = self.round + 1;
        match step(&self.config, self.alg, &self.rng, &self.policy, round) {
            Ok((next, report)) => {
                self.config = next;
                self.round = round;
                Ok(report)
            }
            Err(EngineError::Disconnected { report, config }) => {
                self.config = (*config).clone();
                self.round = round;
                Err(EngineError::Disconnected { report, config })
            }
            Err(e) => Err(e),
        }
    }
}
