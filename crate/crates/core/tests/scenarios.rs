mod common;

use std::collections::BTreeSet;
use std::path::Path;

use amoeba_core::algorithms::{builtin, documented_input};
use amoeba_core::engine::{commit, resolve, step, Proposal};
use amoeba_core::geometry::particle_neighborhood;
use amoeba_core::io::{
    emit_config, load_config, parse_config, TraceHeader, TraceRecord, TraceWriter,
};
use amoeba_core::model::build_local_view;
use amoeba_core::render::{render_svg, svg_cells};
use amoeba_core::{
    Action, Cell, ConflictPolicy, Direction, DisconnectPolicy, EnginePolicy, ParticleConfig,
    RandomnessSource, Shape, StateLabel, SystemConfig,
};
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

#[test]
fn golden_fixture_loads_exactly() {
    let cfg = load_config(fixture("golden.json")).unwrap();
    assert_eq!(cfg.seed, Some(3));
    assert_eq!(cfg.rounds, 10);
    assert_eq!(cfg.policy.conflict, ConflictPolicy::Seeded);
    assert_eq!(cfg.policy.on_disconnect, DisconnectPolicy::Warn);
    let (sys, _) = cfg.validate().unwrap();
    let want = SystemConfig::new(vec![
        ParticleConfig::new(0, "spin", Shape::S2, (2, -1), 5),
        ParticleConfig::new(1, "idle", Shape::S1, (1, 0), 3),
        ParticleConfig::new(2, "idle", Shape::S2, (0, 0), 1),
    ])
    .unwrap();
    assert_eq!(sys.particles(), want.particles());
    // tails: (2,-1) + offset(2) and (0,0) + offset(4)
    let cells: BTreeSet<_> = sys.occupancy().keys().copied().collect();
    let hand: BTreeSet<_> = [(2, -1), (3, -2), (1, 0), (0, 0), (-1, 0)]
        .into_iter()
        .map(|(x, y)| Cell::new(x, y))
        .collect();
    assert_eq!(cells, hand);
    assert!(sys.is_connected());
}

#[test]
fn emitted_fixture_reloads_identically() {
    let cfg = load_config(fixture("golden.json")).unwrap();
    let once = emit_config(&cfg);
    let again = emit_config(&parse_config(&once).unwrap());
    assert_eq!(once, again);
    assert_eq!(parse_config(&once).unwrap(), cfg);
}

#[test]
fn minimal_config_runs_to_a_single_record_trace() {
    let cfg = parse_config(
        r#"{"format_version": 1, "algorithm": "idle",
            "particles": [{"state": "idle", "shape": "s1", "head": [0, 0], "orientation": 0}]}"#,
    )
    .unwrap();
    let (sys, _) = cfg.validate().unwrap();
    assert_eq!(cfg.rounds, 0);
    let header = TraceHeader::new(&cfg.algorithm, 0, cfg.policy);
    let mut w = TraceWriter::new(Vec::new(), &header).unwrap();
    w.record(&TraceRecord::initial(&sys)).unwrap();
    let text = String::from_utf8(w.into_inner()).unwrap();
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn demo_script_svg_frames_match_occupancy() {
    let alg = builtin("demo_script").unwrap();
    let rng = RandomnessSource::new(0);
    let policy = EnginePolicy::default();
    let mut sys = documented_input("demo_script").unwrap();
    let mut frames = vec![(render_svg(&sys), sys.clone())];
    for round in 1..=5 {
        sys = step(&sys, &alg, &rng, &policy, round).unwrap().0;
        frames.push((render_svg(&sys), sys.clone()));
    }
    assert_eq!(frames.len(), 6);
    for (i, (svg, sys)) in frames.iter().enumerate() {
        let mut drawn = svg_cells(svg);
        drawn.sort();
        let mut occupied: Vec<_> = sys.occupancy().keys().copied().collect();
        occupied.sort();
        assert_eq!(drawn, occupied, "frame {i}");
        assert_eq!(svg.matches("class=\"arrow\"").count(), sys.len());
    }
    assert_ne!(frames[0].0, frames[5].0);
}

#[test]
fn disconnection_scenario_through_the_reaper() {
    let alg = builtin("reaper").unwrap();
    let s = |n: &str| alg.state(n).unwrap().clone();
    let sys = SystemConfig::from_unnumbered([
        (s("anchor"), Shape::S1, Cell::new(0, 0), Direction::new(0)),
        (s("marked"), Shape::S1, Cell::new(0, 1), Direction::new(0)),
        (s("anchor"), Shape::S1, Cell::new(0, 2), Direction::new(0)),
    ])
    .unwrap();
    let err = step(
        &sys,
        &alg,
        &RandomnessSource::new(0),
        &EnginePolicy::default(),
        1,
    )
    .unwrap_err();
    match err {
        amoeba_core::EngineError::Disconnected { report, config } => {
            assert_eq!(report.round, 1);
            assert_eq!(report.removed, vec![amoeba_core::ParticleId(1)]);
            assert_eq!(config.len(), 2);
        }
        other => panic!("unexpected {other:?}"),
    }
}

fn check_views(sys: &SystemConfig) -> Result<(), TestCaseError> {
    for p in sys.particles() {
        let view = build_local_view(sys, p);
        let me = RefParticle::from_config(p);
        let ring = oracle_neighborhood(me.head, me.r, me.expanded);
        for (i, slot) in view.slots().iter().enumerate() {
            let occupant = ring
                .get(i)
                .and_then(|&(x, y)| sys.occupant(Cell::new(x, y)));
            match (slot, occupant) {
                (None, None) => {}
                (Some(info), Some(q)) => {
                    prop_assert_eq!(&info.state, &q.state);
                    prop_assert_eq!(info.shape, q.shape);
                    let other = RefParticle::from_config(q);
                    let theirs = oracle_neighborhood(other.head, other.r, other.expanded);
                    let want: Vec<usize> = (0..theirs.len())
                        .filter(|&j| me.cells().contains(&theirs[j]))
                        .collect();
                    let got: Vec<usize> = info.backrefs.iter().collect();
                    prop_assert_eq!(got, want);
                }
                (slot, occupant) => {
                    prop_assert!(false, "slot {i}: view {slot:?}, occupant {occupant:?}");
                }
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1024))]

    #[test]
    fn views_agree_with_the_oracle(seed in any::<u64>(), n in 2usize..=10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_config(&mut rng, n);
        check_views(&sys)?;
    }

    #[test]
    fn neighborhoods_agree_with_the_oracle(
        x in -1000i64..1000, y in -1000i64..1000, r in 0usize..6, expanded in any::<bool>()
    ) {
        let shape = if expanded { Shape::S2 } else { Shape::S1 };
        let got: Vec<Pt> = particle_neighborhood(Cell::new(x, y), Direction::new(r as i64), shape)
            .iter()
            .map(|&c| pt(c))
            .collect();
        prop_assert_eq!(got, oracle_neighborhood((x, y), r, expanded));
    }

    #[test]
    fn resolve_matches_reference_on_random_rounds(
        seed in any::<u64>(),
        n in 2usize..=7,
        // indices past the action list mean Expand, so contests are common
        picks in proptest::collection::vec(0usize..12, 7),
        seeded in any::<bool>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_config(&mut rng, n);
        let policy = if seeded { ConflictPolicy::Seeded } else { ConflictPolicy::LowestId };
        let source = RandomnessSource::new(seed);
        let proposals: Vec<Proposal> = sys
            .particles()
            .iter()
            .zip(&picks)
            .map(|(p, &k)| Proposal {
                id: p.id,
                state: StateLabel::new(&format!("n{}", p.id.0)),
                action: Action::ALL.get(k).copied().unwrap_or(Action::Expand),
            })
            .collect();
        let results = resolve(&sys, &proposals, policy, &source, 4).unwrap();
        let (next, report) = commit(&sys, &proposals, &results, 4).unwrap();

        let before: Vec<_> = sys.particles().iter().map(RefParticle::from_config).collect();
        let intents: Vec<_> = proposals.iter().map(|p| (p.action, p.state.to_string())).collect();
        let reference = reference_round(&before, &intents, sys.next_id(), policy, &source, 4);
        prop_assert_eq!(&results, &reference.outcomes);
        let after: Vec<_> = next.particles().iter().map(RefParticle::from_config).collect();
        prop_assert_eq!(&after, &reference.after);
        prop_assert_eq!(report.connected_after, reference_connected(&reference.after));
    }
}
