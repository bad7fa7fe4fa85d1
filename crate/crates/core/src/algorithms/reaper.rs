use super::AlgorithmSpec;
use crate::geometry::Shape;
use crate::model::{Action, StateLabel};

/// `marked` particles kill themselves once they see an `anchor` neighbor;
/// anchors and `plain` particles never act.
///
/// Connectivity is preserved as long as the non-marked particles are
/// connected among themselves. A marked particle that bridges two anchors
/// disconnects the system when it dies.
pub(super) fn reaper() -> AlgorithmSpec {
    let marked = StateLabel::new("marked");
    let anchor = StateLabel::new("anchor");
    let plain = StateLabel::new("plain");
    let (victim, target) = (marked.clone(), anchor.clone());
    AlgorithmSpec::new(
        "reaper",
        "marked particles next to an anchor kill themselves",
        vec![marked.clone(), anchor, plain],
        marked,
        move |state, shape, view, _| {
            if *state != victim {
                return (state.clone(), Action::Null);
            }
            let action = match shape {
                Shape::S2 => Action::Contract,
                Shape::S1 if view.any_in_state(&target) => Action::Kill,
                Shape::S1 => Action::Null,
            };
            (state.clone(), action)
        },
    )
    .expect("valid")
}
