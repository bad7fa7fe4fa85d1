use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::Cell;
use crate::model::ParticleId;

/// Random stream handed to a transition function for one particle and round.
pub type ParticleRng = ChaCha8Rng;

/// Root of all randomness in a run.
///
/// Streams are derived from `(root_seed, id, round)` alone, so the draws a
/// particle sees do not depend on evaluation order or thread count.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct RandomnessSource {
    root_seed: u64,
}

const STREAM_DOMAIN: u64 = 0x5052_4f50_4f53_4531;
const CONFLICT_DOMAIN: u64 = 0x434f_4e46_4c49_4354;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn mix(words: &[u64]) -> u64 {
    words
        .iter()
        .fold(0, |acc, &w| splitmix64(acc ^ splitmix64(w)))
}

impl RandomnessSource {
    pub fn new(root_seed: u64) -> Self {
        Self { root_seed }
    }

    pub fn root_seed(&self) -> u64 {
        self.root_seed
    }

    /// The stream for particle `id` in round `round`.
    pub fn stream(&self, id: ParticleId, round: u64) -> ParticleRng {
        let mut rng = ChaCha8Rng::seed_from_u64(mix(&[STREAM_DOMAIN, self.root_seed, id.0]));
        rng.set_stream(round);
        rng
    }

    /// Picks one of `n` expansion contenders for `target` in `round`.
    pub fn conflict_pick(&self, round: u64, target: Cell, n: usize) -> usize {
        assert!(n > 0);
        let h = mix(&[
            CONFLICT_DOMAIN,
            self.root_seed,
            round,
            target.x as u64,
            target.y as u64,
        ]);
        (h % n as u64) as usize
    }
}
