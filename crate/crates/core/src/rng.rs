//! Seeded randomness. A run seed yields two independent ChaCha streams, one
//! for the problem domain and one for the search strategy.

use rand::{Rng, SeedableRng};

pub type RunRng = rand_chacha::ChaCha8Rng;

const DOMAIN_STREAM: u64 = 0;
const STRATEGY_STREAM: u64 = 1;

pub fn domain_stream(seed: u64) -> RunRng {
    stream(seed, DOMAIN_STREAM)
}

pub fn strategy_stream(seed: u64) -> RunRng {
    stream(seed, STRATEGY_STREAM)
}

fn stream(seed: u64, id: u64) -> RunRng {
    let mut rng = RunRng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// Picks uniformly among the maximal-key items, scanning once (reservoir style).
pub(crate) fn argmax_random_ties<T: Copy, K: PartialOrd + Copy>(
    items: impl IntoIterator<Item = T>,
    key: impl Fn(T) -> K,
    rng: &mut RunRng,
) -> Option<T> {
    let mut best: Option<(T, K)> = None;
    let mut ties = 0u32;
    for item in items {
        let k = key(item);
        match best {
            None => {
                best = Some((item, k));
                ties = 1;
            }
            Some((_, bk)) if k > bk => {
                best = Some((item, k));
                ties = 1;
            }
            Some((_, bk)) if k == bk => {
                ties += 1;
                if rng.gen_range(0..ties) == 0 {
                    best = Some((item, k));
                }
            }
            _ => {}
        }
    }
    best.map(|(t, _)| t)
}
