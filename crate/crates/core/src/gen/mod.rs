//! Instance generators. Everything random is driven by an explicit seed.

mod planar;
mod random;
mod setcover;
mod tight;

pub use planar::{grid_instance, random_planar_bfs};
pub use random::{random_instance, two_arm_instance, with_random_weights};
pub use setcover::{min_set_cover, reduce_set_cover, SetCoverInstance};
pub use tight::{canonical_value, search_tightness_family, Tightness};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Zero-padded decimal so identifiers sort like their numbers.
pub(crate) fn padded(prefix: &str, i: usize, max: usize) -> String {
    let width = max.max(1).to_string().len();
    format!("{prefix}{i:0width$}")
}
