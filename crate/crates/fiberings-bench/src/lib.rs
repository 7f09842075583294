//! Shared inputs for the criterion benches.

use fiberings_core::covers::CoveringMap;
use fiberings_core::sampling;

/// A fixed batch of valid covers spanning the supported small range.
pub fn cover_batch() -> Vec<CoveringMap> {
    (0..8)
        .map(|seed| sampling::sample_cover(2 + (seed % 2) as usize, 4 + (seed % 3) as usize, seed))
        .collect()
}
