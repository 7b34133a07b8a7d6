//! Deterministic derivation of per-task RNG streams.
//!
//! Parallel experiments key every stochastic evaluation by
//! `(master seed, task indices…)` so results are independent of thread
//! scheduling. The mixer is SplitMix64 folded over the parts.

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Collapse `(master, parts…)` into one well-mixed stream seed.
pub fn stream_seed(master: u64, parts: &[u64]) -> u64 {
    let mut state = splitmix64(master);
    for &p in parts {
        state = splitmix64(state ^ splitmix64(p.wrapping_add(GOLDEN)));
    }
    state
}
