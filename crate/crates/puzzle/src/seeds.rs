//! Deterministic seed derivation.
//!
//! Every random draw in the simulator flows from an explicit base seed
//! through this module, so independent streams (channel taps, payload
//! data, receiver noise, ...) never collide and whole experiments replay
//! bit-identically. The mapping is `mix`-chained splitmix64: stable,
//! documented, and independent of any RNG internals.

/// Well-known stream labels. Values are part of the reproducibility
/// contract; changing them changes every derived sequence.
pub mod stream {
    pub const CHANNEL_TAPS: u64 = 1;
    pub const QPSK_DATA: u64 = 2;
    pub const OBSERVE_NOISE: u64 = 3;
    pub const EVE_COMPONENT: u64 = 4;
    pub const MOVEMENT_ROTATION: u64 = 5;
    pub const ESTIMATE_NOISE: u64 = 6;
    pub const GUESS_COIN: u64 = 7;
}

/// One splitmix64 step.
fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes a salt into a seed; order-sensitive and collision-resistant
/// enough for stream separation.
pub fn mix(seed: u64, salt: u64) -> u64 {
    splitmix(splitmix(seed) ^ salt)
}

/// Derives the seed for `(stream, index)` under a base seed.
pub fn derive(base: u64, stream: u64, index: u64) -> u64 {
    mix(mix(base, stream), index)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_do_not_collide() {
        let base = 12345;
        let a = derive(base, stream::CHANNEL_TAPS, 0);
        let b = derive(base, stream::QPSK_DATA, 0);
        let c = derive(base, stream::CHANNEL_TAPS, 1);
        assert_ne!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn derivation_is_stable() {
        // Frozen values: changing the mixing function is a breaking change.
        assert_eq!(mix(0, 0), 12035550249420947055);
        assert_eq!(derive(0, 1, 2), 13752686981196726545);
    }
}
