//! Counter-based deterministic random bits.
//!
//! Every random decision in this crate is a pure function of a 64-bit key
//! and a counter, so edge decisions are order-independent and identical
//! across platforms and thread counts. The mixer is the splitmix64
//! finalizer, which is invertible and passes the usual avalanche tests.

/// splitmix64 finalizer: a bijective 64-bit mixer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives an independent stream key for sub-process `index` of `seed`.
#[inline]
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    seed ^ mix64(index)
}

/// The canonical index of the unordered pair `{u, v}`, `u != v`:
/// pairs are ranked `(0,1), (0,2), (1,2), (0,3), ...`.
#[inline]
pub fn pair_index(u: usize, v: usize) -> u64 {
    debug_assert_ne!(u, v);
    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
    let hi = hi as u64;
    hi * (hi - 1) / 2 + lo as u64
}

/// Uniform value in `[0, 1)` for counter `ctr` under `key`, with 53 bits
/// of precision.
#[inline]
pub fn uniform01(key: u64, ctr: u64) -> f64 {
    let x = mix64(key ^ mix64(ctr));
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// A keyed counter stream for draws that need more than one decision,
/// e.g. rejection sampling of subset indices.
#[derive(Clone, Debug)]
pub struct CounterRng {
    key: u64,
    ctr: u64,
}

impl CounterRng {
    pub fn new(key: u64) -> Self {
        CounterRng { key, ctr: 0 }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let out = mix64(self.key ^ mix64(self.ctr));
        self.ctr += 1;
        out
    }

    /// Uniform value in `[0, bound)` by rejection, exact for any `bound >= 1`.
    pub fn next_below_u128(&mut self, bound: u128) -> u128 {
        assert!(bound >= 1);
        let zone = u128::MAX - (u128::MAX % bound);
        loop {
            let x = ((self.next_u64() as u128) << 64) | self.next_u64() as u128;
            if x < zone {
                return x % bound;
            }
        }
    }

    pub fn next_below_usize(&mut self, bound: usize) -> usize {
        self.next_below_u128(bound as u128) as usize
    }
}
