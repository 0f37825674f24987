//! Pinned pseudo-random stream: xoshiro256** seeded through SplitMix64.
//!
//! Every simulation run owns exactly one [`RngStream`]. The mapping from raw
//! 64-bit outputs to the values the simulation consumes is fixed here:
//!
//! * `uniform_real(lo, hi)`: `lo + (hi - lo) * u` where `u` is the top 53 bits
//!   of one output scaled by `2^-53`.
//! * `bernoulli(p)`: one uniform `u` in `[0, 1)`, true iff `u < p`.
//! * `choose(n)`: the high word of the 128-bit product `next() * n`.
//! * `shuffle(n)`: Fisher-Yates from index `n - 1` down to `1`, one `choose(i + 1)`
//!   per position.
//!
//! Changing any of these changes every golden sequence downstream.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum RngError {
    #[error("empty range: lo ({lo}) must be less than hi ({hi})")]
    EmptyRange { lo: f64, hi: f64 },
    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("cannot choose from zero options")]
    NoOptions,
}

const SPLITMIX_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(SPLITMIX_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngStream {
    state: [u64; 4],
}

impl RngStream {
    /// Expands `seed` into the 256-bit state with four SplitMix64 outputs.
    pub fn from_seed(seed: u64) -> Self {
        let mut sm = seed;
        let state = [splitmix64(&mut sm), splitmix64(&mut sm), splitmix64(&mut sm), splitmix64(&mut sm)];
        Self { state }
    }

    pub fn state(&self) -> [u64; 4] {
        self.state
    }

    /// Next raw 64-bit output.
    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.state;
        let result = s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform in `[0, 1)` with 53 bits of resolution.
    pub fn next_unit(&mut self) -> f64 {
        unit_from_bits(self.next_u64())
    }

    pub fn uniform_real(&mut self, lo: f64, hi: f64) -> Result<f64, RngError> {
        // Also rejects NaN bounds.
        if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
            return Err(RngError::EmptyRange { lo, hi });
        }
        Ok(scale_unit(self.next_unit(), lo, hi))
    }

    pub fn bernoulli(&mut self, p: f64) -> Result<bool, RngError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(RngError::ProbabilityOutOfRange(p));
        }
        Ok(self.next_unit() < p)
    }

    /// Uniform index in `[0, n)` from a single draw.
    pub fn choose(&mut self, n: usize) -> Result<usize, RngError> {
        if n == 0 {
            return Err(RngError::NoOptions);
        }
        Ok(bounded(self.next_u64(), n))
    }

    /// Uniform permutation of `0..n`.
    pub fn shuffle(&mut self, n: usize) -> Result<Vec<usize>, RngError> {
        if n == 0 {
            return Err(RngError::NoOptions);
        }
        let mut perm: Vec<usize> = (0..n).collect();
        self.shuffle_slice(&mut perm);
        Ok(perm)
    }

    // Infallible forms for callers that have already validated their arguments.
    // Each consumes exactly the draws of its checked counterpart.

    pub(crate) fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        bounded(self.next_u64(), n)
    }

    pub(crate) fn signed_unit(&mut self) -> f64 {
        scale_unit(self.next_unit(), -1.0, 1.0)
    }

    pub(crate) fn chance(&mut self, p: f64) -> bool {
        debug_assert!((0.0..=1.0).contains(&p));
        self.next_unit() < p
    }

    /// Fisher-Yates in place; a no-op on slices of length 0 or 1.
    pub fn shuffle_slice<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = bounded(self.next_u64(), i + 1);
            items.swap(i, j);
        }
    }
}

#[inline]
fn unit_from_bits(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[inline]
fn scale_unit(u: f64, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * u
}

#[inline]
fn bounded(bits: u64, n: usize) -> usize {
    ((bits as u128 * n as u128) >> 64) as usize
}
