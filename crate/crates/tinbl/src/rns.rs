//! Reference noise system: a bank of 2M clocked random telegraph waves.
//!
//! Every noise-bit `i` owns two rails, rail 0 carrying the low value and
//! rail 1 carrying the high value. Each rail is an independent
//! random telegraph wave whose amplitude is +1 or -1, redrawn by an
//! unbiased coin at the start of every clock period and constant within
//! it. Time is therefore indexed by the clock period ordinal alone.
//!
//! The generator is a counter-based construction keyed by
//! `(seed, bit index, rail, tick)`: any sample can be produced in O(1)
//! without sequential state, so tick windows can be replayed or
//! partitioned freely and always reproduce bit-identical streams for a
//! fixed `(seed, M)`.

use crate::error::{Error, Result};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer; full-avalanche 64-bit mixer.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One of the two rails of a noise-bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rail {
    /// Rail 0, the carrier of the low bit value.
    Low = 0,
    /// Rail 1, the carrier of the high bit value.
    High = 1,
}

impl Rail {
    #[inline]
    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn from_index(j: u8) -> Result<Self> {
        match j {
            0 => Ok(Rail::Low),
            1 => Ok(Rail::High),
            _ => Err(Error::Parse(format!("rail index must be 0 or 1, got {j}"))),
        }
    }
}

/// Identifier of one reference wave: bit significance index (1-based) plus rail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RtwId {
    pub bit_index: u32,
    pub rail: Rail,
}

impl RtwId {
    pub fn new(bit_index: u32, rail: Rail) -> Self {
        Self { bit_index, rail }
    }

    /// Flat rail ordinal in `[0, 2M)`, ordered (1,0), (1,1), (2,0), ...
    #[inline]
    pub fn lane(self) -> u64 {
        debug_assert!(self.bit_index >= 1, "bit indices are 1-based");
        2 * (self.bit_index as u64 - 1) + self.rail.index() as u64
    }
}

/// Clock period ordinal. Amplitudes are constant within a period, so no
/// finer time resolution exists anywhere in the API.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ClockIndex(pub u64);

/// Instantaneous amplitude of one rail: +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(i8)]
pub enum Sign {
    Minus = -1,
    Plus = 1,
}

impl Sign {
    #[inline]
    pub fn value(self) -> i64 {
        self as i8 as i64
    }

    #[inline]
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    #[inline]
    pub fn is_plus(self) -> bool {
        matches!(self, Sign::Plus)
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    #[inline]
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_bit(self == rhs)
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    #[inline]
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(if self.is_plus() { "1" } else { "-1" })
    }
}

/// Seeded deterministic stand-in for the hardware noise source.
///
/// Immutable after construction and `Copy`; every query is a pure function
/// of `(seed, id, t)`, so concurrent readers always agree regardless of
/// query order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rns {
    m: u32,
    seed: u64,
}

impl Rns {
    /// Builds a handle for `m` noise-bits (2m rails). No streams are
    /// precomputed; samples are generated on demand by counter.
    pub fn new(m: u32, seed: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidBitCount);
        }
        Ok(Self { m, seed })
    }

    #[inline]
    pub fn bit_count(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn rail_count(&self) -> u32 {
        2 * self.m
    }

    #[inline]
    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn check_bit_index(&self, bit_index: u32) -> Result<()> {
        if bit_index == 0 || bit_index > self.m {
            return Err(Error::BitIndexOutOfRange {
                bit_index,
                m: self.m,
            });
        }
        Ok(())
    }

    /// Amplitude of rail `id` during clock period `t`.
    pub fn sign(&self, id: RtwId, t: ClockIndex) -> Result<Sign> {
        self.check_bit_index(id.bit_index)?;
        Ok(self.sign_unchecked(id, t))
    }

    /// Same as [`sign`](Self::sign) without the range check. Callers must
    /// have validated `id.bit_index` against [`bit_count`](Self::bit_count).
    #[inline]
    pub fn sign_unchecked(&self, id: RtwId, t: ClockIndex) -> Sign {
        // Derive an independent stream key per lane, then read the
        // splitmix stream at counter position t. Top bit decides the coin.
        let key = mix64(self.seed ^ mix64(id.lane().wrapping_add(GOLDEN_GAMMA)));
        let word = mix64(key.wrapping_add(t.0.wrapping_mul(GOLDEN_GAMMA)));
        Sign::from_bit(word >> 63 == 1)
    }

    /// All 2M rail amplitudes at `t`, ordered (bit 1 rail 0, bit 1 rail 1,
    /// bit 2 rail 0, ...).
    pub fn rail_signs(&self, t: ClockIndex) -> Vec<Sign> {
        let mut out = Vec::with_capacity(self.rail_count() as usize);
        for bit_index in 1..=self.m {
            for rail in [Rail::Low, Rail::High] {
                out.push(self.sign_unchecked(RtwId::new(bit_index, rail), t));
            }
        }
        out
    }
}
