//! Exact symbolic layer: four-valued bit algebra, product strings and
//! integer-coefficient superpositions.
//!
//! A bit position carries one of four values. Low and high are the two
//! classical values, each represented by its own rail. The uncertain
//! value is the product of both rails of the bit, and the vacuum value is
//! the constant 1 marking a non-existent bit. Because every rail squares
//! to one, position-wise multiplication turns `{V, L, H, X}` into a
//! Klein four-group with identity `V` in which every element is its own
//! inverse.
//!
//! A product string is an M-vector of bit values and names one basis term
//! of the hyperspace; a superposition is a finite map from canonical
//! product strings to nonzero signed integer coefficients. Coefficients
//! are arbitrary precision: full universes reach magnitude `3^M` and must
//! never overflow silently.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard limit on `|a| * |b|` candidate terms in one symbolic product.
/// Expansion is exponential by design; the factored signal path is the
/// scalable representation.
pub const DEFAULT_EXPANSION_CAP: usize = 1 << 20;

/// Value of one bit position. Declaration order is the canonical sort
/// order `V < L < H < X` used for serialization and term ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BitValue {
    /// Non-existent bit, constant amplitude 1. Common to all bits.
    Vacuum,
    /// Low (0), carried by rail 0.
    Low,
    /// High (1), carried by rail 1.
    High,
    /// Uncertain, carried by the product of both rails.
    Uncertain,
}

pub use BitValue::{High, Low, Uncertain, Vacuum};

impl BitValue {
    pub const ALL: [BitValue; 4] = [Vacuum, Low, High, Uncertain];

    /// Two-bit code (rail-0 exponent, rail-1 exponent) over GF(2).
    #[inline]
    fn code(self) -> u8 {
        match self {
            Vacuum => 0b00,
            Low => 0b01,
            High => 0b10,
            Uncertain => 0b11,
        }
    }

    #[inline]
    fn from_code(code: u8) -> Self {
        match code & 0b11 {
            0b00 => Vacuum,
            0b01 => Low,
            0b10 => High,
            _ => Uncertain,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Low => 'L',
            High => 'H',
            Uncertain => 'X',
            Vacuum => 'V',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'L' | 'l' => Ok(Low),
            'H' | 'h' => Ok(High),
            'X' | 'x' => Ok(Uncertain),
            'V' | 'v' => Ok(Vacuum),
            _ => Err(Error::Parse(format!("invalid bit value '{c}', expected L, H, X or V"))),
        }
    }
}

/// Group product. Rail exponents add mod 2, so the product is the XOR of
/// the two-bit codes: `V` is the identity, every value is its own
/// inverse, `L*H = X`, `L*X = H`, `H*X = L`.
impl std::ops::Mul for BitValue {
    type Output = BitValue;

    // Rail exponents add mod 2, so the group product is the code XOR.
    #[allow(clippy::suspicious_arithmetic_impl)]
    #[inline]
    fn mul(self, rhs: BitValue) -> BitValue {
        BitValue::from_code(self.code() ^ rhs.code())
    }
}

impl fmt::Display for BitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// An M-position product string: the symbolic form of one basis term.
///
/// Vacuum positions are stored explicitly so every string keeps length M
/// and gate action stays a local update. Ordering is lexicographic by bit
/// position with `V < L < H < X`, which fixes the canonical term order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductString(Vec<BitValue>);

impl ProductString {
    pub fn new(values: Vec<BitValue>) -> Self {
        Self(values)
    }

    /// The all-vacuum string: the global vacuum with constant amplitude 1.
    pub fn vacuum(m: usize) -> Self {
        Self(vec![Vacuum; m])
    }

    /// Encodes `n` as a full-rank binary string: bit k of `n` (k = 1 is
    /// least significant) becomes `H` at position k when set, `L`
    /// otherwise. No `X` or `V` is produced.
    pub fn from_number(n: u64, m: usize) -> Result<Self> {
        if m < 64 && n >= 1u64 << m {
            return Err(Error::NumberOutOfRange { n, m });
        }
        Ok(Self(
            (0..m)
                .map(|k| if k < 64 && (n >> k) & 1 == 1 { High } else { Low })
                .collect(),
        ))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[BitValue] {
        &self.0
    }

    /// Value at 1-based bit significance index.
    pub fn value_at(&self, bit_index: usize) -> BitValue {
        self.0[bit_index - 1]
    }

    /// Copy with the value at 1-based `bit_index` replaced.
    pub fn with_value_at(&self, bit_index: usize, v: BitValue) -> Self {
        let mut values = self.0.clone();
        values[bit_index - 1] = v;
        Self(values)
    }

    /// Position-wise group product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(&a, &b)| a * b).collect(),
        ))
    }
}

/// Compact alphabet form, position 1 leftmost (e.g. `LHH` encodes 6 in a
/// 3-bit system).
impl fmt::Display for ProductString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.0 {
            write!(f, "{}", v.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for ProductString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars().map(BitValue::from_char).collect::<Result<Vec<_>>>().map(Self)
    }
}

impl Serialize for ProductString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ProductString {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact superposition: finite map from canonical product strings to
/// nonzero arbitrary-precision coefficients. The empty map is the zero
/// state. Iteration follows the canonical term order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superposition {
    m: usize,
    terms: BTreeMap<ProductString, BigInt>,
}

impl Superposition {
    /// The zero state for an `m`-bit system.
    pub fn zero(m: usize) -> Self {
        Self {
            m,
            terms: BTreeMap::new(),
        }
    }

    /// Single-term state `coefficient * w`.
    pub fn term(w: ProductString, coefficient: impl Into<BigInt>) -> Self {
        let mut s = Self::zero(w.len());
        s.add_term(w, coefficient.into());
        s
    }

    /// Unit-coefficient superposition of the given numbers, each encoded
    /// as a full-rank binary string.
    pub fn of_numbers(numbers: &[u64], m: usize) -> Result<Self> {
        let mut s = Self::zero(m);
        for &n in numbers {
            s.add_term(ProductString::from_number(n, m)?, BigInt::one());
        }
        Ok(s)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&ProductString, &BigInt)> {
        self.terms.iter()
    }

    /// Stored coefficient of `w`, zero if absent.
    pub fn coefficient(&self, w: &ProductString) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Sum of absolute coefficient values; bounds the instantaneous
    /// amplitude and the spread of correlation estimators.
    pub fn coefficient_l1(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).sum()
    }

    /// Adds `coefficient * w`, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, w: ProductString, coefficient: BigInt) {
        debug_assert_eq!(w.len(), self.m);
        if coefficient.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(coefficient);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coefficient;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Coefficient-wise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::LengthMismatch {
                left: self.m,
                right: other.m,
            });
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    /// All coefficients multiplied by `k`.
    pub fn scaled(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.m);
        }
        Self {
            m: self.m,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    /// Full distribution of the product, collecting like terms, with the
    /// default expansion cap.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_capped(other, DEFAULT_EXPANSION_CAP)
    }

    /// Full distribution with an explicit cap on `|a| * |b|` candidate
    /// terms.
    pub fn mul_capped(&self, other: &Self, cap: usize) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::LengthMismatch {
                left: self.m,
                right: other.m,
            });
        }
        let required = self.term_count() as u128 * other.term_count() as u128;
        if required > cap as u128 {
            return Err(Error::ExpansionCapExceeded { required, cap });
        }
        let mut out = Self::zero(self.m);
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                out.add_term(u.mul(v)?, cu * cv);
            }
        }
        Ok(out)
    }
}

/// Serialized form: canonical (string, decimal coefficient) pairs.
#[derive(Serialize, Deserialize)]
struct SuperpositionRepr {
    m: usize,
    terms: Vec<(String, String)>,
}

impl Serialize for Superposition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SuperpositionRepr {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.to_string(), c.to_string()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Superposition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = SuperpositionRepr::deserialize(deserializer)?;
        let mut out = Superposition::zero(repr.m);
        for (w, c) in repr.terms {
            let w: ProductString = w.parse().map_err(D::Error::custom)?;
            if w.len() != repr.m {
                return Err(D::Error::custom(format!(
                    "term '{w}' has length {}, state is {}-bit",
                    w.len(),
                    repr.m
                )));
            }
            let c = BigInt::from_str(&c)
                .map_err(|e| D::Error::custom(format!("bad coefficient '{c}': {e}")))?;
            out.add_term(w, c);
        }
        Ok(out)
    }
}
