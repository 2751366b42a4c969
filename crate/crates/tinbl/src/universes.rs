//! Universe superpositions: the superposition of all representable
//! numbers, built in factored form with M additions and M-1
//! multiplications.
//!
//! Three kinds exist. The binary universe multiplies per-bit sums of the
//! two rails; its amplitude vanishes whenever any bit's rails cancel. The
//! ternary universe adds the rail product to each factor, which pins every
//! factor to -1 or 3, so its amplitude is never zero in any clock period.
//! The total universe adds the vacuum constant as well, giving factors 0
//! or 4.
//!
//! The factored expression has O(M) nodes and evaluates in O(M); exact
//! symbolic expansion (2^M, 3^M or 4^M terms) is only for small M and is
//! guarded by the expansion cap.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{BitValue, ProductString, Superposition, DEFAULT_EXPANSION_CAP};
use crate::error::{Error, Result};
use crate::rns::{ClockIndex, Rail, Rns, RtwId, Sign};
use crate::signals::{Amplitude, SignalExpr};

/// Which universe to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UniverseKind {
    /// Per-bit factor `rail0 + rail1`; amplitude 0 with probability
    /// `1 - 2^-M` per tick.
    Binary,
    /// Per-bit factor `rail0 + rail1 + rail0*rail1`; never zero.
    #[serde(rename = "ternary-nv")]
    TernaryNoVacuum,
    /// Per-bit factor `rail0 + rail1 + rail0*rail1 + 1`; includes every
    /// vacuum combination, so single-rail terms appear too.
    Total,
}

impl UniverseKind {
    pub const ALL: [UniverseKind; 3] = [
        UniverseKind::Binary,
        UniverseKind::TernaryNoVacuum,
        UniverseKind::Total,
    ];

    /// Addends per factor: 2, 3 or 4. Also the per-bit value count, so the
    /// expanded universe has `branch_count^M` terms.
    pub fn branch_count(self) -> u32 {
        match self {
            UniverseKind::Binary => 2,
            UniverseKind::TernaryNoVacuum => 3,
            UniverseKind::Total => 4,
        }
    }

    /// Per-bit values present in the expansion.
    fn bit_values(self) -> &'static [BitValue] {
        match self {
            UniverseKind::Binary => &[BitValue::Low, BitValue::High],
            UniverseKind::TernaryNoVacuum => {
                &[BitValue::Low, BitValue::High, BitValue::Uncertain]
            }
            UniverseKind::Total => &[
                BitValue::Low,
                BitValue::High,
                BitValue::Uncertain,
                BitValue::Vacuum,
            ],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            UniverseKind::Binary => "binary",
            UniverseKind::TernaryNoVacuum => "ternary-nv",
            UniverseKind::Total => "total",
        }
    }
}

impl std::str::FromStr for UniverseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binary" => Ok(UniverseKind::Binary),
            "ternary-nv" | "ternary" => Ok(UniverseKind::TernaryNoVacuum),
            "total" => Ok(UniverseKind::Total),
            _ => Err(Error::Parse(format!(
                "unknown universe kind '{s}', expected binary, ternary-nv or total"
            ))),
        }
    }
}

/// Factored universe: a product of `m` per-bit factors, each the sum of
/// the kind's addends. O(m) nodes, O(m) construction.
pub fn build_universe(kind: UniverseKind, m: u32) -> Result<SignalExpr> {
    if m == 0 {
        return Err(Error::InvalidBitCount);
    }
    let factors = (1..=m)
        .map(|i| {
            let mut addends = vec![
                SignalExpr::rail(i, Rail::Low),
                SignalExpr::rail(i, Rail::High),
            ];
            if kind != UniverseKind::Binary {
                addends.push(SignalExpr::Product(vec![
                    SignalExpr::rail(i, Rail::Low),
                    SignalExpr::rail(i, Rail::High),
                ]));
            }
            if kind == UniverseKind::Total {
                addends.push(SignalExpr::Unit);
            }
            SignalExpr::sum_of(addends)
        })
        .collect();
    Ok(SignalExpr::Product(factors))
}

/// Per-bit factor value as a function of the two rail signs alone.
/// Enumerating the four sign pairs proves the factor range of each kind:
/// binary {-2, 0, 2}, ternary {-1, 3}, total {0, 4}.
pub fn factor_value_from_signs(kind: UniverseKind, s0: Sign, s1: Sign) -> i64 {
    let (s0, s1) = (s0.value(), s1.value());
    match kind {
        UniverseKind::Binary => s0 + s1,
        UniverseKind::TernaryNoVacuum => s0 + s1 + s0 * s1,
        UniverseKind::Total => s0 + s1 + s0 * s1 + 1,
    }
}

/// Value of factor `bit_index` of the `kind` universe at tick `t`.
pub fn universe_factor_value(
    kind: UniverseKind,
    bit_index: u32,
    t: ClockIndex,
    rns: &Rns,
) -> Result<Amplitude> {
    let s0 = rns.sign(RtwId::new(bit_index, Rail::Low), t)?;
    let s1 = rns.sign(RtwId::new(bit_index, Rail::High), t)?;
    Ok(Amplitude::from(factor_value_from_signs(kind, s0, s1)))
}

/// Tick-window tally of a factored universe's instantaneous amplitudes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmplitudeStats {
    pub kind: UniverseKind,
    pub m: u32,
    /// Number of clock periods sampled.
    pub ticks: u64,
    /// Ticks at which the amplitude was exactly zero.
    pub zero_count: u64,
    /// Exact |amplitude| -> occurrence count for the nonzero ticks.
    pub histogram: BTreeMap<BigUint, u64>,
    /// Per bit, occurrence counts of the four rail sign pairs, indexed by
    /// `(s0 == +1) << 1 | (s1 == +1)`.
    pub factor_pair_counts: Vec<[u64; 4]>,
}

impl AmplitudeStats {
    /// Nonzero ticks: `ticks - zero_count`, also the histogram mass.
    pub fn nonzero_count(&self) -> u64 {
        self.histogram.values().sum()
    }

    /// Combines tallies from two windows of the same universe. Exact
    /// integer merge: summing per-window tallies is independent of how the
    /// window was partitioned.
    pub fn merge(mut self, other: &AmplitudeStats) -> Result<AmplitudeStats> {
        if self.kind != other.kind || self.m != other.m {
            return Err(Error::Parse(format!(
                "cannot merge stats for ({:?}, m={}) with ({:?}, m={})",
                self.kind, self.m, other.kind, other.m
            )));
        }
        self.ticks += other.ticks;
        self.zero_count += other.zero_count;
        for (k, c) in &other.histogram {
            *self.histogram.entry(k.clone()).or_insert(0) += c;
        }
        for (mine, theirs) in self.factor_pair_counts.iter_mut().zip(&other.factor_pair_counts) {
            for (a, b) in mine.iter_mut().zip(theirs) {
                *a += b;
            }
        }
        Ok(self)
    }
}

/// Evaluates the factored `kind` universe over `ticks` clock periods
/// starting at `t = 0`, tallying zeros and exact amplitude magnitudes.
pub fn universe_stats(kind: UniverseKind, m: u32, ticks: u64, rns: &Rns) -> Result<AmplitudeStats> {
    universe_stats_window(kind, m, ClockIndex(0), ticks, rns)
}

/// Same as [`universe_stats`] for the window `t0 .. t0 + ticks`.
pub fn universe_stats_window(
    kind: UniverseKind,
    m: u32,
    t0: ClockIndex,
    ticks: u64,
    rns: &Rns,
) -> Result<AmplitudeStats> {
    if m == 0 {
        return Err(Error::InvalidBitCount);
    }
    if m > rns.bit_count() {
        return Err(Error::BitIndexOutOfRange {
            bit_index: m,
            m: rns.bit_count(),
        });
    }
    // Every nonzero amplitude magnitude is a power of the kind's scale:
    // binary 2^m, ternary 3^k with k the number of (+,+) bits, total 4^m.
    // Tallying exponents and materializing the big integers once keeps the
    // per-tick work constant.
    let base: u32 = match kind {
        UniverseKind::Binary => 2,
        UniverseKind::TernaryNoVacuum => 3,
        UniverseKind::Total => 4,
    };
    let mut zero_count = 0u64;
    let mut exponent_counts: BTreeMap<u32, u64> = BTreeMap::new();
    let mut factor_pair_counts = vec![[0u64; 4]; m as usize];
    for k in 0..ticks {
        let t = ClockIndex(t0.0 + k);
        let mut zero = false;
        let mut exponent = 0u32;
        for bit in 1..=m {
            let s0 = rns.sign_unchecked(RtwId::new(bit, Rail::Low), t);
            let s1 = rns.sign_unchecked(RtwId::new(bit, Rail::High), t);
            factor_pair_counts[bit as usize - 1]
                [((s0.is_plus() as usize) << 1) | s1.is_plus() as usize] += 1;
            match kind {
                UniverseKind::Binary => {
                    if s0 != s1 {
                        zero = true;
                    } else {
                        exponent += 1;
                    }
                }
                UniverseKind::TernaryNoVacuum => {
                    if s0.is_plus() && s1.is_plus() {
                        exponent += 1;
                    }
                }
                UniverseKind::Total => {
                    if s0.is_plus() && s1.is_plus() {
                        exponent += 1;
                    } else {
                        zero = true;
                    }
                }
            }
        }
        if zero {
            zero_count += 1;
        } else {
            *exponent_counts.entry(exponent).or_insert(0) += 1;
        }
    }
    let histogram = exponent_counts
        .into_iter()
        .map(|(e, c)| (BigUint::from(base).pow(e), c))
        .collect();
    Ok(AmplitudeStats {
        kind,
        m,
        ticks,
        zero_count,
        histogram,
        factor_pair_counts,
    })
}

/// Exact symbolic expansion of the `kind` universe: `branch_count^m`
/// unit-coefficient terms. Refused up front when the term count exceeds
/// `cap` (default [`DEFAULT_EXPANSION_CAP`]).
pub fn expand_universe(kind: UniverseKind, m: u32) -> Result<Superposition> {
    expand_universe_capped(kind, m, DEFAULT_EXPANSION_CAP)
}

pub fn expand_universe_capped(kind: UniverseKind, m: u32, cap: usize) -> Result<Superposition> {
    if m == 0 {
        return Err(Error::InvalidBitCount);
    }
    let required = (kind.branch_count() as u128)
        .checked_pow(m)
        .unwrap_or(u128::MAX);
    if required > cap as u128 {
        return Err(Error::ExpansionCapExceeded { required, cap });
    }
    let m = m as usize;
    let mut acc = Superposition::term(ProductString::vacuum(m), 1);
    for bit_index in 1..=m {
        let mut factor = Superposition::zero(m);
        for &v in kind.bit_values() {
            factor.add_term(
                ProductString::vacuum(m).with_value_at(bit_index, v),
                num_bigint::BigInt::one(),
            );
        }
        acc = acc.mul_capped(&factor, cap)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::{eval, eval_superposition, expand_expr};
    use num_traits::Zero;

    const SIGNS: [Sign; 2] = [Sign::Minus, Sign::Plus];

    #[test]
    fn factor_enumeration_proves_per_kind_ranges() {
        // All four sign pairs per kind; this is the exhaustive proof that
        // the ternary factor, hence the ternary universe, is never zero.
        for s0 in SIGNS {
            for s1 in SIGNS {
                let b = factor_value_from_signs(UniverseKind::Binary, s0, s1);
                assert!(matches!(b, -2 | 0 | 2));
                assert_eq!(b == 0, s0 != s1);

                let nv = factor_value_from_signs(UniverseKind::TernaryNoVacuum, s0, s1);
                assert!(matches!(nv, -1 | 3));
                assert_eq!(nv == 3, s0 == Sign::Plus && s1 == Sign::Plus);

                let tot = factor_value_from_signs(UniverseKind::Total, s0, s1);
                assert!(matches!(tot, 0 | 4));
                assert_eq!(tot == 4, s0 == Sign::Plus && s1 == Sign::Plus);
            }
        }
    }

    #[test]
    fn factor_value_matches_rail_signs() {
        let rns = Rns::new(4, 13).unwrap();
        for t in 0..200 {
            let t = ClockIndex(t);
            for bit in 1..=4u32 {
                let s0 = rns.sign(RtwId::new(bit, Rail::Low), t).unwrap();
                let s1 = rns.sign(RtwId::new(bit, Rail::High), t).unwrap();
                for kind in UniverseKind::ALL {
                    assert_eq!(
                        universe_factor_value(kind, bit, t, &rns).unwrap(),
                        Amplitude::from(factor_value_from_signs(kind, s0, s1))
                    );
                }
            }
        }
    }

    #[test]
    fn build_rejects_zero_bits_and_stays_linear() {
        assert!(build_universe(UniverseKind::Binary, 0).is_err());
        for kind in UniverseKind::ALL {
            let per_factor = match kind {
                UniverseKind::Binary => 3,          // sum + 2 rails
                UniverseKind::TernaryNoVacuum => 6, // + product of 2 rails
                UniverseKind::Total => 7,           // + unit
            };
            for m in [1u32, 2, 7, 50, 1000] {
                let expr = build_universe(kind, m).unwrap();
                assert_eq!(expr.node_count(), 1 + per_factor * m as usize, "{kind:?} m={m}");
            }
        }
    }

    #[test]
    fn binary_expansion_at_three_bits_is_all_eight_numbers() {
        let expanded = expand_universe(UniverseKind::Binary, 3).unwrap();
        let expected = Superposition::of_numbers(&[0, 1, 2, 3, 4, 5, 6, 7], 3).unwrap();
        assert_eq!(expanded, expected);
    }

    #[test]
    fn ternary_expansion_has_three_to_the_m_terms_without_vacuum() {
        for m in 1..=8u32 {
            let expanded = expand_universe(UniverseKind::TernaryNoVacuum, m).unwrap();
            assert_eq!(expanded.term_count(), 3usize.pow(m));
            for (w, c) in expanded.terms() {
                assert!(c.is_one());
                assert!(w.values().iter().all(|&v| v != BitValue::Vacuum));
            }
        }
    }

    #[test]
    fn total_expansion_has_four_to_the_m_terms_including_single_rails() {
        for m in 1..=6u32 {
            let expanded = expand_universe(UniverseKind::Total, m).unwrap();
            assert_eq!(expanded.term_count(), 4usize.pow(m));
            // The single basic rail terms are present: strings with
            // exactly one non-vacuum position, for both rails.
            for bit_index in 1..=m as usize {
                for v in [BitValue::Low, BitValue::High] {
                    let w = ProductString::vacuum(m as usize).with_value_at(bit_index, v);
                    assert!(expanded.coefficient(&w).is_one());
                }
            }
        }
    }

    #[test]
    fn expansion_cap_refuses_oversized_universes() {
        assert!(matches!(
            expand_universe(UniverseKind::Total, 20),
            Err(Error::ExpansionCapExceeded { .. })
        ));
        assert!(matches!(
            expand_universe_capped(UniverseKind::Binary, 4, 10),
            Err(Error::ExpansionCapExceeded { required: 16, cap: 10 })
        ));
        // Exponent overflow counts as over the cap rather than wrapping.
        assert!(expand_universe(UniverseKind::Total, 200).is_err());
    }

    #[test]
    fn factored_and_expanded_universes_agree_at_every_tick() {
        let rns = Rns::new(8, 42).unwrap();
        for kind in UniverseKind::ALL {
            let max_m = if kind == UniverseKind::Total { 6 } else { 8 };
            for m in [1, 2, max_m] {
                let factored = build_universe(kind, m).unwrap();
                let expanded = expand_universe(kind, m).unwrap();
                for t in 0..1000 {
                    let t = ClockIndex(t);
                    assert_eq!(
                        eval(&factored, t, &rns).unwrap(),
                        eval_superposition(&expanded, t, &rns),
                        "{kind:?} m={m} t={t:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn generic_expression_expansion_matches_direct_expansion() {
        for kind in UniverseKind::ALL {
            let expr = build_universe(kind, 4).unwrap();
            assert_eq!(
                expand_expr(&expr, 4, DEFAULT_EXPANSION_CAP).unwrap(),
                expand_universe(kind, 4).unwrap()
            );
        }
    }

    #[test]
    fn stats_agree_with_direct_evaluation() {
        let rns = Rns::new(5, 99).unwrap();
        for kind in UniverseKind::ALL {
            let expr = build_universe(kind, 5).unwrap();
            let stats = universe_stats(kind, 5, 300, &rns).unwrap();
            let mut zero_count = 0u64;
            let mut histogram: BTreeMap<BigUint, u64> = BTreeMap::new();
            for t in 0..300 {
                let v = eval(&expr, ClockIndex(t), &rns).unwrap();
                if v.is_zero() {
                    zero_count += 1;
                } else {
                    *histogram.entry(v.magnitude().clone()).or_insert(0) += 1;
                }
            }
            assert_eq!(stats.zero_count, zero_count, "{kind:?}");
            assert_eq!(stats.histogram, histogram, "{kind:?}");
            assert_eq!(stats.ticks, 300);
            assert_eq!(stats.nonzero_count() + stats.zero_count, stats.ticks);
        }
    }

    #[test]
    fn ternary_amplitudes_are_powers_of_three_and_never_zero() {
        let rns = Rns::new(8, 42).unwrap();
        let stats = universe_stats(UniverseKind::TernaryNoVacuum, 8, 20_000, &rns).unwrap();
        assert_eq!(stats.zero_count, 0);
        let powers: Vec<BigUint> = (0..=8u32).map(|k| BigUint::from(3u32).pow(k)).collect();
        for key in stats.histogram.keys() {
            assert!(powers.contains(key), "unexpected magnitude {key}");
        }
    }

    #[test]
    fn merged_window_tallies_equal_single_pass() {
        let rns = Rns::new(6, 1).unwrap();
        for kind in UniverseKind::ALL {
            let full = universe_stats(kind, 6, 5000, &rns).unwrap();
            let first = universe_stats_window(kind, 6, ClockIndex(0), 1700, &rns).unwrap();
            let second = universe_stats_window(kind, 6, ClockIndex(1700), 3300, &rns).unwrap();
            assert_eq!(first.merge(&second).unwrap(), full, "{kind:?}");
        }
    }

    #[test]
    fn stats_validate_configuration() {
        let rns = Rns::new(3, 1).unwrap();
        assert!(universe_stats(UniverseKind::Binary, 0, 10, &rns).is_err());
        assert!(universe_stats(UniverseKind::Binary, 4, 10, &rns).is_err());
        let a = universe_stats(UniverseKind::Binary, 3, 10, &rns).unwrap();
        let b = universe_stats(UniverseKind::Total, 3, 10, &rns).unwrap();
        assert!(a.merge(&b).is_err());
    }

    // Brute-force oracle: enumerate all 2^(2m) rail sign configurations
    // and count amplitudes exactly. This is what licenses the quantitative
    // laws asserted by the Monte Carlo tests (zero fractions and the
    // binomial exponent distribution).
    fn enumerate_sign_configs(kind: UniverseKind, m: u32) -> (u64, BTreeMap<u32, u64>) {
        let mut zero_configs = 0u64;
        let mut exponent_configs: BTreeMap<u32, u64> = BTreeMap::new();
        for config in 0u64..1 << (2 * m) {
            let mut zero = false;
            let mut exponent = 0u32;
            for bit in 0..m {
                let s0 = Sign::from_bit((config >> (2 * bit)) & 1 == 1);
                let s1 = Sign::from_bit((config >> (2 * bit + 1)) & 1 == 1);
                // Factor magnitudes are 1 or the kind's scale; a zero
                // factor zeroes the whole amplitude.
                let v = factor_value_from_signs(kind, s0, s1);
                if v == 0 {
                    zero = true;
                } else if v.abs() > 1 {
                    exponent += 1;
                }
            }
            if zero {
                zero_configs += 1;
            } else {
                *exponent_configs.entry(exponent).or_insert(0) += 1;
            }
        }
        (zero_configs, exponent_configs)
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn brute_force_oracle_confirms_zero_fraction_and_exponent_laws() {
        for m in 1..=4u32 {
            let total = 1u64 << (2 * m);

            // Binary: zero fraction 1 - 2^-m, all nonzero exponents m.
            let (zeros, exps) = enumerate_sign_configs(UniverseKind::Binary, m);
            assert_eq!(zeros, total - (1 << m));
            assert_eq!(exps.len(), 1);
            assert_eq!(exps[&m], 1 << m);

            // Ternary: never zero, exponent k in C(m,k) * 3^(m-k) configs,
            // i.e. binomial with success probability 1/4.
            let (zeros, exps) = enumerate_sign_configs(UniverseKind::TernaryNoVacuum, m);
            assert_eq!(zeros, 0);
            for k in 0..=m {
                assert_eq!(
                    exps.get(&k).copied().unwrap_or(0),
                    binomial(m as u64, k as u64) * 3u64.pow(m - k),
                    "m={m} k={k}"
                );
            }

            // Total: exactly one nonzero configuration, so the nonzero
            // fraction is 4^-m.
            let (zeros, exps) = enumerate_sign_configs(UniverseKind::Total, m);
            assert_eq!(zeros, total - 1);
            assert_eq!(exps[&m], 1);
        }
    }

    #[test]
    fn monte_carlo_zero_fractions_match_oracle_laws() {
        // 5-sigma binomial bands around the enumerated probabilities.
        let rns = Rns::new(4, 42).unwrap();
        const N: u64 = 200_000;
        let band = |p: f64| 5.0 * (p * (1.0 - p) / N as f64).sqrt();

        let stats = universe_stats(UniverseKind::Binary, 4, N, &rns).unwrap();
        let p = 1.0 - 0.5f64.powi(4);
        let observed = stats.zero_count as f64 / N as f64;
        assert!((observed - p).abs() <= band(p), "binary zero fraction {observed}");

        let stats = universe_stats(UniverseKind::TernaryNoVacuum, 4, N, &rns).unwrap();
        assert_eq!(stats.zero_count, 0);

        let stats = universe_stats(UniverseKind::Total, 4, N, &rns).unwrap();
        let p = 0.25f64.powi(4);
        let observed = stats.nonzero_count() as f64 / N as f64;
        assert!((observed - p).abs() <= band(p), "total nonzero fraction {observed}");
    }
}
