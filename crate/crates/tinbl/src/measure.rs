//! Finite-window time-average correlation estimators.
//!
//! The reference rails are orthogonal in the infinite-time limit; at a
//! finite window of N clock periods an empirical mean of a +-1 product
//! sits within `5 / sqrt(N)` of zero except with probability below 1e-6.
//! The same mechanism measures superposition coefficients: the matched
//! term contributes its exact coefficient every tick while every
//! unmatched term contributes a zero-mean +-1 product, so the mean
//! converges to the coefficient at the usual `1 / sqrt(N)` rate with
//! spread bounded by the coefficient L1 norm.
//!
//! Accumulation is exact integer arithmetic; pass/fail decisions are made
//! on integers as well, so no floating-point rounding can flip a verdict.
//! Decimals appear only in reports.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{ProductString, Superposition};
use crate::error::{Error, Result};
use crate::rns::{ClockIndex, Rns};
use crate::signals::{eval_string, SignalExpr};

/// Sigma multiplier for pass bands, as an exact decimal rational.
/// Default 5: negligible false-failure rate, still sensitive to bugs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Threshold {
    numerator: u64,
    denominator: u64,
}

impl Threshold {
    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 || numerator == 0 {
            return Err(Error::Parse("threshold must be a positive decimal".into()));
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn as_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

impl Default for Threshold {
    fn default() -> Self {
        Self {
            numerator: 5,
            denominator: 1,
        }
    }
}

/// Parses a positive decimal such as `5`, `4.5` or `0.25` without going
/// through floating point.
impl FromStr for Threshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid threshold '{s}'"));
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
            || frac_part.len() > 9
        {
            return Err(bad());
        }
        let denominator = 10u64.pow(frac_part.len() as u32);
        let int_value: u64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| bad())?
        };
        let frac_value: u64 = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse().map_err(|_| bad())?
        };
        let numerator = int_value
            .checked_mul(denominator)
            .and_then(|v| v.checked_add(frac_value))
            .ok_or_else(bad)?;
        Threshold::new(numerator, denominator)
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == 1 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}", self.as_f64())
        }
    }
}

/// One finite-window correlation estimate with its exact running sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelationEstimate {
    /// Window length in clock periods.
    pub n: u64,
    /// Exact sum of per-tick products.
    pub sum: BigInt,
    /// Upper bound on the per-tick |product| away from the target; sets
    /// the estimator spread.
    pub spread: BigUint,
    /// Expected mean (0 for orthogonality checks, the exact coefficient
    /// for measurements).
    pub target: BigInt,
    pub threshold: Threshold,
}

impl CorrelationEstimate {
    /// Empirical mean as a float, for reporting.
    pub fn mean_f64(&self) -> f64 {
        self.sum.to_f64().unwrap_or(f64::NAN) / self.n as f64
    }

    /// Empirical mean as a rounded decimal string with `digits` places,
    /// computed in exact integer arithmetic.
    pub fn mean_decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let n = BigInt::from(self.n);
        // Round half away from zero.
        let scaled = (&self.sum * &scale * 2i32 + n.clone() * self.sum.signum()) / (n * 2i32);
        let negative = scaled.is_negative();
        let digits_str = scaled.magnitude().to_string();
        let digits = digits as usize;
        let padded = format!("{digits_str:0>width$}", width = digits + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - digits);
        let sign = if negative { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    /// Spread / sqrt(n), the scale of the statistical error.
    pub fn standard_error(&self) -> f64 {
        self.spread.to_f64().unwrap_or(f64::NAN) / (self.n as f64).sqrt()
    }

    /// Half-width of the pass band around the target.
    pub fn bound(&self) -> f64 {
        self.threshold.as_f64() * self.standard_error()
    }

    /// Exact pass decision:
    /// `|mean - target| <= threshold * spread / sqrt(n)`, evaluated as
    /// `dev^2 * den^2 <= num^2 * spread^2 * n` on integers (dev is the sum
    /// deviation `sum - target * n`).
    pub fn pass(&self) -> bool {
        let dev = (&self.sum - &self.target * BigInt::from(self.n)).magnitude().clone();
        let den = BigUint::from(self.threshold.denominator);
        let num = BigUint::from(self.threshold.numerator);
        &dev * &dev * &den * &den <= &num * &num * &self.spread * &self.spread * BigUint::from(self.n)
    }

    /// Report form with decimal strings.
    pub fn to_report(&self) -> EstimateReport {
        EstimateReport {
            n: self.n,
            mean: self.mean_decimal(9),
            target: self.target.to_string(),
            spread: self.spread.to_string(),
            threshold: self.threshold.to_string(),
            bound: self.bound(),
            pass: self.pass(),
        }
    }
}

/// JSON-friendly estimate record.
#[derive(Debug, Clone, Serialize)]
pub struct EstimateReport {
    pub n: u64,
    pub mean: String,
    pub target: String,
    pub spread: String,
    pub threshold: String,
    pub bound: f64,
    pub pass: bool,
}

/// Mean of `a(t) * b(t)` over `t in [0, n)` with exact accumulation.
/// The pass verdict checks consistency with zero correlation at unit
/// spread, the regime of rail-versus-rail tests.
pub fn correlate(
    a: &SignalExpr,
    b: &SignalExpr,
    n: u64,
    rns: &Rns,
    threshold: Threshold,
) -> Result<CorrelationEstimate> {
    correlate_against(a, b, n, rns, BigUint::from(1u32), BigInt::zero(), threshold)
}

/// General form of [`correlate`] with caller-chosen spread bound and
/// target mean.
pub fn correlate_against(
    a: &SignalExpr,
    b: &SignalExpr,
    n: u64,
    rns: &Rns,
    spread: BigUint,
    target: BigInt,
    threshold: Threshold,
) -> Result<CorrelationEstimate> {
    a.validate(rns.bit_count())?;
    b.validate(rns.bit_count())?;
    let mut sum = BigInt::zero();
    for t in 0..n {
        let t = ClockIndex(t);
        sum += crate::signals::eval(a, t, rns)? * crate::signals::eval(b, t, rns)?;
    }
    Ok(CorrelationEstimate {
        n,
        sum,
        spread,
        target,
        threshold,
    })
}

/// All pairwise rail correlations over an `n`-tick window.
#[derive(Debug, Clone)]
pub struct OrthogonalityMatrix {
    pub m: u32,
    pub n: u64,
    /// Row-major 2M x 2M estimates in rail order (1,0), (1,1), (2,0), ...
    /// Diagonal targets are 1, off-diagonal targets 0.
    pub estimates: Vec<Vec<CorrelationEstimate>>,
}

impl OrthogonalityMatrix {
    /// True iff every diagonal mean is exactly 1 (sum equals n).
    pub fn diagonal_exact(&self) -> bool {
        self.estimates
            .iter()
            .enumerate()
            .all(|(i, row)| row[i].sum == BigInt::from(self.n))
    }

    /// True iff every off-diagonal estimate passes its zero-correlation
    /// band.
    pub fn off_diagonal_pass(&self) -> bool {
        self.failures().is_empty()
    }

    /// Off-diagonal rail pairs that failed, as (row, column) indices.
    pub fn failures(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.estimates.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if i != j && !e.pass() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn pass(&self) -> bool {
        self.diagonal_exact() && self.off_diagonal_pass()
    }
}

/// Computes the full 2M x 2M rail correlation matrix in one pass over the
/// tick window. Exact integer accumulation; symmetric by construction.
pub fn orthogonality_matrix(rns: &Rns, n: u64, threshold: Threshold) -> OrthogonalityMatrix {
    let rails = rns.rail_count() as usize;
    let mut sums = vec![vec![0i64; rails]; rails];
    for t in 0..n {
        let signs = rns.rail_signs(ClockIndex(t));
        for i in 0..rails {
            for j in i..rails {
                sums[i][j] += (signs[i] * signs[j]).value();
            }
        }
    }
    let estimates = (0..rails)
        .map(|i| {
            (0..rails)
                .map(|j| {
                    let sum = if j >= i { sums[i][j] } else { sums[j][i] };
                    CorrelationEstimate {
                        n,
                        sum: BigInt::from(sum),
                        spread: BigUint::from(1u32),
                        target: if i == j { BigInt::from(1) } else { BigInt::zero() },
                        threshold,
                    }
                })
                .collect()
        })
        .collect();
    OrthogonalityMatrix {
        m: rns.bit_count(),
        n,
        estimates,
    }
}

/// Measures the coefficient of `w` in the symbolic state `y` by
/// correlating against the product-string signal. The target is the exact
/// stored coefficient and the spread is the coefficient L1 norm, so the
/// verdict cross-checks the estimator against the symbolic oracle.
pub fn measure_coefficient(
    y: &Superposition,
    w: &ProductString,
    n: u64,
    rns: &Rns,
    threshold: Threshold,
) -> Result<CorrelationEstimate> {
    if w.len() != y.m() {
        return Err(Error::LengthMismatch {
            left: w.len(),
            right: y.m(),
        });
    }
    if y.m() > rns.bit_count() as usize {
        return Err(Error::BitIndexOutOfRange {
            bit_index: y.m() as u32,
            m: rns.bit_count(),
        });
    }
    let spread = y.coefficient_l1().to_biguint().expect("L1 norm is non-negative");
    let target = y.coefficient(w);
    let mut sum = BigInt::zero();
    for t in 0..n {
        let t = ClockIndex(t);
        let amp = crate::signals::eval_superposition(y, t, rns);
        match eval_string(w, t, rns) {
            crate::rns::Sign::Plus => sum += amp,
            crate::rns::Sign::Minus => sum -= amp,
        }
    }
    Ok(CorrelationEstimate {
        n,
        sum,
        spread,
        target,
        threshold,
    })
}

/// Coefficient measurement against an arbitrary signal expression. The
/// caller supplies the spread bound (for a superposition, its coefficient
/// L1 norm) and the expected coefficient.
pub fn measure_coefficient_expr(
    y: &SignalExpr,
    w: &ProductString,
    n: u64,
    rns: &Rns,
    spread: BigUint,
    target: BigInt,
    threshold: Threshold,
) -> Result<CorrelationEstimate> {
    y.validate(rns.bit_count())?;
    if w.len() > rns.bit_count() as usize {
        return Err(Error::BitIndexOutOfRange {
            bit_index: w.len() as u32,
            m: rns.bit_count(),
        });
    }
    let mut sum = BigInt::zero();
    for t in 0..n {
        let t = ClockIndex(t);
        let amp = crate::signals::eval(y, t, rns)?;
        match eval_string(w, t, rns) {
            crate::rns::Sign::Plus => sum += amp,
            crate::rns::Sign::Minus => sum -= amp,
        }
    }
    Ok(CorrelationEstimate {
        n,
        sum,
        spread,
        target,
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rns::{Rail, RtwId};
    use num_bigint::BigInt;

    fn ps(s: &str) -> ProductString {
        s.parse().unwrap()
    }

    fn rail(i: u32, r: Rail) -> SignalExpr {
        SignalExpr::Rail(RtwId::new(i, r))
    }

    #[test]
    fn threshold_parsing() {
        assert_eq!("5".parse::<Threshold>().unwrap(), Threshold::new(5, 1).unwrap());
        assert_eq!("4.5".parse::<Threshold>().unwrap(), Threshold::new(45, 10).unwrap());
        assert_eq!("0.25".parse::<Threshold>().unwrap(), Threshold::new(25, 100).unwrap());
        for bad in ["", ".", "-3", "abc", "1.2.3", "0"] {
            assert!(bad.parse::<Threshold>().is_err(), "{bad}");
        }
        assert_eq!("4.5".parse::<Threshold>().unwrap().to_string(), "4.5");
        assert_eq!(Threshold::default().to_string(), "5");
    }

    #[test]
    fn self_correlation_is_exactly_one() {
        let rns = Rns::new(2, 3).unwrap();
        let x = rail(1, Rail::Low);
        let est = correlate(&x, &x, 5000, &rns, Threshold::default()).unwrap();
        assert_eq!(est.sum, BigInt::from(5000));
        assert_eq!(est.mean_decimal(3), "1.000");
        let unit = correlate(&SignalExpr::Unit, &SignalExpr::Unit, 100, &rns, Threshold::default()).unwrap();
        assert_eq!(unit.sum, BigInt::from(100));
    }

    #[test]
    fn distinct_rails_pass_zero_band_at_one_million_ticks() {
        let rns = Rns::new(2, 42).unwrap();
        let est = correlate(
            &rail(1, Rail::Low),
            &rail(2, Rail::High),
            1_000_000,
            &rns,
            Threshold::default(),
        )
        .unwrap();
        assert!(est.pass(), "mean {}", est.mean_f64());
        assert!(est.mean_f64().abs() <= 5e-3);
    }

    #[test]
    fn pass_rule_is_exact_at_the_boundary() {
        // n = 100, threshold 5, spread 1: band is |sum| <= 50.
        let mk = |sum: i64| CorrelationEstimate {
            n: 100,
            sum: BigInt::from(sum),
            spread: BigUint::from(1u32),
            target: BigInt::zero(),
            threshold: Threshold::default(),
        };
        assert!(mk(50).pass());
        assert!(mk(-50).pass());
        assert!(!mk(51).pass());
        // Fractional threshold 4.5: 45^2 = 2025 <= 25 * 4.5^2 * 100 / ...
        let mut e = mk(45);
        e.threshold = "4.5".parse().unwrap();
        assert!(e.pass());
        e.sum = BigInt::from(46);
        assert!(!e.pass());
    }

    #[test]
    fn mean_decimal_rounds_half_away_from_zero() {
        let mk = |sum: i64, n: u64| CorrelationEstimate {
            n,
            sum: BigInt::from(sum),
            spread: BigUint::from(1u32),
            target: BigInt::zero(),
            threshold: Threshold::default(),
        };
        assert_eq!(mk(1, 8).mean_decimal(2), "0.13");
        assert_eq!(mk(-1, 8).mean_decimal(2), "-0.13");
        assert_eq!(mk(3, 4).mean_decimal(2), "0.75");
        assert_eq!(mk(2, 3).mean_decimal(0), "1");
    }

    #[test]
    fn orthogonality_matrix_shape_and_symmetry() {
        let rns = Rns::new(3, 42).unwrap();
        let matrix = orthogonality_matrix(&rns, 100_000, Threshold::default());
        assert_eq!(matrix.estimates.len(), 6);
        assert!(matrix.diagonal_exact());
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(matrix.estimates[i][j].sum, matrix.estimates[j][i].sum);
            }
        }
        assert!(matrix.off_diagonal_pass(), "failures: {:?}", matrix.failures());
        assert!(matrix.pass());
    }

    #[test]
    fn measured_coefficients_match_the_exact_oracle() {
        let rns = Rns::new(4, 42).unwrap();
        let y = Superposition::of_numbers(&[7, 4, 1], 4).unwrap();
        const N: u64 = 100_000;
        for (w, expected) in [
            (ProductString::from_number(4, 4).unwrap(), 1i64),
            (ProductString::from_number(2, 4).unwrap(), 0),
            (ProductString::from_number(7, 4).unwrap(), 1),
        ] {
            let est = measure_coefficient(&y, &w, N, &rns, Threshold::default()).unwrap();
            assert_eq!(est.target, BigInt::from(expected));
            assert_eq!(est.spread, BigUint::from(3u32));
            assert!(est.pass(), "w={w} mean={}", est.mean_f64());
            assert!((est.mean_f64() - expected as f64).abs() <= 5.0 * 3.0 / (N as f64).sqrt());
        }
    }

    #[test]
    fn matched_single_term_measures_exactly() {
        let rns = Rns::new(3, 7).unwrap();
        let w = ps("LXH");
        let y = Superposition::term(w.clone(), 1);
        for n in [1u64, 10, 1000] {
            let est = measure_coefficient(&y, &w, n, &rns, Threshold::default()).unwrap();
            assert_eq!(est.sum, BigInt::from(n));
        }
    }

    #[test]
    fn coefficient_measurement_validates_lengths() {
        let rns = Rns::new(3, 7).unwrap();
        let y = Superposition::of_numbers(&[1], 3).unwrap();
        assert!(measure_coefficient(&y, &ps("LH"), 10, &rns, Threshold::default()).is_err());
        let rns2 = Rns::new(2, 7).unwrap();
        assert!(measure_coefficient(&y, &ps("LHL"), 10, &rns2, Threshold::default()).is_err());
    }

    #[test]
    fn expression_route_matches_superposition_route() {
        let rns = Rns::new(4, 19).unwrap();
        let mut y = Superposition::of_numbers(&[6, 1], 4).unwrap();
        y.add_term(ps("XVLH"), BigInt::from(-2));
        let w = ps("LHHL");
        let direct = measure_coefficient(&y, &w, 3_000, &rns, Threshold::default()).unwrap();
        let via_expr = measure_coefficient_expr(
            &crate::signals::compile_superposition(&y),
            &w,
            3_000,
            &rns,
            y.coefficient_l1().to_biguint().unwrap(),
            y.coefficient(&w),
            Threshold::default(),
        )
        .unwrap();
        assert_eq!(direct, via_expr);
    }

    #[test]
    fn oracle_agreement_on_random_states() {
        // Random symbolic states and random probes: the estimator must
        // land within 5 * L1 / sqrt(n) of the exact coefficient. The
        // generator is seeded, so the check is reproducible.
        use crate::algebra::BitValue;
        const N: u64 = 100_000;
        let mut state = 0x1234_5678u64;
        let mut next = move || {
            state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^ (z >> 31)
        };
        for case in 0..6u64 {
            let m = 1 + (next() % 6) as usize;
            let rns = Rns::new(m as u32, case).unwrap();
            let mut y = Superposition::zero(m);
            for _ in 0..1 + next() % 6 {
                let w = ProductString::new(
                    (0..m).map(|_| BitValue::ALL[(next() % 4) as usize]).collect(),
                );
                y.add_term(w, BigInt::from(next() as i64 % 4));
            }
            // Probe a stored term half the time, a fresh string otherwise.
            let w = if next() % 2 == 0 && !y.is_zero() {
                let pick = (next() as usize) % y.term_count();
                y.terms().nth(pick).unwrap().0.clone()
            } else {
                ProductString::new((0..m).map(|_| BitValue::ALL[(next() % 4) as usize]).collect())
            };
            let est = measure_coefficient(&y, &w, N, &rns, Threshold::default()).unwrap();
            assert_eq!(est.target, y.coefficient(&w), "case {case}");
            assert!(est.pass(), "case {case}: probe {w} mean {}", est.mean_f64());
        }
    }

    #[test]
    fn estimates_are_deterministic() {
        let rns = Rns::new(3, 11).unwrap();
        let y = Superposition::of_numbers(&[5, 2], 3).unwrap();
        let w = ProductString::from_number(5, 3).unwrap();
        let a = measure_coefficient(&y, &w, 5_000, &rns, Threshold::default()).unwrap();
        let b = measure_coefficient(&y, &w, 5_000, &rns, Threshold::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn estimator_error_halves_when_the_window_quadruples() {
        // Root-mean-square error over 100 seeds at n and 4n; the ratio
        // should sit near 2.
        const N: u64 = 4096;
        let rms = |n: u64| {
            let mut sq = 0.0f64;
            for seed in 0..100u64 {
                let rns = Rns::new(2, seed).unwrap();
                let est = correlate(
                    &rail(1, Rail::Low),
                    &rail(2, Rail::High),
                    n,
                    &rns,
                    Threshold::default(),
                )
                .unwrap();
                sq += est.mean_f64().powi(2);
            }
            (sq / 100.0).sqrt()
        };
        let ratio = rms(N) / rms(4 * N);
        assert!((1.5..=2.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn estimate_report_fields() {
        let rns = Rns::new(2, 3).unwrap();
        let est = correlate(
            &rail(1, Rail::Low),
            &rail(1, Rail::High),
            10_000,
            &rns,
            Threshold::default(),
        )
        .unwrap();
        let report = est.to_report();
        assert_eq!(report.n, 10_000);
        assert_eq!(report.target, "0");
        assert_eq!(report.threshold, "5");
        assert_eq!(report.pass, est.pass());
        let json = serde_json::to_value(&report).unwrap();
        assert!(json.get("mean").is_some());
    }
}
