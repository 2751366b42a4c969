//! Factored instantaneous evaluation.
//!
//! A [`SignalExpr`] is an expression tree over reference rails built from
//! products and weighted sums. Evaluating it at one clock index costs time
//! linear in the expression size, which is what makes exponentially large
//! superpositions (such as the universes) tractable: they are carried in
//! factored form and only ever expanded symbolically at small M.
//!
//! All amplitudes are exact signed integers. No floating point enters this
//! module; a pure product of rails is always +1 or -1 and a sum is bounded
//! by the sum of absolute weights.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{BitValue, ProductString, Superposition};
use crate::error::{Error, Result};
use crate::rns::{ClockIndex, Rail, Rns, RtwId, Sign};

/// Exact instantaneous amplitude.
pub type Amplitude = BigInt;

/// Expression over the reference rails, evaluated per clock period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignalExpr {
    /// One reference rail; evaluates to its +-1 amplitude.
    Rail(RtwId),
    /// The constant 1 (the vacuum signal).
    Unit,
    /// Product of all children.
    Product(Vec<SignalExpr>),
    /// Weighted sum of children; weights are exact signed integers.
    Sum(Vec<(BigInt, SignalExpr)>),
}

impl SignalExpr {
    pub fn rail(bit_index: u32, rail: Rail) -> Self {
        SignalExpr::Rail(RtwId::new(bit_index, rail))
    }

    /// Unit-weight sum of the given children.
    pub fn sum_of(children: Vec<SignalExpr>) -> Self {
        SignalExpr::Sum(children.into_iter().map(|e| (BigInt::one(), e)).collect())
    }

    /// Total node count, counting repeated subtrees once per occurrence.
    pub fn node_count(&self) -> usize {
        match self {
            SignalExpr::Rail(_) | SignalExpr::Unit => 1,
            SignalExpr::Product(children) => 1 + children.iter().map(Self::node_count).sum::<usize>(),
            SignalExpr::Sum(terms) => 1 + terms.iter().map(|(_, e)| e.node_count()).sum::<usize>(),
        }
    }

    /// Checks that every rail reference fits an `m`-bit system.
    pub fn validate(&self, m: u32) -> Result<()> {
        match self {
            SignalExpr::Rail(id) => {
                if id.bit_index == 0 || id.bit_index > m {
                    return Err(Error::BitIndexOutOfRange {
                        bit_index: id.bit_index,
                        m,
                    });
                }
                Ok(())
            }
            SignalExpr::Unit => Ok(()),
            SignalExpr::Product(children) => children.iter().try_for_each(|e| e.validate(m)),
            SignalExpr::Sum(terms) => terms.iter().try_for_each(|(_, e)| e.validate(m)),
        }
    }
}

/// Evaluates `expr` during clock period `t`. Cost is linear in the
/// expression size.
pub fn eval(expr: &SignalExpr, t: ClockIndex, rns: &Rns) -> Result<Amplitude> {
    expr.validate(rns.bit_count())?;
    Ok(eval_unchecked(expr, t, rns))
}

fn eval_unchecked(expr: &SignalExpr, t: ClockIndex, rns: &Rns) -> Amplitude {
    match expr {
        SignalExpr::Rail(id) => BigInt::from(rns.sign_unchecked(*id, t).value()),
        SignalExpr::Unit => BigInt::one(),
        SignalExpr::Product(children) => {
            let mut acc = BigInt::one();
            for child in children {
                if acc.is_zero() {
                    break;
                }
                acc *= eval_unchecked(child, t, rns);
            }
            acc
        }
        SignalExpr::Sum(terms) => {
            let mut acc = BigInt::zero();
            for (weight, child) in terms {
                acc += weight * eval_unchecked(child, t, rns);
            }
            acc
        }
    }
}

/// Amplitudes for the window `t0 .. t0 + n`. Equal to `n` independent
/// [`eval`] calls; random access to the noise streams means any
/// partitioning of the window reproduces the same values.
pub fn eval_window(expr: &SignalExpr, t0: ClockIndex, n: u64, rns: &Rns) -> Result<Vec<Amplitude>> {
    expr.validate(rns.bit_count())?;
    Ok((0..n)
        .map(|k| eval_unchecked(expr, ClockIndex(t0.0 + k), rns))
        .collect())
}

/// Instantaneous value of one product string: the product over positions
/// of the rails each bit value stands for. Always +1 or -1.
///
/// Panics if `w` is longer than the configured bit count; strings and
/// noise system must belong to the same M.
pub fn eval_string(w: &ProductString, t: ClockIndex, rns: &Rns) -> Sign {
    assert!(
        w.len() <= rns.bit_count() as usize,
        "product string has {} positions, noise system has {} bits",
        w.len(),
        rns.bit_count()
    );
    let mut acc = Sign::Plus;
    for (k, &v) in w.values().iter().enumerate() {
        let bit_index = k as u32 + 1;
        match v {
            BitValue::Vacuum => {}
            BitValue::Low => acc = acc * rns.sign_unchecked(RtwId::new(bit_index, Rail::Low), t),
            BitValue::High => acc = acc * rns.sign_unchecked(RtwId::new(bit_index, Rail::High), t),
            BitValue::Uncertain => {
                acc = acc
                    * rns.sign_unchecked(RtwId::new(bit_index, Rail::Low), t)
                    * rns.sign_unchecked(RtwId::new(bit_index, Rail::High), t)
            }
        }
    }
    acc
}

/// Instantaneous value of a superposition: the coefficient-weighted sum of
/// its term signals.
pub fn eval_superposition(y: &Superposition, t: ClockIndex, rns: &Rns) -> Amplitude {
    let mut acc = BigInt::zero();
    for (w, c) in y.terms() {
        match eval_string(w, t, rns) {
            Sign::Plus => acc += c,
            Sign::Minus => acc -= c,
        }
    }
    acc
}

/// Lowers a symbolic superposition to a sum-of-products expression with
/// identical evaluation semantics.
pub fn compile_superposition(y: &Superposition) -> SignalExpr {
    let terms = y
        .terms()
        .map(|(w, c)| (c.clone(), compile_string(w)))
        .collect();
    SignalExpr::Sum(terms)
}

/// Lowers one product string to a product of rail references (or `Unit`
/// for the all-vacuum string).
pub fn compile_string(w: &ProductString) -> SignalExpr {
    let mut factors = Vec::new();
    for (k, &v) in w.values().iter().enumerate() {
        let bit_index = k as u32 + 1;
        match v {
            BitValue::Vacuum => {}
            BitValue::Low => factors.push(SignalExpr::rail(bit_index, Rail::Low)),
            BitValue::High => factors.push(SignalExpr::rail(bit_index, Rail::High)),
            BitValue::Uncertain => {
                factors.push(SignalExpr::rail(bit_index, Rail::Low));
                factors.push(SignalExpr::rail(bit_index, Rail::High));
            }
        }
    }
    if factors.is_empty() {
        SignalExpr::Unit
    } else {
        SignalExpr::Product(factors)
    }
}

/// Symbolically expands an expression into the canonical superposition it
/// denotes in an `m`-bit system. Inverse of [`compile_superposition`] up
/// to canonicalization. Subject to `cap` on intermediate product sizes.
pub fn expand_expr(expr: &SignalExpr, m: usize, cap: usize) -> Result<Superposition> {
    expr.validate(m as u32)?;
    expand_validated(expr, m, cap)
}

fn expand_validated(expr: &SignalExpr, m: usize, cap: usize) -> Result<Superposition> {
    match expr {
        SignalExpr::Rail(id) => {
            let v = match id.rail {
                Rail::Low => BitValue::Low,
                Rail::High => BitValue::High,
            };
            Ok(Superposition::term(
                ProductString::vacuum(m).with_value_at(id.bit_index as usize, v),
                1,
            ))
        }
        SignalExpr::Unit => Ok(Superposition::term(ProductString::vacuum(m), 1)),
        SignalExpr::Product(children) => {
            let mut acc = Superposition::term(ProductString::vacuum(m), 1);
            for child in children {
                acc = acc.mul_capped(&expand_validated(child, m, cap)?, cap)?;
            }
            Ok(acc)
        }
        SignalExpr::Sum(terms) => {
            let mut acc = Superposition::zero(m);
            for (weight, child) in terms {
                acc = acc.add(&expand_validated(child, m, cap)?.scaled(weight))?;
            }
            Ok(acc)
        }
    }
}

/// Serialized expression tree with node tags `rail | unit | prod | sum`.
/// Weights travel as decimal strings to keep arbitrary precision exact.
#[derive(Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "lowercase")]
enum ExprRepr {
    Rail { bit: u32, rail: u8 },
    Unit,
    Prod { factors: Vec<ExprRepr> },
    Sum { terms: Vec<(String, ExprRepr)> },
}

impl From<&SignalExpr> for ExprRepr {
    fn from(expr: &SignalExpr) -> Self {
        match expr {
            SignalExpr::Rail(id) => ExprRepr::Rail {
                bit: id.bit_index,
                rail: id.rail.index(),
            },
            SignalExpr::Unit => ExprRepr::Unit,
            SignalExpr::Product(children) => ExprRepr::Prod {
                factors: children.iter().map(ExprRepr::from).collect(),
            },
            SignalExpr::Sum(terms) => ExprRepr::Sum {
                terms: terms
                    .iter()
                    .map(|(w, e)| (w.to_string(), ExprRepr::from(e)))
                    .collect(),
            },
        }
    }
}

impl TryFrom<ExprRepr> for SignalExpr {
    type Error = Error;

    fn try_from(repr: ExprRepr) -> Result<Self> {
        Ok(match repr {
            ExprRepr::Rail { bit, rail } => {
                if bit == 0 {
                    return Err(Error::Parse("rail bit index must be at least 1".into()));
                }
                SignalExpr::Rail(RtwId::new(bit, Rail::from_index(rail)?))
            }
            ExprRepr::Unit => SignalExpr::Unit,
            ExprRepr::Prod { factors } => SignalExpr::Product(
                factors.into_iter().map(SignalExpr::try_from).collect::<Result<_>>()?,
            ),
            ExprRepr::Sum { terms } => SignalExpr::Sum(
                terms
                    .into_iter()
                    .map(|(w, e)| {
                        let weight = w
                            .parse::<BigInt>()
                            .map_err(|e| Error::Parse(format!("bad weight '{w}': {e}")))?;
                        Ok((weight, SignalExpr::try_from(e)?))
                    })
                    .collect::<Result<_>>()?,
            ),
        })
    }
}

impl Serialize for SignalExpr {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ExprRepr::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SignalExpr {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ExprRepr::deserialize(deserializer)?;
        SignalExpr::try_from(repr).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn ps(s: &str) -> ProductString {
        s.parse().unwrap()
    }

    #[test]
    fn unit_is_constant_one() {
        let rns = Rns::new(1, 0).unwrap();
        for t in [0u64, 5, 1 << 33] {
            assert_eq!(eval(&SignalExpr::Unit, ClockIndex(t), &rns).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn squared_rail_is_one() {
        let rns = Rns::new(2, 11).unwrap();
        let r = SignalExpr::rail(2, Rail::Low);
        let sq = SignalExpr::Product(vec![r.clone(), r]);
        for t in 0..64 {
            assert_eq!(eval(&sq, ClockIndex(t), &rns).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn out_of_range_rail_is_rejected() {
        let rns = Rns::new(2, 11).unwrap();
        let bad = SignalExpr::Product(vec![SignalExpr::Unit, SignalExpr::rail(3, Rail::High)]);
        assert!(eval(&bad, ClockIndex(0), &rns).is_err());
        assert!(eval_window(&bad, ClockIndex(0), 4, &rns).is_err());
    }

    #[test]
    fn factored_rail_sum_product_matches_manual_factors() {
        // Product over bits of (rail0 + rail1); each factor is -2, 0 or 2.
        let rns = Rns::new(3, 42).unwrap();
        let expr = SignalExpr::Product(
            (1..=3)
                .map(|i| {
                    SignalExpr::sum_of(vec![
                        SignalExpr::rail(i, Rail::Low),
                        SignalExpr::rail(i, Rail::High),
                    ])
                })
                .collect(),
        );
        for t in 0..512 {
            let t = ClockIndex(t);
            let mut expected = 1i64;
            for i in 1..=3u32 {
                let s0 = rns.sign(RtwId::new(i, Rail::Low), t).unwrap().value();
                let s1 = rns.sign(RtwId::new(i, Rail::High), t).unwrap().value();
                let factor = s0 + s1;
                assert!(matches!(factor, -2 | 0 | 2));
                expected *= factor;
            }
            assert_eq!(eval(&expr, t, &rns).unwrap().to_i64().unwrap(), expected);
        }
    }

    #[test]
    fn vacuum_string_evaluates_to_plus_one_everywhere() {
        let rns = Rns::new(4, 3).unwrap();
        let vac = ProductString::vacuum(4);
        for t in 0..256 {
            assert_eq!(eval_string(&vac, ClockIndex(t), &rns), Sign::Plus);
        }
    }

    #[test]
    fn string_for_six_multiplies_its_three_rails() {
        let rns = Rns::new(3, 42).unwrap();
        let w6 = ProductString::from_number(6, 3).unwrap();
        for t in 0..256 {
            let t = ClockIndex(t);
            let expected = rns.sign_unchecked(RtwId::new(1, Rail::Low), t)
                * rns.sign_unchecked(RtwId::new(2, Rail::High), t)
                * rns.sign_unchecked(RtwId::new(3, Rail::High), t);
            assert_eq!(eval_string(&w6, t, &rns), expected);
        }
    }

    #[test]
    fn empty_and_single_term_superpositions() {
        let rns = Rns::new(3, 8).unwrap();
        let w = ps("LXH");
        let single = Superposition::term(w.clone(), 1);
        for t in 0..64 {
            let t = ClockIndex(t);
            assert_eq!(eval_superposition(&Superposition::zero(3), t, &rns), BigInt::zero());
            assert_eq!(
                eval_superposition(&single, t, &rns),
                BigInt::from(eval_string(&w, t, &rns).value())
            );
        }
    }

    #[test]
    fn compiled_superposition_matches_symbolic_evaluation() {
        let rns = Rns::new(4, 21).unwrap();
        let mut y = Superposition::of_numbers(&[7, 4, 1], 4).unwrap();
        y.add_term(ps("XVXL"), BigInt::from(-3));
        let compiled = compile_superposition(&y);
        for t in 0..1000 {
            let t = ClockIndex(t);
            assert_eq!(eval(&compiled, t, &rns).unwrap(), eval_superposition(&y, t, &rns));
        }
    }

    #[test]
    fn window_matches_independent_evals() {
        let rns = Rns::new(2, 5).unwrap();
        let expr = SignalExpr::sum_of(vec![
            SignalExpr::rail(1, Rail::Low),
            SignalExpr::rail(2, Rail::High),
            SignalExpr::Unit,
        ]);
        let window = eval_window(&expr, ClockIndex(17), 50, &rns).unwrap();
        assert_eq!(window.len(), 50);
        for (k, v) in window.iter().enumerate() {
            assert_eq!(*v, eval(&expr, ClockIndex(17 + k as u64), &rns).unwrap());
        }
        assert_eq!(
            eval_window(&expr, ClockIndex(9), 1, &rns).unwrap(),
            vec![eval(&expr, ClockIndex(9), &rns).unwrap()]
        );
        let ones = eval_window(&SignalExpr::Unit, ClockIndex(0), 16, &rns).unwrap();
        assert!(ones.iter().all(|v| v.is_one()));
    }

    #[test]
    fn window_partitions_evaluate_bit_identically_across_threads() {
        let rns = Rns::new(4, 31).unwrap();
        let y = Superposition::of_numbers(&[9, 4, 14], 4).unwrap();
        let expr = compile_superposition(&y);
        let full = eval_window(&expr, ClockIndex(0), 600, &rns).unwrap();
        let parts: Vec<_> = [(0u64, 200u64), (200, 250), (450, 150)]
            .map(|(t0, n)| {
                let expr = expr.clone();
                std::thread::spawn(move || eval_window(&expr, ClockIndex(t0), n, &rns).unwrap())
            })
            .into_iter()
            .collect();
        let stitched: Vec<Amplitude> = parts
            .into_iter()
            .flat_map(|h| h.join().unwrap())
            .collect();
        assert_eq!(stitched, full);
    }

    #[test]
    fn expand_inverts_compile() {
        let mut y = Superposition::zero(3);
        y.add_term(ps("LHX"), BigInt::from(2));
        y.add_term(ps("VVV"), BigInt::from(-1));
        y.add_term(ps("HVL"), BigInt::from(4));
        let back = expand_expr(&compile_superposition(&y), 3, 1 << 10).unwrap();
        assert_eq!(back, y);
    }

    #[test]
    fn expr_json_round_trip_uses_node_tags() {
        let expr = SignalExpr::Sum(vec![
            (BigInt::from(2), SignalExpr::Product(vec![
                SignalExpr::rail(1, Rail::Low),
                SignalExpr::rail(2, Rail::High),
            ])),
            (BigInt::from(-1), SignalExpr::Unit),
        ]);
        let json = serde_json::to_string(&expr).unwrap();
        assert_eq!(
            json,
            r#"{"node":"sum","terms":[["2",{"node":"prod","factors":[{"node":"rail","bit":1,"rail":0},{"node":"rail","bit":2,"rail":1}]}],["-1",{"node":"unit"}]]}"#
        );
        let back: SignalExpr = serde_json::from_str(&json).unwrap();
        assert_eq!(back, expr);
        assert!(serde_json::from_str::<SignalExpr>(r#"{"node":"rail","bit":1,"rail":2}"#).is_err());
        assert!(serde_json::from_str::<SignalExpr>(r#"{"node":"rail","bit":0,"rail":0}"#).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_bit_value() -> impl Strategy<Value = BitValue> {
            prop_oneof![
                Just(BitValue::Vacuum),
                Just(BitValue::Low),
                Just(BitValue::High),
                Just(BitValue::Uncertain),
            ]
        }

        fn arb_string(m: usize) -> impl Strategy<Value = ProductString> {
            prop::collection::vec(arb_bit_value(), m).prop_map(ProductString::new)
        }

        fn arb_superposition(m: usize, max_terms: usize) -> impl Strategy<Value = Superposition> {
            prop::collection::vec((arb_string(m), -5i64..=5), 0..max_terms).prop_map(move |terms| {
                let mut s = Superposition::zero(m);
                for (w, c) in terms {
                    s.add_term(w, BigInt::from(c));
                }
                s
            })
        }

        proptest! {
            #[test]
            fn string_evaluation_is_a_group_homomorphism(
                a in arb_string(5),
                b in arb_string(5),
                seed in 0u64..1000,
            ) {
                let rns = Rns::new(5, seed).unwrap();
                let prod = a.mul(&b).unwrap();
                for t in 0..64 {
                    let t = ClockIndex(t);
                    prop_assert_eq!(
                        eval_string(&prod, t, &rns),
                        eval_string(&a, t, &rns) * eval_string(&b, t, &rns)
                    );
                }
            }

            #[test]
            fn pure_rail_products_evaluate_to_unit_magnitude(
                bits in prop::collection::vec((1u32..=4, any::<bool>()), 1..8),
                seed in 0u64..1000,
            ) {
                let rns = Rns::new(4, seed).unwrap();
                let expr = SignalExpr::Product(
                    bits.iter()
                        .map(|&(i, hi)| SignalExpr::rail(i, if hi { Rail::High } else { Rail::Low }))
                        .collect(),
                );
                for t in 0..32 {
                    let v = eval(&expr, ClockIndex(t), &rns).unwrap();
                    prop_assert!(v.magnitude() == &1u32.into());
                }
            }

            #[test]
            fn symbolic_and_compiled_evaluation_agree(
                y in arb_superposition(6, 16),
                seed in 0u64..1000,
            ) {
                let rns = Rns::new(6, seed).unwrap();
                let compiled = compile_superposition(&y);
                for t in 0..32 {
                    let t = ClockIndex(t);
                    prop_assert_eq!(
                        eval(&compiled, t, &rns).unwrap(),
                        eval_superposition(&y, t, &rns)
                    );
                }
            }

            #[test]
            fn expansion_inverts_compilation(y in arb_superposition(4, 10)) {
                let back = expand_expr(&compile_superposition(&y), 4, 1 << 12).unwrap();
                prop_assert_eq!(back, y);
            }
        }
    }
}
