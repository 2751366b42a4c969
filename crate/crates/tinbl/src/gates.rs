//! The gate set: NOT (doubling as annihilation and creation) on arbitrary
//! states, and the single-bit XOR and XNOR gates.
//!
//! The NOT gate at bit i multiplies the input signal by both rails of
//! bit i, i.e. by the uncertain value at that position. On the four bit
//! values this swaps low with high, annihilates an uncertain bit to
//! vacuum and creates an uncertain bit from vacuum. Applied twice it is
//! the identity.
//!
//! XOR and XNOR are defined for single-bit systems only, which the API
//! enforces by taking [`BitValue`] inputs rather than product strings:
//! `XOR[A, B] = A * B * L` and `XNOR[A, B] = A * B * H`.

use serde::Serialize;

use crate::algebra::{BitValue, Superposition};
use crate::error::{Error, Result};
use crate::rns::{ClockIndex, Rail, Rns};
use crate::signals::{compile_superposition, eval, eval_superposition, SignalExpr};

/// NOT at bit `i`: multiplies every term's position-i value by the
/// uncertain value. Coefficients are unchanged; the result is
/// re-canonicalized.
pub fn not_gate(bit_index: u32, y: &Superposition) -> Result<Superposition> {
    if bit_index == 0 || bit_index as usize > y.m() {
        return Err(Error::BitIndexOutOfRange {
            bit_index,
            m: y.m() as u32,
        });
    }
    let i = bit_index as usize;
    let mut out = Superposition::zero(y.m());
    for (w, c) in y.terms() {
        out.add_term(
            w.with_value_at(i, w.value_at(i) * BitValue::Uncertain),
            c.clone(),
        );
    }
    Ok(out)
}

/// Instantaneous NOT at bit `i`: the product of both rails of bit `i`
/// with the input signal. O(1) construction.
pub fn not_gate_signal(bit_index: u32, y: SignalExpr) -> SignalExpr {
    SignalExpr::Product(vec![
        SignalExpr::rail(bit_index, Rail::Low),
        SignalExpr::rail(bit_index, Rail::High),
        y,
    ])
}

/// Single-bit XOR: `A * B * L`.
pub fn xor_single(a: BitValue, b: BitValue) -> BitValue {
    a * b * BitValue::Low
}

/// Single-bit XNOR: `A * B * H`.
pub fn xnor_single(a: BitValue, b: BitValue) -> BitValue {
    a * b * BitValue::High
}

/// The two single-bit gates with fixed reference truth tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingleBitGate {
    Xor,
    Xnor,
}

impl SingleBitGate {
    pub fn name(self) -> &'static str {
        match self {
            SingleBitGate::Xor => "xor",
            SingleBitGate::Xnor => "xnor",
        }
    }

    pub fn apply(self, a: BitValue, b: BitValue) -> BitValue {
        match self {
            SingleBitGate::Xor => xor_single(a, b),
            SingleBitGate::Xnor => xnor_single(a, b),
        }
    }
}

/// Row and column order of the reference truth tables.
pub const TABLE_ORDER: [BitValue; 4] = [
    BitValue::Low,
    BitValue::High,
    BitValue::Uncertain,
    BitValue::Vacuum,
];

/// Reference single-bit XOR truth table, rows and columns in
/// [`TABLE_ORDER`]. Fixed data, independent of the algebra implementation.
pub const XOR_REFERENCE: [[BitValue; 4]; 4] = {
    use BitValue::{High as H, Low as L, Uncertain as X, Vacuum as V};
    [
        [L, H, X, V], // row L
        [H, L, V, X], // row H
        [X, V, L, H], // row X
        [V, X, H, L], // row V
    ]
};

/// Reference single-bit XNOR truth table, rows and columns in
/// [`TABLE_ORDER`].
pub const XNOR_REFERENCE: [[BitValue; 4]; 4] = {
    use BitValue::{High as H, Low as L, Uncertain as X, Vacuum as V};
    [
        [H, L, V, X], // row L
        [L, H, X, V], // row H
        [V, X, H, L], // row X
        [X, V, L, H], // row V
    ]
};

/// Computes the full 4x4 truth table of `gate`, rows and columns in
/// [`TABLE_ORDER`].
pub fn truth_table(gate: SingleBitGate) -> [[BitValue; 4]; 4] {
    TABLE_ORDER.map(|a| TABLE_ORDER.map(|b| gate.apply(a, b)))
}

/// Reference table for `gate`, against which computed tables are checked.
pub fn reference_table(gate: SingleBitGate) -> [[BitValue; 4]; 4] {
    match gate {
        SingleBitGate::Xor => XOR_REFERENCE,
        SingleBitGate::Xnor => XNOR_REFERENCE,
    }
}

/// Outcome of applying a gate symbolically plus the instantaneous
/// cross-check of the same operation over a tick window.
#[derive(Debug, Clone, Serialize)]
pub struct GateReport {
    pub gate: String,
    pub input: String,
    pub output: String,
    pub ticks: u64,
    /// True iff the compiled symbolic output and the instantaneous gate
    /// construction agreed at every tested tick.
    pub consistent: bool,
}

/// Applies NOT at `bit_index` symbolically and verifies the result against
/// the instantaneous rail-product construction over `ticks` clock periods.
pub fn not_gate_report(
    bit_index: u32,
    y: &Superposition,
    rns: &Rns,
    ticks: u64,
) -> Result<(Superposition, GateReport)> {
    let out = not_gate(bit_index, y)?;
    let instantaneous = not_gate_signal(bit_index, compile_superposition(y));
    let mut consistent = true;
    for t in 0..ticks {
        let t = ClockIndex(t);
        if eval(&instantaneous, t, rns)? != eval_superposition(&out, t, rns) {
            consistent = false;
            break;
        }
    }
    let report = GateReport {
        gate: format!("not {bit_index}"),
        input: serde_json::to_string(y).expect("serializable state"),
        output: serde_json::to_string(&out).expect("serializable state"),
        ticks,
        consistent,
    };
    Ok((out, report))
}

/// Applies a single-bit gate and verifies the truth-table output against
/// the instantaneous three-signal product over `ticks` clock periods.
pub fn single_bit_gate_report(
    gate: SingleBitGate,
    a: BitValue,
    b: BitValue,
    rns: &Rns,
    ticks: u64,
) -> Result<(BitValue, GateReport)> {
    let out = gate.apply(a, b);
    let third = match gate {
        SingleBitGate::Xor => BitValue::Low,
        SingleBitGate::Xnor => BitValue::High,
    };
    let lower = |v: BitValue| {
        compile_superposition(&Superposition::term(
            crate::algebra::ProductString::new(vec![v]),
            1,
        ))
    };
    let product = SignalExpr::Product(vec![lower(a), lower(b), lower(third)]);
    let symbolic = lower(out);
    let mut consistent = true;
    for t in 0..ticks {
        let t = ClockIndex(t);
        if eval(&product, t, rns)? != eval(&symbolic, t, rns)? {
            consistent = false;
            break;
        }
    }
    let report = GateReport {
        gate: gate.name().to_string(),
        input: format!("{a} {b}"),
        output: out.to_string(),
        ticks,
        consistent,
    };
    Ok((out, report))
}
