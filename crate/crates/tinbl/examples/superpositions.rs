//! Superpositions: exact symbolic states, their instantaneous signals,
//! and the bridge between the two representations.
//!
//! Run with: cargo run --example superpositions

use tinbl::signals::{compile_superposition, eval, eval_superposition, expand_expr};
use tinbl::{ClockIndex, ProductString, Rns, Superposition, DEFAULT_EXPANSION_CAP};

fn main() {
    // The superposition of 7, 4 and 1 in a 4-bit system: three product
    // strings added on one wire.
    let y = Superposition::of_numbers(&[7, 4, 1], 4).unwrap();
    println!("superposition of 7, 4, 1 (4-bit), canonical order:");
    for (w, c) in y.terms() {
        println!("  {c:>2} * {w}");
    }

    // Its instantaneous amplitude is the sum of three +-1 signals.
    let rns = Rns::new(4, 42).unwrap();
    let amps: Vec<String> = (0..16)
        .map(|t| eval_superposition(&y, ClockIndex(t), &rns).to_string())
        .collect();
    println!("\namplitude over 16 ticks: {}", amps.join(" "));

    // Symbolic states compile to sum-of-product expressions with the same
    // semantics, tick for tick.
    let compiled = compile_superposition(&y);
    for t in 0..1000 {
        let t = ClockIndex(t);
        assert_eq!(eval(&compiled, t, &rns).unwrap(), eval_superposition(&y, t, &rns));
    }
    println!("compiled expression agrees with the symbolic state at 1000 ticks");

    // And expressions expand back to canonical symbolic form.
    let back = expand_expr(&compiled, 4, DEFAULT_EXPANSION_CAP).unwrap();
    assert_eq!(back, y);
    println!("expansion inverts compilation");

    // Coefficients are exact integers; adding a state to its negation
    // cancels exactly, with no residue.
    let zero = y.add(&y.scaled(&(-1).into())).unwrap();
    assert!(zero.is_zero());
    println!("y + (-1) * y is the zero state ({} stored terms)", zero.term_count());

    // The exact coefficient oracle looks up any string in O(log terms).
    let w4 = ProductString::from_number(4, 4).unwrap();
    let w2 = ProductString::from_number(2, 4).unwrap();
    println!(
        "\ncoefficient of {w4} (number 4): {}; of {w2} (number 2): {}",
        y.coefficient(&w4),
        y.coefficient(&w2)
    );

    // States serialize to canonical JSON that round-trips exactly.
    let json = serde_json::to_string(&y).unwrap();
    println!("\nserialized: {json}");
    let parsed: Superposition = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed, y);
}
