//! Encoding binary numbers as product strings and computing with the
//! four-valued bit algebra.
//!
//! Run with: cargo run --example number_encoding

use tinbl::algebra::{High, Low, Uncertain, Vacuum};
use tinbl::{BitValue, ClockIndex, ProductString, Rns};

fn main() {
    // The number 6 is binary 110. Position 1 (leftmost in the compact
    // form) is the least significant bit, so 6 becomes LHH: bit 1 low,
    // bits 2 and 3 high.
    let w6 = ProductString::from_number(6, 3).unwrap();
    println!("6 in a 3-bit system: {w6}");
    for n in 0..8 {
        println!("  {n} -> {}", ProductString::from_number(n, 3).unwrap());
    }

    // Positions multiply independently and every value is its own
    // inverse: the per-bit values form a Klein four-group with identity V.
    println!("\nper-bit products:");
    for (a, b) in [(Low, High), (Low, Uncertain), (High, Uncertain), (Uncertain, Uncertain)] {
        println!("  {a} * {b} = {}", a * b);
    }
    println!("full table (rows * columns, order V L H X):");
    for a in BitValue::ALL {
        let row: Vec<String> = BitValue::ALL.iter().map(|&b| (a * b).to_string()).collect();
        println!("  {a}:  {}", row.join(" "));
    }

    // String products are position-wise; multiplying a string by itself
    // gives the all-vacuum string, whose signal is the constant 1.
    let w5 = ProductString::from_number(5, 3).unwrap();
    println!("\n{w6} * {w5} = {}", w6.mul(&w5).unwrap());
    println!("{w6} * {w6} = {}", w6.mul(&w6).unwrap());
    assert_eq!(w6.mul(&w6).unwrap(), ProductString::vacuum(3));

    // Each string is carried by the product of its rails: an
    // instantaneous +-1 signal, distinct numbers giving orthogonal
    // signals.
    let rns = Rns::new(3, 42).unwrap();
    let wave: Vec<i64> = (0..12)
        .map(|t| tinbl::signals::eval_string(&w6, ClockIndex(t), &rns).value())
        .collect();
    println!("\nsignal of {w6} over 12 ticks: {wave:?}");

    // Strings may also hold uncertain and vacuum positions.
    let partial: ProductString = "HXV".parse().unwrap();
    println!(
        "string {partial}: bit 1 high, bit 2 uncertain, bit 3 absent ({} of 3 positions carry rails)",
        partial.values().iter().filter(|&&v| v != Vacuum).count()
    );
}
