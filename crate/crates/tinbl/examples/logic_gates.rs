//! The gate set: NOT as annihilation and creation, and the single-bit
//! XOR and XNOR truth tables.
//!
//! Run with: cargo run --example logic_gates

use tinbl::gates::{
    not_gate, not_gate_report, truth_table, xnor_single, xor_single, SingleBitGate, TABLE_ORDER,
};
use tinbl::{ProductString, Rns, Superposition};

fn print_table(gate: SingleBitGate) {
    let table = truth_table(gate);
    let labels: Vec<String> = TABLE_ORDER.iter().map(|v| v.to_string()).collect();
    println!("{:>5}  {}", gate.name().to_uppercase(), labels.join(" "));
    for (label, row) in labels.iter().zip(table.iter()) {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        println!("{label:>5}  {}", cells.join(" "));
    }
}

fn main() {
    // NOT at bit i multiplies position i by the uncertain value X. On the
    // classical values it is the usual inverter: flipping bit 2 of the
    // encoding of 6 (LHH) yields the encoding of 4 (LLH).
    let w6 = Superposition::term(ProductString::from_number(6, 3).unwrap(), 1);
    let flipped = not_gate(2, &w6).unwrap();
    println!("NOT_2 on the encoding of 6:");
    for (w, c) in flipped.terms() {
        println!("  {c} * {w}  (the encoding of 4)");
    }

    // On the extra values it annihilates and creates: X goes to V (the
    // bit is removed from the string), V goes to X (a missing bit is
    // created with uncertain value).
    let state: Superposition = Superposition::term("XVH".parse().unwrap(), 1);
    println!("\nNOT on the state XVH, bit by bit:");
    for i in 1..=3 {
        let out = not_gate(i, &state).unwrap();
        let (w, _) = out.terms().next().unwrap();
        println!("  NOT_{i}[XVH] = {w}");
    }

    // Applied twice, NOT is the identity; X * X = V closes the loop.
    assert_eq!(not_gate(1, &not_gate(1, &state).unwrap()).unwrap(), state);
    println!("NOT_1 twice returns the original state");

    // Every symbolic gate action equals the instantaneous construction
    // (multiply the input signal by both rails of bit i) at every tick.
    let rns = Rns::new(3, 42).unwrap();
    let (_, report) = not_gate_report(2, &w6, &rns, 2000).unwrap();
    println!(
        "instantaneous cross-check of NOT_2 over {} ticks: {}",
        report.ticks,
        if report.consistent { "consistent" } else { "INCONSISTENT" }
    );

    // The single-bit gates: XOR multiplies the two inputs by L, XNOR by
    // H. For classical inputs they are the classical gates; with X and V
    // they annihilate and create.
    println!();
    print_table(SingleBitGate::Xor);
    println!();
    print_table(SingleBitGate::Xnor);

    use tinbl::algebra::{High, Uncertain, Vacuum};
    println!("\nannihilation and creation through XOR/XNOR:");
    println!("  XOR[H, X] = {}", xor_single(High, Uncertain));
    println!("  XOR[V, V] = {}", xor_single(Vacuum, Vacuum));
    println!("  XNOR[V, X] = {}", xnor_single(Vacuum, Uncertain));
}
