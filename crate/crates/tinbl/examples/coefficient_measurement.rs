//! Reading superposition coefficients off the wire: correlate the state
//! signal with a product-string signal and let every unmatched term
//! average away.
//!
//! Run with: cargo run --example coefficient_measurement

use tinbl::measure::{measure_coefficient, Threshold};
use tinbl::{ProductString, Rns, Superposition};

fn main() {
    let rns = Rns::new(4, 42).unwrap();
    let y = Superposition::of_numbers(&[7, 4, 1], 4).unwrap();
    println!("state: superposition of 7, 4 and 1 in a 4-bit system");

    // Correlating y(t) with the signal of string w isolates w's
    // coefficient: the matched term contributes it exactly every tick,
    // each unmatched term contributes a zero-mean +-1 product. The spread
    // is bounded by the coefficient L1 norm (3 here), so the 5-sigma band
    // at n ticks is 5 * 3 / sqrt(n).
    let n = 1_000_000;
    println!("\nmeasured coefficients at n = {n} (band +-{:.4}):", 15.0 / (n as f64).sqrt());
    for number in [7u64, 4, 1, 0, 2, 5] {
        let w = ProductString::from_number(number, 4).unwrap();
        let est = measure_coefficient(&y, &w, n, &rns, Threshold::default()).unwrap();
        println!(
            "  number {number} ({w}): measured {:>9} exact {} -> {}",
            est.mean_decimal(6),
            est.target,
            if est.pass() { "pass" } else { "fail" }
        );
    }

    // The estimator error shrinks at the usual Monte Carlo rate: four
    // times the window, half the error.
    let w = ProductString::from_number(4, 4).unwrap();
    println!("\nconvergence on the coefficient of 4:");
    for n in [1_000u64, 4_000, 16_000, 64_000, 256_000] {
        let est = measure_coefficient(&y, &w, n, &rns, Threshold::default()).unwrap();
        println!(
            "  n = {n:>7}: measured {:>10}, |error| {:.5}",
            est.mean_decimal(6),
            (est.mean_f64() - 1.0).abs()
        );
    }

    // Everything stays exact inside: the estimate is an integer sum, and
    // a matched single-term state measures exactly 1 at any window.
    let single = Superposition::term(w.clone(), 1);
    let est = measure_coefficient(&single, &w, 10, &rns, Threshold::default()).unwrap();
    println!("\nsingle-term state, 10 ticks: sum {} over 10 (mean exactly 1)", est.sum);
}
