//! The three universes: superpositions of every representable number,
//! built in factored form with M additions and M-1 multiplications.
//!
//! Run with: cargo run --example universes

use tinbl::signals::eval;
use tinbl::universes::{build_universe, expand_universe, universe_stats, UniverseKind};
use tinbl::{ClockIndex, Rns};

fn main() {
    let rns = Rns::new(3, 42).unwrap();

    // The binary universe is the product over bits of (rail0 + rail1).
    // Expanded, it is the unit-coefficient superposition of all 2^m
    // numbers; at m = 3, all eight of them.
    let expanded = expand_universe(UniverseKind::Binary, 3).unwrap();
    println!("binary universe at m = 3 expands to {} terms:", expanded.term_count());
    for (w, c) in expanded.terms() {
        println!("  {c} * {w}");
    }

    // Factored and expanded forms carry the same signal.
    let factored = build_universe(UniverseKind::Binary, 3).unwrap();
    let amps: Vec<String> = (0..12)
        .map(|t| eval(&factored, ClockIndex(t), &rns).unwrap().to_string())
        .collect();
    println!("\nbinary universe amplitude over 12 ticks: {}", amps.join(" "));
    println!("(zero whenever any bit's rails cancel: probability 1 - 2^-m per tick)");

    // The ternary universe adds the rail product to every factor, which
    // pins each factor to -1 or 3. No factor can vanish, so the
    // amplitude is never zero, in any clock period, for any m.
    let kinds = [UniverseKind::Binary, UniverseKind::TernaryNoVacuum, UniverseKind::Total];
    println!("\namplitude statistics over 100000 ticks (m = 3, seed 42):");
    for kind in kinds {
        let stats = universe_stats(kind, 3, 100_000, &rns).unwrap();
        let histogram: Vec<String> = stats
            .histogram
            .iter()
            .map(|(k, c)| format!("|{k}| x{c}"))
            .collect();
        println!(
            "  {:<11} zero on {:>6} ticks; nonzero: {}",
            kind.name(),
            stats.zero_count,
            histogram.join(", ")
        );
    }

    // Ternary magnitudes are exactly 3^k, k the number of bits whose two
    // rails are both +1 that tick, so k follows Binomial(m, 1/4).
    let stats = universe_stats(UniverseKind::TernaryNoVacuum, 8, 100_000, &Rns::new(8, 42).unwrap()).unwrap();
    println!("\nternary universe at m = 8: zero on {} of {} ticks", stats.zero_count, stats.ticks);
    println!("magnitude histogram (all exact powers of 3):");
    for (k, c) in &stats.histogram {
        println!("  {k:>6}: {c}");
    }

    // Term counts grow as 2^m, 3^m and 4^m; expansion is refused beyond
    // the cap while the factored form stays linear in m.
    for kind in kinds {
        let expanded = expand_universe(kind, 4).unwrap();
        println!(
            "{:<11} m=4: {:>4} terms expanded, {} expression nodes factored",
            kind.name(),
            expanded.term_count(),
            build_universe(kind, 4).unwrap().node_count()
        );
    }
    let refused = expand_universe(UniverseKind::Total, 20);
    println!("expanding the total universe at m = 20: {refused:?}");
}
