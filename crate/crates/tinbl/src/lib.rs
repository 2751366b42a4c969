//! Deterministic simulator and verification suite for ternary
//! instantaneous noise-based logic.
//!
//! Logic values are carried by clocked random telegraph waves: each
//! noise-bit owns two reference rails whose +-1 amplitudes are redrawn
//! every clock period. Products of rails encode binary numbers as
//! orthogonal product strings, sums of products encode superpositions,
//! and a factored expression with O(M) nodes can carry a superposition of
//! exponentially many terms that is still evaluated exactly, in O(M) per
//! clock period, without any time averaging.
//!
//! On top of the binary scheme, each bit also admits an uncertain value
//! (the product of its two rails) and the vacuum value (the constant 1),
//! which close `{V, L, H, X}` into a Klein four-group per bit position.
//! The ternary universe built from the three non-vacuum values per bit
//! has an amplitude that is never zero in any clock period, unlike its
//! binary counterpart.
//!
//! # Layout
//!
//! - [`rns`]: seeded reference noise system with O(1) random access by
//!   clock index.
//! - [`algebra`]: bit-value group, product strings, exact
//!   integer-coefficient superpositions.
//! - [`signals`]: factored expression DAG and instantaneous evaluation.
//! - [`gates`]: NOT / annihilation / creation gate and single-bit XOR and
//!   XNOR with their truth tables.
//! - [`universes`]: binary, ternary and total universe constructors,
//!   expansion and amplitude statistics.
//! - [`measure`]: finite-window correlation estimators with exact integer
//!   accumulation.
//! - [`cli`]: the `tinbl` command-line front end.
//!
//! Every quantity in the simulation core is an exact integer and every
//! sample is a pure function of `(seed, rail, tick)`, so runs replay
//! bit-identically on any platform. The `examples/` directory walks
//! through each capability; start with `examples/rtw_waveforms.rs`.
//!
//! ```
//! use tinbl::signals::eval;
//! use tinbl::universes::{build_universe, UniverseKind};
//! use tinbl::{ClockIndex, Rns};
//! use num_traits::Zero;
//!
//! // 64 noise-bits, factored ternary universe: 3^64 terms in 385 nodes.
//! let rns = Rns::new(64, 42).unwrap();
//! let universe = build_universe(UniverseKind::TernaryNoVacuum, 64).unwrap();
//! for t in 0..100 {
//!     // The amplitude is exact and, for this universe, never zero.
//!     assert!(!eval(&universe, ClockIndex(t), &rns).unwrap().is_zero());
//! }
//! ```

pub mod algebra;
pub mod cli;
pub mod error;
pub mod gates;
pub mod measure;
pub mod rns;
pub mod signals;
pub mod universes;

pub use algebra::{BitValue, ProductString, Superposition, DEFAULT_EXPANSION_CAP};
pub use error::{Error, Result};
pub use measure::{CorrelationEstimate, OrthogonalityMatrix, Threshold};
pub use rns::{ClockIndex, Rail, Rns, RtwId, Sign};
pub use signals::{Amplitude, SignalExpr};
pub use universes::{AmplitudeStats, UniverseKind};
