//! Computational toolkit for the parity of Schur's partition function.
//!
//! A(n) counts partitions of n into distinct parts congruent to 1 or 2
//! mod 3. The parity of A(2n+1) is governed by representation counts of
//! 24n + 11 by the binary quadratic form 5x^2 + 2xy + 11y^2, which in turn
//! reduce to a classification of the prime factors into four classes cut
//! out by residues mod 24 and representability by discriminant -216 forms.
//!
//! The crate provides the arithmetic layers bottom-up:
//!
//! * [`arith`] — Kronecker symbol, factorization, divisor character sums
//! * [`qform`] — reduction, class numbers, representation counts, and the
//!   Dirichlet compositions between x^2+6y^2 and 2x^2+3y^2
//! * [`schur`] — exact counters A, A1, A2 and a GF(2) parity stream
//! * [`euler`] — p(n) mod m by the pentagonal recurrence, residue censuses
//! * [`classify`] — the four prime classes and the parity indicator
//! * [`census`] — large-range parity census, class-generated counting
//!   functions, density reporting
//! * [`verify`] — executable suites that check every identity and claim,
//!   emitting machine-readable reports

pub mod arith;
pub mod census;
pub mod classify;
pub mod error;
pub mod euler;
pub mod qform;
pub mod schur;
pub mod verify;

pub use error::{Error, Result};
