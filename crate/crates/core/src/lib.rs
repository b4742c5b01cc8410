//! Kummer's ideal primes realised as Jacobi maps: exact arithmetic in
//! cyclotomic integers, discrete valuations from uniformizers, Gauss and
//! Jacobi sums, Hilbert monoids, and quadratic orders where the
//! construction breaks down.

pub mod charsum;
pub mod cyclotomic;
pub mod error;
pub mod exact;
pub mod ideal_primes;
pub mod monoid;
pub mod quad;
pub mod valuation;

pub use error::{Error, Result};
