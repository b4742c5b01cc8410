//! Exact integer, polynomial, finite-field and lattice arithmetic.

pub mod finite_field;
pub mod integer;
pub mod lattice;
pub mod poly_int;
pub mod poly_mod;

pub use finite_field::{FFElement, FiniteField};
pub use integer::Integer;
pub use lattice::{hnf, IntLattice, IntVector, MultTable};
pub use poly_int::{cyclotomic_polynomial, resultant, PolyInt};
pub use poly_mod::{factor_mod_p, PolyModP};
