//! Finite rotation groups SO(3) mod p, their unitary irreps, Clebsch-Gordan
//! bases for pairs of p-adic qubits, and the extraction and universality check
//! of a 3-adically controlled gate set.

pub mod clebsch;
pub mod closure;
pub mod dihedral;
pub mod entangle;
pub mod gates;
pub mod group;
pub mod linalg;
pub mod modp;
pub mod monomial;
pub mod par;
pub mod permgroup;
pub mod reps;
pub mod universality;

pub use group::{FiniteGroup, Gp, GpElement};
pub use linalg::{CMatrix, TAU};
pub use modp::{make_context, PrimeContext};
