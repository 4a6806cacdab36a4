//! Lefschetz and Picard numbers of complex Delsarte surfaces.
//!
//! A Delsarte surface is the zero set in P^3 of a sum of four monomials whose
//! exponent matrix is invertible. This crate computes the Lefschetz number
//! `lambda` and Picard number `rho = b2 - lambda` exactly from the character
//! group of the exponent matrix, classifies the degree-n Delsarte surfaces
//! whose singularities are isolated rational double points, and checks a
//! table of closed quasi-polynomial Picard formulas against direct
//! computation.

pub mod arith;
pub mod catalog;
pub mod character;
pub mod cli;
pub mod formula;
pub mod error;
pub mod hodge;
pub mod poly;

pub use arith::{IntLattice3, IntMatrix4, RationalMod1};
pub use character::{CharacterGroup, CharacterVector, DelsarteMatrix, PicardReport};
pub use error::{Error, Result};
