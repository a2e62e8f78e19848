//! Exact modular representation theory for finite matrix groups.
//!
//! The crate computes ordinary character tables (Dixon–Schneider), Brauer
//! characters of modules over finite fields (chopped with the meataxe),
//! decomposition and Cartan matrices, blocks, and Cartan matrices of the
//! finite quotients of congruence towers such as `SL₂(ℤ₃)` via the
//! recursion `C(Gₙ) = B · C(Gₙ₋₁)`.

pub mod arith;
pub mod cde;
pub mod characters;
pub mod group;
pub mod linalg;
pub mod meataxe;
pub mod tower;
