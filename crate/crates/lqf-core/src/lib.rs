//! Algebraic core for quantum-logic computations on finite structures.
//!
//! The crate is organised around finite orthomodular lattices ([`oml`]),
//! a term language over the signature `{0, 1, ~, &, |, w, w*}` ([`term`]),
//! a Hilbert-style proof checker ([`calculus`]), finite-model services
//! ([`model`]), filter/congruence theory ([`filters`]) and an
//! exact-rational matrix laboratory ([`matrix`]).
//!
//! Everything is pure: structures are immutable after construction and
//! every operation is a function of its arguments, so concurrent use
//! needs no synchronisation. The crate is `no_std` (with `alloc`).

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod calculus;
pub mod filters;
pub mod matrix;
pub mod model;
pub mod oml;
pub mod term;

pub use oml::FiniteOml;
pub use term::{Equation, ExpandedStructure, Term};
