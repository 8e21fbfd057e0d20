//! Binary integral quadratic forms attached to quadratic number fields, and the
//! finite classification sets of forms locally isomorphic to a norm form.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`] — integer primitives (gcd, Kronecker symbol, factorization),
//! * [`qform`] — forms `(a, b, c)`, reduction theory and proper equivalence,
//! * [`classgrp`] — Gauss composition, form class groups and genus theory,
//! * [`orders`] — quadratic orders, fundamental units and Picard groups,
//! * [`cohom`] — the classification sets `H¹(N_d)`, `H¹(N'_{-d})`, `H¹(O_d)`
//!   as explicit lists of form classes, with the closed-form cardinality
//!   cross-validated against enumeration.
//!
//! Everything is pure integer arithmetic on immutable values; the crate is
//! `no_std` (with `alloc`) and all operations are safe to call concurrently.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod classgrp;
pub mod cohom;
pub mod orders;
pub mod qform;

mod error;

pub use error::{Error, Result};
