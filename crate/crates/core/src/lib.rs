//! Norms of p-stabilized newforms, local periods of the Petersson norm, and
//! Euler products evaluated on the edge of absolute convergence.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; file formats, the command line and thread pools
//! live in the `stabnorm` companion crate.
//!
//! Module map:
//!
//! - [`forms`]: Hecke eigenvalues of the two built-in eigenforms (Δ of
//!   weight 12, and the weight 2 form of `y² = x³ − x`), multiplicative
//!   extension, Satake parameters.
//! - [`primes`]: segmented sieve, two-square decomposition, prime ideals of
//!   `Z[i]` streamed in increasing norm.
//! - [`stabilization`]: closed-form norm ratios of `U_p f` and `f_p^α`, the
//!   local adelic norm, and local periods.
//! - [`euler`]: partial Euler products in log domain, prime-power log
//!   series, rearrangement diagnostics, convergence tables.
//! - [`reference`]: independent oracles (smoothed Dirichlet series,
//!   fundamental-domain quadrature, the Hida bridge).

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod arith;
pub mod error;
pub mod euler;
pub mod forms;
pub mod primes;
pub mod reference;
pub mod stabilization;

pub use error::{Error, Result};
pub use num_complex::Complex64;
