//! Exact toric geometry for quotients of toric prevarieties by subtori.
//!
//! Everything is computed over the integers with arbitrary precision. The
//! crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::result_large_err)]

extern crate alloc;

pub mod cones;
pub mod covering;
pub mod error;
pub mod exactlin;
pub mod fans;
pub mod quotient;

pub use cones::{relints_intersect, Cone, FaceId};
pub use error::{ConeError, CoverError, FanError, LinError, QuotientError};
pub use exactlin::{IntMat, IntVec, Sublattice};
