//! Exact computation in Coxeter groups given by a Coxeter diagram.
//!
//! The crate decides whether a right-angled generator `s` of a Coxeter system
//! `(W, S)` is an intrinsic reflection of `W` (a member of `R^W` for every
//! Coxeter generating set `R`), builds the generating-set rewrites that
//! witness a negative answer, and ships brute-force machinery (group
//! enumeration, Coxeter complex geometry) used to check all of it on finite
//! instances.
//!
//! The crate is `no_std` and only needs `alloc`. File IO, the command-line
//! front end and JSON reports live in the `coxtool` crate.
//!
//! ```
//! use coxeter_core::{intrinsic, CoxeterMatrix};
//!
//! let m = CoxeterMatrix::parse("generators s a b u\nedge a b 3\nedge s u inf\nedge a u inf\nedge b u inf\n")
//!     .unwrap();
//! let s = m.gen("s").unwrap();
//! let verdict = intrinsic::decide_intrinsic(&m, s, &Default::default()).unwrap();
//! assert!(!verdict.is_intrinsic());
//! ```
#![no_std]

extern crate alloc;

pub mod complex;
pub mod diagram;
mod engine;
mod error;
pub mod intrinsic;
mod matrix;
pub mod oracle;
pub mod transforms;
pub mod words;

pub use diagram::{ComponentDecomposition, Component, Classification, SphericalType};
pub use error::Error;
pub use matrix::{CoxeterMatrix, Gen, GenSet, Order, ParseError, MAX_RANK};
pub use words::{CoxeterGroup, Element, EnumeratedGroup, OrderResult};

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Enumeration and order-search limits shared by every exhaustive routine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of group elements any enumeration may produce.
    pub max_enum: usize,
    /// Largest power tried when searching for the order of a product.
    pub order_cap: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_enum: 200_000, order_cap: 1000 }
    }
}
